"""Derive the frozen family tables from explicit group models.

Each family is modelled concretely enough to multiply: the torus extension
C* x| <r> as pairs (lambda, e), PGL2 as 2x2 matrices up to scalars, and the
split case C* x Z/2.  The z-representatives per cell are the ones listed for
each family; everything else (conjugates, their images in the component
groups, adaptedness) is computed here and written to ``data/*.json``.

Generic parameters are instantiated at lambda = 2 (rows) and lambda' = 3
(columns); the tables do not depend on the choice away from +-1.

Run ``python -m almost_fourier.families.derive --write`` to regenerate.
"""
from __future__ import annotations

import argparse
import json
from pathlib import Path

from ..exact import I, Scalar, as_scalar
from ..groups import FiniteGroup, abelian_characters, characters_to_json, cyclic, trivial_group

DATA = Path(__file__).with_name("data")

GENERIC = (Scalar(2), Scalar(3))


def _ident_d(elements, mul, names):
    g = FiniteGroup.from_elements(elements, mul, names=names, name="D")
    return g


def _named_chars(g, names_by_values):
    chars = abelian_characters(g)
    out = []
    spare = iter("abcdefgh")
    for ch in chars:
        key = tuple(str(v) for v in ch.values)
        nm = names_by_values.get(key) or f"chi_{next(spare)}"
        out.append((nm, ch))
    return out


def _records(x, y, reps, mul, inv, commute, proj_x, proj_y, adapted):
    recs = []
    for z in reps:
        a = mul(mul(z, x), inv(z))          # z x z^-1, must commute with y
        b = mul(mul(inv(z), y), z)          # z^-1 y z, must commute with x
        if not commute(a, y) or not commute(b, x):
            raise AssertionError(f"representative {z} does not lie in A_(x,y)")
        recs.append([proj_y(a), proj_x(b), bool(adapted(a, y))])
    return recs


def _assemble(name, components, identity, comp_inv, prefactor, lam_group, points, cells):
    return {
        "name": name,
        "components": components,
        "identity_component": identity,
        "component_inverse": comp_inv,
        "prefactor": prefactor,
        "lambda": lam_group.to_json(),
        "points": points,
        "cells": {k: cells[k] for k in sorted(cells)},
    }


def _point_json(label, dgroup, lam_image, named_chars):
    img = set(lam_image)
    return {
        "label": label,
        "group": dgroup.to_json(),
        "lambda_image": list(lam_image),
        "zbar": dgroup.order // len(img),
        "characters": characters_to_json([ch for _, ch in named_chars]) | {
            "names": [nm for nm, _ in named_chars]},
    }


def _with_mirrors(forward, comp_inv, build):
    """forward: {(x, y, h): reps}.  Mirror cells use z^-1 as representatives."""
    cells = {}
    for (x, y, h), (reps, inv) in forward.items():
        cells[f"{x}|{y}|{h}"] = build(x, y, reps)
        key = f"{y}|{x}|{comp_inv[h]}"
        if key not in cells:
            cells[key] = build(y, x, [inv(z) for z in reps])
    return cells


# ---------------------------------------------------------------------------
# C* extended by r with r g r^-1 = g^-1
# ---------------------------------------------------------------------------

def torus_extension(rsq: int) -> dict:
    """Elements (lam, e) = g_lam r^e; r^2 = g_rsq."""
    s = Scalar(rsq)
    one = Scalar(1)

    def mul(a, b):
        (l1, e1), (l2, e2) = a, b
        if e1 == 0:
            return (l1 * l2, e2)
        lam = l1 * l2.inverse()
        if e2:
            lam = lam * s
        return (lam, 0 if e2 else 1)

    def inv(a):
        lam, e = a
        if e == 0:
            return (lam.inverse(), 0)
        # (g_l r)^-1 = r^-1 g_l^-1 = g_l r^-1 ... solve directly
        cand = (lam * s.inverse(), 1)
        assert mul(a, cand) == (one, 0)
        return cand

    def commute(a, b):
        return mul(a, b) == mul(b, a)

    def g(lam):
        return (as_scalar(lam), 0)

    e1 = g(1)
    r = (one, 1)
    gm1 = g(-1)
    lam_x, lam_y = GENERIC

    # component groups
    d1 = cyclic(2)
    dr_elems = [e1, gm1, r, mul(r, gm1)]
    dr = _ident_d(dr_elems, mul, ["1", "g-1", "r", "rg-1"])
    dgen = trivial_group()

    def proj_comp(h):
        return h[1]

    def proj_r(h):
        return dr_elems.index(h)

    def proj_gen(h):
        if h[1] != 0:
            raise AssertionError("element outside the identity component")
        return 0

    eps_r = ("1", "1", "-1", "-1")
    named_1 = _named_chars(d1, {("1", "1"): "1", ("1", "-1"): "eps"})
    named_r = _named_chars(dr, {("1", "1", "1", "1"): "1", eps_r: "eps"})
    named_g = [("1", dgen.irreducible_characters()[0])]

    # the point g_lambda appears as g_2 in rows and g_3 in columns
    elem = {"1": (e1, e1), "r": (r, r), "g_lambda": (g(lam_x), g(lam_y))}
    proj = {"1": proj_comp, "r": proj_r, "g_lambda": proj_gen}
    comps = ["H0", "H1"]
    comp_inv = {"H0": "H0", "H1": "H1"}

    # torus H0 = C*: every pair of commuting semisimple elements is adapted
    def adapted(a, b):
        return True

    def build(xl, yl, reps):
        x = elem[xl][0]
        y = elem[yl][1]
        return _records(x, y, reps, mul, inv, commute, proj[xl], proj[yl], adapted)

    gi, gmi = g(I), g(-I)
    forward = {
        ("1", "1", "H0"): [e1], ("1", "1", "H1"): [r],
        ("1", "g_lambda", "H0"): [e1], ("1", "g_lambda", "H1"): [r],
        ("g_lambda", "g_lambda", "H0"): [e1], ("g_lambda", "g_lambda", "H1"): [r],
        ("1", "r", "H0"): [e1], ("1", "r", "H1"): [r],
        ("r", "g_lambda", "H0"): [], ("r", "g_lambda", "H1"): [],
        ("r", "r", "H0"): [e1, gm1, gi, gmi],
        ("r", "r", "H1"): [r, mul(r, gm1), mul(r, gi), mul(r, gmi)],
    }
    # the empty cells are backed by a direct check that A_(r, g_lambda) is empty
    for z in [e1, r, gm1, gi, mul(r, gi), g(5), mul(r, g(5))]:
        assert not commute(mul(mul(z, r), inv(z)), elem["g_lambda"][1])
    cells = _with_mirrors({k: (v, inv) for k, v in forward.items()}, comp_inv, build)

    lam_elems = [e1, gm1]
    points = [
        _point_json("1", d1, [proj_comp(z) for z in lam_elems], named_1),
        _point_json("r", dr, [proj_r(z) for z in lam_elems], named_r),
        _point_json("g_lambda", dgen, [proj_gen(z) for z in lam_elems], named_g),
    ]
    name = "F15_rsq1" if rsq == 1 else "F15_rsqm1"
    return _assemble(name, comps, "H0", comp_inv, 1, cyclic(2), points, cells)


# ---------------------------------------------------------------------------
# PGL2
# ---------------------------------------------------------------------------

def _mat_mul(a, b):
    return ((a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]),
            (a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]))


def _normalize(a):
    flat = [a[0][0], a[0][1], a[1][0], a[1][1]]
    lead = next(v for v in flat if v)
    k = lead.inverse()
    f = [v * k for v in flat]
    return ((f[0], f[1]), (f[2], f[3]))


def pgl2() -> dict:
    z0, o = Scalar(0), Scalar(1)

    def m(a, b, c, d):
        return _normalize(((as_scalar(a), as_scalar(b)), (as_scalar(c), as_scalar(d))))

    def mul(a, b):
        return _normalize(_mat_mul(a, b))

    def inv(a):
        (p, q), (r_, s) = a
        return _normalize(((s, -q), (-r_, p)))

    def commute(a, b):
        return mul(a, b) == mul(b, a)

    def lifts_commute(a, b):
        return _mat_mul(a, b) == _mat_mul(b, a)

    def g(lam):
        return m(lam, 0, 0, 1)

    e = m(1, 0, 0, 1)
    gm1 = g(-1)
    r = m(0, 1, 1, 0)
    xi = m(1, 1, 1, -1)
    assert mul(mul(xi, gm1), inv(xi)) == r
    lam_x, lam_y = GENERIC

    dgen = trivial_group()
    dn = cyclic(2)

    def proj_triv(h):
        return 0

    def proj_normalizer(h):
        (p, q), (r_, s) = h
        if not q and not r_:
            return 0
        if not p and not s:
            return 1
        raise AssertionError("element outside N(T)")

    named_n = _named_chars(dn, {("1", "1"): "1", ("1", "-1"): "eps"})
    named_t = [("1", dgen.irreducible_characters()[0])]

    elem = {"1": (e, e), "g_-1": (gm1, gm1), "g_lambda": (g(lam_x), g(lam_y))}
    proj = {"1": proj_triv, "g_-1": proj_normalizer, "g_lambda": proj_triv}

    # a commuting pair in PGL2 lies in a common maximal torus iff some (any)
    # lifts commute in GL2; the Klein pair (g_-1, r) has anticommuting lifts
    def adapted(a, b):
        return lifts_commute(a, b)

    def build(xl, yl, reps):
        return _records(elem[xl][0], elem[yl][1], reps, mul, inv, commute, proj[xl], proj[yl], adapted)

    forward = {
        ("1", "1", "H"): [e],
        ("1", "g_-1", "H"): [e],
        ("1", "g_lambda", "H"): [e],
        ("g_-1", "g_-1", "H"): [e, r, xi, mul(xi, r)],
        ("g_-1", "g_lambda", "H"): [e, r],
        ("g_lambda", "g_lambda", "H"): [e, r],
    }
    cells = _with_mirrors({k: (v, inv) for k, v in forward.items()}, {"H": "H"}, build)
    points = [
        _point_json("1", dgen, [0], named_t),
        _point_json("g_-1", dn, [0], named_n),
        _point_json("g_lambda", dgen, [0], named_t),
    ]
    return _assemble("F112", ["H"], "H", {"H": "H"}, 1, trivial_group(), points, cells)


# ---------------------------------------------------------------------------
# H = H0 x Lambda with H0 = C*, Lambda = Z/2
# ---------------------------------------------------------------------------

def split_torus() -> dict:
    def mul(a, b):
        return (a[0] * b[0], a[1] ^ b[1])

    def inv(a):
        return (a[0].inverse(), a[1])

    def commute(a, b):
        return True

    one = Scalar(1)
    e = (one, 0)
    zeta = (one, 1)
    lam_x, lam_y = GENERIC
    d = cyclic(2)

    def proj(h):
        return h[1]

    named = _named_chars(d, {("1", "1"): "1", ("1", "-1"): "sgn"})
    elem = {"1": (e, e), "x": ((lam_x, 0), (lam_x, 0)), "y": ((lam_y, 0), (lam_y, 0))}

    # (H0)_der trivial, hence simply connected: every pair is adapted
    def build(xl, yl, reps):
        return _records(elem[xl][0], elem[yl][1], reps, mul, inv, commute, proj, proj, lambda a, b: True)

    labels = ["1", "x", "y"]
    forward = {}
    for i, a in enumerate(labels):
        for b in labels[i:]:
            forward[(a, b, "H0")] = [e]
            forward[(a, b, "H1")] = [zeta]
    comp_inv = {"H0": "H0", "H1": "H1"}
    cells = _with_mirrors({k: (v, inv) for k, v in forward.items()}, comp_inv, build)
    points = [_point_json(l, d, [proj(e), proj(zeta)], named) for l in labels]
    return _assemble("F14", ["H0", "H1"], "H0", comp_inv, 2, cyclic(2), points, cells)


def derive_all() -> dict:
    return {"F14": split_torus(), "F15_rsq1": torus_extension(1),
            "F15_rsqm1": torus_extension(-1), "F112": pgl2()}


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description="regenerate the frozen family tables")
    ap.add_argument("--write", action="store_true", help="overwrite data/*.json")
    args = ap.parse_args(argv)
    tables = derive_all()
    for name, data in tables.items():
        text = json.dumps(data, indent=1, sort_keys=True)
        if args.write:
            (DATA / f"{name}.json").write_text(text + "\n")
        print(name, len(data["cells"]), "cells")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
