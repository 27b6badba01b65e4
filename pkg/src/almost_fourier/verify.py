"""The full list of golden and property checks, grouped by acceptance item.

Each check is a callable returning ``(ok, expected, actual)``.  ``run_checks``
times them and turns them into report records; nothing here prints.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass
from typing import Callable, Iterator

from . import clifford, groups, hecke, heis
from .exact import Mat, format_scalar
from .families import FamilyId, family_report
from .pairing import classical_fourier

DEFAULT_SEED = hecke.DEFAULT_SEED
FOURIER_GROUPS = ["trivial", "Z2", "Z3", "Z4", "S3", "D4", "Q8"]


@dataclass
class Record:
    name: str
    status: str
    expected: str
    actual: str
    ms: float

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict:
        return {"name": self.name, "status": self.status, "expected": self.expected,
                "actual": self.actual, "ms": round(self.ms, 2)}


def _s(x) -> str:
    if x is None:
        return ""
    if isinstance(x, str):
        return x
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, dict):
        return "{" + ",".join(f"{k}:{_s(v)}" for k, v in x.items()) + "}"
    if isinstance(x, (list, tuple)):
        return "[" + ",".join(_s(v) for v in x) + "]"
    try:
        return format_scalar(x)
    except (TypeError, ValueError):
        return str(x)


def run_one(name: str, fn: Callable) -> Record:
    t0 = time.perf_counter()
    try:
        ok, expected, actual = fn()
        status = "pass" if ok else "fail"
    except Exception as exc:  # a crashing check is a failing check
        status, expected, actual = "fail", "no error", f"{type(exc).__name__}: {exc}"
    return Record(name, status, _s(expected), _s(actual), (time.perf_counter() - t0) * 1000)


def run_checks(checks) -> Iterator[Record]:
    for name, fn in checks:
        yield run_one(name, fn)


# -- 1: classical Fourier matrices -------------------------------------------------

def fourier_checks(names=FOURIER_GROUPS):
    for name in names:
        def herm(name=name):
            gs = classical_fourier(groups.STANDARD_GROUPS[name]())
            return gs.is_hermitian(), True, gs.is_hermitian()

        def square(name=name):
            m = classical_fourier(groups.STANDARD_GROUPS[name]()).matrix
            return m @ m == Mat.identity(m.nrows), "I", "I" if m @ m == Mat.identity(m.nrows) else "not I"

        yield f"fourier.{name}.hermitian", herm
        yield f"fourier.{name}.square_is_identity", square


# -- 2-4: tabulated families -----------------------------------------------------

def family_checks(ids=(FamilyId.F15_rsqm1, FamilyId.F15_rsq1, FamilyId.F112, FamilyId.F14)):
    reports = {}

    def get(fid):
        if fid not in reports:
            reports[fid] = family_report(fid)
        return reports[fid]

    for fid in ids:
        for k, c in enumerate(get(fid).checks):
            def one(k=k, fid=fid):
                c = get(fid).checks[k]
                return c.ok, c.expected, c.actual
            yield f"family.{fid.value}.{c.name}", one


# -- 5-6: Heisenberg --------------------------------------------------------------

def heis_checks(ns=(1, 2), seed: int = DEFAULT_SEED, samples: int = 500):
    want_cp = {1: "(t-1)^1(t-2)^6(t-4)^3"}
    for n in ns:
        cache = {}

        def spectrum(n=n, cache=cache):
            if "s" not in cache:
                cache["s"] = heis.spectrum_report(n, with_char_poly=n in want_cp)
            return cache["s"]

        def hb(n=n, cache=cache):
            if "h" not in cache:
                cache["h"] = heis.build(n)
            return cache["h"]

        yield f"heis.n{n}.closed_form", lambda spectrum=spectrum: (spectrum().matches_closed_form, 0, len(spectrum().mismatches))
        yield f"heis.n{n}.square_block_formula", lambda spectrum=spectrum: (spectrum().square_matches_blocks, True,
                                                          spectrum().square_matches_blocks)
        yield f"heis.n{n}.min_poly_divides_124", lambda spectrum=spectrum: (spectrum().min_poly_ok, True, spectrum().min_poly_ok)
        yield f"heis.n{n}.det_nonzero", lambda spectrum=spectrum: (spectrum().determinant != 0, "nonzero", spectrum().determinant)
        yield f"heis.n{n}.z_count", lambda n=n, spectrum=spectrum, hb=hb: (
            len(hb().zindex) == heis.z_count(n), heis.z_count(n), len(hb().zindex))
        if n in want_cp:
            yield f"heis.n{n}.char_poly_square", lambda n=n, spectrum=spectrum, hb=hb: (
                spectrum().factored == want_cp[n], want_cp[n], spectrum().factored)
        yield f"heis.n{n}.character_tables", lambda hb=hb: _count(heis.character_tables_ok(hb()))
        yield f"heis.n{n}.mixed_sector", lambda hb=hb: _count(heis.mixed_sector_check(hb()))
        yield f"heis.n{n}.sign_sector", lambda hb=hb: _count(heis.sign_sector_check(hb()))
        if n == 1:
            yield f"heis.n{n}.pairing_properties_exhaustive", lambda n=n: _count(heis.property_check(n))
        else:
            yield f"heis.n{n}.pairing_properties_sampled", lambda n=n: _count(heis.property_check(n, samples, seed))


def _count(bad: list):
    return not bad, 0, len(bad)


# -- 7: Hecke modules ------------------------------------------------------------

def hecke_checks(ns=(2, 3, 4), seed: int = DEFAULT_SEED, lambdas=(1, 2, 5)):
    for n in ns:
        mods = {}

        def mod(kind, n=n, mods=mods):
            if kind not in mods:
                mods[kind] = hecke.module(hecke.wgraph(kind, n), check=False)
            return mods[kind]

        for kind in "abcd":
            yield f"hecke.n{n}.{kind}.relations", \
                lambda kind=kind, mod=mod: _count(hecke.relation_failures(mod(kind)))
            yield f"hecke.n{n}.{kind}.omega", lambda kind=kind, mod=mod, n=n: (
                hecke.omega(kind, n, m=mod(kind)) is not None, "involution intertwining s_i, s_{n-i}", "ok")
        for i in range(n + 1):
            def restr(i=i, n=n, mod=mod):
                bad = []
                for kind in "abcd":
                    r = hecke.restrict(mod(kind), mod(kind).graph, i, seed=seed)
                    if not (r.stable and r.sub_matches and r.quotient_trivial and r.trace_law):
                        bad.append(kind)
                return not bad, "[]", bad
            yield f"hecke.n{n}.restrict.s{i}", restr
        yield f"hecke.n{n}.counting_identities", lambda n=n: (
            hecke.counting_identities(n), hecke.counts(n), hecke.counting_identities(n))

        def dec(n=n):
            r = hecke.decompose_d1(n, seed=seed)
            return r.ok, (n + 1, n - 1), r.dims
        yield f"hecke.n{n}.decompose_d1", dec
        for i in range(n + 1):
            def lam(i=i, n=n):
                ok = hecke.lambda_independence(n, i, lambdas, seed=seed)
                return ok, "equal traces", "equal traces" if ok else "traces differ"
            yield f"hecke.n{n}.lambda_independence.s{i}", lam
    cache = {}

    def vrc():
        if "v" not in cache:
            cache["v"] = hecke.vrc_identities(ns, seed=seed)
        return cache["v"]
    yield "hecke.vrc.square_is_identity", lambda: (vrc().square_is_identity, True, vrc().square_is_identity)
    yield "hecke.vrc.inverse", lambda: (vrc().inverse_rows, True, vrc().inverse_rows)
    yield "hecke.vrc.e_identity", lambda: (vrc().e_identity, True, vrc().e_identity)
    yield "hecke.vrc.matches_reduced_gram", lambda: (vrc().matches_gram, True, vrc().F.to_strings())
    yield "hecke.vrc.eliminated_consistent", lambda: (vrc().eliminated_consistent, True,
                                                      vrc().eliminated_consistent)
    yield "hecke.vrc.restriction_consistency", lambda: (all(vrc().restriction_consistency.values()), True,
                                                        vrc().restriction_consistency)


# -- 8: spin groups --------------------------------------------------------------

SC_CASES = [
    ("SL", {1: 5, 2: 3}, True),
    ("SL", {3: 4}, True),
    ("Spin", {1: 3}, True),
    ("Spin", {1: 3, 3: 3}, False),
    ("Spin", {1: 2, 3: 2, 5: 2}, True),
    ("Spin", {1: 3, 2: 5, 3: 1}, True),
    ("Spin", {1: 4, 5: 3}, False),
    ("Symplectic", {2: 3}, False),
    ("Symplectic", {1: 7, 2: 2, 4: 2}, True),
    ("Symplectic", {2: 1, 4: 3}, False),
]

DELTA_DATA = [{1: 1}, {1: 1, 3: 1}, {1: 1, 3: 1, 5: 1}]


def clifford_checks(seed: int = DEFAULT_SEED, samples: int = 200):
    yield "clifford.beta_reflection_formula", lambda: _report(clifford.beta_sample_check(samples, 8, seed))
    for i in (1, 3):
        def sq(i=i):
            d = clifford.SpinDatum({i: 1})
            y = d.y_tilde(i)
            want = (-1) ** (i * (i - 1) // 2)
            return y * y == want, want, y * y
        yield f"clifford.y{i}_square", sq

    def anti():
        d = clifford.SpinDatum({1: 1, 3: 1, 5: 1})
        ys = [d.y_tilde(i) for i in d.odd]
        ok = all(a * b == -(b * a) for k, a in enumerate(ys) for b in ys[k + 1:])
        return ok, "y_i y_j = -y_j y_i", ok
    yield "clifford.pairwise_anticommutation", anti
    for m in DELTA_DATA:
        def order(m=m):
            r = clifford.delta_check(clifford.SpinDatum(m))
            return r.ok, 1 << (len(m) + 1), r.data.get("order")
        yield "clifford.delta." + ",".join(f"{i}:{v}" for i, v in m.items()), order
    for m in ({1: 3, 3: 1}, {1: 2, 3: 2}):
        def conj(m=m):
            d = clifford.SpinDatum(m)
            rng = random.Random(seed)
            bad = [c["name"] for i in d.odd for c in clifford.conj_action_check(d, i, rng=rng).failures()]
            return not bad, "[]", bad
        yield "clifford.conj." + ",".join(f"{i}:{v}" for i, v in m.items()), conj
    for m in ({1: 1, 3: 1}, {1: 3, 3: 1}, {1: 2, 3: 1, 5: 1}):
        yield "clifford.kernel." + ",".join(f"{i}:{v}" for i, v in m.items()), \
            lambda m=m: _report(clifford.kernel_containment_check(clifford.SpinDatum(m), random.Random(seed)))

    def table():
        got = [clifford.simply_connected(k, m) for k, m, _ in SC_CASES]
        want = [w for _, _, w in SC_CASES]
        return got == want, want, got
    yield "clifford.simply_connected_table", table

    def rows():
        listed = [r for r in clifford.exceptional_rows() if r.label != clifford.OTHER]
        back = [clifford.exceptional_lookup(r.group, r.label) for r in clifford.EXCEPTIONAL]
        return len(listed) == 9 and back == clifford.EXCEPTIONAL, 9, len(listed)
    yield "clifford.exceptional_rows", rows


def _report(rep):
    bad = [c["name"] for c in rep.checks if not c["ok"]]
    return not bad, "[]", bad


def all_checks(seed: int = DEFAULT_SEED):
    yield from fourier_checks()
    yield from family_checks()
    yield from heis_checks(seed=seed)
    yield from hecke_checks(seed=seed)
    yield from clifford_checks(seed=seed)
