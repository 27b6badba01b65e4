"""Extraspecial 2-groups F2 x E and their pairing matrix on (x, ybar) pairs.

The carrier is F2 x E with E = F2^{2n} stored as bit masks (bit k-1 holds the
k-th coordinate).  The product twists by a bilinear form B with
B(x,y) + B(y,x) = <x,y>.  B is chosen so that q(x) = B(x,x) has Arf
invariant 1; on the first hyperbolic pair q is 1 on every nonzero vector, so
for n = 1 the group is the quaternion group.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property

from gmpy2 import mpq

from .exact import I, Mat, Scalar, as_number, char_poly, det, format_factored, min_poly_divides, \
    root_multiplicities
from .groups import CentralSubgroup, ClassFunction, FiniteGroup, character_table_failures
from .pairing import FinitePairingDatum, GramSpace, SigmaPoint, pairing_matrix, property_failures, sampled_pairs


class SizeLimit(ValueError):
    pass


def _bit(x: int, k: int) -> int:
    """k-th coordinate, 1-based."""
    return (x >> (k - 1)) & 1


def symplectic(n: int, x: int, y: int) -> int:
    s = 0
    for k in range(1, n + 1):
        a, b = 2 * k - 1, 2 * k
        s ^= (_bit(x, a) & _bit(y, b)) ^ (_bit(x, b) & _bit(y, a))
    return s


def bilinear(n: int, x: int, y: int) -> int:
    s = _bit(x, 1) & _bit(y, 1) ^ _bit(x, 1) & _bit(y, 2) ^ _bit(x, 2) & _bit(y, 2)
    for k in range(2, n + 1):
        s ^= _bit(x, 2 * k - 1) & _bit(y, 2 * k)
    return s


@dataclass(eq=False)
class HeisenbergGroup:
    n: int
    group: FiniteGroup

    @property
    def size_e(self) -> int:
        return 1 << (2 * self.n)

    @property
    def c(self) -> int:
        return self.size_e

    def lift(self, x: int, eps: int = 0) -> int:
        return eps * self.size_e + x

    def psi(self, h: int) -> int:
        return h % self.size_e

    def form(self, x: int, y: int) -> int:
        return symplectic(self.n, x, y)

    def q(self, x: int) -> int:
        return bilinear(self.n, x, x)

    @cached_property
    def lam(self) -> CentralSubgroup:
        return CentralSubgroup(self.group, (0, self.c))

    @cached_property
    def datum(self) -> FinitePairingDatum:
        return FinitePairingDatum(self.group, self.lam)

    def quotient_reps(self, x: int) -> list[int]:
        """Representatives of E / F2 x (all of E when x = 0)."""
        if x == 0:
            return list(range(self.size_e))
        return [y for y in range(self.size_e) if y < (y ^ x)]

    @cached_property
    def zindex(self) -> list[tuple[int, int]]:
        return [(x, y) for x in range(self.size_e) for y in self.quotient_reps(x)]


def build(n: int) -> HeisenbergGroup:
    if not 1 <= n <= 3:
        raise SizeLimit(f"n = {n} outside 1..3")
    size = 1 << (2 * n)
    elems = [(e, x) for e in (0, 1) for x in range(size)]

    def mul(a, b):
        return (a[0] ^ b[0] ^ bilinear(n, a[1], b[1]), a[1] ^ b[1])

    names = [("c" if e else "") + (f"x{x}" if x else ("" if e else "1")) for e, x in elems]
    g = FiniteGroup.from_elements(elems, mul, name=f"Heis{n}", names=names)
    return HeisenbergGroup(n, g)


@dataclass
class SectorCharacters:
    x: int
    group: FiniteGroup                  # Z_H(x-dot)
    trivial_sector: list                # (ybar, ClassFunction)
    sign_sector: list                   # ClassFunctions rho (and rho')

    @property
    def all(self) -> list:
        return [c for _, c in self.trivial_sector] + list(self.sign_sector)


def sector_characters(h: HeisenbergGroup, x: int) -> SectorCharacters:
    d = h.datum
    xd = h.lift(x)
    z = d.centralizer(xd)
    n = h.n
    triv = []
    for y in h.quotient_reps(x):
        vals = tuple(-1 if h.form(h.psi(z.to_parent(k)), y) else 1 for k in range(z.order))
        triv.append((y, ClassFunction(z, vals, f"ybar={y}")))
    signs = []
    if x == 0:
        vals = []
        for k in range(z.order):
            p = z.to_parent(k)
            vals.append(1 << n if p == 0 else (-(1 << n) if p == h.c else 0))
        signs.append(ClassFunction(z, tuple(vals), "rho"))
    else:
        half = 1 << (n - 1)
        eps = I if h.q(x) else Scalar(1)
        for name, s in (("rho", 1), ("rho'", -1)):
            vals = []
            for k in range(z.order):
                p = z.to_parent(k)
                if p == 0:
                    v = half
                elif p == h.c:
                    v = -half
                elif p == h.lift(x):
                    v = eps * (s * half)
                elif p == h.lift(x, 1):
                    v = eps * (-s * half)
                else:
                    v = 0
                vals.append(v)
            signs.append(ClassFunction(z, tuple(vals), name))
    return SectorCharacters(x, z, triv, signs)


def closed_form(n: int, a: tuple[int, int], b: tuple[int, int]):
    (x, y), (x2, y2) = a, b
    if symplectic(n, x, x2):
        return mpq(0)
    sign = -1 if symplectic(n, x2, y) ^ symplectic(n, x, y2) else 1
    val = mpq(sign * 4, 1 << (2 * n))
    return val / ((2 if x == 0 else 1) * (2 if x2 == 0 else 1))


def index_points(h: HeisenbergGroup, eps: int = 0) -> list[SigmaPoint]:
    """The sector-1 points (x-dot, ybar) in Z order, lifted with the given eps."""
    d = h.datum
    pts = []
    cache = {}
    for x, y in h.zindex:
        if x not in cache:
            cache[x] = sector_characters(h, x)
        sc = cache[x]
        ch = dict(sc.trivial_sector)[y]
        xd = h.lift(x, eps)
        if eps:
            ch = ClassFunction(d.centralizer(xd), ch.values, ch.name)
        pts.append(d.point(xd, ch, label=f"({x},{y})"))
    return pts


def all_points(h: HeisenbergGroup) -> list[SigmaPoint]:
    """Sector-1 points plus the sign-sector points, all with the eps = 0 lift.

    The eps = 1 lifts are the Lambda-translates of these.
    """
    pts = index_points(h)
    for x in range(h.size_e):
        pts.extend(_sign_points(h, x, 0))
    return pts


def property_check(n: int, samples: int | None = None, seed: int = 0) -> list[str]:
    """Pairing symmetry properties: exhaustive when ``samples`` is None."""
    h = build(n)
    d = h.datum
    pts = all_points(h)
    if samples is None:
        return property_failures(d, pts)
    pairs, fs = sampled_pairs(d, samples, random.Random(seed), pts)
    bad = []
    for pq, f in zip(pairs, fs):
        bad.extend(property_failures(d, pairs=[pq], conj_elements=[f]))
    return bad


def matrix_M(n: int, h: HeisenbergGroup | None = None, eps: int = 0) -> GramSpace:
    h = h or build(n)
    pts = index_points(h, eps)
    gs = pairing_matrix(h.datum, 0, points=pts)
    return gs


def closed_matrix(h: HeisenbergGroup) -> Mat:
    z = h.zindex
    return Mat([[closed_form(h.n, a, b) for b in z] for a in z])


def block_formula(h: HeisenbergGroup) -> Mat:
    """Closed form of M^2: delta_{x,x'}(2-delta_{x,0})(2 delta_{y,y'} - |E_x|^-1)."""
    z = h.zindex
    rows = []
    for x, y in z:
        ex = len(h.quotient_reps(x))
        row = []
        for x2, y2 in z:
            if x != x2:
                row.append(mpq(0))
            else:
                row.append((2 - (x == 0)) * (2 * (y == y2) - mpq(1, ex)))
        rows.append(row)
    return Mat(rows)


def z_count(n: int) -> int:
    return (1 << 2 * n) + ((1 << 2 * n) - 1) * (1 << (2 * n - 1))


@dataclass
class SpectrumReport:
    n: int
    size: int
    matches_closed_form: bool
    mismatches: list
    square_matches_blocks: bool
    min_poly_ok: bool
    min_poly_12: bool
    determinant: object
    char_poly_sq: object = None
    multiplicities: dict = field(default_factory=dict)
    residual: str | None = None

    @property
    def factored(self) -> str | None:
        if self.char_poly_sq is None:
            return None
        out = format_factored(self.multiplicities)
        return out + f"({self.residual})" if self.residual else out

    def to_json(self) -> dict:
        from .exact import format_scalar
        return {"n": self.n, "size": self.size, "matches_closed_form": self.matches_closed_form,
                "mismatches": self.mismatches, "square_matches_blocks": self.square_matches_blocks,
                "min_poly_divides_124": self.min_poly_ok, "min_poly_divides_12": self.min_poly_12,
                "det": format_scalar(self.determinant),
                "char_poly_sq": self.factored}


def spectrum_report(n: int, with_char_poly: bool = True) -> SpectrumReport:
    if n > 2:
        raise SizeLimit("spectrum is computed for n <= 2")
    h = build(n)
    m = matrix_M(n, h).matrix
    closed = closed_matrix(h)
    mism = []
    for i in range(m.nrows):
        for j in range(m.ncols):
            if m[i, j] != closed[i, j]:
                mism.append((h.zindex[i], h.zindex[j], str(m[i, j]), str(closed[i, j])))
    sq = m @ m
    rep = SpectrumReport(n, m.nrows, not mism, mism[:20], sq == block_formula(h),
                         min_poly_divides(sq, [1, 2, 4]), min_poly_divides(sq, [1, 2]), det(m))
    if with_char_poly:
        cp = char_poly(sq)
        mult, rest = root_multiplicities(cp, [1, 2, 4])
        rep.char_poly_sq = cp
        rep.multiplicities = mult
        if rest.degree > 0:
            rep.residual = str(rest)
    return rep


# ---------------------------------------------------------------------------
# Sector checks beyond the trivial sector
# ---------------------------------------------------------------------------

def _sign_points(h: HeisenbergGroup, x: int, eps: int, sc: SectorCharacters | None = None):
    d = h.datum
    sc = sc or sector_characters(h, x)
    xd = h.lift(x, eps)
    z = d.centralizer(xd)
    return [d.point(xd, ClassFunction(z, ch.values, ch.name), label=f"({eps}:{x},{ch.name})")
            for ch in sc.sign_sector]


def mixed_sector_check(h: HeisenbergGroup, xs: list[int] | None = None) -> list[tuple]:
    """Compare ((x-dot,ybar),(x'-dot,rho1)) with its closed form; returns mismatches.

    ``xs`` restricts the x' side (default: x' = 0 and every x' with q(x') = 1).
    """
    n = h.n
    d = h.datum
    if xs is None:
        xs = [x for x in range(h.size_e) if x == 0 or h.q(x)]
    scs = {x: sector_characters(h, x) for x in range(h.size_e)}
    bad = []
    for x in range(h.size_e):
        for eps in (0, 1):
            xd = h.lift(x, eps)
            for y, ch in scs[x].trivial_sector:
                p = d.point(xd, ClassFunction(d.centralizer(xd), ch.values, ch.name))
                for x2 in xs:
                    for eps2 in (0, 1):
                        for q in _sign_points(h, x2, eps2, scs[x2]):
                            got = d.pair(p, q)
                            if x != 0:
                                want = mpq(0)
                            else:
                                want = mpq(-1 if symplectic(n, x2, y) else 1, 1 << n) * (-1 if eps else 1)
                            if got != want:
                                bad.append(((x, eps, y), q.label, str(got), str(want)))
    return bad


def sign_sector_check(h: HeisenbergGroup, xs: list[int] | None = None) -> list[tuple]:
    """((x-dot,rho1),(x'-dot,rho1')) against the 0/+-1 rule; returns mismatches."""
    d = h.datum
    if xs is None:
        xs = [x for x in range(h.size_e) if x == 0 or h.q(x)]
    bad = []
    scs = {x: sector_characters(h, x) for x in range(h.size_e)}
    for x in xs:
        for x2 in range(h.size_e):
            for eps in (0, 1):
                for eps2 in (0, 1):
                    for p in _sign_points(h, x, eps, scs[x]):
                        for q in _sign_points(h, x2, eps2, scs[x2]):
                            got = d.pair(p, q)
                            same_rho = p.sigma.name == q.sigma.name
                            if x != x2:
                                want = 0
                            elif eps == eps2:
                                want = 1 if same_rho else -1
                            else:
                                want = -1 if same_rho else 1
                            if got != want:
                                bad.append((p.label, q.label, str(got), want))
    return bad


def sign_sector_deviations(h: HeisenbergGroup) -> list[int]:
    """x with q(x) = 0, x != 0 where the 0/+-1 rule fails under the chosen q."""
    others = [x for x in range(1, h.size_e) if not h.q(x)]
    return sorted({int(lbl.split(":")[1].split(",")[0]) for lbl, *_ in sign_sector_check(h, others)})


def character_tables_ok(h: HeisenbergGroup) -> list[str]:
    fails = []
    for x in range(h.size_e):
        sc = sector_characters(h, x)
        for msg in character_table_failures(sc.group, sc.all):
            fails.append(f"x={x}: {msg}")
    return fails


def lift_independent(h: HeisenbergGroup) -> bool:
    return matrix_M(h.n, h, 0).matrix == matrix_M(h.n, h, 1).matrix


def sampled_closed_form_check(n: int, samples: int, seed: int) -> list[tuple]:
    h = build(n)
    rng = random.Random(seed)
    d = h.datum
    pts = index_points(h)
    bad = []
    for _ in range(samples):
        i, j = rng.randrange(len(pts)), rng.randrange(len(pts))
        got = d.pair(pts[i], pts[j])
        want = closed_form(n, h.zindex[i], h.zindex[j])
        if got != want:
            bad.append((h.zindex[i], h.zindex[j], str(got), str(want)))
    return bad
