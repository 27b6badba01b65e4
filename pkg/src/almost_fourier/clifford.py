"""Exact Clifford algebra arithmetic and the finite spin lifts built from it.

Elements are sparse maps from bitmasks (bit k set means e_{k+1} is a factor,
factors kept in increasing order) to rationals.  The basis e_1..e_N is
orthonormal, so e_k^2 = 1 and distinct basis vectors anticommute.

The spin datum V = sum_i W_i (x) E_i is laid out block by block in
increasing i; inside a block the basis vector w_i^a (x) E_i[b] sits at a
fixed index.  Products of unit vectors stay small (at most 2^k monomials for
k factors), which keeps everything exact for N <= 14.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from gmpy2 import mpq

from .exact import Mat

MAX_N = 14


class CliffordError(ValueError):
    pass


class AlgebraMismatch(CliffordError):
    pass


class NotInV(CliffordError):
    pass


class BadIndex(CliffordError):
    pass


class RelationFailure(CliffordError):
    pass


class UnknownLabel(KeyError):
    pass


def _swap_sign(a: int, b: int) -> int:
    # parity of pairs (x in a, y in b) with x > y
    n = 0
    while b:
        low = b & -b
        n += bin(a & ~((low << 1) - 1)).count("1")
        b ^= low
    return -1 if n & 1 else 1


class CliffordAlgebra:
    def __init__(self, n: int):
        if n < 0 or n > MAX_N:
            raise CliffordError(f"dimension {n} outside 0..{MAX_N}")
        self.n = n

    def __eq__(self, other):
        return isinstance(other, CliffordAlgebra) and other.n == self.n

    def __hash__(self):
        return hash(("cl", self.n))

    def __repr__(self):
        return f"CliffordAlgebra({self.n})"

    def scalar(self, x) -> "CliffordElement":
        x = mpq(x)
        return CliffordElement(self, {0: x} if x else {})

    def one(self) -> "CliffordElement":
        return self.scalar(1)

    def e(self, k: int) -> "CliffordElement":
        """Basis vector e_k, 1-based."""
        if not 1 <= k <= self.n:
            raise BadIndex(f"e_{k} not in dimension {self.n}")
        return CliffordElement(self, {1 << (k - 1): mpq(1)})

    def vector(self, coords: Sequence) -> "CliffordElement":
        if len(coords) != self.n:
            raise AlgebraMismatch(f"vector of length {len(coords)} in dimension {self.n}")
        return CliffordElement(self, {1 << k: mpq(c) for k, c in enumerate(coords) if c})

    def product(self, vectors: Iterable[Sequence]) -> "CliffordElement":
        out = self.one()
        for v in vectors:
            out = out * self.vector(v)
        return out


@dataclass(eq=False)
class CliffordElement:
    algebra: CliffordAlgebra
    terms: dict = field(default_factory=dict)

    def _check(self, other: "CliffordElement"):
        if not isinstance(other, CliffordElement) or other.algebra != self.algebra:
            raise AlgebraMismatch("elements belong to different algebras")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return CliffordElement(self.algebra, out)

    def __neg__(self):
        return CliffordElement(self.algebra, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s) -> "CliffordElement":
        s = mpq(s)
        if not s:
            return CliffordElement(self.algebra, {})
        return CliffordElement(self.algebra, {m: c * s for m, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, CliffordElement):
            return self.scale(other)
        return cl_mul(self, other)

    __rmul__ = scale

    def __eq__(self, other):
        if isinstance(other, CliffordElement):
            return self.algebra == other.algebra and self.terms == other.terms
        x = mpq(other)
        return self.terms == ({0: x} if x else {})

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def reverse(self) -> "CliffordElement":
        # reversing k factors is sign (-1)^(k(k-1)/2)
        out = {}
        for m, c in self.terms.items():
            k = bin(m).count("1")
            out[m] = -c if (k * (k - 1) // 2) & 1 else c
        return CliffordElement(self.algebra, out)

    @property
    def is_scalar(self) -> bool:
        return all(m == 0 for m in self.terms)

    @property
    def parity(self) -> int | None:
        ps = {bin(m).count("1") & 1 for m in self.terms}
        return ps.pop() if len(ps) == 1 else None

    def vector_part(self) -> tuple | None:
        """Coordinates if this element lies in V, else None."""
        coords = [mpq(0)] * self.algebra.n
        for m, c in self.terms.items():
            if bin(m).count("1") != 1:
                return None
            coords[m.bit_length() - 1] = c
        return tuple(coords)

    def key(self):
        return tuple(sorted(self.terms.items()))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in sorted(self.terms.items()):
            idx = [str(k + 1) for k in range(self.algebra.n) if m >> k & 1]
            mono = "e" + ".".join(idx) if idx else "1"
            parts.append(f"{c}*{mono}" if mono != "1" else f"{c}")
        return " + ".join(parts)

    __repr__ = __str__


def cl_mul(a: CliffordElement, b: CliffordElement) -> CliffordElement:
    a._check(b)
    out: dict = {}
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            m = ma ^ mb
            c = ca * cb if _swap_sign(ma, mb) > 0 else -(ca * cb)
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
    return CliffordElement(a.algebra, out)


# -- vectors and reflections ------------------------------------------------

def dot(u: Sequence, v: Sequence):
    return sum((mpq(a) * mpq(b) for a, b in zip(u, v)), mpq(0))


def reflect(u: Sequence, v: Sequence) -> tuple:
    """Reflection in the hyperplane orthogonal to the unit vector u."""
    k = 2 * dot(u, v)
    return tuple(mpq(b) - k * mpq(a) for a, b in zip(u, v))


def rational_unit_vector(dim: int, rng: random.Random, height: int = 5) -> tuple:
    """Inverse stereographic projection of a random rational point."""
    if dim == 1:
        return (mpq(rng.choice((1, -1))),)
    t = [mpq(rng.randint(-height, height), rng.randint(1, height)) for _ in range(dim - 1)]
    s = sum(x * x for x in t)
    d = s + 1
    v = tuple(2 * x / d for x in t) + ((s - 1) / d,)
    # shuffle so the special last coordinate is not always last
    perm = list(range(dim))
    rng.shuffle(perm)
    return tuple(v[p] for p in perm)


def beta(vectors: Sequence[Sequence], v: Sequence) -> tuple:
    """Conjugate v by the product of the given unit vectors.

    The result is checked to lie in V and to equal the composed reflections
    with sign (-1)^n; a mismatch raises NotInV.
    """
    if not vectors:
        return tuple(mpq(x) for x in v)
    alg = CliffordAlgebra(len(vectors[0]))
    for u in vectors:
        if dot(u, u) != 1:
            raise CliffordError("factor is not a unit vector")
    xi = alg.product(vectors)
    xi_inv = alg.product(reversed(vectors))
    img = (xi * alg.vector(v) * xi_inv).vector_part()
    if img is None:
        raise NotInV("conjugate left the vector space")
    expect = tuple(mpq(x) for x in v)
    for u in reversed(vectors):
        expect = reflect(u, expect)
    if len(vectors) % 2:
        expect = tuple(-x for x in expect)
    if img != expect:
        raise NotInV(f"conjugate {img} differs from reflection formula {expect}")
    return img


def beta_matrix(xi: CliffordElement, xi_inv: CliffordElement | None = None) -> Mat:
    """Matrix of v -> xi v xi^-1 on V, for xi a product of unit vectors."""
    alg = xi.algebra
    if xi_inv is None:
        xi_inv = xi.reverse()
    cols = []
    for k in range(1, alg.n + 1):
        img = (xi * alg.e(k) * xi_inv).vector_part()
        if img is None:
            raise NotInV(f"image of e_{k} is not a vector")
        cols.append(img)
    return Mat([[cols[j][i] for j in range(alg.n)] for i in range(alg.n)])


# -- spin datum ---------------------------------------------------------------

def parse_datum(text: str) -> dict:
    """Parse "1:1,3:2" into {1: 1, 3: 2}."""
    out = {}
    for part in text.replace(" ", "").split(","):
        if not part:
            continue
        try:
            i, m = part.split(":")
            i, m = int(i), int(m)
        except ValueError:
            raise CliffordError(f"bad datum entry {part!r}") from None
        if i < 1 or m < 0:
            raise CliffordError(f"bad datum entry {part!r}")
        if m:
            out[i] = out.get(i, 0) + m
    return out


class SpinDatum:
    def __init__(self, mult: dict):
        self.mult = {int(i): int(m) for i, m in mult.items() if m}
        if any(i < 1 or m < 0 for i, m in self.mult.items()):
            raise CliffordError("multiplicities must be indexed by i >= 1 and be >= 0")
        self.n = sum(i * m for i, m in self.mult.items())
        if self.n > MAX_N:
            raise CliffordError(f"N = {self.n} exceeds {MAX_N}")
        self.algebra = CliffordAlgebra(self.n)
        self._offset = {}
        off = 0
        for i in sorted(self.mult):
            self._offset[i] = off
            off += i * self.mult[i]
        # chosen unit vector of each E_i: first coordinate
        self.e = {i: tuple(mpq(1 if b == 0 else 0) for b in range(self.mult[i])) for i in self.odd}

    def __repr__(self):
        return "SpinDatum(" + ",".join(f"{i}:{m}" for i, m in sorted(self.mult.items())) + ")"

    @property
    def indices(self) -> list[int]:
        return sorted(self.mult)

    @property
    def odd(self) -> list[int]:
        return [i for i in self.indices if i % 2]

    @property
    def even(self) -> list[int]:
        return [i for i in self.indices if i % 2 == 0]

    def odd_at_least(self, t: int) -> list[int]:
        return [i for i in self.odd if self.mult[i] >= t]

    def index(self, i: int, a: int, b: int) -> int:
        """0-based position of w_i^a (x) E_i[b]; a in 1..i, b in 1..m_i."""
        if i not in self.mult or not 1 <= a <= i or not 1 <= b <= self.mult[i]:
            raise BadIndex(f"no basis vector ({i}, {a}, {b})")
        return self._offset[i] + (a - 1) * self.mult[i] + (b - 1)

    def vector(self, i: int, a: int, e: Sequence) -> tuple:
        """Coordinates of w_i^a (x) e in V."""
        if len(e) != self.mult.get(i, -1):
            raise BadIndex(f"vector of length {len(e)} is not in E_{i}")
        out = [mpq(0)] * self.n
        for b, x in enumerate(e, 1):
            out[self.index(i, a, b)] = mpq(x)
        return tuple(out)

    def block(self, i: int) -> range:
        return range(self._offset[i], self._offset[i] + i * self.mult[i])

    def _need_odd(self, i: int):
        if i not in self.mult or i % 2 == 0:
            raise BadIndex(f"{i} is not in I_odd")

    def _unit(self, i: int, e: Sequence):
        if dot(e, e) != 1:
            raise BadIndex("not a unit vector of E_i")

    def y_tilde(self, i: int) -> CliffordElement:
        self._need_odd(i)
        return self.algebra.product(self.vector(i, a, self.e[i]) for a in range(1, i + 1))

    def x(self, i: int, e: Sequence, f: Sequence) -> CliffordElement:
        self._need_odd(i)
        self._unit(i, e)
        self._unit(i, f)
        vs = [self.vector(i, a, e) for a in range(1, i + 1)]
        vs += [self.vector(i, a, f) for a in range(1, i + 1)]
        return self.algebra.product(vs)

    def y_matrix(self, i: int) -> Mat:
        """+1 on W_i (x) C e_i, -1 on its orthogonal complement."""
        self._need_odd(i)
        n = self.n
        rows = [[mpq(-1 if r == c else 0) for c in range(n)] for r in range(n)]
        for a in range(1, i + 1):
            w = self.vector(i, a, self.e[i])
            for r in range(n):
                for c in range(n):
                    rows[r][c] += 2 * w[r] * w[c]
        return Mat(rows)

    def reflect_e(self, i: int, v: Sequence) -> tuple:
        """The reflection of E_i in the hyperplane orthogonal to e_i."""
        return reflect(self.e[i], v)

    def random_unit(self, i: int, rng: random.Random) -> tuple:
        return rational_unit_vector(self.mult[i], rng)


def spin_generators(d: SpinDatum) -> dict:
    """{"y": {i: y~_i}, "x": callable (i, e, f) -> x_{i;e,f}}."""
    return {"y": {i: d.y_tilde(i) for i in d.odd}, "x": d.x}


# -- checks -------------------------------------------------------------------

@dataclass
class CliffordReport:
    name: str
    checks: list = field(default_factory=list)
    data: dict = field(default_factory=dict)

    def add(self, name: str, ok: bool, expected=None, actual=None):
        self.checks.append({"name": name, "ok": bool(ok), "expected": expected, "actual": actual})

    @property
    def ok(self) -> bool:
        return all(c["ok"] for c in self.checks)

    def failures(self) -> list:
        return [c for c in self.checks if not c["ok"]]

    def to_json(self) -> dict:
        return {"name": self.name, "ok": self.ok, "checks": self.checks,
                "data": {k: str(v) for k, v in self.data.items()}}


def closure(gens: Sequence[CliffordElement], limit: int = 1 << 12) -> list:
    """Elements of the group generated by gens (all signed monomials here)."""
    alg = gens[0].algebra
    one = alg.one()
    seen = {one.key(): one}
    todo = [one]
    while todo:
        g = todo.pop()
        for h in gens:
            p = g * h
            k = p.key()
            if k not in seen:
                seen[k] = p
                todo.append(p)
                if len(seen) > limit:
                    raise RelationFailure("generated group exceeds size limit")
    return list(seen.values())


def delta_check(d: SpinDatum, strict: bool = False) -> CliffordReport:
    if not d.odd:
        raise BadIndex("I_odd is empty")
    alg = d.algebra
    rep = CliffordReport(f"delta {d!r}")
    c = alg.scalar(-1)
    one = alg.one()
    ys = {i: d.y_tilde(i) for i in d.odd}
    rep.add("c^2 = 1", c * c == one)
    for i, y in ys.items():
        rep.add(f"c y{i} = y{i} c", c * y == y * c)
        expect = (-1) ** (i * (i - 1) // 2)
        got = y * y
        rep.add(f"y{i}^2 = c^{i * (i - 1) // 2}", got == expect, str(expect), str(got))
    for i in ys:
        for j in ys:
            if i < j:
                rep.add(f"y{i} y{j} = c y{j} y{i}", ys[i] * ys[j] == c * ys[j] * ys[i])
    group = closure([c] + list(ys.values()))
    order = 1 << (len(ys) + 1)
    rep.add("group order", len(group) == order, order, len(group))
    rep.data["order"] = len(group)
    if strict and not rep.ok:
        raise RelationFailure("; ".join(x["name"] for x in rep.failures()))
    return rep


def conj_action_check(d: SpinDatum, i: int, e=None, f=None, rng: random.Random | None = None,
                      strict: bool = False) -> CliffordReport:
    """Conjugation of x_{i;e,f} by y~_i, compared with y_i at the orthogonal level.

    For m_i = 1 only the commutation of y~_i with y~_i^2 is checked.  The
    sign s in y~ x_{i;e,f} y~^-1 = s x_{i;re,rf} is recorded, not asserted.
    """
    d._need_odd(i)
    rng = rng or random.Random(0)
    rep = CliffordReport(f"conj {d!r} i={i}")
    y = d.y_tilde(i)
    y_inv = y.reverse()
    rep.add("y~ y~^-1 = 1", y * y_inv == 1)
    if d.mult[i] == 1:
        xe = d.x(i, d.e[i], d.e[i])
        rep.add("x_{e,e} = y~^2", xe == y * y)
        rep.add("y~ commutes with x_{e,e}", y * xe == xe * y)
        return rep
    e = e if e is not None else d.random_unit(i, rng)
    f = f if f is not None else d.random_unit(i, rng)
    x = d.x(i, e, f)
    x_inv = x.reverse()
    lhs = y * x * y_inv
    ym = d.y_matrix(i)
    rep.add("beta(y~) = y_i", beta_matrix(y, y_inv) == ym)
    rep.add("beta level", beta_matrix(lhs, y * x_inv * y_inv) == ym @ beta_matrix(x, x_inv) @ ym)
    target = d.x(i, d.reflect_e(i, e), d.reflect_e(i, f))
    if lhs == target:
        s = 1
    elif lhs == -target:
        s = -1
    else:
        s = 0
    rep.add("lift matches up to sign", s != 0)
    rep.data["sign"] = s
    # antisymmetry needs e and f orthogonal; in general x_{f,e} inverts x_{e,f}
    xfe = d.x(i, f, e)
    rep.add("x_{e,f} x_{f,e} = 1", x * xfe == 1)
    rep.data["antisymmetric_for_sampled_pair"] = x == -xfe
    f0 = _orthogonal_unit(e)
    x0, x0r = d.x(i, e, f0), d.x(i, f0, e)
    rep.add("x_{e,f} = -x_{f,e} for orthogonal e, f", x0 == -x0r)
    rep.add("x_{e,f} x_{f,e} = -x_{e,f}^2 for orthogonal e, f", x0 * x0r == -(x0 * x0))
    for j in d.odd:
        if j != i and d.mult[j] >= 2:
            xj = d.x(j, d.random_unit(j, rng), d.random_unit(j, rng))
            rep.add(f"y~ commutes with x_{j}", y * xj == xj * y)
    if strict and not rep.ok:
        raise RelationFailure("; ".join(c["name"] for c in rep.failures()))
    return rep


def central_minus_one(d: SpinDatum, i: int, rng: random.Random | None = None) -> CliffordElement:
    """A Clifford realization of c'_i: x_{i;e,f}^2 for orthogonal unit e, f.

    x_{i;e,f} lifts a half turn on W_i (x) span(e, f), so its square is -1.
    With m_i = 1 there is no room for two orthogonal vectors and the
    scalar -1 is used directly.
    """
    d._need_odd(i)
    m = d.mult[i]
    if m == 1:
        return d.algebra.scalar(-1)
    rng = rng or random.Random(0)
    e = d.random_unit(i, rng)
    f = _orthogonal_unit(e)
    x = d.x(i, e, f)
    return x * x


def _orthogonal_unit(e: Sequence) -> tuple:
    # the rational reflection carrying the first axis to e carries the
    # second axis to a unit vector orthogonal to e
    n = len(e)
    axes = [tuple(mpq(1 if j == k else 0) for j in range(n)) for k in range(n)]
    if tuple(map(abs, e)) in axes:
        k = axes.index(tuple(map(abs, e)))
        return axes[1 if k == 0 else 0]
    diff = tuple(mpq(a) - b for a, b in zip(e, axes[0]))
    s = 2 * dot(axes[1], diff) / dot(diff, diff)
    return tuple(o - s * x for o, x in zip(axes[1], diff))


def kernel_containment_check(d: SpinDatum, rng: random.Random | None = None) -> CliffordReport:
    """Each product c'_i c'_j (i, j odd, distinct) maps to 1 in C(V)."""
    rng = rng or random.Random(0)
    rep = CliffordReport(f"kernel {d!r}")
    cs = {i: central_minus_one(d, i, rng) for i in d.odd}
    for i, ci in cs.items():
        rep.add(f"c'_{i} -> -1", ci == -1, "-1", str(ci))
    for i in cs:
        for j in cs:
            if i < j:
                rep.add(f"c'_{i} c'_{j} -> 1", cs[i] * cs[j] == 1)
    return rep


def beta_sample_check(samples: int = 200, max_n: int = 8, seed: int = 0) -> CliffordReport:
    rng = random.Random(seed)
    rep = CliffordReport("beta reflection formula")
    bad = 0
    for _ in range(samples):
        n = rng.randint(1, max_n)
        k = rng.randint(1, min(4, n + 1))
        vs = [rational_unit_vector(n, rng) for _ in range(k)]
        if rng.random() < 0.5:
            v = [mpq(0)] * n
            v[rng.randrange(n)] = mpq(1)
        else:
            v = [mpq(rng.randint(-4, 4), rng.randint(1, 4)) for _ in range(n)]
        try:
            beta(vs, v)
        except NotInV:
            bad += 1
    rep.add("samples agree", bad == 0, 0, bad)
    rep.data["samples"] = samples
    return rep


# -- simply-connectedness -----------------------------------------------------

SC_TYPES = {"SL": "SL", "A": "SL", "Spin": "Spin", "SO": "Spin", "B": "Spin", "D": "Spin",
            "Sp": "Symplectic", "Symplectic": "Symplectic", "C": "Symplectic"}


def simply_connected(kind: str, m: dict) -> bool:
    """Whether the derived group of the reductive centralizer is simply connected."""
    t = SC_TYPES.get(kind)
    if t is None:
        raise CliffordError(f"unknown type {kind!r}")
    if any(v < 0 for v in m.values()):
        raise CliffordError("negative multiplicity")
    if t == "SL":
        return True
    if t == "Spin":
        return sum(1 for i, v in m.items() if i % 2 and v >= 3) <= 1
    return sum(1 for i, v in m.items() if i % 2 == 0 and v >= 3) == 0


# -- exceptional groups -------------------------------------------------------

@dataclass(frozen=True)
class ExceptionalRow:
    group: str
    label: str
    h0: str
    components: str
    simply_connected: bool


OTHER = "*"

EXCEPTIONAL = [
    ExceptionalRow("G2", OTHER, "derived group simply connected", "-", True),
    ExceptionalRow("F4", "A_1~A_1", "PGL_2 x SL_2", "1", False),
    ExceptionalRow("F4", "B_3", "PGL_2", "1", False),
    ExceptionalRow("F4", OTHER, "derived group simply connected", "-", True),
    ExceptionalRow("E6", OTHER, "derived group simply connected", "-", True),
    ExceptionalRow("E7", "A_2A_1^2", "SL_2^3/{+-1}, diagonal centre", "1", False),
    ExceptionalRow("E7", OTHER, "derived group simply connected", "-", True),
    ExceptionalRow("E8", "A_2A_1^2", "(SL_2 x Spin_7)/{+-1}, diagonal centre", "1", False),
    ExceptionalRow("E8", "A_3A_2A_1", "PGL_2 x SL_2", "1", False),
    ExceptionalRow("E8", "A_4A_2", "SL_2^2/{+-1}, diagonal centre", "1", False),
    ExceptionalRow("E8", "D_4(a_1)A_2", "PGL_3, extended by Z/2 acting by an outer involution",
                   "Z/2", False),
    ExceptionalRow("E8", "D_5(a_1)A_1", "PGL_2 x SL_2", "1", False),
    ExceptionalRow("E8", "A_6", "SL_2^2/{+-1}, diagonal centre", "1", False),
    ExceptionalRow("E8", OTHER, "derived group simply connected", "-", True),
]

_BY_KEY = {(r.group, r.label): r for r in EXCEPTIONAL}


def _norm_label(label: str) -> str:
    return label.replace(" ", "").replace("\\t", "~").replace("tA", "A~")


def exceptional_lookup(group_type: str, orbit_label: str) -> ExceptionalRow:
    """Row for (group, label); label "*" stands for every orbit not listed."""
    key = (group_type.upper(), _norm_label(orbit_label))
    row = _BY_KEY.get(key)
    if row is None:
        raise UnknownLabel(f"{group_type}:{orbit_label}")
    return row


def exceptional_rows(group_type: str | None = None) -> list[ExceptionalRow]:
    if group_type is None:
        return list(EXCEPTIONAL)
    return [r for r in EXCEPTIONAL if r.group == group_type.upper()]
