"""Exact scalars, univariate polynomials and dense linear algebra.

Scalars live in Q(i, sqrt3).  Almost everything in the library stays inside
the Gaussian rationals Q(i); the sqrt3 component only appears for groups
whose centralizers have elements of order 3 (cube roots of unity).

Rational parts are ``gmpy2.mpq``.  Matrix routines accept any field elements
supporting ``+ - * /`` and truthiness (``mpq`` or :class:`Scalar`), and
lower to plain ``mpq`` whenever every entry is a real rational.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

from gmpy2 import lcm, mpq, mpz

__all__ = [
    "Scalar", "Poly", "Mat", "I", "ONE", "ZERO",
    "as_scalar", "as_number", "root_of_unity",
    "kernel_basis", "rank", "det", "char_poly", "solve_exact",
    "min_poly_divides", "poly_at_matrix", "root_multiplicities",
    "NonSquare", "DimensionMismatch",
]


class NonSquare(ValueError):
    pass


class DimensionMismatch(ValueError):
    pass


_Q0 = mpq(0)
_Q1 = mpq(1)


def _q(x) -> mpq:
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, str):
        return mpq(x.strip())
    return mpq(x)


class Scalar:
    """Element ``re + im*i + sqrt3*(s_re + s_im*i)`` with rational parts."""

    __slots__ = ("re", "im", "s_re", "s_im")

    def __init__(self, re=0, im=0, s_re=0, s_im=0):
        self.re = _q(re)
        self.im = _q(im)
        self.s_re = _q(s_re)
        self.s_im = _q(s_im)

    @classmethod
    def _raw(cls, re, im, s_re=_Q0, s_im=_Q0) -> "Scalar":
        obj = object.__new__(cls)
        obj.re = re
        obj.im = im
        obj.s_re = s_re
        obj.s_im = s_im
        return obj

    # -- predicates -------------------------------------------------------
    @property
    def is_gaussian(self) -> bool:
        return not self.s_re and not self.s_im

    @property
    def is_real(self) -> bool:
        return not self.im and not self.s_im

    @property
    def is_rational(self) -> bool:
        return not self.im and not self.s_re and not self.s_im

    def __bool__(self) -> bool:
        return bool(self.re or self.im or self.s_re or self.s_im)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return Scalar._raw(self.re + o.re, self.im + o.im,
                           self.s_re + o.s_re, self.s_im + o.s_im)

    __radd__ = __add__

    def __neg__(self):
        return Scalar._raw(-self.re, -self.im, -self.s_re, -self.s_im)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return Scalar._raw(self.re - o.re, self.im - o.im,
                           self.s_re - o.s_re, self.s_im - o.s_im)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, type(_Q0))):
            o = mpq(other)
            return Scalar._raw(self.re * o, self.im * o, self.s_re * o, self.s_im * o)
        o = _coerce(other)
        if o is None:
            return NotImplemented
        a, b, c, d = self.re, self.im, self.s_re, self.s_im
        e, f, g, h = o.re, o.im, o.s_re, o.s_im
        if not (c or d or g or h):
            return Scalar._raw(a * e - b * f, a * f + b * e)
        # (u + v sqrt3)(w + z sqrt3) = (uw + 3vz) + (uz + vw) sqrt3, u..z in Q(i)
        uw_re, uw_im = a * e - b * f, a * f + b * e
        vz_re, vz_im = c * g - d * h, c * h + d * g
        uz_re, uz_im = a * g - b * h, a * h + b * g
        vw_re, vw_im = c * e - d * f, c * f + d * e
        return Scalar._raw(uw_re + 3 * vz_re, uw_im + 3 * vz_im,
                           uz_re + vw_re, uz_im + vw_im)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if not self:
            raise ZeroDivisionError("inverse of zero Scalar")
        a, b, c, d = self.re, self.im, self.s_re, self.s_im
        if not (c or d):
            n = a * a + b * b
            return Scalar._raw(a / n, -b / n)
        # 1/(u + v sqrt3) = (u - v sqrt3) / (u^2 - 3 v^2)
        u = Scalar._raw(a, b)
        v = Scalar._raw(c, d)
        norm = u * u - 3 * (v * v)
        ninv = norm.inverse()
        num = Scalar._raw(a, b, -c, -d)
        return num * ninv

    def __truediv__(self, other):
        if isinstance(other, (int, type(_Q0))):
            o = mpq(other)
            return Scalar._raw(self.re / o, self.im / o, self.s_re / o, self.s_im / o)
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out, base = ONE, self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conj(self) -> "Scalar":
        return Scalar._raw(self.re, -self.im, self.s_re, -self.s_im)

    conjugate = conj

    # -- comparison / hashing --------------------------------------------
    def __eq__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return (self.re == o.re and self.im == o.im
                and self.s_re == o.s_re and self.s_im == o.s_im)

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        if self.is_rational:
            return hash(self.re)
        return hash((self.re, self.im, self.s_re, self.s_im))

    # -- conversion -------------------------------------------------------
    def to_number(self):
        """``mpq`` when rational, else ``self``."""
        return self.re if self.is_rational else self

    def __complex__(self):
        s3 = 3 ** 0.5
        return complex(float(self.re) + s3 * float(self.s_re),
                       float(self.im) + s3 * float(self.s_im))

    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"Scalar('{format_scalar(self)}')"

    @classmethod
    def parse(cls, text: str) -> "Scalar":
        return parse_scalar(text)


def _coerce(x) -> Scalar | None:
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Fraction)) or type(x) is type(_Q0) or type(x) is type(mpz(0)):
        return Scalar._raw(_q(x), _Q0)
    return None


def as_scalar(x) -> Scalar:
    """Coerce ints, Fractions, mpq, and Scalar strings to :class:`Scalar`."""
    if isinstance(x, str):
        return parse_scalar(x)
    s = _coerce(x)
    if s is None:
        raise TypeError(f"cannot interpret {x!r} as a Scalar")
    return s


def as_number(x):
    """Internal canonical form: ``mpq`` for rationals, ``Scalar`` otherwise."""
    if isinstance(x, Scalar):
        return x.to_number()
    if isinstance(x, str):
        return parse_scalar(x).to_number()
    return _q(x)


def _fmt_q(q) -> str:
    q = mpq(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _fmt_gauss(re, im) -> str:
    if not im:
        return _fmt_q(re)
    if not re:
        return f"{_fmt_q(im)}*i"
    sign = "-" if im < 0 else "+"
    return f"{_fmt_q(re)}{sign}{_fmt_q(abs(im))}*i"


def format_scalar(x) -> str:
    """``p/q`` or ``p/q+r/s*i``; a sqrt3 part is appended as ``+(..)*sqrt3``."""
    x = as_scalar(x) if not isinstance(x, Scalar) else x
    base = _fmt_gauss(x.re, x.im)
    if x.is_gaussian:
        return base
    ext = _fmt_gauss(x.s_re, x.s_im)
    if not x.re and not x.im:
        return f"({ext})*sqrt3"
    return f"{base}+({ext})*sqrt3"


_RAT = r"[+-]?\d+(?:/\d+)?"
_GAUSS_RE = re.compile(
    rf"^\s*(?:(?P<re>{_RAT})(?:(?P<sgn>[+-])(?P<im>\d+(?:/\d+)?)\*i)?|(?P<pim>{_RAT})\*i)\s*$")


def _parse_gauss(text: str):
    m = _GAUSS_RE.match(text)
    if not m:
        raise ValueError(f"bad Scalar literal {text!r}")
    if m.group("pim") is not None:
        return _Q0, mpq(m.group("pim"))
    re_ = mpq(m.group("re"))
    im = _Q0
    if m.group("im") is not None:
        im = mpq(m.group("im"))
        if m.group("sgn") == "-":
            im = -im
    return re_, im


def parse_scalar(text: str) -> Scalar:
    text = text.strip()
    if text.endswith("*sqrt3"):
        head = text[: -len("*sqrt3")]
        # head is "base+(ext)" or "(ext)"
        depth_start = head.rfind("(")
        if depth_start < 0 or not head.endswith(")"):
            raise ValueError(f"bad Scalar literal {text!r}")
        ext = head[depth_start + 1:-1]
        base = head[:depth_start]
        if base.endswith("+"):
            base = base[:-1]
        b_re, b_im = _parse_gauss(base) if base else (_Q0, _Q0)
        e_re, e_im = _parse_gauss(ext)
        return Scalar._raw(b_re, b_im, e_re, e_im)
    re_, im = _parse_gauss(text)
    return Scalar._raw(re_, im)


ZERO = Scalar()
ONE = Scalar(1)
I = Scalar(0, 1)


def root_of_unity(n: int, k: int = 1) -> Scalar:
    """exp(2*pi*i*k/n) for n dividing 12."""
    if 12 % n:
        raise ValueError(f"root of unity of order {n} is not in Q(i, sqrt3)")
    k = (k * (12 // n)) % 12
    half = mpq(1, 2)
    # zeta_12^k = cos(k*pi/6) + i sin(k*pi/6)
    table = {
        0: (1, 0, 0, 0), 1: (0, half, half, 0), 2: (half, 0, 0, half),
        3: (0, 1, 0, 0), 4: (-half, 0, 0, half), 5: (0, half, -half, 0),
        6: (-1, 0, 0, 0), 7: (0, -half, -half, 0), 8: (-half, 0, 0, -half),
        9: (0, -1, 0, 0), 10: (half, 0, 0, -half), 11: (0, -half, half, 0),
    }
    re_, im, s_re, s_im = table[k]
    return Scalar(re_, im, s_re, s_im)


def _conj(x):
    return x.conj() if isinstance(x, (Scalar, Poly)) else x


# ---------------------------------------------------------------------------
# Polynomials
# ---------------------------------------------------------------------------

class Poly:
    """Dense univariate polynomial in ``t``; coefficients low degree first.

    Throughout the Hecke code ``t`` stands for q^(1/2), so q = t**2.
    """

    __slots__ = ("c",)

    def __init__(self, coeffs: Iterable = ()):
        c = [as_number(x) for x in coeffs]
        while c and not c[-1]:
            c.pop()
        self.c = tuple(c)

    @classmethod
    def _raw(cls, c: list) -> "Poly":
        while c and not c[-1]:
            c.pop()
        obj = object.__new__(cls)
        obj.c = tuple(c)
        return obj

    @classmethod
    def const(cls, x) -> "Poly":
        return cls((x,))

    @classmethod
    def monomial(cls, k: int, coeff=1) -> "Poly":
        return cls([0] * k + [coeff])

    @property
    def coeffs(self) -> tuple:
        return tuple(as_scalar(x) for x in self.c)

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    def __bool__(self):
        return bool(self.c)

    def __add__(self, other):
        o = _as_poly(other)
        if o is None:
            return NotImplemented
        a, b = self.c, o.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, x in enumerate(b):
            out[k] = out[k] + x
        return Poly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw([-x for x in self.c])

    def __sub__(self, other):
        o = _as_poly(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = _as_poly(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = _as_poly(other)
        if o is None:
            return NotImplemented
        a, b = self.c, o.c
        if not a or not b:
            return Poly._raw([])
        if len(b) == 1:
            s = b[0]
            return Poly._raw([x * s for x in a])
        out = [_Q0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return Poly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Poly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        o = _as_poly(other)
        if o is None:
            return NotImplemented
        return self.c == o.c or (len(self.c) == len(o.c)
                                 and all(x == y for x, y in zip(self.c, o.c)))

    def __hash__(self):
        return hash(self.c)

    def conj(self) -> "Poly":
        return Poly._raw([_conj(x) for x in self.c])

    def __call__(self, x):
        acc = _Q0
        for coeff in reversed(self.c):
            acc = acc * x + coeff
        return acc

    def divmod_linear(self, root):
        """Divide by (t - root); return (quotient, remainder)."""
        if not self.c:
            return Poly._raw([]), _Q0
        q = [_Q0] * (len(self.c) - 1)
        acc = _Q0
        for k in range(len(self.c) - 1, -1, -1):
            acc = acc * root + self.c[k]
            if k:
                q[k - 1] = acc
        return Poly._raw(q), acc

    def __str__(self):
        if not self.c:
            return "0"
        terms = []
        for k in range(len(self.c) - 1, -1, -1):
            x = self.c[k]
            if not x:
                continue
            s = format_scalar(x)
            if k and s in ("1", "-1"):
                s = s[:-1]
            elif k and not isinstance(x, type(_Q0)) and not as_scalar(x).is_rational:
                s = f"({s})"
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            if k and s not in ("", "-"):
                s += "*"
            terms.append(s + mono)
        out = "+".join(terms).replace("+-", "-")
        return out

    def __repr__(self):
        return f"Poly({self})"


def _as_poly(x) -> Poly | None:
    if isinstance(x, Poly):
        return x
    if isinstance(x, (int, Fraction, Scalar)) or type(x) is type(_Q0):
        return Poly._raw([as_number(x)])
    return None


T = Poly.monomial(1)


# ---------------------------------------------------------------------------
# Dense matrices
# ---------------------------------------------------------------------------

class Mat:
    """Immutable dense matrix over numbers (mpq / Scalar) or :class:`Poly`."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        rs = tuple(tuple(_entry(x) for x in row) for row in rows)
        if rs:
            width = len(rs[0])
            if any(len(r) != width for r in rs):
                raise DimensionMismatch("ragged rows")
        else:
            width = ncols or 0
        self.rows = rs
        self.nrows = len(rs)
        self.ncols = width

    @classmethod
    def _raw(cls, rows, ncols=None) -> "Mat":
        obj = object.__new__(cls)
        obj.rows = tuple(tuple(r) for r in rows)
        obj.nrows = len(obj.rows)
        obj.ncols = len(obj.rows[0]) if obj.rows else (ncols or 0)
        return obj

    @classmethod
    def identity(cls, n: int, one=_Q1) -> "Mat":
        z = _Q0 if not isinstance(one, Poly) else Poly()
        return cls._raw([[one if i == j else z for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, m: int, n: int) -> "Mat":
        return cls._raw([[_Q0] * n for _ in range(m)], n)

    @classmethod
    def diag(cls, values: Sequence) -> "Mat":
        vals = [_entry(v) for v in values]
        n = len(vals)
        return cls._raw([[vals[i] if i == j else _Q0 for j in range(n)] for i in range(n)], n)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def row(self, i: int) -> tuple:
        return self.rows[i]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def __iter__(self):
        return iter(self.rows)

    def __add__(self, other: "Mat") -> "Mat":
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} + {other.shape}")
        return Mat._raw([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols)

    def __sub__(self, other: "Mat") -> "Mat":
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} - {other.shape}")
        return Mat._raw([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols)

    def __neg__(self):
        return Mat._raw([[-a for a in r] for r in self.rows], self.ncols)

    def scale(self, s) -> "Mat":
        s = _entry(s)
        return Mat._raw([[s * a for a in r] for r in self.rows], self.ncols)

    def __matmul__(self, other: "Mat") -> "Mat":
        if self.ncols != other.nrows:
            raise DimensionMismatch(f"{self.shape} @ {other.shape}")
        cols = list(zip(*other.rows)) if other.rows else []
        out = []
        for r in self.rows:
            nz = [(k, a) for k, a in enumerate(r) if a]
            row = []
            for c in cols:
                acc = _Q0
                for k, a in nz:
                    b = c[k]
                    if b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return Mat._raw(out, other.ncols)

    def __mul__(self, other):
        if isinstance(other, Mat):
            return self @ other
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def apply(self, vec: Sequence) -> tuple:
        if len(vec) != self.ncols:
            raise DimensionMismatch("vector length")
        out = []
        for r in self.rows:
            acc = _Q0
            for a, v in zip(r, vec):
                if a and v:
                    acc = acc + a * v
            out.append(acc)
        return tuple(out)

    def __pow__(self, k: int) -> "Mat":
        if self.nrows != self.ncols:
            raise NonSquare("power of non-square matrix")
        out = Mat.identity(self.nrows)
        base = self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    def transpose(self) -> "Mat":
        return Mat._raw([list(c) for c in zip(*self.rows)], self.nrows) if self.rows else Mat._raw([], 0)

    @property
    def T(self) -> "Mat":
        return self.transpose()

    def conj_transpose(self) -> "Mat":
        return Mat._raw([[_conj(x) for x in c] for c in zip(*self.rows)], self.nrows) if self.rows else Mat._raw([], 0)

    @property
    def H(self) -> "Mat":
        return self.conj_transpose()

    def map(self, fn) -> "Mat":
        return Mat._raw([[fn(x) for x in r] for r in self.rows], self.ncols)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Mat":
        return Mat._raw([[self.rows[i][j] for j in cols] for i in rows], len(cols))

    def trace(self):
        if self.nrows != self.ncols:
            raise NonSquare("trace")
        acc = _Q0
        for i in range(self.nrows):
            acc = acc + self.rows[i][i]
        return acc

    def is_zero(self) -> bool:
        return not any(x for r in self.rows for x in r)

    def is_hermitian(self) -> bool:
        return self.nrows == self.ncols and self == self.conj_transpose()

    def is_real(self) -> bool:
        return all(_is_real(x) for r in self.rows for x in r)

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return self.shape == other.shape and all(
            a == b for r, s in zip(self.rows, other.rows) for a, b in zip(r, s))

    def __hash__(self):
        return hash(self.rows)

    def to_strings(self) -> list[list[str]]:
        return [[format_scalar(x) if not isinstance(x, Poly) else str(x) for x in r] for r in self.rows]

    @classmethod
    def from_strings(cls, rows) -> "Mat":
        return cls([[parse_scalar(x).to_number() for x in r] for r in rows])

    def __repr__(self):
        return "Mat(" + repr(self.to_strings()) + ")"


def _entry(x):
    if isinstance(x, Poly):
        return x
    return as_number(x)


def _is_real(x) -> bool:
    if isinstance(x, Scalar):
        return x.is_real
    if isinstance(x, Poly):
        return all(_is_real(c) for c in x.c)
    return True


def _as_rows(m) -> list[list]:
    if isinstance(m, Mat):
        return [list(r) for r in m.rows]
    return [[_entry(x) for x in r] for r in m]


def _lower(rows: list[list]) -> list[list]:
    """Swap Scalars for mpq when every entry is rational."""
    out = []
    for r in rows:
        nr = []
        for x in r:
            if isinstance(x, Scalar):
                if not x.is_rational:
                    return rows
                x = x.re
            nr.append(x)
        out.append(nr)
    return out


def _denominator(x):
    if isinstance(x, Scalar):
        return lcm(lcm(x.re.denominator, x.im.denominator), lcm(x.s_re.denominator, x.s_im.denominator))
    return mpq(x).denominator


def _clear_rows(rows: list[list]) -> tuple[list[list], mpz]:
    """Scale each row to integral entries; return rows and the product of scalings."""
    total = mpz(1)
    out = []
    for r in rows:
        d = reduce(lcm, (_denominator(x) for x in r if x), mpz(1))
        total *= d
        out.append([x * d if d != 1 else x for x in r])
    return out, total


def _bareiss(a: list[list]) -> tuple[list[int], int]:
    """Fraction-free row echelon form in place; returns (pivot columns, row-swap sign)."""
    m = len(a)
    n = len(a[0]) if m else 0
    prev = _Q1
    r = 0
    pivots: list[int] = []
    sign = 1
    for c in range(n):
        if r == m:
            break
        p = next((i for i in range(r, m) if a[i][c]), None)
        if p is None:
            continue
        if p != r:
            a[r], a[p] = a[p], a[r]
            sign = -sign
        row_r = a[r]
        piv = row_r[c]
        for i in range(r + 1, m):
            row_i = a[i]
            aic = row_i[c]
            if aic:
                for j in range(c + 1, n):
                    row_i[j] = (piv * row_i[j] - aic * row_r[j]) / prev
            elif piv != prev:
                for j in range(c + 1, n):
                    if row_i[j]:
                        row_i[j] = (piv * row_i[j]) / prev
            row_i[c] = _Q0
        prev = piv
        pivots.append(c)
        r += 1
    return pivots, sign


def _echelon(m) -> tuple[list[list], list[int], int, mpz]:
    rows = _lower(_as_rows(m))
    rows, scale = _clear_rows(rows)
    pivots, sign = _bareiss(rows)
    return rows, pivots, sign, scale


def rank(m) -> int:
    if isinstance(m, Mat) and (m.nrows == 0 or m.ncols == 0):
        return 0
    _, pivots, _, _ = _echelon(m)
    return len(pivots)


def det(m):
    mm = m if isinstance(m, Mat) else Mat(m)
    if mm.nrows != mm.ncols:
        raise NonSquare("determinant of non-square matrix")
    n = mm.nrows
    if n == 0:
        return _Q1
    rows, pivots, sign, scale = _echelon(mm)
    if len(pivots) < n:
        return _Q0
    return as_number(rows[n - 1][n - 1] * sign / scale)


def _back_substitute(rows, pivots, ncols, free_values: dict) -> list:
    x = [_Q0] * ncols
    for j, v in free_values.items():
        x[j] = v
    for k in range(len(pivots) - 1, -1, -1):
        p = pivots[k]
        row = rows[k]
        acc = _Q0
        for j in range(p + 1, ncols):
            if row[j] and x[j]:
                acc = acc + row[j] * x[j]
        x[p] = as_number(-acc / row[p])
    return x


def kernel_basis(m) -> list[tuple]:
    """Exact basis of the right null space {v : m v = 0}."""
    mm = m if isinstance(m, Mat) else Mat(m)
    n = mm.ncols
    if mm.nrows == 0:
        return [tuple(_Q1 if i == j else _Q0 for i in range(n)) for j in range(n)]
    rows, pivots, _, _ = _echelon(mm)
    pivset = set(pivots)
    out = []
    for f in range(n):
        if f in pivset:
            continue
        out.append(tuple(as_number(v) for v in _back_substitute(rows, pivots, n, {f: _Q1})))
    return out


def solve_exact(a, b: Sequence):
    """One exact solution of a x = b, or None if inconsistent."""
    aa = a if isinstance(a, Mat) else Mat(a)
    if len(b) != aa.nrows:
        raise DimensionMismatch(f"matrix has {aa.nrows} rows, rhs has {len(b)}")
    n = aa.ncols
    aug = [list(r) + [_entry(bi)] for r, bi in zip(aa.rows, b)]
    if not aug:
        return tuple(_Q0 for _ in range(n))
    rows, pivots, _, _ = _echelon(aug)
    if pivots and pivots[-1] == n:
        return None
    x = [_Q0] * n
    for k in range(len(pivots) - 1, -1, -1):
        p = pivots[k]
        row = rows[k]
        acc = row[n]
        for j in range(p + 1, n):
            if row[j] and x[j]:
                acc = acc - row[j] * x[j]
        x[p] = as_number(acc / row[p])
    return tuple(x)


def _hessenberg(a: list[list]) -> list[list]:
    n = len(a)
    h = [list(r) for r in a]
    for m in range(1, n - 1):
        piv = next((i for i in range(m, n) if h[i][m - 1]), None)
        if piv is None:
            continue
        if piv != m:
            h[piv], h[m] = h[m], h[piv]
            for r in h:
                r[piv], r[m] = r[m], r[piv]
        t = h[m][m - 1]
        for i in range(m + 1, n):
            if not h[i][m - 1]:
                continue
            u = h[i][m - 1] / t
            hi, hm = h[i], h[m]
            for j in range(n):
                if hm[j]:
                    hi[j] = hi[j] - u * hm[j]
            for r in h:
                if r[i]:
                    r[m] = r[m] + u * r[i]
    return h


def char_poly(m) -> Poly:
    """Monic characteristic polynomial det(t I - m) (Hessenberg reduction)."""
    mm = m if isinstance(m, Mat) else Mat(m)
    if mm.nrows != mm.ncols:
        raise NonSquare("characteristic polynomial of non-square matrix")
    n = mm.nrows
    h = _hessenberg(_lower(_as_rows(mm)))
    p = [Poly.const(1)]
    for k in range(1, n + 1):
        pk = (T - Poly.const(h[k - 1][k - 1])) * p[k - 1]
        t = _Q1
        for i in range(1, k):
            t = t * h[k - i][k - i - 1]
            if not t:
                break
            coeff = t * h[k - i - 1][k - 1]
            if coeff:
                pk = pk - p[k - i - 1] * Poly.const(coeff)
        p.append(pk)
    return p[n]


def poly_at_matrix(p: Poly, m: Mat) -> Mat:
    """Horner evaluation of p at the square matrix m."""
    if m.nrows != m.ncols:
        raise NonSquare("poly_at_matrix")
    n = m.nrows
    acc = Mat.zeros(n, n)
    ident = Mat.identity(n)
    for coeff in reversed(p.c):
        acc = acc @ m + ident.scale(coeff)
    return acc


def min_poly_divides(m: Mat, roots: Sequence) -> bool:
    """True iff prod (m - r I) over ``roots`` is the zero matrix."""
    mm = m if isinstance(m, Mat) else Mat(m)
    if mm.nrows != mm.ncols:
        raise NonSquare("min_poly_divides")
    n = mm.nrows
    acc = Mat.identity(n)
    for r in roots:
        shifted = mm - Mat.identity(n).scale(r)
        acc = acc @ shifted
    return acc.is_zero()


def root_multiplicities(p: Poly, roots: Sequence) -> tuple[dict, Poly]:
    """Multiplicity of each candidate root, plus the leftover cofactor."""
    mult = {}
    rest = p
    for r in roots:
        r = as_number(r)
        k = 0
        while rest.degree > 0:
            q, rem = rest.divmod_linear(r)
            if rem:
                break
            rest = q
            k += 1
        mult[r] = k
    return mult, rest


def format_factored(mult: dict, var: str = "t") -> str:
    """e.g. ``(t-1)^1(t-2)^6(t-4)^3``."""
    parts = []
    for r, k in mult.items():
        if not k:
            continue
        s = format_scalar(r)
        inner = f"{var}-{s}" if not s.startswith("-") else f"{var}+{s[1:]}"
        if s == "0":
            inner = var
        parts.append(f"({inner})^{k}")
    return "".join(parts)
