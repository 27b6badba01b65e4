import random

import pytest
import sympy
from gmpy2 import mpq

from almost_fourier.exact import (
    I, Mat, Poly, Scalar, T, char_poly, det, format_factored, format_scalar, kernel_basis,
    min_poly_divides, parse_scalar, rank, root_multiplicities, root_of_unity, solve_exact,
)


def _rand_matrix(rng, m, n, low_rank=False):
    rows = [[mpq(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(n)] for _ in range(m)]
    if low_rank and m > 1:
        rows[-1] = [a + 2 * b for a, b in zip(rows[0], rows[1 % m])]
    return rows


def _sym(rows):
    return sympy.Matrix([[sympy.Rational(int(x.numerator), int(x.denominator)) for x in r] for r in rows])


@pytest.mark.parametrize("seed", range(12))
def test_rank_det_kernel_against_sympy(seed):
    rng = random.Random(seed)
    m, n = rng.randint(1, 6), rng.randint(1, 6)
    rows = _rand_matrix(rng, m, n, low_rank=seed % 2 == 0)
    a, s = Mat(rows), _sym(rows)
    assert rank(a) == s.rank()
    ker = kernel_basis(a)
    assert len(ker) == n - s.rank()
    for v in ker:
        assert all(x == 0 for x in a.apply(v))
    if m == n:
        assert det(a) == mpq(str(s.det()))


@pytest.mark.parametrize("seed", range(6))
def test_char_poly_against_sympy(seed):
    rng = random.Random(100 + seed)
    n = rng.randint(1, 6)
    rows = _rand_matrix(rng, n, n)
    p = char_poly(Mat(rows))
    x = sympy.Symbol("x")
    q = _sym(rows).charpoly(x).as_expr()
    for t in range(-3, 4):
        assert p(t) == mpq(str(q.subs(x, t)))


def test_solve_exact():
    a = Mat([[1, 2], [3, 4]])
    assert solve_exact(a, [5, 6]) == (-4, mpq(9, 2))
    assert solve_exact(Mat([[1, 1], [2, 2]]), [1, 3]) is None


def test_scalar_field_arithmetic():
    w = root_of_unity(3)
    assert w ** 3 == 1 and w != 1
    assert 1 + w + w * w == 0
    assert I * I == -1
    z = Scalar(mpq(1, 2), 3, -1, mpq(2, 7))
    assert z * z.inverse() == 1
    assert complex(z * z.conj()).imag == pytest.approx(0)
    assert abs(complex(z) - (0.5 + 3j + 3 ** 0.5 * (-1 + 2j / 7))) < 1e-12


def test_scalar_round_trip():
    for z in [Scalar(0), Scalar(mpq(-3, 4)), Scalar(0, 1), Scalar(1, -2, mpq(1, 2), 3), root_of_unity(12, 5)]:
        assert parse_scalar(format_scalar(z)) == z
    assert parse_scalar("7/1") == 7


def test_poly_and_roots():
    p = (T - 1) * (T - 2) ** 2
    mult, rest = root_multiplicities(p, [1, 2, 4])
    assert mult == {1: 1, 2: 2, 4: 0}
    assert rest.degree == 0
    assert Poly([0, 1]) == T


def test_min_poly_divides():
    m = Mat.diag([1, 2, 4, 2])
    assert min_poly_divides(m, [1, 2, 4])
    assert not min_poly_divides(m, [1, 2])
    assert format_factored({1: 1, 2: 6, 4: 3}) == "(t-1)^1(t-2)^6(t-4)^3"
