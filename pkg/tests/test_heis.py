import pytest
import sympy

from almost_fourier.heis import (
    SizeLimit, build, character_tables_ok, closed_form, lift_independent, matrix_M,
    mixed_sector_check, property_check, sampled_closed_form_check, sign_sector_check,
    sign_sector_deviations, spectrum_report, symplectic, z_count,
)


def test_form_is_alternating_and_nondegenerate():
    n = 2
    size = 1 << 2 * n
    for x in range(size):
        assert symplectic(n, x, x) == 0
        if x:
            assert any(symplectic(n, x, y) for y in range(size))


def test_group_structure():
    h = build(1)
    g = h.group
    assert g.order == 8
    assert sorted(g.center()) == [0, h.c]
    # commutators of lifts realize the symplectic form
    for x in range(4):
        for y in range(4):
            a, b = h.lift(x), h.lift(y)
            comm = g.mul(g.mul(a, b), g.mul(g.inv(a), g.inv(b)))
            assert comm == (h.c if symplectic(1, x, y) else 0)


def test_size_limits():
    with pytest.raises(SizeLimit):
        build(4)
    with pytest.raises(SizeLimit):
        spectrum_report(3)


@pytest.mark.parametrize("n,count", [(1, 10), (2, 136)])
def test_z_count(n, count):
    assert z_count(n) == count
    assert len(build(n).zindex) == count


def test_n1_matrix_against_sympy_spectrum():
    h = build(1)
    m = matrix_M(1, h).matrix
    s = sympy.Matrix([[sympy.Rational(str(v)) for v in row] for row in m])
    assert s.det() == -64
    t = sympy.Symbol("t")
    assert sympy.factor((s * s).charpoly(t).as_expr()) == (t - 1) * (t - 2) ** 6 * (t - 4) ** 3


def test_n1_spectrum_report():
    rep = spectrum_report(1)
    assert rep.matches_closed_form and rep.square_matches_blocks and rep.min_poly_ok
    assert rep.factored == "(t-1)^1(t-2)^6(t-4)^3"


def test_n1_sectors():
    h = build(1)
    assert character_tables_ok(h) == []
    assert mixed_sector_check(h) == []
    assert sign_sector_check(h) == []
    assert sign_sector_deviations(h) == []
    assert lift_independent(h)


def test_n1_properties_exhaustive():
    assert property_check(1) == []


def test_closed_form_zero_when_form_pairs():
    assert closed_form(1, (1, 0), (2, 0)) == 0


def test_n3_sampled():
    assert sampled_closed_form_check(3, 20, 7) == []
