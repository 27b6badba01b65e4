import random

import pytest
from gmpy2 import mpq

from almost_fourier.clifford import (
    EXCEPTIONAL, OTHER, AlgebraMismatch, BadIndex, CliffordAlgebra, CliffordError, SpinDatum,
    UnknownLabel, beta, beta_matrix, cl_mul, closure, conj_action_check, delta_check,
    exceptional_lookup, exceptional_rows, kernel_containment_check, parse_datum,
    rational_unit_vector, simply_connected,
)


def test_generators():
    a = CliffordAlgebra(3)
    e1, e2 = a.e(1), a.e(2)
    assert e1 * e1 == 1
    assert e1 * e2 + e2 * e1 == 0
    v = a.vector([mpq(3, 5), mpq(4, 5), 0])
    assert v * v == 1


def test_associativity_sampled():
    rng = random.Random(5)
    a = CliffordAlgebra(5)

    def rand():
        x = a.scalar(0)
        for _ in range(4):
            x = x + a.product([rational_unit_vector(5, rng) for _ in range(rng.randint(0, 3))])
        return x
    for _ in range(20):
        x, y, z = rand(), rand(), rand()
        assert (x * y) * z == x * (y * z)


def test_mismatch():
    with pytest.raises(AlgebraMismatch):
        cl_mul(CliffordAlgebra(2).e(1), CliffordAlgebra(3).e(1))


def test_beta_examples():
    assert beta([(1, 0)], (1, 0)) == (1, 0)
    assert beta([(1, 0)], (0, 1)) == (0, -1)
    assert beta([(1, 0, 0), (0, 1, 0)], (0, 0, 1)) == (0, 0, 1)


def test_unit_vectors_are_unit():
    rng = random.Random(1)
    for dim in range(1, 9):
        v = rational_unit_vector(dim, rng)
        assert sum(x * x for x in v) == 1


def test_y_squares():
    for i in (1, 3, 5):
        d = SpinDatum({i: 1})
        y = d.y_tilde(i)
        assert y * y == (-1) ** (i * (i - 1) // 2)


def test_beta_of_y_is_y_matrix():
    d = SpinDatum({1: 2, 3: 2})
    for i in d.odd:
        assert beta_matrix(d.y_tilde(i)) == d.y_matrix(i)


def test_antisymmetry_needs_orthogonal_vectors():
    d = SpinDatum({1: 2})
    e, f = (mpq(1), mpq(0)), (mpq(0), mpq(1))
    assert d.x(1, e, f) == -d.x(1, f, e)
    g = (mpq(3, 5), mpq(4, 5))
    assert d.x(1, e, g) != -d.x(1, g, e)
    assert d.x(1, e, g) * d.x(1, g, e) == 1


@pytest.mark.parametrize("m,order", [({1: 1}, 4), ({1: 1, 3: 1}, 8), ({1: 1, 3: 1, 5: 1}, 16), ({1: 2, 3: 1}, 8)])
def test_delta_orders(m, order):
    r = delta_check(SpinDatum(m))
    assert r.ok, r.failures()
    assert r.data["order"] == order


def test_closure_of_c_alone():
    a = CliffordAlgebra(2)
    assert len(closure([a.scalar(-1)])) == 2


def test_conj_action():
    rng = random.Random(9)
    for m in ({1: 1}, {1: 3}, {1: 3, 3: 1}, {1: 2, 3: 2}):
        d = SpinDatum(m)
        for i in d.odd:
            r = conj_action_check(d, i, rng=rng)
            assert r.ok, r.failures()
            if d.mult[i] >= 2:
                assert r.data["sign"] in (1, -1)


def test_kernel_containment():
    for m in ({1: 1, 3: 1}, {1: 3, 3: 2}, {1: 2, 3: 1, 5: 1}):
        assert kernel_containment_check(SpinDatum(m)).ok


def test_datum_errors():
    with pytest.raises(CliffordError):
        SpinDatum({3: 5})
    with pytest.raises(BadIndex):
        SpinDatum({2: 1, 1: 1}).y_tilde(2)
    with pytest.raises(CliffordError):
        parse_datum("1:x")
    assert parse_datum("1:1, 3:2") == {1: 1, 3: 2}


@pytest.mark.parametrize("kind,m,want", [
    ("SL", {1: 9}, True),
    ("Spin", {1: 3}, True),
    ("Spin", {1: 3, 3: 3}, False),
    ("Spin", {1: 2, 3: 2}, True),
    ("Symplectic", {2: 3}, False),
    ("Symplectic", {1: 5, 2: 2}, True),
])
def test_simply_connected(kind, m, want):
    assert simply_connected(kind, m) is want


def test_exceptional():
    assert exceptional_lookup("F4", "B_3").h0 == "PGL_2"
    row = exceptional_lookup("E8", "D_4(a_1)A_2")
    assert row.components == "Z/2" and "outer involution" in row.h0
    assert exceptional_lookup("E6", OTHER).simply_connected
    with pytest.raises(UnknownLabel):
        exceptional_lookup("E7", "A_1")
    assert len(exceptional_rows("E8")) == 7
    assert sum(r.label != OTHER for r in EXCEPTIONAL) == 9
