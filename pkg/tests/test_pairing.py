import cmath
import json
import random

import pytest
from gmpy2 import mpq

from almost_fourier.exact import I, Mat
from almost_fourier.families import GOLDEN, datum
from almost_fourier.groups import STANDARD_GROUPS, CentralSubgroup, dihedral, symmetric
from almost_fourier.pairing import (
    FinitePairingDatum, GramSpace, NonRealCone, NonUnique, NoPositiveBasis, SigmaPoint,
    TabulatedDatum, classical_fourier, image_set, pairing_matrix, positive_basis, property_failures,
    star, translated_pair,
)


def space(labels, rows):
    pts = [SigmaPoint(l, None, None, 0) for l in labels]
    return GramSpace(pts, pts, Mat(rows))


@pytest.mark.parametrize("name", sorted(STANDARD_GROUPS))
def test_classical_fourier_unitary_involution(name):
    gs = classical_fourier(STANDARD_GROUPS[name]())
    m = gs.matrix
    assert gs.is_hermitian()
    assert m @ m == Mat.identity(m.nrows)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_cyclic_fourier_against_closed_form(n):
    # oracle: for abelian G the pairing is conj(tau(x)) sigma(y) / |G|
    gs = classical_fourier(STANDARD_GROUPS[f"Z{n}"]())
    for i, p in enumerate(gs.rows):
        for j, q in enumerate(gs.cols):
            want = (complex(q.sigma(p.x)).conjugate() * complex(p.sigma(q.x))) / n
            assert cmath.isclose(complex(gs.matrix[i, j]), want, abs_tol=1e-12)


def test_symmetry_properties_s3_and_d4():
    assert property_failures(FinitePairingDatum(symmetric(3))) == []
    g = dihedral(4)
    d = FinitePairingDatum(g, CentralSubgroup(g, tuple(g.center())))
    assert property_failures(d) == []


def test_sectors_split_points():
    g = dihedral(4)
    d = FinitePairingDatum(g, CentralSubgroup(g, tuple(g.center())))
    both = d.points(None)
    assert len(both) == len(d.points(0)) + len(d.points(1))


def test_translated_pair_matches_equivariance():
    d = datum("F15_rsqm1")
    pts = d.sigma_points(0)
    p, q = pts[0], pts[2]
    for z in range(d.lam.order):
        assert translated_pair(d, p, z, q, 0) == d.pair(p, q)


def test_tabulated_json_round_trip():
    d = datum("F112")
    e = TabulatedDatum.from_json(json.loads(json.dumps(d.to_json())))
    assert pairing_matrix(e, 0).matrix == pairing_matrix(d, 0).matrix


def test_positive_basis_is_order_invariant():
    labels, rows = GOLDEN["F15"]
    ref = positive_basis(image_set(space(labels, rows)))
    rng = random.Random(3)
    for _ in range(5):
        perm = list(range(len(labels)))
        rng.shuffle(perm)
        gs = space([labels[k] for k in perm], [[rows[a][b] for b in perm] for a in perm])
        assert sorted(positive_basis(image_set(gs)).labels) == sorted(ref.labels)


def test_star_on_f15():
    labels, rows = GOLDEN["F15"]
    gs = space(labels, rows)
    b = positive_basis(image_set(gs))
    assert set(star("(1,1)", b, gs).coefficients.values()) == {mpq(1, 2)}


def test_cone_errors():
    with pytest.raises(NonUnique):
        positive_basis(image_set(space(["a", "b"], [[1, 2], [2, 4]])))
    with pytest.raises(NoPositiveBasis):
        positive_basis(image_set(space(["a", "b"], [[1, -1], [-1, 1]])))
    with pytest.raises(NonRealCone):
        positive_basis(image_set(space(["a", "b"], [[1, I], [-I, 1]])))


def test_radical_and_images():
    gs = space(["a", "b", "c"], [[1, 1, 2], [1, 1, 2], [2, 2, 4]])
    assert gs.quotient_dimension == 1
    assert len(image_set(gs)) == 2
    assert gs.same_image({"c": 1}, {"a": 1, "b": 1})
