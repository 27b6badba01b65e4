import pytest
from gmpy2 import mpq

from almost_fourier import hecke
from almost_fourier.hecke import (
    BadParams, RelationFailure, WGraph, counting_identities, decompose_d1, lambda_independence,
    module, omega, relation_failures, restrict, specialize_q1, vrc_identities, wgraph,
)


@pytest.mark.parametrize("kind", "abcd")
@pytest.mark.parametrize("n", [2, 3])
def test_relations_and_omega(kind, n):
    m = module(wgraph(kind, n))
    assert relation_failures(m) == []
    om = omega(kind, n, m=m)
    assert om @ om == hecke.Mat.identity(m.dim, hecke.ONE)


@pytest.mark.parametrize("kind", "abcd")
def test_restrictions(kind):
    g = wgraph(kind, 3)
    m = module(g)
    for i in g.generators:
        r = restrict(m, g, i)
        assert r.stable and r.sub_matches and r.quotient_trivial and r.trace_law


def test_broken_weight_is_caught():
    g = wgraph("a", 2)
    mu = dict(g.mu)
    mu[("v0", "v1")] = mpq(3)
    bad = WGraph("a", 2, g.vertices, g.marks, mu)
    with pytest.raises(RelationFailure):
        module(bad)


def test_bad_params():
    with pytest.raises(BadParams):
        wgraph("e", 3)
    with pytest.raises(BadParams):
        wgraph("a", 1)
    with pytest.raises(BadParams):
        wgraph("d", 3, 0)


def test_counting():
    for n in (2, 3, 4, 5):
        assert counting_identities(n)


def test_decomposition_n2():
    r = decompose_d1(2, max_len=4, per_length=10)
    assert r.ok and r.dims == (3, 1)


def test_lambda_independence_on_parabolics():
    for i in range(3):
        assert lambda_independence(2, i, (1, 2, mpq(5, 3)), max_len=4, per_length=10)


def test_rational_lambda_relations():
    assert relation_failures(module(wgraph("d", 3, mpq(3, 2)))) == []


def test_specialization_is_a_group_action():
    for kind in "abcd":
        r = specialize_q1(module(wgraph(kind, 2)))
        assert r.involutions and r.braid and r.omega


def test_vrc():
    r = vrc_identities((2,))
    assert r.ok
    assert r.F @ r.F == hecke.Mat.identity(4)


def test_wgraph_json_round_trip(tmp_path):
    g = wgraph("d", 3, mpq(2, 5))
    path = tmp_path / "g.json"
    hecke.dump_wgraph(g, path)
    h = hecke.load_wgraph(path)
    assert h.vertices == g.vertices and h.mu == g.mu and h.marks == g.marks


def test_reversed_orientation_also_satisfies_relations():
    # the relation checker alone does not fix the direction of mu
    g = wgraph("a", 3)
    flipped = WGraph("a", 3, g.vertices, g.marks, {(x, y): w for (y, x), w in g.mu.items()})
    assert relation_failures(module(flipped, check=False)) == []
