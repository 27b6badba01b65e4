import pytest

from almost_fourier.groups import (
    STANDARD_GROUPS, CentralSubgroup, ClassFunction, ElementNotInGroup, GroupError, NotCentral,
    centralizer, character_table_failures, conjugacy_classes, cyclic, dihedral, dump_group,
    load_group, quaternion, quotient_order, symmetric, transport,
)

# class sizes computed independently with sympy.combinatorics
CLASS_SIZES = {
    "trivial": [1], "Z2": [1, 1], "Z3": [1, 1, 1], "Z4": [1] * 4, "V4": [1] * 4,
    "S3": [1, 2, 3], "D4": [1, 1, 2, 2, 2], "Q8": [1, 1, 2, 2, 2],
}


@pytest.mark.parametrize("name", sorted(STANDARD_GROUPS))
def test_classes_and_tables(name):
    g = STANDARD_GROUPS[name]()
    sizes = sorted(len(c) for c in conjugacy_classes(g))
    assert sizes == sorted(CLASS_SIZES[name])
    chars = g.irreducible_characters()
    assert len(chars) == len(sizes)
    assert character_table_failures(g, chars) == []


def test_class_sizes_match_sympy():
    from sympy.combinatorics.named_groups import DihedralGroup, SymmetricGroup
    for ours, theirs in ((symmetric(3), SymmetricGroup(3)), (dihedral(4), DihedralGroup(4))):
        assert sorted(len(c) for c in conjugacy_classes(ours)) == \
            sorted(len(c) for c in theirs.conjugacy_classes())


def test_centralizer_tables_come_from_parent_or_abelian():
    g = quaternion()
    for x in range(g.order):
        z = centralizer(g, x)
        assert character_table_failures(z, z.irreducible_characters()) == []


def test_bad_tables_are_reported():
    g = cyclic(3)
    bogus = [ClassFunction(g, (1, 1, 1), "a"), ClassFunction(g, (1, 1, 1), "b")]
    assert character_table_failures(g, bogus)


def test_central_subgroups():
    g = dihedral(4)
    z = CentralSubgroup(g, tuple(g.center()))
    assert z.order == 2
    assert quotient_order(g, z) == 4
    with pytest.raises(NotCentral):
        CentralSubgroup(g, (g.identity, next(x for x in range(g.order) if x not in g.center())))


def test_transport_is_a_character_of_the_conjugate_centralizer():
    g = symmetric(3)
    x = next(k for k in range(g.order) if g.element_order(k) == 3)
    f = next(k for k in range(g.order) if g.element_order(k) == 2)
    y = g.conj(f, x)
    zx, zy = centralizer(g, x), centralizer(g, y)
    moved = [transport(ch, f, zy) for ch in zx.irreducible_characters()]
    assert character_table_failures(zy, moved) == []


def test_element_lookup_errors():
    g = cyclic(2)
    with pytest.raises((ElementNotInGroup, GroupError, KeyError)):
        g.index("nope")


def test_json_round_trip(tmp_path):
    g = symmetric(3)
    path = tmp_path / "s3.json"
    dump_group(g, path, g.irreducible_characters())
    h, chars = load_group(path)
    assert h.table == g.table
    assert character_table_failures(h, chars) == []
