import json

import pytest
from gmpy2 import mpq

from almost_fourier.exact import Mat
from almost_fourier.families import DATA, GOLDEN, FamilyId, datum, family_report, resolve
from almost_fourier.families.derive import derive_all
from almost_fourier.pairing import pairing_matrix


def test_shipped_tables_match_the_oracle():
    fresh = derive_all()
    for name, data in fresh.items():
        with open(DATA / f"{name}.json") as fh:
            assert json.load(fh) == json.loads(json.dumps(data)), name


@pytest.mark.parametrize("fid", list(FamilyId))
def test_reports_pass(fid):
    rep = family_report(fid)
    assert rep.ok, [c for c in rep.checks if not c.ok]
    assert rep.space.is_hermitian()


@pytest.mark.parametrize("fid", ["F15a", "F15b"])
def test_f15_golden(fid):
    gs = pairing_matrix(datum(fid), 0)
    labels, rows = GOLDEN["F15"]
    assert gs.labels == labels
    assert gs.matrix == Mat(rows)
    assert len(gs.radical) == 1
    assert gs.same_image({"(g_lambda,1)": 1}, {"(1,1)": 1, "(1,eps)": 1})


def test_f112_golden():
    d = datum("F112")
    gs = pairing_matrix(d, 0)
    labels, rows = GOLDEN["F112"]
    assert gs.matrix == Mat(rows)
    assert d.kappa("g_-1", "g_-1", "H") == mpq(1, 2)
    assert gs.submatrix(["(g_-1,1)", "(g_-1,eps)"]) == Mat([[mpq(1, 2), 0], [0, mpq(1, 2)]])


def test_f14_constant():
    gs = pairing_matrix(datum("F14"), 0)
    assert all(v == 1 for row in gs.matrix for v in row)
    assert gs.quotient_dimension == 1


def test_aliases():
    assert resolve("F15a") is FamilyId.F15_rsq1
    assert resolve("F15b") is FamilyId.F15_rsqm1
    with pytest.raises(ValueError):
        resolve("F99")
