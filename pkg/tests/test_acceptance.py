"""Acceptance criteria 1-9, one test each, each printing a single PASS/FAIL line."""
import io
import json
import time
from contextlib import redirect_stdout

import pytest
from gmpy2 import mpq

from almost_fourier import clifford, hecke, heis
from almost_fourier.cli import main
from almost_fourier.exact import Mat, min_poly_divides
from almost_fourier.families import GOLDEN, datum, family_report
from almost_fourier.groups import STANDARD_GROUPS
from almost_fourier.pairing import classical_fourier, image_set, pairing_matrix, positive_basis

SEED = 0xC4A7
H = mpq(1, 2)


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail=""):
        with capsys.disabled():
            print(f"\nACCEPTANCE {n}: {'PASS' if ok else 'FAIL'} {detail}".rstrip())
        assert ok, detail
    return emit


def test_1_classical_fourier(report):
    t0 = time.perf_counter()
    bad = []
    for name in ["trivial", "Z2", "Z3", "Z4", "S3", "D4", "Q8"]:
        gs = classical_fourier(STANDARD_GROUPS[name]())
        m = gs.matrix
        if not (gs.is_hermitian() and m @ m == Mat.identity(m.nrows)):
            bad.append(name)
    dt = time.perf_counter() - t0
    report(1, not bad and dt < 5, f"failing={bad} time={dt:.2f}s")


def test_2_f15_golden(report):
    labels, gold = GOLDEN["F15"]
    rl, red = GOLDEN["F15_reduced"]
    bad = []
    for fid in ("F15_rsqm1", "F15_rsq1"):
        gs = pairing_matrix(datum(fid), 0)
        checks = {
            "matrix": gs.labels == labels and gs.matrix == Mat(gold),
            "radical": len(gs.radical) == 1,
            "relation": gs.same_image({"(g_lambda,1)": 1}, {"(1,1)": 1, "(1,eps)": 1}),
            "reduced": gs.submatrix(rl) == Mat(red),
            "basis": sorted(positive_basis(image_set(gs)).labels) == sorted(rl),
            "report": family_report(fid).ok,
        }
        bad += [f"{fid}:{k}" for k, v in checks.items() if not v]
    report(2, not bad, f"failing={bad}")


def test_3_f112_golden(report):
    d = datum("F112")
    gs = pairing_matrix(d, 0)
    labels, gold = GOLDEN["F112"]
    b = positive_basis(image_set(gs))
    checks = {
        "matrix": gs.labels == labels and gs.matrix == Mat(gold),
        "g_lambda=(1,1)": gs.same_image({"(g_lambda,1)": 1}, {"(1,1)": 1}),
        "(1,1)=sum": gs.same_image({"(1,1)": 1}, {"(g_-1,1)": 1, "(g_-1,eps)": 1}),
        "reduced": gs.submatrix(["(g_-1,1)", "(g_-1,eps)"]) == Mat([[H, 0], [0, H]]),
        "basis": sorted(b.labels) == ["(g_-1,1)", "(g_-1,eps)"],
        "kappa": d.kappa("g_-1", "g_-1", "H") == H,
    }
    bad = [k for k, v in checks.items() if not v]
    report(3, not bad, f"failing={bad}")


def test_4_f14(report):
    gs = pairing_matrix(datum("F14"), 0)
    ones = all(v == 1 for row in gs.matrix for v in row)
    report(4, ones and gs.quotient_dimension == 1, f"constant={ones} dim={gs.quotient_dimension}")


def test_5_heisenberg(report):
    bad = []
    times = {}
    for n, z in ((1, 10), (2, 136)):
        t0 = time.perf_counter()
        rep = heis.spectrum_report(n, with_char_poly=(n == 1))
        h = heis.build(n)
        m = heis.matrix_M(n, h).matrix
        checks = {
            "closed_form": rep.matches_closed_form,
            "square_blocks": rep.square_matches_blocks,
            "min_poly": min_poly_divides(m @ m, [1, 2, 4]),
            "det": rep.determinant != 0,
            "z_count": heis.z_count(n) == z == len(h.zindex),
            "tables": heis.character_tables_ok(h) == [],
            "mixed": heis.mixed_sector_check(h) == [],
            "chi_sector": heis.sign_sector_check(h) == [],
        }
        if n == 1:
            checks["char_poly"] = rep.factored == "(t-1)^1(t-2)^6(t-4)^3"
        bad += [f"n{n}:{k}" for k, v in checks.items() if not v]
        times[n] = time.perf_counter() - t0
    if times[2] >= 60:
        bad.append("n2 runtime")
    report(5, not bad, f"failing={bad} n2_time={times[2]:.1f}s")


def test_6_pairing_properties(report):
    ex = heis.property_check(1)
    sampled = heis.property_check(2, 500, SEED)
    report(6, not ex and not sampled, f"n1_failures={len(ex)} n2_failures={len(sampled)}")


def test_7_hecke(report):
    t0 = time.perf_counter()
    bad = []
    for n in (2, 3, 4):
        for kind in "abcd":
            g = hecke.wgraph(kind, n)
            m = hecke.module(g, check=False)
            if hecke.relation_failures(m):
                bad.append(f"n{n}{kind}:relations")
                continue
            try:
                hecke.omega(kind, n, m=m)
            except hecke.RelationFailure:
                bad.append(f"n{n}{kind}:omega")
            for i in g.generators:
                r = hecke.restrict(m, g, i, seed=SEED)
                if not (r.stable and r.quotient_trivial and r.sub_matches and r.trace_law):
                    bad.append(f"n{n}{kind}:restrict{i}")
        if not hecke.counting_identities(n):
            bad.append(f"n{n}:counting")
        d = hecke.decompose_d1(n, max_len=6, per_length=100, seed=SEED)
        if not (d.ok and d.dims == (n + 1, n - 1)):
            bad.append(f"n{n}:decompose")
        for i in range(n + 1):
            if not hecke.lambda_independence(n, i, (1, 2, 5), seed=SEED):
                bad.append(f"n{n}:lambda{i}")
    v = hecke.vrc_identities((2, 3, 4), seed=SEED)
    if not (v.square_is_identity and v.matches_gram and v.ok):
        bad.append("vrc")
    dt = time.perf_counter() - t0
    report(7, not bad and dt < 120, f"failing={bad} time={dt:.1f}s")


SC_CASES = [
    ("SL", {1: 4}, True),
    ("SL", {2: 3, 5: 6}, True),
    ("Spin", {1: 3}, True),
    ("Spin", {1: 3, 3: 3}, False),
    ("Spin", {1: 1, 3: 2, 5: 2}, True),
    ("Spin", {1: 5, 2: 4, 3: 1}, True),
    ("Spin", {3: 3, 5: 4}, False),
    ("Symplectic", {2: 3}, False),
    ("Symplectic", {1: 6, 2: 2}, True),
    ("Symplectic", {2: 1, 4: 4}, False),
]


def test_8_spin(report):
    t0 = time.perf_counter()
    bad = []
    if not clifford.beta_sample_check(200, 8, SEED).ok:
        bad.append("beta")
    for i, want in ((1, 1), (3, -1)):
        y = clifford.SpinDatum({i: 1}).y_tilde(i)
        if y * y != want:
            bad.append(f"y{i}^2")
    d = clifford.SpinDatum({1: 1, 3: 1, 5: 1})
    ys = [d.y_tilde(i) for i in d.odd]
    if any(a * b != -(b * a) for k, a in enumerate(ys) for b in ys[k + 1:]):
        bad.append("anticommute")
    for m in ({1: 1}, {1: 1, 3: 1}, {1: 1, 3: 1, 5: 1}):
        r = clifford.delta_check(clifford.SpinDatum(m))
        if not r.ok or r.data["order"] != 2 ** (len(m) + 1):
            bad.append(f"order{len(m)}")
    if not clifford.kernel_containment_check(clifford.SpinDatum({1: 2, 3: 1})).ok:
        bad.append("kernel")
    if [clifford.simply_connected(k, m) for k, m, _ in SC_CASES] != [w for *_, w in SC_CASES]:
        bad.append("sc_table")
    listed = {(r.group, r.label) for r in clifford.exceptional_rows() if r.label != clifford.OTHER}
    expected = {("F4", "A_1~A_1"), ("F4", "B_3"), ("E7", "A_2A_1^2"), ("E8", "A_2A_1^2"),
                ("E8", "A_3A_2A_1"), ("E8", "A_4A_2"), ("E8", "D_4(a_1)A_2"), ("E8", "D_5(a_1)A_1"),
                ("E8", "A_6")}
    if listed != expected or not all(clifford.exceptional_lookup(g, l) for g, l in expected):
        bad.append("exceptional")
    dt = time.perf_counter() - t0
    report(8, not bad and dt < 30, f"failing={bad} time={dt:.1f}s")


def _verify_all():
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(["verify-all"])
    recs = [json.loads(l) for l in buf.getvalue().splitlines()]
    return code, recs


def test_9_verify_all(report):
    code, recs = _verify_all()
    code2, recs2 = _verify_all()
    passes = sum(r["status"] == "pass" for r in recs)
    strip = lambda rs: [{k: v for k, v in r.items() if k != "ms"} for r in rs]
    same = strip(recs) == strip(recs2) and code == code2
    report(9, code == 0 and passes >= 60 and same, f"exit={code} pass_lines={passes} deterministic={same}")
