import csv
import json

import pytest

from almost_fourier import hecke
from almost_fourier.cli import main


def lines(out):
    return [json.loads(l) for l in out.strip().splitlines() if l.startswith("{")]


def test_family_csv(tmp_path, capsys):
    path = tmp_path / "f112.csv"
    assert main(["family", "--id", "F112", "--csv", str(path)]) == 0
    with open(path) as fh:
        rows = list(csv.reader(fh))
    assert rows[1][1:] == ["1", "1/2", "1/2", "1"]
    assert rows[2][1:] == ["1/2", "1/2", "0", "1/2"]
    recs = lines(capsys.readouterr().out)
    assert all(r["status"] == "pass" for r in recs)
    assert set(recs[0]) == {"name", "status", "expected", "actual", "ms"}


def test_heis_spectrum(capsys):
    assert main(["heis", "--n", "1", "--spectrum"]) == 0
    err = capsys.readouterr().err
    assert "(t-1)^1(t-2)^6(t-4)^3" in err


def test_fourier_json(tmp_path, capsys):
    path = tmp_path / "s3.json"
    assert main(["fourier", "--group", "S3", "--json", str(path)]) == 0
    data = json.loads(path.read_text())
    assert len(data["rows"]) == 8


def test_clifford_commands(capsys):
    assert main(["clifford", "--datum", "1:1,3:1"]) == 0
    assert main(["clifford", "--sc", "Spin", "--m", "1:3,3:3"]) == 0
    assert main(["clifford", "--exceptional", "F4:B_3"]) == 0
    out = capsys.readouterr().out
    assert '"simply_connected": false' in out and '"PGL_2"' in out


def test_usage_errors(capsys):
    assert main(["family", "--id", "nope"]) == 2
    assert main(["clifford", "--exceptional", "E8:nope"]) == 2
    assert main(["clifford"]) == 2
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_failed_check_exits_one(tmp_path, capsys):
    g = hecke.wgraph("a", 2)
    data = g.to_json()
    data["edges"][0][2] = "5"
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(data))
    assert main(["hecke", "--graph", str(path), "--check", "relations"]) == 1


def test_seed_from_environment(monkeypatch, capsys):
    monkeypatch.setenv("ALMOST_FOURIER_SEED", "17")
    assert main(["heis", "--n", "2", "--samples", "5"]) == 0
    monkeypatch.setenv("ALMOST_FOURIER_SEED", "bogus")
    assert main(["heis", "--n", "2", "--samples", "5"]) == 2


def test_hecke_default_checks(capsys):
    assert main(["hecke", "--n", "2", "--kind", "d", "--lambda", "2"]) == 0
    names = [r["name"] for r in lines(capsys.readouterr().out)]
    assert "hecke.d.n2.omega" in names and "hecke.vrc.all" in names
