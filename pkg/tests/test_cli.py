from __future__ import annotations

import json
import shutil

import pytest

from exminor import catalog, scenarios
from exminor.cli import main


@pytest.fixture
def corrupted_catalog(tmp_path, monkeypatch):
    for p in catalog.DATA_DIR.glob("*.mat"):
        shutil.copy(p, tmp_path / p.name)
    path = tmp_path / "AG23e.mat"
    lines = path.read_text(encoding="utf-8").splitlines()
    i = next(k for k, ln in enumerate(lines) if ln.split() and ln.split()[0] in ("0", "1", "-1"))
    row = lines[i].split()
    row[-1] = "0" if row[-1] != "0" else "1"
    lines[i] = " ".join(row)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    monkeypatch.setenv("MATROID_CATALOG_DIR", str(tmp_path))
    catalog.clear_cache()
    yield tmp_path
    monkeypatch.delenv("MATROID_CATALOG_DIR")
    catalog.clear_cache()


def test_scenario_ids():
    assert set(scenarios.scenario_ids()) >= {
        "catalog-sanity",
        "splitter-regular",
        "splitter-gf3",
        "ag23e-aut",
        "ag23e-cases",
        "ag23-coext",
        "family-m8",
        "family-m9",
        "family-m7",
        "growfan-props",
        "nofanfan-props",
        "membership-spotchecks",
    }


def test_unknown_scenario():
    with pytest.raises(KeyError):
        scenarios.run_scenario("nosuch")


def test_ag23e_aut_report():
    rep = scenarios.scenario_json(scenarios.run_scenario("ag23e-aut"))
    by_id = {c["id"]: c for c in rep["claims"]}
    assert by_id["automorphism:(1)(2,4)(3,7)(5,6)(8)"]["status"] == "pass"
    assert [c["id"] for c in rep["claims"]] == sorted(by_id)
    assert "millis" not in rep["claims"][0]


def test_family_m7_witness():
    rep = scenarios.scenario_json(scenarios.run_scenario("family-m7"))
    assert all(c["status"] == "pass" for c in rep["claims"])
    claim = next(c for c in rep["claims"] if c["id"] == "n=3:has-P6-minor")
    w = claim["witness"]["witness"]
    assert set(w) == {"contract", "delete", "map"} and len(w["map"]) == 6


def test_empty_filter():
    report = scenarios.run_all([])
    assert report["summary"]["claims"] == 0 and report["scenarios"] == []
    assert scenarios.exit_code(report) == 0


def test_guard_trip_is_skipped_and_strict_fails(monkeypatch):
    monkeypatch.setattr("exminor.constructions.CUT_GUARD", 5)

    from exminor import constructions

    real = constructions.modular_cuts
    monkeypatch.setattr(scenarios, "extensions", lambda m, guard=5: constructions.extensions(m, guard=guard))
    monkeypatch.setattr(scenarios, "coextensions", lambda m, guard=5: constructions.coextensions(m, guard=guard))
    report = scenarios.run_all(["splitter-regular"])
    assert report["summary"]["skipped"] == 2 and report["summary"]["pass"] == 0
    assert scenarios.exit_code(report) == 0
    assert scenarios.exit_code(report, strict=True) == 1
    assert real is constructions.modular_cuts


def test_corruption_is_reported(corrupted_catalog):
    report = scenarios.run_all(["catalog-sanity"])
    fails = [c for c in report["scenarios"][0]["claims"] if c["status"] == "fail"]
    assert fails
    assert all(c["witness"] for c in fails)
    assert scenarios.exit_code(report) == 1


def test_report_is_sorted_json(tmp_path):
    report = scenarios.run_all(["ag23e-aut", "catalog-sanity"])
    path = tmp_path / "r.json"
    scenarios.write_report(report, path)
    data = json.loads(path.read_text(encoding="utf-8"))
    assert [s["scenario"] for s in data["scenarios"]] == ["ag23e-aut", "catalog-sanity"]
    assert path.read_text(encoding="utf-8") == scenarios.report_text(report)


def test_cli_catalog(capsys):
    assert main(["catalog", "list"]) == 0
    assert "AG23e" in capsys.readouterr().out.split()
    assert main(["catalog", "show", "F7", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["rank"] == 3 and len(data["triangles"]) == 7
    assert main(["catalog", "show", "nosuch"]) == 2


def test_cli_check(capsys):
    assert main(["check", "minor", "--host", "PG32", "--pattern", "F7*", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["minor"] is True
    assert main(["check", "minor", "--host", "M8", "--pattern", "U25"]) == 1
    assert main(["check", "iso", "Delta3", "Delta3*"]) == 0
    assert main(["check", "iso", "F7", "F7*"]) == 1
    assert main(["check", "3conn", "F7"]) == 0
    capsys.readouterr()
    assert main(["check", "3conn", "U2,2", "--json"]) == 1
    assert json.loads(capsys.readouterr().out)["separation"] is not None


def test_cli_check_arity():
    with pytest.raises(SystemExit):
        main(["check", "iso", "F7"])
    with pytest.raises(SystemExit):
        main(["check", "minor", "--host", "F7"])


def test_cli_growfan_and_file_input(tmp_path, capsys):
    out = tmp_path / "g.mat"
    assert main(["growfan", "--matroid", "M8", "--triangle", "3,6,8", "--n", "4", "--out", str(out)]) == 0
    assert main(["check", "3conn", str(out)]) == 0
    assert main(["check", "minor", "--host", f"{out}:Phi4(M8)", "--pattern", "F7-"]) == 0
    assert main(["growfan", "--matroid", "M8", "--triangle", "3,6", "--n", "4"]) == 2
    assert main(["growfan", "--matroid", "M8", "--triangle", "1,2,3", "--n", "4"]) == 2


def test_cli_verify(tmp_path, capsys):
    path = tmp_path / "r.json"
    code = main(["verify", "--scenario", "ag23e-aut", "--report", str(path), "--timings"])
    assert code == 0
    data = json.loads(path.read_text(encoding="utf-8"))
    assert "millis" in data["scenarios"][0]["claims"][0]
    assert "total: 6 claims" in capsys.readouterr().out
    assert main(["verify", "--scenario", "nosuch"]) == 2
    assert main(["verify", "--list"]) == 0
