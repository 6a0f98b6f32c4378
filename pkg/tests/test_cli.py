import json

import pytest
from sqlmodel import select

from core.families import FamilyDescriptor, FamilyKind, build_family
from core.graph import cycle
from core.graph6 import to_graph6
from db import generate_engine, get_session
from main import build_parser, main
from models.report import LawRow


def _run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_every_subcommand_is_registered():
    parser = build_parser()
    for argv in (["check", "C~"], ["enumerate", "--n", "3"], ["sweep"], ["family", "--kind", "all-matching", "--t", "2"]):
        assert parser.parse_args(argv).command is not None


def test_check_complete_graph(capsys):
    code, out = _run(capsys, "check", "C~")
    document = json.loads(out)
    assert code == 0
    assert document["tau"] == 3
    assert document["critical"] is True
    assert document["family"] == "K4"
    assert document["lambda1"] == "[3, 3]"

    ehm = [law for law in document["laws"] if law["law"] == "EHM"]
    assert ehm[0]["equality"] is True


def test_check_cycle_at_r_one(capsys):
    code, out = _run(capsys, "check", to_graph6(cycle(5)), "--r", "1")
    document = json.loads(out)
    assert code == 0
    spect = [law for law in document["laws"] if law["law"] == "SPECT"]
    assert [law["r"] for law in spect] == ["1"]
    assert spect[0]["equality"] is True
    assert spect[0]["rhs"] == "10"


def test_check_non_critical_graph(capsys):
    code, out = _run(capsys, "check", to_graph6(cycle(4)))
    document = json.loads(out)
    assert code == 0
    assert document["critical"] is False
    assert document["laws"] == []
    assert "keeps tau" in document["reason"]


@pytest.mark.parametrize(
    "argv",
    [
        ["check", "C"],
        ["check", "C~", "--r", "-1"],
        ["check", "C~", "--r", "5"],
        ["check", "C~", "--r", "0,4"],
        ["check", "C~", "--tol", "0"],
        ["enumerate", "--n", "8"],
        ["family", "--kind", "k-matching", "--s", "1", "--t", "3"],
        ["family", "--kind", "all-matching", "--t", "40"],
        ["sweep", "--max-n", "1"],
        ["sweep", "--max-n", "9"],
        ["sweep", "--laws", "NOPE"],
    ],
)
def test_usage_and_domain_errors_exit_two(capsys, argv):
    assert main(argv) == 2


def test_argparse_errors_exit_two():
    with pytest.raises(SystemExit) as error:
        main(["sweep", "--format", "xml"])
    assert error.value.code == 2


def test_enumerate(capsys):
    code, out = _run(capsys, "enumerate", "--n", "3", "--critical")
    assert code == 0
    assert out.splitlines() == ["Bw"]

    _, out = _run(capsys, "enumerate", "--n", "2", "--critical")
    assert out.splitlines() == ["A_"]

    _, out = _run(capsys, "enumerate", "--n", "4")
    assert len(out.splitlines()) == 11


def test_family_cycle_plus_matching(capsys):
    code, out = _run(capsys, "family", "--kind", "c-matching", "--s", "4", "--t", "5")
    assert code == 0
    expected = build_family(FamilyDescriptor(FamilyKind.ODD_CYCLE_PLUS_MATCHING, 4, 5))
    assert out.splitlines() == [to_graph6(expected)]


def test_family_summary(capsys):
    code, out = _run(capsys, "family", "--kind", "all-matching", "--t", "2", "--summary")
    assert code == 0
    record, summary = out.split("\n", 1)
    document = json.loads(summary)
    assert record == document["graph6"]
    assert document["descriptor"] == "2K2"
    assert document["verified"] is True
    assert "GL" in document["equalities"]
    assert "NLAM" in document["equalities"]


def test_sweep_fault_exits_one(capsys):
    code, out = _run(capsys, "sweep", "--max-n", "4", "--laws", "EHM", "--fault", "EHM")
    assert code == 1
    report = json.loads(out)
    assert report["status"] == "violations"
    assert report["violations"][0]["evidence_graph6"]


def test_sweep_json_to_file(capsys, tmp_path):
    target = tmp_path / "sweep.json"
    code, out = _run(capsys, "sweep", "--max-n", "5", "--r", "0,1", "--out", str(target))
    assert code == 0
    assert out == ""
    report = json.loads(target.read_text())
    assert report["exit_code"] == 0
    assert report["config"]["r_values"] == ["0", "1"]
    assert "output" not in report["config"]


def test_sweep_csv(capsys, tmp_path):
    target = tmp_path / "sweep.csv"
    code, _ = _run(capsys, "sweep", "--max-n", "4", "--format", "csv", "--out", str(target))
    assert code == 0
    lines = target.read_text().splitlines()
    assert lines[0].startswith("graph6,law,r,n,m,t,lhs,rhs,slack,holds,equality")
    assert len(lines) > 1


def test_sweep_sqlite(capsys, tmp_path):
    target = tmp_path / "sweep.db"
    code, _ = _run(capsys, "sweep", "--max-n", "4", "--laws", "EHM,GL", "--format", "sqlite", "--out", str(target))
    assert code == 0

    with get_session(generate_engine(f"sqlite:///{target}")) as session:
        rows = session.exec(select(LawRow)).all()
    assert rows
    assert {row.law for row in rows} == {"EHM", "GL"}
    assert len({row.run for row in rows}) == 1


def test_sweep_schema(capsys):
    code, out = _run(capsys, "sweep", "--schema")
    assert code == 0
    schema = json.loads(out)
    assert "census" in schema["properties"]


def test_check_accepts_half_integral_r_above_t(capsys):
    code, out = _run(capsys, "check", "C~", "--r", "3,7/2")
    assert code == 0
    document = json.loads(out)
    assert {law["r"] for law in document["laws"] if law["law"] == "RVPE"} == {"3"}
    assert "7/2" in {law["r"] for law in document["laws"] if law["law"] == "HALF"}
