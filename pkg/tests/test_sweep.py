import pytest

from core.errors import EnumerationError
from core.families import FamilyDescriptor, complete_descriptor
from core.graph import matching
from core.graph6 import to_graph6
from core.report import LawId
from core.sweep import REPORT_HEADER, SweepRunner, SweepTask, evaluate_graph
from models.config import SweepConfig


def _census(report, law, r=None):
    return {
        entry.t: set(entry.observed)
        for entry in report.census
        if entry.law == law and entry.r == r
    }


@pytest.fixture(scope="module")
def full_sweep():
    "The exhaustive run over every tau-critical graph with n <= 7"

    config = SweepConfig.build(n_max=7, r_values=["0", "1", "2", "3"])
    return SweepRunner(config).run()


def test_exhaustive_sweep_verifies(full_sweep):
    assert full_sweep.exit_code == 0
    assert full_sweep.status == "verified"
    assert full_sweep.violations == []
    assert all(entry.matches for entry in full_sweep.census)
    assert full_sweep.header == REPORT_HEADER
    assert full_sweep.graphs_examined == sum([2, 4, 11, 34, 156, 1044])
    assert full_sweep.checks == len(full_sweep.records)


def test_order_law_census_at_three(full_sweep):
    observed = _census(full_sweep, "NLAM")[3]
    at_five = {name for name in observed if FamilyDescriptor.parse(name).n == 5}
    assert at_five == {"C5", "K3+1K2"}
    assert observed == {"K4", "C5", "K3+1K2", "3K2"}


def test_gl_census(full_sweep):
    for t, observed in _census(full_sweep, "GL").items():
        expected = {str(complete_descriptor(t))}
        if t == 2:
            expected.add("2K2")
        if t == 3:
            expected.add("C5")
        assert observed == expected


def test_radius_census(full_sweep):
    for t, observed in _census(full_sweep, "LAM1").items():
        assert observed == {str(complete_descriptor(t))}


def test_rvpe_census_at_two(full_sweep):
    found = set().union(*_census(full_sweep, "RVPE", "2").values())
    assert found == {"2K2", "3K2", "C5", "C7"}


def test_regular_components_always_match(full_sweep):
    regular = [record for record in full_sweep.records if record.law == "REGULAR"]
    assert regular
    for record in regular:
        assert record.holds
        if record.lhs == "1":
            assert record.family is not None


def test_r_values_are_filtered_per_law(full_sweep):
    assert {record.r for record in full_sweep.records if record.law == "SPECT"} <= {"0", "1", "2", "3"}
    assert {record.r for record in full_sweep.records if record.law == "HALF"} == {
        "0",
        "1",
        "2",
        "3",
        "1/2",
        "3/2",
        "5/2",
    }


def test_worker_count_does_not_change_the_report():
    serial = SweepRunner(SweepConfig.build(n_max=6, jobs=1)).run()
    parallel = SweepRunner(SweepConfig.build(n_max=6, jobs=8)).run()
    assert serial.model_dump_json(indent=2) == parallel.model_dump_json(indent=2)
    assert "jobs" not in serial.config


def test_fault_injection_fails_the_sweep():
    report = SweepRunner(SweepConfig.build(n_max=5, laws=["EHM"], fault="EHM")).run()
    assert report.exit_code == 1
    assert report.status == "violations"
    assert report.violations
    for record in report.violations:
        assert record.evidence_graph6 == record.graph6
        assert record.evidence


def test_orders_above_native_need_a_corpus():
    with pytest.raises(EnumerationError):
        SweepRunner(SweepConfig.build(n_max=8)).run()


def test_corpus_orders(tmp_path):
    corpus = tmp_path / "order8.g6"
    corpus.write_text(to_graph6(matching(4)) + "\n" + to_graph6(matching(2)) + "\n")

    config = SweepConfig.build(n_max=8, laws=["NLAM", "EHM"], corpus_path=str(corpus))
    report = SweepRunner(config).run()

    assert report.exit_code == 0
    assert report.corpus_sha256 is not None
    # 2K2 is already part of the native run
    eight = [record for record in report.records if record.n == 8]
    assert {record.law for record in eight} == {"NLAM", "EHM"}
    assert {entry.t for entry in report.census if entry.law == "NLAM"} >= {4}
    assert _census(report, "NLAM")[4] >= {"4K2"}


def test_evaluate_graph_skips_non_critical_graphs():
    task = SweepTask(
        graph6="Cr",
        r_values=None,
        laws=(LawId.EHM,),
        tol=1e-9,
        max_iterations=1000,
        suranyi_cap=14,
    )
    outcome = evaluate_graph(task)
    assert not outcome.critical
    assert outcome.reports == ()


def test_half_integral_census(full_sweep):
    half = [entry for entry in full_sweep.census if entry.law == "HALF"]
    assert {entry.r for entry in half} >= {"1/2", "3/2", "5/2"}
    assert all(entry.matches for entry in half)

    for t, observed in _census(full_sweep, "HALF", "1/2").items():
        assert observed <= {str(complete_descriptor(t))}
    assert _census(full_sweep, "HALF", "1/2")[3] == {"K4"}
    assert _census(full_sweep, "HALF", "5/2")[4] == {"C5+1K2", "C7", "K3+2K2"}

    flagged = [r for r in full_sweep.records if r.law == "HALF" and r.r in ("1/2", "3/2", "5/2")]
    assert flagged
    assert all("Remark-1-interpretation" in record.flags for record in flagged)
