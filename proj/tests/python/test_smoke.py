import math
import os
from pathlib import Path

import pytest

import cogorder

DATA = Path(os.environ.get("COGORDER_DATA_DIR", Path(__file__).resolve().parents[2] / "data"))


@pytest.fixture(scope="module")
def checkin():
    return cogorder.load_workflow(DATA / "checkin-full.json")


def test_load_and_instantiate(checkin):
    wf, known = checkin
    assert len(wf) == 16
    assert not wf.is_concrete
    aups = cogorder.instantiate_variant(wf, "AUTH", "AUPS")
    assert len(aups) == 13
    assert cogorder.is_linear_extension(known["paper_optimal_AUPS"], aups)
    assert cogorder.count_linear_extensions(aups) == 114624


def test_solve_matches_brute_force(checkin):
    aups = cogorder.instantiate_variant(checkin[0], "AUTH", "AUPS")
    best = cogorder.solve(aups)[0]
    assert best.total_milli == cogorder.brute_force(aups).total_milli
    assert len(best.breakdowns) == 12
    top = cogorder.solve(aups, k=3, workers=2)
    assert [s.total_milli for s in top] == sorted(s.total_milli for s in top)


def test_sequence_cost_and_wcsp(checkin):
    wf, known = checkin
    aups = cogorder.instantiate_variant(wf, "AUTH", "AUPS")
    model = cogorder.CostModel()
    total, rows = cogorder.sequence_cost(known["paper_optimal_AUPS"], aups, model)
    assert len(rows) == 12
    assert cogorder.wcsp_cost(aups, model, known["paper_optimal_AUPS"]) == round(total * 1000)
    assert rows[0]["from"] == "LANG"


def test_compare_variants(checkin):
    rows, spread = cogorder.compare_variants(checkin[0])
    assert [choice[0][1] for choice, _ in rows] == ["AUPS", "AUCC", "AUPI", "AUPW"]
    assert spread > 0


def test_analysis():
    assert cogorder.ordering_distance(["A", "B", "C"], ["A", "C", "B"]) == pytest.approx(math.sqrt(2))
    assert cogorder.consensus_ordering([["A", "B", "C"], ["A", "B", "C"], ["B", "A", "C"]]) == ["A", "B", "C"]


def test_tasks_from_python():
    t = [
        cogorder.Task("S", cogorder.CognitiveResource.SR, "screen"),
        cogorder.Task("P", cogorder.CognitiveResource.PM, "scanner"),
    ]
    wf = cogorder.Workflow(t)
    assert cogorder.solve(wf)[0].ordering == ["P", "S"]
    assert cogorder.solve(wf, objective="max")[0].total == pytest.approx(0.842)
    assert "digraph" in cogorder.export_dot(wf)


def test_errors_map_to_value_error(checkin):
    with pytest.raises(cogorder.DomainError):
        cogorder.solve(checkin[0])
    with pytest.raises(ValueError):
        cogorder.ordering_distance(["A"], ["B"])
    with pytest.raises(ValueError):
        cogorder.solve(cogorder.Workflow([]), objective="median")
