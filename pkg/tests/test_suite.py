import json

import pytest

from germlift.manifest import loads
from germlift.poly import poly_arith, set_default_order_kind
from germlift.suite import (
    FAIL,
    PASS,
    TIMEOUT,
    UNDECIDED_LOCAL,
    Report,
    exit_code,
    instance_note,
    reports_to_json,
    run_manifest,
    run_task,
)

from conftest import fixture_path


def _fold_manifest(weights=False):
    doc = {
        "schema": "germlift-manifest/1",
        "rings": {
            "src": {"vars": ["x", "lam"]},
            "tgt": {"vars": ["X", "Lam"]},
        },
        "maps": {
            "g": {"source": "src", "target": "tgt", "components": ["x", "lam^2"]},
        },
        "unfoldings": {},
        "fields": {
            "updir": {"ring": "tgt", "elements": [["0", "1"]]},
        },
        "divisors": {},
        "tasks": [],
    }
    if weights:
        doc["rings"]["src"]["weights"] = [1, 1]
        doc["rings"]["tgt"]["weights"] = [1, 2]
    return loads(json.dumps(doc))


def test_undecided_local_on_ungraded_instance():
    m = _fold_manifest(weights=False)
    task = {"id": "t", "op": "lift_check", "map": "g", "fields": "updir",
            "expect": "certified"}
    report = run_task(m, task)
    assert report.verdict == UNDECIDED_LOCAL


def test_conclusive_fail_on_graded_instance():
    m = _fold_manifest(weights=True)
    task = {"id": "t", "op": "lift_check", "map": "g", "fields": "updir",
            "expect": "certified"}
    report = run_task(m, task)
    assert report.verdict == FAIL


def test_exit_codes():
    assert exit_code([Report("a", PASS)]) == 0
    assert exit_code([Report("a", PASS), Report("b", FAIL)]) == 2
    assert exit_code([Report("a", TIMEOUT)]) == 3
    assert exit_code([Report("a", UNDECIDED_LOCAL)]) == 2


def test_report_json_shape():
    text = reports_to_json([Report("a", PASS, ["ok"])])
    doc = json.loads(text)
    assert doc["schema"] == "germlift-report/1"
    assert doc["summary"]["pass"] == 1


def test_instance_note_mentions_all_instances():
    note = instance_note()
    assert "k=2,3,4,5" in note.details[0]


def test_run_manifest_only_filter():
    from germlift.manifest import load_manifest

    m = load_manifest(fixture_path("hk.manifest.json"))
    reports = run_manifest(m, only="hk2.certify")
    assert [r.task_id for r in reports] == ["hk2.certify"]


def test_poly_arith_dispatch(xy, P):
    a = P("x + y", xy)
    b = P("x - y", xy)
    assert poly_arith(a, b, "add") == P("2*x", xy)
    assert poly_arith(a, b, "sub") == P("2*y", xy)
    assert poly_arith(a, b, "mul") == P("x^2 - y^2", xy)
    with pytest.raises(ValueError):
        poly_arith(a, b, "div")


def test_order_override_round_trips():
    from germlift.poly import MonomialOrder, VarSet

    try:
        set_default_order_kind("lex")
        assert VarSet(["x", "y"], [2, 1]).default_order() == MonomialOrder.lex()
        set_default_order_kind("grevlex")
        assert VarSet(["x"], [3]).default_order() == MonomialOrder.grevlex()
        set_default_order_kind("weighted")
        assert VarSet(["x"], [3]).default_order() == MonomialOrder.wgrevlex((3,))
    finally:
        set_default_order_kind(None)


def test_bad_inverse_reports_fail_not_crash():
    doc = {
        "schema": "germlift-manifest/1",
        "rings": {"t": {"vars": ["X", "Y"]}},
        "maps": {
            "g": {"source": "t", "target": "t", "components": ["X", "Y - X^2"]},
            "not_inverse": {"source": "t", "target": "t",
                            "components": ["X", "Y - X^2"]},
        },
        "unfoldings": {},
        "fields": {"one": {"ring": "t", "elements": [["X", "Y"]]}},
        "divisors": {},
        "tasks": [],
    }
    m = loads(json.dumps(doc))
    task = {"id": "t", "op": "transport_table", "map": "g",
            "inverse": "not_inverse", "fields": "one", "expect": "one"}
    report = run_task(m, task)
    assert report.verdict == FAIL
    assert "InverseCheckFailed" in report.details[0]
