import json

import pytest

from hyperverify import catalog
from hyperverify.catalog import (
    ANCHORS,
    STRATEGIES,
    InvalidOverride,
    UnknownIdentity,
    catalog_entries,
    lookup,
    run,
    run_all,
)

REQUIRED = """bell.sigma2 bell.vwp bell.vwp.alt rr.1 rr.2 dyson.mod18 dyson.mod9 dyson.gen27
lemma.bilateral lemma.qgauss lemma.weak apery.recursion apery.integrality apery.rate
gn.equals.ball rivoal.odd.only whipple clausen f4.reduction f2.to.f4 beukers.f2 brafman
rarefied.2 rarefied.3 tn.legendre elliptic.I pi.sun1 pi.sun2 pi.ramanujan beukers.integral
euler.zeta21""".split()

REPORT_SCHEMA = {
    "type": "array",
    "items": {
        "type": "object",
        "required": ["id", "status", "checked_order", "tolerance", "first_mismatch", "elapsed_ms", "details"],
        "additionalProperties": False,
        "properties": {
            "id": {"type": "string"},
            "status": {"enum": ["PASS", "FAIL", "PARTIAL"]},
            "checked_order": {"type": ["integer", "null"]},
            "tolerance": {"type": ["number", "null"]},
            "first_mismatch": {
                "oneOf": [
                    {"type": "null"},
                    {
                        "type": "object",
                        "required": ["order", "lhs", "rhs"],
                        "properties": {"order": {"type": "integer"}, "lhs": {"type": "string"}, "rhs": {"type": "string"}},
                    },
                ]
            },
            "elapsed_ms": {"type": "number", "minimum": 0},
            "details": {"type": "string"},
        },
    },
}


def test_required_entries_present():
    ids = {r.id for r in catalog_entries()}
    assert set(REQUIRED) <= ids


def test_ids_unique_and_strategies_known():
    entries = catalog_entries()
    assert len({r.id for r in entries}) == len(entries)
    assert all(r.strategy in STRATEGIES for r in entries)
    assert all(r.params["check"] in catalog._RUNNERS for r in entries)


def test_every_anchor_is_cited():
    cited = {a for r in catalog_entries() for a in r.anchors}
    assert set(ANCHORS) <= cited
    assert cited <= set(ANCHORS), cited - set(ANCHORS)


def test_lookup_examples():
    rec = lookup("bell.sigma2")
    assert rec.strategy == "QSERIES_ORDER" and rec.default_budget == {"order": 200}
    rec = lookup("gn.equals.ball")
    assert rec.strategy == "LINFORM_EXACT" and rec.default_budget == {"nmax": 20}
    assert lookup("nonsense") is None


def test_run_errors():
    with pytest.raises(UnknownIdentity):
        run("nonsense")
    with pytest.raises(InvalidOverride):
        run("pi.sun1", {"order": 4})
    with pytest.raises(InvalidOverride):
        run("bell.sigma2", {"order": "many"})
    with pytest.raises(InvalidOverride):
        run("bell.sigma2", {"order": 0})


def test_euler_zeta21():
    r = run("euler.zeta21")
    assert r.status == "PASS" and r.tolerance == 1e-6


def test_letter_entry_reports_order():
    r = run("dyson.mod9", order=60)
    assert r.status in ("PASS", "PARTIAL")
    assert r.checked_order is not None and r.checked_order >= 6


def test_order_override_changes_budget():
    assert run("bell.sigma2", {"order": 30}).checked_order == 30
    assert run("apery.recursion", {"order": 12}).checked_order == 12


def test_failure_is_reported_not_raised():
    r = run("zetaq.limit", {"tol": 1e-9})
    assert r.status == "FAIL"


def test_partial_only_for_letters(tmp_path, monkeypatch):
    # a letter entry asked to match a wrong identity degrades to PARTIAL,
    # the same check without the letter flag is a FAIL
    data = [
        {
            "id": "letter.bad",
            "title": "t",
            "paper_anchor": "letter-mod9",
            "strategy": "QSERIES_ORDER",
            "params": {"check": "letter", "which": ["MOD9_72"], "letter": True},
            "default_budget": {"order": 20},
        }
    ]
    path = tmp_path / "cat.json"
    path.write_text(json.dumps(data))
    monkeypatch.setenv("HYPERVERIFY_CATALOG", str(path))
    assert [r.id for r in catalog_entries()] == ["letter.bad"]
    monkeypatch.setattr(catalog.baileypair, "dyson_letter_check", lambda w, N: catalog.qseries.QIdentityReport(3, (4, 1, 2)))
    r = run("letter.bad")
    assert r.status == "PARTIAL" and r.checked_order == 3
    assert r.first_mismatch == {"order": 4, "lhs": "1", "rhs": "2"}
    data[0]["params"]["letter"] = False
    path.write_text(json.dumps(data))
    assert run("letter.bad").status == "FAIL"


def test_filter_and_order():
    reports = run_all("pi.*")
    assert [r.id for r in reports] == ["pi.ramanujan", "pi.sun1", "pi.sun2"]
    assert run_all("nothing.matches") == []


def test_parallel_matches_serial():
    a = [r.without_timing() for r in run_all("[bp]*", jobs=1)]
    b = [r.without_timing() for r in run_all("[bp]*", jobs=3)]
    assert a == b and len(a) > 5


def test_report_json_schema():
    jsonschema = pytest.importorskip("jsonschema")
    reports = run_all("*.sun*") + [run("dyson.gen27")]
    doc = json.loads(catalog.reports_to_json(reports))
    jsonschema.validate(doc, REPORT_SCHEMA)
    assert list(doc[0]) == ["id", "status", "checked_order", "tolerance", "first_mismatch", "elapsed_ms", "details"]
