import pytest

from rootstack import modules as M
from rootstack import rings as R
from rootstack.objects import DescriptorError, parse_object
from rootstack.report import Claim, ClaimReport, ConfigError, SuiteConfig, exit_code, report_document
from rootstack.suites import decompose_object, effective_config, run_suite

L = R.LineR()


def cfg(suite, **kw):
    return effective_config(SuiteConfig(suite, **kw))


def test_parse_object():
    assert parse_object("O(-1)").generators == ((1,),)
    assert parse_object("O/x^2").relation_columns()
    pt = parse_object("Z/3@2")
    assert pt.ring.kind == "PointG" and pt.degree_piece((2,)).torsion == (3,)
    lifted = parse_object("Z@0 | wedgeR(i=1,l={l})", 2)
    assert lifted.ring == L and lifted.name == "Z@0 | wedgeR(i=1,l=2)"
    for bad in ("Q", "Z/1@0", "O | wedgeR(i=0,l={l})"):
        with pytest.raises(DescriptorError):
            parse_object(bad)


def test_config_validation():
    with pytest.raises(ConfigError):
        SuiteConfig("lemma-key", ls=(1,))
    with pytest.raises(ConfigError):
        SuiteConfig("nope")
    with pytest.raises(ConfigError):
        SuiteConfig("sod-chart", divisors=(1,))
    c = cfg("sod-chart")
    assert c.ls == (2, 3) and c.divisors == (2, 4, 5, 6)


def test_report_invariants():
    with pytest.raises(ValueError):
        ClaimReport("x", "s", {}, "pass", {})
    c = Claim("x", "statement", {"x": "label"}, l=2)
    assert c.report().status == "fail"  # no cases
    c.truth("one", True, "fine")
    r = c.report()
    assert r.status == "pass" and r.citation == "label: statement"
    assert "wall_time" not in r.to_json()
    assert r.line("suite") == "[PASS] suite x l=2"
    c.undecided("two", "depth too small")
    assert c.report().status == "inconclusive"
    assert exit_code([r, c.report()]) == 3
    c.truth("three", False, "broken")
    assert exit_code([r, c.report()]) == 1


def test_decompose_structure_sheaf_splits_trivially():
    o = M.structure(L)
    for l in (2, 3):
        for i in range(l):
            r = decompose_object(o, i, cfg("decompose"), l, "O")
            assert r.status == "pass"
            assert r.witness["nontrivial_cones"] == []


def test_decompose_divisor_twist():
    r = decompose_object(parse_object("O(-1)"), 0, cfg("decompose"), 2, "O(-1)")
    assert r.status == "pass"
    steps = r.witness["filtration"]["steps"]
    assert [s["step"] for s in steps] == ["row tau(0,1) -> tau(0,0)"]
    assert steps[0]["blocks"] == ["wR1 wL-1"]
    assert steps[0]["cone"] != "0"


def test_decompose_rejects_bad_input():
    with pytest.raises(ConfigError):
        decompose_object(parse_object("Z@0"), 0, cfg("decompose"), 2)
    with pytest.raises(ConfigError):
        decompose_object(M.structure(L), 2, cfg("decompose"), 2)


def test_sod_theta_passes():
    reports = run_suite(SuiteConfig("sod-theta", ls=(2,)))
    assert reports and all(r.status == "pass" for r in reports)


def test_inconclusive_with_shallow_resolution():
    reports = run_suite(SuiteConfig("sod-chart", ls=(2,), divisors=(4,), depth=3))
    statuses = {r.status for r in reports}
    assert "inconclusive" in statuses and "fail" not in statuses
    assert exit_code(reports) == 3


def test_literal_variants_fail_and_corrected_forms_pass():
    reports = run_suite(SuiteConfig("tau-triangles", ls=(2,)))
    by = {r.claim: r for r in reports}
    assert by["tau.row-cokernel"].status == "pass"
    assert by["tau.row-cokernel.literal"].status == "fail"
    assert by["tau.row-cokernel.literal"].witness["failure_count"] >= 1


def test_report_document_ordering():
    c = SuiteConfig("decompose", ls=(2,), indices=(1, 0))
    reports = run_suite(c)
    doc = report_document(effective_config(c), reports)
    keys = [(r["params"]["i"], r["params"]["m"]) for r in doc["claims"]]
    assert keys == sorted(keys)
    assert doc["summary"]["exit_code"] == 0 and doc["schema"] == 1
