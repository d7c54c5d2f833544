import json

import pytest

from igt.catalog import (
    CONTAINS_K33, DEFAULT_NEGATIVE_CORPUS, K33_FREE, REPORT_FORMAT, CorpusEntry, classify,
    extended_instances, load_corpus, match_family, theorem_instances, verify_theorem,
)
from igt.errors import ResourceLimitError, SpecError
from igt.group import build


def test_instances_up_to_8():
    got = [(i.item, i.spec_text) for i in theorem_instances(8)]
    assert got == [
        (1, "C(1)"), (1, "C(2)"), (1, "C(3)"), (1, "C(4)"), (2, "C(2)*C(2)"), (1, "C(5)"),
        (1, "C(6)"), (7, "SDC(3,2,2)"), (1, "C(7)"), (1, "C(8)"), (2, "C(4)*C(2)"),
        (3, "D(8)"), (3, "Dic(2)"),
    ]


def test_instances_are_buildable_and_sized():
    for inst in theorem_instances(100):
        assert build(inst.spec_text).order == inst.order <= 100


def test_instances_cover_named_groups():
    texts = {i.spec_text for i in theorem_instances(100)}
    for t in ["SDC(3,4,2)", "D(18)", "SDE(2,3,1)", "SDC(7,6,3)", "SDE(3,3,2)", "C(9)*C(3)",
              "Perm(9;(1 2 3 4 5 6 7 8 9),(2 5 8)(3 9 6))", "Dic(2)", "D(8)"]:
        assert t in texts


def test_instances_unique_and_sorted():
    inst = theorem_instances(200)
    keys = [(i.order, i.item, i.spec_text) for i in inst]
    assert keys == sorted(keys)
    assert len({i.spec_text for i in inst}) == len(inst)
    with pytest.raises(ValueError):
        theorem_instances(0)


def test_extended_instances():
    assert [(i.item, i.spec_text, i.order) for i in extended_instances()] == [
        (5, "SDE(17,9,7)", 2601), (9, "SDC(17,8,2)", 136),
    ]


@pytest.mark.parametrize("spec, verdict, vertices", [
    ("C(24)", K33_FREE, 6), ("C(36)", CONTAINS_K33, 7), ("Dic(4)", CONTAINS_K33, 9),
    ("SDC(3,4,2)", K33_FREE, 6), ("C(1)", K33_FREE, 0),
])
def test_classify(spec, verdict, vertices):
    c = classify(spec)
    assert c.verdict == verdict and c.vertices == vertices
    assert (c.witness is None) == (verdict == K33_FREE)


def test_classify_limits():
    with pytest.raises(ResourceLimitError):
        classify("C(60)", order_bound=50)
    with pytest.raises(SpecError):
        classify("C(")


def test_verify_small_run():
    report = verify_theorem(24, [])
    assert report.passed
    assert len(report.entries) == len(theorem_instances(24))
    d = report.to_dict()
    assert d["format"] == REPORT_FORMAT and d["passed"] and d["mismatches"] == []
    json.dumps(d)


def test_verify_reports_wrong_expectation():
    corpus = [CorpusEntry("C(24)", CONTAINS_K33, "deliberately wrong"), CorpusEntry("C(36)", CONTAINS_K33)]
    report = verify_theorem(6, corpus)
    assert not report.passed
    assert [e.spec_text for e in report.mismatches] == ["C(24)"]


def test_verify_records_errors():
    report = verify_theorem(4, [CorpusEntry("C(9000)", CONTAINS_K33)])
    (bad,) = report.mismatches
    assert bad.error.startswith("ResourceLimitError")


def test_verify_parallel_matches_serial():
    a = verify_theorem(30, DEFAULT_NEGATIVE_CORPUS[:3])
    b = verify_theorem(30, DEFAULT_NEGATIVE_CORPUS[:3], jobs=2)
    strip = lambda r: [(e.spec_text, e.actual, e.witness) for e in r.entries]
    assert strip(a) == strip(b)


def test_load_corpus(tmp_path):
    path = tmp_path / "c.json"
    path.write_text(json.dumps([{"spec": "C(36)", "expected": CONTAINS_K33, "note": "x"}]))
    assert load_corpus(path) == [CorpusEntry("C(36)", CONTAINS_K33, "x")]
    path.write_text(json.dumps({"entries": [{"spec": "C(4)", "expected": K33_FREE}]}))
    assert load_corpus(path) == [CorpusEntry("C(4)", K33_FREE, "")]
    path.write_text(json.dumps([{"spec": "C(4)", "expected": "maybe"}]))
    with pytest.raises(ValueError):
        load_corpus(path)


@pytest.mark.parametrize("spec, item", [
    ("SDE(2,3,1)", 4), ("Perm(4;(1 2 3),(2 3 4))", 4), ("D(18)", 8), ("C(3)*C(2)", 1),
    ("D(6)", 7), ("Perm(4;(1 2),(1 2 3 4))", None), ("C(2)*C(2)*C(2)", None),
])
def test_match_family(spec, item):
    assert match_family(build(spec)) == item


def test_match_family_bound():
    with pytest.raises(ResourceLimitError):
        match_family(build("C(600)"), iso_bound=512)


def test_deterministic_output():
    a = verify_theorem(40, DEFAULT_NEGATIVE_CORPUS[:2]).to_dict()
    b = verify_theorem(40, DEFAULT_NEGATIVE_CORPUS[:2]).to_dict()
    for d in (a, b):
        for e in d["entries"]:
            e.pop("seconds")
    assert a == b
