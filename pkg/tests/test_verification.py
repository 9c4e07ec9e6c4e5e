from __future__ import annotations

import json

import pytest

from unicyclic.families import u_cycle_seg, us_up
from unicyclic.graph import canonical_key
from unicyclic.verification import (
    HypothesisViolated,
    check_lemma,
    check_theorem,
    formula_audit,
    lemma_corpus,
    normalize_id,
    reproduce_counterexamples,
    sliding_chain,
)


def test_normalize_id():
    assert normalize_id("T3") == "T3_subtree_segseq"
    assert normalize_id("T8_segnum_sigma") == "T8_segnum_sigma"
    assert normalize_id("L3_4") == "merge_identity"
    with pytest.raises(HypothesisViolated):
        normalize_id("T9")


def test_t1_example():
    v = check_theorem("T1", {"n": 7})
    assert v.holds and v.class_size == 33
    hi, lo = v.claims
    assert canonical_key(us_up("us", 7)) in hi.achieved_by
    assert canonical_key(us_up("up", 7)) in lo.achieved_by


def test_t6_example():
    v = check_theorem("T6", {"segments": [6, 4]})
    assert v.holds and v.extremal_value == 131
    assert v.claimed_graph_key == canonical_key(u_cycle_seg([6, 4], 2))


def test_t3_example():
    v = check_theorem("T3", {"segments": [4, 4, 1, 1]})
    assert v.holds and v.claimed_graph_key == canonical_key(u_cycle_seg([4, 4, 1, 1], 1))
    assert v.claimed_graph_key in v.achieved_by


def test_t5_reports_balanced_maximizers():
    v = check_theorem("T5", {"n": 7, "m": 2})
    assert v.holds
    assert any("(5, 2)" in f or "(6, 1)" in f for f in v.findings)


def test_t8_counterexample_is_reported():
    v = check_theorem("T8", {"n": 7, "m": 3})
    assert not v.holds
    assert v.counterexample is not None
    assert v.counterexample.actual == 35 and v.counterexample.expected == 34
    report = v.to_report()
    assert report["extremal_value"] == "35"
    assert report["counterexample"]["edgelist"].startswith("7 7")


def test_hypotheses_enforced():
    with pytest.raises(HypothesisViolated):
        check_theorem("T4", {"segments": [1, 1, 1, 1, 1]})
    with pytest.raises(HypothesisViolated):
        check_theorem("T4", {"segments": [4, 2, 1]})
    with pytest.raises(HypothesisViolated):
        check_theorem("T3", {"segments": [2, 2, 1]})
    with pytest.raises(HypothesisViolated):
        check_theorem("T1", {"n": 2})
    with pytest.raises(HypothesisViolated):
        check_theorem("T5", {"n": 4, "m": 3})
    with pytest.raises(HypothesisViolated):
        check_theorem("T1", {})
    with pytest.raises(HypothesisViolated):
        check_theorem("L3_6", {})
    with pytest.raises(HypothesisViolated):
        check_lemma("T1", {})


def test_report_schema_and_determinism():
    a = check_theorem("T3", {"segments": [4, 2, 1, 1]}).to_report()
    b = check_theorem("T3", {"segments": [4, 2, 1, 1]}).to_report()
    assert json.dumps(a) == json.dumps(b)
    for field in ("theorem", "params", "class_size", "extremal_value", "claimed", "achieved_by", "findings"):
        assert field in a
    assert isinstance(a["extremal_value"], str)
    assert "counterexample" not in a
    assert check_theorem("T3", {"segments": [4, 2, 1, 1]}, workers=3).to_report() == a


def test_verdict_invariant():
    for tid, params in (("T8", {"n": 8, "m": 4}), ("T3", {"segments": [5, 1]}), ("T7", {"segments": [2, 2, 1, 1]})):
        v = check_theorem(tid, params)
        assert v.holds == (v.counterexample is None)
        if v.holds:
            assert v.claimed_graph_key in v.achieved_by


def test_corpus_is_deterministic():
    corpus = lemma_corpus(0)
    assert corpus == lemma_corpus(0)
    small = [g for g in corpus if g.n <= 5]
    # connected graphs on 1..5 vertices: 1 + 1 + 2 + 6 + 21
    assert len({canonical_key(g) for g in small}) == 31


def test_sliding_chain_shape():
    assert sliding_chain(9) == [2, 4, 5, 3, 1]
    for n in range(1, 13):
        chain = sliding_chain(n)
        # evens rise, odds fall, and every position up to ceil(n/2) appears once
        assert sorted(chain) == list(range(1, (n + 1) // 2 + 1))
        assert chain[-1] == 1


@pytest.mark.parametrize("ident,params", [
    ("L2_3", {"max_n": 8}),
    ("L3_1", {"max_cycle": 5, "max_pendant_total": 3}),
    ("L3_2", {"samples": 60}),
    ("L3_3", {"samples": 30}),
    ("L3_5", {}),
    ("L4_2", {"samples": 100}),
    ("L4_3", {"max_order": 10}),
    ("L4_4", {"max_l": 6}),
    ("L4_6", {}),
])
def test_lemma_suites(ident, params):
    v = check_lemma(ident, params)
    assert v.holds, v.counterexample.to_json() if v.counterexample else v.findings


def test_lemma_findings_are_recorded():
    assert any("equality 31 = 31" in f for f in check_lemma("L4_4", {"max_l": 4}).findings)
    assert any("isomorphic" in f for f in check_lemma("L4_6", {}).findings)
    assert any("single-segment" in f for f in check_lemma("L4_3", {"max_order": 6}).findings)
    assert any("formula-discrepancy" in f for f in check_lemma("L3_3", {"samples": 30}).findings)


def test_counterexample_reproduction():
    r = reproduce_counterexamples()
    assert r["holds"]
    assert r["values"]["W(H_1)"] == 118 and r["values"]["Z(U_2(6,4))"] == 115


def test_formula_audit():
    audit = {a["formula"]: a for a in formula_audit(10)}
    assert not audit["n(UP_n) = (n^2+7n-16)/2"]["matches"]
    assert audit["n(UP_n) = (n^2+7n-16)/2"]["first_mismatch"] == {"param": 3, "printed": 7, "actual": 10}
    assert not audit["n(U_(2,2)(l,1)) = (l^2+33l+54)/2"]["matches"]
    assert audit["n(U_(2,1)(l,2)) = (l^2+29l+50)/2"]["matches"]
    assert audit["n(U^1_n) = n+6+17*2^(n-5)"]["matches"]
    assert audit["girth-4 all-ones graph: 12*2^(n-5)+2^(n-7)+n+19"]["matches"]
