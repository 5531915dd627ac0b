import json
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from qanli.backends import AnswerCandidate
from qanli.corpus import GoldAnswer, QAInstance
from qanli.decontext import Premise
from qanli.errors import JoinError, ValidationError
from qanli.nli_dataset import (
    NLIPair,
    build_qa_nli,
    import_external_nli,
    is_correct,
    mix_with_external,
    pair_from_dict,
    pair_to_dict,
)
from qanli.qconvert import Hypothesis

from conftest import DATA_DIR


def load_pairs(name):
    return [
        pair_from_dict(json.loads(line))
        for line in (DATA_DIR / name).read_text().splitlines()
    ]


def make_instance(iid, answer="Alice"):
    context = f"{answer} wrote the letter. It arrived late."
    return QAInstance(
        id=iid, dataset="NQ", question="who wrote the letter",
        context=context,
        gold_answers=(GoldAnswer(answer, 0, len(answer)),),
        answerable=True, meta={})


def tables_for(instances, predicted=None):
    candidates, premises, hypotheses = {}, {}, {}
    for inst in instances:
        text = predicted.get(inst.id, inst.gold_answers[0].text) if predicted \
            else inst.gold_answers[0].text
        candidates[inst.id] = AnswerCandidate(
            inst.id, text, 0, len(text), 0.9, (0.9, 0.1, 0.0, 0.0, 0.0))
        premises[inst.id] = Premise(
            text=inst.context.split(". ")[0] + ".", mode="sentence",
            sentence_index=0)
        hypotheses[inst.id] = Hypothesis(
            text=f"{text} wrote the letter", method="rule",
            source_question_id=inst.id)
    return candidates, premises, hypotheses


class TestNLIPair:
    def test_invalid_label(self):
        with pytest.raises(ValidationError):
            NLIPair(premise="p", hypothesis="h", label="maybe", origin="qa_derived")

    def test_invalid_origin(self):
        with pytest.raises(ValidationError):
            NLIPair(premise="p", hypothesis="h", label="entailed", origin="folklore")

    def test_round_trip(self):
        pair = NLIPair(premise="p", hypothesis="h", label="entailed",
                       origin="external_nli", instance_id="x",
                       meta={"source": "mnli"})
        assert pair_from_dict(pair_to_dict(pair)) == pair


class TestIsCorrect:
    def test_em_mode(self):
        assert is_correct("the Eiffel Tower", ["eiffel tower"], metric="em")
        assert not is_correct("tower", ["eiffel tower"], metric="em")

    def test_f1_mode_threshold(self):
        # f1("eiffel tower paris", "eiffel tower") = 2*2/(3+2) = 0.8
        assert is_correct("eiffel tower paris", ["eiffel tower"],
                          metric="f1", f1_threshold=0.8)
        assert not is_correct("eiffel tower paris", ["eiffel tower"],
                              metric="f1", f1_threshold=0.81)

    def test_unanswerable_abstention(self):
        assert is_correct("", [], metric="em")
        assert not is_correct("guess", [], metric="em")

    def test_unknown_metric(self):
        with pytest.raises(ValidationError):
            is_correct("x", ["x"], metric="bleu")


class TestBuildQaNli:
    def test_labels_follow_correctness(self):
        instances = [make_instance("a"), make_instance("b")]
        candidates, premises, hypotheses = tables_for(
            instances, predicted={"b": "Bob"})
        pairs = build_qa_nli(instances, candidates, premises, hypotheses)
        by_id = {p.instance_id: p for p in pairs}
        assert by_id["a"].label == "entailed"
        assert by_id["b"].label == "not_entailed"

    def test_meta_carries_provenance(self):
        instances = [make_instance("a")]
        pairs = build_qa_nli(instances, *tables_for(instances))
        assert pairs[0].meta == {
            "dataset": "NQ", "premise_mode": "sentence",
            "hypothesis_method": "rule"}
        assert pairs[0].origin == "qa_derived"

    def test_missing_join_rows_named(self):
        instances = [make_instance("a"), make_instance("b")]
        candidates, premises, hypotheses = tables_for(instances)
        del candidates["b"]
        del premises["a"]
        with pytest.raises(JoinError) as err:
            build_qa_nli(instances, candidates, premises, hypotheses)
        message = str(err.value)
        assert "b (candidates)" in message and "a (premises)" in message
        assert set(err.value.missing_ids) == {"b (candidates)", "a (premises)"}

    def test_fixture_counts(self, pipeline_instances):
        from qanli.backends import MockQABackend
        from qanli.decontext import make_premise
        from qanli.qconvert import convert
        qa = MockQABackend()
        candidates, premises, hypotheses = {}, {}, {}
        for inst in pipeline_instances:
            cand = qa.answer(inst)
            candidates[inst.id] = cand
            span = (cand.start, cand.end) if cand.start >= 0 else None
            premises[inst.id] = make_premise(inst, span, "sentence")
            hypotheses[inst.id] = convert(inst.question, cand.text, "rule",
                                          question_id=inst.id)
        pairs = build_qa_nli(pipeline_instances, candidates, premises, hypotheses)
        counts = Counter(p.label for p in pairs)
        assert counts == {"entailed": 30, "not_entailed": 20}


class TestImportExternal:
    def test_mnli_field_names(self):
        records = [{"pairID": "m1", "sentence1": "p", "sentence2": "h",
                    "gold_label": "entailment"}]
        pairs, issues = import_external_nli(records, source="mnli")
        assert issues == []
        assert pairs[0].label == "entailed"
        assert pairs[0].instance_id == "m1"
        assert pairs[0].origin == "external_nli"
        assert pairs[0].meta == {"source": "mnli"}

    def test_fever_labels_collapse(self):
        records = [
            {"id": 1, "evidence": "p", "claim": "h", "label": "SUPPORTS"},
            {"id": 2, "evidence": "p", "claim": "h", "label": "REFUTES"},
            {"id": 3, "evidence": "p", "claim": "h",
             "label": "NOT ENOUGH INFO"},
        ]
        pairs, issues = import_external_nli(records, source="fever_nli")
        assert [p.label for p in pairs] == [
            "entailed", "not_entailed", "not_entailed"]

    def test_bad_rows_reported_not_fatal(self):
        records = [
            {"premise": "p", "hypothesis": "h", "label": "entailment"},
            {"premise": "p", "label": "entailment"},
            {"premise": "p", "hypothesis": "h", "label": "perhaps"},
        ]
        pairs, issues = import_external_nli(records, source="mnli")
        assert len(pairs) == 1
        assert len(issues) == 2

    def test_fixture_loads_cleanly(self):
        records = [json.loads(line) for line
                   in (DATA_DIR / "external_nli.jsonl").read_text().splitlines()]
        pairs, issues = import_external_nli(records, source="mnli")
        assert len(pairs) == 60 and issues == []
        labels = Counter(p.label for p in pairs)
        assert labels == {"entailed": 20, "not_entailed": 40}


class TestMix:
    def test_exact_balance(self):
        qa = load_pairs("mix_small_qa.jsonl")
        external = load_pairs("mix_small_external.jsonl")
        mixed = mix_with_external(qa, external, seed=3)
        origins = Counter(p.origin for p in mixed)
        assert origins == {"qa_derived": 5, "external_nli": 5}

    def test_too_few_external_rejected(self):
        qa = load_pairs("mix_small_qa.jsonl")
        external = load_pairs("mix_small_external.jsonl")
        with pytest.raises(ValidationError):
            mix_with_external(qa, external[:3], seed=0)

    def test_seed_changes_order_not_multiset(self):
        qa = load_pairs("mix_small_qa.jsonl")
        external = load_pairs("mix_small_external.jsonl")
        a = mix_with_external(qa, external, seed=1)
        b = mix_with_external(qa, external, seed=2)
        assert Counter(id(p) for p in a) != Counter(id(p) for p in b) or a != b
        assert sorted(p.instance_id for p in a) == sorted(
            p.instance_id for p in b)

    def test_same_seed_same_output(self):
        qa = load_pairs("mix_small_qa.jsonl")
        external = load_pairs("mix_small_external.jsonl")
        assert mix_with_external(qa, external, seed=9) == \
            mix_with_external(qa, external, seed=9)

    @given(st.integers(0, 1000))
    @settings(max_examples=25, deadline=None)
    def test_size_is_double_qa(self, seed):
        qa = load_pairs("mix_small_qa.jsonl")
        external = load_pairs("mix_small_external.jsonl")
        mixed = mix_with_external(qa, external, seed=seed)
        assert len(mixed) == 2 * len(qa)
        assert Counter(p.origin for p in mixed) == {
            "qa_derived": 5, "external_nli": 5}
