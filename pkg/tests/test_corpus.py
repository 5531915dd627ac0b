import json

import pytest
from hypothesis import given, strategies as st

from qanli.corpus import (
    CorpusStats,
    GoldAnswer,
    QAInstance,
    compute_stats,
    filter_nq,
    has_table_markup,
    instance_from_dict,
    instance_to_dict,
    is_question,
    parse_mrqa,
    parse_squad,
    resolve_span,
    validate_instance,
)
from qanli.errors import EmptyCorpusError, ValidationError
from qanli.nli_dataset import NLIPair


def make_instance(**overrides):
    base = dict(
        id="t1",
        dataset="NQ",
        question="who wrote it",
        context="Alice wrote it.",
        gold_answers=(GoldAnswer("Alice", 0, 5),),
        answerable=True,
        meta={},
    )
    base.update(overrides)
    return QAInstance(**base)


class TestValidation:
    def test_valid_instance_passes(self):
        validate_instance(make_instance())

    def test_span_text_mismatch(self):
        bad = make_instance(gold_answers=(GoldAnswer("Bob", 0, 5),))
        with pytest.raises(ValidationError):
            validate_instance(bad)

    def test_unanswerable_with_golds_rejected(self):
        bad = make_instance(answerable=False)
        with pytest.raises(ValidationError):
            validate_instance(bad)

    def test_offsetless_gold_allowed(self):
        ok = make_instance(gold_answers=(GoldAnswer("Alice wrote", -1, -1),))
        validate_instance(ok)

    def test_empty_question_rejected(self):
        with pytest.raises(ValidationError):
            validate_instance(make_instance(question=""))


class TestResolveSpan:
    def test_first_case_insensitive_occurrence(self):
        assert resolve_span("Alice met Alice.", "alice") == (0, 5)

    def test_not_found(self):
        assert resolve_span("Alice met Alice.", "bob") == (-1, -1)


class TestParseMrqa:
    def test_tiny_fixture(self, data_dir):
        result = parse_mrqa((data_dir / "mrqa_tiny.jsonl").read_text().splitlines())
        assert [i.id for i in result.instances] == ["mrqa-001", "mrqa-002"]
        assert len(result.issues) == 1
        assert result.issues[0].line == 3
        for inst in result.instances:
            validate_instance(inst)

    def test_inclusive_spans_converted(self, data_dir):
        result = parse_mrqa((data_dir / "mrqa_tiny.jsonl").read_text().splitlines())
        first = result.instances[0]
        gold = first.gold_answers[0]
        assert first.context[gold.start:gold.end] == "Paris"

    def test_alias_answers_appended_without_offsets(self, data_dir):
        result = parse_mrqa((data_dir / "mrqa_tiny.jsonl").read_text().splitlines())
        second = result.instances[1]
        texts = [g.text for g in second.gold_answers]
        assert "8849 m" in texts
        alias = next(g for g in second.gold_answers if g.text == "8849 m")
        assert not alias.has_span

    def test_header_line_skipped(self):
        header = json.dumps({"header": {"dataset": "SQuAD", "split": "dev"}})
        result = parse_mrqa([header])
        assert result.instances == [] and result.issues == []

    def test_duplicate_qids_reported(self):
        record = json.dumps({
            "context": "Alice wrote it.",
            "qas": [
                {"qid": "dup", "question": "who wrote it",
                 "detected_answers": [{"text": "Alice", "char_spans": [[0, 4]]}]},
                {"qid": "dup", "question": "who wrote it",
                 "detected_answers": [{"text": "Alice", "char_spans": [[0, 4]]}]},
            ],
        })
        result = parse_mrqa([record])
        assert len(result.instances) == 1
        assert any("dup" in issue.message for issue in result.issues)


class TestParseSquad:
    def test_tiny_fixture(self, data_dir):
        doc = json.loads((data_dir / "squad_tiny.json").read_text())
        result = parse_squad(doc, dataset="SQuAD2")
        assert len(result.instances) == 5
        assert result.issues == []
        for inst in result.instances:
            validate_instance(inst)

    def test_impossible_marked_unanswerable(self, data_dir):
        doc = json.loads((data_dir / "squad_tiny.json").read_text())
        by_id = {i.id: i for i in parse_squad(doc, dataset="SQuAD2").instances}
        assert by_id["squad-003"].answerable is False
        assert by_id["squad-003"].gold_answers == ()
        assert by_id["squad-005"].answerable is False

    def test_multiple_answers_kept(self, data_dir):
        doc = json.loads((data_dir / "squad_tiny.json").read_text())
        by_id = {i.id: i for i in parse_squad(doc, dataset="SQuAD2").instances}
        assert len(by_id["squad-002"].gold_answers) == 2

    def test_bad_offset_reported_with_node_path(self):
        doc = {"data": [{"title": "T", "paragraphs": [{
            "context": "Alice wrote it.",
            "qas": [{"id": "q1", "question": "who wrote it",
                     "is_impossible": False,
                     "answers": [{"text": "Alice", "answer_start": 3}]}],
        }]}]}
        result = parse_squad(doc, dataset="SQuAD2")
        assert result.instances == []
        assert result.issues[0].path.startswith("data[0].paragraphs[0].qas[0]")


class TestRoundTrip:
    def test_fixture_round_trip(self, pipeline_instances):
        for inst in pipeline_instances:
            again = instance_from_dict(json.loads(
                json.dumps(instance_to_dict(inst))))
            assert again == inst

    @given(st.integers(0, 49))
    def test_round_trip_pointwise(self, idx):
        from conftest import load_instances
        inst = load_instances("pipeline_50.jsonl")[idx]
        assert instance_from_dict(instance_to_dict(inst)) == inst


class TestQuestionHeuristic:
    def test_wh_start(self):
        assert is_question("who plays michael on the good place")

    def test_terminal_question_mark(self):
        assert is_question(
            "the first vice president of India who became the president later was?")

    def test_narrative(self):
        assert not is_question("largest city of brazil by population")

    def test_auxiliary_start(self):
        assert is_question("did the wall fall")


class TestTableMarkup:
    def test_html_tags(self):
        assert has_table_markup("<Table> <Tr> <Td> x </Td> </Tr> </Table>")

    def test_pipe_row(self):
        assert has_table_markup("a | b | c | d")

    def test_plain_prose(self):
        assert not has_table_markup("Just a sentence. And one more.")

    def test_two_cells_not_enough(self):
        assert not has_table_markup("a | b")


class TestFilterNq:
    def test_fixture_split(self, nq_instances):
        kept, dropped = filter_nq(nq_instances)
        assert len(kept) == 15
        reasons = sorted(reason for _, reason in dropped)
        assert reasons == ["narrative", "narrative", "narrative", "table", "table"]

    def test_idempotent(self, nq_instances):
        kept, _ = filter_nq(nq_instances)
        again, dropped = filter_nq(kept)
        assert again == kept and dropped == []


class TestStats:
    def test_empty_corpus_raises(self):
        with pytest.raises(EmptyCorpusError):
            compute_stats([])

    def test_worked_example(self):
        pair = NLIPair(
            premise="alpha beta gamma", hypothesis="beta gamma delta",
            label="entailed", origin="qa_derived")
        stats = compute_stats([pair])
        assert stats == CorpusStats(
            premise_len_mean=3.0, hypothesis_len_mean=3.0,
            jaccard_overlap_mean=0.5, count=1)

    def test_identical_sets(self):
        pair = NLIPair(
            premise="alpha beta gamma delta epsilon",
            hypothesis="epsilon delta gamma beta alpha",
            label="entailed", origin="qa_derived")
        stats = compute_stats([pair])
        assert stats.premise_len_mean == 5.0
        assert stats.hypothesis_len_mean == 5.0
        assert stats.jaccard_overlap_mean == 1.0
