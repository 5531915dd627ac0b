import logging

import pytest
from hypothesis import given, strategies as st

from qanli.errors import ValidationError
from qanli.qconvert import Hypothesis, concat_baseline, convert, convert_rule

words = st.text(alphabet="abcdefghijklmnopqrstuvwxyz", min_size=1, max_size=8)
questions = st.lists(words, min_size=1, max_size=6).map(" ".join)
answers = st.lists(words, min_size=1, max_size=3).map(" ".join)


class FakeConvertClient:
    backend_id = "fake"

    def __init__(self, reply):
        self.reply = reply
        self.calls = []

    def convert(self, question, answer):
        self.calls.append((question, answer))
        return self.reply


class TestRuleTable:
    def test_wh_verb_replacement(self):
        hyp = convert_rule("who plays michael on the good place", "Ted Danson")
        assert hyp.text == "Ted Danson plays michael on the good place"
        assert hyp.method == "rule"

    def test_terminal_copula_append(self):
        hyp = convert_rule(
            "the first vice president of India who became the president later was?",
            "Venkaiah Naidu")
        assert hyp.text == ("the first vice president of India who became "
                            "the president later was Venkaiah Naidu.")

    def test_degenerate_tautology_not_suppressed(self):
        assert convert_rule("what is X", "X").text == "X is X"

    def test_how_many_replacement(self):
        hyp = convert_rule("how many states are in the usa", "50")
        assert hyp.text == "50 states are in the usa"

    def test_auxiliary_defronting(self):
        hyp = convert_rule("did shakespeare write macbeth", "Shakespeare")
        assert hyp.text == "shakespeare did write macbeth — Shakespeare"

    def test_fallback_append(self):
        hyp = convert_rule("what country has the most people", "China")
        assert hyp.text == "what country has the most people, China."

    def test_reference_corpus(self, converter_corpus):
        for entry in converter_corpus:
            got = convert_rule(entry["question"], entry["answer"]).text
            assert got == entry["expected"], entry["question"]

    def test_type_mismatch_logged_not_raised(self, caplog):
        with caplog.at_level(logging.WARNING, logger="qanli.qconvert"):
            hyp = convert_rule("how old is the captain", "Jack Sparrow")
        assert "Jack Sparrow" in hyp.text
        assert any("quantity" in r.getMessage() for r in caplog.records)

    def test_empty_inputs_rejected(self):
        with pytest.raises(ValidationError):
            convert_rule("", "x")
        with pytest.raises(ValidationError):
            convert_rule("who wrote it", "")

    @given(questions, answers)
    def test_pure_function(self, q, a):
        assert convert_rule(q, a) == convert_rule(q, a)

    @given(questions, answers)
    def test_answer_verbatim(self, q, a):
        assert a in convert_rule(q, a).text


class TestNeural:
    def test_client_reply_trimmed_and_terminated(self):
        client = FakeConvertClient("  Ted Danson plays Michael  ")
        hyp = convert("who plays michael", "Ted Danson", "neural", client=client)
        assert hyp.text == "Ted Danson plays Michael."
        assert hyp.method == "neural"
        assert hyp.fallback is False

    def test_existing_terminal_kept(self):
        client = FakeConvertClient("Done already!")
        assert convert("q one", "a", "neural", client=client).text == "Done already!"

    def test_empty_reply_falls_back_to_rule(self):
        client = FakeConvertClient("   ")
        hyp = convert("who wrote hamlet", "Shakespeare", "neural", client=client)
        assert hyp.text == convert_rule("who wrote hamlet", "Shakespeare").text
        assert hyp.method == "rule"
        assert hyp.fallback is True


class TestConcat:
    def test_definition(self):
        hyp = concat_baseline("who wrote hamlet", "Shakespeare")
        assert hyp.text == "who wrote hamlet Shakespeare"
        assert hyp.method == "concat"

    @given(questions, answers)
    def test_length_identity(self, q, a):
        assert len(concat_baseline(q, a).text) == len(q) + 1 + len(a)

    def test_empty_rejected(self):
        with pytest.raises(ValidationError):
            concat_baseline("who wrote hamlet", "")


class TestDispatch:
    def test_mode_routing(self):
        assert convert("who wrote it", "Alice", "rule").method == "rule"
        assert convert("who wrote it", "Alice", "concat").method == "concat"

    def test_unknown_mode(self):
        with pytest.raises(ValidationError):
            convert("who wrote it", "Alice", "guess")

    def test_question_id_carried(self):
        hyp = convert("who wrote it", "Alice", "rule", question_id="q7")
        assert hyp.source_question_id == "q7"

    def test_hypothesis_is_frozen(self):
        hyp = Hypothesis(text="x", method="rule")
        with pytest.raises(AttributeError):
            hyp.text = "y"
