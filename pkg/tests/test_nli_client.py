import math

import pytest
from hypothesis import given, strategies as st

from qanli.backends import MockNLIBackend
from qanli.errors import BackendError, ValidationError
from qanli.nli_client import EntailmentScore, accepts, score, score_batch


class FixedNLI:
    backend_id = "fixed"

    def __init__(self, probs):
        self.probs = probs

    def nli(self, premise, hypothesis):
        return self.probs


class TestScore:
    def test_mock_round_trip(self):
        result = score("alice wrote it", "alice wrote it", MockNLIBackend())
        assert result == EntailmentScore(1.0, 0.0, 0.0, "mock-nli")

    def test_empty_premise_rejected(self):
        with pytest.raises(ValidationError):
            score("", "hypothesis", MockNLIBackend())

    def test_empty_hypothesis_rejected(self):
        with pytest.raises(ValidationError):
            score("premise", "   ", MockNLIBackend())

    def test_nan_rejected(self):
        with pytest.raises(BackendError):
            score("p", "h", FixedNLI((math.nan, 0.5, 0.5)))

    def test_negative_rejected(self):
        with pytest.raises(BackendError):
            score("p", "h", FixedNLI((-0.1, 0.6, 0.5)))

    def test_drifted_sum_renormalized(self):
        result = score("p", "h", FixedNLI((0.5, 0.3, 0.3)))
        total = result.p_entail + result.p_neutral + result.p_contradiction
        assert total == pytest.approx(1.0)
        assert result.p_entail == pytest.approx(0.5 / 1.1)

    def test_tiny_drift_left_alone(self):
        probs = (0.5, 0.3, 0.2 + 1e-9)
        result = score("p", "h", FixedNLI(probs))
        assert result.p_entail == 0.5

    def test_as_dict(self):
        d = score("a b", "a b", MockNLIBackend()).as_dict()
        assert d == {"p_entail": 1.0, "p_neutral": 0.0,
                     "p_contradiction": 0.0, "backend_id": "mock-nli"}


class TestScoreBatch:
    def test_order_preserved(self):
        pairs = [("alpha beta", "alpha beta"), ("alpha beta", "gamma delta")]
        out = score_batch(pairs, MockNLIBackend(), jobs=4)
        assert [round(s.p_entail, 3) for s in out] == [1.0, 0.0]

    def test_jobs_equivalence(self):
        pairs = [(f"tok{i} tok{i+1}", f"tok{i}") for i in range(20)]
        serial = score_batch(pairs, MockNLIBackend(), jobs=1)
        parallel = score_batch(pairs, MockNLIBackend(), jobs=8)
        assert serial == parallel


probs3 = st.tuples(
    st.floats(0.0, 1.0), st.floats(0.0, 1.0), st.floats(0.0, 1.0)
).filter(lambda t: sum(t) > 1e-6)


class TestAccepts:
    def test_argmax_rule(self):
        assert accepts(EntailmentScore(0.5, 0.3, 0.2, "x"))
        assert not accepts(EntailmentScore(0.3, 0.5, 0.2, "x"))

    def test_argmax_tie_rejects(self):
        assert not accepts(EntailmentScore(0.4, 0.4, 0.2, "x"))

    def test_threshold_rule(self):
        s = EntailmentScore(0.35, 0.45, 0.2, "x")
        assert accepts(s, threshold=0.3)
        assert not accepts(s, threshold=0.4)

    def test_threshold_is_inclusive(self):
        assert accepts(EntailmentScore(0.3, 0.5, 0.2, "x"), threshold=0.3)

    @given(probs3)
    def test_argmax_equivalence(self, probs):
        total = sum(probs)
        p = tuple(x / total for x in probs)
        s = EntailmentScore(*p, "x")
        assert accepts(s) == (p[0] > max(p[1], p[2]))
