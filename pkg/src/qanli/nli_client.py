"""Entailment scoring over (premise, hypothesis) pairs.

Wraps any backend exposing nli(premise, hypothesis) -> 3-class probability
triple, validates and normalizes the output, and collapses it to the
binary accept/reject decision used for answer verification.
"""

import logging
import math
from dataclasses import dataclass

from .backends import ordered_parallel_map
from .errors import BackendError, ValidationError

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class EntailmentScore:
    p_entail: float
    p_neutral: float
    p_contradiction: float
    backend_id: str

    def as_dict(self) -> dict:
        return {
            "p_entail": self.p_entail,
            "p_neutral": self.p_neutral,
            "p_contradiction": self.p_contradiction,
            "backend_id": self.backend_id,
        }


def score(premise: str, hypothesis: str, client) -> EntailmentScore:
    """Score one pair, renormalizing sloppy backend output.

    A triple that does not sum to 1 within 1e-6 is renormalized with a
    logged warning; NaN or a nonpositive sum is a hard backend error.
    """
    if not premise.strip() or not hypothesis.strip():
        raise ValidationError("score requires a nonempty premise and hypothesis")
    p_e, p_n, p_c = client.nli(premise, hypothesis)
    if any(math.isnan(x) for x in (p_e, p_n, p_c)):
        raise BackendError(f"backend {client.backend_id} returned NaN")
    total = p_e + p_n + p_c
    if total <= 0 or any(x < 0 for x in (p_e, p_n, p_c)):
        raise BackendError(
            f"backend {client.backend_id} returned an invalid distribution "
            f"({p_e}, {p_n}, {p_c})"
        )
    if abs(total - 1.0) > 1e-6:
        log.warning(
            "backend %s returned unnormalized probabilities (sum %.6f); renormalizing",
            client.backend_id, total,
        )
        p_e, p_n, p_c = p_e / total, p_n / total, p_c / total
    return EntailmentScore(p_e, p_n, p_c, client.backend_id)


def score_batch(
    pairs, client, jobs: int = 1
) -> list[EntailmentScore]:
    """Score (premise, hypothesis) pairs, output order matching input."""
    return ordered_parallel_map(
        lambda pair: score(pair[0], pair[1], client), pairs, jobs=jobs
    )


def accepts(entailment: EntailmentScore, threshold: float | None = None) -> bool:
    """Accept iff entailment is the argmax class; ties reject.

    With ``threshold`` set, accept iff p_entail >= threshold instead
    (rates and ranking cite different decision rules; both are exposed).
    """
    if threshold is not None:
        return entailment.p_entail >= threshold
    return entailment.p_entail > max(
        entailment.p_neutral, entailment.p_contradiction
    )
