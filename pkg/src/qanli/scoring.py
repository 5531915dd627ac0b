"""Answer-correctness metrics: normalization, exact match, token-level F1.

Follows the standard SQuAD scoring conventions: answers are lowercased,
punctuation and the articles a/an/the are stripped, and F1 is computed over
token multisets. An empty gold list means the question is unanswerable and
the correct prediction is the empty string.
"""

import re
import string
from collections import Counter
from dataclasses import dataclass

_ARTICLES_RE = re.compile(r"\b(a|an|the)\b")
_PUNCT_TABLE = str.maketrans("", "", string.punctuation)


def normalize(text: str) -> str:
    """Lowercase, drop punctuation and articles, collapse whitespace."""
    text = text.lower()
    text = text.translate(_PUNCT_TABLE)
    text = _ARTICLES_RE.sub(" ", text)
    return " ".join(text.split())


def answer_tokens(text: str) -> list[str]:
    return normalize(text).split()


def token_f1(pred: str, gold: str) -> float:
    """Harmonic mean of token precision/recall using multiset overlap.

    Both inputs are normalized first. Two empty token lists score 1.0,
    exactly one empty scores 0.0.
    """
    pred_toks = answer_tokens(pred)
    gold_toks = answer_tokens(gold)
    if not pred_toks or not gold_toks:
        return float(pred_toks == gold_toks)
    overlap = sum((Counter(pred_toks) & Counter(gold_toks)).values())
    if overlap == 0:
        return 0.0
    precision = overlap / len(pred_toks)
    recall = overlap / len(gold_toks)
    return 2 * precision * recall / (precision + recall)


def exact_match(pred: str, gold: str) -> bool:
    return normalize(pred) == normalize(gold)


@dataclass(frozen=True)
class MatchResult:
    em: bool
    f1: float
    best_gold_index: int


def match(pred: str, golds: list[str]) -> MatchResult:
    """Best EM/F1 over the gold answers.

    Empty ``golds`` marks an unanswerable question: the prediction is
    correct iff it normalizes to the empty string, and best_gold_index
    is -1. F1 ties are broken toward the lowest gold index.
    """
    if not golds:
        abstained = normalize(pred) == ""
        return MatchResult(em=abstained, f1=float(abstained), best_gold_index=-1)
    best_f1 = -1.0
    best_index = 0
    best_em = False
    for i, gold in enumerate(golds):
        f1 = token_f1(pred, gold)
        if f1 > best_f1:
            best_f1 = f1
            best_index = i
        best_em = best_em or exact_match(pred, gold)
    return MatchResult(em=best_em, f1=best_f1, best_gold_index=best_index)
