"""Deterministic mock backends.

These rules intentionally duplicate the client toolkit's built-in mocks
rather than importing them: the two packages must agree on every byte of
mock output without sharing code, and the golden cross-test in
tests/test_golden.py fails if either side drifts.
"""

import hashlib
import re

WRONG_ANSWER = "the wrong answer"

_CAPITALIZED_RUN_RE = re.compile(r"[A-Z]\w*(?: [A-Z]\w*)*")
_WORD_RE = re.compile(r"\w+")
_TOKEN_RE = re.compile(r"\w+")

_CONVERT_PHRASES = (
    "is the stated answer.",
    "is what was asked about.",
    "is the described entity.",
    "is the reported result.",
)

# Pinned copy of the client toolkit's stopword list; the NLI coverage rule
# is only reproducible if both sides strip exactly the same tokens.
_STOPWORDS = frozenset("""
a about above after again against all am an and any are aren as at be because
been before being below between both but by can cannot could couldn d did
didn do does doesn doing don down during each few for from further had hadn
has hasn have haven having he her here hers herself him himself his how i if
in into is isn it its itself just ll m ma me might more most mustn my myself
no nor not now o of off on once only or other our ours ourselves out over own
re s same she should shouldn so some such t than that the their theirs them
themselves then there these they this those through to too under until up ve
very was wasn we were weren what when where which while who whom why will
with won would wouldn y you your yours yourself yourselves
""".split())


class MockRequestError(ValueError):
    """Request is structurally valid JSON but semantically unservable."""


def _content_words(text: str) -> set[str]:
    return {tok for tok in _TOKEN_RE.findall(text.lower())
            if tok not in _STOPWORDS}


def qa(question: str, context: str, meta: dict) -> dict:
    if meta.get("qa_mock") == "wrong":
        text = WRONG_ANSWER
        p, top5 = 0.6, [0.6, 0.4, 0.0, 0.0, 0.0]
    elif meta.get("gold"):
        text = meta["gold"]
        p, top5 = 0.9, [0.9, 0.1, 0.0, 0.0, 0.0]
    else:
        found = _CAPITALIZED_RUN_RE.search(context) or _WORD_RE.search(context)
        text = found.group(0) if found else context.strip()
        p, top5 = 0.9, [0.9, 0.1, 0.0, 0.0, 0.0]
    pos = context.lower().find(text.lower())
    char_start, char_end = (pos, pos + len(text)) if pos >= 0 else (-1, -1)
    return {"text": text, "char_start": char_start, "char_end": char_end,
            "p": p, "top5": top5}


def convert(question: str, answer: str) -> dict:
    digest = hashlib.sha256(f"{question}\x1f{answer}".encode("utf-8")).digest()
    phrase = _CONVERT_PHRASES[digest[0] % len(_CONVERT_PHRASES)]
    return {"text": f"{answer} {phrase}"}


def decontext(title: str, sentences: list[str], target_index: int) -> dict:
    if not (0 <= target_index < len(sentences)):
        raise MockRequestError(f"target_index {target_index} out of range")
    target = sentences[target_index]
    if len(sentences) == 1 or not title:
        return {"text": target, "category": "unnecessary"}
    return {"text": f"{title}: {target}", "category": "done"}


def nli(premise: str, hypothesis: str) -> dict:
    hyp = _content_words(hypothesis)
    prem = _content_words(premise)
    if hyp <= prem:
        p_entail = 1.0
    else:
        p_entail = len(hyp & prem) / len(hyp)
    remainder = 1.0 - p_entail
    return {"p_entail": p_entail,
            "p_neutral": remainder * 2.0 / 3.0,
            "p_contradiction": remainder / 3.0}
