"""Locate the answer-bearing sentence and build the premise.

Three premise modes: the raw answer sentence, a decontextualized rewrite
of it fetched from a backend, or the full context. Sentence splitting is
rule-based (terminal punctuation plus an abbreviation exception list) so
the primary component needs no model to run.
"""

from dataclasses import dataclass

from .errors import BackendError, ValidationError
from .lexicon import ABBREVIATIONS

PREMISE_MODES = ("sentence", "decontext", "full")
CATEGORIES = ("done", "unnecessary", "infeasible", "none")

_TERMINALS = ".!?"
_CLOSERS = "\"')]"


@dataclass(frozen=True)
class Sentence:
    text: str
    start: int
    end: int


@dataclass(frozen=True)
class Premise:
    text: str
    mode: str  # sentence | decontext | full
    sentence_index: int  # -1 for full
    category: str = "none"  # backend status; "none" outside decontext mode


def _abbreviation_before(context: str, pos: int) -> bool:
    # The word ending at `pos` (a period), scanned back over word chars and
    # internal periods so "e.g." and "i.e." are caught at their final dot.
    j = pos
    while j > 0 and (context[j - 1].isalnum() or context[j - 1] == "."):
        j -= 1
    word = context[j:pos].strip(".")
    return word.lower() in ABBREVIATIONS


def split_sentences(context: str) -> list[Sentence]:
    """Split on terminal punctuation, protecting known abbreviations.

    Returned spans are sorted, non-overlapping, and cover every
    non-whitespace character; a trailing fragment without terminal
    punctuation still becomes a sentence.
    """
    n = len(context)
    sentences: list[tuple[int, int]] = []
    start = 0
    while start < n and context[start].isspace():
        start += 1
    pos = start
    while pos < n:
        ch = context[pos]
        if ch in _TERMINALS:
            end = pos + 1
            while end < n and context[end] in _TERMINALS + _CLOSERS:
                end += 1
            boundary = end >= n or context[end].isspace()
            if boundary and ch == "." and _abbreviation_before(context, pos):
                boundary = False
            if boundary:
                sentences.append((start, end))
                pos = end
                while pos < n and context[pos].isspace():
                    pos += 1
                start = pos
                continue
        pos += 1
    if start < n:
        end = n
        while end > start and context[end - 1].isspace():
            end -= 1
        if end > start:
            sentences.append((start, end))
    return [Sentence(context[s:e], s, e) for s, e in sentences]


def locate_answer_sentence(
    context: str, answer_span: tuple[int, int]
) -> tuple[int, bool]:
    """Index of the sentence containing the span start, plus a flag that is
    true when the span runs past that sentence's end."""
    start, end = answer_span
    if not (0 <= start < end <= len(context)):
        raise ValidationError(f"answer span ({start}, {end}) out of range")
    sentences = split_sentences(context)
    if not sentences:
        raise ValidationError("context has no sentences")
    chosen = len(sentences) - 1
    for i, sent in enumerate(sentences):
        if start < sent.end:
            chosen = i
            break
    crossed = end > sentences[chosen].end
    return chosen, crossed


def make_premise(
    instance,
    answer_span: tuple[int, int] | None,
    mode: str,
    client=None,
) -> Premise:
    """Build the premise for one instance under the given mode.

    ``answer_span`` may be None when the answer has no resolvable offsets
    (the mock QA backend's wrong-answer string, offset-less gold aliases);
    sentence 0 is then used. Decontext mode needs a client; an infeasible
    or empty rewrite falls back to the raw sentence.
    """
    if mode not in PREMISE_MODES:
        raise ValidationError(f"unknown premise mode {mode!r}")
    context = instance.context
    if mode == "full":
        return Premise(text=context, mode="full", sentence_index=-1)
    sentences = split_sentences(context)
    if not sentences:
        raise ValidationError(f"{instance.id}: context has no sentences")
    if answer_span is None:
        index = 0
    else:
        index, _ = locate_answer_sentence(context, answer_span)
    raw = sentences[index].text
    if mode == "sentence":
        return Premise(text=raw, mode="sentence", sentence_index=index)
    if client is None:
        raise ValidationError("decontext mode requires a backend client")
    title = instance.meta.get("title", "")
    text, category = client.decontext(title, [s.text for s in sentences], index)
    if category == "unnecessary":
        return Premise(text=raw, mode="decontext", sentence_index=index,
                       category="unnecessary")
    if category == "infeasible" or not text.strip():
        return Premise(text=raw, mode="decontext", sentence_index=index,
                       category="infeasible")
    if category != "done":
        raise BackendError(f"unknown decontextualization category {category!r}")
    return Premise(text=text, mode="decontext", sentence_index=index,
                   category="done")
