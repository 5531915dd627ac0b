"""Rewrite a (question, answer) pair as a declarative hypothesis sentence.

The rule path applies an ordered table of five rewrite strategies keyed on
surface cues and always produces output; it does no truecasing or verb
re-inflection, so the result can read awkwardly. The neural path delegates
to a served seq2seq backend and falls back to the rules when the backend
generates nothing. The concat path is the trivial baseline.
"""

import logging
from dataclasses import dataclass

from .errors import ValidationError
from .lexicon import AUX_WORDS, WH_WORDS

log = logging.getLogger(__name__)

# Wh-words that rule 1 substitutes directly; "why" and "how" are excluded
# because the answer rarely fills their syntactic slot.
WH_REPLACEABLE = frozenset(["who", "what", "which", "where", "when"])
HOW_QUANTITY = frozenset(["many", "much", "old", "long"])
COPULAS = frozenset(["is", "are", "was", "were", "am", "be", "been", "being"])
ARTICLES = ("a", "an", "the")

# Common irregular past forms, so "who wrote hamlet" still counts the verb.
IRREGULAR_VERBS = frozenset(
    ["ate", "became", "began", "bought", "broke", "brought", "built", "came",
     "chose", "cut", "drank", "drew", "drove", "fell", "felt", "flew",
     "found", "gave", "got", "grew", "heard", "held", "hit", "kept", "knew",
     "led", "left", "let", "lost", "made", "meant", "met", "paid", "put",
     "ran", "read", "rode", "rose", "said", "sang", "sat", "saw", "sent",
     "set", "shot", "sold", "spent", "spoke", "stood", "swore", "threw",
     "told", "took", "tore", "went", "won", "wore", "wrote"]
)

_NUMBER_SEEKING = ("how many", "how much", "how old", "how long")


@dataclass(frozen=True)
class Hypothesis:
    text: str
    method: str  # rule | neural | concat
    source_question_id: str = ""
    fallback: bool = False


def _looks_like_verb(token: str) -> bool:
    if token in AUX_WORDS or token in COPULAS or token in IRREGULAR_VERBS:
        return True
    return len(token) > 3 and token.endswith(("s", "ed", "ing"))


def _strip_question_mark(question: str) -> tuple[str, bool]:
    body = question.strip()
    had_qmark = body.endswith("?")
    while body.endswith("?"):
        body = body[:-1].rstrip()
    return body, had_qmark


def _warn_type_mismatch(question: str, answer: str, question_id: str) -> None:
    # Quantity questions answered without a digit are a known converter
    # failure mode; surfaced as a warning, never an error.
    if question.lower().strip().startswith(_NUMBER_SEEKING) and not any(
        ch.isdigit() for ch in answer
    ):
        log.warning(
            "question %s asks for a quantity but answer %r has no digits",
            question_id or "<unknown>",
            answer,
        )


def _defront_auxiliary(tokens: list[str], lowered: list[str], answer: str) -> str:
    # Subject is the token after the auxiliary, plus its article when one
    # leads ("did the king ..." -> "the king did ...").
    split = 3 if lowered[1] in ARTICLES and len(tokens) >= 3 else 2
    rearranged = tokens[1:split] + [lowered[0]] + tokens[split:]
    for i, tok in enumerate(rearranged):
        if tok.lower() in WH_WORDS:
            rearranged[i] = answer
            return " ".join(rearranged)
    return " ".join(rearranged) + f" — {answer}"


def convert_rule(question: str, answer: str, question_id: str = "") -> Hypothesis:
    """Apply the first matching rewrite rule; the last rule always matches.

    Rules, in order: (1) substitute the answer for a leading wh-word that
    is followed by a verb; (2) substitute it for a leading how-quantity
    phrase that modifies a noun; (3) move a fronted auxiliary behind the
    subject, filling a wh-slot with the answer when one exists; (4) after
    a terminal copula plus question mark, append the answer; (5) append
    ", <answer>." to anything else.
    """
    if not question.strip() or not answer.strip():
        raise ValidationError("convert_rule requires a nonempty question and answer")
    _warn_type_mismatch(question, answer, question_id)
    body, had_qmark = _strip_question_mark(question)
    tokens = body.split()
    lowered = [t.lower() for t in tokens]
    text: str | None = None
    if (
        len(tokens) >= 2
        and lowered[0] in WH_REPLACEABLE
        and _looks_like_verb(lowered[1])
    ):
        text = " ".join([answer] + tokens[1:])
    elif (
        len(tokens) >= 3
        and lowered[0] == "how"
        and lowered[1] in HOW_QUANTITY
        # plural nouns share the -s suffix with verbs, so the noun-phrase
        # guard only rules out finite auxiliaries and copulas
        and lowered[2] not in AUX_WORDS
        and lowered[2] not in COPULAS
    ):
        text = " ".join([answer] + tokens[2:])
    elif len(tokens) >= 2 and lowered[0] in AUX_WORDS:
        text = _defront_auxiliary(tokens, lowered, answer)
    elif had_qmark and tokens and lowered[-1] in COPULAS:
        text = f"{body} {answer}."
    if text is None:
        text = f"{body}, {answer}."
    return Hypothesis(text=text, method="rule", source_question_id=question_id)


def convert_neural(
    question: str, answer: str, client, question_id: str = ""
) -> Hypothesis:
    """Ask the conversion backend for a declarative sentence.

    The generation is whitespace-trimmed and gets a final period when it
    lacks terminal punctuation. An empty generation falls back to
    convert_rule, with the fallback recorded on the result.
    """
    generated = client.convert(question, answer)
    text = (generated or "").strip()
    if not text:
        rule_hyp = convert_rule(question, answer, question_id)
        return Hypothesis(
            text=rule_hyp.text,
            method="rule",
            source_question_id=question_id,
            fallback=True,
        )
    if text[-1] not in ".!?":
        text += "."
    return Hypothesis(text=text, method="neural", source_question_id=question_id)


def concat_baseline(question: str, answer: str, question_id: str = "") -> Hypothesis:
    """Baseline hypothesis: the question and answer joined by one space."""
    if not question or not answer:
        raise ValidationError("concat_baseline requires a nonempty question and answer")
    return Hypothesis(
        text=f"{question} {answer}",
        method="concat",
        source_question_id=question_id,
    )


def convert(
    question: str,
    answer: str,
    mode: str,
    client=None,
    question_id: str = "",
) -> Hypothesis:
    if mode == "rule":
        return convert_rule(question, answer, question_id)
    if mode == "neural":
        if client is None:
            raise ValidationError("neural conversion requires a backend client")
        return convert_neural(question, answer, client, question_id)
    if mode == "concat":
        return concat_baseline(question, answer, question_id)
    raise ValidationError(f"unknown hypothesis mode {mode!r}")
