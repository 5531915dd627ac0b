#!/usr/bin/env python3
"""Regenerate golden/mock_golden.jsonl.

One record per line: {"task", "request", "response"}, where the response
was produced by the in-process mock rules in qanli.backends. The
modelserver's mock mode must reproduce every response byte for byte
(after canonical JSON serialization); its cross-test replays this file.
"""

import json
import random
from pathlib import Path

from qanli.backends import (
    mock_convert_text,
    mock_decontext_text,
    mock_nli_probs,
    mock_qa_answer,
)

GOLDEN = Path(__file__).resolve().parent.parent / "golden" / "mock_golden.jsonl"

CONTEXTS = [
    "Paris is the capital of France. It sits on the Seine.",
    "The Amazon carries more water than any other river.",
    "Marie Curie won two Nobel Prizes, in physics and chemistry.",
    "no capital letters anywhere in this context at all",
    "In 1889 Gustave Eiffel finished the tower that bears his name.",
    "The blue whale, Balaenoptera musculus, is the largest animal.",
]

QUESTIONS = [
    "what is the capital of france",
    "which river carries the most water",
    "who won two nobel prizes",
    "what is written here",
    "when was the tower finished",
    "what is the largest animal",
]

ANSWERS = [
    "Paris", "the Amazon", "Marie Curie", "1889", "the blue whale",
    "Gustave Eiffel", "two", "a very long answer with many plain words",
]

TITLES = ["The Good Place", "Rivers", "", "Nobel laureates"]

SENTENCE_POOLS = [
    ["He stars as Ted Danson.", "The show ran four seasons."],
    ["The Nile is long.", "The Amazon is wide.", "Both flood."],
    ["Only one sentence here."],
    ["First.", "Second.", "Third.", "Fourth."],
]

NLI_PAIRS = [
    ("Alice wrote the book in Paris", "Alice wrote the book"),
    ("alpha beta gamma", "delta epsilon"),
    ("alpha beta", "alpha delta"),
    ("anything at all", "the of and"),
    ("some premise text", ""),
    ("The Seine flows through Paris.", "Paris is on the Seine."),
]


def qa_record(question, context, gold="", wrong=False):
    text, start, end, p, top5 = mock_qa_answer(
        question, context, gold=gold, wrong=wrong)
    meta = {}
    if gold:
        meta["gold"] = gold
    if wrong:
        meta["qa_mock"] = "wrong"
    return {
        "task": "qa",
        "request": {"question": question, "context": context, "meta": meta},
        "response": {
            "text": text, "char_start": start, "char_end": end,
            "p": p, "top5": list(top5),
            "backend_id": "mock-qa", "model": "mock",
        },
    }


def convert_record(question, answer):
    return {
        "task": "convert",
        "request": {"question": question, "answer": answer},
        "response": {
            "text": mock_convert_text(question, answer),
            "backend_id": "mock-convert", "model": "mock",
        },
    }


def decontext_record(title, sentences, target_index):
    text, category = mock_decontext_text(title, sentences, target_index)
    return {
        "task": "decontext",
        "request": {"title": title, "sentences": sentences,
                    "target_index": target_index},
        "response": {
            "text": text, "category": category,
            "backend_id": "mock-decontext", "model": "mock",
        },
    }


def nli_record(premise, hypothesis):
    p_entail, p_neutral, p_contradiction = mock_nli_probs(premise, hypothesis)
    return {
        "task": "nli",
        "request": {"premise": premise, "hypothesis": hypothesis},
        "response": {
            "p_entail": p_entail, "p_neutral": p_neutral,
            "p_contradiction": p_contradiction,
            "backend_id": "mock-nli", "model": "mock",
        },
    }


def main() -> None:
    rng = random.Random(20240920)
    records = []

    # fixed hand cases first: every branch of every rule
    records.append(qa_record(QUESTIONS[0], CONTEXTS[0], gold="France"))
    records.append(qa_record(QUESTIONS[0], CONTEXTS[0], wrong=True))
    records.append(qa_record(QUESTIONS[0], CONTEXTS[0]))
    records.append(qa_record(QUESTIONS[3], CONTEXTS[3]))  # no capitals
    records.append(qa_record(QUESTIONS[1], CONTEXTS[1], gold="the amazon"))
    records.append(decontext_record(TITLES[0], SENTENCE_POOLS[0], 0))
    records.append(decontext_record(TITLES[0], SENTENCE_POOLS[2], 0))
    records.append(decontext_record("", SENTENCE_POOLS[1], 1))
    records.append(nli_record(*NLI_PAIRS[0]))
    records.append(nli_record(*NLI_PAIRS[4]))

    while len([r for r in records if r["task"] == "qa"]) < 25:
        question = rng.choice(QUESTIONS)
        context = rng.choice(CONTEXTS)
        kind = rng.randrange(3)
        if kind == 0:
            records.append(qa_record(question, context,
                                     gold=rng.choice(ANSWERS)))
        elif kind == 1:
            records.append(qa_record(question, context, wrong=True))
        else:
            records.append(qa_record(question, context))
    while len([r for r in records if r["task"] == "convert"]) < 25:
        records.append(convert_record(rng.choice(QUESTIONS),
                                      rng.choice(ANSWERS)))
    while len([r for r in records if r["task"] == "decontext"]) < 25:
        title = rng.choice(TITLES)
        sentences = rng.choice(SENTENCE_POOLS)
        records.append(decontext_record(
            title, sentences, rng.randrange(len(sentences))))
    while len([r for r in records if r["task"] == "nli"]) < 25:
        if rng.random() < 0.5:
            records.append(nli_record(*rng.choice(NLI_PAIRS)))
        else:
            words = ["alpha", "beta", "gamma", "delta", "the", "of", "Paris"]
            premise = " ".join(rng.choices(words, k=rng.randrange(1, 7)))
            hypothesis = " ".join(rng.choices(words, k=rng.randrange(1, 5)))
            records.append(nli_record(premise, hypothesis))

    GOLDEN.parent.mkdir(parents=True, exist_ok=True)
    with GOLDEN.open("w", encoding="utf-8", newline="\n") as fh:
        for record in records:
            fh.write(json.dumps(record, sort_keys=True, ensure_ascii=False,
                                separators=(",", ":")) + "\n")
    print(f"wrote {len(records)} golden records to {GOLDEN}")


if __name__ == "__main__":
    main()
