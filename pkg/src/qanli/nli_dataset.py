"""Build NLI training pairs from QA predictions and mix in external data.

A QA-derived pair is labeled entailed iff the predicted answer is correct
under the scoring module's metric, so the label side needs no human input.
External 3-class NLI data is collapsed to the same binary labels.
"""

import random
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .corpus import ParseIssue, QAInstance
from .errors import JoinError, ValidationError
from .scoring import match

LABELS = ("entailed", "not_entailed")
ORIGINS = ("qa_derived", "external_nli", "eval")

# External label strings, lowercased, mapped to the binary labels.
_POSITIVE_LABELS = frozenset(["entailment", "supports"])
_NEGATIVE_LABELS = frozenset(
    ["neutral", "contradiction", "refutes", "not enough info", "not_enough_info"]
)


@dataclass(frozen=True)
class NLIPair:
    premise: str
    hypothesis: str
    label: str
    origin: str
    instance_id: str | None = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.premise or not self.hypothesis:
            raise ValidationError("NLIPair requires nonempty premise and hypothesis")
        if self.label not in LABELS:
            raise ValidationError(f"unknown NLI label {self.label!r}")
        if self.origin not in ORIGINS:
            raise ValidationError(f"unknown NLI origin {self.origin!r}")


def pair_to_dict(pair: NLIPair) -> dict:
    return {
        "premise": pair.premise,
        "hypothesis": pair.hypothesis,
        "label": pair.label,
        "origin": pair.origin,
        "instance_id": pair.instance_id,
        "meta": dict(pair.meta),
    }


def pair_from_dict(record: dict) -> NLIPair:
    return NLIPair(
        premise=record["premise"],
        hypothesis=record["hypothesis"],
        label=record["label"],
        origin=record["origin"],
        instance_id=record.get("instance_id"),
        meta=dict(record.get("meta", {})),
    )


def is_correct(
    candidate_text: str,
    gold_texts: list[str],
    metric: str = "em",
    f1_threshold: float = 0.8,
) -> bool:
    """Answer-correctness rule used for labeling: exact match by default,
    token F1 >= threshold when metric="f1"."""
    result = match(candidate_text, gold_texts)
    if metric == "em":
        return result.em
    if metric == "f1":
        return result.f1 >= f1_threshold
    raise ValidationError(f"unknown correctness metric {metric!r}")


def build_qa_nli(
    instances: list[QAInstance],
    candidates: Mapping[str, object],
    premises: Mapping[str, object],
    hypotheses: Mapping[str, object],
    metric: str = "em",
    f1_threshold: float = 0.8,
    origin: str = "qa_derived",
) -> list[NLIPair]:
    """One labeled pair per instance, joined by instance id.

    Raises JoinError listing every instance id missing from candidates,
    premises, or hypotheses.
    """
    missing = []
    for inst in instances:
        for name, table in (
            ("candidates", candidates),
            ("premises", premises),
            ("hypotheses", hypotheses),
        ):
            if inst.id not in table:
                missing.append(f"{inst.id} ({name})")
    if missing:
        shown = ", ".join(missing[:5])
        if len(missing) > 5:
            shown += f", ... ({len(missing) - 5} more)"
        raise JoinError(
            f"{len(missing)} instance ids missing from joined inputs: {shown}",
            missing_ids=missing,
        )
    pairs = []
    for inst in instances:
        candidate = candidates[inst.id]
        premise = premises[inst.id]
        hypothesis = hypotheses[inst.id]
        gold_texts = [g.text for g in inst.gold_answers]
        correct = is_correct(candidate.text, gold_texts, metric, f1_threshold)
        pairs.append(
            NLIPair(
                premise=premise.text,
                hypothesis=hypothesis.text,
                label="entailed" if correct else "not_entailed",
                origin=origin,
                instance_id=inst.id,
                meta={
                    "dataset": inst.dataset,
                    "premise_mode": premise.mode,
                    "hypothesis_method": hypothesis.method,
                },
            )
        )
    return pairs


def mix_with_external(
    qa_pairs: list[NLIPair], external_pairs: list[NLIPair], seed: int = 0
) -> list[NLIPair]:
    """qa_pairs plus an equal-size external sample, shuffled by seed.

    Sampling is uniform without replacement; no stratification by genre
    or any other external-record attribute.
    """
    if len(external_pairs) < len(qa_pairs):
        raise ValidationError(
            f"need at least {len(qa_pairs)} external pairs, got {len(external_pairs)}"
        )
    rng = random.Random(seed)
    sampled = rng.sample(external_pairs, len(qa_pairs))
    mixed = list(qa_pairs) + sampled
    rng.shuffle(mixed)
    return mixed


def import_external_nli(
    records: Iterable[dict], source: str
) -> tuple[list[NLIPair], list[ParseIssue]]:
    """Collapse 3-class MNLI or FEVER-NLI records to binary pairs.

    Records with unknown label strings are reported as issues and skipped,
    never silently dropped.
    """
    if source not in ("mnli", "fever_nli"):
        raise ValidationError(f"unknown external NLI source {source!r}")
    pairs: list[NLIPair] = []
    issues: list[ParseIssue] = []
    for lineno, record in enumerate(records, start=1):
        premise = record.get("premise") or record.get("sentence1") or record.get("evidence")
        hypothesis = (
            record.get("hypothesis") or record.get("sentence2") or record.get("claim")
        )
        raw_label = record.get("label") or record.get("gold_label") or ""
        if not premise or not hypothesis:
            issues.append(ParseIssue("missing premise or hypothesis", line=lineno))
            continue
        label_key = str(raw_label).strip().lower()
        if label_key in _POSITIVE_LABELS:
            label = "entailed"
        elif label_key in _NEGATIVE_LABELS:
            label = "not_entailed"
        else:
            issues.append(
                ParseIssue(f"unknown label {raw_label!r}", line=lineno)
            )
            continue
        pair_id = record.get("pairID") or record.get("id")
        pairs.append(
            NLIPair(
                premise=premise,
                hypothesis=hypothesis,
                label=label,
                origin="external_nli",
                instance_id=str(pair_id) if pair_id is not None else None,
                meta={"source": source},
            )
        )
    return pairs, issues
