"""Verifier error analysis: FP/FN detection, annotation-sheet export and
import, inter-annotator agreement, and the class-by-polarity breakdown.

Error classes are assigned by humans on the exported sheet; nothing here
tries to classify errors automatically.
"""

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import ValidationError

ERROR_CLASSES = (
    "question_conversion",
    "decontext",
    "entailment",
    "wrong_context",
    "insufficient_context",
    "span_shifting",
    "annotation",
)
UNLABELED = "unlabeled"
POLARITIES = ("false_positive", "false_negative")

SHEET_COLUMNS = (
    "instance_id",
    "dataset",
    "polarity",
    "question",
    "answer",
    "premise",
    "hypothesis",
    "p_entail",
    "error_class",
)
MISSING_CELL = "<missing>"


@dataclass(frozen=True)
class Verdict:
    """One verified instance: did the verifier accept, and was the answer right."""

    instance_id: str
    accepted: bool
    correct: bool
    dataset: str = ""


@dataclass(frozen=True)
class ErrorRecord:
    instance_id: str
    polarity: str
    error_class: str = UNLABELED
    dataset: str = ""

    def __post_init__(self):
        if self.polarity not in POLARITIES:
            raise ValidationError(f"unknown polarity {self.polarity!r}")
        if self.error_class != UNLABELED and self.error_class not in ERROR_CLASSES:
            raise ValidationError(f"unknown error class {self.error_class!r}")


@dataclass(frozen=True)
class AgreementResult:
    kappa: float
    n_items: int
    n_raters: int
    per_class_proportions: dict


def detect_errors(verdicts: Iterable[Verdict]) -> list[ErrorRecord]:
    """False positives (accepted but wrong) and false negatives (rejected
    but right); correct decisions produce nothing."""
    errors = []
    for verdict in verdicts:
        if verdict.accepted and not verdict.correct:
            polarity = "false_positive"
        elif not verdict.accepted and verdict.correct:
            polarity = "false_negative"
        else:
            continue
        errors.append(
            ErrorRecord(
                instance_id=verdict.instance_id,
                polarity=polarity,
                dataset=verdict.dataset,
            )
        )
    return errors


def _clean_cell(value) -> str:
    # tabs and newlines would break the sheet format
    return " ".join(str(value).split())


def export_annotation_sheet(
    errors: Sequence[ErrorRecord],
    artifacts: Mapping[str, Mapping[str, object]],
    per_dataset_cap: int | None = None,
) -> str:
    """Tab-separated sheet, one row per error, class column left empty.

    ``artifacts`` maps instance id to the pipeline outputs for that id
    (question, answer, premise, hypothesis, p_entail); gaps are flagged
    rather than failing the export. ``per_dataset_cap`` bounds how many
    errors per dataset are exported, keeping annotation batches small.
    """
    lines = ["# error classes: " + " | ".join(ERROR_CLASSES)]
    lines.append("\t".join(SHEET_COLUMNS))
    taken: dict[str, int] = {}
    for error in errors:
        if per_dataset_cap is not None:
            taken.setdefault(error.dataset, 0)
            if taken[error.dataset] >= per_dataset_cap:
                continue
            taken[error.dataset] += 1
        stage = artifacts.get(error.instance_id, {})
        row = [
            error.instance_id,
            error.dataset,
            error.polarity,
        ]
        for column in ("question", "answer", "premise", "hypothesis", "p_entail"):
            value = stage.get(column)
            row.append(_clean_cell(value) if value is not None else MISSING_CELL)
        row.append("" if error.error_class == UNLABELED else error.error_class)
        lines.append("\t".join(row))
    return "\n".join(lines) + "\n"


def import_annotation_sheet(text: str) -> list[ErrorRecord]:
    """Read back a (possibly filled-in) exported sheet."""
    errors = []
    header: list[str] | None = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        cells = line.split("\t")
        if header is None:
            header = cells
            if header != list(SHEET_COLUMNS):
                raise ValidationError(f"unexpected sheet header on line {lineno}")
            continue
        if len(cells) != len(SHEET_COLUMNS):
            raise ValidationError(f"line {lineno}: expected {len(SHEET_COLUMNS)} cells")
        row = dict(zip(SHEET_COLUMNS, cells))
        errors.append(
            ErrorRecord(
                instance_id=row["instance_id"],
                polarity=row["polarity"],
                error_class=row["error_class"] or UNLABELED,
                dataset=row["dataset"],
            )
        )
    if header is None:
        raise ValidationError("sheet has no header line")
    return errors


def fleiss_kappa(labels: Sequence[Sequence[object]]) -> AgreementResult:
    """Chance-corrected agreement for a full items-by-raters label matrix.

    kappa = (P_bar - Pe_bar) / (1 - Pe_bar), where P_bar is the mean
    pairwise rater agreement per item and Pe_bar the agreement expected
    from the marginal label proportions.
    """
    if not labels:
        raise ValidationError("fleiss_kappa needs at least one item")
    n_raters = len(labels[0])
    if n_raters < 2:
        raise ValidationError("fleiss_kappa needs at least two raters")
    for i, row in enumerate(labels):
        if len(row) != n_raters:
            raise ValidationError(f"item {i}: expected {n_raters} labels")
    categories = sorted({str(label) for row in labels for label in row})
    counts = []
    for row in labels:
        row_counts = {c: 0 for c in categories}
        for label in row:
            row_counts[str(label)] += 1
        counts.append([row_counts[c] for c in categories])
    return _kappa_from_counts(counts, categories)


def _kappa_from_counts(
    counts: Sequence[Sequence[int]], categories: Sequence[str]
) -> AgreementResult:
    n_items = len(counts)
    n_raters = sum(counts[0])
    total = n_items * n_raters
    p_j = [sum(row[j] for row in counts) / total for j in range(len(categories))]
    p_i = [
        (sum(c * c for c in row) - n_raters) / (n_raters * (n_raters - 1))
        for row in counts
    ]
    p_bar = sum(p_i) / n_items
    pe_bar = sum(p * p for p in p_j)
    if abs(1.0 - pe_bar) < 1e-12:
        raise ValidationError(
            "expected agreement is 1 (single observed class); kappa undefined"
        )
    kappa = (p_bar - pe_bar) / (1.0 - pe_bar)
    return AgreementResult(
        kappa=kappa,
        n_items=n_items,
        n_raters=n_raters,
        per_class_proportions=dict(zip(categories, p_j)),
    )


def breakdown_table(errors: Sequence[ErrorRecord]) -> dict:
    """Per-dataset counts of error class by polarity, plus totals.

    Unlabeled errors get their own row so nothing is silently dropped.
    Returned structure: {dataset: {error_class: {polarity: count}}} with
    a "total" entry per dataset.
    """
    datasets = sorted({e.dataset for e in errors})
    classes = list(ERROR_CLASSES) + [UNLABELED]
    table: dict = {}
    for dataset in datasets:
        table[dataset] = {
            cls: {p: 0 for p in POLARITIES} for cls in classes
        }
        table[dataset]["total"] = {p: 0 for p in POLARITIES}
    for error in errors:
        table[error.dataset][error.error_class][error.polarity] += 1
        table[error.dataset]["total"][error.polarity] += 1
    return table


def format_breakdown(table: dict) -> str:
    """Plain-text rendering: one row per class, FP/FN columns per dataset."""
    datasets = sorted(table)
    classes = list(ERROR_CLASSES) + [UNLABELED]
    header = ["class"]
    for dataset in datasets:
        name = dataset or "(unset)"
        header.extend([f"{name}/FP", f"{name}/FN"])
    rows = ["\t".join(header)]
    for cls in classes + ["total"]:
        row = [cls]
        for dataset in datasets:
            cells = table[dataset][cls]
            row.append(str(cells["false_positive"]))
            row.append(str(cells["false_negative"]))
        rows.append("\t".join(row))
    return "\n".join(rows) + "\n"
