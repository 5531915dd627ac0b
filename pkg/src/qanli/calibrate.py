"""Selective-QA evaluation and confidence calibration.

Covers the coverage-F1 curve, the two-input logistic combiner over QA and
NLI posteriors, the 7-feature logistic calibrator, the two-model QA
ensemble, and unanswerable rejection rates. All fitting uses the same
deterministic full-batch gradient descent so results are reproducible
without any solver dependency.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

import numpy as np

from .errors import EmptyCorpusError, JoinError, ValidationError
from .nli_client import EntailmentScore, accepts

log = logging.getLogger(__name__)

DEFAULT_GRID = tuple(k / 10 for k in range(1, 11))

N_FEATURES = 7  # passage length, answer length, top-5 softmax probabilities

# Fixed optimizer constants: step size, gradient-norm clip, iteration cap,
# and the loss-change convergence tolerance.
STEP = 0.1
GRAD_CLIP = 10.0
MAX_ITER = 10_000
TOL = 1e-8


@dataclass(frozen=True)
class ConfidenceRecord:
    instance_id: str
    p_qa: float
    f1: float
    em: bool
    p_nli: float | None = None
    features: tuple[float, ...] | None = None
    dataset: str = ""
    answerable: bool = True

    def __post_init__(self):
        if not (0.0 <= self.p_qa <= 1.0):
            raise ValidationError(f"{self.instance_id}: p_qa out of [0,1]")
        if self.p_nli is not None and not (0.0 <= self.p_nli <= 1.0):
            raise ValidationError(f"{self.instance_id}: p_nli out of [0,1]")
        if self.features is not None:
            if len(self.features) != N_FEATURES:
                raise ValidationError(
                    f"{self.instance_id}: expected {N_FEATURES} features, "
                    f"got {len(self.features)}"
                )
            top5 = self.features[2:]
            if any(top5[i] < top5[i + 1] for i in range(len(top5) - 1)):
                raise ValidationError(
                    f"{self.instance_id}: top-5 probabilities not descending"
                )


def logistic(z: float) -> float:
    if z >= 0:
        return 1.0 / (1.0 + math.exp(-z))
    e = math.exp(z)
    return e / (1.0 + e)


# --- logistic fitting core ---------------------------------------------------

def loss_and_grad(
    weights: np.ndarray, bias: float, x: np.ndarray, y: np.ndarray
) -> tuple[float, np.ndarray, float]:
    """Mean logistic loss and its analytic gradient.

    Uses the softplus form log(1+e^z) - y*z, which is smooth everywhere,
    so finite differences agree with the gradient to machine precision.
    """
    z = x @ weights + bias
    loss = float(np.mean(np.logaddexp(0.0, z) - y * z))
    residual = _sigmoid(z) - y
    grad_w = x.T @ residual / len(y)
    grad_b = float(np.mean(residual))
    return loss, grad_w, grad_b


def _sigmoid(z: np.ndarray) -> np.ndarray:
    out = np.empty_like(z, dtype=float)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def _fit_logistic(
    x: np.ndarray, y: np.ndarray, fit_bias: bool
) -> tuple[np.ndarray, float, list[float]]:
    """Full-batch gradient descent; the recorded loss history is strictly
    decreasing because iteration stops before any non-improving step is kept."""
    weights = np.zeros(x.shape[1])
    bias = 0.0
    losses: list[float] = []
    for _ in range(MAX_ITER + 1):
        loss, grad_w, grad_b = loss_and_grad(weights, bias, x, y)
        if losses and losses[-1] - loss < TOL:
            break
        losses.append(loss)
        if len(losses) > MAX_ITER:
            break
        if not fit_bias:
            grad_b = 0.0
        norm = math.sqrt(float(grad_w @ grad_w) + grad_b * grad_b)
        if norm > GRAD_CLIP:
            scale = GRAD_CLIP / norm
            grad_w = grad_w * scale
            grad_b = grad_b * scale
        weights = weights - STEP * grad_w
        bias = bias - STEP * grad_b
    return weights, bias, losses


def _check_targets(y: np.ndarray, what: str) -> None:
    if len(set(y.tolist())) < 2:
        log.warning("%s targets are all one class; fit is degenerate", what)


# --- QA + NLI combiner --------------------------------------------------------

@dataclass(frozen=True)
class CombinerModel:
    w1: float
    w2: float
    bias: float = 0.0
    fit_meta: dict = field(default_factory=dict)
    loss_history: tuple[float, ...] = ()


def fit_combiner(
    records: Sequence[ConfidenceRecord],
    targets: Sequence[bool] | None = None,
    fit_bias: bool = False,
    seed: int = 0,
) -> CombinerModel:
    """Fit y = logistic(w1*p_qa + w2*p_nli [+ bias]) to binary targets.

    Targets default to each record's exact-match bit. The bias stays
    frozen at 0 unless fit_bias is set, matching the two-weight form.
    """
    if len(records) < 2:
        raise ValidationError("fit_combiner needs at least 2 records")
    for record in records:
        if record.p_nli is None:
            raise ValidationError(f"{record.instance_id}: p_nli missing")
    if targets is None:
        targets = [r.em for r in records]
    if len(targets) != len(records):
        raise ValidationError("targets and records differ in length")
    x = np.array([[r.p_qa, r.p_nli] for r in records], dtype=float)
    y = np.array([1.0 if t else 0.0 for t in targets])
    _check_targets(y, "combiner")
    weights, bias, losses = _fit_logistic(x, y, fit_bias)
    return CombinerModel(
        w1=float(weights[0]),
        w2=float(weights[1]),
        bias=float(bias),
        fit_meta={
            "iterations": len(losses) - 1,
            "final_loss": losses[-1],
            "seed": seed,
        },
        loss_history=tuple(losses),
    )


def combine(model: CombinerModel, record: ConfidenceRecord) -> float:
    if record.p_nli is None:
        raise ValidationError(f"{record.instance_id}: p_nli missing")
    return logistic(model.w1 * record.p_qa + model.w2 * record.p_nli + model.bias)


def ensemble_qa(p_qa_1: float, p_qa_2: float, model: CombinerModel) -> float:
    """Same functional form as combine, over two QA posteriors."""
    return logistic(model.w1 * p_qa_1 + model.w2 * p_qa_2 + model.bias)


def pair_posteriors(
    first: Mapping[str, float], second: Mapping[str, float]
) -> list[tuple[str, float, float]]:
    """Join two id-keyed posterior maps, failing loudly on any mismatch."""
    missing = sorted(set(first) ^ set(second))
    if missing:
        raise JoinError(
            f"{len(missing)} instance ids present in only one posterior stream",
            missing_ids=missing,
        )
    return [(instance_id, first[instance_id], second[instance_id])
            for instance_id in first]


# --- 7-feature calibrator -----------------------------------------------------

@dataclass(frozen=True)
class CalibratorModel:
    weights: tuple[float, ...]  # one per feature; dropped columns get 0.0
    bias: float
    mean: tuple[float, ...]
    std: tuple[float, ...]  # 1.0 for dropped columns
    dropped: tuple[int, ...]
    fit_meta: dict = field(default_factory=dict)
    loss_history: tuple[float, ...] = ()


def fit_calibrator(
    records: Sequence[ConfidenceRecord],
    targets: Sequence[bool] | None = None,
    fit_bias: bool = True,
    seed: int = 0,
) -> CalibratorModel:
    """Logistic model over z-scored features.

    Standardization statistics come from the training set; constant
    columns carry no signal and are dropped (reported weight 0). Unlike
    the combiner, the bias is fit by default: standardized features are
    centered, so a frozen zero bias would pin the decision boundary.
    """
    if len(records) < 2:
        raise ValidationError("fit_calibrator needs at least 2 records")
    for record in records:
        if record.features is None:
            raise ValidationError(f"{record.instance_id}: features missing")
    if targets is None:
        targets = [r.em for r in records]
    if len(targets) != len(records):
        raise ValidationError("targets and records differ in length")
    x = np.array([r.features for r in records], dtype=float)
    y = np.array([1.0 if t else 0.0 for t in targets])
    _check_targets(y, "calibrator")
    mean = x.mean(axis=0)
    std = x.std(axis=0)
    dropped = tuple(int(i) for i in np.where(std < 1e-12)[0])
    kept = [i for i in range(x.shape[1]) if i not in dropped]
    if not kept:
        raise ValidationError("all feature columns are constant")
    safe_std = np.where(std < 1e-12, 1.0, std)
    z = (x[:, kept] - mean[kept]) / safe_std[kept]
    weights_kept, bias, losses = _fit_logistic(z, y, fit_bias)
    weights = np.zeros(x.shape[1])
    weights[kept] = weights_kept
    return CalibratorModel(
        weights=tuple(float(w) for w in weights),
        bias=float(bias),
        mean=tuple(float(m) for m in mean),
        std=tuple(float(s) for s in safe_std),
        dropped=dropped,
        fit_meta={
            "iterations": len(losses) - 1,
            "final_loss": losses[-1],
            "seed": seed,
        },
        loss_history=tuple(losses),
    )


def calibrate_score(model: CalibratorModel, features: Sequence[float]) -> float:
    if len(features) != len(model.weights):
        raise ValidationError(
            f"expected {len(model.weights)} features, got {len(features)}"
        )
    z = model.bias
    for i, value in enumerate(features):
        if i in model.dropped:
            continue
        z += model.weights[i] * (value - model.mean[i]) / model.std[i]
    return logistic(z)


# --- coverage-F1 curves -------------------------------------------------------

@dataclass(frozen=True)
class CurvePoint:
    coverage: float
    threshold: float
    f1: float


@dataclass(frozen=True)
class CoverageCurve:
    points: tuple[CurvePoint, ...]
    n_total: int


_CONFIDENCE_FIELDS: dict[str, Callable[[ConfidenceRecord], float]] = {
    "qa": lambda r: r.p_qa,
    "nli": lambda r: r.p_nli if r.p_nli is not None else 0.0,
    "oracle": lambda r: r.f1,
}


def coverage_curve(
    records: Sequence[ConfidenceRecord],
    confidence: str | Callable[[ConfidenceRecord], float],
    grid: Sequence[float] = DEFAULT_GRID,
) -> CoverageCurve:
    """F1 over the most-confident ceil(k*N) records, for each k in the grid.

    Ties in confidence break by ascending instance id so curves are
    reproducible. The full-coverage point is always included, and by
    construction equals the plain mean F1.
    """
    if not records:
        raise EmptyCorpusError("coverage_curve needs at least one record")
    if isinstance(confidence, str):
        try:
            conf_fn = _CONFIDENCE_FIELDS[confidence]
        except KeyError:
            raise ValidationError(f"unknown confidence selector {confidence!r}")
    else:
        conf_fn = confidence
    coverages = sorted(set(float(k) for k in grid))
    for k in coverages:
        if not (0.0 < k <= 1.0):
            raise ValidationError(f"coverage {k} outside (0, 1]")
    if 1.0 not in coverages:
        coverages.append(1.0)
    n = len(records)
    ranked = sorted(records, key=lambda r: (-conf_fn(r), r.instance_id))
    f1s = [r.f1 for r in ranked]
    points = []
    for k in coverages:
        # tiny epsilon so k*n computes the exact ceil despite float error
        size = min(n, max(1, math.ceil(k * n - 1e-9)))
        points.append(
            CurvePoint(
                coverage=k,
                threshold=conf_fn(ranked[size - 1]),
                f1=math.fsum(f1s[:size]) / size,
            )
        )
    return CoverageCurve(points=tuple(points), n_total=n)


def curve_to_tsv(curve: CoverageCurve) -> str:
    lines = ["coverage\tthreshold\tf1"]
    for point in curve.points:
        lines.append(f"{point.coverage:.4f}\t{point.threshold:.6f}\t{point.f1:.6f}")
    return "\n".join(lines) + "\n"


# --- unanswerable rejection ---------------------------------------------------

def rejection_rates(
    unanswerable_scores: Sequence[EntailmentScore],
    answerable_scores: Sequence[EntailmentScore],
    threshold: float | None = None,
) -> tuple[float, float]:
    """(rejection rate on unanswerables, acceptance rate on answerables)."""
    if not unanswerable_scores:
        raise EmptyCorpusError("unanswerable partition is empty")
    if not answerable_scores:
        raise EmptyCorpusError("answerable partition is empty")
    rejected = sum(
        1 for s in unanswerable_scores if not accepts(s, threshold=threshold)
    )
    accepted = sum(1 for s in answerable_scores if accepts(s, threshold=threshold))
    return rejected / len(unanswerable_scores), accepted / len(answerable_scores)


def record_to_dict(record: ConfidenceRecord) -> dict:
    return {
        "instance_id": record.instance_id,
        "p_qa": record.p_qa,
        "f1": record.f1,
        "em": record.em,
        "p_nli": record.p_nli,
        "features": list(record.features) if record.features is not None else None,
        "dataset": record.dataset,
        "answerable": record.answerable,
    }


def record_from_dict(data: dict) -> ConfidenceRecord:
    features = data.get("features")
    return ConfidenceRecord(
        instance_id=data["instance_id"],
        p_qa=data["p_qa"],
        f1=data["f1"],
        em=data["em"],
        p_nli=data.get("p_nli"),
        features=tuple(features) if features is not None else None,
        dataset=data.get("dataset", ""),
        answerable=data.get("answerable", True),
    )
