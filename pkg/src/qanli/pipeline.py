"""Staged pipeline: instances -> answers -> hypotheses -> premises -> pairs
-> entailment scores -> confidence records -> coverage curves.

Every stage writes one line-delimited file into the output directory, and a
manifest records the config hash, seed, backend ids, and per-stage counts.
Outputs carry no timestamps and all serialization is canonical, so a rerun
with the same config and deterministic backends is byte-identical. A stage
failure leaves completed artifacts in place and marks the manifest FAILED
with the stage name.
"""

import hashlib
import itertools
import logging
from dataclasses import dataclass, replace
from pathlib import Path

from . import decontext, qconvert
from .backends import AnswerCandidate, make_backend, ordered_parallel_map
from .calibrate import (
    ConfidenceRecord,
    coverage_curve,
    curve_to_tsv,
    DEFAULT_GRID,
    record_to_dict,
)
from .corpus import QAInstance, instance_to_dict, validate_instance
from .errors import ValidationError
from .jsonl import dumps_canonical, write_json, write_jsonl
from .nli_client import score_batch
from .nli_dataset import build_qa_nli, pair_to_dict
from .scoring import match

log = logging.getLogger(__name__)

HYPOTHESIS_MODES = ("rule", "neural", "concat")

STAGE_FILES = {
    "instances": "instances.jsonl",
    "answers": "answers.jsonl",
    "hypotheses": "hypotheses.jsonl",
    "premises": "premises.jsonl",
    "pairs": "pairs.jsonl",
    "scores": "scores.jsonl",
    "results": "results.jsonl",
}


@dataclass(frozen=True)
class PipelineConfig:
    hypothesis_mode: str = "rule"
    premise_mode: str = "sentence"
    qa_backend: str = "mock"
    convert_backend: str = "mock"
    decontext_backend: str = "mock"
    nli_backend: str = "mock"
    seed: int = 0
    coverage_grid: tuple[float, ...] = DEFAULT_GRID
    correctness: str = "em"
    f1_threshold: float = 0.8
    input: str = ""

    def validate(self) -> None:
        if self.hypothesis_mode not in HYPOTHESIS_MODES:
            raise ValidationError(f"unknown hypothesis_mode {self.hypothesis_mode!r}")
        if self.premise_mode not in decontext.PREMISE_MODES:
            raise ValidationError(f"unknown premise_mode {self.premise_mode!r}")
        if self.correctness not in ("em", "f1"):
            raise ValidationError(f"unknown correctness metric {self.correctness!r}")
        if self.hypothesis_mode == "neural" and not self.convert_backend:
            raise ValidationError("hypothesis_mode=neural requires a convert backend")
        if self.premise_mode == "decontext" and not self.decontext_backend:
            raise ValidationError("premise_mode=decontext requires a decontext backend")
        for backend in (self.qa_backend, self.nli_backend):
            if not backend:
                raise ValidationError("qa and nli backends must be set")
        for k in self.coverage_grid:
            if not (0.0 < k <= 1.0):
                raise ValidationError(f"coverage grid value {k} outside (0, 1]")

    def to_dict(self) -> dict:
        return {
            "hypothesis_mode": self.hypothesis_mode,
            "premise_mode": self.premise_mode,
            "qa_backend": self.qa_backend,
            "convert_backend": self.convert_backend,
            "decontext_backend": self.decontext_backend,
            "nli_backend": self.nli_backend,
            "seed": self.seed,
            "coverage_grid": list(self.coverage_grid),
            "correctness": self.correctness,
            "f1_threshold": self.f1_threshold,
            "input": self.input,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "PipelineConfig":
        known = {f: data[f] for f in cls.__dataclass_fields__ if f in data}
        unknown = set(data) - set(cls.__dataclass_fields__)
        if unknown:
            raise ValidationError(f"unknown config fields: {sorted(unknown)}")
        if "coverage_grid" in known:
            known["coverage_grid"] = tuple(known["coverage_grid"])
        return cls(**known)

    def hash(self) -> str:
        return hashlib.sha256(
            dumps_canonical(self.to_dict()).encode("utf-8")
        ).hexdigest()


def _features(instance: QAInstance, candidate: AnswerCandidate) -> tuple:
    passage_len = float(len(instance.context.split()))
    answer_len = float(len(candidate.text.split()))
    return (passage_len, answer_len) + tuple(candidate.top5)


def run_pipeline(
    config: PipelineConfig,
    instances: list[QAInstance],
    out_dir: str | Path,
    jobs: int = 1,
) -> dict:
    config.validate()
    if not instances:
        raise ValidationError("pipeline needs at least one instance")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    qa = make_backend("qa", config.qa_backend)
    convert_client = make_backend("convert", config.convert_backend)
    decontext_client = make_backend("decontext", config.decontext_backend)
    nli = make_backend("nli", config.nli_backend)

    manifest: dict = {
        "config_hash": config.hash(),
        "seed": config.seed,
        "backend_ids": {
            "qa": qa.backend_id,
            "convert": convert_client.backend_id,
            "decontext": decontext_client.backend_id,
            "nli": nli.backend_id,
        },
        "stages": {},
        "outputs": [],
        "status": "ok",
    }

    def emit(stage: str, records: list[dict]) -> None:
        write_jsonl(out / STAGE_FILES[stage], records)
        manifest["stages"][stage] = len(records)
        manifest["outputs"].append(STAGE_FILES[stage])

    stage = "instances"
    try:
        for inst in instances:
            validate_instance(inst)
        emit("instances", [instance_to_dict(i) for i in instances])

        stage = "answers"
        candidates = ordered_parallel_map(qa.answer, instances, jobs=jobs)
        emit("answers", [
            {"instance_id": c.instance_id, "text": c.text, "start": c.start,
             "end": c.end, "p": c.p, "top5": list(c.top5)}
            for c in candidates
        ])
        cand_by_id = {c.instance_id: c for c in candidates}

        stage = "hypotheses"
        hyps = ordered_parallel_map(
            lambda inst: qconvert.convert(
                inst.question,
                cand_by_id[inst.id].text,
                config.hypothesis_mode,
                client=convert_client,
                question_id=inst.id,
            ),
            instances,
            jobs=jobs,
        )
        emit("hypotheses", [
            {"instance_id": h.source_question_id, "text": h.text,
             "method": h.method, "fallback": h.fallback}
            for h in hyps
        ])
        hyp_by_id = {h.source_question_id: h for h in hyps}

        stage = "premises"

        def build_premise(inst: QAInstance):
            candidate = cand_by_id[inst.id]
            span = (candidate.start, candidate.end) if candidate.start >= 0 else None
            return decontext.make_premise(
                inst, span, config.premise_mode, client=decontext_client
            )

        premises = ordered_parallel_map(build_premise, instances, jobs=jobs)
        emit("premises", [
            {"instance_id": inst.id, "text": p.text, "mode": p.mode,
             "sentence_index": p.sentence_index, "category": p.category}
            for inst, p in zip(instances, premises)
        ])
        prem_by_id = {inst.id: p for inst, p in zip(instances, premises)}

        stage = "pairs"
        pairs = build_qa_nli(
            instances, cand_by_id, prem_by_id, hyp_by_id,
            metric=config.correctness, f1_threshold=config.f1_threshold,
            origin="eval",
        )
        emit("pairs", [pair_to_dict(p) for p in pairs])

        stage = "scores"
        scores = score_batch(
            [(p.premise, p.hypothesis) for p in pairs], nli, jobs=jobs
        )
        emit("scores", [
            {"instance_id": pair.instance_id, **s.as_dict()}
            for pair, s in zip(pairs, scores)
        ])

        stage = "results"
        records = []
        for inst, entailment in zip(instances, scores):
            candidate = cand_by_id[inst.id]
            result = match(candidate.text, [g.text for g in inst.gold_answers])
            records.append(
                ConfidenceRecord(
                    instance_id=inst.id,
                    p_qa=candidate.p,
                    f1=result.f1,
                    em=result.em,
                    p_nli=entailment.p_entail,
                    features=_features(inst, candidate),
                    dataset=inst.dataset,
                    answerable=inst.answerable,
                )
            )
        emit("results", [record_to_dict(r) for r in records])

        stage = "curves"
        for name in ("qa", "nli"):
            curve = coverage_curve(records, name, config.coverage_grid)
            filename = f"curve_{name}.tsv"
            (out / filename).write_text(curve_to_tsv(curve), encoding="utf-8")
            manifest["outputs"].append(filename)
    except Exception:
        manifest["status"] = f"FAILED:{stage}"
        write_json(out / "manifest.json", manifest)
        log.error("pipeline failed at stage %s; partial outputs kept", stage)
        raise
    write_json(out / "manifest.json", manifest)
    return manifest


def run_ablation(
    config: PipelineConfig,
    instances: list[QAInstance],
    out_dir: str | Path,
    jobs: int = 1,
) -> dict:
    """Run the 2x3 factor grid (hypothesis x premise) and tabulate curves.

    The hypothesis axis compares the configured conversion mode against
    the concat baseline; the premise axis covers all three modes. Cell
    failures are isolated and marked in the table.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    converted = config.hypothesis_mode if config.hypothesis_mode != "concat" else "rule"
    cells = list(itertools.product(
        (converted, "concat"), ("sentence", "decontext", "full")
    ))
    curves: dict[str, object] = {}
    for hyp_mode, prem_mode in cells:
        name = f"{hyp_mode}+{prem_mode}"
        cell_config = replace(
            config, hypothesis_mode=hyp_mode, premise_mode=prem_mode
        )
        cell_dir = out / f"cell_{hyp_mode}_{prem_mode}"
        try:
            run_pipeline(cell_config, instances, cell_dir, jobs=jobs)
            curve = coverage_curve(
                _reload_results(cell_dir), "nli", config.coverage_grid
            )
            curves[name] = curve
        except Exception as exc:
            log.error("ablation cell %s failed: %s", name, exc)
            curves[name] = None
    table = _ablation_tsv(curves, sorted({k for k in config.coverage_grid} | {1.0}))
    (out / "ablation.tsv").write_text(table, encoding="utf-8")
    return curves


def _reload_results(cell_dir: Path) -> list[ConfidenceRecord]:
    from .calibrate import record_from_dict
    from .jsonl import read_jsonl

    return [record_from_dict(r) for r in read_jsonl(cell_dir / STAGE_FILES["results"])]


def _ablation_tsv(curves: dict, coverages: list[float]) -> str:
    names = sorted(curves)
    lines = ["coverage\t" + "\t".join(names)]
    by_cell = {}
    for name in names:
        curve = curves[name]
        by_cell[name] = (
            {p.coverage: p.f1 for p in curve.points} if curve is not None else None
        )
    for k in coverages:
        row = [f"{k:.4f}"]
        for name in names:
            points = by_cell[name]
            row.append("FAILED" if points is None else f"{points[k]:.6f}")
        lines.append("\t".join(row))
    return "\n".join(lines) + "\n"
