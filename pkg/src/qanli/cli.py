"""Command-line entry point.

Subcommands mirror the pipeline stages so each can run standalone on the
staged files, plus grouped calibrate/evaluate/report commands and the
full pipeline and ablation runners. Exit codes: 0 success, 2 validation
failure, 3 backend failure.
"""

import sys
from dataclasses import replace
from pathlib import Path

import click

from . import corpus, decontext, qconvert, report
from .backends import AnswerCandidate, make_backend, ordered_parallel_map
from .calibrate import (
    CalibratorModel,
    CombinerModel,
    calibrate_score,
    combine,
    coverage_curve,
    curve_to_tsv,
    ensemble_qa,
    fit_calibrator,
    fit_combiner,
    record_from_dict,
    record_to_dict,
    rejection_rates,
)
from .errors import BackendError, ValidationError
from .jsonl import read_json, read_jsonl, write_json, write_jsonl
from .nli_client import EntailmentScore, accepts, score_batch
from .nli_dataset import (
    build_qa_nli,
    import_external_nli,
    mix_with_external,
    pair_from_dict,
    pair_to_dict,
)
from .pipeline import PipelineConfig, run_ablation, run_pipeline
from .scoring import match


def _load_instances(path: str) -> list[corpus.QAInstance]:
    instances = [corpus.instance_from_dict(r) for r in read_jsonl(path)]
    if not instances:
        raise ValidationError(f"{path}: no instances")
    for inst in instances:
        corpus.validate_instance(inst)
    return instances


def _load_candidates(path: str) -> dict[str, AnswerCandidate]:
    out = {}
    for r in read_jsonl(path):
        out[r["instance_id"]] = AnswerCandidate(
            r["instance_id"], r["text"], r["start"], r["end"], r["p"],
            tuple(r["top5"]),
        )
    return out


def _report_issues(issues) -> None:
    for issue in issues:
        where = []
        if issue.line is not None:
            where.append(f"line {issue.line}")
        if issue.path:
            where.append(issue.path)
        if issue.instance_id:
            where.append(f"id {issue.instance_id}")
        location = ", ".join(where) or "input"
        click.echo(f"issue ({location}): {issue.message}", err=True)


@click.group()
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False),
              default=None, help="Pipeline config JSON.")
@click.option("--seed", type=int, default=None, help="Override the config seed.")
@click.option("--jobs", type=int, default=1, show_default=True,
              help="Concurrent backend calls per stage.")
@click.pass_context
def cli(ctx, config_path, seed, jobs):
    ctx.ensure_object(dict)
    config = (
        PipelineConfig.from_dict(read_json(config_path))
        if config_path
        else PipelineConfig()
    )
    if seed is not None:
        config = replace(config, seed=seed)
    ctx.obj["config"] = config
    ctx.obj["jobs"] = max(1, jobs)


@cli.command()
@click.option("--format", "fmt", type=click.Choice(["mrqa", "squad2"]), required=True)
@click.option("--dataset", default="Other", show_default=True)
@click.option("--in", "in_path", required=True, type=click.Path(exists=True))
@click.option("--out", "out_path", required=True)
@click.option("--filter-nq", "apply_filter", is_flag=True,
              help="Drop narrative-statement questions and table contexts.")
def ingest(fmt, dataset, in_path, out_path, apply_filter):
    """Normalize a raw dataset file into instance records."""
    if fmt == "mrqa":
        with open(in_path, encoding="utf-8") as fh:
            result = corpus.parse_mrqa(fh, dataset=dataset)
    else:
        result = corpus.parse_squad(read_json(in_path), dataset=dataset)
    _report_issues(result.issues)
    instances = result.instances
    dropped = []
    if apply_filter:
        instances, dropped = corpus.filter_nq(instances)
        for iid, reason in dropped:
            click.echo(f"dropped {iid}: {reason}", err=True)
    if not instances:
        raise ValidationError(f"{in_path}: no usable instances")
    write_jsonl(out_path, [corpus.instance_to_dict(i) for i in instances])
    click.echo(
        f"wrote {len(instances)} instances to {out_path} "
        f"({len(result.issues)} issues, {len(dropped)} dropped)"
    )


@cli.command()
@click.option("--backend", default=None, help="mock or http:<url>.")
@click.option("--in", "in_path", required=True, type=click.Path(exists=True))
@click.option("--out", "out_path", required=True)
@click.pass_context
def answer(ctx, backend, in_path, out_path):
    """Run the QA backend over instances, producing answer candidates."""
    client = make_backend("qa", backend or ctx.obj["config"].qa_backend)
    instances = _load_instances(in_path)
    candidates = ordered_parallel_map(client.answer, instances, jobs=ctx.obj["jobs"])
    write_jsonl(out_path, [
        {"instance_id": c.instance_id, "text": c.text, "start": c.start,
         "end": c.end, "p": c.p, "top5": list(c.top5)}
        for c in candidates
    ])
    click.echo(f"wrote {len(candidates)} candidates to {out_path}")


@cli.command()
@click.option("--mode", type=click.Choice(["rule", "neural", "concat"]),
              required=True)
@click.option("--backend", default=None, help="Convert backend for neural mode.")
@click.option("--in", "in_path", required=True, type=click.Path(exists=True))
@click.option("--answers", "answers_path", required=True, type=click.Path(exists=True))
@click.option("--out", "out_path", required=True)
@click.pass_context
def convert(ctx, mode, backend, in_path, answers_path, out_path):
    """Turn (question, answer) pairs into declarative hypotheses."""
    instances = _load_instances(in_path)
    candidates = _load_candidates(answers_path)
    client = None
    if mode == "neural":
        client = make_backend("convert", backend or ctx.obj["config"].convert_backend)

    def one(inst):
        if inst.id not in candidates:
            raise ValidationError(f"{inst.id}: no answer candidate")
        return qconvert.convert(
            inst.question, candidates[inst.id].text, mode,
            client=client, question_id=inst.id,
        )

    hyps = ordered_parallel_map(one, instances, jobs=ctx.obj["jobs"])
    write_jsonl(out_path, [
        {"instance_id": h.source_question_id, "text": h.text, "method": h.method,
         "fallback": h.fallback}
        for h in hyps
    ])
    click.echo(f"wrote {len(hyps)} hypotheses to {out_path}")


@cli.command()
@click.option("--mode", type=click.Choice(list(decontext.PREMISE_MODES)),
              required=True)
@click.option("--backend", default=None, help="Decontext backend.")
@click.option("--in", "in_path", required=True, type=click.Path(exists=True))
@click.option("--answers", "answers_path", required=True, type=click.Path(exists=True))
@click.option("--out", "out_path", required=True)
@click.pass_context
def premise(ctx, mode, backend, in_path, answers_path, out_path):
    """Extract the answer sentence, its rewrite, or the full context."""
    instances = _load_instances(in_path)
    candidates = _load_candidates(answers_path)
    client = None
    if mode == "decontext":
        client = make_backend(
            "decontext", backend or ctx.obj["config"].decontext_backend
        )

    def one(inst):
        if inst.id not in candidates:
            raise ValidationError(f"{inst.id}: no answer candidate")
        candidate = candidates[inst.id]
        span = (candidate.start, candidate.end) if candidate.start >= 0 else None
        return decontext.make_premise(inst, span, mode, client=client)

    premises = ordered_parallel_map(one, instances, jobs=ctx.obj["jobs"])
    write_jsonl(out_path, [
        {"instance_id": inst.id, "text": p.text, "mode": p.mode,
         "sentence_index": p.sentence_index, "category": p.category}
        for inst, p in zip(instances, premises)
    ])
    click.echo(f"wrote {len(premises)} premises to {out_path}")


@cli.command("build-nli")
@click.option("--in", "in_path", required=True, type=click.Path(exists=True))
@click.option("--answers", "answers_path", required=True, type=click.Path(exists=True))
@click.option("--premises", "premises_path", required=True,
              type=click.Path(exists=True))
@click.option("--hypotheses", "hypotheses_path", required=True,
              type=click.Path(exists=True))
@click.option("--out", "out_path", required=True)
@click.option("--correctness", type=click.Choice(["em", "f1"]), default="em",
              show_default=True)
@click.option("--f1-threshold", type=float, default=0.8, show_default=True)
def build_nli(in_path, answers_path, premises_path, hypotheses_path, out_path,
              correctness, f1_threshold):
    """Label (premise, hypothesis) pairs by answer correctness."""
    instances = _load_instances(in_path)
    candidates = _load_candidates(answers_path)
    premises = {
        r["instance_id"]: decontext.Premise(
            r["text"], r["mode"], r["sentence_index"], r["category"]
        )
        for r in read_jsonl(premises_path)
    }
    hypotheses = {
        r["instance_id"]: qconvert.Hypothesis(
            r["text"], r["method"], r["instance_id"], r.get("fallback", False)
        )
        for r in read_jsonl(hypotheses_path)
    }
    pairs = build_qa_nli(
        instances, candidates, premises, hypotheses,
        metric=correctness, f1_threshold=f1_threshold,
    )
    write_jsonl(out_path, [pair_to_dict(p) for p in pairs])
    entailed = sum(1 for p in pairs if p.label == "entailed")
    click.echo(
        f"wrote {len(pairs)} pairs to {out_path} "
        f"({entailed} entailed, {len(pairs) - entailed} not_entailed)"
    )


@cli.command("mix-nli")
@click.option("--qa", "qa_path", required=True, type=click.Path(exists=True))
@click.option("--external", "external_path", required=True,
              type=click.Path(exists=True))
@click.option("--external-format", type=click.Choice(["pairs", "mnli", "fever_nli"]),
              default="pairs", show_default=True,
              help="pairs = already-built NLIPair records.")
@click.option("--out", "out_path", required=True)
@click.pass_context
def mix_nli(ctx, qa_path, external_path, external_format, out_path):
    """Mix QA-derived pairs 1:1 with an external NLI sample."""
    qa_pairs = [pair_from_dict(r) for r in read_jsonl(qa_path)]
    records = list(read_jsonl(external_path))
    if external_format == "pairs":
        external = [pair_from_dict(r) for r in records]
    else:
        external, issues = import_external_nli(records, external_format)
        _report_issues(issues)
    mixed = mix_with_external(qa_pairs, external, seed=ctx.obj["config"].seed)
    write_jsonl(out_path, [pair_to_dict(p) for p in mixed])
    click.echo(f"wrote {len(mixed)} mixed pairs to {out_path}")


@cli.command("score-nli")
@click.option("--backend", default=None, help="mock or http:<url>.")
@click.option("--in", "in_path", required=True, type=click.Path(exists=True))
@click.option("--out", "out_path", required=True)
@click.pass_context
def score_nli(ctx, backend, in_path, out_path):
    """Score NLI pairs with an entailment backend."""
    pairs = [pair_from_dict(r) for r in read_jsonl(in_path)]
    client = make_backend("nli", backend or ctx.obj["config"].nli_backend)
    scores = score_batch(
        [(p.premise, p.hypothesis) for p in pairs], client, jobs=ctx.obj["jobs"]
    )
    write_jsonl(out_path, [
        {"instance_id": pair.instance_id, **s.as_dict()}
        for pair, s in zip(pairs, scores)
    ])
    click.echo(f"wrote {len(scores)} scores to {out_path}")


@cli.command("score-answers")
@click.option("--pred", "pred_path", required=True, type=click.Path(exists=True))
@click.option("--gold", "gold_path", required=True, type=click.Path(exists=True))
@click.option("--out", "out_path", required=True)
def score_answers(pred_path, gold_path, out_path):
    """Exact match and token F1 of predictions against gold answers."""
    instances = {i.id: i for i in _load_instances(gold_path)}
    results = []
    for r in read_jsonl(pred_path):
        iid = r["instance_id"]
        if iid not in instances:
            raise ValidationError(f"{iid}: prediction for unknown instance")
        golds = [g.text for g in instances[iid].gold_answers]
        m = match(r["text"], golds)
        results.append({
            "instance_id": iid, "em": m.em, "f1": m.f1,
            "best_gold_index": m.best_gold_index,
        })
    write_jsonl(out_path, results)
    n = len(results)
    mean_f1 = sum(r["f1"] for r in results) / n if n else 0.0
    click.echo(f"wrote {n} results to {out_path} (mean F1 {mean_f1:.4f})")


@cli.group("calibrate")
def calibrate_group():
    """Fit confidence models on confidence records."""


@calibrate_group.command("fit-combiner")
@click.option("--in", "in_path", required=True, type=click.Path(exists=True))
@click.option("--out", "out_path", required=True)
@click.option("--bias/--no-bias", "fit_bias", default=False, show_default=True,
              help="Fit an intercept instead of freezing it at 0.")
@click.pass_context
def cmd_fit_combiner(ctx, in_path, out_path, fit_bias):
    records = [record_from_dict(r) for r in read_jsonl(in_path)]
    model = fit_combiner(records, fit_bias=fit_bias, seed=ctx.obj["config"].seed)
    write_json(out_path, {
        "kind": "combiner", "w1": model.w1, "w2": model.w2, "bias": model.bias,
        "fit_meta": model.fit_meta,
    })
    click.echo(
        f"w1={model.w1:.6f} w2={model.w2:.6f} bias={model.bias:.6f} "
        f"({model.fit_meta['iterations']} iterations)"
    )


@calibrate_group.command("fit-selective")
@click.option("--in", "in_path", required=True, type=click.Path(exists=True))
@click.option("--out", "out_path", required=True)
@click.option("--bias/--no-bias", "fit_bias", default=True, show_default=True)
@click.pass_context
def cmd_fit_selective(ctx, in_path, out_path, fit_bias):
    records = [record_from_dict(r) for r in read_jsonl(in_path)]
    model = fit_calibrator(records, fit_bias=fit_bias, seed=ctx.obj["config"].seed)
    write_json(out_path, {
        "kind": "selective", "weights": list(model.weights), "bias": model.bias,
        "mean": list(model.mean), "std": list(model.std),
        "dropped": list(model.dropped), "fit_meta": model.fit_meta,
    })
    click.echo(f"fit 7-feature calibrator ({model.fit_meta['iterations']} iterations)")


def _load_combiner(path: str) -> CombinerModel:
    data = read_json(path)
    return CombinerModel(w1=data["w1"], w2=data["w2"], bias=data.get("bias", 0.0))


def _load_selective(path: str) -> CalibratorModel:
    data = read_json(path)
    return CalibratorModel(
        weights=tuple(data["weights"]), bias=data["bias"],
        mean=tuple(data["mean"]), std=tuple(data["std"]),
        dropped=tuple(data["dropped"]),
    )


@cli.group("evaluate")
def evaluate_group():
    """Selective-QA curves and unanswerable rejection rates."""


@evaluate_group.command("curve")
@click.option("--in", "in_path", required=True, type=click.Path(exists=True))
@click.option("--confidence",
              type=click.Choice(["qa", "nli", "combined", "ensemble", "selective",
                                 "oracle"]),
              default="qa", show_default=True)
@click.option("--model", "model_path", default=None, type=click.Path(exists=True),
              help="Fitted model JSON (combined/ensemble/selective).")
@click.option("--second", "second_path", default=None, type=click.Path(exists=True),
              help="Second QA posterior stream for ensemble confidence.")
@click.option("--grid", default=None, help="Comma-separated coverages in (0,1].")
@click.option("--out", "out_path", required=True)
@click.pass_context
def cmd_curve(ctx, in_path, confidence, model_path, second_path, grid, out_path):
    records = [record_from_dict(r) for r in read_jsonl(in_path)]
    grid_values = (
        tuple(float(v) for v in grid.split(",")) if grid
        else ctx.obj["config"].coverage_grid
    )
    if confidence in ("combined", "ensemble", "selective") and not model_path:
        raise ValidationError(f"--confidence {confidence} requires --model")
    if confidence == "combined":
        model = _load_combiner(model_path)
        conf = lambda r: combine(model, r)
    elif confidence == "selective":
        model = _load_selective(model_path)
        conf = lambda r: calibrate_score(model, r.features)
    elif confidence == "ensemble":
        if not second_path:
            raise ValidationError("--confidence ensemble requires --second")
        model = _load_combiner(model_path)
        second = {r["instance_id"]: r["p_qa"] for r in read_jsonl(second_path)}
        missing = [r.instance_id for r in records if r.instance_id not in second]
        if missing:
            raise ValidationError(
                f"{len(missing)} ids missing from --second (first: {missing[0]})"
            )
        conf = lambda r: ensemble_qa(r.p_qa, second[r.instance_id], model)
    else:
        conf = confidence
    curve = coverage_curve(records, conf, grid_values)
    Path(out_path).parent.mkdir(parents=True, exist_ok=True)
    Path(out_path).write_text(curve_to_tsv(curve), encoding="utf-8")
    click.echo(f"wrote {len(curve.points)}-point curve to {out_path}")


@evaluate_group.command("rejection")
@click.option("--scores", "scores_path", required=True, type=click.Path(exists=True))
@click.option("--gold", "gold_path", required=True, type=click.Path(exists=True))
@click.option("--threshold", type=float, default=None,
              help="Accept when p_entail >= threshold instead of argmax.")
def cmd_rejection(scores_path, gold_path, threshold):
    instances = {i.id: i for i in _load_instances(gold_path)}
    unanswerable, answerable = [], []
    for r in read_jsonl(scores_path):
        iid = r["instance_id"]
        if iid not in instances:
            raise ValidationError(f"{iid}: score for unknown instance")
        s = EntailmentScore(
            r["p_entail"], r["p_neutral"], r["p_contradiction"], r["backend_id"]
        )
        (answerable if instances[iid].answerable else unanswerable).append(s)
    reject, accept = rejection_rates(unanswerable, answerable, threshold=threshold)
    click.echo(f"unanswerable_rejection_rate\t{reject:.4f}")
    click.echo(f"answerable_acceptance_rate\t{accept:.4f}")


@cli.group("report")
def report_group():
    """Error detection, annotation sheets, agreement, breakdown tables."""


@report_group.command("errors")
@click.option("--results", "results_path", required=True, type=click.Path(exists=True))
@click.option("--scores", "scores_path", required=True, type=click.Path(exists=True))
@click.option("--threshold", type=float, default=None)
@click.option("--out", "out_path", required=True)
def cmd_errors(results_path, scores_path, threshold, out_path):
    records = {r["instance_id"]: r for r in read_jsonl(results_path)}
    verdicts = []
    for r in read_jsonl(scores_path):
        iid = r["instance_id"]
        if iid not in records:
            raise ValidationError(f"{iid}: score without a result record")
        s = EntailmentScore(
            r["p_entail"], r["p_neutral"], r["p_contradiction"], r["backend_id"]
        )
        verdicts.append(report.Verdict(
            instance_id=iid,
            accepted=accepts(s, threshold=threshold),
            correct=bool(records[iid]["em"]),
            dataset=records[iid].get("dataset", ""),
        ))
    errors = report.detect_errors(verdicts)
    write_jsonl(out_path, [
        {"instance_id": e.instance_id, "polarity": e.polarity,
         "error_class": e.error_class, "dataset": e.dataset}
        for e in errors
    ])
    fp = sum(1 for e in errors if e.polarity == "false_positive")
    click.echo(
        f"wrote {len(errors)} errors to {out_path} "
        f"({fp} false positives, {len(errors) - fp} false negatives)"
    )


@report_group.command("sheet")
@click.option("--errors", "errors_path", required=True, type=click.Path(exists=True))
@click.option("--pipeline", "pipeline_dir", required=True,
              type=click.Path(exists=True, file_okay=False))
@click.option("--cap", type=int, default=None, help="Max errors per dataset.")
@click.option("--out", "out_path", required=True)
def cmd_sheet(errors_path, pipeline_dir, cap, out_path):
    errors = [
        report.ErrorRecord(
            r["instance_id"], r["polarity"], r.get("error_class", "unlabeled"),
            r.get("dataset", ""),
        )
        for r in read_jsonl(errors_path)
    ]
    artifacts = _collect_artifacts(Path(pipeline_dir))
    sheet = report.export_annotation_sheet(errors, artifacts, per_dataset_cap=cap)
    Path(out_path).write_text(sheet, encoding="utf-8")
    click.echo(f"wrote annotation sheet to {out_path}")


def _collect_artifacts(pipeline_dir: Path) -> dict:
    artifacts: dict[str, dict] = {}

    def fold(filename, field_map, id_key="instance_id"):
        path = pipeline_dir / filename
        if not path.exists():
            return
        for r in read_jsonl(path):
            entry = artifacts.setdefault(r[id_key], {})
            for column, key in field_map.items():
                if key in r:
                    entry[column] = r[key]

    fold("instances.jsonl", {"question": "question"}, id_key="id")
    fold("answers.jsonl", {"answer": "text"})
    fold("premises.jsonl", {"premise": "text"})
    fold("hypotheses.jsonl", {"hypothesis": "text"})
    fold("scores.jsonl", {"p_entail": "p_entail"})
    return artifacts


@report_group.command("kappa")
@click.option("--sheets", "sheet_paths", required=True, multiple=True,
              type=click.Path(exists=True),
              help="One filled annotation sheet per rater.")
def cmd_kappa(sheet_paths):
    if len(sheet_paths) < 2:
        raise ValidationError("kappa needs at least two sheets")
    per_rater = []
    for path in sheet_paths:
        rows = report.import_annotation_sheet(Path(path).read_text(encoding="utf-8"))
        labels = {}
        for row in rows:
            if row.error_class == report.UNLABELED:
                raise ValidationError(
                    f"{path}: {row.instance_id} unlabeled; every cell must be filled"
                )
            labels[row.instance_id] = row.error_class
        per_rater.append(labels)
    ids = sorted(per_rater[0])
    for path, labels in zip(sheet_paths[1:], per_rater[1:]):
        if sorted(labels) != ids:
            raise ValidationError(f"{path}: item ids differ across sheets")
    matrix = [[labels[i] for labels in per_rater] for i in ids]
    result = report.fleiss_kappa(matrix)
    click.echo(f"kappa\t{result.kappa:.6f}")
    click.echo(f"n_items\t{result.n_items}")
    click.echo(f"n_raters\t{result.n_raters}")
    for cls, prop in sorted(result.per_class_proportions.items()):
        click.echo(f"proportion[{cls}]\t{prop:.6f}")


@report_group.command("breakdown")
@click.option("--errors", "errors_path", required=True, type=click.Path(exists=True))
@click.option("--out", "out_path", default=None)
def cmd_breakdown(errors_path, out_path):
    errors = [
        report.ErrorRecord(
            r["instance_id"], r["polarity"], r.get("error_class", "unlabeled"),
            r.get("dataset", ""),
        )
        for r in read_jsonl(errors_path)
    ]
    table = report.format_breakdown(report.breakdown_table(errors))
    if out_path:
        Path(out_path).write_text(table, encoding="utf-8")
        click.echo(f"wrote breakdown to {out_path}")
    else:
        click.echo(table, nl=False)


@cli.command("pipeline")
@click.option("--in", "in_path", default=None, type=click.Path(exists=True),
              help="Instance records; defaults to the config's input path.")
@click.option("--out", "out_dir", required=True)
@click.pass_context
def cmd_pipeline(ctx, in_path, out_dir):
    """Run every stage against the configured backends."""
    config = ctx.obj["config"]
    path = in_path or config.input
    if not path:
        raise ValidationError("no input: pass --in or set input in the config")
    instances = _load_instances(path)
    manifest = run_pipeline(config, instances, out_dir, jobs=ctx.obj["jobs"])
    click.echo(
        f"pipeline {manifest['status']}: {manifest['stages']['results']} instances "
        f"-> {out_dir} (config {manifest['config_hash'][:12]})"
    )


@cli.command("ablate")
@click.option("--in", "in_path", default=None, type=click.Path(exists=True))
@click.option("--out", "out_dir", required=True)
@click.pass_context
def cmd_ablate(ctx, in_path, out_dir):
    """Run the 2x3 hypothesis/premise grid and tabulate the curves."""
    config = ctx.obj["config"]
    path = in_path or config.input
    if not path:
        raise ValidationError("no input: pass --in or set input in the config")
    instances = _load_instances(path)
    curves = run_ablation(config, instances, out_dir, jobs=ctx.obj["jobs"])
    failed = sorted(name for name, curve in curves.items() if curve is None)
    click.echo(f"ablation wrote {len(curves)} cells to {out_dir}")
    if failed:
        click.echo(f"failed cells: {', '.join(failed)}", err=True)


def main(argv=None):
    try:
        cli(args=argv, standalone_mode=False)
    except click.exceptions.Exit as exc:
        sys.exit(exc.exit_code)
    except click.ClickException as exc:
        exc.show()
        sys.exit(2)
    except click.Abort:
        sys.exit(130)
    except ValidationError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    except BackendError as exc:
        click.echo(f"backend error: {exc}", err=True)
        sys.exit(3)
    sys.exit(0)


if __name__ == "__main__":
    main()
