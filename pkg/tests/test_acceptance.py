"""Acceptance suite: one test per release criterion.

Run with ``pytest tests/test_acceptance.py -v`` to get a pass/fail line
per criterion. Each test states its tolerance inline; reference values
come from the independent oracles in oracles.py or from hand-derived
fixtures, never from the code under test.
"""

import itertools
import json
import math
import random
import time
from pathlib import Path

import numpy as np
import pytest

from qanli.backends import MockNLIBackend, MockQABackend
from qanli.calibrate import (
    ConfidenceRecord,
    combine,
    coverage_curve,
    fit_combiner,
    loss_and_grad,
    rejection_rates,
)
from qanli.decontext import make_premise
from qanli.nli_client import score
from qanli.nli_dataset import build_qa_nli, import_external_nli, mix_with_external
from qanli.pipeline import PipelineConfig, run_pipeline
from qanli.qconvert import convert, convert_rule
from qanli.report import fleiss_kappa
from qanli.scoring import token_f1

from conftest import DATA_DIR
from oracles import central_difference, oracle_fleiss, oracle_token_f1


def rec(instance_id, p_qa, f1, em=None, p_nli=None):
    return ConfidenceRecord(
        instance_id=instance_id, p_qa=p_qa, f1=f1,
        em=f1 == 1.0 if em is None else em, p_nli=p_nli)


def mock_artifacts(instances):
    """Answers, premises, hypotheses for instances, all from the mocks."""
    qa = MockQABackend()
    candidates, premises, hypotheses = {}, {}, {}
    for inst in instances:
        cand = qa.answer(inst)
        candidates[inst.id] = cand
        span = (cand.start, cand.end) if cand.start >= 0 else None
        premises[inst.id] = make_premise(inst, span, "sentence")
        hypotheses[inst.id] = convert(
            inst.question, cand.text, "rule", question_id=inst.id)
    return candidates, premises, hypotheses


def test_metric_oracle_equivalence():
    """token_f1 equals the brute-force overlap oracle on 1,000 random
    pairs of length <= 5, exactly, in under 5 seconds."""
    rng = random.Random(20240915)
    vocab = ["alpha", "beta", "gamma", "delta", "epsilon",
             "the", "a", "an", "and", "of",
             "Paris!", "new-york", "1889", "8,849", "O'Brien",
             "alpha", "beta"]  # repeats raise multiset collisions
    started = time.perf_counter()
    for _ in range(1000):
        pred = " ".join(rng.choices(vocab, k=rng.randrange(0, 6)))
        gold = " ".join(rng.choices(vocab, k=rng.randrange(0, 6)))
        assert token_f1(pred, gold) == oracle_token_f1(pred, gold), (pred, gold)
    assert time.perf_counter() - started < 5.0


def test_oracle_ranking_optimality():
    """For every permutation of up to 6 records, ranking by true F1 gives
    a curve at least as high as the permuted ranking at every grid point,
    in under 10 seconds."""
    rng = random.Random(77)
    started = time.perf_counter()
    for n in range(1, 7):
        for _ in range(3):
            f1s = [rng.randrange(0, 65) / 64 for _ in range(n)]
            records = [rec(f"r{i}", p_qa=0.5, f1=f1s[i]) for i in range(n)]
            oracle_points = coverage_curve(records, "oracle").points
            for order in itertools.permutations(range(n)):
                ranked = [
                    ConfidenceRecord(
                        instance_id=r.instance_id,
                        p_qa=(n - position) / n,
                        f1=r.f1, em=r.em)
                    for position, idx in enumerate(order)
                    for r in [records[idx]]
                ]
                permuted_points = coverage_curve(ranked, "qa").points
                for oracle_point, permuted_point in zip(
                        oracle_points, permuted_points):
                    assert oracle_point.f1 >= permuted_point.f1
    assert time.perf_counter() - started < 10.0


def test_curve_endpoint_identity(pipeline_instances, adversarial_instances,
                                 tmp_path):
    """The k=1.0 curve point equals the plain mean F1 with zero tolerance,
    on every fixture and confidence stream."""
    run_pipeline(PipelineConfig(), pipeline_instances, tmp_path / "p")
    run_pipeline(PipelineConfig(), adversarial_instances, tmp_path / "a")
    from qanli.calibrate import record_from_dict
    for out in (tmp_path / "p", tmp_path / "a"):
        records = [
            record_from_dict(json.loads(line))
            for line in (out / "results.jsonl").read_text().splitlines()]
        expected = math.fsum(r.f1 for r in records) / len(records)
        for confidence in ("qa", "nli", "oracle"):
            curve = coverage_curve(records, confidence)
            assert curve.points[-1].coverage == 1.0
            assert curve.points[-1].f1 == expected  # exact, not approx
    # adversarial order also exercised shuffled
    rng = random.Random(5)
    values = [rng.random() for _ in range(101)]
    records = [rec(f"s{i:03d}", p_qa=rng.random(), f1=values[i])
               for i in range(101)]
    expected = math.fsum(values) / 101
    for _ in range(5):
        rng.shuffle(records)
        assert coverage_curve(records, "qa").points[-1].f1 == expected


def test_combiner_correctness():
    """Analytic gradient within 1e-6 of central differences at 100 random
    points; >= 95% accuracy on the separable synthetic set; recorded loss
    history never increases."""
    rng = np.random.default_rng(20240916)
    for _ in range(100):
        x = rng.normal(scale=2.0, size=(12, 2))
        y = (rng.random(12) > 0.5).astype(float)
        w = rng.normal(scale=2.0, size=2)
        b = float(rng.normal())
        _, grad_w, grad_b = loss_and_grad(w, b, x, y)
        for j in range(2):
            def loss_at(v, j=j):
                wj = w.copy()
                wj[j] = v
                return loss_and_grad(wj, b, x, y)[0]
            assert abs(central_difference(loss_at, w[j]) - grad_w[j]) <= 1e-6
        fd_bias = central_difference(
            lambda v: loss_and_grad(w, v, x, y)[0], b)
        assert abs(fd_bias - grad_b) <= 1e-6

    # target = [p_qa + p_nli > 1] is not separable through the origin,
    # so this fit exercises the intercept path
    py_rng = random.Random(20240917)
    records, targets = [], []
    while len(records) < 500:
        p_qa, p_nli = py_rng.random(), py_rng.random()
        if abs(p_qa + p_nli - 1.0) < 0.05:
            continue
        i = len(records)
        records.append(ConfidenceRecord(
            instance_id=f"s{i:04d}", p_qa=p_qa, f1=0.0,
            em=p_qa + p_nli > 1.0, p_nli=p_nli))
        targets.append(p_qa + p_nli > 1.0)
    model = fit_combiner(records, targets, fit_bias=True)
    predictions = [combine(model, r) > 0.5 for r in records]
    accuracy = sum(p == t for p, t in zip(predictions, targets)) / 500
    assert accuracy >= 0.95
    history = model.loss_history
    assert all(a >= b for a, b in zip(history, history[1:]))


def test_fleiss_kappa_reference_values(fleiss_worked):
    """Worked matrix to 1e-9 against the hand computation, unanimity gives
    exactly 1, and 10,000 independent raters stay within |kappa| < 0.05."""
    labels = [
        [cat for cat, count in zip(fleiss_worked["categories"], row)
         for _ in range(count)]
        for row in fleiss_worked["counts"]
    ]
    result = fleiss_kappa(labels)
    assert abs(result.kappa - fleiss_worked["expected_kappa"]) <= 1e-9
    assert abs(result.kappa - oracle_fleiss(labels)) <= 1e-9

    unanimous = [["a"] * 6, ["b"] * 6, ["c"] * 6, ["a"] * 6]
    assert fleiss_kappa(unanimous).kappa == pytest.approx(1.0)

    rng = random.Random(20240918)
    simulated = [
        [rng.choice(("x", "y", "z")) for _ in range(3)]
        for _ in range(10_000)
    ]
    assert abs(fleiss_kappa(simulated).kappa) < 0.05


def test_pipeline_determinism(pipeline_instances, tmp_path):
    """Two runs, and serial vs 8-way parallel, produce byte-identical
    output trees on the 50-instance fixture."""
    def run(name, jobs):
        out = tmp_path / name
        run_pipeline(PipelineConfig(), pipeline_instances, out, jobs=jobs)
        return {p.name: p.read_bytes() for p in sorted(out.iterdir())}

    first = run("first", jobs=1)
    second = run("second", jobs=1)
    parallel = run("parallel", jobs=8)
    assert first == second
    assert first == parallel
    assert set(first) >= {"manifest.json", "results.jsonl",
                          "curve_qa.tsv", "curve_nli.tsv"}


def test_converter_reference_corpus(converter_corpus):
    """>= 90% of the curated conversions match exactly; the answer string
    appears verbatim in 100% of outputs."""
    agreements = 0
    for entry in converter_corpus:
        hyp = convert_rule(entry["question"], entry["answer"])
        assert entry["answer"] in hyp.text  # verbatim, every entry
        agreements += hyp.text == entry["expected"]
    assert len(converter_corpus) >= 20
    assert agreements / len(converter_corpus) >= 0.9


def test_nli_builder_counts_and_mix(pipeline_instances):
    """Exactly 30 entailed / 20 not_entailed pairs from the fixture where
    the mock answers 30 of 50 correctly; mixing with the external sample
    yields exactly 100 pairs at a 1:1 origin ratio."""
    pairs = build_qa_nli(pipeline_instances, *mock_artifacts(pipeline_instances))
    labels = [p.label for p in pairs]
    assert labels.count("entailed") == 30
    assert labels.count("not_entailed") == 20

    external_records = [
        json.loads(line)
        for line in (DATA_DIR / "external_nli.jsonl").read_text().splitlines()]
    external, issues = import_external_nli(external_records, source="mnli")
    assert not issues
    mixed = mix_with_external(pairs, external, seed=0)
    assert len(mixed) == 100
    origins = [p.origin for p in mixed]
    assert origins.count("qa_derived") == 50
    assert origins.count("external_nli") == 50


def test_mock_rejection_sanity(adversarial_instances):
    """Rejection rate exactly 1.0 on the disjoint-vocabulary unanswerables
    and acceptance >= 0.9 on the answerable half."""
    nli = MockNLIBackend()
    candidates, premises, hypotheses = mock_artifacts(adversarial_instances)
    unanswerable, answerable = [], []
    for inst in adversarial_instances:
        entailment = score(
            premises[inst.id].text, hypotheses[inst.id].text, nli)
        (answerable if inst.answerable else unanswerable).append(entailment)
    reject, accept = rejection_rates(unanswerable, answerable)
    assert reject == 1.0
    assert accept >= 0.9
