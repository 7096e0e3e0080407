"""End-to-end acceptance gate.

Each test evaluates one release criterion at its pinned tolerance and
prints a PASS/FAIL line (visible with ``pytest -s`` or in captured output).
The random batches are seeded, so every figure asserted here is
reproducible bit for bit.
"""

import csv
import math
import time
from contextlib import contextmanager
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import pytest

from optsep import (
    RunConfig,
    RunResult,
    Dataset,
    SimplexWeights,
    annotate_trace,
    brute_force_margin,
    closed_form_w,
    gen_eq2,
    gen_random_separable,
    init,
    margin_of,
    md_update_reference,
    pass_bound,
    perceptron_run,
    read_csv,
    round_bound,
    run,
    step,
    write_csv,
)
from optsep.cli import main as cli_main

SLACK = 1e-9
BATCH_SEED = 20260810


@contextmanager
def criterion(number: int, label: str):
    try:
        yield
    except BaseException:
        print(f"ACCEPTANCE {number} ({label}): FAIL")
        raise
    print(f"ACCEPTANCE {number} ({label}): PASS")


@dataclass
class Case:
    dataset: Dataset
    gamma: float
    bound: int
    result: RunResult


@pytest.fixture(scope="module")
def random_batch():
    """100 seeded separable datasets (n <= 16, d <= 8, floors in [0.05, 0.5]),
    each run with a trace against its sufficient-round budget."""
    rng = np.random.default_rng(BATCH_SEED)
    started = time.monotonic()
    cases = []
    for _ in range(100):
        n = int(rng.integers(1, 17))
        d = int(rng.integers(1, 9))
        target = float(rng.uniform(0.05, 0.5))
        dataset = gen_random_separable(n, d, target, seed=int(rng.integers(0, 2**62)))
        gamma = brute_force_margin(dataset)
        bound = round_bound(n, dataset.radius**2, gamma)
        result = run(dataset, bound + 1, RunConfig(record_trace=True))
        cases.append(Case(dataset, gamma, bound, result))
    return cases, time.monotonic() - started


@pytest.fixture(scope="module")
def full_sweep():
    """The complete n = 1..15 comparison, timed."""
    from optsep.cli import sweep_eq2

    started = time.monotonic()
    rows = sweep_eq2(1, 15)
    return rows, time.monotonic() - started


@pytest.fixture(scope="module")
def chain_runs():
    """Traced runs on the chain family for n = 1..12."""
    out = []
    for n in range(1, 13):
        dataset = gen_eq2(n)
        gamma = brute_force_margin(dataset)
        bound = round_bound(n, dataset.radius**2, gamma)
        out.append(Case(dataset, gamma, bound, run(dataset, bound + 1, RunConfig(record_trace=True))))
    return out


def test_criterion_1_figure_shape(full_sweep):
    rows, elapsed = full_sweep
    with criterion(1, "figure reproduction shape, n=1..15 within 60 s"):
        assert all(r.perceptron_converged and r.optsep_converged for r in rows)
        by_n = {r.n: r for r in rows}
        for n in range(9, 15):
            ratio = by_n[n + 1].perceptron_ops / by_n[n].perceptron_ops
            assert math.log2(ratio) >= 0.5, f"growth too slow at n={n}"
        for r in rows:
            ceiling = (2 * r.n + 2) * (
                math.ceil((1 + 2 * math.log(r.n) * r.n) / (2 * r.gamma)) + 1
            )
            assert r.optsep_ops <= ceiling, f"op ceiling broken at n={r.n}"
        for r in rows:
            if r.n >= 8:
                assert r.optsep_ops < r.perceptron_ops, f"no win at n={r.n}"
        assert elapsed <= 60.0, f"sweep took {elapsed:.1f} s"


def test_sweep_matches_golden_record(full_sweep):
    """The build-time record of the comparison, crossover included.

    Integer counts must match exactly (the baseline's are combinatorially
    determined); the oracle margins get the certification tolerance.
    """
    rows, _ = full_sweep
    golden_path = Path(__file__).parent / "golden" / "eq2_sweep.csv"
    with open(golden_path, encoding="utf-8") as fh:
        golden = list(csv.DictReader(fh))
    assert len(golden) == len(rows)
    for row, want in zip(rows, golden):
        assert row.n == int(want["n"])
        assert row.gamma == pytest.approx(float(want["gamma"]), abs=1e-9)
        assert row.perceptron_ops == int(want["perceptron_ops"])
        assert row.perceptron_mistakes == int(want["perceptron_mistakes"])
        assert row.optsep_ops == int(want["optsep_ops"])
        assert row.optsep_rounds == int(want["optsep_rounds"])
    crossover = min(
        r.n for r in rows if all(s.optsep_ops < s.perceptron_ops for s in rows if s.n >= r.n)
    )
    assert crossover == 4  # measured at build time; the gate only needs >= 8


def test_criterion_2_round_bound(random_batch):
    cases, elapsed = random_batch
    with criterion(2, "sufficient-round bound on 100 random datasets within 30 s"):
        assert len(cases) == 100
        for case in cases:
            assert case.result.converged, f"no convergence within {case.bound + 1}"
            assert case.result.rounds <= case.bound + 1
        assert elapsed <= 30.0, f"batch took {elapsed:.1f} s"


def test_criterion_3_bound_suite(random_batch, chain_runs):
    cases, _ = random_batch
    with criterion(3, "all three bounds at every round, 1e-9 slack"):
        for case in cases + chain_runs:
            annotate_trace(case.result.trace, case.dataset, gamma=case.gamma)
            for rec in case.result.trace.records:
                assert rec.learner_lhs <= rec.learner_rhs + SLACK
                assert rec.data_lhs <= rec.data_rhs + SLACK
                assert rec.gap_lhs <= rec.gap_rhs + SLACK


def test_criterion_4_reference_path_equivalence():
    with criterion(4, "closed-form weights and entropic-step optimality"):
        rng = np.random.default_rng(BATCH_SEED + 1)
        rounds_checked = 0
        while rounds_checked < 1000:
            n = int(rng.integers(1, 17))
            d = int(rng.integers(1, 9))
            target = float(rng.uniform(0.05, 0.5))
            dataset = gen_random_separable(
                n, d, target, seed=int(rng.integers(0, 2**62))
            )
            state = init(dataset)
            for _ in range(25):
                step(state, dataset)
                gap = np.abs(closed_form_w(state, dataset) - state.w).max()
                assert gap <= 1e-9
                rounds_checked += 1
                if rounds_checked == 1000:
                    break

        for _ in range(200):
            n = int(rng.integers(1, 6))
            p_prev = SimplexWeights.from_log_weights(rng.standard_normal(n))
            margins = rng.uniform(-3.0, 3.0, size=n)
            eta = float(rng.uniform(0.1, 3.0))
            out = md_update_reference(p_prev, margins, eta)

            def objective(q):
                return float(eta * (q @ margins) + np.sum(q * np.log(q / p_prev.probs)))

            best = min(objective(q) for q in rng.dirichlet(np.ones(n), size=1000))
            assert objective(out.probs) <= best + 1e-12


def test_criterion_5_separation_certificates(random_batch, chain_runs):
    cases, _ = random_batch
    with criterion(5, "every converged separator recertified from scratch"):
        for case in cases + chain_runs:
            assert case.result.converged
            assert margin_of(case.result.separator, case.dataset) > 0.0


def test_criterion_6_perceptron_mistake_bound(random_batch):
    cases, _ = random_batch
    with criterion(6, "perceptron mistakes within (r/gamma)^2 + 1"):
        for case in cases:
            budget = pass_bound(case.dataset.radius, case.gamma)
            res = perceptron_run(case.dataset, budget)
            assert res.converged
            assert res.mistakes <= (case.dataset.radius / case.gamma) ** 2 + 1


def test_criterion_7_determinism_and_io(tmp_path):
    with criterion(7, "byte-identical sweeps, exact CSV round-trip, line errors"):
        first, second = tmp_path / "a.csv", tmp_path / "b.csv"
        assert cli_main(["sweep", "--n-min", "1", "--n-max", "8", "--out", str(first)]) == 0
        assert cli_main(["sweep", "--n-min", "1", "--n-max", "8", "--out", str(second)]) == 0
        assert first.read_bytes() == second.read_bytes()

        values = np.array(
            [
                [0.1, 1e-308, 5e-324, -1.0 / 3.0],
                [1.7976931348623157e308, -0.0, 2.5e-17, 1e16],
            ]
        )
        ds = Dataset.from_arrays(values, [1, -1])
        path = tmp_path / "round.csv"
        write_csv(ds, path)
        back = read_csv(path)
        assert np.array_equal(back.X, ds.X)
        assert np.array_equal(back.y, ds.y)

        bad = tmp_path / "bad.csv"
        bad.write_text("1,1,0\n0,1,0\n", encoding="utf-8")
        with pytest.raises(ValueError, match="invalid label at line 2"):
            read_csv(bad)
        bad.write_text("1,1,0\n1,1\n", encoding="utf-8")
        with pytest.raises(ValueError, match="line 2"):
            read_csv(bad)
        bad.write_text("1,one\n", encoding="utf-8")
        with pytest.raises(ValueError, match="line 1"):
            read_csv(bad)
