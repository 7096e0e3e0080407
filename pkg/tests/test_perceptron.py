import numpy as np
import pytest

from optsep import (
    brute_force_margin,
    gen_eq2,
    margin_of,
    pass_bound,
    perceptron_run,
    perceptron_run_reference,
)


@pytest.mark.parametrize("runner", [perceptron_run, perceptron_run_reference])
def test_hand_trace_single_point(runner, tiny):
    # pass 1: check (1 unit) + update (1 unit); pass 2: clean check (1 unit)
    res = runner(tiny, 10)
    assert res.converged
    assert res.mistakes == 1
    assert res.rounds == 2
    assert res.total_ops == 3
    assert np.array_equal(res.separator, [1.0])
    assert res.final_margin == pytest.approx(1.0)


def test_kernel_matches_reference_on_chain():
    for n in range(1, 9):
        ds = gen_eq2(n)
        budget = pass_bound(ds.radius, brute_force_margin(ds))
        fast = perceptron_run(ds, budget)
        ref = perceptron_run_reference(ds, budget)
        assert (fast.rounds, fast.mistakes, fast.total_ops, fast.converged) == (
            ref.rounds,
            ref.mistakes,
            ref.total_ops,
            ref.converged,
        )
        assert np.array_equal(fast.separator, ref.separator)


def test_kernel_matches_reference_on_random_data(random_case):
    for seed in range(12):
        ds, _ = random_case(seed)
        budget = pass_bound(ds.radius, brute_force_margin(ds))
        fast = perceptron_run(ds, budget)
        ref = perceptron_run_reference(ds, budget)
        assert (fast.rounds, fast.mistakes, fast.total_ops, fast.converged) == (
            ref.rounds,
            ref.mistakes,
            ref.total_ops,
            ref.converged,
        )
        assert np.array_equal(fast.separator, ref.separator)


def test_mistake_bound(random_case):
    for seed in range(20):
        ds, _ = random_case(seed)
        gamma = brute_force_margin(ds)
        res = perceptron_run(ds, pass_bound(ds.radius, gamma))
        assert res.converged
        assert res.mistakes <= (ds.radius / gamma) ** 2 + 1


def test_converged_weights_separate(random_case):
    for seed in range(20, 30):
        ds, _ = random_case(seed)
        res = perceptron_run(ds, pass_bound(ds.radius, brute_force_margin(ds)))
        assert res.converged
        assert margin_of(res.separator, ds) > 0.0


def test_chain_mistakes_per_pass_stay_near_two():
    for n in range(6, 11):
        ds = gen_eq2(n)
        res = perceptron_run(ds, pass_bound(ds.radius, brute_force_margin(ds)))
        assert res.converged
        assert 1.5 <= res.mistakes / res.rounds <= 2.5


def test_budget_exhaustion_is_not_an_error():
    res = perceptron_run(gen_eq2(6), max_passes=5)
    assert not res.converged
    assert res.rounds == 5


def test_rejects_empty_budget(tiny):
    with pytest.raises(ValueError):
        perceptron_run(tiny, 0)
    with pytest.raises(ValueError):
        perceptron_run_reference(tiny, 0)


def test_pass_bound_needs_positive_margin():
    with pytest.raises(ValueError):
        pass_bound(1.0, 0.0)
    assert pass_bound(1.0, 1.0) == 2
