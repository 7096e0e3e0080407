"""Incremental optimistic solver for linear separation.

Each round plays a weight vector built from the two latest pseudoexamples
(the newest counted twice, the one before subtracted), reweights the
examples multiplicatively from the new margins, and forms the next
pseudoexample.  The running average of the played weights is the candidate
separator; the run stops at the first round where its cumulative margins
are all strictly positive, which certifies separation using scalar work
only.

Two reference paths keep the incremental loop honest: a closed-form
reconstruction of each round's weight vector from the distribution history
(:func:`closed_form_w`) and the exponentiated-gradient view of the
reweighting step (:func:`md_update_reference`).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from optsep.core import (
    Dataset,
    MarginVector,
    OpCounter,
    SimplexWeights,
    Vector,
    axpy,
    margin_of,
    margin_vector,
    pseudoexample,
)


def step_size(dataset: Dataset) -> float:
    """Constant multiplicative step 1 / r^2 used by every round."""
    return 1.0 / dataset.radius**2


@dataclass
class SolverState:
    """One round of the incremental loop.

    ``x_prev`` and ``x_prev2`` hold the pseudoexamples consumed by the next
    weight update (both equal the uniform pseudoexample at round zero).
    ``p_history_sum`` accumulates the distributions of completed rounds so
    the closed-form weight reconstruction needs no stored history.
    """

    t: int
    w: Vector
    w_sum: Vector
    p: SimplexWeights
    p_prev: SimplexWeights
    x_prev: Vector
    x_prev2: Vector
    margins: MarginVector
    cumulative_margins: MarginVector
    p_history_sum: np.ndarray
    counter: OpCounter


@dataclass
class TraceRecord:
    """Per-round snapshot plus bound columns filled by the verifier."""

    t: int
    w: Vector
    probs: np.ndarray
    margins: MarginVector
    p_change_l1: float
    min_avg_margin: float
    inner_products: int
    additions: int
    learner_lhs: float | None = None
    learner_rhs: float | None = None
    data_lhs: float | None = None
    data_rhs: float | None = None
    gap_lhs: float | None = None
    gap_rhs: float | None = None


@dataclass
class RunTrace:
    records: list[TraceRecord] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.records)


@dataclass(frozen=True)
class RunConfig:
    record_trace: bool = False
    stop_on_converged: bool = True


@dataclass
class RunResult:
    """Outcome of a solver run.

    ``rounds`` counts solver rounds (or passes for the perceptron baseline,
    which also reports ``mistakes``).  ``final_margin`` is None when the
    returned separator is the zero vector.
    """

    separator: Vector
    rounds: int
    total_ops: int
    converged: bool
    final_margin: float | None
    mistakes: int | None = None
    trace: RunTrace | None = None


def init(dataset: Dataset) -> SolverState:
    """Round-zero state: uniform weights, both pseudoexamples primed."""
    counter = OpCounter()
    p0 = SimplexWeights.uniform(dataset.n)
    x0 = pseudoexample(p0, dataset, counter)
    return SolverState(
        t=0,
        w=np.zeros(dataset.d),
        w_sum=np.zeros(dataset.d),
        p=p0,
        p_prev=p0,
        x_prev=x0,
        x_prev2=x0.copy(),
        margins=np.zeros(dataset.n),
        cumulative_margins=np.zeros(dataset.n),
        p_history_sum=np.zeros(dataset.n),
        counter=counter,
    )


def md_update_reference(
    p_prev: SimplexWeights, margins: MarginVector, eta: float
) -> SimplexWeights:
    """Multiplicative reweighting p_i proportional to p_i * exp(-eta * margin_i).

    Computed in log space, so no exponent can overflow.  This is the closed
    form of the entropic proximal step: it minimizes
    eta * <p, margins> + KL(p, p_prev) over the simplex, and the incremental
    engine produces exactly this distribution with eta = 1 / r^2.
    """
    if eta <= 0.0:
        raise ValueError("eta must be positive")
    m = np.asarray(margins, dtype=float)
    if m.shape != p_prev.probs.shape:
        raise ValueError(f"length mismatch: {m.shape} vs {p_prev.probs.shape}")
    return SimplexWeights.from_log_weights(p_prev.log_probs - eta * m)


def step(state: SolverState, dataset: Dataset) -> SolverState:
    """Advance one round in place.

    Counted cost per round: 2 additions for the weight update, n inner
    products for the margins, n additions for the new pseudoexample.
    The reweighting and the cumulative-margin bookkeeping are scalar work.
    """
    c = state.counter
    w = axpy(2.0, state.x_prev, axpy(-1.0, state.x_prev2, state.w, c), c)
    margins = margin_vector(w, dataset, c)
    p_new = md_update_reference(state.p, margins, step_size(dataset))
    x_new = pseudoexample(p_new, dataset, c)

    state.t += 1
    state.w = w
    state.w_sum = state.w_sum + w  # average bookkeeping, not a counted op
    state.p_prev = state.p
    state.p = p_new
    state.p_history_sum = state.p_history_sum + p_new.probs
    state.x_prev2 = state.x_prev
    state.x_prev = x_new
    state.margins = margins
    state.cumulative_margins = state.cumulative_margins + margins
    return state


def closed_form_w(state: SolverState, dataset: Dataset) -> Vector:
    """Rebuild the current weight vector from the distribution history.

    For round t >= 1 the played weights satisfy
    w_t = sum_i (p_{t-1,i} + sum_{s<t} p_{s,i}) y_i x_i, which this
    evaluates directly from ``p_prev`` and ``p_history_sum``.  Reference
    path only: it never touches the shared counter.
    """
    if state.t < 1:
        raise ValueError("no rounds played yet")
    coeff = state.p_prev.probs + (state.p_history_sum - state.p.probs)
    return dataset.signed.T @ coeff


def run(dataset: Dataset, max_rounds: int, config: RunConfig = RunConfig()) -> RunResult:
    """Iterate rounds until the averaged weights separate or the budget ends.

    Convergence is read off the cumulative margins: their minimum is
    strictly positive exactly when the running average w_sum / t classifies
    every example correctly.  Non-convergence within ``max_rounds`` is a
    result, not an error.
    """
    if max_rounds < 1:
        raise ValueError("max_rounds must be at least 1")
    state = init(dataset)
    trace = RunTrace() if config.record_trace else None
    while state.t < max_rounds:
        step(state, dataset)
        if trace is not None:
            trace.records.append(
                TraceRecord(
                    t=state.t,
                    w=state.w.copy(),
                    probs=state.p.probs.copy(),
                    margins=state.margins.copy(),
                    p_change_l1=state.p.l1_distance(state.p_prev),
                    min_avg_margin=float(state.cumulative_margins.min()) / state.t,
                    inner_products=state.counter.inner_products,
                    additions=state.counter.additions,
                )
            )
        if config.stop_on_converged and state.cumulative_margins.min() > 0.0:
            break
    converged = bool(state.cumulative_margins.min() > 0.0)
    separator = state.w_sum / state.t
    final_margin = (
        margin_of(separator, dataset) if np.linalg.norm(separator) > 0.0 else None
    )
    return RunResult(
        separator=separator,
        rounds=state.t,
        total_ops=state.counter.total(),
        converged=converged,
        final_margin=final_margin,
        trace=trace,
    )
