"""Runtime verification of the solver's regret and duality-gap guarantees.

Three inequalities are checked on recorded traces, each at every prefix
horizon T: the weight player's regret against the best fixed unit
comparator, the distribution player's regret against the best fixed
distribution, and the duality gap of the averaged play, which must shrink
like O(1/T).  The constants are pinned to the entropic setup the solver
uses: regularizer strong-convexity modulus 1 w.r.t. the l1 norm, divergence
ceiling ln n from the uniform start, step 1 / r^2.

A self-contained max-margin oracle (:func:`brute_force_margin`) supplies
the game value the gap is measured against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from optsep.core import Dataset, SimplexWeights, Vector
from optsep.optimistic import RunTrace

LAMBDA = 1.0
"""Strong-convexity modulus of negative entropy w.r.t. the l1 norm."""

BOUND_SLACK = 1e-9
"""Absolute slack absorbing float roundoff in all bound comparisons."""

_ORACLE_SEED = 0
_ORACLE_RESTARTS = 100
_ORACLE_ASCENT_ITERS = 150
_ORACLE_TOL = 1e-9


@dataclass(frozen=True)
class BoundReport:
    """LHS/RHS pairs of the three inequalities at horizon T."""

    learner_lhs: float
    learner_rhs: float
    data_lhs: float
    data_rhs: float
    gap_lhs: float
    gap_rhs: float
    T: int
    H: float
    lam: float
    eta: float

    def holds(self, slack: float = BOUND_SLACK) -> bool:
        return (
            self.learner_lhs <= self.learner_rhs + slack
            and self.data_lhs <= self.data_rhs + slack
            and self.gap_lhs <= self.gap_rhs + slack
        )


def entropy_ceiling(n: int) -> float:
    """ln n, the largest KL divergence from the uniform start."""
    return math.log(n)


def round_bound(n: int, r_squared: float, gamma: float) -> int:
    """Rounds after which the duality gap provably drops below gamma."""
    if gamma <= 0.0:
        raise ValueError("round bound needs a positive margin")
    return math.ceil((LAMBDA + 2.0 * entropy_ceiling(n) * r_squared)
                     / (2.0 * LAMBDA * gamma))


def _probs(p) -> np.ndarray:
    return p.probs if isinstance(p, SimplexWeights) else np.asarray(p, dtype=float)


def best_unit_comparator(p_history: Sequence, dataset: Dataset) -> Vector:
    """Unit vector maximizing the summed weighted margins over the history.

    The objective is linear in the comparator, so the maximizer over the
    unit ball is the normalized aggregate v / ||v|| with
    v = sum_t sum_i p_{t,i} y_i x_i.  Checking the learner bound against it
    therefore checks it against every unit comparator at once.
    """
    if len(p_history) == 0:
        raise ValueError("empty history")
    v = np.zeros(dataset.d)
    for p in p_history:
        v = v + dataset.signed.T @ _probs(p)
    norm = float(np.linalg.norm(v))
    if norm == 0.0:
        raise ValueError("degenerate history: aggregate pseudoexample is zero")
    return v / norm


def check_learner_bound(trace: RunTrace, dataset: Dataset) -> tuple[float, float]:
    """Weight player's regret inequality at the full horizon.

    lhs: margins granted to the best unit comparator minus margins actually
    collected.  rhs: 1/2 plus (r^2 / 2) times the summed squared l1 motion
    of the distribution.
    """
    if not trace.records:
        raise ValueError("empty trace")
    what = best_unit_comparator([rec.probs for rec in trace.records], dataset)
    margins_hat = dataset.signed @ what
    lhs = 0.0
    motion = 0.0
    for rec in trace.records:
        lhs += float(rec.probs @ margins_hat) - float(rec.probs @ rec.margins)
        motion += rec.p_change_l1**2
    rhs = 0.5 + 0.5 * dataset.radius**2 * motion
    return lhs, rhs


def check_data_bound(trace: RunTrace, dataset: Dataset, H: float) -> tuple[float, float]:
    """Distribution player's regret inequality at the full horizon.

    lhs: margins conceded by the played distributions minus the best fixed
    distribution in hindsight (the minimum coordinate of the summed
    margins).  rhs: H r^2 minus the same motion term the learner bound
    adds, so stacking the two bounds cancels it exactly.
    """
    if not trace.records:
        raise ValueError("empty trace")
    played = 0.0
    motion = 0.0
    summed = np.zeros(dataset.n)
    for rec in trace.records:
        played += float(rec.probs @ rec.margins)
        summed = summed + rec.margins
        motion += rec.p_change_l1**2
    lhs = played - float(summed.min())
    rhs = H * dataset.radius**2 - 0.5 * dataset.radius**2 * motion
    return lhs, rhs


def check_gap_bound(trace: RunTrace, dataset: Dataset) -> tuple[float, float]:
    """Duality gap of the averaged play at the full horizon.

    lhs: the game value (best achievable worst-case margin, from the
    brute-force oracle) minus the worst averaged margin.  rhs: the O(1/T)
    ceiling (1 + 2 ln(n) r^2) / (2 T).
    """
    if not trace.records:
        raise ValueError("empty trace")
    gamma = brute_force_margin(dataset)
    summed = np.zeros(dataset.n)
    for rec in trace.records:
        summed = summed + rec.margins
    T = trace.records[-1].t
    lhs = gamma - float(summed.min()) / T
    rhs = (LAMBDA + 2.0 * entropy_ceiling(dataset.n) * dataset.radius**2) / (
        2.0 * LAMBDA * T
    )
    return lhs, rhs


def annotate_trace(
    trace: RunTrace, dataset: Dataset, gamma: float | None = None
) -> BoundReport:
    """Fill the per-round bound columns of a trace and report the horizon.

    Every prefix 1..T is evaluated incrementally, so annotating a T-round
    trace costs O(T n) scalar work.
    """
    if not trace.records:
        raise ValueError("empty trace")
    if gamma is None:
        gamma = brute_force_margin(dataset)
    r2 = dataset.radius**2
    h = entropy_ceiling(dataset.n)
    aggregate = np.zeros(dataset.d)
    played = 0.0
    summed = np.zeros(dataset.n)
    motion = 0.0
    for rec in trace.records:
        aggregate = aggregate + dataset.signed.T @ rec.probs
        played += float(rec.probs @ rec.margins)
        summed = summed + rec.margins
        motion += rec.p_change_l1**2
        worst = float(summed.min())
        rec.learner_lhs = float(np.linalg.norm(aggregate)) - played
        rec.learner_rhs = 0.5 + 0.5 * r2 * motion
        rec.data_lhs = played - worst
        rec.data_rhs = h * r2 - 0.5 * r2 * motion
        rec.gap_lhs = gamma - worst / rec.t
        rec.gap_rhs = (LAMBDA + 2.0 * h * r2) / (2.0 * LAMBDA * rec.t)
    last = trace.records[-1]
    return BoundReport(
        learner_lhs=last.learner_lhs,
        learner_rhs=last.learner_rhs,
        data_lhs=last.data_lhs,
        data_rhs=last.data_rhs,
        gap_lhs=last.gap_lhs,
        gap_rhs=last.gap_rhs,
        T=last.t,
        H=h,
        lam=LAMBDA,
        eta=1.0 / r2,
    )


def _min_norm_point(signed: np.ndarray, tol: float, max_iter: int = 200_000) -> np.ndarray:
    """Point of smallest norm in the convex hull of the signed examples.

    Pairwise Frank-Wolfe sweep over the hull coefficients; its primal value
    min_i <z_i, u> / ||u|| and dual value ||u|| bracket the max margin, so
    termination at gap <= tol certifies the answer.  Returns the hull point
    u (possibly ~0 when the hull reaches the origin).
    """
    n = signed.shape[0]
    coeff = np.full(n, 1.0 / n)
    u = signed.T @ coeff
    for it in range(max_iter):
        if (it & 4095) == 4095:
            u = signed.T @ coeff  # shed accumulated drift
        grad = signed @ u
        norm = float(np.linalg.norm(u))
        if norm <= 1e-13:
            break
        if norm - float(grad.min()) / norm <= tol:
            break
        toward = int(np.argmin(grad))
        active = np.flatnonzero(coeff > 0.0)
        away = int(active[np.argmax(grad[active])])
        gap = float(grad[away] - grad[toward])
        direction = signed[toward] - signed[away]
        denom = float(direction @ direction)
        if gap <= 0.0 or denom <= 0.0:
            break
        delta = min(gap / denom, float(coeff[away]))
        coeff[away] -= delta
        coeff[toward] += delta
        u = u + delta * direction
    return signed.T @ coeff


def brute_force_margin(dataset: Dataset) -> float:
    """Best achievable worst-case margin over all unit weight vectors.

    Multi-restart projected supergradient ascent on the unit sphere
    explores the piecewise-linear objective min_i y_i <w, x_i>; the best
    direction is then refined through the equivalent polytope-distance
    problem, whose primal-dual gap certifies the value to 1e-9.  The
    result never exceeds the true optimum (it is the exact worst-case
    margin of an actual unit vector) and is <= 0 whenever no separator
    exists.  Intended for small instances (n up to ~20).
    """
    signed = dataset.signed
    n, d = signed.shape
    rng = np.random.default_rng(_ORACLE_SEED)
    W = rng.standard_normal((_ORACLE_RESTARTS, d))
    norms = np.linalg.norm(W, axis=1, keepdims=True)
    norms[norms == 0.0] = 1.0
    W /= norms

    best_value = -math.inf
    for k in range(1, _ORACLE_ASCENT_ITERS + 1):
        margins = W @ signed.T
        values = margins.min(axis=1)
        best_value = max(best_value, float(values.max()))
        supergrad = signed[margins.argmin(axis=1)]
        stepped = W + (1.0 / (dataset.radius * math.sqrt(k))) * supergrad
        norms = np.linalg.norm(stepped, axis=1, keepdims=True)
        # a step that exactly cancels a direction keeps the previous iterate,
        # so every evaluated value belongs to a genuine unit vector
        W = np.where(norms > 0.0, stepped / np.where(norms > 0.0, norms, 1.0), W)
    best_value = max(best_value, float((W @ signed.T).min(axis=1).max()))

    u = _min_norm_point(signed, tol=_ORACLE_TOL)
    norm = float(np.linalg.norm(u))
    if norm > 1e-12:
        best_value = max(best_value, float((signed @ (u / norm)).min()))
    return best_value
