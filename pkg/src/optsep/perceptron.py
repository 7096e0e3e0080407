"""Cyclic perceptron baseline with identical operation accounting.

Every pass checks each example in index order, spending one counted inner
product per check, and adds y_i x_i to the weights on a violated margin
(margin <= 0), spending one counted addition.  The run ends with the first
pass that makes no mistake; that clean verification pass is part of the op
count, matching the convention used for the optimistic solver.

The adversarial benchmark family needs billions of counted checks before
the baseline converges, so :func:`perceptron_run` drives a numba kernel
that tracks all n signed margins through the Gram matrix of the signed
examples (each check becomes a lookup, each mistake an O(n) update).
:func:`perceptron_run_reference` is the literal check-then-update loop over
the counted core ops; both paths produce identical counts and weights.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from optsep.core import Dataset, OpCounter, Vector, axpy, inner, margin_of
from optsep.optimistic import RunResult

_kernel_cache = None


def _kernel():
    """Compile the pass loop lazily so importing the package stays cheap."""
    global _kernel_cache
    if _kernel_cache is None:
        import numba

        @numba.njit(cache=True)
        def pass_loop(signed, gram, max_passes):  # pragma: no cover - compiled
            n, d = signed.shape
            margins = np.zeros(n)
            w = np.zeros(d)
            mistakes = 0
            passes = 0
            converged = False
            for _ in range(max_passes):
                passes += 1
                clean = True
                for i in range(n):
                    if margins[i] <= 0.0:
                        clean = False
                        mistakes += 1
                        for j in range(d):
                            w[j] += signed[i, j]
                        for j in range(n):
                            margins[j] += gram[i, j]
                if clean:
                    converged = True
                    break
            return w, passes, mistakes, converged

        _kernel_cache = pass_loop
    return _kernel_cache


def pass_bound(radius: float, gamma: float) -> int:
    """Pass budget guaranteed to suffice on data with max margin gamma.

    The classical mistake bound caps mistakes at (r / gamma)^2 and every
    pass before the final clean one makes at least one mistake.
    """
    if gamma <= 0.0:
        raise ValueError("pass bound needs a positive margin")
    return math.ceil((radius / gamma) ** 2) + 1


@dataclass
class PerceptronState:
    """Mutable state of the literal pass loop."""

    w: Vector
    pass_index: int
    mistakes: int
    counter: OpCounter


def _result(dataset: Dataset, w, passes: int, mistakes: int, converged: bool,
            counter: OpCounter) -> RunResult:
    final_margin = margin_of(w, dataset) if np.linalg.norm(w) > 0.0 else None
    return RunResult(
        separator=w,
        rounds=passes,
        total_ops=counter.total(),
        converged=converged,
        final_margin=final_margin,
        mistakes=mistakes,
    )


def perceptron_run(dataset: Dataset, max_passes: int) -> RunResult:
    """Run cyclic passes until a clean pass or the pass budget is spent."""
    if max_passes < 1:
        raise ValueError("max_passes must be at least 1")
    gram = dataset.signed @ dataset.signed.T
    w, passes, mistakes, converged = _kernel()(dataset.signed, gram, max_passes)
    counter = OpCounter()
    counter.add_inner(passes * dataset.n)
    counter.add_additions(mistakes)
    return _result(dataset, w, passes, mistakes, bool(converged), counter)


def perceptron_run_reference(dataset: Dataset, max_passes: int) -> RunResult:
    """Literal check-then-update loop through the counted core ops.

    Same contract and identical results as :func:`perceptron_run`; kept as
    the definitional path that the fast kernel is validated against.
    """
    if max_passes < 1:
        raise ValueError("max_passes must be at least 1")
    state = PerceptronState(
        w=np.zeros(dataset.d), pass_index=0, mistakes=0, counter=OpCounter()
    )
    converged = False
    while state.pass_index < max_passes and not converged:
        state.pass_index += 1
        clean = True
        for example in dataset.examples:
            if example.y * inner(state.w, example.x, state.counter) <= 0.0:
                state.w = axpy(float(example.y), example.x, state.w, state.counter)
                state.mistakes += 1
                clean = False
        converged = clean
    return _result(
        dataset, state.w, state.pass_index, state.mistakes, converged, state.counter
    )
