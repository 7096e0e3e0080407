"""Domain types and counted vector arithmetic shared by all solvers.

Vectors are plain 1-d float64 numpy arrays.  Every vector operation the
benchmark charges for (an inner product or a scaled vector addition in R^d)
goes through :func:`inner`, :func:`axpy`, :func:`margin_vector` or
:func:`pseudoexample`, which tally one unit per operation on an
:class:`OpCounter`.  Scalar work (exponentials, normalization, minima over
n scalars) is free by convention.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

Vector = np.ndarray
"""A point or weight vector: 1-d float64 array of length d >= 1."""

MarginVector = np.ndarray
"""Per-example signed margins: entry i is y_i * <w, x_i>."""


def as_vector(coords) -> Vector:
    """Coerce to a finite, non-empty 1-d float64 array."""
    v = np.asarray(coords, dtype=float)
    if v.ndim != 1 or v.size < 1:
        raise ValueError(f"vector must be 1-d and non-empty, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError("vector coordinates must be finite")
    return v


@dataclass
class OpCounter:
    """Tally of counted vector operations.

    One unit is one inner product or one (scaled) vector addition between
    two vectors in R^d.  Counts never decrease, and identical inputs always
    produce identical totals.
    """

    inner_products: int = 0
    additions: int = 0

    def add_inner(self, k: int = 1) -> None:
        if k < 0:
            raise ValueError("op counts only increase")
        self.inner_products += k

    def add_additions(self, k: int = 1) -> None:
        if k < 0:
            raise ValueError("op counts only increase")
        self.additions += k

    def total(self) -> int:
        return self.inner_products + self.additions


def _row_norms(X: np.ndarray) -> np.ndarray:
    # scaled so neither x**2 underflow nor overflow corrupts tiny/huge rows
    scale = np.abs(X).max(axis=1)
    safe = np.where(scale > 0.0, scale, 1.0)
    scaled = X / safe[:, None]
    norms = safe * np.sqrt((scaled * scaled).sum(axis=1))
    norms[scale == 0.0] = 0.0
    return norms


@dataclass(frozen=True)
class LabeledExample:
    """A feature vector with a binary label in {+1, -1}."""

    x: Vector
    y: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "x", as_vector(self.x))
        if self.y not in (1, -1):
            raise ValueError(f"label must be +1 or -1, got {self.y!r}")
        object.__setattr__(self, "y", int(self.y))


class Dataset:
    """An ordered collection of labeled points sharing one dimension.

    Attributes:
        examples: tuple of :class:`LabeledExample`.
        X: (n, d) feature matrix, row i holds x_i.
        y: (n,) float label vector.
        signed: (n, d) matrix with row i equal to y_i * x_i.
        radius: max_i ||x_i||, the tightest valid norm bound (always > 0).
    """

    def __init__(self, examples) -> None:
        examples = tuple(
            e if isinstance(e, LabeledExample) else LabeledExample(*e)
            for e in examples
        )
        if not examples:
            raise ValueError("dataset needs at least one example")
        d = examples[0].x.size
        for e in examples:
            if e.x.size != d:
                raise ValueError(
                    f"all examples must share one dimension, got {e.x.size} != {d}"
                )
        self.examples = examples
        self.X = np.stack([e.x for e in examples])
        self.y = np.array([float(e.y) for e in examples])
        self.signed = self.y[:, None] * self.X
        self.radius = float(_row_norms(self.X).max())
        if not math.isfinite(self.radius):
            raise ValueError("point norms overflow the float range")
        if self.radius <= 0.0:
            raise ValueError("radius must be positive; every point sits at the origin")

    @classmethod
    def from_arrays(cls, X, y) -> "Dataset":
        X = np.asarray(X, dtype=float)
        y = np.asarray(y)
        if X.ndim != 2 or X.shape[0] != y.shape[0]:
            raise ValueError(f"incompatible shapes {X.shape} and {y.shape}")
        return cls([LabeledExample(row, int(label)) for row, label in zip(X, y)])

    @property
    def n(self) -> int:
        return len(self.examples)

    @property
    def d(self) -> int:
        return self.X.shape[1]

    def __len__(self) -> int:
        return len(self.examples)


@dataclass(frozen=True)
class SimplexWeights:
    """A distribution over the n examples.

    ``log_probs`` is the source of truth and stays finite under arbitrary
    multiplicative reweighting; ``probs`` is the exponentiated cache.
    Normalization happens in log space with the max exponent subtracted
    first, so updates cannot overflow.
    """

    log_probs: np.ndarray
    probs: np.ndarray

    @classmethod
    def uniform(cls, n: int) -> "SimplexWeights":
        if n < 1:
            raise ValueError("need at least one example")
        lp = np.full(n, -math.log(n))
        return cls(log_probs=lp, probs=np.exp(lp))

    @classmethod
    def from_log_weights(cls, log_weights) -> "SimplexWeights":
        """Normalize unnormalized log weights into a distribution."""
        lw = np.asarray(log_weights, dtype=float)
        if lw.ndim != 1 or lw.size < 1:
            raise ValueError(f"log weights must be 1-d and non-empty, got {lw.shape}")
        if not np.all(np.isfinite(lw)):
            raise ValueError("log weights must be finite")
        shifted = lw - lw.max()
        raw = np.exp(shifted)
        z = float(raw.sum())
        return cls(log_probs=shifted - math.log(z), probs=raw / z)

    def l1_distance(self, other: "SimplexWeights") -> float:
        return float(np.abs(self.probs - other.probs).sum())

    def __len__(self) -> int:
        return self.probs.size


def inner(a: Vector, b: Vector, counter: OpCounter) -> float:
    """Counted inner product <a, b>: one unit."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    counter.add_inner()
    return float(a @ b)


def axpy(alpha: float, a: Vector, b: Vector, counter: OpCounter) -> Vector:
    """Counted scaled addition alpha * a + b: one unit."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    counter.add_additions()
    return alpha * a + b


def margin_vector(w: Vector, dataset: Dataset, counter: OpCounter) -> MarginVector:
    """All signed margins y_i * <w, x_i>: n counted inner products."""
    w = np.asarray(w, dtype=float)
    if w.shape != (dataset.d,):
        raise ValueError(f"dimension mismatch: {w.shape} vs ({dataset.d},)")
    counter.add_inner(dataset.n)
    return dataset.signed @ w


def margin_of(w: Vector, dataset: Dataset) -> float:
    """Worst-case normalized signed margin min_i y_i <w, x_i> / ||w||.

    Positive exactly when w strictly separates the data; negative values
    flag misclassified points.  Diagnostic only, never counted.
    """
    w = np.asarray(w, dtype=float)
    if w.shape != (dataset.d,):
        raise ValueError(f"dimension mismatch: {w.shape} vs ({dataset.d},)")
    norm = float(np.linalg.norm(w))
    if norm == 0.0:
        raise ValueError("margin undefined for the zero vector")
    return float((dataset.signed @ w).min() / norm)


def pseudoexample(p: SimplexWeights, dataset: Dataset, counter: OpCounter) -> Vector:
    """Weighted signed combination sum_i p_i y_i x_i: n counted additions."""
    if len(p) != dataset.n:
        raise ValueError(f"length mismatch: {len(p)} weights for {dataset.n} examples")
    counter.add_additions(dataset.n)
    return dataset.signed.T @ p.probs
