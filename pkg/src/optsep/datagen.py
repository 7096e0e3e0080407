"""Dataset builders and CSV serialization.

The adversarial chain family embeds n points in R^n with a margin that
shrinks exponentially in n, which is what drives the benchmark comparison.
Random separable data with a prescribed margin floor covers the general
case.  CSV rows carry the label first, then the feature columns; no header
by default, UTF-8, LF line endings.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from optsep.core import Dataset, LabeledExample

_REJECTION_CAP = 1_000_000
_REJECTION_CHUNK = 512


@dataclass(frozen=True)
class DatasetSpec:
    """Parameters of a generated dataset.

    ``kind`` is "eq2" (the adversarial chain; d is forced to n) or
    "random_separable" (unit-ball points with |<w*, x>| >= margin_target).
    """

    kind: str
    n: int
    d: int = 0
    margin_target: float = 0.0
    seed: int = 0

    def __post_init__(self) -> None:
        if self.kind not in ("eq2", "random_separable"):
            raise ValueError(f"unknown dataset kind {self.kind!r}")
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if self.kind == "eq2" and self.d not in (0, self.n):
            raise ValueError("the chain family embeds n points in R^n; leave d unset")
        if self.kind == "random_separable":
            if self.d < 1:
                raise ValueError("d must be at least 1")
            if not 0.0 < self.margin_target < 1.0:
                raise ValueError("margin_target must lie in (0, 1)")


def generate(spec: DatasetSpec) -> Dataset:
    if spec.kind == "eq2":
        return gen_eq2(spec.n)
    return gen_random_separable(spec.n, spec.d, spec.margin_target, spec.seed)


def gen_eq2(n: int) -> Dataset:
    """Adversarial chain dataset in R^n.

    Point i (1-indexed) has its first i-1 coordinates equal to (-1)^i,
    coordinate i equal to (-1)^(i+1), zeros after, and label (-1)^(i+1).
    Separable for every n, but the margin decays like 2^-n, which forces
    the cyclic perceptron into exponentially many mistakes.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    X = np.zeros((n, n))
    y = np.empty(n, dtype=int)
    for i in range(1, n + 1):
        sign = -1.0 if i % 2 else 1.0  # (-1)^i
        X[i - 1, : i - 1] = sign
        X[i - 1, i - 1] = -sign
        y[i - 1] = int(-sign)
    return Dataset.from_arrays(X, y)


def gen_random_separable(n: int, d: int, margin_target: float, seed: int) -> Dataset:
    """Unit-ball points labeled by a hidden unit vector, margin enforced.

    Draws points uniformly from the unit ball, rejects any with
    |<w*, x>| < margin_target, and labels by the sign of the projection.
    Deterministic in ``seed``.  Raises RuntimeError when rejection fails
    within a million draws (margin_target too ambitious for d).
    """
    if n < 1 or d < 1:
        raise ValueError("n and d must be at least 1")
    if not 0.0 < margin_target < 1.0:
        raise ValueError("margin_target must lie in (0, 1)")
    rng = np.random.default_rng(seed)
    w_star = rng.standard_normal(d)
    while np.linalg.norm(w_star) == 0.0:
        w_star = rng.standard_normal(d)
    w_star /= np.linalg.norm(w_star)

    points: list[np.ndarray] = []
    draws = 0
    while len(points) < n:
        if draws >= _REJECTION_CAP:
            raise RuntimeError(
                f"rejection sampling failed after {draws} draws; "
                f"margin_target={margin_target} is too large for d={d}"
            )
        raw = rng.standard_normal((_REJECTION_CHUNK, d))
        lengths = np.linalg.norm(raw, axis=1)
        lengths[lengths == 0.0] = 1.0
        radii = rng.random(_REJECTION_CHUNK) ** (1.0 / d)
        batch = raw / lengths[:, None] * radii[:, None]
        draws += _REJECTION_CHUNK
        for x in batch:
            if abs(float(x @ w_star)) >= margin_target:
                points.append(x)
                if len(points) == n:
                    break
    labels = [1 if float(x @ w_star) > 0.0 else -1 for x in points]
    return Dataset([LabeledExample(x, label) for x, label in zip(points, labels)])


def write_csv(dataset: Dataset, path) -> None:
    """One example per row: label, then each coordinate as its shortest
    exact decimal (round-trips bit for bit)."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for example in dataset.examples:
            cells = [str(example.y)] + [repr(float(c)) for c in example.x]
            fh.write(",".join(cells) + "\n")


def read_csv(path, expect_header: bool = False) -> Dataset:
    """Parse a label-first CSV file into a dataset.

    Malformed rows (wrong arity, label outside {-1, 1, +1}, non-numeric or
    non-finite values) raise ValueError naming the offending line.
    """
    examples: list[LabeledExample] = []
    arity: int | None = None
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if lineno == 1 and expect_header:
                continue
            cells = line.rstrip("\r\n").split(",")
            if len(cells) < 2:
                raise ValueError(
                    f"line {lineno}: expected a label and at least one feature"
                )
            if arity is None:
                arity = len(cells)
            elif len(cells) != arity:
                raise ValueError(
                    f"line {lineno}: expected {arity} columns, got {len(cells)}"
                )
            try:
                label = int(cells[0])
            except ValueError:
                raise ValueError(
                    f"invalid label at line {lineno}: {cells[0]!r}"
                ) from None
            if label not in (1, -1):
                raise ValueError(f"invalid label at line {lineno}: {cells[0]!r}")
            coords = np.empty(len(cells) - 1)
            for j, cell in enumerate(cells[1:]):
                try:
                    coords[j] = float(cell)
                except ValueError:
                    raise ValueError(
                        f"line {lineno}: non-numeric value {cell!r}"
                    ) from None
            if not np.all(np.isfinite(coords)):
                raise ValueError(f"line {lineno}: non-finite feature value")
            examples.append(LabeledExample(coords, label))
    if not examples:
        raise ValueError(f"{path}: no examples found")
    return Dataset(examples)
