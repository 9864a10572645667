"""Line grids, sampled functions on the frequency axis, and the scaling product.

Grid steps are powers of two, so every dyadic rescaling ``2^{-n} x_j`` of a
grid point is an exact binary fraction and can be tested for membership in
the grid without tolerance.
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .filters import Filter, dc_value, evaluate

DEFAULT_DEPTH = 30
FAST_DEPTH = 20


class ExtentError(ValueError):
    """A requested argument lies outside the sampled extent."""


def _is_dyadic_unit(q: Fraction) -> bool:
    """True when ``q == 2^-p`` for some integer ``p >= 0``."""
    return q.numerator == 1 and q.denominator & (q.denominator - 1) == 0


@dataclass(frozen=True)
class LineGrid:
    """Points ``x_j = j * step`` for ``j`` in ``[-extent/step, extent/step)``."""

    step: float
    extent: float

    def __post_init__(self):
        s = Fraction(self.step)
        if not _is_dyadic_unit(s):
            raise ValueError(f"grid step {self.step!r} is not of the form 2^-p")
        ratio = Fraction(self.extent) / s
        if ratio.denominator != 1 or ratio < 0:
            raise ValueError(f"extent {self.extent!r} is not a nonnegative multiple of step {self.step!r}")
        object.__setattr__(self, "step", float(self.step))
        object.__setattr__(self, "extent", float(self.extent))

    @property
    def half_count(self) -> int:
        return int(round(self.extent / self.step))

    @property
    def size(self) -> int:
        return 2 * self.half_count

    @property
    def points(self) -> np.ndarray:
        return np.arange(-self.half_count, self.half_count) * self.step

    def index(self, x) -> np.ndarray:
        """Integer sample index of each on-grid ``x``; -1 where ``x`` falls between samples."""
        pos = np.asarray(x, dtype=float) / self.step + self.half_count
        idx = np.floor(pos).astype(np.int64)
        return np.where(pos == idx, idx, -1)

    def contains(self, x) -> np.ndarray:
        xa = np.asarray(x, dtype=float)
        return (xa >= -self.extent) & (xa < self.extent)


class LineFunction:
    """Complex samples on a :class:`LineGrid` with rectangle-rule pairing.

    ``evaluator`` optionally computes the underlying function at arbitrary
    points; :meth:`sample` uses it for arguments that fall between samples.
    """

    def __init__(self, grid: LineGrid, values, evaluator: Callable | None = None):
        v = np.asarray(values, dtype=complex)
        if v.shape != (grid.size,):
            raise ValueError(f"expected {grid.size} values, got shape {v.shape}")
        self.grid = grid
        self.values = v
        self.evaluator = evaluator

    @property
    def points(self) -> np.ndarray:
        return self.grid.points

    def sample(self, x) -> np.ndarray:
        xa = np.asarray(x, dtype=float)
        if not np.all(self.grid.contains(xa)):
            bad = xa[~self.grid.contains(xa)]
            raise ExtentError(
                f"argument {bad.flat[0]!r} outside sampled extent [-{self.grid.extent}, {self.grid.extent})"
            )
        idx = self.grid.index(xa)
        out = np.empty(xa.shape, dtype=complex)
        on = idx >= 0
        out[on] = self.values[idx[on]]
        if not np.all(on):
            if self.evaluator is None:
                raise ExtentError("off-grid arguments and no evaluator to recompute them")
            out[~on] = self.evaluator(xa[~on])
        return out

    def at(self, x: float) -> complex:
        return complex(self.sample(np.array([x]))[0])

    def inner(self, other: LineFunction) -> complex:
        if other.grid != self.grid:
            raise ValueError("inner product of functions on different grids")
        return complex(self.grid.step * np.sum(self.values * np.conj(other.values)))

    def norm(self) -> float:
        return float(np.sqrt(self.grid.step * np.sum(np.abs(self.values) ** 2)))

    def with_values(self, values) -> LineFunction:
        return LineFunction(self.grid, values)

    def __sub__(self, other: LineFunction) -> LineFunction:
        if other.grid != self.grid:
            raise ValueError("grid mismatch")
        return LineFunction(self.grid, self.values - other.values)

    def __repr__(self) -> str:
        return f"LineFunction(step={self.grid.step}, extent={self.grid.extent})"


def truncated_product(m0: Filter, x, depth: int) -> np.ndarray:
    """``prod_{n=1}^{depth} m0(2^{-n} x)`` evaluated factor by factor."""
    xa = np.asarray(x, dtype=float)
    out = np.ones(xa.shape, dtype=complex)
    for n in range(1, depth + 1):
        out *= evaluate(m0, np.ldexp(xa, -n))
    return out


def scaling_product(m0: Filter, grid: LineGrid, depth: int = DEFAULT_DEPTH) -> LineFunction:
    """Samples of the scaling function as a depth-``depth`` truncated product.

    The returned function recomputes off-grid arguments from the same
    truncated product, so finer rescalings never need interpolation.
    """
    if depth < 1:
        raise ValueError("depth must be at least 1")
    dev = abs(dc_value(m0) - 1)
    if dev > 1e-10:
        raise ValueError(f"m0(1) = {dc_value(m0)} is not 1; the product does not converge")
    values = truncated_product(m0, grid.points, depth)
    return LineFunction(grid, values, lambda x: truncated_product(m0, x, depth))


def recursion_residual(m0: Filter, grid: LineGrid, depth: int = FAST_DEPTH) -> float:
    """Max of ``|phi_N(2x) - m0(x) phi_(N-1)(x)|`` over grid points with ``|2x| < extent``."""
    if depth < 2:
        raise ValueError("depth must be at least 2")
    x = grid.points
    phi_n = truncated_product(m0, x, depth)
    phi_prev = truncated_product(m0, x, depth - 1)
    keep = np.abs(2 * x) < grid.extent
    doubled = grid.index(2 * x[keep])
    lhs = phi_n[doubled]
    rhs = evaluate(m0, x[keep]) * phi_prev[keep]
    return float(np.max(np.abs(lhs - rhs))) if lhs.size else 0.0


def periodization(phi: LineFunction, K: int) -> tuple[np.ndarray, np.ndarray]:
    """Points of ``[0, 1)`` on the grid and ``sum_{k=-K}^{K-1} |phi(x+k)|^2`` there."""
    grid = phi.grid
    if K < 1:
        raise ValueError("K must be positive")
    if K > grid.extent:
        raise ValueError(f"K = {K} exceeds grid extent {grid.extent}")
    per_unit = int(round(1 / grid.step))
    base = grid.half_count  # index of x = 0
    energy = np.abs(phi.values) ** 2
    total = np.zeros(per_unit)
    for k in range(-K, K):
        start = base + k * per_unit
        total += energy[start : start + per_unit]
    return grid.points[base : base + per_unit], total


def normalization_residual(phi: LineFunction, K: int) -> float:
    _, total = periodization(phi, K)
    return float(np.max(np.abs(total - 1.0)))


def haar_closed_form(x) -> np.ndarray:
    """``e^{pi i x} sin(pi x)/(pi x)``, the limit of the Haar product."""
    xa = np.asarray(x, dtype=float)
    return np.exp(1j * np.pi * np.mod(xa, 2.0)) * np.sinc(xa)


LINE_HEADER = "x,re,im"


def format_line_function(f: LineFunction) -> str:
    rows = [LINE_HEADER]
    rows += [f"{x:.17g},{v.real:.17g},{v.imag:.17g}" for x, v in zip(f.points, f.values)]
    return "\n".join(rows) + "\n"


def parse_line_function(text: str) -> LineFunction:
    """Inverse of :func:`format_line_function`; the grid is inferred from the x column."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0].strip() != LINE_HEADER:
        raise ValueError(f"line 1: expected header {LINE_HEADER!r}")
    try:
        data = np.array([[float(t) for t in ln.split(",")] for ln in lines[1:]], dtype=float)
    except ValueError:
        raise ValueError("non-numeric or ragged row") from None
    if data.ndim != 2 or data.shape[0] < 2 or data.shape[1] != 3:
        raise ValueError("need at least two rows of x,re,im")
    x = data[:, 0]
    grid = LineGrid(x[1] - x[0], -x[0])
    if grid.size != len(x) or not np.array_equal(grid.points, x):
        raise ValueError("x column is not a symmetric dyadic grid")
    return LineFunction(grid, data[:, 1] + 1j * data[:, 2])
