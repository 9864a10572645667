"""The multiresolution ladder in the frequency domain.

Everything here lives on a :class:`~filterwave.scaling.LineGrid`.  The ladder
spaces are ``V_n = range(R_n)`` with

    (R_n f)(x) = 2^{-n/2} f(e^{2 pi i 2^{-n} x}) phi(2^{-n} x),

the dilation ``(D xi)(x) = sqrt(2) xi(2x)`` maps ``V_{n+1}`` onto ``V_n``, and
the wavelet ``psi(x) = m1(e^{pi i x}) phi(x/2)`` spans the detail space
``W_0 = V_1 - V_0`` through its integer modulations.
"""

from __future__ import annotations

import warnings
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from .circle_space import CircleFunction, basis_ek
from .filters import Filter, conjugate_filter, evaluate
from .scaling import DEFAULT_DEPTH, ExtentError, LineFunction, LineGrid, scaling_product

DEFAULT_WINDOW = 8


class DegenerateGridWarning(UserWarning):
    pass


@dataclass
class WaveletSystem:
    m0: Filter
    m1: Filter
    phi: LineFunction
    psi: LineFunction
    depth: int

    @property
    def grid(self) -> LineGrid:
        return self.phi.grid


def build_system(m0: Filter, grid: LineGrid, depth: int = DEFAULT_DEPTH) -> WaveletSystem:
    m1 = conjugate_filter(m0)
    phi = scaling_product(m0, grid, depth)
    if abs(phi.at(0.0) - 1) > 1e-10:
        raise ValueError("phi(0) is not 1")
    return WaveletSystem(m0, m1, phi, wavelet_psi(m0, m1, phi), depth)


def embed_Rn(n: int, f: CircleFunction, phi: LineFunction, grid: LineGrid | None = None) -> LineFunction:
    """``R_n f`` sampled on ``grid`` (default: ``phi``'s grid).

    ``phi`` is read from its samples where ``2^{-n} x`` is a grid point and
    recomputed by its evaluator elsewhere.
    """
    out = phi.grid if grid is None else grid
    t = np.ldexp(out.points, -n)
    if not np.all(phi.grid.contains(t)):
        raise ExtentError(f"R_{n} needs phi beyond its extent {phi.grid.extent}")
    values = 2.0 ** (-n / 2) * f(t) * phi.sample(t)
    return LineFunction(out, values)


def dilate(xi: LineFunction) -> LineFunction:
    """``(D xi)(x) = sqrt(2) xi(2x)`` on the grid of half the extent."""
    g = xi.grid
    half = g.half_count // 2
    if half == 0:
        warnings.warn("dilation of a grid this small leaves no samples", DegenerateGridWarning, stacklevel=2)
    out = LineGrid(g.step, half * g.step)
    idx = 2 * np.arange(-half, half) + g.half_count
    return LineFunction(out, np.sqrt(2.0) * xi.values[idx])


def wavelet_psi(m0: Filter, m1: Filter, phi: LineFunction) -> LineFunction:
    """``psi(x) = m1(e^{pi i x}) phi(x/2)`` on ``phi``'s grid.

    The half-turn factor is ``evaluate(m1, x/2)``: the square root of
    ``e^{2 pi i x}`` is fixed by the line coordinate, not by a branch cut.
    """
    if conjugate_filter(m0) != m1:
        raise ValueError("m1 is not the conjugate filter of m0")

    def psi_at(x):
        half = np.ldexp(np.asarray(x, dtype=float), -1)
        return evaluate(m1, half) * phi.sample(half)

    return LineFunction(phi.grid, psi_at(phi.grid.points), psi_at)


def basis_psi_jk(psi: LineFunction, j: int, k: int, grid: LineGrid | None = None) -> LineFunction:
    """``psi_{j,k}(x) = 2^{j/2} e^{-2 pi i k 2^j x} psi(2^j x)``.

    Default output grid: ``psi``'s grid for ``j <= 0``; for ``j > 0`` the grid
    shrunk by ``2^j`` so that every ``2^j x`` is still sampled.
    """
    if grid is None:
        grid = psi.grid if j <= 0 else LineGrid(psi.grid.step, (psi.grid.half_count >> j) * psi.grid.step)
    x = grid.points
    scaled = np.ldexp(x, j)
    if not np.all(psi.grid.contains(scaled)):
        raise ExtentError(f"psi_{{{j},{k}}} needs psi beyond its extent {psi.grid.extent}")
    phase = np.exp(-2j * np.pi * np.mod(k * scaled, 1.0))
    return LineFunction(grid, 2.0 ** (j / 2) * phase * psi.sample(scaled))


def gram_matrix(functions: Sequence[LineFunction]) -> np.ndarray:
    """Rectangle-rule Gram matrix; the lower triangle mirrors the upper exactly."""
    if not functions:
        return np.zeros((0, 0), dtype=complex)
    grid = functions[0].grid
    if any(f.grid != grid for f in functions):
        raise ValueError("gram_matrix needs every function on the same grid")
    n = len(functions)
    G = np.zeros((n, n), dtype=complex)
    for a in range(n):
        G[a, a] = functions[a].norm() ** 2
        for b in range(a + 1, n):
            G[a, b] = functions[a].inner(functions[b])
            G[b, a] = np.conj(G[a, b])
    return G


def wavelet_family(psi: LineFunction, js: Sequence[int], ks: Sequence[int], grid: LineGrid):
    """``[(j, k, psi_{j,k})]`` in row-major ``(j, k)`` order on ``grid``."""
    return [(j, k, basis_psi_jk(psi, j, k, grid)) for j in js for k in ks]


def _project(g: LineFunction, basis: Sequence[LineFunction]) -> np.ndarray:
    acc = np.zeros_like(g.values)
    for b in basis:
        acc += g.inner(b) * b.values
    return acc


def projection_V(m: int, g: LineFunction, system: WaveletSystem, K: int = DEFAULT_WINDOW) -> LineFunction:
    basis = [embed_Rn(m, basis_ek(k), system.phi, g.grid) for k in range(-K, K + 1)]
    return g.with_values(_project(g, basis))


def projection_W(n: int, g: LineFunction, system: WaveletSystem, K: int = DEFAULT_WINDOW) -> LineFunction:
    # D W_{n+1} = W_n, so W_n is spanned by the psi_{-n,k}
    basis = [basis_psi_jk(system.psi, -n, k, g.grid) for k in range(-K, K + 1)]
    return g.with_values(_project(g, basis))


def decomposition_residual(n: int, g: LineFunction, system: WaveletSystem, K: int = DEFAULT_WINDOW) -> float:
    """``||P_{V_{n+1}} g - P_{V_n} g - P_{W_n} g|| / ||g||`` with window-``K`` projections."""
    ng = g.norm()
    if ng == 0:
        return 0.0
    r = (
        projection_V(n + 1, g, system, K).values
        - projection_V(n, g, system, K).values
        - projection_W(n, g, system, K).values
    )
    return g.with_values(r).norm() / ng


def inverse_transform(xi: LineFunction) -> LineFunction:
    """Riemann-sum inverse transform ``step * sum_j xi(x_j) e^{2 pi i x_j t}``.

    Output lives on the reciprocal grid ``t_m = m / (N step)``; the centred
    sum is evaluated with an FFT.
    """
    g = xi.grid
    n = g.size
    if n == 0:
        return xi
    out_step = 1.0 / (n * g.step)
    out = LineGrid(out_step, (n // 2) * out_step)
    spectrum = np.fft.fftshift(np.fft.ifft(np.fft.ifftshift(xi.values))) * n * g.step
    return LineFunction(out, spectrum)
