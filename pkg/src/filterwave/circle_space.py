"""Discretized L^2 of the circle as finite windows of Fourier coefficients.

A :class:`CircleFunction` stores ``c_offset, ..., c_(offset+len-1)`` of
``f(z) = sum_k c_k z^k``.  Inner products are Parseval sums, so the isometry
and Cuntz identities for the filter operators hold to rounding error.
"""

from __future__ import annotations

import numpy as np

from .filters import LAURENT, Filter, FilterError, conjugate_filter

SQRT2 = np.sqrt(2.0)
DEFAULT_SEED = 7
RANDOM_WINDOW = (-16, 16)


class CircleFunction:
    __slots__ = ("coefficients", "offset")

    def __init__(self, coefficients, offset: int = 0):
        c = np.asarray(coefficients, dtype=complex).ravel()
        nz = np.flatnonzero(c)
        if nz.size == 0:
            c, offset = np.zeros(0, dtype=complex), 0
        else:
            offset = int(offset) + int(nz[0])
            c = c[nz[0] : nz[-1] + 1]
        c.setflags(write=False)
        self.coefficients = c
        self.offset = offset

    @classmethod
    def zero(cls) -> CircleFunction:
        return cls([], 0)

    @property
    def kmin(self) -> int:
        return self.offset

    @property
    def kmax(self) -> int:
        return self.offset + len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return len(self.coefficients) == 0

    def coefficient(self, k: int) -> complex:
        i = k - self.offset
        if 0 <= i < len(self.coefficients):
            return complex(self.coefficients[i])
        return 0j

    def as_dict(self) -> dict[int, complex]:
        return {self.offset + i: complex(c) for i, c in enumerate(self.coefficients)}

    def _aligned(self, other: CircleFunction):
        if self.is_zero() and other.is_zero():
            return np.zeros(0, complex), np.zeros(0, complex), 0
        lo = min(f.kmin for f in (self, other) if not f.is_zero())
        hi = max(f.kmax for f in (self, other) if not f.is_zero())
        a = np.zeros(hi - lo + 1, dtype=complex)
        b = np.zeros(hi - lo + 1, dtype=complex)
        if not self.is_zero():
            a[self.kmin - lo : self.kmax - lo + 1] = self.coefficients
        if not other.is_zero():
            b[other.kmin - lo : other.kmax - lo + 1] = other.coefficients
        return a, b, lo

    def __add__(self, other: CircleFunction) -> CircleFunction:
        a, b, lo = self._aligned(other)
        return CircleFunction(a + b, lo)

    def __sub__(self, other: CircleFunction) -> CircleFunction:
        a, b, lo = self._aligned(other)
        return CircleFunction(a - b, lo)

    def __mul__(self, scalar) -> CircleFunction:
        return CircleFunction(self.coefficients * complex(scalar), self.offset)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, CircleFunction):
            return NotImplemented
        return self.offset == other.offset and np.array_equal(self.coefficients, other.coefficients)

    def __repr__(self) -> str:
        return f"CircleFunction(offset={self.offset}, coefficients={self.coefficients!r})"

    def __call__(self, x):
        """Evaluate at ``e^{2 pi i x}`` by direct summation."""
        xa = np.asarray(x, dtype=float)
        out = np.zeros(xa.shape, dtype=complex)
        for i, c in enumerate(self.coefficients):
            k = self.offset + i
            out += c * np.exp(2j * np.pi * np.mod(k * xa, 1.0))
        return out[()] if out.ndim == 0 else out


def basis_ek(k: int) -> CircleFunction:
    return CircleFunction([1.0], k)


def inner(f: CircleFunction, g: CircleFunction) -> complex:
    a, b, _ = f._aligned(g)
    return complex(np.sum(a * np.conj(b)))


def norm(f: CircleFunction) -> float:
    return float(np.sqrt(np.sum(np.abs(f.coefficients) ** 2)))


def _require_laurent(m: Filter) -> None:
    if m.kind != LAURENT:
        raise FilterError("coefficient-window operators need a laurent filter")


def apply_S(m: Filter, f: CircleFunction) -> CircleFunction:
    """``(S f)(z) = sqrt(2) m(z) f(z^2)``; window [a, b] maps to [2a+kmin, 2b+kmax]."""
    _require_laurent(m)
    if f.is_zero():
        return CircleFunction.zero()
    up = np.zeros(2 * len(f.coefficients) - 1, dtype=complex)
    up[::2] = f.coefficients
    return CircleFunction(SQRT2 * np.convolve(up, m.taps), 2 * f.offset + m.kmin)


def apply_S_adjoint(m: Filter, f: CircleFunction) -> CircleFunction:
    """``a_k = sqrt(2) sum_n conj(h_(n-2k)) c_n``."""
    _require_laurent(m)
    if f.is_zero():
        return CircleFunction.zero()
    # r[i] = sum_n conj(h_(n-m)) c_n at m = f.kmin - m.kmax + i
    r = np.convolve(f.coefficients, np.conj(m.taps[::-1]))
    first = f.kmin - m.kmax
    start = first % 2
    return CircleFunction(SQRT2 * r[start::2], (first + start) // 2)


def random_circle_function(rng: np.random.Generator, window=RANDOM_WINDOW) -> CircleFunction:
    """Unit-norm function with i.i.d. uniform complex coefficients on ``window``."""
    lo, hi = window
    n = hi - lo + 1
    c = rng.uniform(-1, 1, n) + 1j * rng.uniform(-1, 1, n)
    c /= np.sqrt(np.sum(np.abs(c) ** 2))
    return CircleFunction(c, lo)


CUNTZ_CHECKS = (
    "isometry_S0",
    "isometry_S1",
    "cross_S0adj_S1",
    "cross_S1adj_S0",
    "completeness",
    "adjoint_S0",
    "adjoint_S1",
    "range_orthogonality",
)


def cuntz_residuals(m0: Filter, m1: Filter, trials: int = 100, seed: int = DEFAULT_SEED) -> dict[str, float]:
    """Worst relative residuals of the Cuntz relations over seeded random vectors.

    The filters need not satisfy the QMF identity (a failing filter shows up
    as large residuals), but ``m1`` must be the conjugate of ``m0``.
    """
    _require_laurent(m0)
    _require_laurent(m1)
    if conjugate_filter(m0) != m1:
        raise FilterError("m1 is not the conjugate filter of m0")
    if trials < 1:
        raise ValueError("trials must be positive")
    rng = np.random.default_rng(seed)
    worst = dict.fromkeys(CUNTZ_CHECKS, 0.0)

    def bump(name, value):
        worst[name] = max(worst[name], float(value))

    for _ in range(trials):
        f = random_circle_function(rng)
        g = random_circle_function(rng)
        nf, ng = norm(f), norm(g)
        s0f, s1f = apply_S(m0, f), apply_S(m1, f)
        bump("isometry_S0", norm(apply_S_adjoint(m0, s0f) - f) / nf)
        bump("isometry_S1", norm(apply_S_adjoint(m1, s1f) - f) / nf)
        bump("cross_S0adj_S1", norm(apply_S_adjoint(m0, s1f)) / nf)
        bump("cross_S1adj_S0", norm(apply_S_adjoint(m1, s0f)) / nf)
        recon = apply_S(m0, apply_S_adjoint(m0, f)) + apply_S(m1, apply_S_adjoint(m1, f))
        bump("completeness", norm(recon - f) / nf)
        bump("adjoint_S0", abs(inner(s0f, g) - inner(f, apply_S_adjoint(m0, g))) / (nf * ng))
        bump("adjoint_S1", abs(inner(s1f, g) - inner(f, apply_S_adjoint(m1, g))) / (nf * ng))
        bump("range_orthogonality", abs(inner(s0f, apply_S(m1, g))) / (nf * ng))
    return worst
