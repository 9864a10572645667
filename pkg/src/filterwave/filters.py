"""Quadrature mirror filters on the circle.

A filter is a function on the unit circle addressed by fractional turns: the
point ``e^{2 pi i x}`` is written as the real number ``x``.  Two kinds exist:

* ``laurent`` -- a finite Laurent polynomial ``sum_k h_k z^k``;
* ``indicator`` -- ``sign * e^{2 pi i twist x} * chi(x mod 1)`` where ``chi``
  is the indicator of a union of half-open arcs ``[a, b)`` of ``[0, 1)``.

The twisted indicator form is closed under :func:`conjugate_filter`, so the
high-pass partner of the Shannon filter stays exactly evaluable.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

QMF_TOLERANCE = 1e-10
QMF_GRID = 4096

LAURENT = "laurent"
INDICATOR = "indicator"


class FilterError(ValueError):
    """Raised for malformed filters or filters failing a required check."""


class FilterParseError(FilterError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


@dataclass(frozen=True)
class Filter:
    kind: str
    coefficients: tuple[complex, ...] = ()
    offset: int = 0
    arcs: tuple[tuple[float, float], ...] = ()
    twist: int = 0
    sign: int = 1

    @property
    def kmin(self) -> int:
        return self.offset

    @property
    def kmax(self) -> int:
        return self.offset + len(self.coefficients) - 1

    @property
    def taps(self) -> np.ndarray:
        return np.asarray(self.coefficients, dtype=complex)

    def __call__(self, x):
        return evaluate(self, x)


def laurent_filter(coefficients: Sequence[complex], offset: int = 0) -> Filter:
    """Build a Laurent filter ``sum_k h_k z^k`` with ``h_offset`` first.

    Leading and trailing zeros are trimmed and the offset shifted to match,
    so two filters describing the same polynomial compare equal.
    """
    coeffs = [complex(c) for c in coefficients]
    if not coeffs:
        raise FilterError("a laurent filter needs at least one coefficient")
    lo = 0
    while lo < len(coeffs) and coeffs[lo] == 0:
        lo += 1
    if lo == len(coeffs):
        raise FilterError("all coefficients are zero")
    hi = len(coeffs)
    while coeffs[hi - 1] == 0:
        hi -= 1
    return Filter(LAURENT, tuple(coeffs[lo:hi]), int(offset) + lo)


def _normalize_arcs(arcs: Sequence[tuple[float, float]]) -> tuple[tuple[float, float], ...]:
    cleaned = []
    for a, b in arcs:
        a, b = float(a), float(b)
        if not (0.0 <= a < b <= 1.0):
            raise FilterError(f"arc [{a}, {b}) is not inside [0, 1)")
        cleaned.append((a, b))
    cleaned.sort()
    merged: list[tuple[float, float]] = []
    for a, b in cleaned:
        if merged and a < merged[-1][1]:
            raise FilterError("arcs overlap")
        if merged and a == merged[-1][1]:
            merged[-1] = (merged[-1][0], b)
        else:
            merged.append((a, b))
    return tuple(merged)


def indicator_filter(arcs: Sequence[tuple[float, float]], twist: int = 0, sign: int = 1) -> Filter:
    """Filter equal to ``sign * e^{2 pi i twist x}`` on the given arcs, 0 elsewhere."""
    if sign not in (1, -1):
        raise FilterError("sign must be +1 or -1")
    return Filter(INDICATOR, arcs=_normalize_arcs(arcs), twist=int(twist), sign=sign)


_DB4 = tuple(
    v / 8
    for v in (1 + math.sqrt(3), 3 + math.sqrt(3), 3 - math.sqrt(3), 1 - math.sqrt(3))
)

BUILTIN_NAMES = ("haar", "db4", "shannon")


def builtin_filter(name: str) -> Filter:
    if name == "haar":
        return laurent_filter([0.5, 0.5], 0)
    if name == "db4":
        return laurent_filter(_DB4, 0)
    if name == "shannon":
        # right half-circle; x = 1/4 excluded, x = 3/4 included
        return indicator_filter([(0.0, 0.25), (0.75, 1.0)])
    raise KeyError(f"unknown builtin filter {name!r}; choose from {', '.join(BUILTIN_NAMES)}")


def _unit(turns):
    # turns already reduced mod 1, so large arguments lose no phase accuracy
    return np.exp(2j * np.pi * turns)


def _in_arcs(arcs, x):
    t = np.mod(x, 1.0)
    t = np.where(t >= 1.0, 0.0, t)
    inside = np.zeros(np.shape(t), dtype=bool)
    for a, b in arcs:
        inside |= (t >= a) & (t < b)
    return inside


def evaluate(filt: Filter, x):
    """Value of ``filt`` at ``e^{2 pi i x}``; ``x`` may be a scalar or array."""
    xa = np.asarray(x, dtype=float)
    if filt.kind == LAURENT:
        out = np.zeros(xa.shape, dtype=complex)
        for k, h in zip(range(filt.offset, filt.kmax + 1), filt.coefficients):
            out += h * _unit(np.mod(k * xa, 1.0))
    else:
        out = _in_arcs(filt.arcs, xa).astype(complex)
        if filt.twist:
            out *= _unit(np.mod(filt.twist * xa, 1.0))
        if filt.sign != 1:
            out *= filt.sign
    return out[()] if out.ndim == 0 else out


def dc_value(filt: Filter) -> complex:
    """``m(1)``, the filter at ``z = 1``."""
    if filt.kind == LAURENT:
        return complex(sum(filt.coefficients))
    return complex(evaluate(filt, 0.0))


def qmf_residual(filt: Filter, grid_size: int = QMF_GRID) -> float:
    """Max deviation of ``|m(z)|^2 + |m(-z)|^2`` from 1 over ``grid_size`` circle points."""
    if grid_size <= 0 or grid_size % 2:
        raise ValueError("grid_size must be a positive even integer")
    x = np.arange(grid_size) / grid_size
    total = np.abs(evaluate(filt, x)) ** 2 + np.abs(evaluate(filt, x + 0.5)) ** 2
    return float(np.max(np.abs(total - 1.0)))


def is_scaling_filter(filt: Filter, tol: float = QMF_TOLERANCE) -> bool:
    return abs(dc_value(filt) - 1) <= tol and qmf_residual(filt) <= tol


def require_scaling_filter(filt: Filter, tol: float = QMF_TOLERANCE) -> None:
    dev = abs(dc_value(filt) - 1)
    if dev > tol:
        raise FilterError(f"m0(1) differs from 1 by {dev:.3g}")
    res = qmf_residual(filt)
    if res > tol:
        raise FilterError(f"QMF residual {res:.3g} exceeds {tol:g}")


def _shift_half(arcs):
    shifted = []
    for a, b in arcs:
        a2, b2 = a + 0.5, b + 0.5
        if b2 <= 1.0:
            shifted.append((a2, b2))
        elif a2 >= 1.0:
            shifted.append((a2 - 1.0, b2 - 1.0))
        else:
            shifted.append((a2, 1.0))
            shifted.append((0.0, b2 - 1.0))
    return shifted


def conjugate_filter(m0: Filter) -> Filter:
    """The high-pass partner ``m1(z) = z * conj(m0(-z))``."""
    if m0.kind == LAURENT:
        # g_n = (-1)^(1-n) conj(h_(1-n)), n running from 1 - kmax to 1 - kmin
        coeffs = []
        for n in range(1 - m0.kmax, 2 - m0.kmin):
            h = m0.coefficients[1 - n - m0.offset]
            coeffs.append((-1) ** (1 - n) * h.conjugate())
        return laurent_filter(coeffs, 1 - m0.kmax)
    # z conj(sign e^{2pi i t(x+1/2)} chi(x+1/2)) = sign (-1)^t e^{2pi i (1-t) x} chi(x+1/2)
    sign = m0.sign * (-1) ** (m0.twist % 2)
    return indicator_filter(_shift_half(m0.arcs), twist=1 - m0.twist, sign=sign)


def parse_filter(text: str) -> Filter:
    """Read the line-oriented filter format (``offset <k>`` or ``arcs`` header)."""
    lines = text.splitlines()
    if not lines or not lines[0].strip():
        raise FilterParseError(1, "missing 'offset <integer>' or 'arcs' header")
    head = lines[0].split()
    body = [(i + 2, ln.split()) for i, ln in enumerate(lines[1:]) if ln.strip()]
    if head[0] == "offset":
        if len(head) != 2:
            raise FilterParseError(1, "expected 'offset <integer>'")
        try:
            offset = int(head[1])
        except ValueError:
            raise FilterParseError(1, f"offset {head[1]!r} is not an integer") from None
        coeffs = []
        for lineno, tok in body:
            if len(tok) != 2:
                raise FilterParseError(lineno, "expected '<re> <im>'")
            try:
                coeffs.append(complex(float(tok[0]), float(tok[1])))
            except ValueError:
                raise FilterParseError(lineno, "non-numeric coefficient") from None
        if not coeffs:
            raise FilterParseError(len(lines) + 1, "no coefficients")
        try:
            return laurent_filter(coeffs, offset)
        except FilterError as exc:
            raise FilterParseError(2, str(exc)) from None
    if head == ["arcs"]:
        arcs = []
        for lineno, tok in body:
            if len(tok) != 2:
                raise FilterParseError(lineno, "expected '<a> <b>'")
            try:
                a, b = float(tok[0]), float(tok[1])
            except ValueError:
                raise FilterParseError(lineno, "non-numeric arc endpoint") from None
            if not 0.0 <= a < b <= 1.0:
                raise FilterParseError(lineno, f"arc [{a}, {b}) is not inside [0, 1)")
            arcs.append((a, b))
        if not arcs:
            raise FilterParseError(len(lines) + 1, "no arcs")
        try:
            return indicator_filter(arcs)
        except FilterError as exc:
            raise FilterParseError(2, str(exc)) from None
    raise FilterParseError(1, "missing 'offset <integer>' or 'arcs' header")


def serialize_filter(filt: Filter) -> str:
    if filt.kind == LAURENT:
        rows = [f"offset {filt.offset}"]
        rows += [f"{c.real:.17g} {c.imag:.17g}" for c in filt.coefficients]
    else:
        if filt.twist or filt.sign != 1:
            raise FilterError("twisted indicator filters have no file representation")
        rows = ["arcs"] + [f"{a:.17g} {b:.17g}" for a, b in filt.arcs]
    return "\n".join(rows) + "\n"


def load_filter(path) -> Filter:
    with open(path, encoding="utf-8") as fh:
        return parse_filter(fh.read())


def save_filter(filt: Filter, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_filter(filt))
