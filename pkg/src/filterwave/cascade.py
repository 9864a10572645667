"""Multilevel analysis/synthesis pyramid built from the filter isometries.

Analysis repeatedly applies ``S0*`` (approximation) and ``S1*`` (detail);
synthesis undoes it with ``a = S0 a' + S1 d``.  Windows grow and shrink with
the operators, there is no boundary extension, so reconstruction is exact up
to rounding for any QMF pair.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

import numpy as np

from .circle_space import CircleFunction, apply_S, apply_S_adjoint, norm
from .filters import LAURENT, Filter, FilterError, conjugate_filter, require_scaling_filter


@dataclass
class Pyramid:
    approximation: CircleFunction
    details: list[CircleFunction] = field(default_factory=list)

    @property
    def levels(self) -> int:
        return len(self.details)

    def energy(self) -> float:
        return norm(self.approximation) ** 2 + sum(norm(d) ** 2 for d in self.details)


def _check_pair(m0: Filter, m1: Filter) -> None:
    if m0.kind != LAURENT or m1.kind != LAURENT:
        raise FilterError("the pyramid needs laurent filters")
    require_scaling_filter(m0)
    if conjugate_filter(m0) != m1:
        raise FilterError("m1 is not the conjugate filter of m0")


def analyze(m0: Filter, m1: Filter, signal: CircleFunction, levels: int) -> Pyramid:
    _check_pair(m0, m1)
    if levels < 1:
        raise ValueError("levels must be at least 1")
    approx = signal
    details = []
    for _ in range(levels):
        details.append(apply_S_adjoint(m1, approx))
        approx = apply_S_adjoint(m0, approx)
    return Pyramid(approx, details)


def synthesize(m0: Filter, m1: Filter, pyramid: Pyramid, levels: int | None = None) -> CircleFunction:
    _check_pair(m0, m1)
    if levels is not None and levels != pyramid.levels:
        raise ValueError(f"pyramid has {pyramid.levels} levels, expected {levels}")
    if pyramid.levels < 1:
        raise ValueError("pyramid has no detail levels")
    approx = pyramid.approximation
    for detail in reversed(pyramid.details):
        approx = apply_S(m0, approx) + apply_S(m1, detail)
    return approx


# -- files -------------------------------------------------------------------

SIGNAL_HEADER = ["k", "re", "im"]


class SignalFormatError(ValueError):
    pass


def _rows(f: CircleFunction) -> list[str]:
    return [f"{k},{c.real:.17g},{c.imag:.17g}" for k, c in f.as_dict().items()]


def format_signal(f: CircleFunction) -> str:
    return "\n".join([",".join(SIGNAL_HEADER), *_rows(f)]) + "\n"


def _parse_rows(lines: list[str], first_lineno: int) -> CircleFunction:
    if not lines or [h.strip() for h in lines[0].split(",")] != SIGNAL_HEADER:
        raise SignalFormatError(f"line {first_lineno}: expected header 'k,re,im'")
    coeffs: dict[int, complex] = {}
    for lineno, row in enumerate(csv.reader(lines[1:]), start=first_lineno + 1):
        if not row:
            continue
        if len(row) != 3:
            raise SignalFormatError(f"line {lineno}: expected 3 fields")
        try:
            k = int(row[0])
            value = complex(float(row[1]), float(row[2]))
        except ValueError:
            raise SignalFormatError(f"line {lineno}: non-numeric field") from None
        if k in coeffs:
            raise SignalFormatError(f"line {lineno}: duplicate index {k}")
        coeffs[k] = value
    if not coeffs:
        return CircleFunction.zero()
    lo, hi = min(coeffs), max(coeffs)
    dense = np.zeros(hi - lo + 1, dtype=complex)
    for k, v in coeffs.items():
        dense[k - lo] = v
    return CircleFunction(dense, lo)


def parse_signal(text: str) -> CircleFunction:
    return _parse_rows(text.splitlines(), 1)


def format_pyramid(p: Pyramid) -> str:
    out = io.StringIO()
    out.write("[approx]\n")
    out.write(format_signal(p.approximation))
    for level, d in enumerate(p.details, start=1):
        out.write(f"[detail {level}]\n")
        out.write(format_signal(d))
    return out.getvalue()


def parse_pyramid(text: str) -> Pyramid:
    sections: list[tuple[str, int, list[str]]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if stripped.startswith("[") and stripped.endswith("]"):
            sections.append((stripped[1:-1].strip(), lineno, []))
        elif stripped:
            if not sections:
                raise SignalFormatError(f"line {lineno}: data before any section header")
            sections[-1][2].append(line)
    if not sections or sections[0][0] != "approx":
        raise SignalFormatError("pyramid file must start with an [approx] section")
    approx = _parse_rows(sections[0][2], sections[0][1] + 1)
    details = []
    for expected, (name, lineno, body) in enumerate(sections[1:], start=1):
        parts = name.split()
        if len(parts) != 2 or parts[0] != "detail" or parts[1] != str(expected):
            raise SignalFormatError(f"line {lineno}: expected [detail {expected}]")
        details.append(_parse_rows(body, lineno + 1))
    return Pyramid(approx, details)
