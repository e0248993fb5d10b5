"""Continuity scans: entropy along a rule-generated sequence of quadratic portraits."""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .circle import Angle, as_angle
from .errors import InvalidGeneratedPortrait
from .portrait import CriticalPortrait, portrait_distance, quadratic_portrait, validate_portrait
from .thurston import thurston_entropy


@dataclass(frozen=True)
class ScanSpec:
    """theta_n = base + sign * offset * ratio**(-n) for n in [n_start, n_stop]."""

    target: CriticalPortrait
    base: Angle
    offset: Fraction
    ratio: int = 2
    sign: int = 1
    n_start: int = 1
    n_stop: int = 12
    tolerance: float = 0.05

    def __post_init__(self) -> None:
        if self.n_stop < self.n_start:
            raise ValueError("empty n range")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if self.ratio < 1:
            raise ValueError("ratio must be a positive integer")

    def theta(self, n: int) -> Angle:
        return as_angle(self.base.value + self.sign * Fraction(self.offset) / Fraction(self.ratio) ** n)

    def portrait(self, n: int) -> CriticalPortrait:
        try:
            p = quadratic_portrait(self.theta(n))
            return validate_portrait(p.degree, p.blocks)
        except Exception as exc:
            raise InvalidGeneratedPortrait(n, exc) from exc


@dataclass(frozen=True)
class ScanRow:
    n: int
    theta: Angle
    distance: Fraction
    entropy: float
    gap: float


@dataclass(frozen=True)
class ScanResult:
    spec: ScanSpec
    target_entropy: float
    rows: tuple[ScanRow, ...]

    @property
    def final_gap(self) -> float:
        return self.rows[-1].gap

    @property
    def converged(self) -> bool:
        return self.final_gap < self.spec.tolerance

    def tail_non_increasing(self, k: int = 4) -> bool:
        tail = [r.gap for r in self.rows[-k:]]
        return all(b <= a for a, b in zip(tail, tail[1:]))


def _row(args) -> ScanRow:
    spec, n, h0 = args
    p = spec.portrait(n)
    h = thurston_entropy(p).value
    return ScanRow(n, spec.theta(n), portrait_distance(p, spec.target), h, abs(h - h0))


def scan_continuity(spec: ScanSpec, workers: int = 1) -> ScanResult:
    # generate everything first so a bad n is reported before any entropy work
    ns = range(spec.n_start, spec.n_stop + 1)
    for n in ns:
        spec.portrait(n)
    h0 = thurston_entropy(spec.target).value
    jobs = [(spec, n, h0) for n in ns]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_row, jobs))
    else:
        rows = [_row(j) for j in jobs]
    if not all(math.isfinite(r.entropy) for r in rows):
        raise ArithmeticError("non-finite entropy in scan")
    return ScanResult(spec, h0, tuple(rows))
