"""
Level recurrences for concatenated loss protection.

A *failure function* maps the loss probability of the qubits one level
down to the loss probability of the logical qubit they encode. Anything
callable on floats works; :class:`~pentaloss.poly.LossPolynomial` values
additionally evaluate exactly on fractions.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

import numpy as np

from .poly import LossPolynomial, binomial_failure

FailureFunction = Callable[[float], float]

MAX_OVERHEAD_LEVELS = 20
THRESHOLD_TOL = 1e-9
BRACKET_DELTA = 1e-6

# located loss: a pentagon fails once three or more of its five children are gone
PRE_FAILURE_POLY = binomial_failure(5, 2)


def _check_probability(p):
    if not 0 <= p <= 1:
        raise ValueError(f"probability out of range: {p}")


def pre_failure(P):
    """P^5 + 5 P^4 (1-P) + 10 P^3 (1-P)^2.

    Exact for ``Fraction`` / ``int`` input; accepts floats and numpy arrays.
    """
    if isinstance(P, np.ndarray):
        if np.any((P < 0) | (P > 1)):
            raise ValueError("probability out of range")
        return PRE_FAILURE_POLY(P)
    _check_probability(P)
    q = 1 - P
    return P**5 + 5 * P**4 * q + 10 * P**3 * q**2


def iterate_levels(base: FailureFunction, p, levels: int):
    """Apply ``base`` ``levels`` times, physical level first."""
    if levels < 1:
        raise ValueError(f"levels must be >= 1, got {levels}")
    for _ in range(levels):
        p = base(p)
    return p


def identity(p):
    return p


def find_threshold(base: FailureFunction, tol: float = THRESHOLD_TOL, delta: float = BRACKET_DELTA) -> Optional[float]:
    """Nontrivial fixed point of ``base`` in (delta, 1 - delta), or None.

    The first sign change of ``base(p) - p`` from below to above on a scan
    grid is refined by bisection to ``tol``.
    """
    g = lambda p: float(base(p)) - p
    grid = np.linspace(delta, 1 - delta, 2001)
    # exact zeros carry no sign; a crossing is a negative point followed by
    # the next nonzero point being positive
    signed = [(float(x), v) for x in grid if (v := g(x)) != 0]
    for (a, va), (b, vb) in zip(signed, signed[1:]):
        if va < 0 < vb:
            lo, hi = a, b
            while hi - lo > tol / 4:
                mid = 0.5 * (lo + hi)
                gm = g(mid)
                if gm == 0:
                    return mid
                if gm < 0:
                    lo = mid
                else:
                    hi = mid
            return 0.5 * (lo + hi)
    return None


@dataclass(frozen=True)
class Overhead:
    p: float
    epsilon: float
    levels: Optional[int]
    qubits: Optional[int]
    effective: Optional[float]

    @property
    def reachable(self) -> bool:
        return self.levels is not None


def overhead_for_target(base: FailureFunction, p, epsilon: float = 1e-7, max_levels: int = MAX_OVERHEAD_LEVELS) -> Overhead:
    """Fewest levels N (and qubits 5**N) with effective loss <= ``epsilon``."""
    if not 0 < epsilon < 1:
        raise ValueError("epsilon must be in (0, 1)")
    _check_probability(p)
    threshold = find_threshold(base)
    if threshold is not None and p >= threshold:
        return Overhead(float(p), epsilon, None, None, None)
    value = p
    for n in range(1, max_levels + 1):
        value = base(value)
        if value <= epsilon:
            return Overhead(float(p), epsilon, n, 5**n, float(value))
    return Overhead(float(p), epsilon, None, None, None)


def gamma_effective(gamma: float, p: float, levels: int) -> float:
    """(gamma p)^(2^N) / gamma for the generic quadratic recursion, clipped to [0, 1].

    Evaluated in the log domain so deep levels neither overflow nor raise.
    """
    if gamma <= 0:
        raise ValueError("gamma must be positive")
    _check_probability(p)
    if levels < 0:
        raise ValueError("levels must be >= 0")
    if p == 0:
        return 0.0
    log_val = (2.0**levels) * math.log(gamma * p) - math.log(gamma)
    if log_val >= 0:
        return 1.0
    return math.exp(log_val)


@dataclass(frozen=True)
class Asymptote:
    exponent: int
    coefficient: float
    slope: float
    degenerate: bool


def asymptotic_coefficient(base: FailureFunction, lo: float = 1e-4, hi: float = 1e-2, points: int = 41) -> Asymptote:
    """Leading small-P behaviour base(P) ~ c P^k from a log-log fit.

    The fitted slope is rounded to the integer exponent k; c is then the
    least-squares intercept with the slope held at k.
    """
    xs = np.logspace(math.log10(lo), math.log10(hi), points)
    ys = np.array([float(base(x)) for x in xs])
    if np.any(ys <= 0):
        return Asymptote(0, 0.0, float("nan"), True)
    lx, ly = np.log(xs), np.log(ys)
    slope, _ = np.polyfit(lx, ly, 1)
    k = int(round(slope))
    degenerate = abs(slope - k) > 0.1 or k < 1
    c = float(np.exp(np.mean(ly - k * lx)))
    return Asymptote(k, c, float(slope), degenerate)


def exact_pre_failure_table(levels, probabilities) -> dict:
    """Exact rational P_eff(N, p) for every (N, p); p given as strings like "0.2"."""
    out = {}
    for p in probabilities:
        value = Fraction(p)
        for n in range(1, max(levels) + 1):
            value = pre_failure(value)
            if n in levels:
                out[(n, p)] = value
    return out


@dataclass
class RecurrenceCurve:
    """Effective-loss curves P_eff(N, p) for N = 1..max_level on a p grid."""

    mode: str
    base: FailureFunction
    max_level: int
    grid: np.ndarray

    def values(self, level: int) -> np.ndarray:
        return np.array([float(iterate_levels(self.base, float(p), level)) for p in self.grid])

    def rows(self):
        for n in range(1, self.max_level + 1):
            for p, v in zip(self.grid, self.values(n)):
                yield self.mode, n, float(p), float(v)
