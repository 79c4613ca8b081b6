"""Exact polynomials in the loss probability p with rational coefficients."""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, float):
        return Fraction(c).limit_denominator(10**12)
    return Fraction(c)


class LossPolynomial:
    """c_0 + c_1 p + ... + c_d p^d with :class:`fractions.Fraction` coefficients.

    Instances are immutable and callable; calling with a ``Fraction`` gives an
    exact value, with floats or numpy arrays a floating-point one.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = (0,)):
        cs = [_frac(c) for c in coeffs]
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs) or (Fraction(0),))

    def __setattr__(self, key, value):
        raise AttributeError("LossPolynomial is immutable")

    @classmethod
    def constant(cls, c) -> LossPolynomial:
        return cls((c,))

    @classmethod
    def p(cls) -> LossPolynomial:
        return cls((0, 1))

    @classmethod
    def q(cls) -> LossPolynomial:
        """1 - p"""
        return cls((1, -1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, p):
        if isinstance(p, np.ndarray):
            p = p.astype(float)
            acc = np.zeros_like(p)
            for c in reversed(self.coeffs):
                acc = acc * p + float(c)
            return acc
        if isinstance(p, (Fraction, int)):
            acc = Fraction(0)
            for c in reversed(self.coeffs):
                acc = acc * p + c
            return acc
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * p + float(c)
        return acc

    def __add__(self, other) -> LossPolynomial:
        other = _lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return LossPolynomial(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self) -> LossPolynomial:
        return LossPolynomial(-c for c in self.coeffs)

    def __sub__(self, other) -> LossPolynomial:
        return self + (-_lift(other))

    def __rsub__(self, other) -> LossPolynomial:
        return _lift(other) - self

    def __mul__(self, other) -> LossPolynomial:
        other = _lift(other)
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return LossPolynomial(out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = LossPolynomial.constant(other)
        if not isinstance(other, LossPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"LossPolynomial({self})"

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if k == 0 else ("p" if k == 1 else f"p^{k}")
            coef = str(c)
            if mono and c == 1:
                coef = ""
            elif mono and c == -1:
                coef = "-"
            terms.append(f"{coef}{'*' if coef not in ('', '-') and mono else ''}{mono}")
        return " + ".join(terms).replace("+ -", "- ") or "0"

    def lowest_term(self) -> tuple[int, Fraction]:
        """(k, c) of the lowest-degree nonzero term."""
        for k, c in enumerate(self.coeffs):
            if c:
                return k, c
        return 0, Fraction(0)

    def derivative(self) -> LossPolynomial:
        return LossPolynomial(k * c for k, c in enumerate(self.coeffs) if k) if self.degree else LossPolynomial()

    def nonnegative_on_unit_interval(self) -> bool:
        """Exact sign test of ``self >= 0`` on [0, 1].

        Candidate roots come from numpy; the sign is then checked exactly at
        both ends and between every pair of neighbouring candidates.
        """
        if all(c == 0 for c in self.coeffs):
            return True
        pts = {Fraction(0), Fraction(1)}
        if self.degree >= 1:
            roots = np.roots([float(c) for c in reversed(self.coeffs)])
            real = sorted(
                min(max(r.real, 0.0), 1.0) for r in roots if abs(r.imag) < 1e-6 and -1e-6 <= r.real <= 1 + 1e-6
            )
            marks = [0.0] + real + [1.0]
            for a, b in zip(marks, marks[1:]):
                pts.add(Fraction((a + b) / 2))
            for r in real:
                for eps in (1e-9, 1e-6):
                    for s in (r - eps, r + eps):
                        if 0 <= s <= 1:
                            pts.add(Fraction(s))
        return all(self(t) >= 0 for t in pts)

    def dominated_by(self, other: LossPolynomial) -> bool:
        """``self <= other`` everywhere on [0, 1]."""
        return (other - self).nonnegative_on_unit_interval()

    def to_json(self) -> list[str]:
        return [f"{c.numerator}/{c.denominator}" for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence[str]) -> LossPolynomial:
        return cls(Fraction(s) for s in data)


def _lift(x) -> LossPolynomial:
    return x if isinstance(x, LossPolynomial) else LossPolynomial.constant(x)


def binomial_failure(n: int, max_losses: int) -> LossPolynomial:
    """Probability that more than ``max_losses`` of ``n`` independent items are lost."""
    from math import comb

    p, q = LossPolynomial.p(), LossPolynomial.q()
    out = LossPolynomial()
    for k in range(max_losses + 1, n + 1):
        term = LossPolynomial.constant(comb(n, k))
        for _ in range(k):
            term = term * p
        for _ in range(n - k):
            term = term * q
        out = out + term
    return out
