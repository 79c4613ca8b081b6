import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from pentaloss.analytics import (
    PRE_FAILURE_POLY,
    asymptotic_coefficient,
    exact_pre_failure_table,
    find_threshold,
    gamma_effective,
    identity,
    iterate_levels,
    overhead_for_target,
    pre_failure,
)
from pentaloss.poly import LossPolynomial, binomial_failure


def test_pre_failure_values():
    assert pre_failure(Fraction(1, 5)) == Fraction(181, 3125)
    assert pre_failure(0.0) == 0.0
    assert pre_failure(1.0) == 1.0
    assert pre_failure(0.5) == pytest.approx(0.5)


def test_pre_failure_rejects_out_of_range():
    with pytest.raises(ValueError):
        pre_failure(1.5)
    with pytest.raises(ValueError):
        pre_failure(np.array([0.1, -0.2]))


def test_pre_failure_polynomial_matches_binomial_tail():
    # 10P^3 - 15P^4 + 6P^5
    assert PRE_FAILURE_POLY == LossPolynomial([0, 0, 0, 10, -15, 6])


@given(st.floats(0, 1))
def test_pre_failure_array_agrees_with_scalar(p):
    assert float(pre_failure(np.array([p]))[0]) == pytest.approx(pre_failure(p), abs=1e-12)


@given(st.floats(0, 0.999), st.floats(0, 0.999))
def test_pre_failure_monotone(a, b):
    lo, hi = sorted((a, b))
    assert pre_failure(lo) <= pre_failure(hi) + 1e-15


def test_iterate_levels():
    assert iterate_levels(pre_failure, 0.2, 1) == pytest.approx(0.05792)
    with pytest.raises(ValueError):
        iterate_levels(pre_failure, 0.2, 0)


def test_threshold_preannounced():
    assert abs(find_threshold(pre_failure) - 0.5) <= 1e-9


def test_threshold_absent_for_identity():
    assert find_threshold(identity) is None


def test_threshold_absent_below_diagonal():
    assert find_threshold(lambda p: 0.5 * p) is None


def test_threshold_of_quadratic_map():
    # 2p^2 crosses the diagonal at 1/2
    assert find_threshold(lambda p: min(1.0, 2 * p * p)) == pytest.approx(0.5, abs=1e-9)


def test_overhead_table_counts():
    counts = [overhead_for_target(pre_failure, p, 1e-7).qubits for p in (0.2, 0.3, 0.4)]
    assert counts == [125, 625, 3125]


def test_overhead_strict_target():
    counts = [overhead_for_target(pre_failure, p, 1e-8).qubits for p in (0.2, 0.3, 0.4)]
    assert counts == [625, 625, 15625]


def test_overhead_above_threshold_unreachable():
    assert not overhead_for_target(pre_failure, 0.6).reachable


def test_gamma_effective():
    assert gamma_effective(2.0, 0.1, 1) == pytest.approx(0.02)
    assert gamma_effective(2.0, 0.1, 40) == 0.0
    assert gamma_effective(2.0, 0.6, 5) == 1.0
    assert gamma_effective(2.0, 0.0, 3) == 0.0


def test_asymptote_preannounced():
    a = asymptotic_coefficient(pre_failure)
    assert a.exponent == 3
    assert a.coefficient == pytest.approx(10, rel=0.01)
    assert not a.degenerate


def test_asymptote_degenerate_for_zero():
    assert asymptotic_coefficient(lambda p: 0.0).degenerate


def test_exact_table_is_rational():
    t = exact_pre_failure_table([1, 2], ["0.2"])
    assert t[(1, "0.2")] == Fraction(181, 3125)
    assert t[(2, "0.2")] == pre_failure(Fraction(181, 3125))


def test_polynomial_arithmetic():
    p = LossPolynomial.p()
    q = LossPolynomial.q()
    assert p + q == LossPolynomial.constant(1)
    assert (p * q)(Fraction(1, 2)) == Fraction(1, 4)
    assert (1 - p) == q
    assert str(LossPolynomial([0, 0, 6, -8, 3])) == "6*p^2 - 8*p^3 + 3*p^4"


def test_polynomial_json_round_trip():
    f = LossPolynomial([Fraction(1, 3), 0, -2])
    assert LossPolynomial.from_json(f.to_json()) == f


def test_polynomial_dominance():
    small = LossPolynomial([0, 0, 1])  # p^2
    big = LossPolynomial([0, 1])  # p
    assert small.dominated_by(big)
    assert not big.dominated_by(small)


def test_binomial_failure_oracle():
    # direct sum over loss counts
    f = binomial_failure(5, 2)
    for p in (0.1, 0.3, 0.7):
        direct = sum(math.comb(5, k) * p**k * (1 - p) ** (5 - k) for k in range(3, 6))
        assert f(p) == pytest.approx(direct)
