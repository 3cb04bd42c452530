import math
from fractions import Fraction

import numpy as np
import pytest
import sympy

from gaplab import CensusSeries, GapCensus
from gaplab.analysis import (
    DESK_MAX_EXPONENT,
    EXPANSION_VARIANTS,
    expansion_coefficients,
    fit_dkn,
    fit_error_term,
    fit_inverse_log_poly,
    fit_power_law,
    ratio_table,
)
from gaplab.errors import FitDomainError
from gaplab.moments import exact_moment, predict, predict_hb, predict_pnt


# ------------------------------------------------------------ ratio table


def test_ratio_table_values(small_series):
    table = ratio_table(small_series, 2)
    assert [row.x for row in table.rows] == list(small_series.thresholds)
    census = small_series.at(2**16)
    exact = exact_moment(census, 2)
    last = table.rows[-1]
    assert last.hb == exact / predict("hb", 2, census.x, census.pi_x)
    assert last.closed == exact / predict("closed", 2, census.x, census.pi_x)
    assert last.pnt == exact / predict("pnt", 2, census.x, census.pi_x)


def test_ratio_table_rejects_other_orders(small_series):
    for k in (1, 5):
        with pytest.raises(ValueError):
            ratio_table(small_series, k)


# ------------------------------------------------------------- power law


def test_power_law_exact_recovery():
    xs = [2.0**j for j in range(20, 31)]
    amplitude, alpha, residuals = fit_power_law(xs, [5.0 * x for x in xs])
    assert abs(amplitude - 5.0) <= 5e-10
    assert abs(alpha - 1.0) <= 1e-10
    assert np.max(np.abs(residuals)) <= 1e-12

    amplitude, alpha, _ = fit_power_law(xs, [3.7 * x**1.05 for x in xs])
    assert abs(amplitude - 3.7) <= 5e-9
    assert abs(alpha - 1.05) <= 1e-10


# ------------------------------------------------------- error-term fit


def test_fit_error_term_small_series(mid_series):
    fit = fit_error_term(mid_series, 2, "hb")
    assert fit.window == mid_series.thresholds
    assert 0.5 < fit.alpha < 1.5
    top = mid_series.at(2**20)
    deficit = predict_hb(2, top.x) - exact_moment(top, 2)
    assert fit.pointwise_amplitude == pytest.approx(deficit / top.x, rel=1e-12)
    assert fit.residual_rms >= 0


def test_fit_error_term_window(mid_series):
    fit = fit_error_term(mid_series, 2, "hb", x_min=2**14, x_max=2**18)
    assert fit.window == (2**14, 2**15, 2**16, 2**17, 2**18)


def test_fit_error_term_needs_enough_checkpoints(mid_series):
    with pytest.raises(ValueError):
        fit_error_term(mid_series, 2, "hb", x_min=2**18)


def _inflated_series():
    # counts far above any prediction, so predicted - exact is negative
    censuses = []
    for j in range(10, 14):
        censuses.append(
            GapCensus(x=2**j, counts={2: 10**9 * 2**j}, pi_x=10, p_last=None)
        )
    return CensusSeries(tuple(censuses))


def test_fit_error_term_requires_overshoot():
    with pytest.raises(FitDomainError, match="overshoot"):
        fit_error_term(_inflated_series(), 2, "hb")


# ------------------------------------------------------------ expansions


GENERAL_C1 = {k: Fraction(1 - k) for k in (2, 3, 4)}
GENERAL_C2 = {k: Fraction(k * k - 5 * k + 4, 2) for k in (2, 3, 4)}
GENERAL_C3 = {k: Fraction(-(k**3) + 12 * k * k - 47 * k + 36, 6) for k in (2, 3, 4)}


@pytest.mark.parametrize("k", [2, 3, 4])
def test_pnt_variant_matches_general_rationals(k):
    series = expansion_coefficients("pnt", k, 3)
    assert series[0] == 1
    assert series[1] == GENERAL_C1[k]
    assert series[2] == GENERAL_C2[k]
    assert series[3] == GENERAL_C3[k]


def test_pnt_variant_fractional_order():
    series = expansion_coefficients("pnt", 2.5, 2)
    assert series[1] == Fraction(-3, 2)
    assert series[2] == Fraction(-9, 8)
    # same value written as the half-integer case of the general c_2
    assert series[2] == (Fraction(4) - 5 * Fraction(5, 2) + Fraction(5, 2) ** 2) / 2


def test_closed_variant_k2_coefficients():
    series = expansion_coefficients("closed", 2, 4)
    assert list(series.coeffs) == [1, -2, -1, -3, -13]


def test_closed_variant_k3_coefficients():
    series = expansion_coefficients("closed", 3, 4)
    assert list(series.coeffs) == [1, -4, Fraction(5, 3), -2, -13]


def _sympy_variant_coeffs(variant, k, order):
    """Independent expansion: substitute the Li tail series symbolically."""
    t = sympy.symbols("t")  # stands for 1/log x
    S = sum(math.factorial(n) * t**n for n in range(order + 1))
    if variant == "pnt":
        expr = S ** (1 - sympy.Rational(k))
    else:
        r = t * S  # pi(x)/x
        if k == 2:
            bracket = 1 - r
        elif k == 3:
            bracket = 1 - 2 * r + sympy.Rational(2, 3) * r**2
        else:
            bracket = 1 - 3 * r + sympy.Rational(7, 3) * r**2 - sympy.Rational(1, 3) * r**3
        expr = S ** (1 - k) * bracket
    expansion = sympy.series(expr, t, 0, order + 1).removeO()
    out = []
    for n in range(order + 1):
        c = sympy.Rational(sympy.nsimplify(expansion.coeff(t, n)))
        out.append(Fraction(int(c.p), int(c.q)))
    return out


@pytest.mark.parametrize("variant,k", [("pnt", 2), ("pnt", 3), ("pnt", 4),
                                       ("closed", 2), ("closed", 3), ("closed", 4)])
def test_expansions_match_sympy_to_order_6(variant, k):
    got = list(expansion_coefficients(variant, k, 6).coeffs)
    assert got == _sympy_variant_coeffs(variant, k, 6)


def test_expansion_validation():
    with pytest.raises(ValueError):
        expansion_coefficients("nope", 2, 3)
    with pytest.raises(ValueError):
        expansion_coefficients("closed", 5, 3)
    with pytest.raises(ValueError):
        expansion_coefficients("pnt", 2, 9)
    with pytest.raises(ValueError):
        expansion_coefficients("pnt", 2, -1)
    assert EXPANSION_VARIANTS == ("closed", "pnt")


def test_pnt_collapses_to_hb_under_ideal_prime_count():
    # with pi(x) set to x/log x the two predictors coincide
    for x in (1e6, float(2**30)):
        for k in (0, 1, 2, 3, 4, 2.5):
            ideal = x / math.log(x)
            a = predict_pnt(k, x, ideal)
            b = predict_hb(k, x)
            assert abs(a - b) <= 1e-12 * abs(b)


# -------------------------------------------------------- inverse-log fit


def test_inverse_log_poly_exact_recovery():
    L = [math.log(2.0**j) for j in range(10, 21)]
    ys = [1 - 3 / v + 2 / v**2 for v in L]
    coeffs, cond = fit_inverse_log_poly(L, ys, 2)
    assert np.allclose(coeffs, [1, -3, 2], atol=1e-8)
    assert cond > 1


def test_inverse_log_poly_rank_deficiency():
    L = [math.log(1e6)] * 6
    ys = [1.0] * 6
    with pytest.raises(FitDomainError, match="rank"):
        fit_inverse_log_poly(L, ys, 2)


def test_fit_dkn_leading_coefficient(mid_series):
    fit = fit_dkn(mid_series, 2, 2)
    assert len(fit.coefficients) == 3
    assert 0.5 < fit.coefficients[0] < 1.5
    assert fit.condition_number > 1


def test_fit_dkn_conditioning_grows_with_order(mid_series):
    conds = [fit_dkn(mid_series, 2, order).condition_number for order in (1, 2, 3)]
    assert conds[0] < conds[1] < conds[2]


def test_fit_dkn_validation(mid_series):
    with pytest.raises(ValueError):
        fit_dkn(mid_series, 0, 2)
    with pytest.raises(ValueError):
        fit_dkn(mid_series, 2, len(mid_series))  # order + 2 > checkpoints


def test_desk_budget_constant():
    assert DESK_MAX_EXPONENT == 30
