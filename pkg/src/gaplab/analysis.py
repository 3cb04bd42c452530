"""Ratio tables against the predictors, error-term fits, asymptotic
expansions of the predictors in powers of 1/log x, and the inverse-log
moment fit."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .census import CensusSeries
from .errors import FitDomainError
from .moments import exact_moment, predict
from .specfn import InverseLogSeries, li_series, series_one

#: Largest exponent this package is expected to reproduce on one desk machine.
DESK_MAX_EXPONENT = 30

TABLE_PREDICTORS = ("hb", "closed", "pnt")
EXPANSION_VARIANTS = ("closed", "pnt")
MAX_EXPANSION_ORDER = 8


@dataclass(frozen=True)
class RatioRow:
    x: int
    hb: float
    closed: float
    pnt: float


@dataclass(frozen=True)
class RatioTable:
    k: int
    rows: tuple[RatioRow, ...]


def ratio_table(series: CensusSeries, k: int) -> RatioTable:
    """Exact/predicted ratio at each checkpoint for the three main predictors."""
    if k not in (2, 3, 4):
        raise ValueError(f"the three-column table needs k in (2, 3, 4), got {k}")
    rows = []
    for census in series:
        exact = exact_moment(census, k)
        rows.append(
            RatioRow(
                x=census.x,
                hb=exact / predict("hb", k, census.x, census.pi_x),
                closed=exact / predict("closed", k, census.x, census.pi_x),
                pnt=exact / predict("pnt", k, census.x, census.pi_x),
            )
        )
    return RatioTable(k=k, rows=tuple(rows))


def fit_power_law(
    xs: Sequence[float], values: Sequence[float]
) -> tuple[float, float, np.ndarray]:
    """Least squares of log(values) on log(xs).

    Returns (amplitude, exponent, residuals) for values ~ amplitude * x^exponent.
    """
    lx = np.log(np.asarray(xs, dtype=float))
    lv = np.log(np.asarray(values, dtype=float))
    design = np.column_stack([np.ones_like(lx), lx])
    (intercept, slope), *_ = np.linalg.lstsq(design, lv, rcond=None)
    residuals = lv - (intercept + slope * lx)
    return math.exp(intercept), float(slope), residuals


@dataclass(frozen=True)
class ErrorFit:
    k: float
    predictor: str
    amplitude: float
    alpha: float
    window: tuple[int, ...]
    pointwise_amplitude: float
    residual_rms: float


def fit_error_term(
    series: CensusSeries,
    k: float,
    predictor: str = "hb",
    *,
    x_min: int | None = None,
    x_max: int | None = None,
) -> ErrorFit:
    """Fit the prediction deficit (predicted - exact) to A * x^alpha.

    Every checkpoint in the window must overshoot, otherwise the log-log fit
    is undefined and a FitDomainError names the offending threshold. The
    single-point amplitude (deficit / x) at the largest threshold rides along.
    """
    chosen = series.window(x_min, x_max)
    if len(chosen) < 4:
        raise ValueError(f"need at least 4 checkpoints in the window, got {len(chosen)}")
    xs: list[int] = []
    deficits: list[float] = []
    for census in chosen:
        deficit = predict(predictor, k, census.x, census.pi_x) - exact_moment(census, k)
        if deficit <= 0:
            raise FitDomainError(
                f"predictor {predictor!r} does not overshoot at x={census.x}; "
                "the deficit fit needs positive residuals"
            )
        xs.append(census.x)
        deficits.append(float(deficit))
    amplitude, alpha, residuals = fit_power_law(xs, deficits)
    return ErrorFit(
        k=k,
        predictor=predictor,
        amplitude=amplitude,
        alpha=alpha,
        window=tuple(xs),
        pointwise_amplitude=deficits[-1] / xs[-1],
        residual_rms=float(np.sqrt(np.mean(residuals**2))),
    )


def expansion_coefficients(variant: str, k, order: int) -> InverseLogSeries:
    """Coefficients c_n of predictor ~ k! x log^(k-1) x * sum(c_n / log^n x).

    The prime-count input is replaced by its own expansion (x/L) sum(n!/L^n)
    and pushed through the predictor formula in exact rational arithmetic.
    c_0 is 1 for every variant and order.

    variant "pnt" accepts any rational k (floats taken exactly); variant
    "closed" only k = 2, 3, 4 where the bracket polynomial exists.
    """
    if order < 0 or order > MAX_EXPANSION_ORDER:
        raise ValueError(f"order must be within 0..{MAX_EXPANSION_ORDER}, got {order}")
    tail = li_series(order)
    if variant == "pnt":
        return tail.power(Fraction(1) - Fraction(k))
    if variant == "closed":
        if k not in (2, 3, 4):
            raise ValueError(f"closed variant expands only k in (2, 3, 4), got {k}")
        ratio = tail.shift(1)  # pi(x)/x as a pure series in 1/L
        one = series_one(order)
        if k == 2:
            bracket = one - ratio
        elif k == 3:
            bracket = one - ratio.scale(2) + (ratio * ratio).scale(Fraction(2, 3))
        else:
            r2 = ratio * ratio
            bracket = (
                one
                - ratio.scale(3)
                + r2.scale(Fraction(7, 3))
                - (r2 * ratio).scale(Fraction(1, 3))
            )
        return tail.power(1 - int(k)) * bracket
    raise ValueError(
        f"unknown variant {variant!r}; known: {', '.join(EXPANSION_VARIANTS)}"
    )


def fit_inverse_log_poly(
    log_xs: Sequence[float], ys: Sequence[float], order: int
) -> tuple[np.ndarray, float]:
    """Least squares for ys ~ sum(d_n / L^n, n = 0..order).

    Returns the coefficient vector and the design-matrix condition number.
    Raises FitDomainError when the design is rank deficient.
    """
    L = np.asarray(log_xs, dtype=float)
    design = np.column_stack([L ** (-float(n)) for n in range(order + 1)])
    coeffs, _, rank, _ = np.linalg.lstsq(design, np.asarray(ys, dtype=float), rcond=None)
    if rank < order + 1:
        raise FitDomainError(
            f"design matrix rank {rank} below {order + 1}; "
            "widen the checkpoint window or lower the order"
        )
    return coeffs, float(np.linalg.cond(design))


@dataclass(frozen=True)
class DknFit:
    k: int
    order: int
    coefficients: tuple[float, ...]
    condition_number: float


def fit_dkn(series: CensusSeries, k: int, order: int) -> DknFit:
    """Fit M_k(x) / (k! x log^(k-1) x) to a polynomial in 1/log x.

    The condition number is part of the result on purpose: on a narrow log
    window the higher coefficients swing by orders of magnitude as the fit
    order changes, and reporting the conditioning makes that visible. The
    leading coefficient stays near 1 regardless.
    """
    if k < 1:
        raise ValueError(f"need k >= 1, got {k}")
    censuses = list(series)
    if len(censuses) < order + 2:
        raise ValueError(
            f"need at least order + 2 = {order + 2} checkpoints, got {len(censuses)}"
        )
    log_xs = [math.log(c.x) for c in censuses]
    ys = [
        exact_moment(c, k) / (math.factorial(k) * c.x * math.log(c.x) ** (k - 1))
        for c in censuses
    ]
    coeffs, cond = fit_inverse_log_poly(log_xs, ys, order)
    return DknFit(
        k=k,
        order=order,
        coefficients=tuple(float(v) for v in coeffs),
        condition_number=cond,
    )
