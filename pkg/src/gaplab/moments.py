"""Exact gap moments from a census and the analytic moment predictors.

Moment sums are done in python integers, so results stay exact far past 64
bits. Predictors are keyed by short ids:

  hb        k! x log^(k-1) x
  closed    bracket polynomials in pi(x)/x, orders 2..4
  pnt       k! x^k / pi(x)^(k-1)
  eulerian  the gap-model sum over all even gaps, any integer order
  gamma     pnt with Gamma(k+1), for fractional orders
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .census import GapCensus
from .errors import ModelDomainError
from .specfn import gamma_real, geom_power_sum

PREDICTOR_IDS = ("hb", "closed", "pnt", "eulerian", "gamma")
DEFAULT_PREDICTORS = ("hb", "closed", "pnt")


def exact_moment(census: GapCensus, k: float):
    """Sum of d^k over all counted gaps; exact int for integer k >= 0."""
    if k < 0:
        raise ValueError(f"moment order must be >= 0, got {k}")
    if float(k).is_integer():
        ik = int(k)
        return sum(c * d**ik for d, c in census.counts.items())
    return float(sum(c * d**k for d, c in census.counts.items()))


def predict_hb(k: float, x: float) -> float:
    """Gamma(k+1) * x * log(x)^(k-1), natural log."""
    if k < 0:
        raise ValueError(f"order must be >= 0, got {k}")
    if x <= 1:
        raise ValueError(f"need x > 1, got {x}")
    return gamma_real(k + 1) * x * math.log(x) ** (k - 1)


def predict_closed(k: int, x: float, pi_x: float) -> float:
    """Bracket-polynomial predictors, defined for k = 2, 3, 4 only."""
    if k not in (2, 3, 4):
        raise ValueError(
            f"closed form exists for k in (2, 3, 4), got {k}; use eulerian instead"
        )
    if not 0 < pi_x < x:
        raise ValueError(f"need 0 < pi_x < x, got pi_x={pi_x}, x={x}")
    r = pi_x / x
    if k == 2:
        return 2.0 * x * x / pi_x * (1.0 - r)
    if k == 3:
        return 6.0 * x**3 / pi_x**2 * (1.0 - 2.0 * r + (2.0 / 3.0) * r * r)
    return 24.0 * x**4 / pi_x**3 * (
        1.0 - 3.0 * r + (7.0 / 3.0) * r * r - (1.0 / 3.0) * r**3
    )


def predict_pnt(k: float, x: float, pi_x: float) -> float:
    """Gamma(k+1) * x^k / pi(x)^(k-1)."""
    if k < 0:
        raise ValueError(f"order must be >= 0, got {k}")
    if not 0 < pi_x < x:
        raise ValueError(f"need 0 < pi_x < x, got pi_x={pi_x}, x={x}")
    return gamma_real(k + 1) * x**k / pi_x ** (k - 1)


def predict_gamma(k: float, x: float, pi_x: float) -> float:
    """predict_pnt under a name that advertises fractional orders."""
    return predict_pnt(k, x, pi_x)


def predict_eulerian(k: int, x: float, pi_x: float) -> float:
    """Gap-model moment: sum of d^k over the geometric gap distribution.

    Collapses to 2 pi^2/(x - 2 pi) * 2^k * sum(n^k q^n) with q = 1 - 2 pi/x.
    The deviation eps = 2 pi/x is handed to the geometric sum exactly, never
    recomputed as 1 - q. Agrees with predict_closed for k = 2, 3, 4 and
    extends to every integer k >= 1.
    """
    if k < 1 or k != int(k):
        raise ValueError(f"need integer k >= 1, got {k}")
    if pi_x <= 0:
        raise ValueError(f"pi_x must be positive, got {pi_x}")
    if 2 * pi_x >= x:
        raise ModelDomainError(f"need pi(x) < x/2, got pi_x={pi_x} at x={x}")
    eps = 2.0 * pi_x / x
    factor = 2.0 * pi_x * pi_x / (x - 2.0 * pi_x)
    return factor * 2.0 ** int(k) * geom_power_sum(int(k), one_minus_q=eps)


def predict(predictor: str, k: float, x: float, pi_x: float) -> float:
    """Dispatch a predictor by id; see PREDICTOR_IDS."""
    if predictor == "hb":
        return predict_hb(k, x)
    if predictor == "closed":
        return predict_closed(k, x, pi_x)
    if predictor == "pnt":
        return predict_pnt(k, x, pi_x)
    if predictor == "eulerian":
        return predict_eulerian(k, x, pi_x)
    if predictor == "gamma":
        return predict_gamma(k, x, pi_x)
    raise ValueError(f"unknown predictor {predictor!r}; known: {', '.join(PREDICTOR_IDS)}")


@dataclass(frozen=True)
class MomentReport:
    x: int
    k: float
    exact: object
    predictions: dict[str, float]
    ratios: dict[str, float]


def moment_report(
    census: GapCensus, k: float, predictors: Sequence[str] = DEFAULT_PREDICTORS
) -> MomentReport:
    """Exact moment plus each requested prediction and exact/predicted ratio."""
    exact = exact_moment(census, k)
    predictions = {name: predict(name, k, census.x, census.pi_x) for name in predictors}
    ratios = {name: exact / value for name, value in predictions.items()}
    return MomentReport(
        x=census.x, k=k, exact=exact, predictions=predictions, ratios=ratios
    )
