"""Replaceable-expert regime: a wage paid when the belief clears a threshold."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .model import PayoffBreakdown, Rule, success_probability
from .params import ModelParams
from .reputation import StepReputation

__all__ = [
    "WageThresholds",
    "RegimeCase",
    "WageRegimeReport",
    "thresholds",
    "expected_payoff_wage",
    "pi_dagger",
    "classify_regime",
    "complex_iff_wage",
]


@dataclass(frozen=True)
class WageThresholds:
    """Prior cutoffs that bracket the step payoff's branches.

    Below ``lower`` even a success leaves the belief under the threshold;
    from ``upper`` even a failure keeps it above.  ``upper_capped`` flags
    upper >= 1, unreachable by any prior.
    """

    lower: float
    upper: float
    upper_capped: bool


def thresholds(sigma: float, rep: StepReputation) -> WageThresholds:
    t = rep.threshold
    lower = t / (1.0 + 4.0 * sigma * (1.0 - t))
    upper = t / (1.0 - 4.0 * sigma * (1.0 - t))
    return WageThresholds(lower, upper, upper >= 1.0)


def expected_payoff_wage(rule: Rule, params: ModelParams, rep: StepReputation) -> PayoffBreakdown:
    """Piecewise expected payoff under the step reputation payoff.

    Complex branches on the prior against (lower, upper): reputation is 0,
    wage * Pr(success), or wage.  Simple pays the wage exactly when the
    prior already clears the threshold.
    """
    if params.base_rate != 0.5:
        raise ValueError("wage-regime payoffs assume Pr(A=1) = 0.5")
    if rule is Rule.SIMPLE:
        return PayoffBreakdown(0.5, rep.wage if params.prior >= rep.threshold else 0.0)
    cuts = thresholds(params.sigma, rep)
    p = success_probability(params.sigma, params.prior)
    if params.prior < cuts.lower:
        reputation = 0.0
    elif params.prior < cuts.upper:
        reputation = rep.wage * p
    else:
        reputation = rep.wage
    return PayoffBreakdown(p, reputation)


def pi_dagger(sigma: float, wage: float) -> float:
    """Prior at which the middle complex branch meets the paid simple payoff."""
    if sigma <= 0.0:
        raise ValueError("sigma must be positive")
    if wage < 0.0:
        raise ValueError("wage must be non-negative")
    return wage / (4.0 * sigma * (1.0 + wage))


class RegimeCase(Enum):
    COMPLEX_ALWAYS = "complex_always"
    CROSS_AT_THRESHOLD_AND_DISCONTINUITY = "cross_at_threshold_and_discontinuity"
    INTERIOR_INTERSECTION = "interior_intersection"


@dataclass(frozen=True)
class WageRegimeReport:
    pi_lower: float
    pi_upper: float
    pi_dagger: float
    case: RegimeCase
    simple_interval: tuple[float, float] | None  # half-open [lo, hi)


def classify_regime(sigma: float, rep: StepReputation) -> WageRegimeReport:
    """Which rule wins where: complex everywhere, or simple on [threshold, cut).

    The simple region, when non-empty, is [threshold, min(pi_dagger, upper, 1));
    the case label records whether the region is cut off by the payoff
    discontinuity at ``upper`` or by an interior intersection at ``pi_dagger``.
    """
    cuts = thresholds(sigma, rep)
    dagger = pi_dagger(sigma, rep.wage)
    if dagger <= rep.threshold:
        return WageRegimeReport(cuts.lower, cuts.upper, dagger, RegimeCase.COMPLEX_ALWAYS, None)
    hi = min(dagger, cuts.upper, 1.0)
    case = (
        RegimeCase.INTERIOR_INTERSECTION
        if dagger < cuts.upper
        else RegimeCase.CROSS_AT_THRESHOLD_AND_DISCONTINUITY
    )
    return WageRegimeReport(cuts.lower, cuts.upper, dagger, case, (rep.threshold, hi))


def complex_iff_wage(params: ModelParams) -> float:
    """Wage cutoff for complex when the replacement threshold equals the prior.

    With threshold = prior, complex is chosen iff wage <= 4sp / (1 - 4sp).
    """
    four_sp = 4.0 * params.sigma * params.prior
    if four_sp >= 1.0:
        raise ValueError("4 * sigma * prior must be below 1")
    return four_sp / (1.0 - four_sp)
