"""Belief kinematics and rule choice when nobody knows the expert's type.

All probabilities assume Pr(A=1) = 0.5; the general-base-rate versions live
in ``extensions``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .params import ModelParams
from .reputation import slope

__all__ = [
    "Rule",
    "PayoffBreakdown",
    "PosteriorPair",
    "PosteriorPartials",
    "success_probability",
    "posterior_beliefs",
    "prob_correct_given_type",
    "prob_correct_marginal",
    "posterior",
    "expected_reputation_complex",
    "expected_payoff",
    "delta_phi",
    "choose_rule",
    "wage_bound_concave",
    "posterior_partials",
    "delta_phi_prior_derivative",
    "w_star",
]


class Rule(Enum):
    """The expert's advice: unconditional, or conditioned on X."""

    SIMPLE = "simple"
    COMPLEX = "complex"


@dataclass(frozen=True)
class PayoffBreakdown:
    """Expected payoff split into its accuracy and reputation components."""

    accuracy: float
    reputation: float

    @property
    def total(self) -> float:
        return self.accuracy + self.reputation


@dataclass(frozen=True)
class PosteriorPair:
    """Posterior beliefs about competence after a complex-rule outcome."""

    on_success: float
    on_failure: float
    p_success: float


@dataclass(frozen=True)
class PosteriorPartials:
    """Partial derivatives of the two posteriors in sigma and in the prior."""

    success_sigma: float
    success_prior: float
    failure_sigma: float
    failure_prior: float


def _require_even_base_rate(params: ModelParams) -> None:
    if params.base_rate != 0.5:
        raise ValueError(
            "this operation assumes Pr(A=1) = 0.5; use the general-base-rate "
            "operations in advicegame.extensions"
        )


def success_probability(sigma: float, prior: float) -> float:
    """Pr(Y=1 | complex rule) = 0.5 + 2*sigma*prior."""
    return 0.5 + 2.0 * sigma * prior


def posterior_beliefs(sigma: float, prior: float) -> tuple[float, float]:
    """Posteriors about competence after (success, failure) under the complex rule.

    success: (1+4s)p / (1+4sp);  failure: (1-4s)p / (1-4sp).
    """
    four = 4.0 * sigma
    return (
        (1.0 + four) * prior / (1.0 + four * prior),
        (1.0 - four) * prior / (1.0 - four * prior),
    )


def prob_correct_given_type(rule: Rule, theta: int, params: ModelParams) -> float:
    """Pr(Y=1 | rule, type): 0.5 for simple advice, 0.5 + 2*theta*sigma for complex."""
    _require_even_base_rate(params)
    if rule is Rule.SIMPLE:
        return 0.5
    return 0.5 + 2.0 * theta * params.sigma


def prob_correct_marginal(rule: Rule, params: ModelParams) -> float:
    """Pr(Y=1 | rule) with the type integrated out."""
    _require_even_base_rate(params)
    if rule is Rule.SIMPLE:
        return 0.5
    return success_probability(params.sigma, params.prior)


def posterior(params: ModelParams) -> PosteriorPair:
    _require_even_base_rate(params)
    hi, lo = posterior_beliefs(params.sigma, params.prior)
    return PosteriorPair(hi, lo, success_probability(params.sigma, params.prior))


def expected_reputation_complex(params: ModelParams, psi) -> float:
    """E[psi(posterior)] under the complex rule."""
    post = posterior(params)
    return post.p_success * psi(post.on_success) + (1.0 - post.p_success) * psi(post.on_failure)


def expected_payoff(rule: Rule, params: ModelParams, psi) -> PayoffBreakdown:
    if rule is Rule.SIMPLE:
        return PayoffBreakdown(0.5, psi(params.prior))
    return PayoffBreakdown(
        success_probability(params.sigma, params.prior),
        expected_reputation_complex(params, psi),
    )


def delta_phi(params: ModelParams, psi) -> float:
    """Expected-payoff gain of the complex rule over the simple rule."""
    accuracy_gain = 2.0 * params.sigma * params.prior
    return accuracy_gain + expected_reputation_complex(params, psi) - psi(params.prior)


def choose_rule(params: ModelParams, psi) -> Rule:
    """Complex exactly when the gain is non-negative (ties go to complex)."""
    return Rule.COMPLEX if delta_phi(params, psi) >= 0.0 else Rule.SIMPLE


def wage_bound_concave(params: ModelParams, reward) -> float:
    """Largest wage scale w for which psi = w * reward still favours complex.

    Returns 2*sigma*prior / (reward(prior) - E[reward(posterior)]), or +inf
    when the denominator is non-positive (complex chosen at every wage).
    """
    denom = reward(params.prior) - expected_reputation_complex(params, reward)
    if denom <= 0.0:
        return math.inf
    return 2.0 * params.sigma * params.prior / denom


def posterior_partials(params: ModelParams) -> PosteriorPartials:
    s, p = params.sigma, params.prior
    up = 1.0 + 4.0 * s * p
    down = 1.0 - 4.0 * s * p
    return PosteriorPartials(
        success_sigma=4.0 * p * (1.0 - p) / up**2,
        success_prior=(1.0 + 4.0 * s) / up**2,
        failure_sigma=-4.0 * p * (1.0 - p) / down**2,
        failure_prior=(1.0 - 4.0 * s) / down**2,
    )


def _weighted_slope(psi, belief: float, weight: float) -> float:
    # Avoid inf * 0 when the belief is pinned (e.g. failure posterior at sigma = 0.25).
    if weight == 0.0:
        return 0.0
    return slope(psi, belief) * weight


def delta_phi_prior_derivative(params: ModelParams, psi) -> float:
    """d(delta_phi)/d(prior); its sign says whether a higher prior favours complex."""
    s = params.sigma
    post = posterior(params)
    partials = posterior_partials(params)
    spread = psi(post.on_success) - psi(post.on_failure)
    expected_slope = post.p_success * _weighted_slope(psi, post.on_success, partials.success_prior) + (
        1.0 - post.p_success
    ) * _weighted_slope(psi, post.on_failure, partials.failure_prior)
    return 2.0 * s + 2.0 * s * spread + expected_slope - slope(psi, params.prior)


def w_star(params: ModelParams, reward) -> float:
    """Wage scale at which d(delta_phi)/d(prior) changes sign under psi = w * reward.

    Returns +inf when the gain is increasing in the prior at every w >= 0.
    """
    s = params.sigma
    post = posterior(params)
    partials = posterior_partials(params)
    expected_slope = post.p_success * _weighted_slope(reward, post.on_success, partials.success_prior) + (
        1.0 - post.p_success
    ) * _weighted_slope(reward, post.on_failure, partials.failure_prior)
    spread = reward(post.on_success) - reward(post.on_failure)
    denom = slope(reward, params.prior) - expected_slope - 2.0 * s * spread
    if denom <= 0.0:
        return math.inf
    return 2.0 * s / denom
