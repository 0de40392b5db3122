"""Extensions: general action base rates, noisy condition readings, attention."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .model import PayoffBreakdown, PosteriorPair, Rule
from .params import ModelParams

__all__ = [
    "NoisyObservation",
    "AttentionProblem",
    "AttentionChoice",
    "prob_match_general",
    "accuracy_gain_general",
    "posterior_general",
    "expected_reputation_general",
    "expected_payoff_general",
    "delta_phi_general",
    "rule_choice_general",
    "sigma_from_correlation",
    "lhs_increasing_in_a",
    "noisy_accuracy",
    "effective_sigma",
    "attention_objective",
    "interior_attention",
    "optimal_attention",
]


@dataclass(frozen=True)
class NoisyObservation:
    """The advisee misreads the condition with flip probability epsilon."""

    epsilon: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.epsilon <= 0.5:
            raise ValueError(f"epsilon must lie in [0, 0.5], got {self.epsilon}")


def prob_match_general(theta: int, params: ModelParams) -> float:
    """Pr(A = X | type) = a*x + (1-a)*(1-x) + 2*theta*sigma for any base rate."""
    a, x = params.base_rate, params.prevalence
    return a * x + (1.0 - a) * (1.0 - x) + 2.0 * theta * params.sigma


def accuracy_gain_general(params: ModelParams) -> float:
    """Accuracy gain of complex over simple: 2*sigma*prior - (2a-1)(1-x)."""
    return 2.0 * params.sigma * params.prior - (2.0 * params.base_rate - 1.0) * (1.0 - params.prevalence)


def posterior_general(params: ModelParams) -> PosteriorPair:
    """Bayes posteriors under the complex rule with success probabilities
    Pr(Y=1 | C, theta) = prob_match_general(theta)."""
    m1 = prob_match_general(1, params)
    m0 = prob_match_general(0, params)
    prior = params.prior
    p_success = prior * m1 + (1.0 - prior) * m0
    on_success = prior * m1 / p_success
    on_failure = prior * (1.0 - m1) / (1.0 - p_success)
    return PosteriorPair(on_success, on_failure, p_success)


def expected_reputation_general(params: ModelParams, psi) -> float:
    post = posterior_general(params)
    return post.p_success * psi(post.on_success) + (1.0 - post.p_success) * psi(post.on_failure)


def expected_payoff_general(rule: Rule, params: ModelParams, psi) -> PayoffBreakdown:
    if rule is Rule.SIMPLE:
        # The simple rule always takes the action, so Y = A.
        return PayoffBreakdown(params.base_rate, psi(params.prior))
    return PayoffBreakdown(posterior_general(params).p_success, expected_reputation_general(params, psi))


def delta_phi_general(params: ModelParams, psi) -> float:
    return accuracy_gain_general(params) + expected_reputation_general(params, psi) - psi(params.prior)


def rule_choice_general(params: ModelParams, psi) -> Rule:
    return Rule.COMPLEX if delta_phi_general(params, psi) >= 0.0 else Rule.SIMPLE


def sigma_from_correlation(rho: float, base_rate: float, prevalence: float) -> float:
    """Covariance implied by a correlation rho between action and condition."""
    if not -1.0 <= rho <= 1.0:
        raise ValueError(f"correlation must lie in [-1, 1], got {rho}")
    a, x = base_rate, prevalence
    return rho * math.sqrt(a * (1.0 - a) * x * (1.0 - x))


def lhs_increasing_in_a(rho: float, base_rate: float, prevalence: float, prior: float) -> bool:
    """Whether the accuracy gain rises with the base rate at fixed correlation.

    True iff rho * prior * (1 - 2a) > 2 * (1-x) * sqrt(a(1-a) / (x(1-x))).
    Never true for a >= 0.5.
    """
    a, x = base_rate, prevalence
    return rho * prior * (1.0 - 2.0 * a) > 2.0 * (1.0 - x) * math.sqrt(a * (1.0 - a) / (x * (1.0 - x)))


def noisy_accuracy(theta: int, sigma: float, noise: NoisyObservation) -> float:
    """Pr(A = observed condition | type) = 0.5 + 2*theta*(1-2*eps)*sigma.

    Valid only at base rate 0.5; with other base rates the effect of
    misreadings depends on the full joint law.
    """
    return 0.5 + 2.0 * theta * (1.0 - 2.0 * noise.epsilon) * sigma


def effective_sigma(sigma: float, noise: NoisyObservation | None) -> float:
    """Covariance of the action with the condition as the advisee reads it."""
    if noise is None:
        return sigma
    return (1.0 - 2.0 * noise.epsilon) * sigma


@dataclass(frozen=True)
class AttentionProblem:
    """Advisee's benefit from a correct action and quadratic attention cost.

    Reading the condition with error eps costs cost_coeff * (0.5 - eps)^2.
    The bound cost_coeff < 2 * benefit * sigma * prior is checked against
    sigma and prior in optimal_attention, not here.
    """

    benefit: float
    cost_coeff: float

    def __post_init__(self) -> None:
        if self.benefit <= 0.0:
            raise ValueError(f"benefit must be positive, got {self.benefit}")
        if self.cost_coeff <= 0.0:
            raise ValueError(f"cost_coeff must be positive, got {self.cost_coeff}")


@dataclass(frozen=True)
class AttentionChoice:
    epsilon_star: float
    accuracy_competent: float
    interior: bool


def attention_objective(epsilon: float, problem: AttentionProblem, sigma: float, prior: float) -> float:
    """b * (0.5 + 2*sigma*(1-2*eps)*prior) - c * (0.5 - eps)^2."""
    return problem.benefit * (0.5 + 2.0 * sigma * (1.0 - 2.0 * epsilon) * prior) - problem.cost_coeff * (
        0.5 - epsilon
    ) ** 2


def interior_attention(problem: AttentionProblem, sigma: float, prior: float) -> float:
    """Unconstrained maximizer 0.5 - 2*b*sigma*prior/c of the attention objective."""
    return 0.5 - 2.0 * problem.benefit * sigma * prior / problem.cost_coeff


def optimal_attention(problem: AttentionProblem, sigma: float, prior: float) -> AttentionChoice:
    """Error the advisee picks, clamped to [0, 0.5], and the accuracy it induces.

    Enforces cost_coeff < 2 * benefit * sigma * prior.  Under that bound the
    unconstrained maximizer is negative, so the clamp binds at zero error;
    the interior formula is exposed separately as interior_attention.
    """
    cap = 2.0 * problem.benefit * sigma * prior
    if not problem.cost_coeff < cap:
        raise ValueError(
            f"cost_coeff must be below 2 * benefit * sigma * prior = {cap:.6g}, got {problem.cost_coeff}"
        )
    raw = interior_attention(problem, sigma, prior)
    eps = min(0.5, max(0.0, raw))
    accuracy = noisy_accuracy(1, sigma, NoisyObservation(eps))
    return AttentionChoice(eps, accuracy, interior=0.0 < raw < 0.5)
