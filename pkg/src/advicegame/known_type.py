"""Signaling game where the expert knows his own competence type.

Strategies are probabilities of choosing the complex rule, one per type.
Beliefs respond to the chosen rule through the advisee's conjecture about
those probabilities; best responses and equilibria are worked out for the
wage regime with the replacement threshold pinned to the prior.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

from .model import Rule, posterior_beliefs

__all__ = [
    "StrategyPair",
    "Belief",
    "Interval",
    "BestResponseSet",
    "EquilibriumKind",
    "EquilibriumReport",
    "intermediate_belief",
    "posterior_known_type",
    "expected_payoff_known",
    "omega",
    "wage_payoff_known",
    "wage_omega",
    "knife_edge_wage",
    "is_knife_edge",
    "best_response_incompetent",
    "best_response_competent",
    "classify_equilibria",
    "verify_no_pure_separating",
]

KNIFE_EDGE_RTOL = 1e-9


@dataclass(frozen=True)
class StrategyPair:
    """Per-type probabilities of choosing the complex rule."""

    p0: float  # incompetent
    p1: float  # competent

    def __post_init__(self) -> None:
        for name, p in (("p0", self.p0), ("p1", self.p1)):
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {p}")

    def of_type(self, theta: int) -> float:
        return self.p1 if theta == 1 else self.p0


class Belief(NamedTuple):
    """A belief value plus whether it sits off the conjectured play path."""

    value: float
    off_path: bool


def intermediate_belief(rule: Rule, prior: float, conjecture: StrategyPair) -> Belief:
    """Belief about competence after seeing the rule but before the outcome.

    When the conjecture gives the observed rule zero probability under both
    types, Bayes is silent; we return the prior (passive beliefs), flagged.
    """
    if rule is Rule.COMPLEX:
        w1, w0 = conjecture.p1, conjecture.p0
    else:
        w1, w0 = 1.0 - conjecture.p1, 1.0 - conjecture.p0
    denom = w1 * prior + w0 * (1.0 - prior)
    if denom == 0.0:
        return Belief(prior, True)
    return Belief(w1 * prior / denom, False)


def posterior_known_type(rule: Rule, outcome: int, sigma: float, prior: float, conjecture: StrategyPair) -> Belief:
    """Posterior after the rule and its outcome, built on the intermediate belief.

    Simple advice reveals nothing beyond the rule itself.  A point-mass
    intermediate belief stays put regardless of the outcome.
    """
    mid = intermediate_belief(rule, prior, conjecture)
    if rule is Rule.SIMPLE:
        return mid
    if mid.value in (0.0, 1.0):
        return mid
    hi, lo = posterior_beliefs(sigma, mid.value)
    return Belief(hi if outcome == 1 else lo, mid.off_path)


def expected_payoff_known(theta: int, rule: Rule, sigma: float, prior: float, conjecture: StrategyPair, psi) -> float:
    """Type-theta expected payoff from playing the given rule with certainty."""
    if rule is Rule.SIMPLE:
        return 0.5 + psi(intermediate_belief(Rule.SIMPLE, prior, conjecture).value)
    accuracy = 0.5 + 2.0 * sigma * theta
    hi = posterior_known_type(Rule.COMPLEX, 1, sigma, prior, conjecture).value
    lo = posterior_known_type(Rule.COMPLEX, 0, sigma, prior, conjecture).value
    return accuracy + accuracy * psi(hi) + (1.0 - accuracy) * psi(lo)


def omega(theta: int, sigma: float, prior: float, conjecture: StrategyPair, psi) -> float:
    """Type-theta value of mixing per the conjecture's own-type probability."""
    p = conjecture.of_type(theta)
    return p * expected_payoff_known(theta, Rule.COMPLEX, sigma, prior, conjecture, psi) + (
        1.0 - p
    ) * expected_payoff_known(theta, Rule.SIMPLE, sigma, prior, conjecture, psi)


def wage_payoff_known(theta: int, rule: Rule, sigma: float, wage: float, conjecture: StrategyPair) -> float:
    """Closed-form type payoffs in the wage regime with threshold = prior.

    Complex branches on p0 against p1*(1 -/+ 4*sigma); simple pays the wage
    exactly when p0 >= p1.  The prior drops out.
    """
    p0, p1 = conjecture.p0, conjecture.p1
    if rule is Rule.SIMPLE:
        return 0.5 + (wage if p0 >= p1 else 0.0)
    accuracy = 0.5 + 2.0 * sigma * theta
    four = 4.0 * sigma
    if p1 * (1.0 + four) < p0:
        reputation = 0.0
    elif p1 * (1.0 - four) < p0:
        reputation = accuracy * wage
    else:
        reputation = wage
    return accuracy + reputation


def wage_omega(theta: int, sigma: float, wage: float, conjecture: StrategyPair) -> float:
    p = conjecture.of_type(theta)
    return p * wage_payoff_known(theta, Rule.COMPLEX, sigma, wage, conjecture) + (1.0 - p) * wage_payoff_known(
        theta, Rule.SIMPLE, sigma, wage, conjecture
    )


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float
    lo_closed: bool = True
    hi_closed: bool = True

    def contains(self, p: float, tol: float = 0.0) -> bool:
        # The tolerance widens closed endpoints only; open ends stay strict.
        above = p >= self.lo - tol if self.lo_closed else p > self.lo
        below = p <= self.hi + tol if self.hi_closed else p < self.hi
        return above and below

    def describe(self) -> str:
        left = "[" if self.lo_closed else "("
        right = "]" if self.hi_closed else ")"
        return f"{left}{self.lo:.12g},{self.hi:.12g}{right}"


@dataclass(frozen=True)
class BestResponseSet:
    """Union of isolated points and intervals of best-response probabilities."""

    points: tuple[float, ...]
    intervals: tuple[Interval, ...] = ()

    def __post_init__(self) -> None:
        for p in self.points:
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"best-response point {p} outside [0, 1]")
        for iv in self.intervals:
            if not (0.0 <= iv.lo <= iv.hi <= 1.0):
                raise ValueError(f"best-response interval {iv} outside [0, 1]")

    def contains(self, p: float, tol: float = 0.0) -> bool:
        if any(abs(p - q) <= tol for q in self.points):
            return True
        return any(iv.contains(p, tol) for iv in self.intervals)

    def describe(self) -> str:
        parts = [f"{{{q:.12g}}}" for q in self.points[:1]]
        parts += [iv.describe() for iv in self.intervals]
        parts += [f"{{{q:.12g}}}" for q in self.points[1:]]
        return " u ".join(parts)


def knife_edge_wage(sigma: float) -> float:
    """Wage 4*sigma / (1 - 4*sigma) separating the competent type's regimes."""
    four = 4.0 * sigma
    if four >= 1.0:
        return math.inf
    return four / (1.0 - four)


def is_knife_edge(sigma: float, wage: float) -> bool:
    edge = knife_edge_wage(sigma)
    if not math.isfinite(edge):
        return False
    return abs(wage - edge) <= KNIFE_EDGE_RTOL * max(1.0, edge)


def _require_positive_wage(wage: float) -> None:
    # At wage 0 every strategy is payoff-equivalent and the closed forms below
    # would overstate their uniqueness.
    if wage <= 0.0:
        raise ValueError(f"wage must be positive, got {wage}")


def best_response_incompetent(sigma: float, wage: float, p1: float) -> BestResponseSet:
    """The incompetent type's unique best response: mimic the competent type."""
    _require_positive_wage(wage)
    if not 0.0 <= p1 <= 1.0:
        raise ValueError(f"p1 must lie in [0, 1], got {p1}")
    return BestResponseSet(points=(p1,))


def best_response_competent(sigma: float, wage: float, p0: float) -> BestResponseSet:
    """The competent type's best-response set against the incompetent's p0.

    {0} when mimicry is costly and the wage dominates both accuracy margins;
    the full union {0} u [p0/(1+4s), p0] u {1} on the knife edge
    wage = 4s/(1-4s) (detected with relative tolerance 1e-9); {1} otherwise.
    """
    _require_positive_wage(wage)
    if not 0.0 <= p0 <= 1.0:
        raise ValueError(f"p0 must lie in [0, 1], got {p0}")
    four = 4.0 * sigma
    # written as p0 > 1 - 4s so the comparison rounds exactly like the payoff
    # branch cut p0 <= p1 * (1 - 4s) at p1 = 1
    if four < 1.0 and p0 > 1.0 - four:
        if 2.0 * sigma < wage and is_knife_edge(sigma, wage):
            return BestResponseSet(points=(0.0, 1.0), intervals=(Interval(p0 / (1.0 + four), p0),))
        if wage > max(2.0 * sigma, knife_edge_wage(sigma)):
            return BestResponseSet(points=(0.0,))
    return BestResponseSet(points=(1.0,))


class EquilibriumKind(Enum):
    NO_EQUILIBRIUM = "no_equilibrium"
    UNIQUE_POOLING_ON_COMPLEX = "unique_pooling_on_complex"
    KNIFE_EDGE_CONTINUUM = "knife_edge_continuum"


@dataclass(frozen=True)
class EquilibriumReport:
    classification: EquilibriumKind
    continuum: Interval | None = None

    def __post_init__(self) -> None:
        if (self.continuum is not None) != (self.classification is EquilibriumKind.KNIFE_EDGE_CONTINUUM):
            raise ValueError("continuum must be present exactly for the knife-edge classification")


def classify_equilibria(sigma: float, wage: float) -> EquilibriumReport:
    """Equilibrium set of the wage game with threshold = prior.

    No equilibrium when the wage strictly dominates the knife edge; a
    continuum of pooling equilibria p0 = p1 in (1-4s, 1] exactly on the
    knife edge; otherwise unique pooling on the complex rule at (1, 1).
    """
    _require_positive_wage(wage)
    four = 4.0 * sigma
    if four < 1.0:
        if 2.0 * sigma < wage and is_knife_edge(sigma, wage):
            return EquilibriumReport(
                EquilibriumKind.KNIFE_EDGE_CONTINUUM,
                Interval(1.0 - four, 1.0, lo_closed=False, hi_closed=True),
            )
        if wage > max(2.0 * sigma, knife_edge_wage(sigma)):
            return EquilibriumReport(EquilibriumKind.NO_EQUILIBRIUM)
    return EquilibriumReport(EquilibriumKind.UNIQUE_POOLING_ON_COMPLEX)


def verify_no_pure_separating(sigma: float, prior: float, psi) -> bool:
    """Check that both pure separating profiles admit a profitable deviation.

    Requires an informative payoff, psi(0) < psi(1).  At (p0, p1) = (0, 1)
    the incompetent type gains by choosing the complex rule; at (1, 0) by
    choosing the simple rule.
    """
    if not psi(0.0) < psi(1.0):
        raise ValueError("psi must satisfy psi(0) < psi(1)")
    sep = StrategyPair(0.0, 1.0)
    gain_to_complex = expected_payoff_known(0, Rule.COMPLEX, sigma, prior, sep, psi) - expected_payoff_known(
        0, Rule.SIMPLE, sigma, prior, sep, psi
    )
    rev = StrategyPair(1.0, 0.0)
    gain_to_simple = expected_payoff_known(0, Rule.SIMPLE, sigma, prior, rev, psi) - expected_payoff_known(
        0, Rule.COMPLEX, sigma, prior, rev, psi
    )
    return gain_to_complex > 0.0 and gain_to_simple > 0.0
