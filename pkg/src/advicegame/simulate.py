"""Seeded Monte-Carlo generative model of the advice game.

Draws use numpy's Philox counter-based generator (philox4x64).  Each block
of 65,536 draws runs on its own counter region derived from (seed, block
index), and all statistics reduce to integer count tensors, so estimates
are bit-identical for a given (seed, n_draws) regardless of the worker
count or scheduling.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Literal, Union

import numpy as np

from .extensions import NoisyObservation, delta_phi_general, effective_sigma, posterior_general
from .known_type import StrategyPair, intermediate_belief
from .model import Rule, posterior_beliefs, success_probability
from .params import CELL_NAMES, ModelParams, check_joint_feasible, joint_cells
from .reputation import StepReputation

__all__ = [
    "BLOCK_SIZE",
    "JointDistribution",
    "SimConfig",
    "SimEstimate",
    "RulePolicy",
    "build_joint",
    "simulate_game",
    "mc_delta_phi",
    "mc_known_type_payoff",
]

BLOCK_SIZE = 65536
_SUM_TOL = 1e-12


@dataclass(frozen=True)
class JointDistribution:
    """Joint law of (A, X) on {0,1}^2, in cell order 11, 10, 01, 00."""

    p11: float
    p10: float
    p01: float
    p00: float

    def __post_init__(self) -> None:
        cells = (self.p11, self.p10, self.p01, self.p00)
        for name, cell in zip(CELL_NAMES, cells):
            if not 0.0 <= cell <= 1.0:
                raise ValueError(f"cell {name} = {cell} outside [0, 1]")
        if abs(sum(cells) - 1.0) > _SUM_TOL:
            raise ValueError(f"cells sum to {sum(cells)}, not 1")

    def cdf(self) -> np.ndarray:
        out = np.cumsum([self.p11, self.p10, self.p01, self.p00])
        out[-1] = 1.0
        return out


def build_joint(theta: int, params: ModelParams) -> JointDistribution:
    """Joint law of (A, X_theta); raises naming the violated cell if infeasible."""
    check_joint_feasible(theta, params.sigma, params.prevalence, params.base_rate)
    cells = joint_cells(theta, params.sigma, params.prevalence, params.base_rate)
    clipped = tuple(min(1.0, max(0.0, c)) for c in cells)
    return JointDistribution(*clipped)


@dataclass(frozen=True)
class SimConfig:
    seed: int
    n_draws: int
    workers: int = 1

    def __post_init__(self) -> None:
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.n_draws < 1:
            raise ValueError("n_draws must be at least 1")
        if self.workers < 1:
            raise ValueError("workers must be at least 1")


@dataclass(frozen=True)
class SimEstimate:
    """Monte-Carlo mean with its standard error and sample count."""

    mean: float
    std_error: float
    n: int


RulePolicy = Union[Rule, StrategyPair, Literal["choose"]]


def _block_rng(seed: int, block_index: int) -> np.random.Generator:
    # One counter region of 2**128 states per block; a block consumes far fewer.
    return np.random.Generator(np.random.Philox(key=seed, counter=block_index << 128))


def _block_plan(n_draws: int) -> list[tuple[int, int]]:
    plan = []
    start = 0
    index = 0
    while start < n_draws:
        count = min(BLOCK_SIZE, n_draws - start)
        plan.append((index, count))
        start += count
        index += 1
    return plan


def _map_blocks(config: SimConfig, block_fn):
    plan = _block_plan(config.n_draws)
    if config.workers == 1 or len(plan) == 1:
        results = [block_fn(index, count) for index, count in plan]
    else:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            results = list(pool.map(lambda item: block_fn(*item), plan))
    totals = results[0]
    for part in results[1:]:
        totals = tuple(a + b for a, b in zip(totals, part))
    return totals


def _sample_cells(u: np.ndarray, theta: np.ndarray, cdf0: np.ndarray, cdf1: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    idx0 = np.searchsorted(cdf0, u, side="right")
    idx1 = np.searchsorted(cdf1, u, side="right")
    idx = np.minimum(np.where(theta, idx1, idx0), 3)
    return idx < 2, (idx % 2) == 0  # A, X


def _estimate_from_counts(successes: int, n: int) -> SimEstimate:
    p = successes / n
    return SimEstimate(p, math.sqrt(max(0.0, p * (1.0 - p) / n)), n)


def _estimate_from_values(counts: np.ndarray, values: np.ndarray) -> SimEstimate:
    n = int(counts.sum())
    mean = float((counts * values).sum() / n)
    if n > 1:
        var = float((counts * (values - mean) ** 2).sum() / (n - 1))
    else:
        var = 0.0
    return SimEstimate(mean, math.sqrt(var / n), n)


def _resolve_policy(params: ModelParams, psi, rule_policy: RulePolicy, noise: NoisyObservation | None):
    """Per-type complex-rule probabilities and the conjecture, if any."""
    if isinstance(rule_policy, Rule):
        p = 1.0 if rule_policy is Rule.COMPLEX else 0.0
        return (p, p), None
    if isinstance(rule_policy, StrategyPair):
        return (rule_policy.p0, rule_policy.p1), rule_policy
    if rule_policy == "choose":
        gain = _analytic_gain(params, psi, noise)
        p = 1.0 if gain >= 0.0 else 0.0
        return (p, p), None
    raise ValueError(f"unknown rule policy {rule_policy!r}")


def _analytic_gain(params: ModelParams, psi, noise: NoisyObservation | None) -> float:
    if params.base_rate != 0.5:
        return delta_phi_general(params, psi)
    s_eff = effective_sigma(params.sigma, noise)
    hi, lo = posterior_beliefs(s_eff, params.prior)
    p = success_probability(s_eff, params.prior)
    return 2.0 * s_eff * params.prior + p * psi(hi) + (1.0 - p) * psi(lo) - psi(params.prior)


def _belief_values(params: ModelParams, noise: NoisyObservation | None, conjecture: StrategyPair | None):
    """(simple_belief, success_belief, failure_belief) the advisee ends up with.

    With a conjecture the rule itself moves beliefs; otherwise the simple
    rule reveals nothing.  The advisee knows the error rate, so updating
    under noise runs on the effective covariance.
    """
    s_eff = effective_sigma(params.sigma, noise)
    if conjecture is not None:
        simple = intermediate_belief(Rule.SIMPLE, params.prior, conjecture).value
        mid = intermediate_belief(Rule.COMPLEX, params.prior, conjecture).value
        if mid in (0.0, 1.0):
            return simple, mid, mid
        hi, lo = posterior_beliefs(s_eff, mid)
        return simple, hi, lo
    if params.base_rate != 0.5:
        post = posterior_general(params)
        return params.prior, post.on_success, post.on_failure
    hi, lo = posterior_beliefs(s_eff, params.prior)
    return params.prior, hi, lo


def simulate_game(
    params: ModelParams,
    psi,
    rule_policy: RulePolicy,
    config: SimConfig,
    noise: NoisyObservation | None = None,
) -> dict[str, SimEstimate]:
    """Simulate the full game and estimate its headline statistics.

    Per draw: type ~ Bernoulli(prior); (A, X_type) from the induced joint
    law; the observed condition flips with probability epsilon; the rule
    comes from the policy; Y = A under simple advice and 1{A = observed X}
    under complex advice; beliefs follow the analytic Bayes maps.

    Returns estimates keyed per rule: outcome frequencies (marginal and by
    type), mean posterior, mean reputation payoff and mean total payoff,
    plus the played complex-rule frequencies per type for mixed policies
    and diagnostics of the sampled joint law and the Bayes map.
    """
    if noise is not None and params.base_rate != 0.5:
        raise ValueError("measurement errors require base_rate = 0.5")
    cdf0 = build_joint(0, params).cdf()
    cdf1 = build_joint(1, params).cdf()
    (pc0, pc1), conjecture = _resolve_policy(params, psi, rule_policy, noise)
    simple_belief, hi, lo = _belief_values(params, noise, conjecture)
    eps = noise.epsilon if noise is not None else 0.0
    prior = params.prior

    def run_block(index: int, count: int):
        rng = _block_rng(config.seed, index)
        u_theta = rng.random(count)
        u_cell = rng.random(count)
        u_flip = rng.random(count)
        u_rule = rng.random(count)
        theta = u_theta < prior
        a, x = _sample_cells(u_cell, theta, cdf0, cdf1)
        x_hat = x ^ (u_flip < eps)
        complex_mask = u_rule < np.where(theta, pc1, pc0)
        y = np.where(complex_mask, a == x_hat, a)
        code_ryt = (
            complex_mask.astype(np.int64) * 4 + theta.astype(np.int64) * 2 + y.astype(np.int64)
        )
        counts_ryt = np.bincount(code_ryt, minlength=8).reshape(2, 2, 2)
        code_tax = theta.astype(np.int64) * 4 + a.astype(np.int64) * 2 + x.astype(np.int64)
        counts_tax = np.bincount(code_tax, minlength=8).reshape(2, 2, 2)
        return counts_ryt, counts_tax

    counts_ryt, counts_tax = _map_blocks(config, run_block)

    estimates: dict[str, SimEstimate] = {}
    rule_names = {0: "simple", 1: "complex"}
    beliefs = {0: (simple_belief, simple_belief), 1: (hi, lo)}
    for r, name in rule_names.items():
        block = counts_ryt[r]
        n_rule = int(block.sum())
        if n_rule == 0:
            continue
        estimates[f"pr_y1_{name}"] = _estimate_from_counts(int(block[:, 1].sum()), n_rule)
        for t in (0, 1):
            n_cell = int(block[t].sum())
            if n_cell:
                estimates[f"pr_y1_{name}_theta{t}"] = _estimate_from_counts(int(block[t, 1]), n_cell)
        belief_hi, belief_lo = beliefs[r]
        k_hi = int(block[:, 1].sum())
        k_lo = n_rule - k_hi
        counts_pair = np.array([k_hi, k_lo], dtype=np.int64)
        estimates[f"mean_posterior_{name}"] = _estimate_from_values(
            counts_pair, np.array([belief_hi, belief_lo])
        )
        estimates[f"mean_reputation_{name}"] = _estimate_from_values(
            counts_pair, np.array([psi(belief_hi), psi(belief_lo)])
        )
        estimates[f"mean_payoff_{name}"] = _estimate_from_values(
            counts_pair, np.array([1.0 + psi(belief_hi), psi(belief_lo)])
        )
    if isinstance(rule_policy, StrategyPair):
        for t in (0, 1):
            n_type = int(counts_ryt[:, t].sum())
            if n_type:
                estimates[f"pr_complex_theta{t}"] = _estimate_from_counts(
                    int(counts_ryt[1, t].sum()), n_type
                )
    for t in (0, 1):
        n_type = int(counts_tax[t].sum())
        if n_type:
            estimates[f"pr_a1x1_theta{t}"] = _estimate_from_counts(int(counts_tax[t, 1, 1]), n_type)
    for y in (1, 0):
        n_bin = int(counts_ryt[1, :, y].sum())
        if n_bin:
            estimates[f"pr_theta1_given_y{y}_complex"] = _estimate_from_counts(
                int(counts_ryt[1, 1, y]), n_bin
            )
    return estimates


def mc_delta_phi(
    params: ModelParams,
    psi,
    config: SimConfig,
    noise: NoisyObservation | None = None,
) -> SimEstimate:
    """Paired estimate of the complex-minus-simple payoff gain.

    Both rules are evaluated on common draws of (type, A, observed X), so
    the estimator's variance reflects only the genuinely random part.
    """
    if noise is not None and params.base_rate != 0.5:
        raise ValueError("measurement errors require base_rate = 0.5")
    cdf0 = build_joint(0, params).cdf()
    cdf1 = build_joint(1, params).cdf()
    simple_belief, hi, lo = _belief_values(params, noise, None)
    psi_simple = psi(simple_belief)
    eps = noise.epsilon if noise is not None else 0.0
    prior = params.prior

    def run_block(index: int, count: int):
        rng = _block_rng(config.seed, index)
        u_theta = rng.random(count)
        u_cell = rng.random(count)
        u_flip = rng.random(count)
        rng.random(count)  # keep the draw layout shared with simulate_game
        theta = u_theta < prior
        a, x = _sample_cells(u_cell, theta, cdf0, cdf1)
        x_hat = x ^ (u_flip < eps)
        y_complex = (a == x_hat).astype(np.int64)
        y_simple = a.astype(np.int64)
        code = y_complex * 2 + y_simple
        return (np.bincount(code, minlength=4),)

    (counts,) = _map_blocks(config, run_block)
    # per-draw difference (y_complex - y_simple) + psi(posterior) - psi(simple belief),
    # laid out in the same (y_complex, y_simple) code order as the counts
    values = np.array(
        [(yc - ys) + psi(hi if yc else lo) - psi_simple for yc in (0, 1) for ys in (0, 1)]
    )
    return _estimate_from_values(counts, values)


def mc_known_type_payoff(
    theta: int,
    sigma: float,
    prior: float,
    conjecture: StrategyPair,
    wage: float,
    config: SimConfig,
) -> SimEstimate:
    """Simulated value of a known-type expert mixing per the conjecture.

    The wage regime has its threshold at the prior; beliefs follow the
    conjecture.  The estimate targets the type's expected payoff.
    """
    if theta not in (0, 1):
        raise ValueError("theta must be 0 or 1")
    params = ModelParams(sigma=sigma, prior=prior)
    cdf = build_joint(theta, params).cdf()
    psi = StepReputation(wage, prior)

    simple_belief = intermediate_belief(Rule.SIMPLE, prior, conjecture).value
    mid = intermediate_belief(Rule.COMPLEX, prior, conjecture).value
    if mid in (0.0, 1.0):
        hi = lo = mid
    else:
        hi, lo = posterior_beliefs(sigma, mid)
    p_complex = conjecture.of_type(theta)
    # payoff by (rule, outcome): y + psi(belief after (rule, y))
    values = np.array(
        [
            [psi(simple_belief), 1.0 + psi(simple_belief)],
            [psi(lo), 1.0 + psi(hi)],
        ]
    )

    def run_block(index: int, count: int):
        rng = _block_rng(config.seed, index)
        u_rule = rng.random(count)
        u_cell = rng.random(count)
        complex_mask = u_rule < p_complex
        idx = np.minimum(np.searchsorted(cdf, u_cell, side="right"), 3)
        a = idx < 2
        x = (idx % 2) == 0
        y = np.where(complex_mask, a == x, a)
        code = complex_mask.astype(np.int64) * 2 + y.astype(np.int64)
        return (np.bincount(code, minlength=4),)

    (counts,) = _map_blocks(config, run_block)
    return _estimate_from_values(counts.reshape(2, 2), values)
