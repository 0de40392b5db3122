"""Row builders behind the figure, choose, simulate and equilibria commands.

Each builder returns (meta, rows, warnings): a metadata dict, a list of
ordered row dicts, and human-readable warnings.  Row order is fixed by the
nested grid order of the inputs, so output is deterministic.
"""

from __future__ import annotations

import math
from typing import Any

from . import __version__
from .extensions import (
    NoisyObservation,
    delta_phi_general,
    expected_payoff_general,
    expected_reputation_general,
    posterior_general,
    prob_match_general,
    rule_choice_general,
)
from .known_type import (
    best_response_competent,
    best_response_incompetent,
    classify_equilibria,
    knife_edge_wage,
)
from .model import (
    Rule,
    choose_rule,
    delta_phi,
    expected_payoff,
    posterior_beliefs,
    success_probability,
)
from .params import ModelParams
from .reputation import ReputationFunction, StepReputation, linear, power
from .simulate import SimConfig, mc_delta_phi, simulate_game
from .wages import classify_regime, expected_payoff_wage

__all__ = [
    "build_reward",
    "build_psi",
    "figure1_rows",
    "figure2_rows",
    "figure3_rows",
    "figure4_rows",
    "choose_rows",
    "simulate_rows",
    "equilibria_rows",
]

NEAR_KNIFE_EDGE_RTOL = 1e-3

Row = dict[str, Any]


def _meta(command: str, params: dict[str, Any]) -> dict[str, Any]:
    return {"command": command, "version": __version__, "params": params}


def build_reward(kind: str, gamma: float) -> ReputationFunction:
    """Unit-scale reward shape for wage sweeps: belief, or belief**gamma."""
    if kind == "linear":
        return linear(1.0)
    if kind == "power":
        return power(gamma)
    raise ValueError(f"reward shape must be linear or power, got {kind!r}")


def build_psi(kind: str, gamma: float, wage: float, threshold: float):
    """Reputation payoff from a flat spec: linear/power scaled by the wage, or a step."""
    if kind == "step":
        return StepReputation(wage, threshold)
    if kind == "linear":
        return linear(wage)
    if kind == "power":
        return power(gamma, wage)
    raise ValueError(f"unknown psi kind {kind!r}")


def figure1_rows(sigmas, priors, wages, kind: str, gamma: float):
    """Payoff gain of complex advice as the wage scales a fixed reward shape.

    The gain is linear in the wage: 2*sigma*prior + w * (E[R(posterior)] - R(prior)).
    """
    reward = build_reward(kind, gamma)
    rows: list[Row] = []
    for sigma in sigmas:
        for prior in priors:
            hi, lo = posterior_beliefs(sigma, prior)
            p = success_probability(sigma, prior)
            base = 2.0 * sigma * prior
            slope = p * reward(hi) + (1.0 - p) * reward(lo) - reward(prior)
            for wage in wages:
                rows.append(
                    {"sigma": sigma, "pi0": prior, "w": wage, "delta_phi": base + wage * slope}
                )
    meta = _meta(
        "figure1",
        {"sigma": list(sigmas), "prior": list(priors), "wage": list(wages), "psi": kind, "gamma": gamma},
    )
    return meta, rows, []


def figure2_rows(sigmas, priors):
    rows: list[Row] = []
    for sigma in sigmas:
        for prior in priors:
            hi, lo = posterior_beliefs(sigma, prior)
            rows.append(
                {"sigma": sigma, "pi0": prior, "posterior_success": hi, "posterior_failure": lo}
            )
    meta = _meta("figure2", {"sigma": list(sigmas), "prior": list(priors)})
    return meta, rows, []


def figure3_rows(sigmas, wages, threshold, priors):
    rows: list[Row] = []
    for sigma in sigmas:
        for wage in wages:
            rep = StepReputation(wage, threshold)
            case = classify_regime(sigma, rep).case.value
            for prior in priors:
                params = ModelParams(sigma=sigma, prior=prior)
                rows.append(
                    {
                        "sigma": sigma,
                        "w": wage,
                        "pi0": prior,
                        "phi_complex": expected_payoff_wage(Rule.COMPLEX, params, rep).total,
                        "phi_simple": expected_payoff_wage(Rule.SIMPLE, params, rep).total,
                        "regime_case": case,
                    }
                )
    meta = _meta(
        "figure3",
        {"sigma": list(sigmas), "wage": list(wages), "threshold": threshold, "prior": list(priors)},
    )
    return meta, rows, []


def figure4_rows(sigmas, wages, p_grid):
    rows: list[Row] = []
    for sigma in sigmas:
        for wage in wages:
            classification = classify_equilibria(sigma, wage).classification.value
            for p_other in p_grid:
                rows.append(
                    {
                        "sigma": sigma,
                        "w": wage,
                        "p_other": p_other,
                        "best_response_incompetent": best_response_incompetent(sigma, wage, p_other).describe(),
                        "best_response_competent": best_response_competent(sigma, wage, p_other).describe(),
                        "classification": classification,
                    }
                )
    meta = _meta("figure4", {"sigma": list(sigmas), "wage": list(wages), "p_other": list(p_grid)})
    return meta, rows, []


def choose_rows(sigma, prior, prevalence, base_rate, kind, gamma, wage, threshold):
    psi = build_psi(kind, gamma, wage, threshold)
    params = ModelParams(sigma=sigma, prior=prior, prevalence=prevalence, base_rate=base_rate)
    if base_rate == 0.5:
        gain = delta_phi(params, psi)
        rule = choose_rule(params, psi)
        simple = expected_payoff(Rule.SIMPLE, params, psi)
        complex_ = expected_payoff(Rule.COMPLEX, params, psi)
    else:
        gain = delta_phi_general(params, psi)
        rule = rule_choice_general(params, psi)
        simple = expected_payoff_general(Rule.SIMPLE, params, psi)
        complex_ = expected_payoff_general(Rule.COMPLEX, params, psi)
    row: Row = {
        "sigma": sigma,
        "prior": prior,
        "prevalence": prevalence,
        "base_rate": base_rate,
        "psi": kind,
        "rule": rule.value,
        "delta_phi": gain,
        "accuracy_simple": simple.accuracy,
        "reputation_simple": simple.reputation,
        "total_simple": simple.total,
        "accuracy_complex": complex_.accuracy,
        "reputation_complex": complex_.reputation,
        "total_complex": complex_.total,
    }
    meta = _meta(
        "choose",
        {
            "sigma": sigma,
            "prior": prior,
            "prevalence": prevalence,
            "base_rate": base_rate,
            "psi": kind,
            "gamma": gamma,
            "wage": wage,
            "threshold": threshold,
        },
    )
    return meta, [row], []


def _simulate_analytics(params: ModelParams, psi, noise: NoisyObservation | None):
    """Closed-form counterparts of every statistic simulate_game reports."""
    a, x, prior = params.base_rate, params.prevalence, params.prior
    out: dict[str, float] = {}
    if a == 0.5:
        eff = params.sigma if noise is None else (1.0 - 2.0 * noise.epsilon) * params.sigma
        hi, lo = posterior_beliefs(eff, prior)
        p = success_probability(eff, prior)
        m1, m0 = 0.5 + 2.0 * eff, 0.5
        gain = 2.0 * eff * prior + p * psi(hi) + (1.0 - p) * psi(lo) - psi(prior)
        rep_complex = p * psi(hi) + (1.0 - p) * psi(lo)
        pr_y1_simple = 0.5
    else:
        m1, m0 = prob_match_general(1, params), prob_match_general(0, params)
        p = prior * m1 + (1.0 - prior) * m0
        gain = delta_phi_general(params, psi)
        rep_complex = expected_reputation_general(params, psi)
        pr_y1_simple = a
        post = posterior_general(params)
        hi, lo = post.on_success, post.on_failure
    out["pr_y1_simple"] = pr_y1_simple
    out["pr_y1_simple_theta0"] = pr_y1_simple
    out["pr_y1_simple_theta1"] = pr_y1_simple
    out["pr_y1_complex"] = p
    out["pr_y1_complex_theta0"] = m0
    out["pr_y1_complex_theta1"] = m1
    out["mean_posterior_simple"] = prior
    out["mean_posterior_complex"] = prior
    out["mean_reputation_simple"] = psi(prior)
    out["mean_reputation_complex"] = rep_complex
    out["mean_payoff_simple"] = pr_y1_simple + psi(prior)
    out["mean_payoff_complex"] = p + rep_complex
    out["pr_a1x1_theta0"] = a * x
    out["pr_a1x1_theta1"] = a * x + params.sigma
    out["pr_theta1_given_y1_complex"] = prior * m1 / p
    out["pr_theta1_given_y0_complex"] = prior * (1.0 - m1) / (1.0 - p)
    out["delta_phi"] = gain
    return out


def simulate_rows(sigma, prior, prevalence, base_rate, epsilon, kind, gamma, wage, threshold, seed, draws, workers):
    psi = build_psi(kind, gamma, wage, threshold)
    params = ModelParams(sigma=sigma, prior=prior, prevalence=prevalence, base_rate=base_rate)
    noise = NoisyObservation(epsilon) if epsilon > 0.0 else None
    config = SimConfig(seed=seed, n_draws=draws, workers=workers)
    analytics = _simulate_analytics(params, psi, noise)

    rows: list[Row] = []
    for rule in (Rule.SIMPLE, Rule.COMPLEX):
        estimates = simulate_game(params, psi, rule, config, noise=noise)
        for key, est in estimates.items():
            rows.append(
                {
                    "statistic": key,
                    "rule": rule.value,
                    "estimate": est.mean,
                    "std_error": est.std_error,
                    "n": est.n,
                    "analytic": analytics.get(key),
                }
            )
    gain = mc_delta_phi(params, psi, config, noise=noise)
    rows.append(
        {
            "statistic": "delta_phi",
            "rule": "paired",
            "estimate": gain.mean,
            "std_error": gain.std_error,
            "n": gain.n,
            "analytic": analytics["delta_phi"],
        }
    )
    meta = _meta(
        "simulate",
        {
            "sigma": sigma,
            "prior": prior,
            "prevalence": prevalence,
            "base_rate": base_rate,
            "epsilon": epsilon,
            "psi": kind,
            "gamma": gamma,
            "wage": wage,
            "threshold": threshold,
            "seed": seed,
            "draws": draws,
            "workers": workers,
        },
    )
    return meta, rows, []


def equilibria_rows(sigma, wage):
    report = classify_equilibria(sigma, wage)
    edge = knife_edge_wage(sigma)
    near = math.isfinite(edge) and abs(wage - edge) <= NEAR_KNIFE_EDGE_RTOL * max(1.0, edge)
    row: Row = {
        "sigma": sigma,
        "wage": wage,
        "classification": report.classification.value,
        "continuum_lo": report.continuum.lo if report.continuum else None,
        "continuum_hi": report.continuum.hi if report.continuum else None,
        "knife_edge_wage": edge if math.isfinite(edge) else None,
        "near_knife_edge": near,
    }
    warnings = []
    if near:
        warnings.append(
            f"wage {wage:g} is within {NEAR_KNIFE_EDGE_RTOL:g} (relative) of the knife edge "
            f"4*sigma/(1-4*sigma) = {edge:.12g}; the classification is tolerance-sensitive"
        )
    meta = _meta("equilibria", {"sigma": sigma, "wage": wage})
    return meta, [row], warnings
