"""Expert-advice reputation game: belief updating, rule choice, wage regimes,
the known-type signaling game, and a seeded Monte-Carlo oracle."""

__version__ = "0.1.0"

from .params import InfeasibleParametersError, ModelParams
from .reputation import ReputationFunction, StepReputation, constant, linear, power, step, tabulated
from .model import (
    PayoffBreakdown,
    PosteriorPair,
    Rule,
    choose_rule,
    delta_phi,
    delta_phi_prior_derivative,
    expected_payoff,
    expected_reputation_complex,
    posterior,
    posterior_partials,
    prob_correct_given_type,
    prob_correct_marginal,
    w_star,
    wage_bound_concave,
)
from .wages import (
    RegimeCase,
    WageRegimeReport,
    WageThresholds,
    classify_regime,
    complex_iff_wage,
    expected_payoff_wage,
    pi_dagger,
    thresholds,
)
from .extensions import (
    AttentionChoice,
    AttentionProblem,
    NoisyObservation,
    interior_attention,
    lhs_increasing_in_a,
    noisy_accuracy,
    optimal_attention,
    prob_match_general,
    rule_choice_general,
    sigma_from_correlation,
)
from .known_type import (
    BestResponseSet,
    EquilibriumKind,
    EquilibriumReport,
    Interval,
    StrategyPair,
    best_response_competent,
    best_response_incompetent,
    classify_equilibria,
    expected_payoff_known,
    intermediate_belief,
    posterior_known_type,
    verify_no_pure_separating,
    wage_payoff_known,
)
from .simulate import (
    JointDistribution,
    SimConfig,
    SimEstimate,
    build_joint,
    mc_delta_phi,
    mc_known_type_payoff,
    simulate_game,
)
