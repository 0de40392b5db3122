"""Reputation payoff functions of the posterior belief about competence."""

from __future__ import annotations

import math
from typing import Callable, Optional

import numpy as np

__all__ = [
    "ReputationFunction",
    "StepReputation",
    "constant",
    "linear",
    "power",
    "step",
    "tabulated",
    "slope",
]

PROBE_POINTS = 1001
FD_STEP = 1e-6
_MONOTONE_TOL = 1e-12


class ReputationFunction:
    """Non-decreasing payoff psi of the posterior belief about competence.

    Monotonicity is validated on a 1001-point probe grid at construction.
    By default the function must be informative, psi(0) < psi(1); pass
    ``allow_flat=True`` for degenerate instances (constants, zero wage)
    used as building blocks and oracles.

    ``shape_tag`` is declared, not inferred; callers that branch on
    convexity trust the tag.
    """

    __slots__ = ("fn", "derivative", "shape_tag")

    def __init__(
        self,
        fn: Callable[[float], float],
        derivative: Optional[Callable[[float], float]] = None,
        shape_tag: str = "general",
        *,
        allow_flat: bool = False,
    ) -> None:
        if shape_tag not in ("linear", "convex", "concave", "step", "general"):
            raise ValueError(f"unknown shape_tag {shape_tag!r}")
        probe = [fn(i / (PROBE_POINTS - 1)) for i in range(PROBE_POINTS)]
        for left, right in zip(probe, probe[1:]):
            if right < left - _MONOTONE_TOL:
                raise ValueError("reputation payoff must be non-decreasing on [0, 1]")
        if not allow_flat and not probe[0] < probe[-1]:
            raise ValueError("reputation payoff must satisfy psi(0) < psi(1)")
        self.fn = fn
        self.derivative = derivative
        self.shape_tag = shape_tag

    def __call__(self, belief: float) -> float:
        return self.fn(belief)

    def deriv(self, belief: float) -> float:
        """psi'(belief): analytic when supplied, otherwise a central finite
        difference with step 1e-6, one-sided at the ends of [0, 1]."""
        if self.derivative is not None:
            return self.derivative(belief)
        lo = max(0.0, belief - FD_STEP)
        hi = min(1.0, belief + FD_STEP)
        return (self.fn(hi) - self.fn(lo)) / (hi - lo)

    def __repr__(self) -> str:
        return f"{type(self).__name__}(shape_tag={self.shape_tag!r})"


class StepReputation(ReputationFunction):
    """Wage paid exactly when the belief clears a replacement threshold.

    psi(pi) = wage if pi >= threshold else 0 (right-closed at the threshold).
    """

    __slots__ = ("wage", "threshold")

    def __init__(self, wage: float, threshold: float) -> None:
        if wage < 0.0:
            raise ValueError(f"wage must be non-negative, got {wage}")
        if not 0.0 < threshold < 1.0:
            raise ValueError(f"threshold must lie in (0, 1), got {threshold}")
        super().__init__(
            lambda belief: wage if belief >= threshold else 0.0,
            shape_tag="step",
            allow_flat=(wage == 0.0),
        )
        self.wage = wage
        self.threshold = threshold

    def __repr__(self) -> str:
        return f"StepReputation(wage={self.wage!r}, threshold={self.threshold!r})"


def linear(scale: float = 1.0) -> ReputationFunction:
    if scale <= 0.0:
        raise ValueError("scale must be positive; use constant() for a flat payoff")
    return ReputationFunction(lambda b: scale * b, lambda b: scale, "linear")


def power(exponent: float, scale: float = 1.0) -> ReputationFunction:
    """psi(pi) = scale * pi ** exponent; concave for exponent < 1, convex for > 1."""
    if exponent <= 0.0 or scale <= 0.0:
        raise ValueError("exponent and scale must be positive")
    shape = "concave" if exponent < 1.0 else ("convex" if exponent > 1.0 else "linear")

    def deriv(b: float) -> float:
        if b == 0.0 and exponent < 1.0:
            return math.inf
        return scale * exponent * b ** (exponent - 1.0)

    return ReputationFunction(lambda b: scale * b**exponent, deriv, shape)


def step(wage: float, threshold: float) -> StepReputation:
    return StepReputation(wage, threshold)


def constant(value: float) -> ReputationFunction:
    return ReputationFunction(lambda b: value, lambda b: 0.0, "linear", allow_flat=True)


def tabulated(knots: np.ndarray | list[float], values: np.ndarray | list[float], shape_tag: str = "general") -> ReputationFunction:
    """Piecewise-linear payoff through (knots, values); knots must be increasing."""
    xs = np.asarray(knots, dtype=float)
    ys = np.asarray(values, dtype=float)
    if xs.ndim != 1 or xs.shape != ys.shape or xs.size < 2:
        raise ValueError("knots and values must be 1-d arrays of equal length >= 2")
    if np.any(np.diff(xs) <= 0):
        raise ValueError("knots must be strictly increasing")
    return ReputationFunction(lambda b: float(np.interp(b, xs, ys)), shape_tag=shape_tag)


def slope(psi, belief: float) -> float:
    """Derivative of an arbitrary payoff at a belief, with the same fallback
    rules as ReputationFunction.deriv."""
    deriv = getattr(psi, "deriv", None)
    if deriv is not None:
        return deriv(belief)
    lo = max(0.0, belief - FD_STEP)
    hi = min(1.0, belief + FD_STEP)
    return (psi(hi) - psi(lo)) / (hi - lo)
