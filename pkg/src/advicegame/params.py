"""Primitive parameters of the advice game."""

from __future__ import annotations

from dataclasses import dataclass

__all__ = ["InfeasibleParametersError", "ModelParams", "joint_cells"]

CELL_NAMES = ("p11", "p10", "p01", "p00")
FEASIBILITY_TOL = 1e-12


class InfeasibleParametersError(ValueError):
    """The parameters do not induce a valid joint law of (action, condition)."""


def joint_cells(theta: int, sigma: float, prevalence: float, base_rate: float) -> tuple[float, float, float, float]:
    """Cells (p11, p10, p01, p00) of the joint law of (A, X) for a type-theta expert.

    Marginals are Pr(A=1) = base_rate and Pr(X=1) = prevalence; the covariance
    of A and X equals theta * sigma, which pins down all four cells.
    """
    a, x, cov = base_rate, prevalence, theta * sigma
    return (
        a * x + cov,
        a * (1.0 - x) - cov,
        (1.0 - a) * x - cov,
        (1.0 - a) * (1.0 - x) + cov,
    )


def check_joint_feasible(theta: int, sigma: float, prevalence: float, base_rate: float) -> None:
    """Raise InfeasibleParametersError naming the first cell outside [0, 1]."""
    for name, cell in zip(CELL_NAMES, joint_cells(theta, sigma, prevalence, base_rate)):
        if cell < -FEASIBILITY_TOL or cell > 1.0 + FEASIBILITY_TOL:
            raise InfeasibleParametersError(
                f"joint cell {name} = {cell:.6g} lies outside [0, 1] for theta={theta} "
                f"(sigma={sigma:.6g}, prevalence={prevalence:.6g}, base_rate={base_rate:.6g})"
            )


@dataclass(frozen=True)
class ModelParams:
    """Parameter bundle: covariance, prior competence belief, condition prevalence, base rate.

    sigma must lie in (0, 0.25]; prior, prevalence and base_rate in (0, 1).
    Construction also checks that the induced joint law of (A, X_1) is a
    valid distribution, so every ModelParams instance is simulable.
    """

    sigma: float
    prior: float
    prevalence: float = 0.5
    base_rate: float = 0.5

    def __post_init__(self) -> None:
        if not 0.0 < self.sigma <= 0.25:
            raise ValueError(f"sigma must lie in (0, 0.25], got {self.sigma}")
        if not 0.0 < self.prior < 1.0:
            raise ValueError(f"prior must lie in (0, 1), got {self.prior}")
        if not 0.0 < self.prevalence < 1.0:
            raise ValueError(f"prevalence must lie in (0, 1), got {self.prevalence}")
        if not 0.0 < self.base_rate < 1.0:
            raise ValueError(f"base_rate must lie in (0, 1), got {self.base_rate}")
        check_joint_feasible(1, self.sigma, self.prevalence, self.base_rate)
