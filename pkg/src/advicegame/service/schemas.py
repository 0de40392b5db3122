"""Request and response models for the service endpoints.

The CLI builds the same request models from its flags, so flag names,
config-file keys and JSON fields all agree.
"""

from __future__ import annotations

from typing import Annotated, Any, Literal, Optional

import numpy as np
from pydantic import BaseModel, Field, model_validator

DEFAULT_SEED = 12345
DEFAULT_DRAWS = 1_000_000

Sigma = Annotated[float, Field(gt=0.0, le=0.25)]
OpenUnit = Annotated[float, Field(gt=0.0, lt=1.0)]
Probability = Annotated[float, Field(ge=0.0, le=1.0)]
NonNegative = Annotated[float, Field(ge=0.0)]


def unit_grid(n: int = 501) -> list[float]:
    """n evenly spaced interior points of (0, 1)."""
    return [float(v) for v in np.linspace(0.0, 1.0, n + 2)[1:-1]]


def span_grid(lo: float, hi: float, n: int) -> list[float]:
    return [float(v) for v in np.linspace(lo, hi, n)]


class PsiSpec(BaseModel):
    """Reputation payoff spec: linear or power reward scaled by a wage, or a step."""

    kind: Literal["linear", "power", "step"] = "power"
    gamma: Annotated[float, Field(gt=0.0)] = 0.5
    wage: NonNegative = 1.0
    threshold: OpenUnit = 0.5


class Figure1Request(BaseModel):
    sigma: list[Sigma] = Field(default=[0.1, 0.2], min_length=1)
    prior: list[OpenUnit] = Field(default=[0.25, 0.5, 0.75], min_length=1)
    wage: list[NonNegative] = Field(default_factory=lambda: span_grid(0.0, 10.0, 501), min_length=1)
    psi: PsiSpec = PsiSpec(kind="power", gamma=0.5)

    @model_validator(mode="after")
    def _reward_shape_only(self) -> "Figure1Request":
        if self.psi.kind == "step":
            raise ValueError("figure1 sweeps the wage over a linear or power reward shape")
        return self


class Figure1Row(BaseModel):
    sigma: float
    pi0: float
    w: float
    delta_phi: float


class Figure2Request(BaseModel):
    sigma: list[Sigma] = Field(default=[0.1, 0.2], min_length=1)
    prior: list[OpenUnit] = Field(default_factory=unit_grid, min_length=1)


class Figure2Row(BaseModel):
    sigma: float
    pi0: float
    posterior_success: float
    posterior_failure: float


class Figure3Request(BaseModel):
    sigma: list[Sigma] = Field(default=[0.1, 0.2], min_length=1)
    wage: list[NonNegative] = Field(default=[0.5, 1.0], min_length=1)
    threshold: OpenUnit = 0.5
    prior: list[OpenUnit] = Field(default_factory=unit_grid, min_length=1)


class Figure3Row(BaseModel):
    sigma: float
    w: float
    pi0: float
    phi_complex: float
    phi_simple: float
    regime_case: str


class Figure4Request(BaseModel):
    sigma: list[Sigma] = Field(default=[0.1, 0.2], min_length=1)
    wage: list[Annotated[float, Field(gt=0.0)]] = Field(default=[0.5, 1.0, 5.0], min_length=1)
    p_other: list[Probability] = Field(default_factory=lambda: span_grid(0.0, 1.0, 101), min_length=1)


class Figure4Row(BaseModel):
    sigma: float
    w: float
    p_other: float
    best_response_incompetent: str
    best_response_competent: str
    classification: str


class ChooseRequest(BaseModel):
    sigma: Sigma
    prior: OpenUnit
    prevalence: OpenUnit = 0.5
    base_rate: OpenUnit = 0.5
    psi: PsiSpec = PsiSpec()


class ChooseRow(BaseModel):
    sigma: float
    prior: float
    prevalence: float
    base_rate: float
    psi: str
    rule: str
    delta_phi: float
    accuracy_simple: float
    reputation_simple: float
    total_simple: float
    accuracy_complex: float
    reputation_complex: float
    total_complex: float


class SimulateRequest(BaseModel):
    sigma: Sigma
    prior: OpenUnit
    prevalence: OpenUnit = 0.5
    base_rate: OpenUnit = 0.5
    epsilon: Annotated[float, Field(ge=0.0, le=0.5)] = 0.0
    psi: PsiSpec = PsiSpec()
    seed: Annotated[int, Field(ge=0, lt=2**64)] = DEFAULT_SEED
    draws: Annotated[int, Field(ge=1)] = DEFAULT_DRAWS
    workers: Annotated[int, Field(ge=1)] = 1

    @model_validator(mode="after")
    def _noise_needs_even_base_rate(self) -> "SimulateRequest":
        if self.epsilon > 0.0 and self.base_rate != 0.5:
            raise ValueError("epsilon > 0 requires base_rate = 0.5")
        return self


class SimulateRow(BaseModel):
    statistic: str
    rule: str
    estimate: float
    std_error: float
    n: int
    analytic: Optional[float] = None


class EquilibriaRequest(BaseModel):
    sigma: Sigma
    wage: Annotated[float, Field(gt=0.0)]


class EquilibriumRow(BaseModel):
    sigma: float
    wage: float
    classification: str
    continuum_lo: Optional[float] = None
    continuum_hi: Optional[float] = None
    knife_edge_wage: Optional[float] = None
    near_knife_edge: bool


class RunMeta(BaseModel):
    command: str
    version: str
    params: dict[str, Any]


class Figure1Response(BaseModel):
    meta: RunMeta
    rows: list[Figure1Row]
    warnings: list[str] = []


class Figure2Response(BaseModel):
    meta: RunMeta
    rows: list[Figure2Row]
    warnings: list[str] = []


class Figure3Response(BaseModel):
    meta: RunMeta
    rows: list[Figure3Row]
    warnings: list[str] = []


class Figure4Response(BaseModel):
    meta: RunMeta
    rows: list[Figure4Row]
    warnings: list[str] = []


class ChooseResponse(BaseModel):
    meta: RunMeta
    rows: list[ChooseRow]
    warnings: list[str] = []


class SimulateResponse(BaseModel):
    meta: RunMeta
    rows: list[SimulateRow]
    warnings: list[str] = []


class EquilibriaResponse(BaseModel):
    meta: RunMeta
    rows: list[EquilibriumRow]
    warnings: list[str] = []
