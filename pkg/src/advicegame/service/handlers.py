"""Pure request-to-response handlers shared by the HTTP app and the CLI."""

from __future__ import annotations

from .. import reports
from . import schemas as s


def figure1(req: s.Figure1Request) -> s.Figure1Response:
    meta, rows, warnings = reports.figure1_rows(req.sigma, req.prior, req.wage, req.psi.kind, req.psi.gamma)
    return s.Figure1Response(meta=s.RunMeta(**meta), rows=[s.Figure1Row(**r) for r in rows], warnings=warnings)


def figure2(req: s.Figure2Request) -> s.Figure2Response:
    meta, rows, warnings = reports.figure2_rows(req.sigma, req.prior)
    return s.Figure2Response(meta=s.RunMeta(**meta), rows=[s.Figure2Row(**r) for r in rows], warnings=warnings)


def figure3(req: s.Figure3Request) -> s.Figure3Response:
    meta, rows, warnings = reports.figure3_rows(req.sigma, req.wage, req.threshold, req.prior)
    return s.Figure3Response(meta=s.RunMeta(**meta), rows=[s.Figure3Row(**r) for r in rows], warnings=warnings)


def figure4(req: s.Figure4Request) -> s.Figure4Response:
    meta, rows, warnings = reports.figure4_rows(req.sigma, req.wage, req.p_other)
    return s.Figure4Response(meta=s.RunMeta(**meta), rows=[s.Figure4Row(**r) for r in rows], warnings=warnings)


def choose(req: s.ChooseRequest) -> s.ChooseResponse:
    meta, rows, warnings = reports.choose_rows(
        req.sigma,
        req.prior,
        req.prevalence,
        req.base_rate,
        req.psi.kind,
        req.psi.gamma,
        req.psi.wage,
        req.psi.threshold,
    )
    return s.ChooseResponse(meta=s.RunMeta(**meta), rows=[s.ChooseRow(**r) for r in rows], warnings=warnings)


def simulate(req: s.SimulateRequest) -> s.SimulateResponse:
    meta, rows, warnings = reports.simulate_rows(
        req.sigma,
        req.prior,
        req.prevalence,
        req.base_rate,
        req.epsilon,
        req.psi.kind,
        req.psi.gamma,
        req.psi.wage,
        req.psi.threshold,
        req.seed,
        req.draws,
        req.workers,
    )
    return s.SimulateResponse(meta=s.RunMeta(**meta), rows=[s.SimulateRow(**r) for r in rows], warnings=warnings)


def equilibria(req: s.EquilibriaRequest) -> s.EquilibriaResponse:
    meta, rows, warnings = reports.equilibria_rows(req.sigma, req.wage)
    return s.EquilibriaResponse(
        meta=s.RunMeta(**meta), rows=[s.EquilibriumRow(**r) for r in rows], warnings=warnings
    )
