"""FastAPI application exposing the game computations.

Run with: uvicorn advicegame.service.app:app
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from .. import __version__
from ..params import InfeasibleParametersError
from . import handlers
from . import schemas as s

app = FastAPI(
    title="advicegame",
    description="Expert-advice reputation game: rule choice, wage regimes, "
    "equilibria, and a seeded Monte-Carlo oracle.",
    version=__version__,
)


def _run(handler, request):
    try:
        return handler(request)
    except InfeasibleParametersError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc


@app.get("/health")
def health() -> dict[str, str]:
    return {"status": "ok", "version": __version__}


@app.post("/figure1", response_model=s.Figure1Response)
def figure1(request: s.Figure1Request) -> s.Figure1Response:
    return _run(handlers.figure1, request)


@app.post("/figure2", response_model=s.Figure2Response)
def figure2(request: s.Figure2Request) -> s.Figure2Response:
    return _run(handlers.figure2, request)


@app.post("/figure3", response_model=s.Figure3Response)
def figure3(request: s.Figure3Request) -> s.Figure3Response:
    return _run(handlers.figure3, request)


@app.post("/figure4", response_model=s.Figure4Response)
def figure4(request: s.Figure4Request) -> s.Figure4Response:
    return _run(handlers.figure4, request)


@app.post("/choose", response_model=s.ChooseResponse)
def choose(request: s.ChooseRequest) -> s.ChooseResponse:
    return _run(handlers.choose, request)


@app.post("/simulate", response_model=s.SimulateResponse)
def simulate(request: s.SimulateRequest) -> s.SimulateResponse:
    return _run(handlers.simulate, request)


@app.post("/equilibria", response_model=s.EquilibriaResponse)
def equilibria(request: s.EquilibriaRequest) -> s.EquilibriaResponse:
    return _run(handlers.equilibria, request)
