"""FastAPI application exposing the compute runners."""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..errors import ZmapError
from . import runners
from .schemas import (
    CompareRequest,
    CompareResponse,
    ErrorReport,
    InstabilityRequest,
    InstabilityResponse,
    LatticeRequest,
    LatticeResponse,
    ModelRequest,
    ModelResponse,
    PainleveRequest,
    PainleveResponse,
    ValueRequest,
    ValueResponse,
)


def create_app() -> FastAPI:
    app = FastAPI(
        title="zmap",
        version=__version__,
        description=("Numerical evaluation of the discrete conformal map "
                     "Z^a: stabilized Painleve scheme, naive/oracle forward "
                     "evolution and a Riemann-Hilbert Fredholm solver."),
    )

    @app.exception_handler(ZmapError)
    async def _zmap_error(request: Request, exc: ZmapError):
        report = ErrorReport(error=type(exc).__name__, message=str(exc))
        return JSONResponse(status_code=400, content=report.model_dump())

    @app.exception_handler(ValueError)
    async def _value_error(request: Request, exc: ValueError):
        report = ErrorReport(error="ValueError", message=str(exc))
        return JSONResponse(status_code=400, content=report.model_dump())

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok", "version": __version__}

    @app.post("/lattice", response_model=LatticeResponse)
    def lattice(req: LatticeRequest) -> LatticeResponse:
        return runners.run_lattice(req)

    @app.post("/value", response_model=ValueResponse)
    def value(req: ValueRequest) -> ValueResponse:
        return runners.run_value(req)

    @app.post("/painleve", response_model=PainleveResponse)
    def painleve(req: PainleveRequest) -> PainleveResponse:
        return runners.run_painleve(req)

    @app.post("/model", response_model=ModelResponse)
    def model(req: ModelRequest) -> ModelResponse:
        return runners.run_model(req)

    @app.post("/instability", response_model=InstabilityResponse)
    def instability(req: InstabilityRequest) -> InstabilityResponse:
        return runners.run_instability(req)

    @app.post("/compare", response_model=CompareResponse)
    def compare(req: CompareRequest) -> CompareResponse:
        return runners.run_compare(req)

    return app


app = create_app()
