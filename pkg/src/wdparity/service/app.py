"""HTTP facade over the parity pipeline.

Each endpoint wraps the matching command line runner, so the response
body is exactly the CLI's record output for the same datum text.  Datum
documents travel in the request body as text; malformed documents map
to 400 and inputs the calculus refuses map to 422.
"""

from fastapi import FastAPI, HTTPException

from ..cli import (run_eps_local, run_formulary, run_global, run_selfcheck,
                   run_verify)
from ..datum import DatumError, parse_text
from ..errors import WDParityError
from .schemas import (DatumRequest, EpsLocalResponse, FormularyResponse,
                      GlobalResponse, HealthResponse, SelfcheckRequest,
                      SelfcheckResponse, VerifyResponse)


def _run(runner, text: str) -> dict:
    """Parse the datum text, apply the runner, return the filled record."""
    try:
        obj = parse_text(text, "request body")
        ok, _, record, warnings = runner(obj)
    except DatumError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc
    except WDParityError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc
    record["ok"] = ok
    record["warnings"] = list(warnings)
    return record


def create_app() -> FastAPI:
    """Build the application with one endpoint per CLI subcommand."""
    app = FastAPI(
        title="wdparity",
        version="0.1.0",
        description="Local epsilon signs, cohomology formulary tables and "
                    "global parity reports for symplectic Weil-Deligne data.",
    )

    @app.post("/eps-local", response_model=EpsLocalResponse)
    def eps_local(req: DatumRequest) -> EpsLocalResponse:
        return EpsLocalResponse(**_run(run_eps_local, req.datum))

    @app.post("/formulary", response_model=FormularyResponse)
    def formulary(req: DatumRequest) -> FormularyResponse:
        return FormularyResponse(**_run(run_formulary, req.datum))

    @app.post("/global", response_model=GlobalResponse)
    def global_(req: DatumRequest) -> GlobalResponse:
        return GlobalResponse(**_run(run_global, req.datum))

    @app.post("/verify", response_model=VerifyResponse)
    def verify(req: DatumRequest) -> VerifyResponse:
        return VerifyResponse(**_run(run_verify, req.datum))

    @app.post("/selfcheck", response_model=SelfcheckResponse)
    def selfcheck(req: SelfcheckRequest) -> SelfcheckResponse:
        ok, _, record, warnings = run_selfcheck(req.seed, req.cases)
        record["ok"] = ok
        record["warnings"] = list(warnings)
        return SelfcheckResponse(**record)

    @app.get("/healthz", response_model=HealthResponse)
    def healthz() -> HealthResponse:
        return HealthResponse(status="ok")

    return app


app = create_app()
