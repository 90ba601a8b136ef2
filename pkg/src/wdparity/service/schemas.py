"""Request and response models for the HTTP facade.

Response fields mirror the JSON records emitted by the command line
interface in record mode, so a stored CLI record and a service response
body for the same input are interchangeable.
"""

from pydantic import BaseModel, Field


class DatumRequest(BaseModel):
    """A datum document sent verbatim as text."""

    datum: str = Field(min_length=1, description="datum file contents")


class SelfcheckRequest(BaseModel):
    """Parameters for the randomized property suites."""

    seed: int = 0
    cases: int = Field(100, ge=1, le=10000)


class CheckItem(BaseModel):
    """One named identity with both sides and a verdict."""

    name: str
    lhs: str
    rhs: str
    ok: bool


class SuiteRecord(BaseModel):
    """Pass/fail tally for one randomized suite."""

    suite: str
    passed: int
    failed: int
    failures: list[str]


class EpsLocalResponse(BaseModel):
    """Local sign by the direct route, and by both when a block is given."""

    place: str
    eps: int
    panchishkin_eps: int | None = None
    routes_agree: bool | None = None
    identities: list[CheckItem] | None = None
    ok: bool
    warnings: list[str]


class FormularyResponse(BaseModel):
    """Cohomology dimension table plus its consistency checks."""

    table: dict[str, int]
    checks: list[CheckItem]
    ok: bool
    warnings: list[str]


class GlobalResponse(BaseModel):
    """Parity report for a global point datum."""

    place_signs: dict[str, int]
    eps_inf: int
    eps: int
    sum_h0: int
    eps_tilde: int
    h1f: int | None = None
    h1f_tilde: int | None = None
    invariant: int | None = None
    validation: list[CheckItem]
    ok: bool
    warnings: list[str]


class VerifyResponse(BaseModel):
    """Validation log for any datum kind."""

    checks: list[CheckItem]
    ok: bool
    warnings: list[str]


class SelfcheckResponse(BaseModel):
    """Results of the seed-deterministic property suites."""

    seed: int
    cases: int
    suites: list[SuiteRecord]
    ok: bool
    warnings: list[str]


class HealthResponse(BaseModel):
    """Liveness probe body."""

    status: str
