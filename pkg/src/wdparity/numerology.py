"""Cohomology dimension formulary for de Rham coefficient modules.

Everything here is exact integer arithmetic on user-declared h0 inputs; the
module computes the full table of H^i dimensions, the e/f/g subspaces of H^1,
Euler characteristic and duality checks, and the dimension bookkeeping of a
sub/quotient pair with negative / nonnegative Hodge-Tate weights.
"""

from dataclasses import dataclass

from .eps import HodgeTateData, d_invariants
from .errors import NumerologyError
from .report import IdentityCheck, IdentityReport


@dataclass(frozen=True)
class DeRhamNumerology:
    """Declared invariants of a rank-d module over a degree-kdeg base:
    Hodge-Tate multiset plus the four h0 inputs (crystalline Frobenius-fixed
    dimensions inside and outside the filtration, for the module and for its
    dual twist)."""

    d: int
    kdeg: int
    ht: HodgeTateData
    h0: int
    h0_dual: int
    h0_t: int
    h0_dual_t: int

    def __post_init__(self):
        if self.d < 0 or self.kdeg < 1:
            raise NumerologyError("rank must be nonnegative and degree positive")
        if self.ht.total != self.kdeg * self.d:
            raise NumerologyError(
                "Hodge-Tate total multiplicity must equal degree times rank"
            )
        for lo, hi, name in (
            (self.h0, self.h0_t, "h0"),
            (self.h0_dual, self.h0_dual_t, "dual h0"),
        ):
            if not 0 <= lo <= hi:
                raise NumerologyError(f"{name} inputs must satisfy 0 <= h0 <= h0[1/t]")
        d_minus = self.count_negative
        d_plus = self.kdeg * self.d - d_minus
        if self.h0_t - self.h0 > d_minus:
            raise NumerologyError(
                "inconsistent numerology: h0[1/t] exceeds h0 by more than the "
                "number of negative weights"
            )
        if self.h0_dual_t - self.h0_dual > d_plus:
            raise NumerologyError(
                "inconsistent numerology: dual h0[1/t] exceeds dual h0 by more "
                "than the number of nonnegative weights"
            )

    @property
    def count_negative(self) -> int:
        return d_invariants(self.ht)[2]

    @property
    def count_nonnegative(self) -> int:
        return self.kdeg * self.d - self.count_negative

    def dual(self) -> "DeRhamNumerology":
        """The numerology of the dual twist, with the h0 roles swapped."""
        return DeRhamNumerology(
            d=self.d,
            kdeg=self.kdeg,
            ht=self.ht.dual_twist(),
            h0=self.h0_dual,
            h0_dual=self.h0,
            h0_t=self.h0_dual_t,
            h0_dual_t=self.h0_t,
        )


@dataclass(frozen=True)
class FormularyOutput:
    h0: int
    h1: int
    h2: int
    h0_t: int
    h1_t: int
    h2_t: int
    h1_e: int
    h1_f: int
    h1_g: int
    h1_over_f: int
    h1_over_g: int

    def __post_init__(self):
        if not self.h1_e <= self.h1_f <= self.h1_g <= self.h1:
            raise NumerologyError("cohomology chain h1_e <= h1_f <= h1_g <= h1 failed")
        if self.h2_t != 0:
            raise NumerologyError("h2 of the [1/t] module must vanish")


def formulary(n: DeRhamNumerology, n_dual: DeRhamNumerology) -> FormularyOutput:
    """Dimension table of H^i and the e/f/g filtration of H^1."""
    if (n.d, n.kdeg) != (n_dual.d, n_dual.kdeg):
        raise NumerologyError("dual numerology has mismatched rank or degree")
    if n.ht.dual_twist().entries != n_dual.ht.entries:
        raise NumerologyError(
            "dual numerology Hodge-Tate weights are not the dual twist"
        )
    if n.h0_dual != n_dual.h0 or n.h0 != n_dual.h0_dual:
        raise NumerologyError("dual numerology h0 inputs disagree")
    if n.h0_dual_t != n_dual.h0_t or n.h0_t != n_dual.h0_dual_t:
        raise NumerologyError("dual numerology h0[1/t] inputs disagree")
    kd = n.kdeg * n.d
    d_minus = n.count_negative
    h1 = kd + n.h0 + n_dual.h0
    out = FormularyOutput(
        h0=n.h0,
        h1=h1,
        h2=n_dual.h0,
        h0_t=n.h0_t,
        h1_t=kd + n.h0_t,
        h2_t=0,
        h1_e=d_minus + n.h0 - n.h0_t,
        h1_f=d_minus + n.h0,
        h1_g=d_minus + n.h0 + n_dual.h0_t,
        h1_over_f=h1 - (d_minus + n.h0),
        h1_over_g=h1 - (d_minus + n.h0 + n_dual.h0_t),
    )
    return out


def euler_tate_check(out: FormularyOutput, n: DeRhamNumerology) -> IdentityReport:
    """Euler characteristic and duality identities on a formulary table."""
    kd = n.kdeg * n.d
    items = (
        IdentityCheck(
            name="Euler characteristic",
            lhs=str(out.h0 - out.h1 + out.h2),
            rhs=str(-kd),
            ok=out.h0 - out.h1 + out.h2 == -kd,
        ),
        IdentityCheck(
            name="duality h2 = dual h0",
            lhs=str(out.h2),
            rhs=str(n.h0_dual),
            ok=out.h2 == n.h0_dual,
        ),
        IdentityCheck(
            name="Euler characteristic after inverting t",
            lhs=str(out.h0_t - out.h1_t + out.h2_t),
            rhs=str(-kd),
            ok=out.h0_t - out.h1_t + out.h2_t == -kd,
        ),
    )
    return IdentityReport(items)


@dataclass(frozen=True)
class PanchishkinSequenceResult:
    dim_x: int
    h1f_identity: bool
    h0_identity: bool
    hypotheses_hold: bool


def panchishkin_sequence(nplus: DeRhamNumerology, nminus: DeRhamNumerology,
                         n: DeRhamNumerology) -> PanchishkinSequenceResult:
    """Dimension bookkeeping of a sub/quotient pair with negative and
    nonnegative Hodge-Tate weights respectively."""
    if any(w >= 0 for w, _ in nplus.ht.entries):
        raise NumerologyError("sub-object weights must all be negative")
    if any(w < 0 for w, _ in nminus.ht.entries):
        raise NumerologyError("quotient weights must all be nonnegative")
    if nplus.ht.union(nminus.ht).entries != n.ht.entries:
        raise NumerologyError("weights of the halves do not assemble to the total")
    if nplus.kdeg != n.kdeg or nminus.kdeg != n.kdeg:
        raise NumerologyError("degree mismatch between the pieces")
    if nplus.d + nminus.d != n.d:
        raise NumerologyError("ranks of the halves do not sum to the total")
    dim_x = nplus.h0_dual_t + nminus.h0_dual_t - n.h0_dual_t
    if dim_x < 0:
        raise NumerologyError("negative connecting-space dimension; inputs inconsistent")
    hypotheses = n.h0_t == 0 and n.h0_dual_t == 0
    h0_identity = True
    if hypotheses:
        h0_identity = nminus.h0_t == nminus.h0 == nplus.h0_dual_t
    # h1 of the sub-object against h0 of the quotient plus h1_f of the total
    h1_plus = nplus.kdeg * nplus.d + nplus.h0 + nplus.h0_dual
    h1f_total = n.count_negative + n.h0
    h1f_identity = h1_plus == nminus.h0 + h1f_total
    return PanchishkinSequenceResult(
        dim_x=dim_x,
        h1f_identity=h1f_identity,
        h0_identity=h0_identity,
        hypotheses_hold=hypotheses,
    )


# shipped oracle fixtures


def trivial_rank_one() -> DeRhamNumerology:
    """Rank one with weight 0: h0 = h0[1/t] = 1, dual inputs vanish."""
    return DeRhamNumerology(
        d=1, kdeg=1, ht=HodgeTateData([(0, 1)]),
        h0=1, h0_dual=0, h0_t=1, h0_dual_t=0,
    )


def cyclotomic_rank_one() -> DeRhamNumerology:
    """Rank one with weight -1 (the cyclotomic twist of the trivial module)."""
    return DeRhamNumerology(
        d=1, kdeg=1, ht=HodgeTateData([(-1, 1)]),
        h0=0, h0_dual=1, h0_t=0, h0_dual_t=1,
    )
