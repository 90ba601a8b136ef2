"""Local epsilon-sign engine for symplectic self-dual representations.

The sign of a pure weight -1 symplectic input is computed two independent
ways: directly, as det(artm1 on a stable Lagrangian of the Frobenius-
semisimplified object) times det(-F on the inertia-fixed part modulo its
N-kernel); and through the Hodge-Tate bookkeeping formula
(-1)^h0(D-) (-1)^(d-(D)) det(D+)(-1).  Their agreement on every valid datum
is the module's strongest invariant.
"""

from dataclasses import dataclass

from gmpy2 import mpq

from . import linalg as la
from .errors import ClassificationError, NumerologyError, PurityError, UnsupportedInputError
from .report import IdentityCheck, IdentityReport
from .scalars import serialize_scalar
from .symplectic import (
    LagrangianSplit,
    SympPairing,
    decompose_symplectic,
    lagrangian_split,
    pair_value,
    validate_pairing,
)
from .wd import (
    WDRep,
    exact_eigenspace,
    inertia_split_with_bases,
    is_frobenius_semisimple,
    is_pure,
    quotient_rep,
    restrict_rep,
    semisimplify,
)


def _sign_pow(exponent: int) -> int:
    return -1 if exponent % 2 else 1


# -- Hodge-Tate combinatorics --


@dataclass(frozen=True)
class HodgeTateData:
    """Multiset of (weight, multiplicity) pairs describing a de Rham grading."""

    entries: tuple

    def __init__(self, pairs):
        merged = {}
        for w, m in pairs:
            w, m = int(w), int(m)
            if m < 0:
                raise NumerologyError("negative Hodge-Tate multiplicity")
            if m:
                merged[w] = merged.get(w, 0) + m
        object.__setattr__(self, "entries", tuple(sorted(merged.items())))

    @property
    def total(self) -> int:
        return sum(m for _, m in self.entries)

    def union(self, other: "HodgeTateData") -> "HodgeTateData":
        return HodgeTateData(self.entries + other.entries)

    def dual_twist(self) -> "HodgeTateData":
        """Weights of the dual Tate twist: i maps to -1-i."""
        return HodgeTateData(tuple((-1 - w, m) for w, m in self.entries))


def d_invariants(ht: HodgeTateData):
    """(d_L, weighted negative part, count of negative weights)."""
    d_L = sum(w * m for w, m in ht.entries)
    d_minus_weighted = sum(w * m for w, m in ht.entries if w < 0)
    count_negative = sum(m for w, m in ht.entries if w < 0)
    return d_L, d_minus_weighted, count_negative


@dataclass(frozen=True)
class PSTLocalDatum:
    """A local p-adic datum: WD rep with a Lagrangian split whose halves
    carry negative / nonnegative Hodge-Tate weights respectively."""

    delta: WDRep
    ht: HodgeTateData
    split: LagrangianSplit
    ht_plus: HodgeTateData
    ht_minus: HodgeTateData
    det_plus_at_minus_one: object = None

    def __post_init__(self):
        if self.split.rep != self.delta:
            raise NumerologyError("Lagrangian split does not belong to this rep")
        if any(w >= 0 for w, _ in self.ht_plus.entries):
            raise NumerologyError(
                "sub-object Hodge-Tate weights must all be negative"
            )
        if any(w < 0 for w, _ in self.ht_minus.entries):
            raise NumerologyError(
                "quotient Hodge-Tate weights must all be nonnegative"
            )
        if self.ht_plus.union(self.ht_minus).entries != self.ht.entries:
            raise NumerologyError(
                "Hodge-Tate multiset is not the disjoint union of the halves"
            )
        if self.ht.total != self.delta.dim:
            raise NumerologyError("Hodge-Tate total does not match the dimension")
        if self.ht_plus.total != len(self.split.plus):
            raise NumerologyError("sub-object Hodge-Tate total mismatch")
        if self.ht_minus.total != self.delta.dim - len(self.split.plus):
            raise NumerologyError("quotient Hodge-Tate total mismatch")
        if self.det_plus_at_minus_one is not None and self.det_plus_at_minus_one not in (1, -1):
            raise NumerologyError("explicit determinant sign must be +1 or -1")


# -- determinant evaluations --


def det_at_minus_one(a: WDRep) -> int:
    """det of the artm1 matrix; the unramified part contributes 1."""
    if a.dim == 0:
        return 1
    v = la.det(a.artm1)
    if not v.is_rational() or v.rational_value() not in (1, -1):
        raise ClassificationError(
            "det(artm1) is not a sign; expected a quadratic-type evaluation"
        )
    return int(v.rational_value())


def det_galois_at_minus_one(datum: PSTLocalDatum, part: str = "plus") -> int:
    """(-1)^(d_L of the part) times det(artm1) on the part."""
    if part == "full":
        rep = datum.delta
        ht = datum.ht
    elif part == "plus":
        rep = restrict_rep(datum.delta, datum.split.plus)
        ht = datum.ht_plus
    else:
        raise ValueError("part must be 'full' or 'plus'")
    d_L, _, _ = d_invariants(ht)
    value = _sign_pow(d_L) * det_at_minus_one(rep)
    if part == "plus" and datum.det_plus_at_minus_one is not None:
        if datum.det_plus_at_minus_one != value:
            raise ClassificationError(
                "supplied determinant sign contradicts the computed one"
            )
    return value


def unramified_quotient_det(a: WDRep):
    """det(-F | a^I / a^(I, N=0)), cross-checked against det(-F | N(a^I))."""
    fld = a.field
    fixed_rep, _, fixed_basis, _ = inertia_split_with_bases(a)
    dI = fixed_rep.dim
    if dI == 0:
        return fld.one()
    kerN = la.nullspace(fixed_rep.monodromy)
    r = dI - len(kerN)
    if r == 0:
        return fld.one()
    reps = la.quotient_data(dI, kerN, fld)
    fbar = la.operator_on_quotient(fixed_rep.frobenius, kerN, reps)
    route_a = la.det(la.mat_scale(-fld.one(), fbar))
    # second route: -F on the inertia-fixed part of the image of N
    img = la.column_space(fixed_rep.monodromy)
    if len(img) != r:
        raise ClassificationError("monodromy image dimension mismatch")
    route_b = la.det(la.mat_scale(-fld.one(), la.restrict_operator(fixed_rep.frobenius, img)))
    shift = fld.from_rational(mpq(1, fld.q) ** r)
    if route_b != route_a * shift:
        raise ClassificationError(
            "quotient determinant routes disagree beyond the eigenvalue shift"
        )
    return route_a


# -- the direct epsilon sign --


def _roots_of_unity(fld):
    out = []
    seen = set()
    z = fld.zeta()
    for k in range(fld.N):
        for s in (fld.one(), -fld.one()):
            c = s * z ** k
            if c.coords not in seen:
                seen.add(c.coords)
                out.append(c)
    return out


def _char_pieces(b: WDRep, moving_basis):
    """Refine the inertia-moving space into joint exact eigenspaces of all
    inertia elements; requires the character values to live in the field."""
    fld = b.field
    nontrivial = [g for g in b.inertia if g != la.identity(fld, b.dim)]
    pieces = [(tuple(moving_basis), ())]
    candidates = _roots_of_unity(fld)
    for g in nontrivial:
        refined = []
        for basis, key in pieces:
            gr = la.restrict_operator(g, basis)
            k = len(basis)
            found = 0
            for lam in candidates:
                shifted = tuple(
                    tuple(gr[i][j] - (lam if i == j else fld.zero()) for j in range(k))
                    for i in range(k)
                )
                ker = la.nullspace(shifted)
                if not ker:
                    continue
                found += len(ker)
                sub = tuple(_combine(v, basis, fld) for v in ker)
                refined.append((sub, key + (lam.coords,)))
            if found != k:
                raise UnsupportedInputError(
                    "inertia eigenvalue lies outside the scalar field; "
                    "re-encode the datum over a larger cyclotomic conductor"
                )
        pieces = refined
    return pieces, nontrivial


def _combine(coords, basis, fld):
    d = len(basis[0])
    out = [fld.zero()] * d
    for c, vec in zip(coords, basis):
        if c.is_zero():
            continue
        for i in range(d):
            out[i] = out[i] + c * vec[i]
    return tuple(out)


def _ramified_lagrangian(b: WDRep, J, moving_basis):
    """Stable isotropic half of the inertia-moving part, for commuting data."""
    fld = b.field
    d = b.dim
    F = b.frobenius
    for g in b.inertia:
        if la.mat_mul(F, g) != la.mat_mul(g, F):
            raise UnsupportedInputError(
                "ramified sign engine needs Frobenius commuting with inertia"
            )
        for h in b.inertia:
            if la.mat_mul(g, h) != la.mat_mul(h, g):
                raise UnsupportedInputError(
                    "ramified sign engine needs abelian inertia"
                )
    pieces, nontrivial = _char_pieces(b, moving_basis)
    by_key = {}
    for basis, key in pieces:
        by_key.setdefault(key, []).extend(basis)
    out = []
    done = set()
    for key in sorted(by_key):
        if key in done:
            continue
        basis = tuple(by_key[key])
        dual_key = tuple(
            _root_inverse_coords(fld, coords) for coords in key
        )
        if dual_key == key:
            # self-dual character: the piece is symplectic with scalar inertia
            subJ = tuple(tuple(pair_value(J, v, w) for w in basis) for v in basis)
            sub = WDRep(
                fld,
                la.restrict_operator(F, basis),
                la.restrict_operator(b.monodromy, basis),
                (la.identity(fld, len(basis)),),
                0,
            )
            pairing = validate_pairing(sub, subJ)
            blocks = decompose_symplectic(sub, pairing)
            for blk in blocks:
                for v in blk.lagrangian:
                    out.append(_combine(v, basis, fld))
            done.add(key)
        else:
            if dual_key not in by_key:
                raise ClassificationError(
                    "inertia character with no dual partner; pairing degenerate"
                )
            if len(by_key[dual_key]) != len(basis):
                raise ClassificationError("dual character multiplicity mismatch")
            out.extend(basis)
            done.add(key)
            done.add(dual_key)
    return out


def _root_inverse_coords(fld, coords):
    elt = fld.element(coords)
    return elt.conj().coords


def eps_sign(a: WDRep, p: SympPairing) -> int:
    """det(artm1 on a Lagrangian of the semisimplified object) times the sign
    of the unramified quotient determinant."""
    purity = is_pure(a, -1)
    if not purity.ok:
        raise PurityError(f"sign needs purity of weight -1: {purity.reason}")
    qd = unramified_quotient_det(a)
    if not qd.is_rational() or qd.rational_value() not in (1, -1):
        raise ClassificationError(
            "unramified quotient determinant is not a sign on this input"
        )
    quotient_factor = int(qd.rational_value())
    b = semisimplify(a, part="frobenius")
    pairing_b = validate_pairing(b, p.gram)
    fixed_rep, _, fixed_basis, moving_basis = inertia_split_with_bases(b)
    fld = a.field
    plus = []
    if fixed_rep.dim:
        subJ = tuple(
            tuple(pair_value(p.gram, v, w) for w in fixed_basis) for v in fixed_basis
        )
        fixed_pairing = validate_pairing(fixed_rep, subJ)
        blocks = decompose_symplectic(fixed_rep, fixed_pairing)
        for blk in blocks:
            for v in blk.lagrangian:
                plus.append(_combine(v, fixed_basis, fld))
    if moving_basis:
        plus.extend(_ramified_lagrangian(b, p.gram, moving_basis))
    split = lagrangian_split(pairing_b, tuple(plus))
    lag_rep = restrict_rep(b, split.plus)
    return det_at_minus_one(lag_rep) * quotient_factor


# -- Hodge-Tate route --


def h0_dminus(datum: PSTLocalDatum) -> int:
    """dim of the inertia-fixed, N-killed, exact Frobenius-1 part of the
    quotient representation."""
    quot, _ = quotient_rep(datum.delta, datum.split.plus)
    if quot.dim == 0:
        return 0
    fld = quot.field
    fixed_rep, _, _, _ = inertia_split_with_bases(quot)
    if fixed_rep.dim == 0:
        return 0
    kerN = la.nullspace(fixed_rep.monodromy)
    if not kerN:
        return 0
    fk = la.restrict_operator(fixed_rep.frobenius, kerN)
    n = len(kerN)
    shifted = tuple(
        tuple(fk[i][j] - (fld.one() if i == j else fld.zero()) for j in range(n))
        for i in range(n)
    )
    return len(la.nullspace(shifted))


def panchishkin_eps(datum: PSTLocalDatum) -> int:
    """(-1)^h0(D-) (-1)^(d-(D)) det(D+)(-1)."""
    purity = is_pure(datum.delta, -1)
    if not purity.ok:
        raise PurityError(f"formula needs purity of weight -1: {purity.reason}")
    h0 = h0_dminus(datum)
    d_L_plus, _, _ = d_invariants(datum.ht_plus)
    _, d_minus_weighted, _ = d_invariants(datum.ht)
    if _sign_pow(d_L_plus) != _sign_pow(d_minus_weighted):
        raise ClassificationError(
            "determinant parity identity failed: d_L of the sub-object and the "
            "weighted negative part disagree mod 2"
        )
    return _sign_pow(h0) * _sign_pow(d_minus_weighted) * det_galois_at_minus_one(datum, "plus")


# -- verification identities --


def reduction_identity_checks(a: WDRep, p: SympPairing, s: LagrangianSplit) -> IdentityReport:
    """Evaluate both sides of the three reduction identities independently."""
    purity = is_pure(a, -1)
    if not purity.ok:
        raise PurityError(f"identities need purity of weight -1: {purity.reason}")
    if not a.has_trivial_inertia():
        raise UnsupportedInputError("identity checks need trivial inertia")
    if not is_frobenius_semisimple(a):
        raise UnsupportedInputError("identity checks need semisimple Frobenius")
    fld = a.field
    d = a.dim
    quot, _ = quotient_rep(a, s.plus)
    kerNbar = la.nullspace(quot.monodromy) if quot.dim else ()
    dim_minus_f1 = 0
    if kerNbar:
        fk = la.restrict_operator(quot.frobenius, kerNbar)
        n = len(kerNbar)
        shifted = tuple(
            tuple(fk[i][j] - (fld.one() if i == j else fld.zero()) for j in range(n))
            for i in range(n)
        )
        dim_minus_f1 = len(la.nullspace(shifted))
    items = []
    # parity of the quotient h0 against the unramified quotient determinant
    qd = unramified_quotient_det(a)
    lhs1 = fld.from_rational(_sign_pow(dim_minus_f1))
    items.append(IdentityCheck(
        name="h0-parity equals quotient determinant",
        lhs=serialize_scalar(lhs1),
        rhs=serialize_scalar(qd),
        ok=lhs1 == qd,
    ))
    # signed determinant on the N-kernel against q^(-d/2)
    kerN = la.nullspace(a.monodromy) if d else ()
    if kerN:
        fk = la.restrict_operator(a.frobenius, kerN)
        det_ker = la.det(la.mat_scale(-fld.one(), fk))
    else:
        det_ker = fld.one()
    lhs2 = fld.from_rational(_sign_pow(dim_minus_f1)) * det_ker
    rhs2 = fld.from_rational(mpq(1, fld.q) ** (d // 2)) if d else fld.one()
    items.append(IdentityCheck(
        name="kernel determinant identity",
        lhs=serialize_scalar(lhs2),
        rhs=serialize_scalar(rhs2),
        ok=lhs2 == rhs2,
    ))
    # parity congruence with the full Frobenius-fixed space
    dim_f1 = len(exact_eigenspace(a, fld.one())) if d else 0
    items.append(IdentityCheck(
        name="fixed-space parity congruence",
        lhs=str(dim_minus_f1 % 2),
        rhs=str(dim_f1 % 2),
        ok=dim_minus_f1 % 2 == dim_f1 % 2,
    ))
    return IdentityReport(tuple(items))
