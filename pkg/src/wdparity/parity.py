"""Global parity bookkeeping: per-place signs assembled into the global
epsilon, the archimedean sign, the modified invariants, and the
family-constancy report."""

from dataclasses import dataclass

from .eps import (
    PSTLocalDatum,
    d_invariants,
    eps_sign,
    h0_dminus,
    panchishkin_eps,
)
from .errors import NumerologyError, WDParityError
from .numerology import DeRhamNumerology, euler_tate_check, formulary
from .report import IdentityCheck, IdentityReport
from .symplectic import SympPairing, lagrangian_split
from .wd import WDRep, is_pure


def _sign_pow(exponent: int) -> int:
    return -1 if exponent % 2 else 1


def _matrices_ramified(rep: WDRep) -> bool:
    from . import linalg as la

    return not (rep.has_trivial_inertia() and la.is_zero_matrix(rep.monodromy))


@dataclass(frozen=True)
class AwayPlace:
    """A finite place away from p: Weil-Deligne data with a pairing and the
    declared ramification status (unramified means trivial inertia and N = 0).
    The declaration is input; validate_datum reports disagreements."""

    name: str
    rep: WDRep
    pairing: SympPairing
    ramified: bool


@dataclass(frozen=True)
class PAdicPlace:
    """A place above p: local datum plus its cohomology numerology pair."""

    name: str
    datum: PSTLocalDatum
    numerology: DeRhamNumerology
    numerology_dual: DeRhamNumerology


@dataclass(frozen=True)
class GlobalPointDatum:
    """Global input: base-field invariants, an even dimension, and local data
    at finitely many places; the Selmer dimension h1f is optional input."""

    degree: int
    r2: int
    dim: int
    away_places: tuple
    p_places: tuple
    h1f: object = None

    def __post_init__(self):
        if self.dim % 2:
            raise NumerologyError("global dimension must be even")
        if self.degree < 1 or self.r2 < 0 or 2 * self.r2 > self.degree:
            raise NumerologyError("invalid base-field invariants")
        names = set()
        for place in tuple(self.away_places) + tuple(self.p_places):
            if place.name in names:
                raise NumerologyError(f"duplicate place name {place.name}")
            names.add(place.name)
        for place in self.away_places:
            if place.rep.dim != self.dim:
                raise NumerologyError(
                    f"place {place.name}: local dimension differs from global"
                )
        for place in self.p_places:
            if place.datum.delta.dim != self.dim:
                raise NumerologyError(
                    f"place {place.name}: local dimension differs from global"
                )
        if self.h1f is not None and (not isinstance(self.h1f, int) or self.h1f < 0):
            raise NumerologyError("h1f must be a nonnegative integer")


@dataclass(frozen=True)
class ParityReport:
    place_signs: tuple  # ((name, sign), ...)
    eps_inf: int
    eps: int
    sum_h0: int
    eps_tilde: int
    h1f: object
    h1f_tilde: object
    invariant: object
    log: tuple


def eps_infinity(r2: int, d: int, dminus_total: int) -> int:
    """(-1)^(r2 d/2) (-1)^(weighted negative Hodge-Tate part)."""
    if d % 2:
        raise NumerologyError("archimedean sign needs even dimension")
    return _sign_pow(r2 * (d // 2)) * _sign_pow(dminus_total)


def _local_signs(g: GlobalPointDatum):
    signs = []
    for place in g.away_places:
        if not place.ramified:
            if _matrices_ramified(place.rep):
                raise NumerologyError(
                    f"place {place.name}: declared unramified but the "
                    "matrices are ramified"
                )
            signs.append((place.name, 1))
            continue
        try:
            signs.append((place.name, eps_sign(place.rep, place.pairing)))
        except WDParityError as exc:
            raise type(exc)(f"place {place.name}: {exc}") from exc
    for place in g.p_places:
        try:
            signs.append((place.name, panchishkin_eps(place.datum)))
        except WDParityError as exc:
            raise type(exc)(f"place {place.name}: {exc}") from exc
    return tuple(signs)


def global_eps(g: GlobalPointDatum) -> ParityReport:
    """Product of the archimedean sign with every local sign."""
    signs = _local_signs(g)
    dminus_total = sum(
        d_invariants(place.datum.ht)[1] for place in g.p_places
    )
    einf = eps_infinity(g.r2, g.dim, dminus_total)
    eps = einf
    for _, s in signs:
        eps *= s
    sum_h0 = sum(h0_dminus(place.datum) for place in g.p_places)
    eps_tilde = _sign_pow(sum_h0) * eps
    return ParityReport(
        place_signs=signs,
        eps_inf=einf,
        eps=eps,
        sum_h0=sum_h0,
        eps_tilde=eps_tilde,
        h1f=None,
        h1f_tilde=None,
        invariant=None,
        log=(),
    )


def modified_invariants(g: GlobalPointDatum) -> ParityReport:
    """Attach the shifted Selmer dimension and the constancy invariant."""
    base = global_eps(g)
    if g.h1f is None:
        return base
    h1f_tilde = g.h1f + base.sum_h0
    invariant = base.eps * _sign_pow(g.h1f)
    tilde_invariant = base.eps_tilde * _sign_pow(h1f_tilde)
    if invariant != tilde_invariant:
        raise NumerologyError(
            "modified invariant failed to match the plain one; "
            "this identity is algebraically forced"
        )
    return ParityReport(
        place_signs=base.place_signs,
        eps_inf=base.eps_inf,
        eps=base.eps,
        sum_h0=base.sum_h0,
        eps_tilde=base.eps_tilde,
        h1f=g.h1f,
        h1f_tilde=h1f_tilde,
        invariant=invariant,
        log=base.log,
    )


def family_constancy_check(members) -> IdentityReport:
    """Necessary conditions for the members to sit in one family: constant
    modified invariant, matching ramification status and matching local signs
    at every place away from p."""
    members = tuple(members)
    if len(members) < 2:
        raise NumerologyError("family check needs at least two members")
    if any(m.h1f is None for m in members):
        raise NumerologyError("family check needs h1f on every member")
    reports = [modified_invariants(m) for m in members]
    items = []
    invariants = [r.invariant for r in reports]
    items.append(IdentityCheck(
        name="modified invariant constant",
        lhs=str(invariants[0]),
        rhs=str(invariants[1:]),
        ok=len(set(invariants)) == 1,
    ))
    names = []
    for m in members:
        for place in m.away_places:
            if place.name not in names:
                names.append(place.name)
    for name in names:
        statuses = []
        signs = []
        for m, r in zip(members, reports):
            match = [p for p in m.away_places if p.name == name]
            if not match:
                statuses.append(None)
                signs.append(None)
                continue
            statuses.append(match[0].ramified)
            signs.append(dict(r.place_signs)[name])
        items.append(IdentityCheck(
            name=f"ramification status at {name}",
            lhs=str(statuses[0]),
            rhs=str(statuses[1:]),
            ok=len(set(statuses)) == 1 and statuses[0] is not None,
        ))
        items.append(IdentityCheck(
            name=f"local sign at {name}",
            lhs=str(signs[0]),
            rhs=str(signs[1:]),
            ok=len(set(signs)) == 1 and signs[0] is not None,
        ))
    return IdentityReport(tuple(items))


def _run_specs(specs) -> IdentityReport:
    items = []
    for name, fn in specs:
        try:
            ok, detail = fn()
        except WDParityError as exc:
            ok, detail = False, str(exc)
        except Exception as exc:  # report, never crash the log
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        items.append(IdentityCheck(name=name, lhs=detail, rhs="", ok=ok))
    return IdentityReport(tuple(items))


def _away_specs(place: AwayPlace, dim=None):
    name = place.name
    specs = []
    if dim is not None:
        specs.append((f"{name}: local dimension matches",
                      lambda p=place: (p.rep.dim == dim, str(p.rep.dim))))
    specs.append((f"{name}: declared ramification matches the matrices",
                  lambda p=place: (p.ramified == _matrices_ramified(p.rep),
                                   f"declared ramified={p.ramified}")))
    if place.ramified:
        specs.append((f"{name}: purity of weight -1",
                      lambda p=place: _purity_item(p.rep)))
        specs.append((f"{name}: pairing is symplectic for the representation",
                      lambda p=place: _pairing_item(p)))
    return specs


def _pst_specs(name: str, datum: PSTLocalDatum, dim=None):
    specs = []
    if dim is not None:
        specs.append((f"{name}: local dimension matches",
                      lambda dd=datum: (dd.delta.dim == dim, str(dd.delta.dim))))
    specs.extend([
        (f"{name}: purity of weight -1",
         lambda dd=datum: _purity_item(dd.delta)),
        (f"{name}: sub-object weights negative",
         lambda dd=datum: (all(w < 0 for w, _ in dd.ht_plus.entries),
                           str(dd.ht_plus.entries))),
        (f"{name}: quotient weights nonnegative",
         lambda dd=datum: (all(w >= 0 for w, _ in dd.ht_minus.entries),
                           str(dd.ht_minus.entries))),
        (f"{name}: weight multiset assembles",
         lambda dd=datum: (
             dd.ht_plus.union(dd.ht_minus).entries == dd.ht.entries,
             str(dd.ht.entries))),
        (f"{name}: Lagrangian is half-dimensional",
         lambda dd=datum: (2 * len(dd.split.plus) == dd.delta.dim,
                           str(len(dd.split.plus)))),
        (f"{name}: Lagrangian conditions and duality",
         lambda dd=datum: (
             lagrangian_split(dd.split.pairing, dd.split.plus) is not None,
             "isotropic, stable, dual to the quotient")),
    ])
    return specs


def _padic_numerology_specs(place: PAdicPlace, dim):
    name = place.name
    specs = [
        (f"{name}: numerology rank matches",
         lambda p=place: (p.numerology.d == dim, str(p.numerology.d))),
        (f"{name}: formulary consistency",
         lambda p=place: _formulary_item(p)),
    ]
    if place.numerology.kdeg == 1:
        specs.append((f"{name}: numerology weights match the local datum",
                      lambda p=place: (
                          p.numerology.ht.entries == p.datum.ht.entries,
                          str(p.numerology.ht.entries))))
    return specs


def validate_datum(g: GlobalPointDatum) -> IdentityReport:
    """Run every semantic check and report each as a log item; never raises."""
    specs = [("dimension is even", lambda: (g.dim % 2 == 0, str(g.dim)))]
    for place in g.away_places:
        specs.extend(_away_specs(place, g.dim))
    for place in g.p_places:
        specs.extend(_pst_specs(place.name, place.datum, g.dim))
        specs.extend(_padic_numerology_specs(place, g.dim))
    return _run_specs(specs)


def validate_away_place(place: AwayPlace) -> IdentityReport:
    """The validate_datum items for one standalone place away from p."""
    return _run_specs(_away_specs(place))


def validate_pst_datum(name: str, datum: PSTLocalDatum) -> IdentityReport:
    """The validate_datum items for one standalone place above p."""
    return _run_specs(_pst_specs(name, datum))


def _purity_item(rep):
    res = is_pure(rep, -1)
    return bool(res.ok), res.reason or "pure"


def _pairing_item(place: AwayPlace):
    from .symplectic import validate_pairing

    validate_pairing(place.rep, place.pairing.gram)
    return True, "valid"


def _formulary_item(place: PAdicPlace):
    out = formulary(place.numerology, place.numerology_dual)
    rep = euler_tate_check(out, place.numerology)
    return rep.ok, f"h1={out.h1}"
