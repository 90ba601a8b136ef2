"""Seed-deterministic random data for the property suites: pure symplectic
local cases built from hyperbolic and special blocks, graded nilpotent
representations, and consistent numerology pairs."""

import random
from dataclasses import dataclass

from . import linalg as la
from .eps import (
    HodgeTateData,
    PSTLocalDatum,
    eps_sign,
    panchishkin_eps,
    reduction_identity_checks,
)
from .numerology import DeRhamNumerology, euler_tate_check, formulary
from .scalars import CycloWeilField, field
from .symplectic import (
    hyperbolic_pair,
    lagrangian_split,
    special_symplectic,
    validate_pairing,
)
from .wd import (
    WDRep,
    is_frobenius_semisimple,
    make_sp,
    make_unr,
    monodromy_filtration,
    semisimplify,
    tensor,
)


@dataclass(frozen=True)
class CorpusCase:
    """One random local case: representation, pairing, Panchishkin datum and
    the flags the property suites branch on."""

    rep: WDRep
    pairing: object
    pst: PSTLocalDatum
    ramified: bool
    fss: bool


_FIELD_POOL = ((1, 2), (1, 3), (3, 2), (4, 5))


def _weight_scalar(rng, fld: CycloWeilField, w: int):
    """A random Weil number of weight w: root of unity times the right power
    of q (and one factor of sqrt(q) for odd w)."""
    j = rng.randrange(fld.N) if fld.N > 1 else 0
    a = fld.zeta() ** j if j else fld.one()
    if rng.random() < 0.5:
        a = -a
    if w % 2:
        a = a * fld.sqrt_q()
        half = (w - 1) // 2
    else:
        half = w // 2
    q = fld.from_rational(fld.q)
    return a * q ** half if half >= 0 else a / q ** (-half)


def _char_inertia(fld: CycloWeilField, dim: int, order: int):
    """Scalar inertia generated by a character of the given order; returns the
    matrix tuple and the index of the Artin image of -1."""
    if order == 1:
        return (la.identity(fld, dim),), 0
    if order == 2:
        root = -fld.one()
    else:
        if fld.N % order:
            raise ValueError("field lacks the character values")
        root = fld.zeta() ** (fld.N // order)
    mats = tuple(la.mat_scale(root ** i, la.identity(fld, dim))
                 for i in range(order))
    artm1 = (order // 2) if order % 2 == 0 else 0
    return mats, artm1


def _hyperbolic_block(rng, fld, m, char_order):
    x0 = tensor(make_unr(fld, _weight_scalar(rng, fld, m - 2)), make_sp(fld, m))
    inertia, artm1 = _char_inertia(fld, m, char_order)
    x = WDRep(fld, x0.frobenius, x0.monodromy, inertia, artm1)
    rep, pairing = hyperbolic_pair(x)
    lagr = tuple(la.identity(fld, 2 * m)[i] for i in range(m))
    return rep, pairing.gram, lagr


def _special_block(rng, fld, m, char_order):
    sign = rng.choice((1, -1))
    rep, pairing = special_symplectic(fld, m, sign)
    if char_order == 2:
        inertia, artm1 = _char_inertia(fld, m, 2)
        rep = WDRep(fld, rep.frobenius, rep.monodromy, inertia, artm1)
    lagr = tuple(la.identity(fld, m)[i] for i in range(m // 2, m))
    return rep, pairing.gram, lagr


def _block_diag(fld, mats):
    d = sum(len(M) for M in mats)
    rows = []
    off = 0
    for M in mats:
        for row in M:
            rows.append(tuple(fld.zero() for _ in range(off)) + tuple(row)
                        + tuple(fld.zero() for _ in range(d - off - len(row))))
        off += len(M)
    return tuple(rows)


def _random_invertible(rng, fld, d):
    while True:
        T = tuple(tuple(fld.from_rational(rng.randint(-2, 2)) for _ in range(d))
                  for _ in range(d))
        if not la.det(T).is_zero():
            return T


def _conjugate(rng, rep: WDRep, gram, lagr):
    fld = rep.field
    T = _random_invertible(rng, fld, rep.dim)
    Tinv = la.inverse(T)
    conj = lambda M: la.mat_mul(Tinv, la.mat_mul(M, T))
    rep2 = WDRep(fld, conj(rep.frobenius), conj(rep.monodromy),
                 tuple(conj(g) for g in rep.inertia), rep.artm1_index)
    gram2 = la.mat_mul(la.transpose(T), la.mat_mul(gram, T))
    lagr2 = tuple(la.mat_vec(Tinv, v) for v in lagr)
    return rep2, gram2, lagr2


def _random_ht(rng, total, weights):
    pairs = []
    remaining = total
    while remaining:
        m = rng.randint(1, remaining)
        pairs.append((rng.choice(weights), m))
        remaining -= m
    return HodgeTateData(pairs)


def _finish_case(rng, rep, gram, lagr, ramified, fss) -> CorpusCase:
    pairing = validate_pairing(rep, gram)
    split = lagrangian_split(pairing, lagr)
    half = rep.dim // 2
    ht_plus = _random_ht(rng, half, (-1, -2, -3))
    ht_minus = _random_ht(rng, half, (0, 1, 2))
    pst = PSTLocalDatum(
        delta=rep,
        ht=ht_plus.union(ht_minus),
        split=split,
        ht_plus=ht_plus,
        ht_minus=ht_minus,
    )
    return CorpusCase(rep=rep, pairing=pairing, pst=pst,
                      ramified=ramified, fss=fss)


def random_case(rng) -> CorpusCase:
    """A pure symplectic Panchishkin case from 1-3 random blocks, randomly
    conjugated; about a third of the cases carry ramified scalar inertia.

    Every block sees the same tame cyclic quotient of order n: block i
    carries the e_i-th power of one fixed character, so the combined inertia
    is the diagonal cyclic group of order n rather than a product set."""
    fld = field(*rng.choice(_FIELD_POOL))
    shapes = []
    budget = rng.choice((4, 6, 8, 8))
    while budget >= 2 and (not shapes or rng.random() < 0.55):
        kind = rng.choice(("hyperbolic", "special"))
        if kind == "hyperbolic":
            m = rng.randint(1, budget // 2)
            shapes.append((kind, m))
            budget -= 2 * m
        else:
            m = 2 * rng.randint(1, budget // 4) if budget >= 4 else 2
            m = min(m, budget)
            shapes.append((kind, m))
            budget -= m
    n = 1
    if rng.random() < 0.35:
        orders = [2]
        if any(kind == "hyperbolic" for kind, _ in shapes):
            if fld.N % 3 == 0:
                orders.append(3)
            if fld.N % 4 == 0:
                orders.append(4)
        n = rng.choice(orders)
    exps = []
    for kind, _ in shapes:
        if n == 1 or (kind == "special" and n != 2):
            exps.append(0)  # order > 2 scales a self-paired block, so specials stay unramified
        else:
            exps.append(rng.choice((0, 1, n - 1) if n > 2 else (0, 1)))
    if n > 1 and not any(exps):
        for i, (kind, _) in enumerate(shapes):
            if kind == "hyperbolic" or n == 2:
                exps[i] = 1
                break
    blocks = []
    for (kind, m), e in zip(shapes, exps):
        order = n if e else 1
        if kind == "hyperbolic":
            blocks.append(_hyperbolic_block(rng, fld, m, order))
        else:
            blocks.append(_special_block(rng, fld, m, order))
    reps = [b[0] for b in blocks]
    rep = WDRep(
        fld,
        _block_diag(fld, [r.frobenius for r in reps]),
        _block_diag(fld, [r.monodromy for r in reps]),
        tuple(_block_diag(fld, [r.inertia[(e * k) % len(r.inertia)]
                                for r, e in zip(reps, exps)])
              for k in range(n)),
        n // 2 if n % 2 == 0 else 0,
    )
    gram = _block_diag(fld, [b[1] for b in blocks])
    lagr = []
    off = 0
    for b in blocks:
        dim_b = len(b[1])
        for v in b[2]:
            lagr.append(tuple(fld.zero() for _ in range(off)) + tuple(v)
                        + tuple(fld.zero() for _ in range(rep.dim - off - dim_b)))
        off += dim_b
    rep, gram, lagr = _conjugate(rng, rep, gram, tuple(lagr))
    return _finish_case(rng, rep, gram, lagr, n > 1, fss=True)


def random_nonss_case(rng) -> CorpusCase:
    """A non-Frobenius-semisimple case: two copies of one hyperbolic block
    glued by a unipotent symplectic intertwiner, then conjugated."""
    fld = field(*rng.choice(_FIELD_POOL))
    m = rng.randint(1, 2)
    char_order = 2 if rng.random() < 0.3 else 1
    block, gram1, _ = _hyperbolic_block(rng, fld, m, char_order)
    # two copies of one object over the same group: inertia acts diagonally
    rep0 = WDRep(
        fld,
        _block_diag(fld, [block.frobenius, block.frobenius]),
        _block_diag(fld, [block.monodromy, block.monodromy]),
        tuple(_block_diag(fld, [g, g]) for g in block.inertia),
        block.artm1_index,
    )
    d1 = 2 * m
    gram = _block_diag(fld, [gram1, gram1])
    c = fld.from_rational(rng.randint(1, 3))
    E = [[fld.zero()] * (2 * d1) for _ in range(2 * d1)]
    for i in range(m):
        E[d1 + i][i] = c
        E[m + i][d1 + m + i] = -c
    U = la.mat_add(la.identity(fld, 2 * d1), tuple(tuple(r) for r in E))
    rep = WDRep(fld, la.mat_mul(rep0.frobenius, U), rep0.monodromy,
                rep0.inertia, rep0.artm1_index)
    if is_frobenius_semisimple(rep):
        raise RuntimeError("thickened case is unexpectedly semisimple")
    lagr = tuple(la.identity(fld, 2 * d1)[i]
                 for i in list(range(m)) + list(range(d1, d1 + m)))
    rep, gram, lagr = _conjugate(rng, rep, gram, lagr)
    return _finish_case(rng, rep, gram, lagr, char_order > 1, fss=False)


def corpus(seed: int, count: int):
    """The acceptance corpus: plain cases with ramified and non-semisimple
    variants mixed in at fixed rates."""
    rng = random.Random(seed)
    cases = []
    for i in range(count):
        if i % 5 == 4:
            cases.append(random_nonss_case(rng))
        else:
            cases.append(random_case(rng))
    return cases


def identity_view(case: CorpusCase):
    """The (representation, pairing, split) triple the reduction identities
    apply to: Frobenius-semisimplified, trivial inertia required; returns
    (None, None, None) for ramified cases."""
    if case.ramified:
        return None, None, None
    if case.fss:
        return case.rep, case.pairing, case.pst.split
    rep = semisimplify(case.rep, part="frobenius")
    pairing = validate_pairing(rep, case.pairing.gram)
    return rep, pairing, lagrangian_split(pairing, case.pst.split.plus)


# ---------------------------------------------------------------------------
# graded nilpotent representations


def random_graded_rep(rng, max_dim: int = 10) -> WDRep:
    """A Weil-Deligne representation with random Jordan type and random
    chain eigenvalues, randomly conjugated; exercises the filtration."""
    fld = field(1, rng.choice((2, 3))) if rng.random() < 0.8 else field(3, 2)
    d = rng.randint(1, max_dim)
    chains = []
    remaining = d
    while remaining:
        m = rng.randint(1, remaining)
        chains.append(m)
        remaining -= m
    F = [[fld.zero()] * d for _ in range(d)]
    N = [[fld.zero()] * d for _ in range(d)]
    off = 0
    for m in chains:
        lam = _weight_scalar(rng, fld, 2 * rng.randint(0, 2))
        for i in range(m):
            F[off + i][off + i] = lam / fld.from_rational(fld.q) ** i
            if i + 1 < m:
                N[off + i + 1][off + i] = fld.one()
        off += m
    rep = WDRep(fld, tuple(map(tuple, F)), tuple(map(tuple, N)),
                (la.identity(fld, d),), 0)
    T = _random_invertible(rng, fld, d)
    Tinv = la.inverse(T)
    conj = lambda M: la.mat_mul(Tinv, la.mat_mul(M, T))
    return WDRep(fld, conj(rep.frobenius), conj(rep.monodromy),
                 (la.identity(fld, d),), 0)


def monodromy_invariant_checks(a: WDRep) -> bool:
    """N M_k inside M_(k-2) and N^k inducing gr_k ~ gr_(-k), checked exactly
    on the computed filtration."""
    filt = monodromy_filtration(a)
    N = a.monodromy
    for k, basis in filt.levels:
        target = filt.level(k - 2)
        for v in basis:
            if not la.in_span(la.mat_vec(N, v), target):
                return False
    top = filt.levels[-1][0]
    for k in range(1, top + 1):
        up = filt.graded_reps(k)
        down = filt.graded_reps(-k)
        if len(up) != len(down):
            return False
        Nk = la.mat_pow(N, k)
        mapped = tuple(la.mat_vec(Nk, v) for v in up)
        low = filt.level(-k)
        for v in mapped:
            if not la.in_span(v, low):
                return False
        span = la.sum_space(filt.level(-k - 1), mapped)
        if not la.spaces_equal(span, low):
            return False
    return True


# ---------------------------------------------------------------------------
# numerology pairs


def random_numerology(rng) -> DeRhamNumerology:
    """A random consistent cohomology-dimension block."""
    d = rng.randint(1, 6)
    kdeg = rng.randint(1, 2)
    ht = _random_ht(rng, d * kdeg, (-3, -2, -1, 0, 1, 2))
    neg = sum(m for w, m in ht.entries if w < 0)
    pos = sum(m for w, m in ht.entries if w >= 0)
    h0 = rng.randint(0, 2)
    h0_t = h0 + rng.randint(0, min(2, neg))
    h0_dual = rng.randint(0, 2)
    h0_dual_t = h0_dual + rng.randint(0, min(2, pos))
    return DeRhamNumerology(d=d, kdeg=kdeg, ht=ht, h0=h0, h0_dual=h0_dual,
                            h0_t=h0_t, h0_dual_t=h0_dual_t)


def formulary_invariant_checks(n: DeRhamNumerology) -> bool:
    """Euler characteristic, duality and filtration-chain identities on the
    pair (n, dual of n)."""
    n_dual = n.dual()
    out = formulary(n, n_dual)
    out_dual = formulary(n_dual, n)
    if not euler_tate_check(out, n).ok:
        return False
    if not euler_tate_check(out_dual, n_dual).ok:
        return False
    if out.h1_f + out_dual.h1_f != out.h1:
        return False
    if out.h1_e != out_dual.h1 - out_dual.h1_g:
        return False
    if out.h2 != n_dual.h0 or out_dual.h2 != n.h0:
        return False
    if not (out.h1_e <= out.h1_f <= out.h1_g <= out.h1):
        return False
    return out.h2_t == 0


# ---------------------------------------------------------------------------
# selfcheck driver


@dataclass(frozen=True)
class SuiteResult:
    name: str
    passed: int
    failed: int
    failures: tuple

    @property
    def ok(self) -> bool:
        return self.failed == 0


def _run_suite(name, total, body) -> SuiteResult:
    passed = 0
    failures = []
    for i in range(total):
        try:
            ok = body(i)
        except Exception as exc:  # a crash is a failed case, not a crash run
            ok = False
            failures.append(f"case {i}: {type(exc).__name__}: {exc}")
        else:
            if not ok:
                failures.append(f"case {i}: identity failed")
        passed += 1 if ok else 0
    return SuiteResult(name=name, passed=passed, failed=total - passed,
                       failures=tuple(failures[:10]))


def selfcheck(seed: int, cases: int):
    """The three randomized property suites; deterministic in the seed."""
    local_cases = corpus(seed, cases)

    def local_body(i):
        case = local_cases[i]
        direct = eps_sign(case.rep, case.pairing)
        if panchishkin_eps(case.pst) != direct:
            return False
        ss = semisimplify(case.rep, part="frobenius")
        if eps_sign(ss, validate_pairing(ss, case.pairing.gram)) != direct:
            return False
        rep_id, pairing_id, split_id = identity_view(case)
        if rep_id is not None:
            if not reduction_identity_checks(rep_id, pairing_id, split_id).ok:
                return False
        return True

    rng_m = random.Random(seed + 1)
    graded = [random_graded_rep(rng_m) for _ in range(cases)]
    rng_n = random.Random(seed + 2)
    numerologies = [random_numerology(rng_n) for _ in range(cases)]
    return (
        _run_suite("reduction identities", cases, local_body),
        _run_suite("monodromy invariants", cases,
                   lambda i: monodromy_invariant_checks(graded[i])),
        _run_suite("formulary invariants", cases,
                   lambda i: formulary_invariant_checks(numerologies[i])),
    )
