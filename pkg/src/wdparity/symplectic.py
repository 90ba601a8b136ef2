"""Symplectic self-dual structure on Weil-Deligne representations.

A pairing is a skew Gram matrix J with <Fv, Fw> = q^(-1)<v, w>,
<Nv, w> + <v, Nw> = 0, and inertia invariance.  Pure weight -1 inputs with
semisimple Frobenius and trivial inertia decompose into pairwise orthogonal
blocks of two kinds: hyperbolic pairs x + x^*(1) on an indecomposable x, and
special self-dual blocks unr(+-q^(m/2-1)) (x) sp(m).  The decomposition here
returns an explicit symplectic basis per block, so a change-of-basis
certificate to the model blocks can be checked as exact matrix identities.
"""

from dataclasses import dataclass

from gmpy2 import mpq

from . import linalg as la
from .errors import (
    ClassificationError,
    PairingError,
    PurityError,
    UnsupportedInputError,
)
from .wd import (
    WDRep,
    direct_sum,
    dual,
    exact_eigenspace,
    is_frobenius_semisimple,
    is_pure,
    jordan_chains,
    make_sp,
    make_unr,
    quotient_rep,
    tensor,
    twist,
)


@dataclass(frozen=True)
class SympPairing:
    """Validated symplectic self-duality datum: owning rep and Gram matrix."""

    rep: WDRep
    gram: tuple

    @property
    def field(self):
        return self.rep.field


def pair_value(J, v, w):
    """<v, w> for the bilinear form with Gram matrix J."""
    acc = None
    for i, row in enumerate(J):
        if v[i].is_zero():
            continue
        for j, c in enumerate(row):
            t = v[i] * c * w[j]
            acc = t if acc is None else acc + t
    if acc is None:
        acc = v[0].field.zero() if v else None
    return acc


def validate_pairing(a: WDRep, J) -> SympPairing:
    """Check all pairing invariants exactly; failures are reported by name."""
    fld = a.field
    J = la.mat(fld, J)
    d = a.dim
    if len(J) != d or (d and len(J[0]) != d):
        raise PairingError("Gram matrix size does not match the representation")
    if d == 0:
        return SympPairing(a, J)
    if J != la.mat_scale(-fld.one(), la.transpose(J)):
        raise PairingError("pairing is not skew")
    if la.det(J).is_zero():
        raise PairingError("pairing is not nondegenerate skew")
    qinv = fld.from_rational(mpq(1, fld.q))
    F = a.frobenius
    if la.mat_mul(la.mat_mul(la.transpose(F), J), F) != la.mat_scale(qinv, J):
        raise PairingError("pairing is not Frobenius-equivariant into the twist")
    N = a.monodromy
    if la.mat_add(la.mat_mul(la.transpose(N), J), la.mat_mul(J, N)) != la.zeros(fld, d, d):
        raise PairingError("monodromy is not anti-self-adjoint for the pairing")
    for g in a.inertia:
        if la.mat_mul(la.mat_mul(la.transpose(g), J), g) != J:
            raise PairingError("pairing is not inertia-invariant")
    return SympPairing(a, J)


def hyperbolic_pair(x: WDRep):
    """x + x^*(1) with the standard form <(v,v'),(w,w')> = v'(w) - w'(v).

    Inertia embeds diagonally (g acts as g on x and as its dual on x^*(1)),
    matching the Galois action on the actual direct sum.
    """
    fld = x.field
    xd = twist(dual(x), 1)
    d = x.dim
    zero, one = fld.zero(), fld.one()

    def block(A, B):
        out = []
        for i in range(d):
            out.append(tuple(A[i]) + tuple(zero for _ in range(d)))
        for i in range(d):
            out.append(tuple(zero for _ in range(d)) + tuple(B[i]))
        return tuple(out)

    F = block(x.frobenius, xd.frobenius)
    N = block(x.monodromy, xd.monodromy)
    inertia = tuple(block(g, h) for g, h in zip(x.inertia, xd.inertia))
    rep = WDRep(fld, F, N, inertia, x.artm1_index)
    J = []
    for i in range(d):
        J.append(tuple(zero for _ in range(d))
                 + tuple(-one if j == i else zero for j in range(d)))
    for i in range(d):
        J.append(tuple(one if j == i else zero for j in range(d))
                 + tuple(zero for _ in range(d)))
    return rep, validate_pairing(rep, tuple(J))


def _special_gram(fld, m):
    zero, one = fld.zero(), fld.one()
    J = [[zero] * m for _ in range(m)]
    for i in range(m):
        J[i][m - 1 - i] = one if i % 2 == 0 else -one
    return tuple(tuple(row) for row in J)


def special_symplectic(fld, m: int, sign: int):
    """unr(sign * q^(m/2-1)) (x) sp(m) with its unique symplectic form."""
    if m % 2 or m < 2:
        raise PairingError("special self-dual block needs even m >= 2")
    if sign not in (1, -1):
        raise PairingError("sign must be +1 or -1")
    alpha = fld.from_rational(sign * mpq(fld.q) ** (m // 2 - 1))
    rep = tensor(make_unr(fld, alpha), make_sp(fld, m))
    return rep, validate_pairing(rep, _special_gram(fld, m))


@dataclass(frozen=True)
class SymplecticBlock:
    """One orthogonal summand of a decomposed symplectic representation.

    kind "type1": hyperbolic on x = unr(lam) (x) sp(dim/2); basis lists the
    x-chain then the corrected partner chain, with Gram exactly the model's.
    kind "type2": unr(sign*q^(dim/2-1)) (x) sp(dim); Gram is scale times the
    model's.  lagrangian is an N- and F-stable isotropic half of the block.
    """

    kind: str
    dim: int
    lam: object
    sign: object
    basis: tuple
    lagrangian: tuple
    scale: object


def decompose_symplectic(a: WDRep, p: SympPairing):
    """Orthogonal decomposition into type (1)/(2) blocks with certificates."""
    if p.rep is not a and p.rep != a:
        raise PairingError("pairing does not belong to this representation")
    if not a.has_trivial_inertia():
        raise UnsupportedInputError(
            "decomposition needs trivial inertia; apply inertia_split first"
        )
    if not is_frobenius_semisimple(a):
        raise UnsupportedInputError(
            "decomposition needs semisimple Frobenius; apply semisimplify first"
        )
    purity = is_pure(a, -1)
    if not purity.ok:
        raise PurityError(f"input is not pure of weight -1: {purity.reason}")
    return _decompose(a, p.gram)


def _chain_gram(J, chain_a, chain_b):
    return tuple(
        tuple(pair_value(J, v, w) for w in chain_b) for v in chain_a
    )


def _is_zero_gram(G):
    return all(x.is_zero() for row in G for x in row)


def _match_pattern(G, m, fld):
    """If G[i][j] = (-1)^j mu [i+j = m-1], return mu; else None."""
    mu = G[m - 1][0]
    for i in range(m):
        for j in range(m):
            want = fld.zero()
            if i + j == m - 1:
                want = mu if j % 2 == 0 else -mu
            if G[i][j] != want:
                return None
    return mu


def _decompose(rep: WDRep, J):
    if rep.dim == 0:
        return []
    fld = rep.field
    chains = jordan_chains(rep)
    chains.sort(key=lambda c: (-c[1], c[0].coords))
    lam, m, vecs = chains[0]
    self_gram = _chain_gram(J, vecs, vecs)
    q = mpq(fld.q)
    if not _is_zero_gram(self_gram):
        mu = _match_pattern(self_gram, m, fld)
        if mu is None or m % 2:
            raise ClassificationError(
                "self-paired chain does not carry the unique self-dual form"
            )
        ratio = lam / fld.from_rational(q ** (m // 2 - 1))
        if not ratio.is_rational() or ratio.rational_value() not in (1, -1):
            raise ClassificationError(
                "self-dual block eigenvalue is not +-q^(m/2-1)"
            )
        sign = int(ratio.rational_value())
        block = SymplecticBlock(
            kind="type2", dim=m, lam=lam, sign=sign,
            basis=tuple(vecs), lagrangian=tuple(vecs[m // 2:]), scale=-mu,
        )
        used = list(vecs)
    else:
        partner = None
        for other in chains[1:]:
            lam_w, m_w, w_vecs = other
            if m_w != m:
                continue
            cross = _chain_gram(J, vecs, w_vecs)
            if _is_zero_gram(cross):
                continue
            nu = _match_pattern(cross, m, fld)
            if nu is None:
                raise ClassificationError(
                    "cross pairing of equal-length chains has impossible shape"
                )
            partner = (lam_w, w_vecs, nu)
            break
        if partner is None:
            raise ClassificationError(
                "isotropic chain has no equal-length symplectic partner"
            )
        lam_w, w_vecs, nu = partner
        if lam * lam_w != fld.from_rational(q ** (m - 2)):
            raise ClassificationError(
                "paired chains do not satisfy the hyperbolic eigenvalue relation"
            )
        try:
            wt = lam.weil_weight()
        except Exception as exc:
            raise ClassificationError("hyperbolic eigenvalue has no weight") from exc
        if wt != m - 2:
            raise ClassificationError(
                "hyperbolic block eigenvalue weight is not d_i/2 - 2"
            )
        w_self = _chain_gram(J, w_vecs, w_vecs)
        if not _is_zero_gram(w_self):
            # replace w_j by w_j + c v_j; the single scalar c kills the
            # self-pairing because invariant pairings of a chain pair form
            # a one-dimensional space
            num = w_self[m - 1][0]
            den = pair_value(J, vecs[m - 1], w_vecs[0]) + pair_value(J, w_vecs[m - 1], vecs[0])
            c = -num / den
            w_vecs = [
                tuple(w_vecs[j][k] + c * vecs[j][k] for k in range(rep.dim))
                for j in range(m)
            ]
            if not _is_zero_gram(_chain_gram(J, w_vecs, w_vecs)):
                raise ClassificationError("partner chain correction failed")
        # reorder and rescale the partner so the Gram is exactly the model's
        corrected = []
        for j in range(m):
            s = fld.from_rational(mpq(1 if (m - j) % 2 == 0 else -1)) / nu
            src = w_vecs[m - 1 - j]
            corrected.append(tuple(s * x for x in src))
        basis = tuple(vecs) + tuple(corrected)
        G = _chain_gram(J, basis, basis)
        for i in range(2 * m):
            for j in range(2 * m):
                want = fld.zero()
                if j == i + m:
                    want = -fld.one()
                elif i == j + m:
                    want = fld.one()
                if G[i][j] != want:
                    raise ClassificationError("hyperbolic normalization failed")
        block = SymplecticBlock(
            kind="type1", dim=2 * m, lam=lam, sign=None,
            basis=basis, lagrangian=tuple(vecs), scale=fld.one(),
        )
        used = list(basis)
    # orthocomplement of the block and recursion
    rows = tuple(tuple(la.mat_vec(la.transpose(J), u)) for u in used)
    comp = la.nullspace(rows)
    sub = _restrict_trivial(rep, comp)
    subJ = _chain_gram(J, comp, comp)
    rest = _decompose(sub, subJ)
    out = [block]
    for b in rest:
        out.append(SymplecticBlock(
            kind=b.kind, dim=b.dim, lam=b.lam, sign=b.sign,
            basis=tuple(_lift_vec(v, comp, fld) for v in b.basis),
            lagrangian=tuple(_lift_vec(v, comp, fld) for v in b.lagrangian),
            scale=b.scale,
        ))
    return out


def _restrict_trivial(rep, basis):
    from .wd import restrict_rep

    return restrict_rep(rep, basis)


def _lift_vec(coords, basis, fld):
    d = len(basis[0]) if basis else 0
    out = [fld.zero()] * d
    for c, vec in zip(coords, basis):
        if c.is_zero():
            continue
        for k in range(d):
            out[k] = out[k] + c * vec[k]
    return tuple(out)


def model_block(fld, b: SymplecticBlock):
    """The model (rep, Gram) this block is certified against."""
    if b.kind == "type2":
        rep, pairing = special_symplectic(fld, b.dim, b.sign)
        gram = la.mat_scale(b.scale, pairing.gram)
        return rep, gram
    m = b.dim // 2
    x = tensor(make_unr(fld, b.lam), make_sp(fld, m))
    rep, pairing = hyperbolic_pair(x)
    return rep, la.mat_scale(b.scale, pairing.gram)


def reassembly_certificate(a: WDRep, p: SympPairing, blocks):
    """Exact change-of-basis check: the block bases conjugate (F, N) to the
    direct sum of model blocks and carry J to the scaled model Gram."""
    fld = a.field
    model = None
    gram_blocks = []
    for b in blocks:
        rep_b, gram_b = model_block(fld, b)
        model = rep_b if model is None else direct_sum(model, rep_b)
        gram_blocks.append(gram_b)
    cols = [v for b in blocks for v in b.basis]
    if model is None or len(cols) != a.dim:
        return False
    C = la.transpose(tuple(cols))
    modelJ = _block_diag_mats(gram_blocks, fld)
    lhs = la.mat_mul(la.mat_mul(la.transpose(C), p.gram), C)
    if lhs != modelJ:
        return False
    if la.mat_mul(a.frobenius, C) != la.mat_mul(C, model.frobenius):
        return False
    if la.mat_mul(a.monodromy, C) != la.mat_mul(C, model.monodromy):
        return False
    return True


def _block_diag_mats(mats, fld):
    d = sum(len(M) for M in mats)
    zero = fld.zero()
    out = []
    off = 0
    for M in mats:
        for row in M:
            out.append(tuple(zero for _ in range(off)) + tuple(row)
                       + tuple(zero for _ in range(d - off - len(M))))
        off += len(M)
    return tuple(out)


# -- Lagrangian splits --


@dataclass(frozen=True)
class LagrangianSplit:
    """An F-, N-, I-stable Lagrangian subobject with quotient representatives."""

    pairing: SympPairing
    plus: tuple
    minus_reps: tuple

    @property
    def rep(self):
        return self.pairing.rep


def lagrangian_split(p: SympPairing, plus_basis) -> LagrangianSplit:
    a = p.rep
    fld = a.field
    d = a.dim
    plus = tuple(tuple(x if hasattr(x, "coords") else fld.from_rational(x) for x in v)
                 for v in plus_basis)
    if len(la.independent_subset(plus)) != len(plus):
        raise PairingError("Lagrangian basis is linearly dependent")
    if 2 * len(plus) != d:
        raise PairingError("Lagrangian subspace is not half-dimensional")
    for v in plus:
        for w in plus:
            if not pair_value(p.gram, v, w).is_zero():
                raise PairingError("Lagrangian subspace is not isotropic")
    for name, M in (("Frobenius", a.frobenius), ("monodromy", a.monodromy)):
        img = [tuple(la.mat_vec(M, v)) for v in plus]
        if not la.is_subspace([x for x in img if any(not c.is_zero() for c in x)], plus):
            raise PairingError(f"Lagrangian subspace is not {name}-stable")
    for g in a.inertia:
        img = [tuple(la.mat_vec(g, v)) for v in plus]
        if not la.is_subspace(img, plus):
            raise PairingError("Lagrangian subspace is not inertia-stable")
    reps = la.quotient_data(d, plus, fld)
    # the pairing must induce an isomorphism plus ~ (quotient)^*(1)
    if plus:
        B = tuple(
            tuple(pair_value(p.gram, v, r) for r in reps) for v in plus
        )
        if la.det(B).is_zero():
            raise PairingError(
                "pairing does not induce a duality between the split halves"
            )
    return LagrangianSplit(p, plus, tuple(reps))


def split_from_blocks(p: SympPairing, blocks) -> LagrangianSplit:
    """Lagrangian split assembled from the per-block stable isotropic halves."""
    plus = tuple(v for b in blocks for v in b.lagrangian)
    return lagrangian_split(p, plus)


# -- the snake pairing --


@dataclass(frozen=True)
class SnakeForm:
    """Symmetric bilinear form on the N-killed generalized-1 part of the
    quotient, together with the induced Frobenius operator on that space."""

    field: object
    basis: tuple  # vectors in quotient coordinates
    gram: tuple
    frobenius: tuple

    @property
    def dim(self):
        return len(self.basis)


def snake_pairing(a: WDRep, p: SympPairing, s: LagrangianSplit,
                  lift_seed=None) -> SnakeForm:
    """<delta, delta'> = <N lift(delta), lift(delta')> on the space
    Delta^(-, N=0, f~1); purity of weight -1 makes this well defined.

    With lift_seed set, lifts are perturbed by random elements of the
    lift-ambiguity space, exercising lift independence.
    """
    purity = is_pure(a, -1)
    if not purity.ok:
        raise PurityError(f"snake pairing needs purity of weight -1: {purity.reason}")
    fld = a.field
    d = a.dim
    quot, reps = quotient_rep(a, s.plus)
    r = quot.dim
    if r == 0:
        return SnakeForm(fld, (), (), ())
    # S = ker(N quotient) meet generalized 1-eigenspace of F quotient
    kerN = la.nullspace(quot.monodromy)
    gen1 = exact_eigenspace(quot, fld.one(), generalized=True)
    S = la.intersect(kerN, gen1) if kerN and gen1 else ()
    if not S:
        return SnakeForm(fld, (), (), ())
    # projection to quotient coordinates: last r rows of [plus | reps]^(-1)
    M = la.transpose(tuple(s.plus) + tuple(reps))
    Minv = la.inverse(M)
    proj = tuple(Minv[len(s.plus) + i] for i in range(r))
    G1 = exact_eigenspace(a, fld.one(), generalized=True)
    PG = tuple(
        tuple(sum((proj[i][k] * v[k] for k in range(d)), fld.zero()) for v in G1)
        for i in range(r)
    )
    lifts = []
    ambiguity = la.nullspace(PG)
    rng = None
    if lift_seed is not None:
        import random

        rng = random.Random(lift_seed)
    for delta in S:
        coeffs = la.solve(PG, tuple(delta))
        lift = [fld.zero()] * d
        for c, vec in zip(coeffs, G1):
            for k in range(d):
                lift[k] = lift[k] + c * vec[k]
        if rng is not None and ambiguity:
            for kervec in ambiguity:
                t = fld.from_rational(rng.randint(-4, 4))
                for c, vec in zip(kervec, G1):
                    ct = t * c
                    for k in range(d):
                        lift[k] = lift[k] + ct * vec[k]
        lifts.append(tuple(lift))
    N = a.monodromy
    gram = tuple(
        tuple(pair_value(p.gram, tuple(la.mat_vec(N, lifts[i])), lifts[j])
              for j in range(len(S)))
        for i in range(len(S))
    )
    if gram != la.transpose(gram):
        raise PairingError("snake pairing failed to be symmetric")
    if la.det(gram).is_zero():
        raise PairingError("snake pairing is degenerate")
    fbar = la.restrict_operator(quot.frobenius, S)
    if la.mat_mul(la.mat_mul(la.transpose(fbar), gram), fbar) != gram:
        raise PairingError("Frobenius is not orthogonal for the snake pairing")
    for g, gq in zip(a.inertia, quot.inertia):
        if la.mat_mul(g, a.frobenius) != la.mat_mul(a.frobenius, g):
            continue
        gred = la.restrict_operator(gq, S)
        if la.mat_mul(la.mat_mul(la.transpose(gred), gram), gred) != gram:
            raise PairingError("snake pairing is not inertia-invariant")
    return SnakeForm(fld, tuple(S), gram, fbar)


def parity_congruence_check(form: SnakeForm) -> bool:
    """dim(exact 1-eigenspace of f) = dim(generalized 1-eigenspace) mod 2,
    for an orthogonal operator f on a nondegenerate symmetric form."""
    n = form.dim
    if n == 0:
        return True
    fld = form.field
    if form.gram != la.transpose(form.gram):
        raise PairingError("form is not symmetric")
    if la.det(form.gram).is_zero():
        raise PairingError("form is degenerate")
    f = form.frobenius
    if la.mat_mul(la.mat_mul(la.transpose(f), form.gram), f) != form.gram:
        raise PairingError("operator is not orthogonal for the form")
    one = fld.one()
    shifted = tuple(
        tuple(f[i][j] - (one if i == j else fld.zero()) for j in range(n))
        for i in range(n)
    )
    exact = len(la.nullspace(shifted))
    generalized = len(la.nullspace(la.mat_pow(shifted, n)))
    return exact % 2 == generalized % 2
