"""Weil-Deligne representations with exact matrix data.

A representation is (F, N, I, artm1): invertible Frobenius F, nilpotent N with
F N F^(-1) = q^(-1) N, a finite inertia image I given as an explicit matrix
list closed under product and inverse and normalized by F, and a designated
element artm1 in I (the image of -1 under the local Artin map, used by the
epsilon-sign formulas).  All entries live in one CycloWeilField.

Frobenius eigenvalues are found exactly: candidates of the shape
+-zeta_N^k sqrt(q)^j are sieved through a reduction to a prime field and the
survivors verified in exact arithmetic; if the generalized eigenspaces do not
exhaust the space, the characteristic polynomial is factored over the full
coefficient field (sympy, Trager-style) before declaring the polynomial
non-split.
"""

import random
from dataclasses import dataclass
from functools import lru_cache

from gmpy2 import mpq

from . import linalg as la
from .errors import (
    NonSplitError,
    RepInvariantError,
    UnsupportedInputError,
    WeightAbsentError,
)
from .scalars import CycloWeilField, CWScalar

INERTIA_BOUND = 10_000


def _mat_key(M):
    return tuple(x.coords for row in M for x in row)


def _is_nilpotent(N, d: int) -> bool:
    # N^d = 0 iff some repeated square N^(2^k) with 2^k >= d vanishes
    B = N
    for _ in range(max(1, (d - 1).bit_length())):
        if la.is_zero_matrix(B):
            return True
        B = la.mat_mul(B, B)
    return la.is_zero_matrix(B)


class WDRep:
    """Immutable Weil-Deligne representation; validates all invariants on build."""

    __slots__ = ("field", "frobenius", "monodromy", "inertia", "artm1_index", "_hash")

    def __init__(self, fld: CycloWeilField, frobenius, monodromy, inertia, artm1_index: int,
                 inertia_bound: int = INERTIA_BOUND):
        frobenius = la.mat(fld, frobenius)
        monodromy = la.mat(fld, monodromy)
        inertia = tuple(la.mat(fld, g) for g in inertia)
        d = len(frobenius)
        if d and len(frobenius[0]) != d:
            raise RepInvariantError("frobenius must be square")
        if len(monodromy) != d or (d and len(monodromy[0]) != d):
            raise RepInvariantError("monodromy must be square of the same size")
        for name, M in (("frobenius", frobenius), ("monodromy", monodromy)):
            for row in M:
                for x in row:
                    if x.field != fld:
                        raise RepInvariantError(f"{name} entry in wrong field")
        # dedupe inertia, tracking the designated element
        if not inertia:
            raise RepInvariantError("inertia list must be nonempty")
        if not (0 <= artm1_index < len(inertia)):
            raise RepInvariantError("artm1_index out of range")
        artm1_key = _mat_key(inertia[artm1_index])
        seen = {}
        deduped = []
        for g in inertia:
            if len(g) != d or (d and len(g[0]) != d):
                raise RepInvariantError("inertia matrix of wrong size")
            key = _mat_key(g)
            if key not in seen:
                seen[key] = len(deduped)
                deduped.append(g)
        inertia = tuple(deduped)
        artm1_index = seen[artm1_key]
        if len(inertia) > inertia_bound:
            raise RepInvariantError(
                f"inertia size {len(inertia)} exceeds bound {inertia_bound}"
            )
        object.__setattr__(self, "field", fld)
        object.__setattr__(self, "frobenius", frobenius)
        object.__setattr__(self, "monodromy", monodromy)
        object.__setattr__(self, "inertia", inertia)
        object.__setattr__(self, "artm1_index", artm1_index)
        object.__setattr__(self, "_hash", None)
        self._validate(seen)

    def __setattr__(self, name, value):
        raise AttributeError("WDRep is immutable")

    def _validate(self, inertia_keys):
        fld, d = self.field, self.dim
        F, N = self.frobenius, self.monodromy
        if d == 0:
            return
        if la.rank(F) != d:
            raise RepInvariantError("frobenius is singular")
        n_zero = la.is_zero_matrix(N)
        if not n_zero:
            if not _is_nilpotent(N, d):
                raise RepInvariantError("monodromy is not nilpotent")
            qinv = fld.from_rational(mpq(1, fld.q))
            # F N F^(-1) = q^(-1) N, cross-multiplied to avoid inverting F
            if la.mat_mul(F, N) != la.mat_scale(qinv, la.mat_mul(N, F)):
                raise RepInvariantError("F N F^(-1) != q^(-1) N")
        ident_key = _mat_key(la.identity(fld, d))
        if ident_key not in inertia_keys:
            raise RepInvariantError("inertia does not contain the identity")
        if len(self.inertia) == 1:
            return  # only the identity: the group checks are vacuous
        # F g F^(-1) in I  <=>  F g lands in the right-translate set {h F};
        # products with the identity element are trivial, so it is skipped
        rest = [g for g in self.inertia if _mat_key(g) != ident_key]
        hF_keys = {_mat_key(la.mat_mul(h, F)) for h in rest}
        hF_keys.add(_mat_key(F))
        for g in rest:
            if not n_zero and la.mat_mul(g, N) != la.mat_mul(N, g):
                raise RepInvariantError("an inertia element does not commute with N")
            if _mat_key(la.mat_mul(F, g)) not in hF_keys:
                raise RepInvariantError("inertia not normalized by Frobenius")
            # closure, and g h = 1 for some h certifies g^(-1) in I
            has_inverse = False
            for h in rest:
                key = _mat_key(la.mat_mul(g, h))
                if key not in inertia_keys:
                    raise RepInvariantError("inertia not closed under product")
                has_inverse = has_inverse or key == ident_key
            if not has_inverse:
                raise RepInvariantError("inertia not closed under inverse")

    @property
    def dim(self) -> int:
        return len(self.frobenius)

    @property
    def artm1(self):
        return self.inertia[self.artm1_index]

    def has_trivial_inertia(self) -> bool:
        return len(self.inertia) == 1

    def __eq__(self, other):
        if not isinstance(other, WDRep):
            return NotImplemented
        return (
            self.field == other.field
            and self.frobenius == other.frobenius
            and self.monodromy == other.monodromy
            and set(map(_mat_key, self.inertia)) == set(map(_mat_key, other.inertia))
            and _mat_key(self.artm1) == _mat_key(other.artm1)
        )

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((
                self.field,
                _mat_key(self.frobenius),
                _mat_key(self.monodromy),
                frozenset(map(_mat_key, self.inertia)),
                _mat_key(self.artm1),
            ))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self):
        return (f"WDRep(d={self.dim}, field={self.field!r}, "
                f"|I|={len(self.inertia)})")


# -- constructors --


def make_unr(fld: CycloWeilField, alpha) -> WDRep:
    """Unramified character unr(alpha): F = (alpha), N = 0, trivial inertia."""
    a = alpha if isinstance(alpha, CWScalar) else fld.from_rational(alpha)
    if a.is_zero():
        raise RepInvariantError("unr(alpha) needs alpha != 0")
    return WDRep(fld, ((a,),), ((fld.zero(),),), (la.identity(fld, 1),), 0)


def make_sp(fld: CycloWeilField, m: int) -> WDRep:
    """Special representation sp(m): F = diag(1, q^-1, ..., q^(1-m)), N the shift
    taking the eigenvalue-lambda line onto the eigenvalue-lambda/q line."""
    if m < 1:
        raise RepInvariantError("sp(m) needs m >= 1")
    zero, one = fld.zero(), fld.one()
    qinv = fld.from_rational(mpq(1, fld.q))
    F = tuple(
        tuple((qinv ** i) if i == j else zero for j in range(m)) for i in range(m)
    )
    N = tuple(
        tuple(one if i == j + 1 else zero for j in range(m)) for i in range(m)
    )
    return WDRep(fld, F, N, (la.identity(fld, m),), 0)


def twist(a: WDRep, n: int) -> WDRep:
    """a(n) = a tensor unr(q^-1)^n: scales Frobenius by q^(-n)."""
    c = a.field.from_rational(mpq(1, a.field.q) ** n)
    return WDRep(a.field, la.mat_scale(c, a.frobenius), a.monodromy, a.inertia, a.artm1_index)


def dual(a: WDRep) -> WDRep:
    """Contragredient: inverse-transpose on F and inertia, -N^T on monodromy."""
    if a.dim == 0:
        return a
    Fd = la.transpose(la.inverse(a.frobenius))
    Nd = la.mat_scale(-a.field.one(), la.transpose(a.monodromy))
    Id = tuple(la.transpose(la.inverse(g)) for g in a.inertia)
    return WDRep(a.field, Fd, Nd, Id, a.artm1_index)


def _kron(A, B, fld):
    da, db = len(A), len(B)
    if da == 0 or db == 0:
        return ()
    out = []
    for i in range(da):
        for k in range(db):
            row = []
            for j in range(da):
                for l in range(db):
                    row.append(A[i][j] * B[k][l])
            out.append(tuple(row))
    return tuple(out)


def tensor(a: WDRep, b: WDRep) -> WDRep:
    if a.field != b.field:
        raise RepInvariantError("tensor of representations over different fields")
    if not a.has_trivial_inertia() and not b.has_trivial_inertia():
        raise UnsupportedInputError(
            "tensor with nontrivial inertia on both factors needs a joint "
            "inertia homomorphism, which the matrix-list type does not carry"
        )
    fld = a.field
    da, db = a.dim, b.dim
    F = _kron(a.frobenius, b.frobenius, fld)
    Ia = la.identity(fld, da)
    Ib = la.identity(fld, db)
    N = la.mat_add(_kron(a.monodromy, Ib, fld), _kron(Ia, b.monodromy, fld))
    inertia = tuple(
        _kron(g, h, fld) for g in a.inertia for h in b.inertia
    )
    artm1 = _kron(a.artm1, b.artm1, fld)
    idx = [_mat_key(g) for g in inertia].index(_mat_key(artm1))
    return WDRep(fld, F, N, inertia, idx)


def direct_sum(a: WDRep, b: WDRep) -> WDRep:
    if a.field != b.field:
        raise RepInvariantError("direct sum of representations over different fields")
    fld = a.field
    da, db = a.dim, b.dim
    zero = fld.zero()

    def block(A, B):
        out = []
        for i in range(da):
            out.append(tuple(A[i]) + tuple(zero for _ in range(db)))
        for i in range(db):
            out.append(tuple(zero for _ in range(da)) + tuple(B[i]))
        return tuple(out)

    inertia = tuple(block(g, h) for g in a.inertia for h in b.inertia)
    artm1 = block(a.artm1, b.artm1)
    idx = [_mat_key(g) for g in inertia].index(_mat_key(artm1))
    return WDRep(fld, block(a.frobenius, b.frobenius), block(a.monodromy, b.monodromy), inertia, idx)


def restrict_rep(a: WDRep, basis) -> WDRep:
    """Sub-representation on a stable subspace, in the given basis."""
    if not basis:
        fld = a.field
        return WDRep(fld, (), (), ((),), 0)
    F = la.restrict_operator(a.frobenius, basis)
    N = la.restrict_operator(a.monodromy, basis)
    gs = tuple(la.restrict_operator(g, basis) for g in a.inertia)
    return WDRep(a.field, F, N, gs, a.artm1_index)


def quotient_rep(a: WDRep, sub_basis):
    """Quotient representation a / span(sub_basis); returns (rep, representatives)."""
    fld = a.field
    reps = la.quotient_data(a.dim, sub_basis, fld)
    if not reps:
        return WDRep(fld, (), (), ((),), 0), ()
    F = la.operator_on_quotient(a.frobenius, sub_basis, reps)
    N = la.operator_on_quotient(a.monodromy, sub_basis, reps)
    gs = tuple(la.operator_on_quotient(g, sub_basis, reps) for g in a.inertia)
    return WDRep(fld, F, N, gs, a.artm1_index), reps


# -- exact eigenvalue machinery --


def _is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _sieve_prime(fld: CycloWeilField, denominators):
    """A prime p = 1 mod N, coprime to q and all denominators, with q a QR if needed."""
    N, q = fld.N, fld.q
    p = 100_003
    p += (1 - p) % N  # make p = 1 mod N
    while True:
        if _is_probable_prime(p) and q % p and all(int(d) % p for d in denominators):
            if not fld.sqrt_adjoined or pow(q, (p - 1) // 2, p) == 1:
                return p
        p += N
        if p > 10**9:
            raise NonSplitError("no usable sieve prime found")


def _tonelli(n: int, p: int) -> int:
    """Square root of n mod p (p odd prime, n a QR)."""
    assert pow(n, (p - 1) // 2, p) == 1
    if p % 4 == 3:
        return pow(n, (p + 1) // 4, p)
    s, q = 0, p - 1
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(n, q, p), pow(n, (q + 1) // 2, p)
    while t != 1:
        i, tt = 0, t
        while tt != 1:
            tt = tt * tt % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return r


def _primitive_root_of_unity(N: int, p: int) -> int:
    # p = 1 mod N: g^((p-1)/N) has order dividing N; search until order is exactly N
    exp = (p - 1) // N
    for g in range(2, p):
        w = pow(g, exp, p)
        if w == 1:
            continue
        ok = True
        for ell in _prime_divisors(N):
            if pow(w, N // ell, p) == 1:
                ok = False
                break
        if ok:
            return w
    raise NonSplitError("no primitive root found for sieve prime")


def _prime_divisors(n: int):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _scalar_mod_p(a: CWScalar, zpows, spow_img, p: int) -> int:
    fld = a.field
    deg = fld.deg
    acc = 0
    for k, c in enumerate(a.coords[:deg]):
        if c:
            acc += (int(c.numerator) * pow(int(c.denominator), p - 2, p)) % p * zpows[k]
    if fld.sqrt_adjoined:
        hi = 0
        for k, c in enumerate(a.coords[deg:]):
            if c:
                hi += (int(c.numerator) * pow(int(c.denominator), p - 2, p)) % p * zpows[k]
        acc += hi * spow_img
    return acc % p


def _candidate_eigenvalues(fld: CycloWeilField, coeffs, d: int):
    """Exact roots of the (ascending, monic) polynomial among +-zeta^k sqrt(q)^j."""
    denominators = {c.denominator for a in coeffs for c in a.coords}
    p = _sieve_prime(fld, denominators)
    w = _primitive_root_of_unity(fld.N, p) if fld.N > 1 else 1
    zpows = [pow(w, k, p) for k in range(fld.deg)]
    if fld.sqrt_adjoined:
        s_img = _tonelli(fld.q % p, p)
    else:
        s_img = None
    coeff_imgs = [_scalar_mod_p(c, zpows, s_img, p) for c in coeffs]
    sqrt_img = s_img if fld.sqrt_adjoined else _scalar_mod_p(fld.sqrt_q(), zpows, None, p)
    window = 2 * d + 4
    zeta_imgs = [pow(w, k, p) for k in range(fld.N)]
    sq_inv = pow(sqrt_img, p - 2, p)
    candidates = []
    for sign in (1, p - 1):
        for k in range(fld.N):
            base = sign * zeta_imgs[k] % p
            for j in range(-window, window + 1):
                tj = pow(sqrt_img, j, p) if j >= 0 else pow(sq_inv, -j, p)
                u = base * tj % p
                acc = coeff_imgs[-1]
                for c in reversed(coeff_imgs[:-1]):
                    acc = (acc * u + c) % p
                if acc % p == 0:
                    candidates.append((sign, k, j))
    roots = []
    seen_exact = set()
    zeta = fld.zeta()
    sqrt_q = fld.sqrt_q()
    for sign, k, j in candidates:
        lam = (zeta ** k) * (sqrt_q ** j)
        if sign != 1:
            lam = -lam
        if lam.coords in seen_exact:
            continue
        seen_exact.add(lam.coords)
        if la.poly_eval(coeffs, lam).is_zero():
            roots.append(lam)
    return roots


def _eigenvalues_complete(fld: CycloWeilField, coeffs):
    """All roots in the field of the ascending monic polynomial, via sympy."""
    import sympy
    from sympy import QQ, Poly, Symbol, exp, I, pi, sqrt

    S = Symbol("S")
    gens = []
    z_expr = None
    if fld.N > 2:
        z_expr = exp(2 * I * pi / fld.N)
        gens.append(z_expr)
    s_expr = None
    if fld.sqrt_adjoined:
        s_expr = sqrt(fld.q)
        gens.append(s_expr)
    K = QQ.algebraic_field(*gens) if gens else QQ

    def to_expr(a: CWScalar):
        deg = fld.deg
        acc = sympy.Integer(0)
        zval = z_expr if fld.N > 2 else sympy.Integer(1 if fld.N == 1 else -1)
        for k, c in enumerate(a.coords[:deg]):
            if c:
                acc += sympy.Rational(int(c.numerator), int(c.denominator)) * zval**k
        if fld.sqrt_adjoined:
            for k, c in enumerate(a.coords[deg:]):
                if c:
                    acc += sympy.Rational(int(c.numerator), int(c.denominator)) * zval**k * s_expr
        return acc

    poly = Poly([K.from_sympy(to_expr(c)) for c in reversed(coeffs)], S, domain=K)
    # basis of our power representation as vectors over Q in sympy's primitive element
    if gens:
        theta_deg = K.ext.minpoly.degree()
    else:
        theta_deg = 1
    if theta_deg != fld.dim:
        raise NonSplitError(
            f"field degree mismatch between presentations ({theta_deg} vs {fld.dim})"
        )

    def anp_coords(expr):
        el = K.from_sympy(expr)
        if gens:
            lst = [mpq(c.numerator, c.denominator) for c in el.to_list()]
            lst.reverse()  # ascending powers of the primitive element
        else:
            lst = [mpq(el.numerator, el.denominator)]
        return lst + [mpq(0)] * (theta_deg - len(lst))

    basis_exprs = []
    zval = z_expr if fld.N > 2 else sympy.Integer(1 if fld.N == 1 else -1)
    for k in range(fld.deg):
        basis_exprs.append(zval**k)
    if fld.sqrt_adjoined:
        for k in range(fld.deg):
            basis_exprs.append(zval**k * s_expr)
    B = [anp_coords(e) for e in basis_exprs]  # dim columns, theta_deg rows each

    roots = []
    for fac, _mult in poly.factor_list()[1]:
        if fac.degree() != 1:
            continue
        cs = fac.all_coeffs()  # [lead, const] as sympy expressions over K
        root_expr = -cs[1] / cs[0]
        target = anp_coords(root_expr)
        coords = _solve_rational_system(B, target)
        if coords is None:
            raise NonSplitError("root conversion to power basis failed")
        roots.append(fld.element(coords))
    return roots


def _solve_rational_system(cols, target):
    """Solve sum_i x_i cols[i] = target over Q; returns x or None."""
    m = len(target)
    n = len(cols)
    A = [[cols[j][i] for j in range(n)] + [target[i]] for i in range(m)]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(m):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    for i in range(r, m):
        if A[i][n] != 0:
            return None
    x = [mpq(0)] * n
    for row, c in enumerate(pivots):
        x[c] = A[row][n]
    return x


@lru_cache(maxsize=512)
def eigen_data(a: WDRep):
    """Tuple of (eigenvalue, generalized eigenspace basis), spanning the space.

    Raises NonSplitError when the characteristic polynomial of Frobenius does
    not split over the coefficient field (remedy: enlarge the conductor N).
    """
    d = a.dim
    if d == 0:
        return ()
    fld = a.field
    coeffs = la.char_poly(a.frobenius)
    roots = _candidate_eigenvalues(fld, coeffs, d)
    out, total = _generalized_spaces(a, roots, coeffs)
    if total < d:
        roots = _eigenvalues_complete(fld, coeffs)
        out, total = _generalized_spaces(a, roots, coeffs)
        if total < d:
            raise NonSplitError(
                "characteristic polynomial of Frobenius does not split over "
                f"Q(zeta_{fld.N}, sqrt {fld.q}); re-encode the datum over a larger "
                "cyclotomic conductor N"
            )
    return out


def _alg_multiplicity(coeffs, lam, d: int) -> int:
    """Multiplicity of lam as a root of the ascending-coefficient polynomial."""
    mult = 0
    desc = list(reversed(coeffs))
    while mult < d:
        # one synthetic-division pass; the popped value is the remainder
        q = [desc[0]]
        for c in desc[1:]:
            q.append(c + lam * q[-1])
        if not q.pop().is_zero():
            break
        desc = q
        mult += 1
    return mult


def _generalized_spaces(a: WDRep, roots, coeffs):
    d = a.dim
    fld = a.field
    out = []
    total = 0
    for lam in sorted(roots, key=lambda x: x.coords):
        mult = _alg_multiplicity(coeffs, lam, d)
        if mult == 0:
            continue
        shifted = tuple(
            tuple(a.frobenius[i][j] - (lam if i == j else fld.zero()) for j in range(d))
            for i in range(d)
        )
        # ker((F - lam)^k) grows to the algebraic multiplicity and stops;
        # a semisimple eigenvalue is done at the first kernel
        power = shifted
        gen = la.nullspace(power)
        while len(gen) < mult:
            power = la.mat_mul(power, shifted)
            gen = la.nullspace(power)
        out.append((lam, gen))
        total += mult
        if total == d:
            break
    return tuple(out), total


def exact_eigenspace(a: WDRep, lam: CWScalar, generalized: bool = False):
    """Basis of ker(F - lam) (or of the generalized eigenspace)."""
    d = a.dim
    if d == 0:
        return ()
    fld = a.field
    shifted = tuple(
        tuple(a.frobenius[i][j] - (lam if i == j else fld.zero()) for j in range(d))
        for i in range(d)
    )
    M = la.mat_pow(shifted, d) if generalized else shifted
    return la.nullspace(M)


def is_frobenius_semisimple(a: WDRep) -> bool:
    for lam, gen in eigen_data(a):
        if len(exact_eigenspace(a, lam)) != len(gen):
            return False
    return True


# -- monodromy filtration --


@dataclass(frozen=True)
class MonodromyFiltration:
    """Increasing filtration M_k with N M_k in M_(k-2) and N^k: gr_k ~ gr_(-k)."""

    rep: WDRep
    levels: tuple  # tuple of (k, basis) ascending, basis of M_k
    nilpotency: int

    def level(self, k: int):
        best = ()
        for kk, basis in self.levels:
            if kk <= k:
                best = basis
            else:
                break
        return best

    def graded_reps(self, k: int):
        """Representatives of gr_k = M_k / M_(k-1) (vectors of the ambient space)."""
        return la.complement_in(self.level(k - 1), self.level(k))

    def graded_dims(self):
        return {k: len(self.graded_reps(k)) for k, _ in self.levels if self.graded_reps(k)}


def monodromy_filtration(a: WDRep) -> MonodromyFiltration:
    """The unique filtration M_k with N M_k in M_(k-2) and N^k: gr_k = gr_(-k):
    M_k = sum over j >= max(0, -k) of ker N^(k+j+1) meet im N^j."""
    d = a.dim
    fld = a.field
    N = a.monodromy
    if d == 0:
        return MonodromyFiltration(a, ((0, ()),), 0)
    powers = [la.identity(fld, d)]
    e = 0
    while not la.is_zero_matrix(powers[-1]):
        powers.append(la.mat_mul(powers[-1], N) if e else N)
        e += 1
        if e > d:
            raise RepInvariantError("monodromy is not nilpotent")
    # powers[j] = N^j for j = 0..e with N^e = 0
    kernels = [la.nullspace(powers[j]) if j else () for j in range(e + 1)]
    kernels[0] = ()
    full = tuple(la.identity(fld, d))
    images = [full] + [la.column_space(powers[j]) for j in range(1, e + 1)]
    levels = []
    for k in range(-e, e + 1):
        acc = ()
        for j in range(max(0, -k), e + 1):
            kspace = kernels[min(k + j + 1, e)]
            space = la.intersect(kspace, images[j]) if j else tuple(kspace)
            acc = la.sum_space(acc, space) if acc else tuple(space)
        levels.append((k, acc))
    return MonodromyFiltration(a, tuple(levels), e)


# -- semisimplification, weight pieces, purity --


def semisimplify(a: WDRep, part: str = "frobenius") -> WDRep:
    if part not in ("frobenius", "monodromy", "both"):
        raise ValueError("part must be frobenius, monodromy or both")
    out = a
    if part in ("frobenius", "both"):
        out = _frobenius_ss(out)
    if part in ("monodromy", "both"):
        out = _monodromy_ss(out)
    return out


def _frobenius_ss(a: WDRep) -> WDRep:
    if a.dim == 0:
        return a
    data = eigen_data(a)
    fld = a.field
    cols = []
    diag = []
    for lam, gen in data:
        cols.extend(gen)
        diag.extend([lam] * len(gen))
    P = la.transpose(tuple(cols))
    Pinv = la.inverse(P)
    D = tuple(
        tuple(diag[i] if i == j else fld.zero() for j in range(a.dim)) for i in range(a.dim)
    )
    Fss = la.mat_mul(la.mat_mul(P, D), Pinv)
    return WDRep(fld, Fss, a.monodromy, a.inertia, a.artm1_index)


def _monodromy_ss(a: WDRep) -> WDRep:
    filt = monodromy_filtration(a)
    fld = a.field
    blocks = []
    for k, _ in filt.levels:
        reps = filt.graded_reps(k)
        if not reps:
            continue
        below = filt.level(k - 1)
        colspace = tuple(below) + tuple(reps)
        cols = la.transpose(colspace)
        Fq = _induced_block(a.frobenius, cols, len(below), len(reps))
        gq = [_induced_block(g, cols, len(below), len(reps)) for g in a.inertia]
        blocks.append((Fq, gq))
    if not blocks:
        return a
    zero = fld.zero()
    dims = [len(b[0]) for b in blocks]
    d = sum(dims)
    F = _block_diag([b[0] for b in blocks], fld)
    gs = []
    for idx in range(len(a.inertia)):
        gs.append(_block_diag([b[1][idx] for b in blocks], fld))
    N = la.zeros(fld, d, d)
    return WDRep(fld, F, N, tuple(gs), a.artm1_index)


def _induced_block(T, cols, nbelow, nreps):
    img = la.mat_mul(T, tuple(tuple(row[nbelow:]) for row in cols))
    X = la.solve_matrix(cols, img)
    return tuple(tuple(X[nbelow + i][j] for j in range(nreps)) for i in range(nreps))


def _block_diag(blocks, fld):
    d = sum(len(b) for b in blocks)
    zero = fld.zero()
    out = []
    off = 0
    for b in blocks:
        for row in b:
            out.append(tuple(zero for _ in range(off)) + tuple(row)
                       + tuple(zero for _ in range(d - off - len(b))))
        off += len(b)
    return tuple(out)


def weight_pieces(a: WDRep):
    """Dict weight -> basis of the sum of generalized eigenspaces of that weight.

    The key is the Weil weight of the Frobenius eigenvalue itself (the centered
    indexing of graded pieces is a shifted view of this one).
    """
    pieces = {}
    for lam, gen in eigen_data(a):
        try:
            w = lam.weil_weight()
        except WeightAbsentError as exc:
            raise WeightAbsentError(
                f"eigenvalue {lam!r} of Frobenius is not a q-Weil number"
            ) from exc
        pieces.setdefault(w, [])
        pieces[w].extend(gen)
    return {w: tuple(v) for w, v in pieces.items()}


@dataclass(frozen=True)
class PurityResult:
    ok: bool
    reason: str | None = None

    def __bool__(self):
        return self.ok


def is_pure(a: WDRep, w: int) -> PurityResult:
    """Purity of weight w: eigenvalue weights split the monodromy filtration
    centered at w, i.e. N^i maps the weight-(w+i) piece isomorphically onto the
    weight-(w-i) piece for every i >= 0."""
    if a.dim == 0:
        return PurityResult(True)
    try:
        pieces = weight_pieces(a)
    except WeightAbsentError as exc:
        return PurityResult(False, str(exc))
    N = a.monodromy
    for wt, basis in pieces.items():
        target = pieces.get(wt - 2, ())
        img = [la.mat_vec(N, v) for v in basis]
        img = [v for v in img if any(not x.is_zero() for x in v)]
        if img and not la.is_subspace(img, target):
            return PurityResult(False, f"N does not lower weight {wt} to {wt - 2}")
    for wt in sorted(pieces):
        i = wt - w
        if i < 0:
            continue
        upper = pieces.get(w + i, ())
        lower = pieces.get(w - i, ())
        if len(upper) != len(lower):
            return PurityResult(
                False, f"weight pieces {w + i} and {w - i} have different dimensions"
            )
        if i == 0 or not upper:
            continue
        Npow = la.mat_pow(N, i)
        img = [la.mat_vec(Npow, v) for v in upper]
        if len(la.independent_subset(img)) != len(upper) or not la.is_subspace(img, lower):
            return PurityResult(
                False, f"N^{i} is not an isomorphism from weight {w + i} to {w - i}"
            )
    for wt in pieces:
        if (wt - w) < 0 and (2 * w - wt) not in pieces:
            return PurityResult(
                False, f"weight pieces {wt} and {2 * w - wt} have different dimensions"
            )
    return PurityResult(True)


# -- inertia split --


def inertia_average(a: WDRep):
    fld = a.field
    d = a.dim
    acc = None
    for g in a.inertia:
        acc = g if acc is None else la.mat_add(acc, g)
    c = fld.from_rational(mpq(1, len(a.inertia)))
    return la.mat_scale(c, acc)


def inertia_split_with_bases(a: WDRep):
    """(fixed rep, moving rep, fixed basis, moving basis): a = a^I + a' with
    a^I the inertia invariants and a' the unique stable complement with no
    nonzero invariant vector."""
    if a.dim == 0:
        return a, a, (), ()
    e = inertia_average(a)
    fixed = la.column_space(e)
    moving = la.nullspace(e)
    fixed_rep = restrict_rep(a, fixed)
    moving_rep = restrict_rep(a, moving)
    return fixed_rep, moving_rep, fixed, moving


def inertia_split(a: WDRep):
    """(a^I, a'), the inertia-invariant part and its stable complement."""
    fixed_rep, moving_rep, _, _ = inertia_split_with_bases(a)
    return fixed_rep, moving_rep


# -- indecomposable chain decomposition (Frobenius-semisimple, trivial inertia) --


def jordan_chains(a: WDRep):
    """Decompose an F-semisimple, trivial-inertia representation into chains
    (lam, m, [v, Nv, ..., N^(m-1) v]), each spanning a copy of unr(lam) (x) sp(m)."""
    if not a.has_trivial_inertia():
        raise UnsupportedInputError("chain decomposition needs trivial inertia")
    if not is_frobenius_semisimple(a):
        raise UnsupportedInputError("chain decomposition needs semisimple Frobenius")
    d = a.dim
    if d == 0:
        return []
    fld = a.field
    N = a.monodromy
    eig = {lam.coords: (lam, basis) for lam, basis in eigen_data(a)}
    q = fld.from_rational(fld.q)
    chains = []
    # group eigenvalues into q-power strings, top first
    tops = []
    for key, (lam, _) in eig.items():
        if (lam * q).coords not in eig:
            tops.append(lam)
    tops.sort(key=lambda x: x.coords)
    qinv = fld.from_rational(mpq(1, fld.q))
    for top in tops:
        # levels of this orbit: top, top/q, ... while present
        orbit = []
        cur = top
        while cur.coords in eig:
            orbit.append(eig[cur.coords])
            cur = cur * qinv
        depth = len(orbit)
        # kernels of N^j intersected with each eigenspace
        Np = [la.identity(fld, d)]
        for _ in range(depth):
            Np.append(la.mat_mul(Np[-1], N))
        K = [()] + [la.nullspace(Np[j]) for j in range(1, depth + 1)]
        level_space = [basis for _, basis in orbit]

        def K_in(level, j):
            if j <= 0:
                return ()
            if j > depth:
                j = depth
            return la.intersect(level_space[level], K[j])

        new_chains = []
        for m in range(depth, 0, -1):
            for level in range(0, depth - m + 1):
                # chain tops of exact length m starting at this level
                km = K_in(level, m)
                if not km:
                    continue
                below = K_in(level, m - 1)
                feed = ()
                if level > 0:
                    above = K_in(level - 1, m + 1)
                    if above:
                        feed = la.independent_subset(
                            [la.mat_vec(N, v) for v in above]
                        )
                barrier = la.sum_space(below, feed) if (below or feed) else ()
                tops_here = la.complement_in(barrier, km)
                for v in tops_here:
                    chain = [v]
                    for _ in range(m - 1):
                        chain.append(la.mat_vec(N, chain[-1]))
                    lam_top = orbit[level][0]
                    new_chains.append((lam_top, m, chain))
        chains.extend(new_chains)
    # sanity: chains form a basis
    vecs = [v for _, _, chain in chains for v in chain]
    if len(vecs) != d or len(la.independent_subset(vecs)) != d:
        raise RepInvariantError("chain extraction failed to produce a basis")
    return chains


# -- isomorphism test --


def _jordan_invariant(a: WDRep):
    inv = []
    for lam, m, _ in jordan_chains(a):
        inv.append((lam.coords, m))
    inv.sort()
    return tuple(inv)


def is_isomorphic(a: WDRep, b: WDRep, seed: int = 0) -> bool:
    """Existence of an invertible intertwiner for (F, N, inertia, artm1)."""
    if a.field != b.field or a.dim != b.dim:
        return False
    if a.dim == 0:
        return True
    if la.char_poly(a.frobenius) != la.char_poly(b.frobenius):
        return False
    for k in range(1, a.dim + 1):
        if la.rank(la.mat_pow(a.monodromy, k)) != la.rank(la.mat_pow(b.monodromy, k)):
            return False
    if len(a.inertia) != len(b.inertia):
        return False
    trivial = a.has_trivial_inertia() and b.has_trivial_inertia()
    if trivial:
        try:
            if is_frobenius_semisimple(a) and is_frobenius_semisimple(b):
                return _jordan_invariant(a) == _jordan_invariant(b)
        except NonSplitError:
            pass
        return _intertwiner_search(a, b, None, seed)
    for sigma in _inertia_matchings(a, b):
        if _intertwiner_search(a, b, sigma, seed):
            return True
    return False


def _inertia_matchings(a: WDRep, b: WDRep, cap: int = 2000):
    """Candidate bijections I_a -> I_b as index maps, consistent with the group
    structure, traces, and the designated artm1 elements."""
    na = len(a.inertia)
    keys_b = {_mat_key(g): i for i, g in enumerate(b.inertia)}

    def invariant(rep, g):
        tr = rep.field.zero()
        for i in range(rep.dim):
            tr = tr + g[i][i]
        return (tuple(c.coords for c in la.char_poly(g)),)

    inv_a = [invariant(a, g) for g in a.inertia]
    inv_b = [invariant(b, g) for g in b.inertia]
    prod_a = [
        [
            next(i for i, g in enumerate(a.inertia) if _mat_key(g) == _mat_key(la.mat_mul(x, y)))
            for y in a.inertia
        ]
        for x in a.inertia
    ]
    prod_b_key = {}
    for i, x in enumerate(b.inertia):
        for j, y in enumerate(b.inertia):
            prod_b_key[(i, j)] = keys_b[_mat_key(la.mat_mul(x, y))]
    count = 0

    def backtrack(mapping, used):
        nonlocal count
        if count >= cap:
            return
        idx = len(mapping)
        if idx == na:
            count += 1
            yield dict(enumerate(mapping))
            return
        for j in range(len(b.inertia)):
            if j in used or inv_a[idx] != inv_b[j]:
                continue
            if idx == a.artm1_index and j != b.artm1_index:
                continue
            if j == b.artm1_index and idx != a.artm1_index:
                continue
            mapping.append(j)
            used.add(j)
            ok = True
            for i1 in range(idx + 1):
                for i2 in range(idx + 1):
                    k = prod_a[i1][i2]
                    if k <= idx:
                        if prod_b_key[(mapping[i1], mapping[i2])] != mapping[k]:
                            ok = False
                            break
                if not ok:
                    break
            if ok:
                yield from backtrack(mapping, used)
            mapping.pop()
            used.remove(j)

    yield from backtrack([], set())


def _intertwiner_search(a: WDRep, b: WDRep, sigma, seed: int) -> bool:
    d = a.dim
    fld = a.field
    pairs = [(a.frobenius, b.frobenius), (a.monodromy, b.monodromy)]
    if sigma is not None:
        for i, j in sigma.items():
            pairs.append((a.inertia[i], b.inertia[j]))
    rows = []
    zero = fld.zero()
    # unknowns T[r][c] flattened; constraint T X - Y T = 0 per pair (X, Y)
    for X, Y in pairs:
        for i in range(d):
            for j in range(d):
                row = [zero] * (d * d)
                for k in range(d):
                    row[i * d + k] = row[i * d + k] + X[k][j]
                    row[k * d + j] = row[k * d + j] - Y[i][k]
                rows.append(tuple(row))
    basis = la.nullspace(tuple(rows))
    if not basis:
        return False

    def as_matrix(vec):
        return tuple(tuple(vec[i * d + j] for j in range(d)) for i in range(d))

    mats = [as_matrix(v) for v in basis]
    for T in mats:
        if not la.det(T).is_zero():
            return True
    rng = random.Random(seed or 1)
    # det is a nonzero polynomial on the span iff some member is invertible;
    # exact Schwartz-Zippel draws make a miss vanishingly unlikely
    for trial in range(60):
        bound = 3 + trial
        comb = None
        for T in mats:
            c = fld.from_rational(rng.randint(-bound, bound))
            term = la.mat_scale(c, T)
            comb = term if comb is None else la.mat_add(comb, term)
        if comb is not None and not la.det(comb).is_zero():
            return True
    return False
