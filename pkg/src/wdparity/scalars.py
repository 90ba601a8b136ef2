"""Exact arithmetic in Q(zeta_N, sqrt q).

Elements are stored on the power basis 1, z, ..., z^(phi(N)-1) modulo the N-th
cyclotomic polynomial, doubled by a formal sqrt(q) coordinate block when sqrt(q)
does not already lie in Q(zeta_N).  Whether it does is decided exactly: writing
q = l^h (q must be a prime power > 1) and q* for the squarefree part, sqrt(q) is
in Q(zeta_N) iff h is even, or q* = l with l = 1 mod 4 and l | N, or l != 1 mod 4
and 4l | N.  In the collapsed case sqrt(q) is realized explicitly through the
quadratic Gauss sum.

Coefficients are gmpy2.mpq rationals, so every operation is exact.  conj is the
field automorphism z -> z^(-1), sqrt(q) -> sqrt(q); the field is abelian over Q,
so conj computes complex conjugation in every embedding and a * conj(a) = q^w
detects q-Weil numbers of weight w.
"""

from fractions import Fraction

from gmpy2 import mpq

from .errors import ScalarError, WeightAbsentError

_ZERO = mpq(0)
_ONE = mpq(1)

_CYCLO_CACHE: dict[int, list[int]] = {}
_FIELD_CACHE: dict[tuple[int, int], "CycloWeilField"] = {}


def _cyclotomic_poly(n: int) -> list[int]:
    """Integer coefficient list (ascending) of the n-th cyclotomic polynomial."""
    if n in _CYCLO_CACHE:
        return _CYCLO_CACHE[n]
    # x^n - 1 divided by the product of Phi_d over proper divisors d | n.
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            div = _cyclotomic_poly(d)
            poly = _poly_divexact(poly, div)
    _CYCLO_CACHE[n] = poly
    return poly


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    """Exact division of integer polynomials (ascending coefficients)."""
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + len(den) - 1]
        assert c % den[-1] == 0
        c //= den[-1]
        out[k] = c
        for i, dc in enumerate(den):
            num[k + i] -= c * dc
    assert all(c == 0 for c in num)
    return out


def _prime_power_base(q: int) -> tuple[int, int]:
    """q = l^h with l prime, h >= 1; raises ScalarError otherwise (q = 1 included)."""
    if q < 2:
        raise ScalarError(f"q must be a prime power > 1, got {q}")
    l = q
    for p in range(2, q + 1):
        if p * p > q:
            break
        if q % p == 0:
            l = p
            break
    h = 0
    m = q
    while m > 1:
        if m % l:
            raise ScalarError(f"q must be a prime power > 1, got {q}")
        m //= l
        h += 1
    return l, h


def _legendre(a: int, l: int) -> int:
    r = pow(a % l, (l - 1) // 2, l)
    return r - l if r > 1 else r


class CycloWeilField:
    """The coefficient field Q(zeta_N, sqrt q) with exact power-basis arithmetic."""

    def __init__(self, N: int, q: int):
        if N < 1:
            raise ScalarError(f"N must be >= 1, got {N}")
        self.N = N
        self.q = q
        self.ell, self.h = _prime_power_base(q)
        self.phi = _cyclotomic_poly(N)
        self.deg = len(self.phi) - 1
        self.sqrt_adjoined = not self._sqrt_in_cyclo()
        self.dim = self.deg * (2 if self.sqrt_adjoined else 1)
        # zpow[e] = coordinates of z^e reduced mod Phi_N, for 0 <= e < N.
        top = [mpq(-c) for c in self.phi[:-1]]  # x^deg = -(lower part), Phi monic
        zpow = [[_ZERO] * self.deg for _ in range(max(N, 1))]
        zpow[0][0] = _ONE
        for e in range(1, N):
            prev = zpow[e - 1]
            cur = [_ZERO] + prev[:-1]
            lead = prev[-1]
            if lead:
                cur = [c + lead * t for c, t in zip(cur, top)]
            zpow[e] = cur
        self._zpow = [tuple(row) for row in zpow]
        # Reduction rows for x^k, deg <= k <= 2 deg - 2 (products before reduction).
        red = {}
        row = list(top)
        red[self.deg] = tuple(row)
        for k in range(self.deg + 1, 2 * self.deg - 1):
            row = [_ZERO] + row[:-1]
            lead = red[k - 1][-1]
            if lead:
                row = [c + lead * t for c, t in zip(row, top)]
            red[k] = tuple(row)
        self._red = red
        # conj on the cyclotomic block: z^k -> z^(-k).
        self._conj_rows = tuple(self._zpow[(-k) % N if N > 1 else 0] for k in range(self.deg))
        self._sqrt_cyclo = None if self.sqrt_adjoined else tuple(self._sqrt_coords())

    def _sqrt_in_cyclo(self) -> bool:
        if self.h % 2 == 0:
            return True
        l = self.ell
        if l % 4 == 1:
            return self.N % l == 0
        return self.N % (4 * l) == 0

    def _sqrt_coords(self) -> list[mpq]:
        """Coordinates of sqrt(q) inside Q(zeta_N) (collapsed case only)."""
        scale = mpq(self.ell) ** ((self.h - 1) // 2) if self.h % 2 else mpq(self.ell) ** (self.h // 2)
        out = [_ZERO] * self.deg
        if self.h % 2 == 0:
            out[0] = scale
            return out
        l, N = self.ell, self.N
        if l == 2:
            # sqrt 2 = zeta_8 + zeta_8^(-1)
            for e in (N // 8, (7 * N) // 8):
                out = [c + d for c, d in zip(out, self._zpow[e % N])]
        else:
            # Gauss sum g = sum (a|l) zeta_l^a; g^2 = (-1)^((l-1)/2) l.
            gauss = [_ZERO] * self.deg
            for a in range(1, l):
                s = _legendre(a, l)
                row = self._zpow[(a * (N // l)) % N]
                gauss = [c + s * d for c, d in zip(gauss, row)]
            if l % 4 == 1:
                out = gauss
            else:
                i4 = self._zpow[N // 4]  # zeta_4; (zeta_4 g)^2 = l
                out = self._mul_cyclo(tuple(i4), tuple(gauss))
        return [scale * c for c in out]

    # -- block-level helpers (cyclotomic part only) --

    def _mul_cyclo(self, a, b):
        deg = self.deg
        if deg == 1:
            return [a[0] * b[0]]
        conv = [_ZERO] * (2 * deg - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        conv[i + j] += ai * bj
        out = conv[:deg]
        for k in range(deg, 2 * deg - 1):
            ck = conv[k]
            if ck:
                row = self._red[k]
                out = [c + ck * r for c, r in zip(out, row)]
        return out

    def _inv_cyclo(self, a):
        """Inverse of a(z) mod Phi_N by the extended Euclidean algorithm."""
        if all(c == 0 for c in a):
            raise ZeroDivisionError("inverse of zero scalar")
        r0 = [mpq(c) for c in self.phi]
        r1 = list(a)
        while r1 and r1[-1] == 0:
            r1.pop()
        s0, s1 = [], [_ONE]
        while True:
            if len(r1) == 1:
                c = r1[0]
                return [x / c for x in s1] + [_ZERO] * (self.deg - len(s1))
            quot, rem = _poly_divmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _poly_sub(s0, _poly_mul(quot, s1))
            if not r1:
                raise ScalarError("cyclotomic modulus not coprime to element")

    # -- element constructors --

    def element(self, coords) -> "CWScalar":
        coords = tuple(mpq(c) for c in coords)
        if len(coords) != self.dim:
            raise ScalarError(f"expected {self.dim} coordinates, got {len(coords)}")
        return CWScalar(self, coords)

    def zero(self) -> "CWScalar":
        return self.element([_ZERO] * self.dim)

    def one(self) -> "CWScalar":
        return self.from_rational(1)

    def from_rational(self, a) -> "CWScalar":
        coords = [_ZERO] * self.dim
        coords[0] = mpq(a)
        return self.element(coords)

    def zeta(self) -> "CWScalar":
        """The root of unity z = zeta_N."""
        coords = [_ZERO] * self.dim
        for i, c in enumerate(self._zpow[1 % self.N]):
            coords[i] = c
        return self.element(coords)

    def sqrt_q(self) -> "CWScalar":
        """A square root of q, fixed by conj."""
        coords = [_ZERO] * self.dim
        if self.sqrt_adjoined:
            coords[self.deg] = _ONE
        else:
            for i, c in enumerate(self._sqrt_cyclo):
                coords[i] = c
        return self.element(coords)

    def __eq__(self, other):
        return isinstance(other, CycloWeilField) and (self.N, self.q) == (other.N, other.q)

    def __hash__(self):
        return hash((self.N, self.q))

    def __repr__(self):
        return f"CycloWeilField(N={self.N}, q={self.q})"


def field(N: int, q: int) -> CycloWeilField:
    """Cached field constructor; fields are immutable."""
    key = (N, q)
    F = _FIELD_CACHE.get(key)
    if F is None:
        F = CycloWeilField(N, q)
        _FIELD_CACHE[key] = F
    return F


def _poly_divmod(num, den):
    num = list(num)
    dl = len(den)
    out = [_ZERO] * max(len(num) - dl + 1, 0)
    inv = 1 / den[-1]
    for k in range(len(out) - 1, -1, -1):
        c = num[k + dl - 1] * inv
        out[k] = c
        if c:
            for i in range(dl):
                num[k + i] -= c * den[i]
    while num and num[-1] == 0:
        num.pop()
    return out, num


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [_ZERO] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [_ZERO] * (n - len(a))
    b = list(b) + [_ZERO] * (n - len(b))
    out = [x - y for x, y in zip(a, b)]
    while out and out[-1] == 0:
        out.pop()
    return out


class CWScalar:
    """An element of a CycloWeilField; immutable, hashable, exact."""

    __slots__ = ("field", "coords")

    def __init__(self, fld: CycloWeilField, coords: tuple):
        object.__setattr__(self, "field", fld)
        object.__setattr__(self, "coords", coords)

    def __setattr__(self, name, value):
        raise AttributeError("CWScalar is immutable")

    def _coerce(self, other):
        if type(other) is CWScalar:
            if other.field is self.field or other.field == self.field:
                return other
            raise ScalarError(
                f"mixed fields: {self.field!r} vs {other.field!r}"
            )
        if isinstance(other, (int, mpq, Fraction)):
            return self.field.from_rational(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CWScalar(self.field,
                        tuple([a + b for a, b in zip(self.coords, o.coords)]))

    __radd__ = __add__

    def __neg__(self):
        return CWScalar(self.field, tuple([-a for a in self.coords]))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CWScalar(self.field,
                        tuple([a - b for a, b in zip(self.coords, o.coords)]))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        fld = self.field
        a, b = self.coords, o.coords
        # rational factors act coordinatewise; this covers most matrix work
        if not any(a[1:]):
            c = a[0]
            return CWScalar(fld, tuple([c * x for x in b]))
        if not any(b[1:]):
            c = b[0]
            return CWScalar(fld, tuple([c * x for x in a]))
        deg = fld.deg
        if not fld.sqrt_adjoined:
            return CWScalar(fld, tuple(fld._mul_cyclo(a, b)))
        a0, a1 = a[:deg], a[deg:]
        b0, b1 = b[:deg], b[deg:]
        # (a0 + a1 s)(b0 + b1 s) = a0 b0 + q a1 b1 + (a0 b1 + a1 b0) s
        a1z = not any(a1)
        b1z = not any(b1)
        if a1z or b1z:
            low = fld._mul_cyclo(a0, b0)
            if a1z and b1z:
                mid = [_ZERO] * deg
            elif a1z:
                mid = fld._mul_cyclo(a0, b1)
            else:
                mid = fld._mul_cyclo(a1, b0)
            return CWScalar(fld, tuple(low) + tuple(mid))
        q = fld.q
        low = fld._mul_cyclo(a0, b0)
        high = fld._mul_cyclo(a1, b1)
        low = [c + q * d for c, d in zip(low, high)]
        mid = fld._mul_cyclo(a0, b1)
        mid2 = fld._mul_cyclo(a1, b0)
        mid = [c + d for c, d in zip(mid, mid2)]
        return CWScalar(fld, tuple(low + mid))

    __rmul__ = __mul__

    def inverse(self) -> "CWScalar":
        fld = self.field
        deg = fld.deg
        if not fld.sqrt_adjoined:
            return CWScalar(fld, tuple(fld._inv_cyclo(list(self.coords))))
        a0, a1 = list(self.coords[:deg]), list(self.coords[deg:])
        # (a0 + a1 s)^(-1) = (a0 - a1 s) / (a0^2 - q a1^2); the norm is nonzero
        # because y^2 - q is irreducible over Q(zeta_N) here.
        sq0 = fld._mul_cyclo(a0, a0)
        sq1 = fld._mul_cyclo(a1, a1)
        norm = [c - fld.q * d for c, d in zip(sq0, sq1)]
        inv = fld._inv_cyclo(norm)
        low = fld._mul_cyclo(a0, inv)
        high = fld._mul_cyclo([-c for c in a1], inv)
        return CWScalar(fld, tuple(low + high))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        base = self.inverse() if n < 0 else self
        n = abs(n)
        out = self.field.one()
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conj(self) -> "CWScalar":
        """Field automorphism z -> z^(-1), sqrt(q) -> sqrt(q)."""
        fld = self.field
        deg = fld.deg
        blocks = [self.coords[:deg]]
        if fld.sqrt_adjoined:
            blocks.append(self.coords[deg:])
        out = []
        for block in blocks:
            acc = [_ZERO] * deg
            for k, c in enumerate(block):
                if c:
                    row = fld._conj_rows[k]
                    acc = [x + c * r for x, r in zip(acc, row)]
            out.extend(acc)
        return CWScalar(fld, tuple(out))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coords[1:])

    def rational_value(self) -> mpq:
        if not self.is_rational():
            raise ScalarError("scalar is not rational")
        return self.coords[0]

    def weil_weight(self) -> int:
        """The integer w with a conj(a) = q^w; WeightAbsentError if there is none."""
        norm = self * self.conj()
        if not norm.is_rational():
            raise WeightAbsentError(f"{self} has no Weil weight (norm not rational)")
        v = norm.coords[0]
        if v <= 0:
            raise WeightAbsentError(f"{self} has no Weil weight (norm {v})")
        num, den = int(v.numerator), int(v.denominator)
        q = self.field.q
        if den == 1:
            w = _exact_log(num, q)
            if w is not None:
                return w
        elif num == 1:
            w = _exact_log(den, q)
            if w is not None:
                return -w
        raise WeightAbsentError(f"norm {v} is not an integer power of q={q}")

    def __eq__(self, other):
        o = self._coerce(other) if not isinstance(other, CWScalar) else other
        if o is None or not isinstance(o, CWScalar):
            return NotImplemented
        return self.field == o.field and self.coords == o.coords

    def __hash__(self):
        return hash((self.field.N, self.field.q, self.coords))

    def __repr__(self):
        return f"<{serialize_scalar(self)}>"


def _exact_log(n: int, q: int):
    e = 0
    while n > 1:
        n, r = divmod(n, q)
        if r:
            return None
        e += 1
    return e


# -- string form --
#
# "c0 + c1*z + ... | N=<N>, q=<q>, sqrt=<0|1>" with rational coefficients "p/r".
# Basis monomials are z^i for the cyclotomic block and s*z^i for the sqrt block;
# zero terms are omitted and the zero scalar prints as "0".


def _monomial(fld: CycloWeilField, idx: int) -> str:
    if fld.sqrt_adjoined and idx >= fld.deg:
        i = idx - fld.deg
        if i == 0:
            return "s"
        if i == 1:
            return "s*z"
        return f"s*z^{i}"
    if idx == 0:
        return ""
    if idx == 1:
        return "z"
    return f"z^{idx}"


def serialize_scalar(a: CWScalar) -> str:
    fld = a.field
    terms = []
    for idx, c in enumerate(a.coords):
        if c == 0:
            continue
        mono = _monomial(fld, idx)
        coeff = str(c)
        terms.append(f"{coeff}*{mono}" if mono else coeff)
    poly = " + ".join(terms) if terms else "0"
    flag = 1 if fld.sqrt_adjoined else 0
    return f"{poly} | N={fld.N}, q={fld.q}, sqrt={flag}"


def parse_scalar(text: str) -> CWScalar:
    """Inverse of serialize_scalar; raises ScalarError on malformed input."""
    if "|" not in text:
        raise ScalarError(f"scalar string missing field block: {text!r}")
    poly_part, field_part = text.split("|", 1)
    fields = {}
    for item in field_part.split(","):
        item = item.strip()
        if not item:
            continue
        if "=" not in item:
            raise ScalarError(f"bad field entry {item!r} in {text!r}")
        k, v = item.split("=", 1)
        fields[k.strip()] = v.strip()
    for key in ("N", "q", "sqrt"):
        if key not in fields:
            raise ScalarError(f"scalar string missing {key}= in {text!r}")
    try:
        N, q, flag = int(fields["N"]), int(fields["q"]), int(fields["sqrt"])
    except ValueError as exc:
        raise ScalarError(f"non-integer field parameter in {text!r}") from exc
    fld = field(N, q)
    expected = 1 if fld.sqrt_adjoined else 0
    if flag != expected:
        raise ScalarError(
            f"sqrt={flag} inconsistent with N={N}, q={q} (expected sqrt={expected})"
        )
    return parse_scalar_in_field(poly_part.strip(), fld)


def parse_scalar_in_field(poly: str, fld: CycloWeilField) -> CWScalar:
    """Parse just the polynomial part against a known field (datum-file context)."""
    coords = [_ZERO] * fld.dim
    text = poly.strip()
    if not text:
        raise ScalarError("empty scalar string")
    norm = text.replace(" - ", " + -").replace("\t", " ")
    if norm.startswith("- "):
        norm = "-" + norm[2:]
    for raw in norm.split(" + "):
        term = raw.strip()
        if not term:
            raise ScalarError(f"empty term in scalar string {poly!r}")
        if term == "0":
            continue
        idx, coeff = _parse_term(term, fld)
        coords[idx] += coeff
    return fld.element(coords)


def _parse_term(term: str, fld: CycloWeilField):
    pieces = term.split("*")
    coeff_str = pieces[0].strip()
    try:
        coeff = mpq(coeff_str)
    except (ValueError, ZeroDivisionError) as exc:
        raise ScalarError(f"bad coefficient {coeff_str!r}") from exc
    s_seen = False
    zexp = 0
    for piece in pieces[1:]:
        piece = piece.strip()
        if piece == "s":
            if s_seen:
                raise ScalarError(f"repeated s in term {term!r}")
            s_seen = True
        elif piece == "z":
            zexp += 1
        elif piece.startswith("z^"):
            try:
                zexp += int(piece[2:])
            except ValueError as exc:
                raise ScalarError(f"bad monomial {piece!r}") from exc
        else:
            raise ScalarError(f"bad monomial {piece!r} in term {term!r}")
    if zexp >= fld.deg:
        raise ScalarError(f"monomial z^{zexp} outside power basis (degree {fld.deg})")
    if s_seen and not fld.sqrt_adjoined:
        raise ScalarError("s monomial present but sqrt(q) lies in Q(zeta_N)")
    idx = zexp + (fld.deg if s_seen else 0)
    return idx, coeff
