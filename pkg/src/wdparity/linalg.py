"""Dense exact linear algebra over a CycloWeilField.

Matrices are tuples of row tuples of CWScalar; vectors are tuples of CWScalar.
Everything is immutable and exact.  Subspaces are represented by tuples of
basis vectors (always linearly independent).
"""

from .errors import LinAlgError
from .scalars import CycloWeilField, CWScalar

Matrix = tuple
Vector = tuple


def mat(fld: CycloWeilField, rows) -> Matrix:
    """Build a matrix, coercing ints/rationals to field elements."""
    out = []
    for row in rows:
        out.append(tuple(x if isinstance(x, CWScalar) else fld.from_rational(x) for x in row))
    width = {len(r) for r in out}
    if len(width) > 1:
        raise LinAlgError("ragged rows")
    return tuple(out)


def identity(fld: CycloWeilField, n: int) -> Matrix:
    one, zero = fld.one(), fld.zero()
    return tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))


def zeros(fld: CycloWeilField, n: int, m: int) -> Matrix:
    zero = fld.zero()
    return tuple(tuple(zero for _ in range(m)) for _ in range(n))


def dims(A: Matrix) -> tuple[int, int]:
    return len(A), len(A[0]) if A else 0


def transpose(A: Matrix) -> Matrix:
    return tuple(zip(*A)) if A else ()


def mat_add(A: Matrix, B: Matrix) -> Matrix:
    return tuple(tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def mat_sub(A: Matrix, B: Matrix) -> Matrix:
    return tuple(tuple(a - b for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def mat_scale(c: CWScalar, A: Matrix) -> Matrix:
    return tuple(tuple(c * a for a in row) for row in A)


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    n, k = dims(A)
    k2, m = dims(B)
    if k != k2:
        raise LinAlgError(f"shape mismatch {n}x{k} * {k2}x{m}")
    if n == 0 or m == 0 or k == 0:
        Bt = transpose(B)
        return tuple(tuple(_dot(row, col) for col in Bt) for row in A)
    zero = A[0][0].field.zero()
    out = []
    for row in A:
        acc = [zero] * m
        for a, brow in zip(row, B):
            if a.is_zero():
                continue
            for j, b in enumerate(brow):
                if not b.is_zero():
                    acc[j] = acc[j] + a * b
        out.append(tuple(acc))
    return tuple(out)


def _dot(u, v):
    acc = None
    for a, b in zip(u, v):
        if not (a.is_zero() or b.is_zero()):
            p = a * b
            acc = p if acc is None else acc + p
    if acc is None:
        src = u[0] if u else v[0]
        return src.field.zero()
    return acc


def mat_vec(A: Matrix, v: Vector) -> Vector:
    return tuple(_dot(row, v) for row in A)


def mat_pow(A: Matrix, e: int) -> Matrix:
    n, m = dims(A)
    if n != m:
        raise LinAlgError("power of non-square matrix")
    fld = A[0][0].field
    out = identity(fld, n)
    base = A
    while e:
        if e & 1:
            out = mat_mul(out, base)
        base = mat_mul(base, base) if e > 1 else base
        e >>= 1
    return out


def is_zero_matrix(A: Matrix) -> bool:
    return all(x.is_zero() for row in A for x in row)


def rref(A: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row echelon form and pivot columns."""
    rows = [list(r) for r in A]
    n, m = dims(A)
    pivots = []
    r = 0
    for c in range(m):
        pivot = next((i for i in range(r, n) if not rows[i][c].is_zero()), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [inv * x for x in rows[r]]
        for i in range(n):
            if i != r and not rows[i][c].is_zero():
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == n:
            break
    return tuple(tuple(row) for row in rows), tuple(pivots)


def rank(A: Matrix) -> int:
    return len(rref(A)[1])


def nullspace(A: Matrix) -> tuple[Vector, ...]:
    """Basis of the right kernel."""
    n, m = dims(A)
    if n == 0 or m == 0:
        fld = None
        if n and m:
            fld = A[0][0].field
        if m == 0:
            return ()
        # no constraints: kernel is everything; caller supplies nonempty A normally
        raise LinAlgError("nullspace of empty constraint matrix is ambiguous")
    fld = A[0][0].field
    R, pivots = rref(A)
    free = [c for c in range(m) if c not in pivots]
    basis = []
    zero, one = fld.zero(), fld.one()
    for f in free:
        v = [zero] * m
        v[f] = one
        for r, c in enumerate(pivots):
            v[c] = -R[r][f]
        basis.append(tuple(v))
    return tuple(basis)


def det(A: Matrix) -> CWScalar:
    n, m = dims(A)
    if n != m:
        raise LinAlgError("determinant of non-square matrix")
    fld = A[0][0].field
    rows = [list(r) for r in A]
    out = fld.one()
    for c in range(n):
        pivot = next((i for i in range(c, n) if not rows[i][c].is_zero()), None)
        if pivot is None:
            return fld.zero()
        if pivot != c:
            rows[c], rows[pivot] = rows[pivot], rows[c]
            out = -out
        out = out * rows[c][c]
        inv = rows[c][c].inverse()
        for i in range(c + 1, n):
            if not rows[i][c].is_zero():
                f = rows[i][c] * inv
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    return out


def inverse(A: Matrix) -> Matrix:
    n, m = dims(A)
    if n != m:
        raise LinAlgError("inverse of non-square matrix")
    fld = A[0][0].field
    aug = tuple(tuple(list(row) + list(idrow)) for row, idrow in zip(A, identity(fld, n)))
    R, pivots = rref(aug)
    if tuple(pivots[:n]) != tuple(range(n)) or len(pivots) < n:
        raise LinAlgError("matrix is singular")
    return tuple(tuple(row[n:]) for row in R)


def solve(A: Matrix, b: Vector) -> Vector:
    """One solution of A x = b; LinAlgError if inconsistent."""
    sols = solve_matrix(A, tuple((x,) for x in b))
    return tuple(row[0] for row in sols)


def solve_matrix(A: Matrix, B: Matrix) -> Matrix:
    """One solution X of A X = B; LinAlgError if inconsistent."""
    n, m = dims(A)
    nb, k = dims(B)
    if n != nb:
        raise LinAlgError("solve: row mismatch")
    fld = A[0][0].field
    aug = tuple(tuple(list(ra) + list(rb)) for ra, rb in zip(A, B))
    R, pivots = rref(aug)
    if any(p >= m for p in pivots):
        raise LinAlgError("inconsistent linear system")
    zero = fld.zero()
    X = [[zero] * k for _ in range(m)]
    for r, c in enumerate(pivots):
        for j in range(k):
            X[c][j] = R[r][m + j]
    return tuple(tuple(row) for row in X)


def char_poly(A: Matrix) -> tuple[CWScalar, ...]:
    """Coefficients (ascending, monic) of det(S I - A) via Faddeev-LeVerrier."""
    n, m = dims(A)
    if n != m:
        raise LinAlgError("char_poly of non-square matrix")
    fld = A[0][0].field
    coeffs = [fld.one()]  # leading
    M = identity(fld, n)
    c = fld.one()
    for k in range(1, n + 1):
        M = mat_mul(A, M)
        tr = _trace(M)
        c = -(tr / k)
        coeffs.append(c)
        M = tuple(
            tuple(M[i][j] + (c if i == j else fld.zero()) for j in range(n)) for i in range(n)
        )
    coeffs.reverse()  # ascending: coeffs[i] multiplies S^i
    return tuple(coeffs)


def _trace(A: Matrix) -> CWScalar:
    fld = A[0][0].field
    out = fld.zero()
    for i in range(len(A)):
        out = out + A[i][i]
    return out


def poly_eval(coeffs, x: CWScalar) -> CWScalar:
    """Evaluate ascending-coefficient polynomial at x (Horner)."""
    acc = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = acc * x + c
    return acc


# -- subspace utilities (bases are tuples of independent vectors) --


def column_space(A: Matrix) -> tuple[Vector, ...]:
    cols = transpose(A)
    return independent_subset(cols)


def independent_subset(vectors) -> tuple[Vector, ...]:
    """Greedy maximal independent subset, preserving order."""
    basis = []
    rows = []  # echelon rows, list of (lead_index, vector-as-list)
    for v in vectors:
        red = _reduce_against(list(v), rows)
        if red is not None:
            rows.append(red)
            basis.append(v)
    return tuple(basis)


def _reduce_against(v, rows):
    for lead, row in rows:
        if not v[lead].is_zero():
            f = v[lead]
            v = [x - f * y for x, y in zip(v, row)]
    lead = next((i for i, x in enumerate(v) if not x.is_zero()), None)
    if lead is None:
        return None
    inv = v[lead].inverse()
    return lead, [inv * x for x in v]


def in_span(v: Vector, basis) -> bool:
    rows = []
    for b in basis:
        red = _reduce_against(list(b), rows)
        if red is not None:
            rows.append(red)
    return _reduce_against(list(v), rows) is None


def is_subspace(inner, outer) -> bool:
    rows = []
    for b in outer:
        red = _reduce_against(list(b), rows)
        if red is not None:
            rows.append(red)
    return all(_reduce_against(list(v), rows) is None for v in inner)


def spaces_equal(U, V) -> bool:
    return len(independent_subset(U)) == len(independent_subset(V)) and is_subspace(U, V) and is_subspace(V, U)


def sum_space(U, V) -> tuple[Vector, ...]:
    return independent_subset(tuple(U) + tuple(V))


def intersect(U, V) -> tuple[Vector, ...]:
    """Basis of span(U) intersect span(V)."""
    if not U or not V:
        return ()
    fld = U[0][0].field
    # columns: U vectors then V vectors; kernel rows give coefficients with
    # sum_i a_i u_i = sum_j b_j v_j.
    cols = tuple(U) + tuple(V)
    A = transpose(cols)
    out = []
    for ker in nullspace(A):
        coeffs = ker[: len(U)]
        vec = None
        for c, u in zip(coeffs, U):
            term = tuple(c * x for x in u)
            vec = term if vec is None else tuple(a + b for a, b in zip(vec, term))
        out.append(vec)
    return independent_subset(out)


def complement_in(U, W) -> tuple[Vector, ...]:
    """Vectors of W extending a basis of span(U) to span(W) (U subset of W)."""
    rows = []
    for b in U:
        red = _reduce_against(list(b), rows)
        if red is not None:
            rows.append(red)
    out = []
    for w in W:
        red = _reduce_against(list(w), rows)
        if red is not None:
            rows.append(red)
            out.append(w)
    return tuple(out)


def restrict_operator(T: Matrix, basis) -> Matrix:
    """Matrix of T on span(basis); requires T-stability of the span."""
    cols = transpose(tuple(basis))  # d x k
    img = mat_mul(T, cols)  # d x k
    try:
        X = solve_matrix(cols, img)  # k x k with cols * X = img
    except LinAlgError as exc:
        raise LinAlgError("subspace is not stable under the operator") from exc
    return X


def quotient_data(full_dim: int, U, fld: CycloWeilField):
    """Representative basis for A^d / span(U): standard vectors completing U."""
    std = [tuple(fld.one() if i == j else fld.zero() for i in range(full_dim)) for j in range(full_dim)]
    return complement_in(U, std)


def operator_on_quotient(T: Matrix, U, reps) -> Matrix:
    """Matrix of the induced operator on span(U + reps)/span(U) in the reps basis.

    Requires T(span(U)) inside span(U) and U + reps spanning a T-stable space.
    """
    if not reps:
        return ()
    fld = reps[0][0].field
    cols = transpose(tuple(U) + tuple(reps))
    img = mat_mul(T, transpose(reps))
    X = solve_matrix(cols, img)
    k = len(U)
    return tuple(tuple(X[k + i][j] for j in range(len(reps))) for i in range(len(reps)))
