"""Weil-Deligne representation container, functors and structure theory."""

import pytest
from gmpy2 import mpq

from wdparity import linalg as la
from wdparity.errors import (NonSplitError, RepInvariantError,
                             UnsupportedInputError)
from wdparity.scalars import field
from wdparity.wd import (WDRep, direct_sum, dual, eigen_data,
                         is_frobenius_semisimple, is_isomorphic, is_pure,
                         jordan_chains, make_sp, make_unr,
                         monodromy_filtration, quotient_rep, restrict_rep,
                         semisimplify, tensor, twist, weight_pieces)


def test_make_unr_shape(F12):
    a = make_unr(F12, F12.from_rational(3))
    assert a.dim == 1
    assert a.monodromy == la.zeros(F12, 1, 1)
    assert a.has_trivial_inertia()


def test_constructor_rejects_singular_frobenius(F12):
    with pytest.raises(RepInvariantError, match="singular"):
        WDRep(F12, la.zeros(F12, 1, 1), la.zeros(F12, 1, 1),
              (la.identity(F12, 1),), 0)


def test_constructor_rejects_non_nilpotent_monodromy(F12):
    with pytest.raises(RepInvariantError, match="nilpotent"):
        WDRep(F12, la.identity(F12, 1), la.identity(F12, 1),
              (la.identity(F12, 1),), 0)


def test_constructor_rejects_wrong_commutation(F12):
    # F N F^(-1) must equal q N; identity Frobenius fails against N != 0
    F = la.identity(F12, 2)
    N = la.mat(F12, [[0, 1], [0, 0]])
    with pytest.raises(RepInvariantError):
        WDRep(F12, F, N, (la.identity(F12, 2),), 0)


def test_constructor_rejects_nonclosed_inertia(F12):
    # order-3 rotation candidate over a field without cube roots of unity
    g = la.mat(F12, [[0, -1], [1, -1]])
    F = la.identity(F12, 2)
    N = la.zeros(F12, 2, 2)
    with pytest.raises(RepInvariantError):
        WDRep(F12, F, N, (la.identity(F12, 2), g, la.mat_mul(g, g)), 0,
              inertia_bound=2)


def test_constructor_requires_identity_in_inertia(F12):
    g = la.mat_scale(-F12.one(), la.identity(F12, 1))
    with pytest.raises(RepInvariantError):
        WDRep(F12, la.identity(F12, 1), la.zeros(F12, 1, 1), (g,), 0)


def test_sp_block_eigenvalues_and_purity(F12):
    for m in (2, 3, 4):
        a = make_sp(F12, m)
        assert a.dim == m
        data = eigen_data(a)
        assert sum(len(gen) for _, gen in data) == m
        assert sorted(weight_pieces(a)) == list(range(-2 * (m - 1), 1, 2))
        assert is_pure(a, 1 - m).ok


def test_twist_shifts_weights(F12):
    a = make_sp(F12, 2)
    w = sorted(weight_pieces(a))
    tw = sorted(weight_pieces(twist(a, 1)))
    assert tw == [x - 2 for x in w]


def test_dual_tensor_dim_and_weights(F32):
    z = F32.zeta()
    x = tensor(make_unr(F32, z), make_sp(F32, 2))
    assert x.dim == 2
    xd = dual(x)
    assert xd.dim == 2
    assert sorted(weight_pieces(xd)) == sorted(-w for w in weight_pieces(x))
    assert tensor(x, xd).dim == 4
    assert direct_sum(x, xd).dim == 4


def test_dual_of_dual_is_isomorphic(F12):
    a = tensor(make_unr(F12, F12.from_rational(3)), make_sp(F12, 2))
    assert is_isomorphic(dual(dual(a)), a)


def test_eigen_data_nonsplit_raises():
    F = field(1, 2)
    # companion matrix of x^2 - 3: eigenvalues live outside Q(sqrt 2)
    A = la.mat(F, [[0, 3], [1, 0]])
    a = WDRep(F, A, la.zeros(F, 2, 2), (la.identity(F, 2),), 0)
    with pytest.raises(NonSplitError, match="conductor"):
        eigen_data(a)


def test_generalized_eigenspaces_on_nonss(F12):
    # unipotent-scaled Frobenius: single eigenvalue 1, eigenspace 1-dim,
    # generalized eigenspace full
    A = la.mat(F12, [[1, 1], [0, 1]])
    a = WDRep(F12, A, la.zeros(F12, 2, 2), (la.identity(F12, 2),), 0)
    ((lam, gen),) = eigen_data(a)
    assert lam == F12.one()
    assert len(gen) == 2
    assert not is_frobenius_semisimple(a)
    b = semisimplify(a)
    assert is_frobenius_semisimple(b)
    assert b.frobenius == la.identity(F12, 2)
    assert semisimplify(b) == b


def test_semisimplify_preserves_eigenvalue_multiset(F12):
    a = WDRep(F12, la.mat(F12, [[3, 1], [0, 3]]), la.zeros(F12, 2, 2),
              (la.identity(F12, 2),), 0)
    ss = semisimplify(a)
    assert is_frobenius_semisimple(ss)
    assert ss.frobenius == la.mat(F12, [[3, 0], [0, 3]])
    ((lam, gen),) = eigen_data(ss)
    assert lam == F12.from_rational(3) and len(gen) == 2


def test_monodromy_filtration_sp(F12):
    for m in (2, 3, 4):
        a = make_sp(F12, m)
        filt = monodromy_filtration(a)
        assert filt.nilpotency == m
        dims = filt.graded_dims()
        assert dims == {k: 1 for k in range(-(m - 1), m, 2)}
        # N lowers filtration by two
        N = a.monodromy
        for k, basis in filt.levels:
            img = [la.mat_vec(N, v) for v in basis]
            img = [v for v in img if any(not c.is_zero() for c in v)]
            lower = filt.level(k - 2)
            assert not img or la.is_subspace(img, lower)


def test_monodromy_filtration_zero_n(F12):
    a = make_unr(F12, F12.from_rational(2))
    filt = monodromy_filtration(a)
    assert filt.graded_dims() == {0: 1}


def test_jordan_chains_recover_blocks(F12):
    a = direct_sum(make_sp(F12, 2),
                   tensor(make_unr(F12, F12.from_rational(3)), make_sp(F12, 1)))
    chains = jordan_chains(a)
    assert sorted(m for _, m, _ in chains) == [1, 2]
    total = [v for _, _, vecs in chains for v in vecs]
    assert len(la.independent_subset(total)) == a.dim


def test_jordan_chains_reject_nontrivial_inertia(F12):
    g = la.mat_scale(-F12.one(), la.identity(F12, 1))
    a = WDRep(F12, la.identity(F12, 1), la.zeros(F12, 1, 1),
              (la.identity(F12, 1), g), 1)
    with pytest.raises(UnsupportedInputError):
        jordan_chains(a)


def test_restrict_and_quotient(F12):
    a = make_sp(F12, 3)
    filt = monodromy_filtration(a)
    sub_basis = filt.level(0)
    assert len(sub_basis) == 2
    sub = restrict_rep(a, sub_basis)
    assert sub.dim == 2
    quot, reps = quotient_rep(a, sub_basis)
    assert quot.dim == 1
    assert len(reps) == 1


def test_is_isomorphic_distinguishes(F12):
    a = make_sp(F12, 2)
    b = tensor(make_unr(F12, -F12.one()), make_sp(F12, 2))
    assert not is_isomorphic(a, b)
    # conjugate of a is isomorphic to a
    T = la.mat(F12, [[1, 2], [1, 3]])
    Ti = la.inverse(T)
    c = WDRep(F12,
              la.mat_mul(Ti, la.mat_mul(a.frobenius, T)),
              la.mat_mul(Ti, la.mat_mul(a.monodromy, T)),
              tuple(la.mat_mul(Ti, la.mat_mul(g, T)) for g in a.inertia),
              a.artm1_index)
    assert is_isomorphic(a, c)


def test_is_pure_failure_reason(F12):
    a = direct_sum(make_unr(F12, F12.one()),
                   make_unr(F12, F12.one() / F12.from_rational(2)))
    res = is_pure(a, 0)
    assert not res.ok
    assert res.reason


def test_inertia_dedup_preserves_artm1(F12):
    ident = la.identity(F12, 1)
    g = la.mat_scale(-F12.one(), ident)
    a = WDRep(F12, ident, la.zeros(F12, 1, 1), (ident, g, g), 1)
    assert len(a.inertia) == 2
    assert a.inertia[a.artm1_index] == g


def test_eigen_data_cached_per_rep(F12):
    a = make_sp(F12, 2)
    assert eigen_data(a) is eigen_data(a)
