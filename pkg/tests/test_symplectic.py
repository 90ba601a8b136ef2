"""Symplectic pairings: validation, block decomposition, Lagrangian splits
and the snake form parity congruence."""

import random

import pytest
from gmpy2 import mpq

from conftest import block_diag
from wdparity import linalg as la
from wdparity.errors import PairingError, PurityError
from wdparity.scalars import field
from wdparity.symplectic import (SnakeForm, decompose_symplectic,
                                 hyperbolic_pair, lagrangian_split,
                                 pair_value, parity_congruence_check,
                                 reassembly_certificate, snake_pairing,
                                 special_symplectic, split_from_blocks,
                                 validate_pairing)
from wdparity.wd import (WDRep, direct_sum, dual, is_isomorphic, is_pure,
                         make_sp, make_unr, tensor, twist)


def conjugate_pair(rep, pairing, seed):
    """Random invertible base change of a rep together with its gram matrix."""
    fld = rep.field
    d = rep.dim
    rng = random.Random(seed)
    while True:
        T = tuple(
            tuple(fld.from_rational(rng.randint(-2, 2)) for _ in range(d))
            for _ in range(d)
        )
        try:
            Ti = la.inverse(T)
        except Exception:
            continue
        break
    F = la.mat_mul(la.mat_mul(Ti, rep.frobenius), T)
    N = la.mat_mul(la.mat_mul(Ti, rep.monodromy), T)
    gs = tuple(la.mat_mul(la.mat_mul(Ti, g), T) for g in rep.inertia)
    newrep = WDRep(fld, F, N, gs, rep.artm1_index)
    J = la.mat_mul(la.mat_mul(la.transpose(T), pairing.gram), T)
    return newrep, validate_pairing(newrep, J)


def test_special_block_positive_sign(F12, split_block):
    rep, pairing = split_block
    assert is_pure(rep, -1).ok
    blocks = decompose_symplectic(rep, pairing)
    assert len(blocks) == 1
    assert blocks[0].kind == "type2" and blocks[0].sign == 1
    assert blocks[0].dim == 2
    assert reassembly_certificate(rep, pairing, blocks)
    split = split_from_blocks(pairing, blocks)
    assert len(split.plus) == 1


def test_special_block_negative_sign(nonsplit_block):
    rep, pairing = nonsplit_block
    blocks = decompose_symplectic(rep, pairing)
    assert blocks[0].sign == -1
    assert reassembly_certificate(rep, pairing, blocks)


def test_special_block_dim_four(F12):
    rep, pairing = special_symplectic(F12, 4, 1)
    assert is_pure(rep, -1).ok
    blocks = decompose_symplectic(rep, pairing)
    assert len(blocks) == 1
    assert blocks[0].kind == "type2" and blocks[0].dim == 4
    assert len(blocks[0].lagrangian) == 2
    assert reassembly_certificate(rep, pairing, blocks)
    assert len(split_from_blocks(pairing, blocks).plus) == 2


def test_special_block_odd_dim_rejected(F12):
    with pytest.raises(PairingError):
        special_symplectic(F12, 3, 1)


def test_validate_pairing_rejects_symmetric(F12, split_block):
    one, zero = F12.one(), F12.zero()
    sym = ((zero, one), (one, zero))
    with pytest.raises(PairingError, match="not skew"):
        validate_pairing(split_block[0], sym)


def test_validate_pairing_rejects_degenerate(F12):
    zero = F12.zero()
    line = make_unr(F12, F12.from_rational(mpq(1, 2)))
    with pytest.raises(PairingError, match="not nondegenerate skew"):
        validate_pairing(line, ((zero,),))


def test_validate_pairing_rejects_non_equivariant(F12):
    one, zero = F12.one(), F12.zero()
    bad = make_unr(F12, F12.from_rational(3))
    bad2 = direct_sum(bad, bad)
    skew = ((zero, one), (-one, zero))
    with pytest.raises(PairingError, match="Frobenius"):
        validate_pairing(bad2, skew)


def test_hyperbolic_block_type_one(F32):
    z3 = F32.zeta()
    x = tensor(make_unr(F32, z3), make_sp(F32, 2))
    hx, hp = hyperbolic_pair(x)
    assert is_pure(hx, -1).ok
    blocks = decompose_symplectic(hx, hp)
    assert len(blocks) == 1
    assert blocks[0].kind == "type1" and blocks[0].dim == 4
    assert reassembly_certificate(hx, hp, blocks)
    assert len(split_from_blocks(hp, blocks).plus) == 2
    # the certified model matches x or its symplectic partner
    model = tensor(make_unr(F32, blocks[0].lam), make_sp(F32, 2))
    assert is_isomorphic(model, x) or is_isomorphic(model, twist(dual(x), 1))


def test_mixed_sum_decomposition_stable_under_conjugation(F32):
    z3 = F32.zeta()
    r2p, p2p = special_symplectic(F32, 2, 1)
    hx, hp = hyperbolic_pair(tensor(make_unr(F32, z3), make_sp(F32, 2)))
    mix = direct_sum(r2p, hx)
    mixp = validate_pairing(mix, block_diag(F32, [p2p.gram, hp.gram]))
    blocks = decompose_symplectic(mix, mixp)
    assert sorted(b.dim for b in blocks) == [2, 4]
    assert reassembly_certificate(mix, mixp, blocks)
    assert len(split_from_blocks(mixp, blocks).plus) == 3
    for seed in range(4):
        crep, cp = conjugate_pair(mix, mixp, seed)
        cb = decompose_symplectic(crep, cp)
        assert sum(b.dim for b in cb) == 6
        assert reassembly_certificate(crep, cp, cb)
        split_from_blocks(cp, cb)


def test_double_block_with_opposite_scales(F32):
    r2p, p2p = special_symplectic(F32, 2, 1)
    double = direct_sum(r2p, r2p)
    J = block_diag(F32, [p2p.gram, la.mat_scale(-F32.one(), p2p.gram)])
    dp = validate_pairing(double, J)
    blocks = decompose_symplectic(double, dp)
    assert sum(b.dim for b in blocks) == 4
    assert reassembly_certificate(double, dp, blocks)
    for seed in range(6):
        crep, cp = conjugate_pair(double, dp, 100 + seed)
        cb = decompose_symplectic(crep, cp)
        assert sum(b.dim for b in cb) == 4
        assert reassembly_certificate(crep, cp, cb)
        split_from_blocks(cp, cb)


def test_large_mixed_sum_conjugated(F32):
    z3 = F32.zeta()
    r4m, p4m = special_symplectic(F32, 4, -1)
    x3 = tensor(make_unr(F32, z3 * F32.sqrt_q()), make_sp(F32, 3))
    hx3, hp3 = hyperbolic_pair(x3)
    assert is_pure(hx3, -1).ok
    big = direct_sum(r4m, hx3)
    bigp = validate_pairing(big, block_diag(F32, [p4m.gram, hp3.gram]))
    blocks = decompose_symplectic(big, bigp)
    assert sorted(b.dim for b in blocks) == [4, 6]
    assert reassembly_certificate(big, bigp, blocks)
    for seed in range(2):
        crep, cp = conjugate_pair(big, bigp, 200 + seed)
        cb = decompose_symplectic(crep, cp)
        assert reassembly_certificate(crep, cp, cb)


def test_decompose_requires_purity(F12):
    nonpure = make_unr(F12, F12.from_rational(3))
    npr, npp = hyperbolic_pair(nonpure)
    with pytest.raises(PurityError):
        decompose_symplectic(npr, npp)


def test_lagrangian_split_rejections(F12, split_block):
    one, zero = F12.one(), F12.zero()
    _, p2p = split_block
    with pytest.raises(PairingError, match="stable"):
        lagrangian_split(p2p, ((one, zero),))
    with pytest.raises(PairingError, match="half-dimensional"):
        lagrangian_split(p2p, ())


def test_snake_pairing_special_block(F12, split_block):
    one, zero = F12.one(), F12.zero()
    rep, pairing = split_block
    split = lagrangian_split(pairing, ((zero, one),))
    form = snake_pairing(rep, pairing, split)
    assert form.dim == 1
    assert not form.gram[0][0].is_zero()
    assert parity_congruence_check(form)


def test_snake_pairing_ignores_lift_choice(F12, split_block):
    one, zero = F12.one(), F12.zero()
    rep, pairing = split_block
    triple = direct_sum(direct_sum(rep, rep), rep)
    J = block_diag(F12, [pairing.gram,
                         la.mat_scale(-one, pairing.gram), pairing.gram])
    tp = validate_pairing(triple, J)
    plus = (
        (one, zero, one, zero, zero, zero),
        (zero, one, zero, one, zero, zero),
        (zero, zero, zero, zero, zero, one),
    )
    tsplit = lagrangian_split(tp, plus)
    base = snake_pairing(triple, tp, tsplit)
    assert base.dim == 1
    for seed in (1, 2, 3, 7):
        other = snake_pairing(triple, tp, tsplit, lift_seed=seed)
        assert other.gram == base.gram
    assert parity_congruence_check(base)


def test_snake_pairing_empty_on_good_block(F12, good_block):
    one, zero = F12.one(), F12.zero()
    rep, pairing = good_block
    split = lagrangian_split(pairing, ((zero, one),))
    form = snake_pairing(rep, pairing, split)
    assert form.dim == 0
    assert parity_congruence_check(form)


def test_parity_congruence_hand_forms(F12, F45):
    o, z = F45.one(), F45.zero()
    basis2 = ((o, z), (z, o))
    rot = SnakeForm(F45, basis2, basis2, ((z, -o), (o, z)))
    assert parity_congruence_check(rot)
    swap = SnakeForm(F45, basis2, basis2, ((z, o), (o, z)))
    assert parity_congruence_check(swap)
    empty = SnakeForm(F12, (), (), ())
    assert parity_congruence_check(empty)


def test_parity_congruence_on_reflection_products(F12):
    # products of orthogonal reflections have det (-1)^k and fixed space of
    # codimension k generically; the congruence ties the two parities
    rng = random.Random(5)
    fld = F12
    for _ in range(25):
        n = rng.choice([2, 3, 4])
        G = [[fld.zero()] * n for _ in range(n)]
        for i in range(n):
            G[i][i] = fld.from_rational(rng.choice([1, 2, -1]))
        G = tuple(tuple(r) for r in G)
        f = la.identity(fld, n)
        for _ in range(rng.randint(1, 3)):
            v = tuple(fld.from_rational(rng.randint(-2, 2)) for _ in range(n))
            vGv = pair_value(G, v, v)
            if vGv.is_zero():
                continue
            refl = tuple(
                tuple((fld.one() if i == j else fld.zero())
                      - fld.from_rational(2) * v[i] * pair_value(
                          G, v, tuple(fld.one() if k == j else fld.zero()
                                      for k in range(n))) / vGv
                      for j in range(n))
                for i in range(n)
            )
            f = la.mat_mul(refl, f)
        basis = tuple(tuple(fld.one() if i == j else fld.zero()
                            for j in range(n)) for i in range(n))
        assert parity_congruence_check(SnakeForm(fld, basis, G, f))
