"""Cohomology dimension formulary for de Rham numerology pairs."""

import pytest

from wdparity.eps import HodgeTateData
from wdparity.errors import NumerologyError
from wdparity.numerology import (DeRhamNumerology, cyclotomic_rank_one,
                                 euler_tate_check, formulary,
                                 panchishkin_sequence, trivial_rank_one)


def test_trivial_rank_one_table():
    n = trivial_rank_one()
    out = formulary(n, n.dual())
    assert out.h0 == 1
    assert out.h1 == 2
    assert out.h2 == 0
    assert out.h1_f == 1
    assert out.h1_g == 1
    assert out.h1_e == 0
    assert euler_tate_check(out, n).ok


def test_cyclotomic_rank_one_table():
    n = cyclotomic_rank_one()
    out = formulary(n, n.dual())
    assert out.h0 == 0
    assert out.h1 == 2
    assert out.h2 == 1
    assert out.h1_f == 1
    assert out.h1_g == 2
    assert out.h1_e == 1
    assert euler_tate_check(out, n).ok


def test_dual_is_involutive():
    for n in (trivial_rank_one(), cyclotomic_rank_one()):
        assert n.dual().dual() == n


def test_duality_exchange():
    n = trivial_rank_one()
    nd = n.dual()
    out = formulary(n, nd)
    out_dual = formulary(nd, n)
    assert out.h2 == out_dual.h0
    assert out_dual.h2 == out.h0
    assert out.h1_f + out_dual.h1_f == out.h1


def test_count_negative():
    ht = HodgeTateData([(-3, 2), (-1, 1), (0, 1), (2, 1)])
    n = DeRhamNumerology(d=5, kdeg=1, ht=ht, h0=0, h0_dual=0,
                         h0_t=0, h0_dual_t=0)
    assert n.count_negative == 3


def test_trivial_and_cyclotomic_are_mutually_dual():
    # the two shipped rank-one numerologies form one dual pair
    assert trivial_rank_one().dual() == cyclotomic_rank_one()
    out = formulary(trivial_rank_one(), cyclotomic_rank_one())
    assert out.h1 == 2


def test_formulary_rejects_mismatched_pair():
    n = trivial_rank_one()
    ht2 = HodgeTateData([(-1, 1), (0, 1)])
    wide = DeRhamNumerology(d=2, kdeg=1, ht=ht2, h0=0, h0_dual=0,
                            h0_t=0, h0_dual_t=0)
    with pytest.raises(NumerologyError):
        formulary(n, wide)


def test_formulary_rejects_wrong_dual_twist():
    n = trivial_rank_one()
    with pytest.raises(NumerologyError):
        formulary(n, n)


def test_numerology_validates_bounds():
    ht = HodgeTateData([(0, 1)])
    with pytest.raises(NumerologyError):
        DeRhamNumerology(d=1, kdeg=1, ht=ht, h0=2, h0_dual=0,
                         h0_t=0, h0_dual_t=0)
    with pytest.raises(NumerologyError):
        DeRhamNumerology(d=0, kdeg=1, ht=ht, h0=0, h0_dual=0,
                         h0_t=0, h0_dual_t=0)
    with pytest.raises(NumerologyError):
        DeRhamNumerology(d=2, kdeg=1, ht=ht, h0=0, h0_dual=0,
                         h0_t=0, h0_dual_t=0)


def test_t_inverted_counts_bound_plain_ones():
    ht = HodgeTateData([(0, 1)])
    with pytest.raises(NumerologyError):
        DeRhamNumerology(d=1, kdeg=1, ht=ht, h0=1, h0_dual=0,
                         h0_t=0, h0_dual_t=0)


def test_panchishkin_sequence_balanced_pair():
    nplus = DeRhamNumerology(d=1, kdeg=1, ht=HodgeTateData([(-1, 1)]),
                             h0=0, h0_dual=1, h0_t=0, h0_dual_t=1)
    nminus = trivial_rank_one()
    n = DeRhamNumerology(d=2, kdeg=1, ht=HodgeTateData([(-1, 1), (0, 1)]),
                         h0=0, h0_dual=0, h0_t=0, h0_dual_t=0)
    res = panchishkin_sequence(nplus, nminus, n)
    assert res.hypotheses_hold
    assert res.h1f_identity
    # connecting space: both halves see one t-inverted dual invariant line
    assert res.dim_x == 1


def test_panchishkin_sequence_rejects_bad_split():
    nplus = trivial_rank_one()
    nminus = trivial_rank_one()
    n = DeRhamNumerology(d=2, kdeg=1, ht=HodgeTateData([(0, 2)]),
                         h0=1, h0_dual=1, h0_t=1, h0_dual_t=1)
    with pytest.raises(NumerologyError, match="negative"):
        panchishkin_sequence(nplus, nminus, n)


def test_euler_tate_check_items_named():
    n = trivial_rank_one()
    out = formulary(n, n.dual())
    names = [item.name for item in euler_tate_check(out, n).items]
    assert names == ["Euler characteristic", "duality h2 = dual h0",
                     "Euler characteristic after inverting t"]
