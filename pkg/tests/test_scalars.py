"""Exact scalar arithmetic in cyclotomic fields with an adjoined root."""

import pytest
from gmpy2 import mpq

from wdparity.errors import ScalarError, WeightAbsentError
from wdparity.scalars import (field, parse_scalar, parse_scalar_in_field,
                              serialize_scalar)


def test_field_cache_and_identity():
    assert field(4, 5) is field(4, 5)
    assert field(1, 2) != field(1, 3)


def test_rational_arithmetic(F12):
    a = F12.from_rational(mpq(3, 4))
    b = F12.from_rational(2)
    assert (a + b).rational_value() == mpq(11, 4)
    assert (a * b).rational_value() == mpq(3, 2)
    assert (a - b).rational_value() == mpq(-5, 4)
    assert (a / b).rational_value() == mpq(3, 8)
    assert (-a).rational_value() == mpq(-3, 4)
    assert (a ** 3).rational_value() == mpq(27, 64)
    assert b.inverse().rational_value() == mpq(1, 2)


def test_mixed_operand_coercion(F12):
    a = F12.from_rational(3)
    assert a + 1 == F12.from_rational(4)
    assert 1 + a == F12.from_rational(4)
    assert 2 * a == F12.from_rational(6)
    assert a / 2 == F12.from_rational(mpq(3, 2))
    assert 6 / a == F12.from_rational(2)
    assert 1 - a == F12.from_rational(-2)


def test_zeta_has_exact_order():
    F = field(4, 5)
    i = F.zeta()
    assert i ** 4 == F.one()
    assert i ** 2 == -F.one()
    assert i != F.one()


def test_sqrt_q_squares_to_q(F12, F45):
    for F, q in ((F12, 2), (F45, 5)):
        s = F.sqrt_q()
        assert (s * s).rational_value() == q
        assert not s.is_rational()


def test_sqrt_q_inside_cyclotomic_field():
    # Q(zeta_8) already contains sqrt 2, so no extra generator appears
    F = field(8, 2)
    s = F.sqrt_q()
    assert (s * s).rational_value() == 2
    poly = serialize_scalar(s).split("|")[0]
    assert "s" not in poly


def test_division_by_zero_raises(F12):
    with pytest.raises(ZeroDivisionError):
        F12.one() / F12.zero()
    with pytest.raises(ZeroDivisionError):
        F12.zero().inverse()


def test_weil_weight(F12):
    q = F12.from_rational(2)
    assert q.weil_weight() == 2
    assert F12.one().weil_weight() == 0
    assert F12.sqrt_q().weil_weight() == 1
    assert (F12.sqrt_q() ** 3).weil_weight() == 3
    assert (F12.one() / q).weil_weight() == -2


def test_weil_weight_absent(F12):
    with pytest.raises(WeightAbsentError):
        F12.from_rational(3).weil_weight()
    with pytest.raises(WeightAbsentError):
        (F12.one() + F12.sqrt_q()).weil_weight()


def test_conj_inverts_weight_one_units(F45):
    z = F45.zeta()
    assert z.conj() * z == F45.one()
    s = F45.sqrt_q()
    assert s.conj() == s
    a = z * s
    assert (a * a.conj()).rational_value() == 5


def test_serialize_parse_round_trip(F45):
    samples = [
        F45.zero(),
        F45.one(),
        F45.from_rational(mpq(-7, 3)),
        F45.zeta(),
        F45.sqrt_q(),
        F45.zeta() * F45.sqrt_q() - F45.from_rational(mpq(1, 2)),
    ]
    for a in samples:
        text = serialize_scalar(a)
        back = parse_scalar(text)
        assert back == a, text
        assert parse_scalar_in_field(text.split("|")[0].strip(), F45) == a


def test_parse_rejects_malformed(F12):
    with pytest.raises(ScalarError):
        parse_scalar_in_field("1 +", F12)
    with pytest.raises(ScalarError):
        parse_scalar_in_field("z^9x", F12)
    with pytest.raises(ScalarError):
        parse_scalar("3")  # field block required


def test_hash_consistent_with_eq(F12):
    a = F12.from_rational(mpq(4, 2))
    b = F12.from_rational(2)
    assert a == b and hash(a) == hash(b)
    assert len({a, b, F12.from_rational(3)}) == 2
