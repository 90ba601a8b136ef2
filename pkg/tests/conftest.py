"""Shared fixtures: small fields, the standard rank-two local blocks and
their Panchishkin data, and a block-diagonal matrix helper."""

from pathlib import Path

import pytest

from wdparity import linalg as la
from wdparity.eps import HodgeTateData, PSTLocalDatum
from wdparity.scalars import field
from wdparity.symplectic import (hyperbolic_pair, lagrangian_split,
                                 special_symplectic)
from wdparity.wd import make_unr

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def block_diag(fld, mats):
    """Stack square matrices along the diagonal."""
    d = sum(len(M) for M in mats)
    out = []
    off = 0
    for M in mats:
        for row in M:
            out.append(tuple(fld.zero() for _ in range(off)) + tuple(row)
                       + tuple(fld.zero() for _ in range(d - off - len(M))))
        off += len(M)
    return tuple(out)


@pytest.fixture(scope="session")
def F12():
    return field(1, 2)


@pytest.fixture(scope="session")
def F32():
    return field(3, 2)


@pytest.fixture(scope="session")
def F45():
    return field(4, 5)


@pytest.fixture(scope="session")
def split_block(F12):
    """Weight -1 special block with trivial unramified twist: sign -1."""
    return special_symplectic(F12, 2, 1)


@pytest.fixture(scope="session")
def nonsplit_block(F12):
    """Weight -1 special block twisted by the quadratic unramified
    character: sign +1."""
    return special_symplectic(F12, 2, -1)


@pytest.fixture(scope="session")
def good_block(F12):
    """Hyperbolic plane on an unramified weight -1 character: sign +1."""
    u = make_unr(F12, F12.sqrt_q() / F12.from_rational(2))
    return hyperbolic_pair(u)


def _pst(rep, pairing):
    zero, one = rep.field.zero(), rep.field.one()
    return PSTLocalDatum(
        delta=rep,
        ht=HodgeTateData([(-1, 1), (0, 1)]),
        split=lagrangian_split(pairing, ((zero, one),)),
        ht_plus=HodgeTateData([(-1, 1)]),
        ht_minus=HodgeTateData([(0, 1)]),
    )


@pytest.fixture(scope="session")
def datum_split(split_block):
    return _pst(*split_block)


@pytest.fixture(scope="session")
def datum_nonsplit(nonsplit_block):
    return _pst(*nonsplit_block)


@pytest.fixture(scope="session")
def datum_good(good_block):
    return _pst(*good_block)
