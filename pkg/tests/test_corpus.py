"""Randomized corpus generators and the selfcheck property suites."""

import random

from wdparity.corpus import (corpus, formulary_invariant_checks,
                             identity_view, monodromy_invariant_checks,
                             random_case, random_graded_rep,
                             random_numerology, random_nonss_case, selfcheck)
from wdparity.eps import eps_sign, panchishkin_eps
from wdparity.symplectic import validate_pairing
from wdparity.wd import is_frobenius_semisimple, is_pure


def test_corpus_is_seed_deterministic():
    a = corpus(7, 12)
    b = corpus(7, 12)
    assert len(a) == len(b) == 12
    for ca, cb in zip(a, b):
        assert ca.rep == cb.rep
        assert ca.pairing.gram == cb.pairing.gram
        assert ca.ramified == cb.ramified and ca.fss == cb.fss
    c = corpus(8, 12)
    assert any(ca.rep != cc.rep for ca, cc in zip(a, c))


def test_corpus_mixes_shapes():
    cases = corpus(0, 40)
    assert any(c.ramified for c in cases)
    assert any(not c.ramified for c in cases)
    assert any(not c.fss for c in cases)
    dims = {c.rep.dim for c in cases}
    assert len(dims) >= 3
    assert all(c.rep.dim <= 8 for c in cases)


def test_corpus_cases_are_valid_panchishkin_inputs():
    for case in corpus(3, 10):
        assert is_pure(case.rep, -1).ok
        validate_pairing(case.rep, case.pairing.gram)
        assert case.pst.delta is case.rep
        assert panchishkin_eps(case.pst) == eps_sign(case.rep, case.pairing)


def test_nonss_case_really_is_nonss():
    rng = random.Random(4)
    for _ in range(5):
        case = random_nonss_case(rng)
        assert not case.fss
        assert not is_frobenius_semisimple(case.rep)
        assert is_pure(case.rep, -1).ok


def test_identity_view_none_for_ramified():
    rng = random.Random(1)
    seen_ram = seen_view = False
    for _ in range(40):
        case = random_case(rng)
        rep, pairing, split = identity_view(case)
        if case.ramified:
            assert rep is None and pairing is None and split is None
            seen_ram = True
        else:
            assert is_frobenius_semisimple(rep)
            seen_view = True
    assert seen_ram and seen_view


def test_random_graded_rep_invariants_hold():
    rng = random.Random(2)
    for _ in range(25):
        assert monodromy_invariant_checks(random_graded_rep(rng))


def test_random_numerology_invariants_hold():
    rng = random.Random(3)
    for _ in range(50):
        assert formulary_invariant_checks(random_numerology(rng))


def test_selfcheck_suites_pass_and_repeat():
    first = selfcheck(0, 8)
    second = selfcheck(0, 8)
    assert [s.name for s in first] == ["reduction identities",
                                       "monodromy invariants",
                                       "formulary invariants"]
    for sa, sb in zip(first, second):
        assert sa.ok and sa.failed == 0
        assert (sa.passed, sa.failed, sa.failures) == (
            sb.passed, sb.failed, sb.failures)
