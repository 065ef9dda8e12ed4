"""Tests for the from-scratch factorization verifier."""

import pytest

from hyperfactor.combinatorics import LevelSet
from hyperfactor.errors import LimitExceeded
from hyperfactor.factorization import Factorization
from hyperfactor.flow import run
from hyperfactor.verifier import verify_factorization

K4 = Factorization(
    4, (2,), ((0b0011, 0b1100), (0b0101, 0b1010), (0b1001, 0b0110))
)


def test_valid_factorization_has_no_violations():
    assert verify_factorization(K4) == []
    fact = run(12, LevelSet.of([1, 3]), {(3, 0, 3): 4, (0, 0, 4): 52})
    assert verify_factorization(fact) == []


def test_duplicate_set_reported_with_missing_partner():
    factors = [list(f) for f in K4.factors]
    factors[2] = [0b0101, 0b1010]  # copy of factor 1, {1,3} and {2,4}
    bad = Factorization(4, (2,), tuple(tuple(f) for f in factors))
    msgs = verify_factorization(bad)
    assert any("appears in factors 1 and 2" in m for m in msgs)
    assert any("distinct sets appear" in m and "is missing" in m for m in msgs)


def test_empty_factor():
    bad = Factorization(4, (2,), (K4.factors[0], (), K4.factors[2]))
    msgs = verify_factorization(bad)
    assert any("factor 1 is empty" in m for m in msgs)


def test_overlapping_sets():
    bad = Factorization(4, (2,), ((0b0011, 0b0110),) + K4.factors[1:])
    msgs = verify_factorization(bad)
    assert any("factor 0: sets overlap" in m for m in msgs)


def test_uncovered_elements():
    bad = Factorization(4, (2,), ((0b0011,),) + K4.factors[1:])
    msgs = verify_factorization(bad)
    assert any("factor 0: elements" in m and "not covered" in m for m in msgs)


def test_size_outside_levels():
    bad = Factorization(4, (2,), ((0b0111, 0b1000),) + K4.factors[1:])
    msgs = verify_factorization(bad)
    assert any("size 3 outside levels" in m for m in msgs)
    assert any("size 1 outside levels" in m for m in msgs)


def test_not_a_subset_of_ground():
    bad = Factorization(4, (2,), ((0b10011, 0b1100),) + K4.factors[1:])
    msgs = verify_factorization(bad)
    assert any("not a subset of the ground set" in m for m in msgs)


def test_wrong_factor_count():
    bad = Factorization(4, (2,), K4.factors[:2])
    msgs = verify_factorization(bad)
    assert any("2 factors present, expected 3" in m for m in msgs)


def test_violation_list_is_capped():
    # 30 empty factors: reporting stops after ~20 problems
    bad = Factorization(4, (2,), ((),) * 30)
    msgs = verify_factorization(bad)
    assert msgs[-1] == "... further checks skipped"
    assert len(msgs) <= 22


def test_large_instances_raise_limit():
    huge = Factorization(64, (32,), ())
    with pytest.raises(LimitExceeded):
        verify_factorization(huge)
