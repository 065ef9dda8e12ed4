"""Tests for the closed-form solution families and certificate families."""

from fractions import Fraction

import pytest

from hyperfactor.combinatorics import LevelSet, binomial
from hyperfactor.constructors import (
    Branch,
    CompositeConstruction,
    LiftedConstruction,
    certificate_with_branch,
    construct_div,
    construct_general_L_div,
    construct_minus1,
    make_certificate,
    odd_tail_solution,
    select_branch,
)
from hyperfactor.linear_system import (
    FarkasCertificate,
    build_system,
    solution_residual,
    verify_certificate,
)


def test_select_branch_dispatch():
    assert select_branch(12, 3).branch is Branch.DIV_GENERIC
    assert select_branch(24, 6).branch is Branch.DIV_EDGE
    plan = select_branch(9, 2)
    assert plan.branch is Branch.MINUS1_EVEN_LIFT
    assert plan.lift == (10, LevelSet.of([2]))
    plan = select_branch(11, 3)
    assert plan.branch is Branch.MINUS1_ODD_LIFT
    assert plan.lift == (12, LevelSet.of([1, 3]))
    assert plan.t == 3
    plan = select_branch(27, 7)
    assert plan.branch is Branch.MINUS1_ODD_ABC and plan.t == 1
    plan = select_branch(20, 7)
    assert plan.branch is Branch.MINUS1_ODD_RST and plan.t == 0


def test_select_branch_rejects_infeasible():
    with pytest.raises(ValueError):
        select_branch(18, 6)  # below divisible threshold
    with pytest.raises(ValueError):
        select_branch(7, 3)  # residue 1
    with pytest.raises(ValueError):
        select_branch(13, 5)  # residue 3
    with pytest.raises(ValueError):
        select_branch(26, 9)  # below the near-divisible threshold
    with pytest.raises(ValueError):
        select_branch(6, 3)  # k is not below n/2


def test_construct_div_values():
    assert construct_div(6, 2) == {(2, 2): 3, (0, 3): 3}
    assert construct_div(8, 2) == {(2, 3): 4, (0, 4): 4}
    assert construct_div(12, 3) == {(3, 0, 3): 4, (0, 3, 2): 22, (0, 0, 4): 41}


def test_construct_div_edge_case():
    sol = construct_div(24, 6)
    assert sol == {
        (6, 0, 0, 0, 0, 3): 4,
        (0, 3, 0, 0, 0, 3): 92,
        (0, 0, 2, 0, 0, 3): 1012,
        (0, 0, 0, 1, 4, 0): 10626,
        (0, 0, 0, 0, 0, 4): 32818,
    }
    assert solution_residual(24, LevelSet.full(6), sol) == (0,) * 6


def test_construct_div_rejects():
    with pytest.raises(ValueError):
        construct_div(13, 3)
    with pytest.raises(ValueError):
        construct_div(18, 6)
    with pytest.raises(ValueError):
        construct_div(6, 3)


def test_construct_div_zero_residual_sweep():
    for k in range(2, 7):
        for n in range(2 * k + 1, 27):
            if n % k == 0 and n >= k * (k - 2):
                sol = construct_div(n, k)
                assert solution_residual(n, LevelSet.full(k), sol) == (0,) * k
                assert all(m >= 0 for m in sol.values())


def test_construct_general_L_div():
    assert construct_general_L_div(12, LevelSet.of([2, 4])) == {
        (0, 2, 0, 2): 33,
        (0, 0, 0, 3): 143,
    }
    assert construct_general_L_div(8, LevelSet.of([1, 4])) == {
        (4, 0, 0, 1): 2,
        (0, 0, 0, 2): 34,
    }
    assert construct_general_L_div(6, LevelSet.of([3])) == {(0, 0, 2): 10}
    assert construct_general_L_div(12, LevelSet.of([6])) == {
        (0, 0, 0, 0, 0, 2): 462
    }
    assert construct_general_L_div(10, LevelSet.of([2])) == {(0, 5): 9}
    # lambda_k would go negative: not applicable
    assert construct_general_L_div(8, LevelSet.of([3, 4])) is None
    with pytest.raises(ValueError):
        construct_general_L_div(13, LevelSet.of([2, 4]))


def test_construct_minus1_lifts():
    built = construct_minus1(11, 3)
    assert isinstance(built, LiftedConstruction)
    assert built.lift_n == 12 and built.lift_levels == LevelSet.of([1, 3])
    assert built.solution == {(3, 0, 3): 4, (0, 0, 4): 52}

    built = construct_minus1(9, 2)
    assert isinstance(built, LiftedConstruction)
    assert built.lift_n == 10 and built.lift_levels == LevelSet.of([2])
    assert built.solution == {(0, 5): 9}

    built = construct_minus1(15, 4)
    assert isinstance(built, LiftedConstruction)
    assert built.lift_n == 16 and built.lift_levels == LevelSet.of([2, 4])
    assert solution_residual(16, LevelSet.of([2, 4]), built.solution) == (0,) * 4


def test_construct_minus1_abc():
    built = construct_minus1(27, 7)
    assert isinstance(built, CompositeConstruction)
    assert built.sub_k == 4
    assert built.top_levels == LevelSet.of([5, 6, 7])
    assert built.top_solution == {
        (0, 0, 0, 0, 4, 0, 1): 17940,
        (0, 0, 0, 0, 3, 2, 0): 2990,
        (0, 0, 0, 0, 0, 1, 3): 290030,
    }
    assert solution_residual(27, built.top_levels, built.top_solution) == (0,) * 7
    # k = 9 instance is also exactly integral
    built9 = construct_minus1(53, 9)
    assert isinstance(built9, CompositeConstruction)
    assert built9.sub_k == 6
    assert solution_residual(53, built9.top_levels, built9.top_solution) == (0,) * 9


def test_construct_minus1_rst():
    built = construct_minus1(20, 7)
    assert isinstance(built, CompositeConstruction)
    assert built.sub_k == 3
    assert built.top_levels == LevelSet.of([4, 5, 6, 7])
    assert built.top_solution == {
        (0, 0, 0, 0, 0, 1, 2): 37791,
        (0, 0, 0, 0, 4, 0, 0): 2907,
        (0, 0, 0, 1, 2, 1, 0): 969,
        (0, 0, 0, 2, 1, 0, 1): 1938,
    }
    assert solution_residual(20, built.top_levels, built.top_solution) == (0,) * 7


def test_odd_tail_frozen_values():
    tail = odd_tail_solution(7, 0)
    assert (tail.n, tail.m) == (20, 1)
    assert (tail.x, tail.y) == (37791, 5814)
    assert (tail.A, tail.B) == (969, 1938)
    assert tail.a == (2907, 969)
    assert tail.b == (1938,)
    assert tail.top_levels() == LevelSet.of([4, 5, 6, 7])
    assert tail.sub_k() == 3


def test_odd_tail_identities():
    """Re-derive the per-level identities independently of the constructor."""
    for k in (7, 9, 11, 13):
        for t in range(0, (k - 7) // 2 + 1):
            tail = odd_tail_solution(k, t)
            n, m = tail.n, tail.m
            assert n == (k * k - k - 2) // 2 + t * k
            assert m == (k - 5) // 2 - t
            a, b = tail.a, tail.b
            assert all(v >= 0 for v in (tail.x, tail.y, tail.A, tail.B))
            assert all(v >= 0 for v in a) and all(v >= 0 for v in b)
            # level k-1 and level k
            assert tail.x + tail.A == binomial(n, k - 1)
            assert ((k - 3) // 2 + t) * tail.x + t * tail.y + tail.B == binomial(n, k)
            # weighted sums defining A and B
            assert tail.A == sum(i * a[i] for i in range(1, m + 1))
            assert tail.B == sum(i * b[i - 1] for i in range(1, m + 1))
            # each shared lower level is split exactly
            for i in range(1, m + 1):
                assert a[i] + 2 * b[i - 1] == binomial(n, k - 2 - i)
            # level k-2
            lhs = (k + 1) // 2 * a[0]
            lhs += sum(((k - 1) // 2 - i) * a[i] for i in range(1, m + 1))
            lhs += sum(((k - 3) // 2 - i) * b[i - 1] for i in range(1, m + 1))
            assert lhs == binomial(n, k - 2)
            # partition count y
            assert tail.y == sum(a) + sum(b)


def test_odd_tail_rejects():
    with pytest.raises(ValueError):
        odd_tail_solution(8, 0)
    with pytest.raises(ValueError):
        odd_tail_solution(7, 1)
    with pytest.raises(ValueError):
        odd_tail_solution(5, 0)


def test_certificate_values():
    F = Fraction
    cases = [
        (18, LevelSet.full(6), (F(3), F(3), F(3), F(1), F(-1), F(0))),
        (7, LevelSet.full(3), (F(2), F(1, 2), F(-1))),
        (10, LevelSet.full(3), (F(3), F(1), F(-1))),
        (9, LevelSet.full(4), (F(2), F(1), F(0), F(-1))),
        (10, LevelSet.full(4), (F(1), F(2), F(1, 2), F(-1))),
        (26, LevelSet.full(9), (F(3),) * 5 + (F(1), F(-1), F(2), F(-1))),
        (11, LevelSet.of([2, 3, 4]), (F(0), F(-1, 2), F(2), F(-1))),
        (7, LevelSet.of([2]), (F(0), F(-1))),
    ]
    for n, L, expected in cases:
        cert = make_certificate(n, L)
        assert cert is not None, (n, L.levels)
        assert cert.y == expected, (n, L.levels, cert.y)
        assert verify_certificate(build_system(n, L), cert).ok


def test_certificate_families_tagged():
    assert certificate_with_branch(18, LevelSet.full(6))[0] == "divisible-below-threshold"
    assert certificate_with_branch(7, LevelSet.full(3))[0] == "residue-mid-tight"
    assert certificate_with_branch(10, LevelSet.full(3))[0] == "residue-mid-large"
    assert certificate_with_branch(26, LevelSet.full(9))[0] == "minus-one-below-threshold"
    assert certificate_with_branch(11, LevelSet.of([2, 3, 4]))[0] == "sparse-2-3-4-minus-one"
    assert certificate_with_branch(7, LevelSet.of([2]))[0] == "sparse-minus-one-gap"
    assert certificate_with_branch(14, LevelSet.of([2, 4]))[0] == "sparse-residue-mid"


def test_certificate_none_for_factorable():
    assert make_certificate(12, LevelSet.full(3)) is None
    assert make_certificate(11, LevelSet.full(3)) is None
    assert make_certificate(12, LevelSet.of([2, 4])) is None
    # small n: no family may apply even though the instance is infeasible
    assert make_certificate(6, LevelSet.of([4])) is None


def test_full_range_families_raw_validity():
    """Full-range families must separate everywhere in their claimed ranges."""
    from hyperfactor.constructors import _candidate_certificates

    for k in range(2, 8):
        for n in range(2 * k + 1, 31):
            L = LevelSet.full(k)
            for name, y in _candidate_certificates(n, L):
                cert = FarkasCertificate(tuple(y))
                assert verify_certificate(build_system(n, L), cert).ok, (n, k, name)
