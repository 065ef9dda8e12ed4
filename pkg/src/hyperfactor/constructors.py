"""Closed-form solution families and infeasibility certificates.

For the full level range {1..k} with k < n/2, factorability is a pure
congruence-and-threshold condition on (n, k).  Feasible instances fall into a
small dispatch table of explicit solution families; infeasible ones carry an
explicit separating vector.  Every certificate produced here is re-validated
row by row before it is surfaced, and every solution family asserts a zero
residual, so a formula slip cannot escape silently.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .combinatorics import LevelSet, TypeVector, binomial, iter_types
from .linear_system import FarkasCertificate, SolutionVector, solution_residual


def _unit_type(k: int, entries: dict[int, int]) -> TypeVector:
    """Type vector with lam_level = count for each (level, count) given."""
    lam = [0] * k
    for level, count in entries.items():
        if count:
            lam[level - 1] = count
    return tuple(lam)


def _assert_solves(n: int, levels: LevelSet, solution: SolutionVector) -> None:
    res = solution_residual(n, levels, solution)
    assert all(v == 0 for v in res), f"construction residual {res} for n={n} levels={levels.levels}"


# ---------------------------------------------------------------------------
# branch dispatch


class Branch(enum.Enum):
    DIV_GENERIC = "div-generic"
    DIV_EDGE = "div-edge"
    MINUS1_EVEN_LIFT = "minus1-even-lift"
    MINUS1_ODD_LIFT = "minus1-odd-lift"
    MINUS1_ODD_ABC = "minus1-odd-abc"
    MINUS1_ODD_RST = "minus1-odd-rst"
    GENERAL_L_DIV = "general-l-div"
    COMPLEMENT_REDUCTION = "complement-reduction"
    TRIVIAL_SMALL = "trivial-small"


@dataclass(frozen=True)
class ConstructionPlan:
    branch: Branch
    n: int
    k: int
    residue: int
    #: n // k for the residue-(k-1) family, n/k - 1 for the divisible one
    j: int
    #: offset above the feasibility threshold for odd k (residue k-1 only)
    t: int | None = None
    #: (ground size, levels) of the lifted sub-problem, when the plan lifts
    lift: tuple[int, LevelSet] | None = None


def select_branch(n: int, k: int) -> ConstructionPlan:
    """Pick the solution family for the full range {1..k}, 2 <= k < n/2.

    Raises ValueError outside the feasible region of the characterization;
    callers decide infeasibility before asking for a plan.
    """
    if k < 2 or 2 * k >= n:
        raise ValueError(f"plan selection needs 2 <= k < n/2, got n={n} k={k}")
    r = n % k
    if r == 0:
        if n < k * (k - 2):
            raise ValueError(f"(n={n}, k={k}) is below the divisible threshold")
        branch = Branch.DIV_EDGE if n == k * (k - 2) else Branch.DIV_GENERIC
        return ConstructionPlan(branch, n, k, 0, n // k - 1)
    if r == k - 1:
        j = n // k
        if n < k * (-(-k // 2) - 1) - 1:
            raise ValueError(f"(n={n}, k={k}) is below the residue-(k-1) threshold")
        if k % 2 == 0:
            lift_levels = LevelSet.of(range(2, k + 1, 2))
            return ConstructionPlan(
                Branch.MINUS1_EVEN_LIFT, n, k, r, j, lift=(n + 1, lift_levels)
            )
        t = (n - (k * k - k - 2) // 2) // k
        assert (k * k - k - 2) // 2 + t * k == n
        if t >= (k - 3) // 2:
            lift_levels = LevelSet.of(range(1, k + 1, 2))
            return ConstructionPlan(
                Branch.MINUS1_ODD_LIFT, n, k, r, j, t=t, lift=(n + 1, lift_levels)
            )
        if t == (k - 5) // 2:
            return ConstructionPlan(Branch.MINUS1_ODD_ABC, n, k, r, j, t=t)
        return ConstructionPlan(Branch.MINUS1_ODD_RST, n, k, r, j, t=t)
    raise ValueError(f"n={n} is neither 0 nor -1 modulo k={k}; no construction exists")


# ---------------------------------------------------------------------------
# divisible case, full range


def construct_div(n: int, k: int) -> SolutionVector:
    """Solution for levels {1..k} when k | n, n > 2k and n >= k(k-2).

    One type per lower level i pairs k/gcd(k,i) sets of size i with enough
    size-k sets to use exactly n elements; a pure size-k type absorbs the
    remaining level-k budget.  At the single edge point n = k(k-2) the two
    top lower levels are handled by one mixed type instead.
    """
    if n % k or 2 * k >= n or n < k * (k - 2):
        raise ValueError(f"divisible construction needs k | n, n > 2k, n >= k(k-2); got n={n} k={k}")
    edge = n == k * (k - 2)
    solution: SolutionVector = {}
    covered_k = 0
    top = k - 3 if edge else k - 1
    for i in range(1, top + 1):
        g = gcd(k, i)
        q = k // g
        lam_k = n // k - i // g
        assert lam_k >= 0
        count = binomial(n, i)
        assert count % q == 0, f"k/gcd(k,i) does not divide C(n,i) for n={n} i={i}"
        mult = count // q
        solution[_unit_type(k, {i: q, k: lam_k})] = mult
        covered_k += lam_k * mult
    if edge:
        # one type pays for both level k-2 and level k-1
        mult = binomial(n, k - 2)
        assert (k - 2) * mult == binomial(n, k - 1)
        solution[_unit_type(k, {k - 2: 1, k - 1: k - 2})] = mult
    remainder = binomial(n, k) - covered_k
    assert remainder >= 0 and remainder % (n // k) == 0
    if remainder:
        solution[_unit_type(k, {k: n // k})] = remainder // (n // k)
    _assert_solves(n, LevelSet.full(k), solution)
    return solution


def construct_general_L_div(n: int, levels: LevelSet) -> SolutionVector | None:
    """Same pairing pattern for an arbitrary level set when k | n.

    Returns None (not applicable) when some pairing type would need a negative
    number of size-k sets, or the level-k remainder would go negative.
    """
    levels.check_against_ground(n)
    k = levels.k
    if n % k:
        raise ValueError(f"divisible construction needs k | n, got n={n} k={k}")
    solution: SolutionVector = {}
    covered_k = 0
    for l in levels:
        if l == k:
            continue
        g = gcd(k, l)
        q = k // g
        lam_k = n // k - l // g
        if lam_k < 0:
            return None
        count = binomial(n, l)
        assert count % q == 0, f"k/gcd(k,l) does not divide C(n,l) for n={n} l={l}"
        mult = count // q
        solution[_unit_type(k, {l: q, k: lam_k})] = mult
        covered_k += lam_k * mult
    remainder = binomial(n, k) - covered_k
    if remainder < 0:
        return None
    assert remainder % (n // k) == 0
    if remainder:
        solution[_unit_type(k, {k: n // k})] = remainder // (n // k)
    _assert_solves(n, levels, solution)
    return solution


# ---------------------------------------------------------------------------
# residue k-1, full range


@dataclass(frozen=True)
class LiftedConstruction:
    """Solve on a one-larger ground set, then delete the extra element."""

    lift_n: int
    lift_levels: LevelSet
    solution: SolutionVector


@dataclass(frozen=True)
class CompositeConstruction:
    """Explicit types for the top levels plus a recursive full-range rest."""

    top_levels: LevelSet
    top_solution: SolutionVector
    sub_k: int


def construct_minus1(n: int, k: int) -> LiftedConstruction | CompositeConstruction:
    """Solution plan for levels {1..k} when n = -1 (mod k), above threshold."""
    plan = select_branch(n, k)
    if plan.branch is Branch.MINUS1_EVEN_LIFT or plan.branch is Branch.MINUS1_ODD_LIFT:
        assert plan.lift is not None
        lift_n, lift_levels = plan.lift
        solution = construct_general_L_div(lift_n, lift_levels)
        assert solution is not None, f"lift solution missing for n={n} k={k}"
        return LiftedConstruction(lift_n, lift_levels, solution)
    if plan.branch is Branch.MINUS1_ODD_ABC:
        return _abc_construction(n, k)
    if plan.branch is Branch.MINUS1_ODD_RST:
        assert plan.t is not None
        tail = odd_tail_solution(k, plan.t)
        assert tail.n == n
        return CompositeConstruction(tail.top_levels(), tail.solution(), tail.sub_k())
    raise ValueError(f"n={n} is not -1 modulo k={k}")


def _abc_construction(n: int, k: int) -> CompositeConstruction:
    # reachable only for odd k >= 7 at the single point n = k^2 - 3k - 1
    assert n == k * k - 3 * k - 1
    c_k2 = binomial(n, k - 2)
    a = Fraction(3 * (k - 3), 2 * n) * c_k2
    b = Fraction(k - 5, 2 * n) * c_k2
    assert a.denominator == 1 and b.denominator == 1
    a, b = int(a), int(b)
    c = binomial(n, k - 1) - 2 * b
    assert a >= 0 and b >= 0 and c >= 0
    solution: SolutionVector = {}
    solution[_unit_type(k, {k - 2: (k + 1) // 2, k: (k - 5) // 2})] = a
    if b:
        solution[_unit_type(k, {k - 2: (k - 1) // 2, k - 1: 2, k: (k - 7) // 2})] = b
    if c:
        solution[_unit_type(k, {k - 1: 1, k: k - 4})] = c
    top_levels = LevelSet.of([k - 2, k - 1, k])
    _assert_solves(n, top_levels, solution)
    return CompositeConstruction(top_levels, solution, k - 3)


@dataclass(frozen=True)
class OddTailSolution:
    """Exact multiplicities for the top-level block, odd k, small offset t.

    Covers levels (k+2t+1)/2 .. k of the ground set of size
    n = (k^2-k-2)/2 + t*k with four type shapes; the remaining levels form a
    full-range sub-problem on the same ground set (see sub_k).  All the
    bookkeeping quantities are exposed for auditing: x and y are the two
    top-type multiplicities, a_i/b_i split the budgets of the shared lower
    levels, and A, B are their index-weighted sums.
    """

    n: int
    k: int
    t: int
    m: int
    x: int
    y: int
    A: int
    B: int
    a: tuple[int, ...]  # a_0 .. a_m
    b: tuple[int, ...]  # b_1 .. b_m

    def top_levels(self) -> LevelSet:
        return LevelSet.of(range((self.k + 2 * self.t + 1) // 2, self.k + 1))

    def sub_k(self) -> int:
        return (self.k + 2 * self.t - 1) // 2

    def solution(self) -> SolutionVector:
        k, t, m = self.k, self.t, self.m
        solution: SolutionVector = {}
        if self.x:
            solution[_unit_type(k, {k - 1: 1, k: (k - 3) // 2 + t})] = self.x
        if self.a[0]:
            solution[_unit_type(k, {k - 2: (k + 1) // 2, k: t})] = self.a[0]
        for i in range(1, m + 1):
            if self.a[i]:
                solution[
                    _unit_type(k, {k - 2 - i: 1, k - 2: (k - 1) // 2 - i, k - 1: i, k: t})
                ] = self.a[i]
            if self.b[i - 1]:
                solution[
                    _unit_type(k, {k - 2 - i: 2, k - 2: (k - 3) // 2 - i, k: t + i})
                ] = self.b[i - 1]
        return solution


def odd_tail_solution(k: int, t: int) -> OddTailSolution:
    """Compute and fully audit the top-level block for odd k, 0 <= t <= (k-7)/2."""
    if k % 2 == 0 or k < 7 or not 0 <= t <= (k - 7) // 2:
        raise ValueError(f"tail family needs odd k >= 7 and 0 <= t <= (k-7)/2, got k={k} t={t}")
    n = (k * k - k - 2) // 2 + t * k
    m = (k - 5) // 2 - t
    half = (k - 1) // 2 + t

    # the two aggregate counting identities pin down x and y
    factors_high = sum(binomial(n - 1, i) for i in range(half, k))
    subsets_high = sum(binomial(n, i) for i in range(half + 1, k + 1))
    x = (half + 1) * factors_high - subsets_high
    y = subsets_high - half * factors_high
    assert x >= 0 and y >= 0

    # independent closed form for y must agree
    y_direct = sum(
        Fraction(k - 2 + 2 * t + i * half, n) * binomial(n, k - 2 - i) for i in range(m + 1)
    )
    assert y_direct == y, f"closed form for y disagrees: {y_direct} vs {y}"

    a = {i: binomial(n, k - 2 - i) % 2 for i in range(2, m + 1)}
    b = {i: binomial(n, k - 2 - i) // 2 for i in range(2, m + 1)}

    lower_weighted = sum(i * binomial(n, k - 2 - i) for i in range(1, m + 1))
    rhs = 2 * t * y + lower_weighted
    assert rhs % (k - 2 + 2 * t) == 0
    big_a = rhs // (k - 2 + 2 * t)
    big_b = ((k - 3) // 2 + t) * big_a - t * y
    assert big_a >= 0 and big_b >= 0
    assert big_a + 2 * big_b == lower_weighted

    a[1] = big_a - sum(i * a[i] for i in range(2, m + 1))
    b[1] = big_b - sum(i * b[i] for i in range(2, m + 1))
    assert a[1] >= 0 and b[1] >= 0
    assert a[1] + 2 * b[1] == binomial(n, k - 3)

    a0 = y - sum(a[i] + b[i] for i in range(1, m + 1))
    assert a0 >= 0
    level_k2 = (
        (k + 1) // 2 * a0
        + sum(((k - 1) // 2 - i) * a[i] for i in range(1, m + 1))
        + sum(((k - 3) // 2 - i) * b[i] for i in range(1, m + 1))
    )
    assert level_k2 == binomial(n, k - 2)

    tail = OddTailSolution(
        n,
        k,
        t,
        m,
        x,
        y,
        big_a,
        big_b,
        (a0,) + tuple(a[i] for i in range(1, m + 1)),
        tuple(b[i] for i in range(1, m + 1)),
    )
    _assert_solves(n, tail.top_levels(), tail.solution())
    return tail


# ---------------------------------------------------------------------------
# Farkas certificate families


def _candidate_certificates(n: int, levels: LevelSet) -> list[tuple[str, list[Fraction]]]:
    k = levels.k
    if k < 2 or n <= 2 * k:
        return []
    r = n % k
    j = n // k
    F = Fraction
    out: list[tuple[str, list[Fraction]]] = []
    if levels.is_full_range():
        if r not in (0, k - 1):
            if j >= 3:
                y = [F(j, 2)] * (r - 1) + [F(j)] + [F(j - 1, 2)] * (k - r - 1) + [F(-1)]
                out.append(("residue-mid-large", y))
            elif j == 2:
                y = [F(0)] * k
                for i in range(1, r):
                    y[i - 1] = F(1)
                y[r - 1] = F(2)
                mid = (r + k) // 2
                if (k - r) % 2:
                    for i in range(r + 1, mid + 1):
                        y[i - 1] = F(1)
                else:
                    for i in range(r + 1, mid):
                        y[i - 1] = F(1)
                    y[mid - 1] = F(1, 2)
                y[k - 1] = F(-1)
                out.append(("residue-mid-tight", y))
        elif r == 0:
            jj = j - 1
            if 2 <= jj <= k - 4:
                y = [F(jj + 1)] * (jj + 1) + [F(jj, 2)] * (k - jj - 3) + [F(-1), F(0)]
                out.append(("divisible-below-threshold", y))
        else:
            if 2 <= j <= -(-k // 2) - 3:
                y = [F(j + 1)] * (2 * j + 1) + [F(j, 2)] * (k - 2 * j - 4) + [F(-1), F(j), F(-1)]
                out.append(("minus-one-below-threshold", y))
    else:
        if r not in (0, k - 1):
            y = [F(j, 2)] * k
            y[r - 1] = F(j)
            y[k - 1] = F(-1)
            out.append(("sparse-residue-mid", y))
        if r == k - 1 and (k - 1) not in levels:
            y = [F(0)] * k
            for l in levels:
                if l != k:
                    y[l - 1] = F(j, 2)
            y[k - 1] = F(-1)
            out.append(("sparse-minus-one-gap", y))
        if r == k - 1 and levels.levels == (2, 3, 4):
            y = [F(0), F(-1, 2), F((n + 1) // 4 - 1), F(-1)]
            out.append(("sparse-2-3-4-minus-one", y))
    return out


def _certificate_holds(n: int, levels: LevelSet, cert: FarkasCertificate) -> bool:
    """Row-streamed validation; avoids materialising large type lists."""
    y = cert.y
    for lam in iter_types(n, levels):
        if sum(c * y[i] for i, c in enumerate(lam) if c) < 0:
            return False
    b_dot = sum(binomial(n, i) * y[i - 1] for i in levels)
    return b_dot < 0


def certificate_with_branch(n: int, levels: LevelSet) -> tuple[str, FarkasCertificate] | None:
    """First certificate family that applies AND validates, with its branch tag."""
    levels.check_against_ground(n)
    for name, y in _candidate_certificates(n, levels):
        cert = FarkasCertificate(tuple(y))
        if _certificate_holds(n, levels, cert):
            return name, cert
    return None


def make_certificate(n: int, levels: LevelSet) -> FarkasCertificate | None:
    """An explicit Farkas certificate, or None when no family applies."""
    found = certificate_with_branch(n, levels)
    return found[1] if found else None
