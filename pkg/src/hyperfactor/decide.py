"""Top-level decision procedure and end-to-end construction pipeline.

decide(n, k) settles factorability of the full level range {1..k} by pure
arithmetic: for k < n/2 a congruence-plus-threshold test, for n/2 <= k <= n-1
a reduction to the complementary range {1..n-k-1} (complement pairing covers
the middle sizes), with k = 1 and k = n handled by convention.  Negative
verdicts carry a validated Farkas certificate.

decide_general(n, L) handles arbitrary level sets: certificate families,
the divisible pairing construction, bounded exhaustive integer search, then
exact rational feasibility; UNKNOWN is an honest outcome beyond those limits.

construct realizes every FACTORABLE verdict as an explicit factorization and
verifies it from scratch before returning.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable

from .combinatorics import LevelSet, check_ground, full_mask, mask_of
from .constructors import (
    Branch,
    CompositeConstruction,
    LiftedConstruction,
    certificate_with_branch,
    construct_div,
    construct_general_L_div,
    construct_minus1,
    make_certificate,
    select_branch,
)
from .errors import LimitExceeded, NotFactorableError
from .factorization import Factorization
from .flow import DEFAULT_MAX_GROUND, StepRecord, run as flow_run
from .linear_system import (
    FarkasCertificate,
    SolutionVector,
    build_system,
    integer_search_small,
    lp_feasible,
)
from .reducer import extend_by_complements, project_lift
from .verifier import verify_factorization


class Status(enum.Enum):
    FACTORABLE = "FACTORABLE"
    NOT_FACTORABLE = "NOT_FACTORABLE"
    RATIONALLY_FEASIBLE_UNKNOWN_INTEGRAL = "RATIONALLY_FEASIBLE_UNKNOWN_INTEGRAL"
    UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class Verdict:
    status: Status
    #: human-readable branch tag explaining how the status was reached
    reason: str
    #: validated infeasibility certificate, when one backs the verdict
    certificate: FarkasCertificate | None = None
    #: the levels the certificate separates (same ground size n)
    certificate_levels: tuple[int, ...] | None = None
    #: zero-residual multiplicity witness, when one backs the verdict
    solution: SolutionVector | None = None
    #: True when NOT_FACTORABLE rests on an exhausted integer search
    search_exhausted: bool = False


def _divisible_ok(n: int, k: int) -> bool:
    return n % k == 0 and n >= k * (k - 2)


def _minus_one_ok(n: int, k: int) -> bool:
    return n % k == k - 1 and n >= k * (-(-k // 2) - 1) - 1


def decide(n: int, k: int) -> Verdict:
    """Complete decision for the full level range {1..k}, 1 <= k <= n <= 64."""
    check_ground(n)
    if not isinstance(k, int) or not 1 <= k <= n:
        raise ValueError(f"k must be an int in 1..n={n}, got {k!r}")
    if k == 1:
        return Verdict(
            Status.FACTORABLE,
            "trivial: the n singletons form the single factor (k = 1 convention)",
        )
    if k == n:
        if n == 1:
            return Verdict(Status.FACTORABLE, "trivial: ground set of size 1")
        inner = decide(n, n - 1)
        return Verdict(
            inner.status,
            "the whole ground set forms one factor; rest reduces to k = n-1: "
            + inner.reason,
            certificate=inner.certificate,
            certificate_levels=inner.certificate_levels,
        )
    if 2 * k < n:
        r = n % k
        if _divisible_ok(n, k):
            return Verdict(
                Status.FACTORABLE,
                f"divisible case: n = 0 (mod {k}) and n = {n} >= k(k-2) = {k * (k - 2)}",
            )
        if _minus_one_ok(n, k):
            thr = k * (-(-k // 2) - 1) - 1
            return Verdict(
                Status.FACTORABLE,
                f"near-divisible case: n = -1 (mod {k}) and n = {n} >= {thr}",
            )
        if r == 0:
            why = f"below the divisible threshold: n = {n} < k(k-2) = {k * (k - 2)}"
        elif r == k - 1:
            thr = k * (-(-k // 2) - 1) - 1
            why = f"below the near-divisible threshold: n = {n} < {thr}"
        else:
            why = f"residue obstruction: n = {r} (mod {k}) is neither 0 nor -1"
        levels = LevelSet.full(k)
        found = certificate_with_branch(n, levels)
        assert found is not None, f"missing certificate for infeasible (n={n}, k={k})"
        name, cert = found
        return Verdict(
            Status.NOT_FACTORABLE,
            f"{why}; certificate family: {name}",
            certificate=cert,
            certificate_levels=levels.levels,
        )
    # n/2 <= k <= n-1: complement pairing reduces to the range {1..n-k-1}
    m = n - k - 1
    if m == 0:
        return Verdict(
            Status.FACTORABLE,
            "complement pairing alone covers all levels (reduction target is empty)",
        )
    inner = decide(n, m)
    return Verdict(
        inner.status,
        f"complement pairing reduces to levels 1..{m}: " + inner.reason,
        certificate=inner.certificate,
        certificate_levels=inner.certificate_levels,
    )


def decide_general(
    n: int,
    levels: LevelSet,
    *,
    search_type_limit: int = 200,
    search_node_limit: int = 200_000,
    lp_type_limit: int = 5_000,
) -> Verdict:
    """Decision for an arbitrary level set; UNKNOWN is possible beyond limits."""
    levels.check_against_ground(n)
    if levels.is_full_range():
        return decide(n, levels.k)
    found = certificate_with_branch(n, levels)
    if found is not None:
        name, cert = found
        return Verdict(
            Status.NOT_FACTORABLE,
            f"validated certificate family: {name}",
            certificate=cert,
            certificate_levels=levels.levels,
        )
    if n % levels.k == 0:
        solution = construct_general_L_div(n, levels)
        if solution is not None:
            return Verdict(
                Status.FACTORABLE,
                "divisible level-pairing construction",
                solution=solution,
            )
    system = build_system(n, levels)
    if len(system.types) <= search_type_limit:
        try:
            solution = integer_search_small(
                system, type_limit=search_type_limit, node_limit=search_node_limit
            )
        except RuntimeError:
            solution = None
            exhausted = False
        else:
            exhausted = True
        if exhausted:
            if solution is not None:
                return Verdict(
                    Status.FACTORABLE,
                    "bounded exhaustive integer search found a witness",
                    solution=solution,
                )
            return Verdict(
                Status.NOT_FACTORABLE,
                "exhaustive search over all non-negative integer multiplicities",
                search_exhausted=True,
            )
    if len(system.types) <= lp_type_limit:
        outcome = lp_feasible(system)
        if not outcome.feasible:
            assert outcome.certificate is not None
            return Verdict(
                Status.NOT_FACTORABLE,
                "exact rational infeasibility (simplex-derived certificate)",
                certificate=outcome.certificate,
                certificate_levels=levels.levels,
            )
        return Verdict(
            Status.RATIONALLY_FEASIBLE_UNKNOWN_INTEGRAL,
            "rationally feasible, but no integral witness within search limits",
        )
    return Verdict(
        Status.UNKNOWN,
        f"{len(system.types)} types exceed the search and LP limits "
        f"({search_type_limit}, {lp_type_limit})",
    )


# ---------------------------------------------------------------------------
# construction pipeline


TraceFn = Callable[[StepRecord], None]


def construct(
    n: int,
    k: int | None = None,
    levels: LevelSet | None = None,
    *,
    max_ground_size: int = DEFAULT_MAX_GROUND,
    trace: TraceFn | None = None,
) -> Factorization:
    """Build and fully verify a factorization, or raise NotFactorableError.

    Exactly one of k (full range {1..k}) and levels may be given.
    """
    check_ground(n)
    if (k is None) == (levels is None):
        raise ValueError("pass exactly one of k or levels")
    if levels is not None and levels.is_full_range():
        k, levels = levels.k, None
    if levels is not None:
        verdict = decide_general(n, levels)
        if verdict.status is Status.NOT_FACTORABLE:
            raise NotFactorableError(f"(n={n}, levels={levels.levels}): {verdict.reason}")
        if verdict.status is not Status.FACTORABLE:
            raise LimitExceeded(f"(n={n}, levels={levels.levels}) undecided: {verdict.reason}")
        assert verdict.solution is not None
        fact = flow_run(
            n, levels, verdict.solution, max_ground_size=max_ground_size, trace=trace
        )
        _must_verify(fact)
        return fact
    assert k is not None
    verdict = decide(n, k)
    if verdict.status is not Status.FACTORABLE:
        raise NotFactorableError(f"(n={n}, k={k}): {verdict.reason}")
    fact = _factors_for_full_range(n, k, max_ground_size, trace)
    _must_verify(fact)
    return fact


def _must_verify(fact: Factorization) -> None:
    problems = verify_factorization(fact)
    if problems:
        raise AssertionError(f"constructed factorization failed verification: {problems[:3]}")


def _factors_for_full_range(
    n: int, k: int, max_ground_size: int, trace: TraceFn | None
) -> Factorization:
    """Recursive realization for levels {1..k}; assumes factorability."""
    if k == 0:
        return Factorization(n, (), ())
    if k == 1:
        singletons = tuple(mask_of([e]) for e in range(1, n + 1))
        return Factorization(n, (1,), (singletons,))
    if k == n:
        inner = _factors_for_full_range(n, n - 1, max_ground_size, trace)
        factors = ((full_mask(n),),) + inner.factors
        return Factorization(n, tuple(range(1, n + 1)), factors)
    if 2 * k < n:
        return _construct_small_range(n, k, max_ground_size, trace)
    inner = _factors_for_full_range(n, n - k - 1, max_ground_size, trace)
    return extend_by_complements(inner, k)


def _construct_small_range(
    n: int, k: int, max_ground_size: int, trace: TraceFn | None
) -> Factorization:
    plan = select_branch(n, k)
    full = LevelSet.full(k)
    if plan.branch in (Branch.DIV_GENERIC, Branch.DIV_EDGE):
        solution = construct_div(n, k)
        return flow_run(n, full, solution, max_ground_size=max_ground_size, trace=trace)
    built = construct_minus1(n, k)
    if isinstance(built, LiftedConstruction):
        lifted = flow_run(
            built.lift_n,
            built.lift_levels,
            built.solution,
            max_ground_size=max_ground_size,
            trace=trace,
        )
        fact = project_lift(lifted, built.lift_n)
        assert fact.n == n and fact.levels == full.levels
        return fact
    assert isinstance(built, CompositeConstruction)
    top = flow_run(
        n, built.top_levels, built.top_solution, max_ground_size=max_ground_size, trace=trace
    )
    sub = _factors_for_full_range(n, built.sub_k, max_ground_size, trace)
    return Factorization(n, full.levels, top.factors + sub.factors)
