"""The level-counting linear system attached to (n, levels).

A 1-factorization of the family of all subsets of {1..n} with sizes in L uses
some multiset of partition types; counting, per level i, how many sets of size
i all chosen partitions contribute gives the system

    sum over types lam of  x_lam * lam_i  ==  C(n, i)   for i in L,
                                          ==  0          for i not in L,

with x_lam non-negative integers.  Solvability of this system over the
non-negative integers is equivalent to 1-factorability, which is why the
decision pipeline reduces everything to it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .combinatorics import (
    LevelSet,
    TypeVector,
    binomial,
    enumerate_types,
    factor_count,
)
from .exactlp import feasible_nonnegative


@dataclass(frozen=True)
class LinearSystem:
    n: int
    levels: LevelSet
    #: all (n, levels)-types in canonical order; these are the rows of A
    types: tuple[TypeVector, ...]
    #: target counts b_i = C(n, i) for i in levels, else 0 (index i-1)
    b: tuple[int, ...]


#: A solution assigns a non-negative integer multiplicity to some types.
SolutionVector = dict[TypeVector, int]


def build_system(n: int, levels: LevelSet) -> LinearSystem:
    levels.check_against_ground(n)
    types = tuple(enumerate_types(n, levels))
    b = tuple(binomial(n, i) if i in levels else 0 for i in range(1, levels.k + 1))
    return LinearSystem(n, levels, types, b)


def evaluate_solution(system: LinearSystem, solution: Mapping[TypeVector, int]) -> tuple[int, ...]:
    """Residual (A^T x - b) per level, exact.  Unknown type keys are an error."""
    known = set(system.types)
    k = system.levels.k
    res = [-v for v in system.b]
    for lam, mult in solution.items():
        if lam not in known:
            raise ValueError(f"solution key is not an (n, levels)-type: {lam}")
        if mult < 0:
            raise ValueError(f"negative multiplicity for type {lam}: {mult}")
        for i in range(k):
            if lam[i]:
                res[i] += lam[i] * mult
    return tuple(res)


def solution_residual(n: int, levels: LevelSet, solution: Mapping[TypeVector, int]) -> tuple[int, ...]:
    """Residual without materialising the full system (keys checked for validity)."""
    from .combinatorics import is_valid_type

    k = levels.k
    res = [-(binomial(n, i) if i in levels else 0) for i in range(1, k + 1)]
    for lam, mult in solution.items():
        if not is_valid_type(lam, n, levels):
            raise ValueError(f"solution key is not an (n, levels)-type: {lam}")
        if mult < 0:
            raise ValueError(f"negative multiplicity for type {lam}: {mult}")
        for i in range(k):
            if lam[i]:
                res[i] += lam[i] * mult
    return tuple(res)


# ---------------------------------------------------------------------------
# Farkas certificates


@dataclass(frozen=True)
class FarkasCertificate:
    """A vector y with lam . y >= 0 for every type lam and b . y < 0.

    Such a y proves the counting system has no non-negative solution at all
    (rational or integer), hence no 1-factorization exists.
    """

    y: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "y", tuple(Fraction(v) for v in self.y))


@dataclass(frozen=True)
class CertificateCheck:
    ok: bool
    #: first type with lam . y < 0, when any
    violating_type: TypeVector | None
    b_dot_y: Fraction


def verify_certificate(system: LinearSystem, cert: FarkasCertificate) -> CertificateCheck:
    """Exact check of the two Farkas conditions against every row."""
    y = cert.y
    if len(y) != system.levels.k:
        raise ValueError(f"certificate length {len(y)} != k={system.levels.k}")
    for lam in system.types:
        dot = sum(c * y[i] for i, c in enumerate(lam) if c)
        if dot < 0:
            return CertificateCheck(False, lam, Fraction(0))
    b_dot = sum(b * y[i] for i, b in enumerate(system.b) if b)
    return CertificateCheck(b_dot < 0, None, b_dot)


@dataclass(frozen=True)
class LpOutcome:
    feasible: bool
    #: exact rational solution keyed by type, when feasible
    solution: dict[TypeVector, Fraction] | None
    #: integer-scaled certificate, when infeasible
    certificate: FarkasCertificate | None


def lp_feasible(system: LinearSystem) -> LpOutcome:
    """Exact rational feasibility of the counting system; never timeouts.

    Infeasible outcomes carry a certificate scaled to clear denominators; both
    outcomes are self-validated before being returned.
    """
    levels = list(system.levels)
    rows = [l - 1 for l in levels]  # drop identically-zero rows (levels outside L)
    columns = [[lam[i] for i in rows] for lam in system.types]
    rhs = [system.b[i] for i in rows]
    result = feasible_nonnegative(columns, rhs)
    if result.feasible:
        assert result.solution is not None
        sol = {
            lam: v for lam, v in zip(system.types, result.solution) if v != 0
        }
        return LpOutcome(True, sol, None)
    assert result.separator is not None
    y = [Fraction(0)] * system.levels.k
    for pos, i in enumerate(rows):
        y[i] = result.separator[pos]
    denom_lcm = 1
    for v in y:
        denom_lcm = denom_lcm * v.denominator // _gcd(denom_lcm, v.denominator)
    cert = FarkasCertificate(tuple(v * denom_lcm for v in y))
    check = verify_certificate(system, cert)
    assert check.ok, "extracted certificate failed validation"
    return LpOutcome(False, None, cert)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


# ---------------------------------------------------------------------------
# bounded exhaustive integer search (the desk-scale oracle)


def integer_search_small(
    system: LinearSystem,
    *,
    type_limit: int = 200,
    node_limit: int = 200_000,
    relaxation_prune: bool = True,
) -> SolutionVector | None:
    """Exhaustive search for a non-negative integer solution of the system.

    Depth-first over types in canonical order, choosing each multiplicity
    from its budget maximum down to zero.  Pruning is by remaining level
    budgets: a branch dies when a positive budget can no longer be met by the
    remaining types, where "cannot be met" covers (a) no remaining type
    touching the level, (b) a forced multiplicity that is fractional, and
    (c) optionally, the remaining budget falling outside the rational cone of
    the remaining types (a sound strengthening, checked exactly).

    Returns a solution dict or None (= proof of integer infeasibility).
    """
    types = system.types
    if len(types) > type_limit:
        raise ValueError(f"{len(types)} types exceed the search limit {type_limit}")
    k = system.levels.k
    ntypes = len(types)

    # suffix_cover[idx] = bit i set iff some type at position >= idx has lam_i > 0
    suffix_cover = [0] * (ntypes + 1)
    for idx in range(ntypes - 1, -1, -1):
        cov = suffix_cover[idx + 1]
        for i in range(k):
            if types[idx][i]:
                cov |= 1 << i
        suffix_cover[idx] = cov

    nodes = 0
    chosen: list[tuple[TypeVector, int]] = []

    def cone_contains(idx: int, budget: list[int]) -> bool:
        cols = [[lam[i] for i in range(k)] for lam in types[idx:]]
        return feasible_nonnegative(cols, budget).feasible

    def dfs(idx: int, budget: list[int]) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > node_limit:
            raise RuntimeError(f"integer search exceeded {node_limit} nodes")
        if all(v == 0 for v in budget):
            return True
        if idx == ntypes:
            return False
        cover = suffix_cover[idx]
        for i in range(k):
            if budget[i] > 0 and not (cover >> i) & 1:
                return False
        if relaxation_prune and not cone_contains(idx, budget):
            return False
        lam = types[idx]
        m_max = min(budget[i] // lam[i] for i in range(k) if lam[i])
        # forced multiplicity: idx is the last chance to pay for some level
        forced = -1
        nxt = suffix_cover[idx + 1]
        for i in range(k):
            if lam[i] and budget[i] > 0 and not (nxt >> i) & 1:
                if budget[i] % lam[i]:
                    return False
                need = budget[i] // lam[i]
                if forced >= 0 and forced != need:
                    return False
                forced = need
        if forced >= 0:
            if forced > m_max:
                return False
            candidates = range(forced, forced - 1, -1)
        else:
            candidates = range(m_max, -1, -1)
        for m in candidates:
            nb = budget if m == 0 else [budget[i] - m * lam[i] for i in range(k)]
            chosen.append((lam, m))
            if dfs(idx + 1, nb):
                return True
            chosen.pop()
        return False

    budget0 = list(system.b)
    if dfs(0, budget0):
        return {lam: m for lam, m in chosen if m > 0}
    return None


def verify_solution(system: LinearSystem, solution: Mapping[TypeVector, int]) -> list[str]:
    """All violations of 'solution solves the system over non-negative ints'."""
    violations: list[str] = []
    known = set(system.types)
    for lam, mult in solution.items():
        if lam not in known:
            violations.append(f"unknown type {lam}")
        if not isinstance(mult, int) or mult < 0:
            violations.append(f"multiplicity of {lam} is not a non-negative int: {mult!r}")
    if violations:
        return violations
    res = evaluate_solution(system, solution)
    for i, r in enumerate(res, start=1):
        if r != 0:
            violations.append(f"level {i}: residual {r}")
    return violations
