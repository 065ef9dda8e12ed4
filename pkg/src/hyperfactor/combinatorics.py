"""Exact combinatorial primitives: binomials, valuations, bit-set subsets, level types.

Ground sets are {1, .., n} with n <= 64; subsets are bit-sets stored in a plain
int (bit i-1 <-> element i).  A "type" records, for a partition of the ground
set into sets whose sizes lie in a level set L, how many parts of each size
occur: a vector (lambda_1, .., lambda_k) with sum of j*lambda_j equal to n and
lambda_j = 0 for j outside L.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator

#: Hard cap on the ground-set size; subsets must fit in a 64-bit word.
MAX_GROUND_SIZE = 64

TypeVector = tuple[int, ...]


def binomial(a: int, b: int) -> int:
    """C(a, b), taken to be zero whenever a < 0, b < 0 or a < b."""
    if a < 0 or b < 0 or a < b:
        return 0
    return math.comb(a, b)


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def padic_valuation(p: int, m: int) -> int:
    """Largest e such that p**e divides m.  Requires p prime and m >= 1."""
    if not is_prime(p):
        raise ValueError(f"p must be a prime, got {p}")
    if m < 1:
        raise ValueError(f"m must be a positive integer, got {m}")
    e = 0
    while m % p == 0:
        m //= p
        e += 1
    return e


def check_ground(n: int) -> None:
    if not isinstance(n, int) or not 1 <= n <= MAX_GROUND_SIZE:
        raise ValueError(f"ground size must be an int in 1..{MAX_GROUND_SIZE}, got {n!r}")


@dataclass(frozen=True)
class LevelSet:
    """A non-empty, strictly increasing tuple of positive set sizes.

    The largest size is written k throughout.
    """

    levels: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.levels:
            raise ValueError("level set must be non-empty")
        if any(not isinstance(l, int) or l < 1 for l in self.levels):
            raise ValueError(f"levels must be positive integers: {self.levels!r}")
        if any(a >= b for a, b in zip(self.levels, self.levels[1:])):
            raise ValueError(f"levels must be strictly increasing: {self.levels!r}")

    @classmethod
    def of(cls, levels: Iterable[int]) -> "LevelSet":
        return cls(tuple(sorted({int(l) for l in levels})))

    @classmethod
    def full(cls, k: int) -> "LevelSet":
        """The full range {1, .., k}."""
        return cls(tuple(range(1, k + 1)))

    @property
    def k(self) -> int:
        return self.levels[-1]

    def is_full_range(self) -> bool:
        return self.levels == tuple(range(1, self.k + 1))

    def check_against_ground(self, n: int) -> None:
        check_ground(n)
        if self.k > n:
            raise ValueError(f"largest level {self.k} exceeds ground size {n}")

    def __iter__(self) -> Iterator[int]:
        return iter(self.levels)

    def __contains__(self, j: object) -> bool:
        return j in self.levels

    def __len__(self) -> int:
        return len(self.levels)


# ---------------------------------------------------------------------------
# bit-set subsets


def mask_of(elements: Iterable[int]) -> int:
    m = 0
    for e in elements:
        if not 1 <= e <= MAX_GROUND_SIZE:
            raise ValueError(f"element out of range 1..{MAX_GROUND_SIZE}: {e}")
        m |= 1 << (e - 1)
    return m


def elements_of(mask: int) -> tuple[int, ...]:
    out = []
    e = 1
    while mask:
        if mask & 1:
            out.append(e)
        mask >>= 1
        e += 1
    return tuple(out)


def full_mask(n: int) -> int:
    return (1 << n) - 1


def min_element(mask: int) -> int:
    """Smallest element of a non-empty bit-set."""
    if mask == 0:
        raise ValueError("empty set has no minimum element")
    return (mask & -mask).bit_length()


def masks_of_size(n: int, s: int) -> list[int]:
    """All bit-sets over {1..n} of size s, ascending as integers (colex order)."""
    return sorted(mask_of(c) for c in combinations(range(1, n + 1), s))


# ---------------------------------------------------------------------------
# types


def type_weight(lam: TypeVector) -> int:
    """Total number of covered elements: sum of j * lambda_j."""
    return sum(j * c for j, c in enumerate(lam, start=1))


def type_size(lam: TypeVector) -> int:
    """Number of parts: sum of lambda_j."""
    return sum(lam)


def is_valid_type(lam: TypeVector, n: int, levels: LevelSet) -> bool:
    if len(lam) != levels.k or any(c < 0 for c in lam):
        return False
    if any(c and (j not in levels) for j, c in enumerate(lam, start=1)):
        return False
    return type_weight(lam) == n


def iter_types(n: int, levels: LevelSet) -> Iterator[TypeVector]:
    """Yield all (n, levels)-types in canonical order.

    Canonical order is lexicographically decreasing on the reversed vector
    (lambda_k, lambda_{k-1}, .., lambda_1); it is produced directly by
    assigning multiplicities for the largest level first, counting down.
    """
    levels.check_against_ground(n)
    k = levels.k
    desc = sorted(levels, reverse=True)
    lam = [0] * k

    def rec(idx: int, rem: int) -> Iterator[TypeVector]:
        if idx == len(desc):
            if rem == 0:
                yield tuple(lam)
            return
        j = desc[idx]
        if idx == len(desc) - 1:
            # last level: multiplicity is forced by divisibility
            if rem % j == 0:
                lam[j - 1] = rem // j
                yield tuple(lam)
                lam[j - 1] = 0
            return
        for c in range(rem // j, -1, -1):
            lam[j - 1] = c
            yield from rec(idx + 1, rem - c * j)
        lam[j - 1] = 0

    yield from rec(0, n)


def enumerate_types(n: int, levels: LevelSet) -> list[TypeVector]:
    """All (n, levels)-types, canonically ordered (see iter_types)."""
    return list(iter_types(n, levels))


def factor_count(n: int, levels: LevelSet) -> int:
    """Number of 1-factors in any 1-factorization: sum of C(n-1, j-1) over j in levels."""
    levels.check_against_ground(n)
    return sum(binomial(n - 1, j - 1) for j in levels)
