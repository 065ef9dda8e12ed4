"""Command-line surface.

Exit codes: 0 factorable / operation OK, 1 not factorable / invalid input
object, 2 usage or format error, 3 undecided (beyond search limits) or
work-limit exceeded.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from .combinatorics import LevelSet, binomial, enumerate_types, iter_types
from .constructors import certificate_with_branch
from .decide import Status, Verdict, construct, decide, decide_general
from .errors import FormatError, LimitExceeded, NotFactorableError
from .fileformat import (
    CERTIFICATE_MAGIC,
    FACTORIZATION_MAGIC,
    load_text,
    parse_certificate,
    parse_factorization,
    save_text,
    write_factorization,
)
from .flow import DEFAULT_MAX_GROUND, StepRecord
from .linear_system import SolutionVector
from .verifier import verify_factorization

_STATUS_EXIT = {
    Status.FACTORABLE: 0,
    Status.NOT_FACTORABLE: 1,
    Status.RATIONALLY_FEASIBLE_UNKNOWN_INTEGRAL: 3,
    Status.UNKNOWN: 3,
}


def _parse_levels(text: str) -> LevelSet:
    try:
        parts = [int(v) for v in text.split(",")]
    except ValueError:
        raise ValueError(f"--levels expects comma-separated integers, got {text!r}")
    return LevelSet.of(parts)


def _levels_of(args: argparse.Namespace) -> LevelSet:
    if getattr(args, "k", None) is not None:
        return LevelSet.full(args.k)
    return _parse_levels(args.levels)


def _print_verdict(verdict: Verdict) -> None:
    print(verdict.status.value)
    print(f"reason: {verdict.reason}")
    if verdict.certificate is not None:
        print("certificate: " + " ".join(str(v) for v in verdict.certificate.y))
        assert verdict.certificate_levels is not None
        print("certificate-levels: " + ",".join(map(str, verdict.certificate_levels)))
    if verdict.solution is not None:
        print("solution-types: " + str(len(verdict.solution)))


def _cmd_decide(args: argparse.Namespace) -> int:
    levels = _levels_of(args)
    if levels.is_full_range():
        verdict = decide(args.n, levels.k)
    else:
        verdict = decide_general(args.n, levels)
    _print_verdict(verdict)
    return _STATUS_EXIT[verdict.status]


def _trace_printer(record: StepRecord) -> None:
    print(
        f"step {record.ell}: flow={record.flow_value} "
        f"occurrences={record.occurrence_nodes} pairs-checked={record.pairs_checked}",
        file=sys.stderr,
    )


def _cmd_construct(args: argparse.Namespace) -> int:
    levels = _levels_of(args)
    trace = _trace_printer if args.trace else None
    try:
        if levels.is_full_range():
            fact = construct(
                args.n, k=levels.k, max_ground_size=args.max_ground_size, trace=trace
            )
        else:
            fact = construct(
                args.n, levels=levels, max_ground_size=args.max_ground_size, trace=trace
            )
    except NotFactorableError as exc:
        print(f"not factorable: {exc}", file=sys.stderr)
        return 1
    text = write_factorization(fact)
    if args.out:
        save_text(text, args.out)
        print(f"wrote {len(fact.factors)} factors to {args.out}")
    else:
        sys.stdout.write(text)
    return 0


def _solution_blocks(n: int, levels: LevelSet) -> list[tuple[int, LevelSet, SolutionVector]]:
    """Witness solutions, one block per (ground, levels) system the pipeline solves."""
    from .constructors import (
        Branch,
        CompositeConstruction,
        LiftedConstruction,
        construct_div,
        construct_minus1,
        select_branch,
    )

    if not levels.is_full_range():
        verdict = decide_general(n, levels)
        if verdict.status is not Status.FACTORABLE:
            raise NotFactorableError(f"(n={n}, levels={levels.levels}): {verdict.reason}")
        assert verdict.solution is not None
        return [(n, levels, verdict.solution)]

    def full_range(k: int) -> list[tuple[int, LevelSet, SolutionVector]]:
        if k == 0:
            return []
        if k == 1:
            return [(n, LevelSet.full(1), {(n,): 1})]
        if k == n:
            top = (0,) * (n - 1) + (1,)
            return [(n, LevelSet.of([n]), {top: 1})] + full_range(n - 1)
        if 2 * k < n:
            plan_branch = select_branch(n, k).branch
            if plan_branch in (Branch.DIV_GENERIC, Branch.DIV_EDGE):
                return [(n, LevelSet.full(k), construct_div(n, k))]
            built = construct_minus1(n, k)
            if isinstance(built, LiftedConstruction):
                return [(built.lift_n, built.lift_levels, built.solution)]
            assert isinstance(built, CompositeConstruction)
            return [(n, built.top_levels, built.top_solution)] + full_range(built.sub_k)
        # complement pairing block over the middle sizes
        mid = LevelSet.of(range(n - k, k + 1))
        pairs: SolutionVector = {}
        for s in range(n - k, (n + 1) // 2):
            lam = [0] * mid.k
            lam[s - 1] = 1
            lam[n - s - 1] += 1
            pairs[tuple(lam)] = binomial(n, s)
        if n % 2 == 0:
            lam = [0] * mid.k
            lam[n // 2 - 1] = 2
            pairs[tuple(lam)] = binomial(n, n // 2) // 2
        return [(n, mid, pairs)] + full_range(n - k - 1)

    verdict = decide(n, levels.k)
    if verdict.status is not Status.FACTORABLE:
        raise NotFactorableError(f"(n={n}, k={levels.k}): {verdict.reason}")
    return full_range(levels.k)


def _cmd_solve(args: argparse.Namespace) -> int:
    levels = _levels_of(args)
    try:
        blocks = _solution_blocks(args.n, levels)
    except NotFactorableError as exc:
        print(f"not factorable: {exc}", file=sys.stderr)
        return 1
    for block_n, block_levels, solution in blocks:
        print(f"n={block_n} levels={','.join(map(str, block_levels.levels))}")
        for lam in sorted(solution, key=lambda l: tuple(reversed(l)), reverse=True):
            print(",".join(map(str, lam)) + f": {solution[lam]}")
    return 0


def _cmd_certificate(args: argparse.Namespace) -> int:
    levels = _levels_of(args)
    found = certificate_with_branch(args.n, levels)
    if found is not None:
        name, cert = found
        print(" ".join(str(v) for v in cert.y))
        print(f"family: {name}", file=sys.stderr)
        return 0
    if levels.is_full_range():
        verdict = decide(args.n, levels.k)
    else:
        verdict = decide_general(args.n, levels)
    if verdict.status is Status.FACTORABLE:
        print("instance is factorable; no certificate exists", file=sys.stderr)
        return 1
    if verdict.certificate is not None:
        print(" ".join(str(v) for v in verdict.certificate.y))
        print("family: simplex-derived", file=sys.stderr)
        return 0
    print("no certificate family applies", file=sys.stderr)
    return 3


def _cmd_verify(args: argparse.Namespace) -> int:
    text = load_text(args.file)
    first = text.split("\n", 1)[0]
    if first == FACTORIZATION_MAGIC:
        fact = parse_factorization(text)
        problems = verify_factorization(fact)
        if problems:
            for p in problems:
                print(f"violation: {p}")
            return 1
        print(f"OK: valid factorization of n={fact.n} levels={','.join(map(str, fact.levels))} "
              f"with {len(fact.factors)} factors")
        return 0
    if first == CERTIFICATE_MAGIC:
        n, levels, cert = parse_certificate(text)
        levels.check_against_ground(n)
        y = cert.y
        for lam in iter_types(n, levels):
            if sum(c * y[i] for i, c in enumerate(lam) if c) < 0:
                print(f"violation: type {lam} has negative product with y")
                return 1
        b_dot = sum(binomial(n, i) * y[i - 1] for i in levels)
        if b_dot >= 0:
            print(f"violation: b . y = {b_dot} is not negative")
            return 1
        print(f"OK: certificate separates n={n} levels={','.join(map(str, levels.levels))} "
              f"(b . y = {b_dot})")
        return 0
    raise FormatError(f"unrecognized file magic {first!r}")


def _cmd_types(args: argparse.Namespace) -> int:
    levels = _levels_of(args)
    for lam in enumerate_types(args.n, levels):
        print(",".join(map(str, lam)))
    return 0


def _add_instance_args(p: argparse.ArgumentParser, *, levels_too: bool = True) -> None:
    p.add_argument("--n", type=int, required=True, help="ground set size (1..64)")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--k", type=int, help="full level range 1..k")
    if levels_too:
        group.add_argument("--levels", type=str, help="comma-separated level set, e.g. 2,4")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyperfactor",
        description="Decide and construct 1-factorizations of level-restricted subset families.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decide", help="decide factorability")
    _add_instance_args(p)
    p.set_defaults(fn=_cmd_decide)

    p = sub.add_parser("construct", help="build and verify an explicit factorization")
    _add_instance_args(p)
    p.add_argument("--out", type=str, help="write the factorization to this file")
    p.add_argument("--trace", action="store_true", help="print per-step flow records to stderr")
    p.add_argument(
        "--max-ground-size",
        type=int,
        default=DEFAULT_MAX_GROUND,
        help=f"work limit for the evolution engine (default {DEFAULT_MAX_GROUND})",
    )
    p.set_defaults(fn=_cmd_construct)

    p = sub.add_parser("solve", help="print witness multiplicity vectors")
    _add_instance_args(p)
    p.set_defaults(fn=_cmd_solve)

    p = sub.add_parser("certificate", help="print a Farkas infeasibility certificate")
    _add_instance_args(p)
    p.set_defaults(fn=_cmd_certificate)

    p = sub.add_parser("verify", help="validate a factorization or certificate file")
    p.add_argument("--file", type=str, required=True)
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("types", help="enumerate level types in canonical order")
    _add_instance_args(p)
    p.set_defaults(fn=_cmd_types)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except FormatError as exc:
        print(f"format error: {exc}", file=sys.stderr)
        return 2
    except LimitExceeded as exc:
        print(f"limit exceeded: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
