"""Serialization of factorizations and certificates.

Both formats are line-based UTF-8 with LF endings and a trailing newline, and
both parsers are strict: any accepted text re-serializes byte-identically.

HYPERFACTOR v1
n=<N> levels=<l1,l2,...>
{e1,e2,...} | {..} | ..          one line per factor
...

FARKAS v1
n=<N> levels=<l1,l2,...>
p/q p/q ...                      k exact rationals, space-separated
"""

from __future__ import annotations

import re
from fractions import Fraction

from .combinatorics import LevelSet, elements_of, mask_of, min_element
from .errors import FormatError
from .factorization import Factorization
from .linear_system import FarkasCertificate

FACTORIZATION_MAGIC = "HYPERFACTOR v1"
CERTIFICATE_MAGIC = "FARKAS v1"

_HEADER_RE = re.compile(r"^n=(\d+) levels=((?:\d+(?:,\d+)*)?)$")
_SET_RE = re.compile(r"^\{(\d+(?:,\d+)*)\}$")
_RATIONAL_RE = re.compile(r"^-?\d+(?:/\d+)?$")


def _set_text(mask: int) -> str:
    return "{" + ",".join(str(e) for e in elements_of(mask)) + "}"


def write_factorization(fact: Factorization) -> str:
    lines = [FACTORIZATION_MAGIC, f"n={fact.n} levels={','.join(map(str, fact.levels))}"]
    for factor in fact.factors:
        lines.append(" | ".join(_set_text(mask) for mask in factor))
    return "\n".join(lines) + "\n"


def _split_lines(text: str, magic: str) -> list[str]:
    if "\r" in text:
        raise FormatError("carriage returns are not allowed (LF endings only)")
    if not text.endswith("\n"):
        raise FormatError("missing trailing newline")
    lines = text.split("\n")[:-1]
    if not lines or lines[0] != magic:
        raise FormatError(f"line 1: expected {magic!r}")
    return lines


def _parse_header(line: str) -> tuple[int, tuple[int, ...]]:
    m = _HEADER_RE.match(line)
    if not m:
        raise FormatError(f"line 2: malformed header {line!r}")
    n = int(m.group(1))
    if not 1 <= n <= 64:
        raise FormatError(f"line 2: ground size n={n} out of range 1..64")
    levels = tuple(int(v) for v in m.group(2).split(",")) if m.group(2) else ()
    if any(a >= b for a, b in zip(levels, levels[1:])):
        raise FormatError(f"line 2: levels must be strictly increasing, got {levels}")
    return n, levels


def parse_factorization(text: str) -> Factorization:
    lines = _split_lines(text, FACTORIZATION_MAGIC)
    if len(lines) < 2:
        raise FormatError("line 2: missing header")
    n, levels = _parse_header(lines[1])
    factors: list[tuple[int, ...]] = []
    for no, line in enumerate(lines[2:], start=3):
        if not line:
            raise FormatError(f"line {no}: empty factor line")
        masks: list[int] = []
        for piece in line.split(" | "):
            m = _SET_RE.match(piece)
            if not m:
                raise FormatError(f"line {no}: malformed set {piece!r}")
            elems = [int(v) for v in m.group(1).split(",")]
            if any(a >= b for a, b in zip(elems, elems[1:])):
                raise FormatError(f"line {no}: elements not strictly ascending in {piece!r}")
            if elems[-1] > n:
                raise FormatError(f"line {no}: element {elems[-1]} exceeds n={n}")
            masks.append(mask_of(elems))
        mins = [min_element(mask) for mask in masks]
        if any(a >= b for a, b in zip(mins, mins[1:])):
            raise FormatError(f"line {no}: sets not ordered by minimum element")
        factors.append(tuple(masks))
    fact = Factorization(n, levels, tuple(factors))
    if write_factorization(fact) != text:
        # catches leading zeros and any other non-canonical spelling
        raise FormatError("factorization text is not in canonical form")
    return fact


def write_certificate(n: int, levels: LevelSet, cert: FarkasCertificate) -> str:
    values = " ".join(str(v) for v in cert.y)
    header = f"n={n} levels={','.join(map(str, levels.levels))}"
    return f"{CERTIFICATE_MAGIC}\n{header}\n{values}\n"


def parse_certificate(text: str) -> tuple[int, LevelSet, FarkasCertificate]:
    lines = _split_lines(text, CERTIFICATE_MAGIC)
    if len(lines) != 3:
        raise FormatError(f"expected exactly 3 lines, got {len(lines)}")
    n, level_tuple = _parse_header(lines[1])
    if not level_tuple:
        raise FormatError("line 2: certificate needs a non-empty level set")
    levels = LevelSet(level_tuple)
    fields = lines[2].split(" ")
    if len(fields) != levels.k:
        raise FormatError(f"line 3: expected k={levels.k} rationals, got {len(fields)}")
    values = []
    for f in fields:
        if not _RATIONAL_RE.match(f):
            raise FormatError(f"line 3: malformed rational {f!r}")
        values.append(Fraction(f))
    cert = FarkasCertificate(tuple(values))
    if write_certificate(n, levels, cert) != text:
        raise FormatError("certificate text is not in canonical form")
    return n, levels, cert


def save_text(text: str, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def load_text(path: str) -> str:
    with open(path, "r", encoding="utf-8", newline="") as fh:
        return fh.read()
