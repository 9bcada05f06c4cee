"""Montesinos codes: canonical form, enumeration, structural predicates.

A code M(e; b1/a1, ..., br/ar) is the numerator closure of r side-by-side
rational tangles followed by e extra horizontal half-twists.  Moving an
integer k out of a tangle and into e is an isotopy, as are cyclic
rotation of the tangle sequence, reversal, and mirroring (which negates
e and all tangles).  The canonical representative normalizes every
tangle into (0, 1) and takes the lexicographic minimum over the orbit of
those moves, so equal canonical codes mean equal links up to mirror.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator

from . import diagram
from .errors import MalformedCodeError
from .ratfrac import compositions, crossing_number, enumerate_rational_tangles

__all__ = [
    "MontesinosCode",
    "MontesinosInfo",
    "canonicalize",
    "structural_flags",
    "enumerate_montesinos_knots",
    "minimal_crossing_number",
    "is_alternating_knot",
    "format_code",
    "parse_code",
]


@dataclass(frozen=True, order=True)
class MontesinosCode:
    e: int
    tangles: tuple[Fraction, ...]

    def __post_init__(self):
        for f in self.tangles:
            if not isinstance(f, Fraction) or f.denominator < 2:
                raise MalformedCodeError(
                    f"tangle {f!r} is not a non-integer fraction")

    @property
    def r(self) -> int:
        return len(self.tangles)


def format_code(code: MontesinosCode) -> str:
    body = ", ".join(f"{f.numerator}/{f.denominator}" for f in code.tangles)
    return f"M({code.e}; {body})"


def parse_code(text: str) -> MontesinosCode:
    """Parse the ``M(e; b1/a1, ..., br/ar)`` rendering."""
    s = text.strip()
    if not (s.startswith("M(") and s.endswith(")")):
        raise MalformedCodeError(f"not a Montesinos code: {text!r}")
    inner = s[2:-1]
    if ";" in inner:
        e_part, _, tail = inner.partition(";")
        e = int(e_part.strip())
    else:
        e, tail = 0, inner
    tangles = []
    for piece in tail.split(","):
        piece = piece.strip()
        if not piece:
            continue
        num, _, den = piece.partition("/")
        tangles.append(Fraction(int(num), int(den) if den else 1))
    return MontesinosCode(e, tuple(tangles))


def _normalized(e: int, tangles: Iterable[Fraction]) -> tuple[int, tuple[Fraction, ...]]:
    """Push every tangle into (0, 1), compensating through e."""
    out = []
    for f in tangles:
        k = math.floor(f)
        out.append(f - k)
        e += k
    return e, tuple(out)


def _orbit_key(seq: tuple[Fraction, ...]):
    return tuple((f.numerator, f.denominator) for f in seq)


def canonicalize(code: MontesinosCode) -> MontesinosCode:
    """Canonical representative under normalization, rotation, reversal
    and mirror."""
    e, tangles = _normalized(code.e, code.tangles)
    mirror_e, mirror_tangles = _normalized(-e, tuple(-f for f in tangles))
    best = None
    for base_e, base in ((e, tangles), (mirror_e, mirror_tangles)):
        for seq in (base, base[::-1]):
            r = len(seq)
            for shift in range(r):
                rot = seq[shift:] + seq[:shift]
                key = (_orbit_key(rot), base_e)
                if best is None or key < best[0]:
                    best = (key, MontesinosCode(base_e, rot))
    return best[1]


@dataclass(frozen=True)
class MontesinosInfo:
    code: MontesinosCode
    r: int
    alpha_gcd: int
    is_clasp: bool
    lackenby_form: bool
    diagram_crossings: int


def structural_flags(code: MontesinosCode, diagram_crossings: int | None = None) -> MontesinosInfo:
    """Structural predicates of a canonical code."""
    dens = [f.denominator for f in code.tangles]
    alpha = math.gcd(*dens)
    halves = sum(1 for d in dens if d == 2)
    clasp = halves == 1
    lackenby = (code.r == 3 and clasp
                and all(d % 2 == 1 for d in dens if d != 2))
    if diagram_crossings is None:
        diagram_crossings = sum(crossing_number(f) for f in code.tangles) + abs(code.e)
    return MontesinosInfo(code, code.r, alpha, clasp, lackenby, diagram_crossings)


def _representations(code: MontesinosCode) -> Iterator[tuple[int, tuple[Fraction, ...], int]]:
    """All 2^r shift choices: each tangle kept in (0,1) or shifted to
    (-1,0), with e compensating.  Yields (e, tangles, crossings)."""
    e0, tangles = _normalized(code.e, code.tangles)
    r = len(tangles)
    costs = [(crossing_number(f), crossing_number(f - 1)) for f in tangles]
    for mask in range(1 << r):
        reps = []
        total = 0
        e = e0
        for i, f in enumerate(tangles):
            if mask >> i & 1:
                reps.append(f - 1)
                total += costs[i][1]
                e += 1
            else:
                reps.append(f)
                total += costs[i][0]
        yield e, tuple(reps), total + abs(e)


def minimal_crossing_number(code: MontesinosCode) -> int:
    """Fewest crossings over all diagrams of the code's link.

    Minimal Montesinos diagrams realize the crossing number, so the
    minimum over the shift representations is exact.
    """
    return min(c for _, _, c in _representations(code))


def is_alternating_knot(code: MontesinosCode) -> bool:
    """True when some minimal diagram of the code alternates.

    Alternating links only attain their crossing number on alternating
    diagrams, so scanning the minimal representations decides the class.
    """
    best = minimal_crossing_number(code)
    for e, reps, crossings in _representations(code):
        if crossings != best:
            continue
        pd = diagram.montesinos_pd(MontesinosCode(e, reps))
        if diagram.is_alternating(pd):
            return True
    return False


def _single_component(code: MontesinosCode) -> bool:
    return diagram.count_components(diagram.montesinos_pd(code)) == 1


def enumerate_montesinos_knots(n: int) -> tuple[MontesinosInfo, ...]:
    """All canonical single-component Montesinos codes whose enumerated
    diagram has exactly n crossings.

    Sweeps every composition of n into r >= 3 parts of size >= 2, takes
    the Cartesian product over the non-integer tangles of each RT(n_i),
    closes with e = 0, keeps one-component diagrams, and dedupes by
    canonical form.  Whether n is the minimal crossing number of the
    underlying knot is a separate question (see minimal_crossing_number).
    """
    if n < 1:
        raise ValueError("crossing count must be positive")
    import itertools

    seen: set[MontesinosCode] = set()
    for r in range(3, n // 2 + 1):
        for comp in compositions(n, parts=r, min_part=2):
            pools = [enumerate_rational_tangles(ni).noninteger for ni in comp]
            for tup in itertools.product(*pools):
                code = canonicalize(MontesinosCode(0, tup))
                seen.add(code)
    infos = [structural_flags(code, diagram_crossings=n)
             for code in sorted(seen) if _single_component(code)]
    return tuple(infos)
