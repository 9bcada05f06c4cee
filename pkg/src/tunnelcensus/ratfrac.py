"""Exact rational-tangle calculus.

A rational tangle is encoded by a reduced fraction beta/alpha
(``fractions.Fraction``); the infinity tangle 1/0 gets a dedicated
sentinel.  Continued fractions here are all-positive, with the canonical
form requiring the last term to be at least 2 unless there is only one
term.  The sum of the canonical terms is the tangle crossing number.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .errors import DegenerateTangleError, MalformedContinuedFractionError

__all__ = [
    "INFINITY",
    "TangleSet",
    "cf_eval",
    "cf_canonical",
    "crossing_number",
    "compositions",
    "enumerate_rational_tangles",
]


class _InfinityTangle:
    """Sentinel for the 1/0 tangle."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"


INFINITY = _InfinityTangle()


def is_degenerate(f) -> bool:
    """True for the zero tangle and the infinity sentinel."""
    return f is INFINITY or (isinstance(f, Fraction) and f == 0)


def cf_eval(terms: Sequence[int]) -> Fraction:
    """Evaluate a_1 + 1/(a_2 + 1/(... + 1/a_m)) exactly.

    Terms may be any nonzero integers (a leading zero is also accepted, to
    encode fractions below one).  Raises MalformedContinuedFractionError
    if a nested denominator vanishes.
    """
    if not terms:
        raise MalformedContinuedFractionError("empty continued fraction")
    value = Fraction(terms[-1])
    for a in reversed(terms[:-1]):
        if value == 0:
            raise MalformedContinuedFractionError(
                f"zero intermediate denominator in {list(terms)}"
            )
        value = a + 1 / value
    return value


def cf_canonical(f: Fraction) -> tuple[tuple[int, ...], bool]:
    """All-positive canonical expansion of ``|f|``.

    Returns ``(terms, leading_zero)``.  When ``|f| >= 1`` the flag is
    False and ``cf_eval(terms) == |f|``; when ``|f| < 1`` the flag is True
    and the terms expand the reciprocal, i.e. ``cf_eval((0,) + terms) == |f|``.
    The last term is >= 2 unless there is a single term.
    """
    if is_degenerate(f):
        raise DegenerateTangleError("zero and infinity tangles have no expansion")
    p, q = abs(f.numerator), f.denominator
    leading_zero = p < q
    if leading_zero:
        p, q = q, p
    terms = []
    while q:
        a, r = divmod(p, q)
        terms.append(a)
        p, q = q, r
    return tuple(terms), leading_zero


def crossing_number(f: Fraction) -> int:
    """Crossing number of the alternating minimal diagram of the tangle.

    Equals the sum of the canonical expansion terms; invariant under
    negation and reciprocal.
    """
    terms, _ = cf_canonical(f)
    return sum(terms)


def compositions(total: int, parts: int | None = None, min_part: int = 1) -> Iterator[tuple[int, ...]]:
    """Ordered compositions of ``total`` into parts >= ``min_part``.

    With ``parts`` given, only compositions of that exact length.
    """
    if parts is not None:
        if parts <= 0:
            if total == 0:
                yield ()
            return
        for first in range(min_part, total - min_part * (parts - 1) + 1):
            for rest in compositions(total - first, parts - 1, min_part):
                yield (first,) + rest
        return
    max_parts = total // min_part
    for k in range(1, max_parts + 1):
        yield from compositions(total, k, min_part)


@dataclass(frozen=True)
class TangleSet:
    """The set RT(l) of tangle fractions with crossing number exactly ``crossings``."""

    crossings: int
    fractions: tuple[Fraction, ...]

    def __contains__(self, f):
        return f in set(self.fractions)

    def __len__(self):
        return len(self.fractions)

    def __iter__(self):
        return iter(self.fractions)

    @property
    def noninteger(self) -> tuple[Fraction, ...]:
        return tuple(f for f in self.fractions if f.denominator > 1)


@lru_cache(maxsize=None)
def enumerate_rational_tangles(crossings: int) -> TangleSet:
    """All tangle fractions with the given crossing number.

    Evaluates every ordered composition, closes under reciprocal and
    negation, dedupes by exact value and filters by crossing number.
    """
    if crossings < 1:
        raise ValueError("crossing count must be positive")
    found: set[Fraction] = set()
    for comp in compositions(crossings):
        v = cf_eval(comp)
        candidates = [v, -v]
        if v != 0:
            candidates += [1 / v, -1 / v]
        found.update(candidates)
    kept = tuple(sorted(f for f in found if crossing_number(f) == crossings))
    return TangleSet(crossings, kept)
