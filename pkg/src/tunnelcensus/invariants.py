"""Exact Kauffman bracket, Jones polynomial and determinant from PD codes.

The bracket is a plain 2^n state sum; the census diagrams stay at or
below 12 crossings so no skein recursion is needed.  All arithmetic is
exact integer arithmetic on sparse Laurent polynomials.
"""

from __future__ import annotations

from math import isqrt

from .diagram import PDCode, writhe
from .errors import ComplexityLimitError, InternalConsistencyError

__all__ = [
    "LaurentPolynomial",
    "kauffman_bracket",
    "jones",
    "determinant",
    "mirror_canonical",
]

CROSSING_CAP = 16


class LaurentPolynomial:
    """Sparse integer Laurent polynomial in a single tagged variable."""

    __slots__ = ("var", "coeffs")

    def __init__(self, coeffs=None, var="t"):
        self.var = var
        self.coeffs = {e: c for e, c in (coeffs or {}).items() if c}

    @classmethod
    def constant(cls, c, var="t"):
        return cls({0: c}, var)

    @classmethod
    def monomial(cls, coef, exp, var="t"):
        return cls({exp: coef}, var)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            return self.coeffs == ({0: other} if other else {})
        return (isinstance(other, LaurentPolynomial)
                and self.var == other.var and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.var, frozenset(self.coeffs.items())))

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPolynomial.constant(other, self.var)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return LaurentPolynomial(out, self.var)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial({e: -c for e, c in self.coeffs.items()}, self.var)

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPolynomial.constant(other, self.var)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPolynomial(
                {e: c * other for e, c in self.coeffs.items()}, self.var)
        out: dict[int, int] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPolynomial(out, self.var)

    __rmul__ = __mul__

    def shift(self, k):
        """Multiply by var**k."""
        return LaurentPolynomial({e + k: c for e, c in self.coeffs.items()}, self.var)

    def mirror(self):
        """Substitute var -> var**-1."""
        return LaurentPolynomial({-e: c for e, c in self.coeffs.items()}, self.var)

    def eval_at_minus_one(self) -> int:
        return sum(c if e % 2 == 0 else -c for e, c in self.coeffs.items())

    def sort_key(self):
        return tuple(sorted(self.coeffs.items()))

    def terms(self):
        """(exponent, coefficient) pairs by ascending exponent."""
        return sorted(self.coeffs.items())

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for e, c in self.terms():
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                head = "" if mag == 1 else f"{mag}*"
                power = "" if e == 1 else f"^{e}"
                body = f"{head}{self.var}{power}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = (first_sign if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += sign + body
        return text

    def __repr__(self):
        return f"LaurentPolynomial({str(self)!r}, var={self.var!r})"


def _delta_powers(max_power: int) -> list[dict[int, int]]:
    """Powers of the loop value delta = -A^2 - A^-2, as coeff dicts."""
    powers = [{0: 1}]
    delta = {2: -1, -2: -1}
    for _ in range(max_power):
        prev = powers[-1]
        nxt: dict[int, int] = {}
        for e1, c1 in prev.items():
            for e2, c2 in delta.items():
                e = e1 + e2
                nxt[e] = nxt.get(e, 0) + c1 * c2
        powers.append(nxt)
    return powers


def kauffman_bracket(pd: PDCode) -> LaurentPolynomial:
    """State-sum bracket polynomial in the variable A."""
    n = len(pd.crossings)
    if n > CROSSING_CAP:
        raise ComplexityLimitError(
            f"{n} crossings exceeds the state-sum cap of {CROSSING_CAP}")
    edge_ids = sorted({e for quad in pd.crossings for e in quad})
    index = {e: i for i, e in enumerate(edge_ids)}
    m = len(edge_ids)
    # smoothing A joins slots (0,3) and (1,2); B joins (0,1) and (2,3)
    # (fixed so that a positive-writhe curl contributes -A^3)
    pairs_a = []
    pairs_b = []
    for e0, e1, e2, e3 in pd.crossings:
        pairs_a.append((index[e0], index[e3], index[e1], index[e2]))
        pairs_b.append((index[e0], index[e1], index[e2], index[e3]))
    powers = _delta_powers(m + pd.free_loops + 1)
    if n == 0:
        return LaurentPolynomial(powers[max(pd.free_loops - 1, 0)], var="A")
    acc: dict[int, int] = {}
    parent = list(range(m))

    def find(x):
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    for state in range(1 << n):
        for i in range(m):
            parent[i] = i
        bits = state
        b_count = 0
        for ci in range(n):
            if bits & 1:
                x0, x1, x2, x3 = pairs_b[ci]
                b_count += 1
            else:
                x0, x1, x2, x3 = pairs_a[ci]
            bits >>= 1
            r1, r2 = find(x0), find(x1)
            if r1 != r2:
                parent[r1] = r2
            r1, r2 = find(x2), find(x3)
            if r1 != r2:
                parent[r1] = r2
        loops = sum(1 for i in range(m) if find(i) == i) + pd.free_loops
        shift = n - 2 * b_count  # a - b
        for e, c in powers[loops - 1].items():
            key = e + shift
            acc[key] = acc.get(key, 0) + c
    return LaurentPolynomial(acc, var="A")


def jones(pd: PDCode) -> LaurentPolynomial:
    """Writhe-normalized bracket re-expressed in t = A^-4."""
    w = writhe(pd)
    bracket = kauffman_bracket(pd)
    normalized = bracket.shift(-3 * w)
    if w % 2 == 1:
        normalized = -normalized
    coeffs: dict[int, int] = {}
    for e, c in normalized.coeffs.items():
        if e % 4 != 0:
            raise InternalConsistencyError(
                f"bracket exponent {e} not divisible by 4 after normalization")
        coeffs[-e // 4] = c
    return LaurentPolynomial(coeffs, var="t")


def determinant(pd: PDCode) -> int:
    """|V(-1)|, computed from the bracket in Z[zeta_8].

    Evaluating at A^4 = -1 makes the writhe factor a unit, so the
    modulus of the reduced bracket is the determinant.  This works for
    any number of components.
    """
    bracket = kauffman_bracket(pd)
    z = [0, 0, 0, 0]
    for e, c in bracket.coeffs.items():
        q, r = divmod(e, 8)
        del q
        if r >= 4:
            z[r - 4] -= c
        else:
            z[r] += c
    # conjugate: A^k -> A^(8-k), reduced by A^4 = -1
    zbar = [z[0], -z[3], -z[2], -z[1]]
    prod = [0] * 7
    for i in range(4):
        for j in range(4):
            prod[i + j] += z[i] * zbar[j]
    reduced = [prod[k] - (prod[k + 4] if k + 4 < 7 else 0) for k in range(4)]
    if any(reduced[1:]):
        raise InternalConsistencyError(
            f"determinant norm not rational: {reduced}")
    norm = reduced[0]
    root = isqrt(norm)
    if root * root != norm:
        raise InternalConsistencyError(f"determinant norm {norm} not a square")
    return root


def mirror_canonical(p: LaurentPolynomial) -> LaurentPolynomial:
    """The smaller of p(t) and p(1/t) under a fixed total order."""
    q = p.mirror()
    return p if p.sort_key() <= q.sort_key() else q
