"""Planar diagram (PD) construction for rational tangles and Montesinos closures.

A PD code lists crossings as quadruples of edge identifiers in
counterclockwise order, with the strand through slots 0 and 2 passing
under the strand through slots 1 and 3.  Tangles carry four open ends
labelled NW, NE, SW, SE; twist regions are appended on the east side
(horizontal) or the south side (vertical), which realizes the
all-positive continued fraction expansion as an alternating diagram.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DegenerateTangleError, InvalidDiagramError, OrientationError
from .ratfrac import INFINITY, cf_canonical, is_degenerate

__all__ = [
    "PDCode",
    "Tangle4",
    "tangle_pd",
    "montesinos_pd",
    "numerator_closure",
    "count_components",
    "writhe",
    "is_alternating",
    "pd_text",
]


@dataclass(frozen=True)
class PDCode:
    """A closed diagram: crossings plus crossingless free loops."""

    crossings: tuple[tuple[int, int, int, int], ...]
    free_loops: int = 0

    def __post_init__(self):
        counts: dict[int, int] = {}
        for quad in self.crossings:
            for e in quad:
                counts[e] = counts.get(e, 0) + 1
        bad = [e for e, c in counts.items() if c != 2]
        if bad:
            raise InvalidDiagramError(f"edges with incidence != 2: {sorted(bad)}")


@dataclass(frozen=True)
class Tangle4:
    """A tangle fragment with four open ends."""

    crossings: tuple[tuple[int, int, int, int], ...]
    nw: int
    ne: int
    sw: int
    se: int

    @property
    def boundary(self) -> tuple[int, int, int, int]:
        return (self.nw, self.ne, self.sw, self.se)


class _Builder:
    """Mutable tangle under construction."""

    def __init__(self, start: str, first_edge: int = 1):
        self.crossings: list[list[int]] = []
        self._next = first_edge + 2
        a, b = first_edge, first_edge + 1
        if start == "zero":
            self.nw, self.ne, self.sw, self.se = a, a, b, b
        elif start == "infinity":
            self.nw, self.ne, self.sw, self.se = a, b, a, b
        else:  # pragma: no cover
            raise ValueError(start)

    def _new_edge(self) -> int:
        e = self._next
        self._next += 1
        return e

    def twist_east(self, count: int, sign: int) -> None:
        """Append ``count`` horizontal crossings at the NE/SE ends."""
        for _ in range(count):
            a, b = self.ne, self.se
            c, d = self._new_edge(), self._new_edge()
            # positions: a=TL, b=BL, d=BR, c=TR; strands a-d and b-c
            if sign > 0:
                self.crossings.append([a, b, d, c])  # a-d under
            else:
                self.crossings.append([b, d, c, a])  # b-c under
            self.ne, self.se = c, d

    def twist_south(self, count: int, sign: int) -> None:
        """Append ``count`` vertical crossings at the SW/SE ends."""
        for _ in range(count):
            a, b = self.sw, self.se
            c, d = self._new_edge(), self._new_edge()
            # positions: a=TL, b=TR, c=BL, d=BR; strands a-d and b-c
            if sign > 0:
                self.crossings.append([a, c, d, b])  # a-d under
            else:
                self.crossings.append([b, a, c, d])  # b-c under
            self.sw, self.se = c, d

    def relabel(self, old: int, new: int) -> None:
        for quad in self.crossings:
            for i, e in enumerate(quad):
                if e == old:
                    quad[i] = new
        for attr in ("nw", "ne", "sw", "se"):
            if getattr(self, attr) == old:
                setattr(self, attr, new)

    def absorb(self, other: "Tangle4") -> "Tangle4":
        """Return a copy of ``other`` relabelled into fresh edge ids."""
        mapping: dict[int, int] = {}

        def remap(e: int) -> int:
            if e not in mapping:
                mapping[e] = self._new_edge()
            return mapping[e]

        crossings = tuple(tuple(remap(e) for e in quad) for quad in other.crossings)
        return Tangle4(crossings, remap(other.nw), remap(other.ne),
                       remap(other.sw), remap(other.se))

    def to_tangle(self) -> Tangle4:
        return Tangle4(tuple(tuple(q) for q in self.crossings),
                       self.nw, self.ne, self.sw, self.se)


def tangle_pd(f: Fraction) -> Tangle4:
    """Alternating twist-region diagram of the rational tangle ``f``.

    Blocks follow the canonical expansion of ``|f|``; the sign of ``f``
    sets the sense of every crossing.  Crossing count equals the tangle
    crossing number.
    """
    if is_degenerate(f):
        raise DegenerateTangleError(f"no twist diagram for tangle {f!r}")
    terms, leading_zero = cf_canonical(f)
    if leading_zero:
        terms = (0,) + terms
    sign = 1 if f > 0 else -1
    m = len(terms)
    # block i (1-based) is horizontal when i is odd; build inside out
    innermost_horizontal = m % 2 == 1
    b = _Builder("zero" if innermost_horizontal else "infinity")
    for i in range(m, 0, -1):
        if i % 2 == 1:
            b.twist_east(terms[i - 1], sign)
        else:
            b.twist_south(terms[i - 1], sign)
    return b.to_tangle()


class _OpenDiagram:
    """Working form for gluing tangle ends together."""

    def __init__(self, t: Tangle4):
        self.crossings = [list(q) for q in t.crossings]
        self.nw, self.ne, self.sw, self.se = t.boundary
        self.free_loops = 0
        ids = {e for q in self.crossings for e in q} | set(t.boundary)
        self._next = max(ids) + 1

    def glue(self, end_a: str, end_b: str) -> None:
        x, y = getattr(self, end_a), getattr(self, end_b)
        if x == y:
            present = any(x in q for q in self.crossings)
            if present:
                raise InvalidDiagramError("closing an arc with dangling crossings")
            self.free_loops += 1
            return
        for quad in self.crossings:
            for i, e in enumerate(quad):
                if e == y:
                    quad[i] = x
        for attr in ("nw", "ne", "sw", "se"):
            if getattr(self, attr) == y:
                setattr(self, attr, x)

    def append_tangle(self, t: Tangle4) -> None:
        """Tangle sum: glue ``t`` to the east of the current diagram."""
        mapping: dict[int, int] = {}

        def remap(e: int) -> int:
            if e not in mapping:
                mapping[e] = self._next
                self._next += 1
            return mapping[e]

        extra = [[remap(e) for e in quad] for quad in t.crossings]
        nw2, ne2 = remap(t.nw), remap(t.ne)
        sw2, se2 = remap(t.sw), remap(t.se)
        self.crossings.extend(extra)
        old_ne, old_se = self.ne, self.se
        self.ne, self.se = ne2, se2
        # join old NE to new NW, old SE to new SW
        self._unify(old_ne, nw2)
        self._unify(old_se, sw2)

    def _unify(self, x: int, y: int) -> None:
        if x == y:
            raise InvalidDiagramError("degenerate tangle sum joint")
        for quad in self.crossings:
            for i, e in enumerate(quad):
                if e == y:
                    quad[i] = x
        for attr in ("nw", "ne", "sw", "se"):
            if getattr(self, attr) == y:
                setattr(self, attr, x)

    def twist_east(self, count: int, sign: int) -> None:
        for _ in range(count):
            a, b = self.ne, self.se
            c, d = self._next, self._next + 1
            self._next += 2
            if sign > 0:
                self.crossings.append([a, b, d, c])
            else:
                self.crossings.append([b, d, c, a])
            self.ne, self.se = c, d

    def close(self) -> PDCode:
        self.glue("nw", "ne")
        self.glue("sw", "se")
        return PDCode(tuple(tuple(q) for q in self.crossings), self.free_loops)


def numerator_closure(t: Tangle4) -> PDCode:
    """Join NW to NE and SW to SE."""
    return _OpenDiagram(t).close()


def montesinos_pd(code) -> PDCode:
    """Numerator closure of the side-by-side sum of the code's tangles,
    with ``|e|`` extra horizontal half-twists when ``e`` is nonzero."""
    tangles = [tangle_pd(f) for f in code.tangles]
    d = _OpenDiagram(tangles[0])
    for t in tangles[1:]:
        d.append_tangle(t)
    if code.e:
        d.twist_east(abs(code.e), 1 if code.e > 0 else -1)
    return d.close()


def count_components(pd: PDCode) -> int:
    """Closed strands under the transition e0->e2, e1->e3, plus free loops."""
    parent: dict[int, int] = {}

    def find(x: int) -> int:
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    for quad in pd.crossings:
        for e in quad:
            parent.setdefault(e, e)
    for e0, e1, e2, e3 in pd.crossings:
        parent[find(e0)] = find(e2)
        parent[find(e1)] = find(e3)
    roots = {find(e) for e in parent}
    return len(roots) + pd.free_loops


def _traverse(pd: PDCode):
    """Split the diagram into closed strands.

    Yields one list per component of arrival occurrences ``(ci, slot)``:
    the strand enters crossing ``ci`` through ``slot`` and leaves through
    the opposite slot.  Start points and directions are fixed
    deterministically.
    """
    occ_of_edge: dict[int, list[tuple[int, int]]] = {}
    for ci, quad in enumerate(pd.crossings):
        for slot, e in enumerate(quad):
            occ_of_edge.setdefault(e, []).append((ci, slot))
    for e, occs in occ_of_edge.items():
        if len(occs) != 2:
            raise InvalidDiagramError(f"edge {e} has incidence {len(occs)}")

    def partner(ci: int, slot: int) -> tuple[int, int]:
        e = pd.crossings[ci][slot]
        a, b = occ_of_edge[e]
        return b if (ci, slot) == a else a

    # a passage is a crossing plus a strand axis: slots 0/2 (under) or 1/3
    # (over); visiting passages rather than slots walks each closed strand
    # exactly once, in a deterministic direction
    visited: set[tuple[int, int]] = set()
    for start_ci in range(len(pd.crossings)):
        for start_slot in (0, 1):
            if (start_ci, start_slot % 2) in visited:
                continue
            component = []
            ci, slot = start_ci, start_slot
            while (ci, slot % 2) not in visited:
                visited.add((ci, slot % 2))
                component.append((ci, slot))
                out_slot = (slot + 2) % 4
                ci, slot = partner(ci, out_slot)
            yield component


def writhe(pd: PDCode) -> int:
    """Sum of crossing signs for a single-component diagram."""
    components = list(_traverse(pd))
    if len(components) + pd.free_loops != 1:
        raise OrientationError(
            f"writhe needs a single component, found {len(components) + pd.free_loops}"
        )
    if not pd.crossings:
        return 0
    out_under: dict[int, int] = {}
    out_over: dict[int, int] = {}
    for ci, slot in components[0]:
        out_slot = (slot + 2) % 4
        if slot in (0, 2):
            out_under[ci] = out_slot
        else:
            out_over[ci] = out_slot
    total = 0
    for ci in range(len(pd.crossings)):
        total += 1 if (out_under[ci] + 1) % 4 == out_over[ci] else -1
    return total


def is_alternating(pd: PDCode) -> bool:
    """True when every strand alternates under/over along its traversal."""
    for component in _traverse(pd):
        passes = [slot in (0, 2) for _, slot in component]
        n = len(passes)
        if n == 0:
            continue
        if any(passes[i] == passes[(i + 1) % n] for i in range(n)):
            return False
    return True


def pd_text(pd: PDCode) -> str:
    """Stable text form: edges renumbered from 1 in traversal order."""
    relabel: dict[int, int] = {}
    nxt = 1
    for component in _traverse(pd):
        for ci, slot in component:
            e = pd.crossings[ci][slot]
            if e not in relabel:
                relabel[e] = nxt
                nxt += 1
    terms = [
        "X(%d,%d,%d,%d)" % tuple(relabel[e] for e in quad) for quad in pd.crossings
    ]
    terms.extend(["O"] * pd.free_loops)
    return ";".join(terms)
