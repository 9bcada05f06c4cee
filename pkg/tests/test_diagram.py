"""Planar-diagram construction, traversal, writhe and alternation."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from tunnelcensus.diagram import (
    PDCode,
    _Builder,
    count_components,
    is_alternating,
    montesinos_pd,
    numerator_closure,
    pd_text,
    tangle_pd,
    writhe,
)
from tunnelcensus.errors import (
    DegenerateTangleError,
    InvalidDiagramError,
    OrientationError,
)
from tunnelcensus.montesinos import MontesinosCode
from tunnelcensus.ratfrac import crossing_number, enumerate_rational_tangles


def closure(f: Fraction) -> PDCode:
    return numerator_closure(tangle_pd(f))


def curl_diagram(signs) -> PDCode:
    """Unknot with one curl per sign, built on the two ends of a
    vertical arc."""
    b = _Builder("infinity")
    for sign in signs:
        b.twist_east(1, sign)
    return numerator_closure(b.to_tangle())


# --- construction ----------------------------------------------------------

def test_pdcode_validates_incidence():
    with pytest.raises(InvalidDiagramError):
        PDCode(((1, 2, 3, 4),))  # every edge dangling
    PDCode(((1, 2, 1, 2),))  # closed up: fine


def test_tangle_pd_degenerate():
    with pytest.raises(DegenerateTangleError):
        tangle_pd(Fraction(0))


@given(st.integers(-80, 80).filter(bool), st.integers(1, 80))
@settings(max_examples=60, deadline=None)
def test_tangle_pd_crossing_count(num, den):
    f = Fraction(num, den)
    assert len(tangle_pd(f).crossings) == crossing_number(f)


def test_component_count_parity_samples():
    for crossings in range(1, 7):
        for f in enumerate_rational_tangles(crossings):
            want = 1 if f.numerator % 2 else 2
            assert count_components(closure(f)) == want, f


# --- writhe ----------------------------------------------------------------

def test_writhe_trefoils():
    assert writhe(closure(Fraction(3))) == 3
    assert writhe(closure(Fraction(-3))) == -3


def test_writhe_single_curls():
    assert writhe(curl_diagram([1])) == -1
    assert writhe(curl_diagram([-1])) == 1


def test_writhe_curl_and_mirror_cancel():
    pd = curl_diagram([1, -1])
    assert count_components(pd) == 1
    assert writhe(pd) == 0


def test_writhe_rejects_links():
    with pytest.raises(OrientationError):
        writhe(closure(Fraction(2)))  # Hopf link


# --- alternation -----------------------------------------------------------

def test_alternation():
    assert is_alternating(closure(Fraction(3)))
    assert is_alternating(closure(Fraction(5, 2)))
    assert not is_alternating(curl_diagram([1, -1]))


def test_tangle_diagrams_alternate():
    for crossings in range(1, 7):
        for f in enumerate_rational_tangles(crossings):
            assert is_alternating(closure(f)), f


# --- montesinos diagrams ---------------------------------------------------

def test_montesinos_pd_shape():
    code = MontesinosCode(0, (Fraction(2, 3), Fraction(2, 3),
                              Fraction(2, 3), Fraction(1, 3)))
    pd = montesinos_pd(code)
    assert len(pd.crossings) == 12
    assert count_components(pd) == 1


def test_montesinos_pd_with_twists():
    code = MontesinosCode(-1, (Fraction(1, 2), Fraction(1, 3), Fraction(1, 3)))
    pd = montesinos_pd(code)
    assert len(pd.crossings) == 2 + 3 + 3 + 1


def test_pretzel_component_counts():
    for r in (3, 4, 5):
        code = MontesinosCode(0, (Fraction(1, 2),) * r)
        assert count_components(montesinos_pd(code)) == r


# --- stable text form ------------------------------------------------------

def test_pd_text_goldens():
    assert pd_text(closure(Fraction(3))) == "X(1,4,2,5);X(5,2,6,3);X(3,6,4,1)"
    assert pd_text(closure(Fraction(-3))) == "X(1,5,2,4);X(5,3,6,2);X(3,1,4,6)"
    assert pd_text(PDCode((), free_loops=2)) == "O;O"


def test_pd_text_deterministic():
    a = pd_text(closure(Fraction(7, 3)))
    b = pd_text(closure(Fraction(7, 3)))
    assert a == b
