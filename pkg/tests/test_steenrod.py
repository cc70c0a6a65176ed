"""Steenrod squares on GF(2) polynomial algebras: instability axioms,
the Cartan formula, and naturality under linear substitution."""

import pytest
from hypothesis import given, settings, strategies as st

from invar.groups import act_on_poly
from invar.invariants import gl_n_2
from invar.poly import PolyRing, Polynomial
from invar.steenrod import sq, sq_word, total_square

R = PolyRing(["x", "y", "z"])


@st.composite
def polys(draw, max_exp=3, max_terms=5):
    exps = st.tuples(*([st.integers(0, max_exp)] * R.nvars))
    return Polynomial(R, draw(st.frozensets(exps, max_size=max_terms)))


@st.composite
def homogeneous(draw, degree=None):
    p = draw(polys())
    d = draw(st.integers(0, 6)) if degree is None else degree
    return p.homogeneous_component(d)


@given(homogeneous())
def test_sq0_is_identity(p):
    assert sq(0, p) == p


@given(homogeneous())
def test_top_square_is_frobenius(p):
    if p.terms:
        assert sq(p.degree(), p) == p * p


@given(homogeneous())
def test_squares_vanish_above_degree(p):
    if p.terms:
        d = p.degree()
        assert sq(d + 1, p) == R.zero()
        assert sq(d + 3, p) == R.zero()


@given(polys(), polys())
@settings(max_examples=50)
def test_cartan_formula(p, q):
    assert total_square(p * q) == total_square(p) * total_square(q)


@given(homogeneous())
def test_total_square_sums_components(p):
    if p.terms:
        d = p.degree()
        total = total_square(p)
        assert total == sum(
            (sq(k, p) for k in range(d + 1)), R.zero()
        )


@given(homogeneous())
@settings(max_examples=40)
def test_sq1_squared_is_zero(p):
    assert sq(1, sq(1, p)) == R.zero()


@given(homogeneous())
@settings(max_examples=40)
def test_naturality_under_linear_substitution(p):
    for g in gl_n_2(3).generators:
        assert act_on_poly(g, total_square(p)) == total_square(act_on_poly(g, p))


def test_sq_on_variables():
    x = R.var("x")
    assert sq(1, x) == x * x
    assert sq(1, x * x) == R.zero()  # Sq^1 is a derivation; char 2


def test_sq1_derivation():
    x, y = R.var("x"), R.var("y")
    p, q = x * y, x + y
    assert sq(1, p * q) == sq(1, p) * q + p * sq(1, q)


def test_sq_word_composes_rightmost_first():
    x, y = R.var("x"), R.var("y")
    p = x * y
    assert sq_word((2, 1), p) == sq(2, sq(1, p))


def test_known_expansion():
    p = R.parse("x^2+x*y+y^2")
    assert sq(1, p) == R.parse("x^2*y+x*y^2")


def test_requires_degree_one_generators():
    weighted = PolyRing(["a", "b"], degrees=[2, 3])
    with pytest.raises((ValueError, AssertionError)):
        total_square(weighted.var("a"))
