"""Matrix, permutation, and multiplication-table group engines."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from invar.groups import (
    MatF2,
    perm_cycle_type,
    MatrixGroup,
    PermGroup,
    SubgroupRef,
    act_on_poly,
    filter_by_cycle_type,
    perm_from_cycles,
    sylow2_ly_model,
)
from invar.invariants import gl_n_2, l3_2_on_2_4
from invar.poly import PolyRing, Polynomial

R3 = PolyRing(["x", "y", "z"])


def gl_order(n):
    return int(np.prod([(1 << n) - (1 << i) for i in range(n)]))


def test_matrix_group_orders():
    assert gl_n_2(2).order == gl_order(2) == 6
    assert gl_n_2(3).order == gl_order(3) == 168
    assert l3_2_on_2_4().order == 168


@st.composite
def small_polys(draw):
    exps = st.tuples(*([st.integers(0, 3)] * 3))
    return Polynomial(R3, draw(st.frozensets(exps, max_size=5)))


@given(small_polys(), small_polys())
@settings(max_examples=30)
def test_action_is_ring_homomorphism(p, q):
    for g in gl_n_2(3).generators:
        assert act_on_poly(g, p + q) == act_on_poly(g, p) + act_on_poly(g, q)
        assert act_on_poly(g, p * q) == act_on_poly(g, p) * act_on_poly(g, q)


@given(small_polys())
@settings(max_examples=30)
def test_action_is_a_group_action(p):
    G = gl_n_2(3)
    a, b = G.generators[0], G.generators[1]
    assert act_on_poly(a * b, p) == act_on_poly(a, act_on_poly(b, p))


def test_identity_acts_trivially():
    e = MatF2.identity(3)
    p = R3.var("x") * R3.var("y") + R3.var("z", 2)
    assert act_on_poly(e, p) == p


def test_perm_group_orders():
    assert PermGroup.symmetric(5).order == 120
    assert PermGroup.alternating(5).order == 60
    assert PermGroup.symmetric(8).order == 40320


def test_perm_from_cycles():
    # 1-based cycles, 0-based image tuple
    g = perm_from_cycles(4, [(1, 2), (3, 4)])
    assert tuple(g) == (1, 0, 3, 2)


def test_normalizer_of_cyclic_in_s4():
    S4 = PermGroup.symmetric(4)
    # <(1234)> has normalizer the dihedral group of order 8
    c4 = SubgroupRef(S4, [perm_from_cycles(4, [(1, 2, 3, 4)])])
    N = S4.normalizer(c4.as_perm_group())
    assert N.order == 8


def test_subgroup_conjugacy():
    S4 = PermGroup.symmetric(4)
    a = SubgroupRef(S4, [perm_from_cycles(4, [(1, 2)])]).as_perm_group()
    b = SubgroupRef(S4, [perm_from_cycles(4, [(3, 4)])]).as_perm_group()
    ok, witness = S4.are_conjugate(a, b)
    assert ok and witness is not None
    klein = SubgroupRef(
        S4,
        [perm_from_cycles(4, [(1, 2), (3, 4)]),
         perm_from_cycles(4, [(1, 3), (2, 4)])],
    ).as_perm_group()
    assert not S4.are_conjugate(a, klein)[0]


def test_filter_by_cycle_type():
    S4 = PermGroup.symmetric(4)
    found = filter_by_cycle_type(S4, (2, 2))
    assert found  # the regular Klein four-group shows up
    for ref, _label in found:
        for x in ref.elems:
            if tuple(x) != tuple(range(4)):
                assert perm_cycle_type(x) == (2, 2)


def test_sylow_model_basics():
    G = sylow2_ly_model()
    assert G.order == 256
    assert len(G.center()) == 2
    assert all(G.element_order(x) in (1, 2, 4, 8) for x in list(G.elements)[:32])


def test_sylow_model_is_a_group():
    G = sylow2_ly_model()
    elems = list(G.elements)[:8]
    for a in elems:
        for b in elems:
            assert G.op(a, b) in set(G.elements)
