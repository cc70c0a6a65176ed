"""Bit-packed GF(2) linear algebra against brute-force integer oracles."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from invar import gf2
from invar.gf2 import BitVectorSpace, EchelonAccumulator, solve_in_rowspan


def pack_masks(masks, ncols):
    """Pack rows given as python-int bitmasks (bit i = column i)."""
    rows = np.array(
        [[(m >> c) & 1 for c in range(ncols)] for m in masks], dtype=bool
    ).reshape(len(masks), ncols)
    return gf2.pack_bool(rows)


def brute_rank(masks):
    """Row rank over GF(2) using python-int elimination."""
    basis = []
    for m in masks:
        for b in basis:
            m = min(m, m ^ b)
        if m:
            basis.append(m)
            basis.sort(reverse=True)
    return len(basis)


def brute_span(masks):
    span = {0}
    for m in masks:
        span |= {s ^ m for s in span}
    return span


row_lists = st.lists(st.integers(0, (1 << 10) - 1), min_size=0, max_size=8)


@given(st.lists(st.booleans(), min_size=1, max_size=200))
def test_pack_unpack_roundtrip(bits):
    mat = np.array([bits], dtype=bool)
    packed = gf2.pack_bool(mat)
    assert np.array_equal(gf2.unpack_rows(packed, len(bits)), mat)


@given(row_lists)
def test_rank_matches_oracle(masks):
    ncols = 10
    packed = pack_masks(masks, ncols)
    assert gf2.rank(packed, ncols) == brute_rank(masks)


@given(row_lists, row_lists)
@settings(max_examples=60)
def test_space_operations_match_set_oracle(ma, mb):
    ncols = 10
    A = BitVectorSpace.from_rows(ncols, pack_masks(ma, ncols))
    B = BitVectorSpace.from_rows(ncols, pack_masks(mb, ncols))
    span_a, span_b = brute_span(ma), brute_span(mb)

    meet = A.intersect(B)
    join = A.add(B)
    assert (1 << meet.dim) == len(span_a & span_b)
    assert (1 << join.dim) == len(brute_span(ma + mb))
    # modular law on dimensions
    assert meet.dim + join.dim == A.dim + B.dim

    for m in list(span_a)[:16]:
        vec = pack_masks([m], ncols)[0]
        assert A.contains(vec)
        assert meet.contains(vec) == (m in span_b)


@given(row_lists, row_lists)
@settings(max_examples=40)
def test_containment_and_equality(ma, mb):
    ncols = 10
    A = BitVectorSpace.from_rows(ncols, pack_masks(ma, ncols))
    B = BitVectorSpace.from_rows(ncols, pack_masks(mb, ncols))
    both = A.add(B)
    assert both.contains_space(A) and both.contains_space(B)
    assert (A == B) == (brute_span(ma) == brute_span(mb))


@given(row_lists)
def test_echelon_accumulator_matches_space(masks):
    ncols = 10
    acc = EchelonAccumulator(ncols)
    for row in pack_masks(masks, ncols):
        acc.insert(row.copy())
    space = BitVectorSpace.from_rows(ncols, pack_masks(masks, ncols))
    assert acc.dim == space.dim
    assert acc.to_space() == space
    for m in masks:
        vec = pack_masks([m], ncols)[0]
        assert acc.contains(vec)
        assert not np.any(acc.residue(vec))


@given(row_lists, st.integers(0, 255))
@settings(max_examples=60)
def test_solve_in_rowspan(masks, picks):
    ncols = 10
    target = 0
    for i, m in enumerate(masks):
        if (picks >> i) & 1:
            target ^= m
    rows = pack_masks(masks, ncols)
    sol = solve_in_rowspan(rows, ncols, pack_masks([target], ncols)[0])
    assert sol is not None
    acc = 0
    for i in np.flatnonzero(sol):
        acc ^= masks[i]
    assert acc == target


def test_solve_in_rowspan_unsolvable():
    ncols = 4
    rows = pack_masks([0b0011, 0b0101], ncols)
    assert solve_in_rowspan(rows, ncols, pack_masks([0b1000], ncols)[0]) is None


def test_zero_and_full_space():
    z = BitVectorSpace.zero_space(12)
    f = BitVectorSpace.full_space(12)
    assert z.dim == 0 and f.dim == 12
    assert f.contains_space(z)
    assert f.intersect(z) == z
    assert f.add(z) == f


def test_wide_rows_cross_word_boundary():
    # pivots above bit 63 exercise the multi-word path
    ncols = 130
    masks = [1 << 127, (1 << 127) | (1 << 3), 1 << 64, 1]
    rows = np.zeros((len(masks), gf2.words_for(ncols)), dtype=np.uint64)
    for i, m in enumerate(masks):
        for c in range(ncols):
            if (m >> c) & 1:
                gf2.set_bit(rows[i], c)
    space = BitVectorSpace.from_rows(ncols, rows)
    assert space.dim == brute_rank(masks)
