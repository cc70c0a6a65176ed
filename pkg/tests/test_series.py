"""Poincaré series arithmetic, ring descriptors, and detection sequences."""

import pytest
from hypothesis import given, settings, strategies as st

from invar.poly import PolyRing
from invar.series import (
    DetectionSequence,
    PoincareSeries,
    RingDescriptor,
    verify_detection,
    verify_ring_map,
)

deg_lists = st.lists(st.integers(1, 6), min_size=1, max_size=3)
sec_lists = st.lists(st.integers(0, 8), min_size=1, max_size=4)


def test_free_series_geometric():
    s = PoincareSeries.free([1])
    assert s.expand(5) == [1] * 6
    s2 = PoincareSeries.free([2, 3])
    # partitions into parts of size 2 and 3
    assert s2.expand(6) == [1, 0, 1, 1, 1, 1, 2]


@given(deg_lists, sec_lists)
@settings(max_examples=40)
def test_free_series_shifts(prim, secs):
    s = PoincareSeries.free(prim, secs)
    base = PoincareSeries.free(prim)
    total = sum(
        (PoincareSeries.monomial(d) * base for d in secs),
        PoincareSeries(0),
    )
    assert s == total
    assert s.expand(12) == total.expand(12)


@given(deg_lists, deg_lists)
@settings(max_examples=40)
def test_arithmetic_consistency(pa, pb):
    a, b = PoincareSeries.free(pa), PoincareSeries.free(pb)
    bound = 10
    add = (a + b).expand(bound)
    sub = (a - b).expand(bound)
    mul = (a * b).expand(bound)
    ea, eb = a.expand(bound), b.expand(bound)
    assert add == [x + y for x, y in zip(ea, eb)]
    assert sub == [x - y for x, y in zip(ea, eb)]
    assert mul == [
        sum(ea[i] * eb[d - i] for i in range(d + 1)) for d in range(bound + 1)
    ]


def test_rational_function_equality_reduces():
    # (1 - t^4)/(1 - t^2) = 1 + t^2
    lhs = PoincareSeries({0: 1, 4: -1}, (2,))
    rhs = PoincareSeries({0: 1, 2: 1})
    assert lhs == rhs
    assert lhs != rhs + PoincareSeries.monomial(3)


def test_telescoping_identity():
    # 1/(1-t^2) + t/(1-t^2) = 1/(1-t)
    half = PoincareSeries.free([2])
    assert half + PoincareSeries.monomial(1) * half == PoincareSeries.free([1])


def test_descriptor_series():
    free = RingDescriptor.free([2, 3], [0, 5], name="f")
    assert free.series() == PoincareSeries.free([2, 3], [0, 5])
    annotated = RingDescriptor(
        "annotated", name="a", series=PoincareSeries.free([1])
    )
    assert annotated.series() == PoincareSeries.free([1])


def test_verify_ring_map():
    src = RingDescriptor.presented(
        generators=[("a", 1), ("b", 2)],
        relations=["a^2+b", "a*b+a^3"],
        name="tiny",
    )
    ring = PolyRing(["x", "y"])
    x = ring.var("x")
    good = verify_ring_map(src, {"a": x, "b": x * x}, ring)
    assert good["ok"] and all(r["ok"] for r in good["relations"])
    bad = verify_ring_map(src, {"a": x, "b": ring.var("y")}, ring)
    assert not bad["ok"]


def test_verify_ring_map_requires_all_images():
    src = RingDescriptor.presented(
        generators=[("a", 1), ("b", 2)], relations=["a^2+b"], name="tiny"
    )
    ring = PolyRing(["x"])
    with pytest.raises(ValueError):
        verify_ring_map(src, {"a": ring.var("x")}, ring)


def test_verify_detection_exact():
    # middle = detector_0 + detector_1 - quotient holds exactly when the
    # middle is annotated with precisely that series
    d0 = RingDescriptor.free([2], name="d0")
    d1 = RingDescriptor.free([3], name="d1")
    q = RingDescriptor.free([6], name="q")
    middle = RingDescriptor(
        "annotated", name="m",
        series=d0.series() + d1.series() - q.series(),
    )
    seq = DetectionSequence("toy", detectors=[d0, d1], quotient=q,
                            middle=middle)
    rep = verify_detection(seq, bound=30)
    assert rep["ok"] and rep["exact"] and rep["first_mismatch"] is None


def test_verify_detection_nonnegative_only():
    d0 = RingDescriptor.free([2], name="d0")
    d1 = RingDescriptor.free([3], name="d1")
    q = RingDescriptor.free([6], name="q")
    seq = DetectionSequence("toy", detectors=[d0, d1], quotient=q)
    rep = verify_detection(seq, bound=30)
    assert rep["ok"] and rep["nonnegative"]


def test_verify_detection_flags_negative():
    d0 = RingDescriptor.free([2], name="d0")
    q = RingDescriptor.free([1], name="q")  # bigger than the detectors
    seq = DetectionSequence("bad", detectors=[d0, d0], quotient=q)
    rep = verify_detection(seq, bound=30)
    assert not rep["nonnegative"]
    assert not rep["ok"]
