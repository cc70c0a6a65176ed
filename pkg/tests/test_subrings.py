"""Subalgebra slices, membership certificates, free-module presentations,
and the exact intersection machinery."""

import pytest

from invar.invariants import SliceContext, dickson
from invar.poly import PolyRing
from invar.series import PoincareSeries
from invar.subrings import (
    ModulePresentation,
    Subalgebra,
    integral_equation_check,
    intersect_subalgebras,
    module_intersection_ideals,
    reduce_generators,
    solve_generator_image,
)

R1 = PolyRing(["x"])
R2 = PolyRing(["w", "t"])


def test_subalgebra_dims_free_generators():
    x = R1.var("x")
    A = Subalgebra(R1, [x * x])
    assert A.dims(10) == PoincareSeries.free([2]).expand(10)


def test_subalgebra_dims_symmetric_pair():
    d = dickson(2, R2)
    A = Subalgebra(R2, [d[2], d[3]])
    assert A.dims(12) == PoincareSeries.free([2, 3]).expand(12)


def test_membership_certificate_expands():
    d = dickson(2, R2)
    A = Subalgebra(R2, [d[2], d[3]])
    p = d[2] * d[2] * d[2] + d[3] * d[3]
    ok, cert = A.membership(p)
    assert ok
    assert A.certificate_expansion(cert) == p
    w = R2.var("w")
    assert not A.membership(w)[0]


def test_module_generators_extend_subalgebra():
    x = R1.var("x")
    A = Subalgebra(R1, [x * x], [R1.one(), x * x * x])
    # F_2[x^2](1, x^3): dims 1,0,1,1,1,1,...
    assert A.dims(6) == [1, 0, 1, 1, 1, 1, 1]


def test_intersect_subalgebras():
    x = R1.var("x")
    A = Subalgebra(R1, [x * x])
    B = Subalgebra(R1, [x * x * x])
    C = Subalgebra(R1, [x ** 6])
    rep = intersect_subalgebras(A, B, 18, candidate=C)
    assert rep["candidate_ok"] and rep["first_mismatch"] is None
    assert rep["dims"] == PoincareSeries.free([6]).expand(18)


def test_intersect_candidate_mismatch_reported():
    x = R1.var("x")
    A = Subalgebra(R1, [x * x])
    B = Subalgebra(R1, [x * x * x])
    wrong = Subalgebra(R1, [x ** 4])
    rep = intersect_subalgebras(A, B, 12, candidate=wrong)
    assert not rep["candidate_ok"]
    assert rep["first_mismatch"] == 4


def tower_rank2():
    """F_2[w,t] as a free module over F_2[d_2,d_3] on basis {1, w, w^2}."""
    d = dickson(2, R2)
    w = R2.var("w")
    return ModulePresentation(
        R2,
        [("d_2", d[2]), ("d_3", d[3])],
        [("1", R2.one()), ("w", w), ("w^2", w * w)],
    )


def test_express_in_basis_and_expand_roundtrip():
    M = tower_rank2()
    w, t = R2.var("w"), R2.var("t")
    d = dickson(2, R2)
    p = d[2] * w * w + d[2] * d[2] + d[3] * w
    expr = M.express_in_basis(p)
    assert M.expand(expr) == p


def test_express_in_basis_rejects_nonmembers():
    M = ModulePresentation(
        R2,
        [("d_2", dickson(2, R2)[2]), ("d_3", dickson(2, R2)[3])],
        [("1", R2.one()), ("w", R2.var("w"))],
    )
    with pytest.raises(ValueError):
        # w^2 is not in F_2[d_2,d_3]{1, w}
        M.express_in_basis(R2.var("w", 2))


def test_known_cubic_expression():
    M = tower_rank2()
    w = R2.var("w")
    expr = M.express_in_basis(w ** 3)
    coeff = M.coeff_ring
    assert expr == {"1": coeff.var("d_3"), "w": coeff.var("d_2")}


def test_reduce_generators_drops_covered_multiples():
    M = tower_rank2()
    w = R2.var("w")
    d = dickson(2, R2)
    powers = [w ** k for k in range(6)]
    reduced, details = reduce_generators(powers, M)
    # every coefficient of w^3, w^4, w^5 lies in R, so the module they
    # generate over R is already covered by {1, w, w^2}
    assert reduced == [R2.one(), w, w * w]
    coeff = M.coeff_ring
    assert details[3]["expression"] == {"1": coeff.var("d_3"),
                                        "w": coeff.var("d_2")}
    assert not details[3]["retained"]


def test_module_intersection_ideals_toy():
    M = tower_rank2()
    w = R2.var("w")
    d = dickson(2, R2)
    # U generated by d_3*1 and d_2*w: meets V = R{1, w} in d_3(1) + d_2(w)
    rep = module_intersection_ideals(M, [d[3], d[2] * w], ["1", "w"])
    assert {k: [str(m) for m in v] for k, v in rep["ideals"].items()} == {
        "1": ["d_3"], "w": ["d_2"]
    }
    assert rep["generators"] == [d[3], d[2] * w]


def test_solve_generator_image():
    # relation a*c + b*c with a -> w, c -> t: solve b (degree 1); b = w
    ctx = SliceContext(R2)
    w, t = R2.var("w"), R2.var("t")
    sol = solve_generator_image("a*c+b*c", {"a": w, "c": t}, "b", 1, ctx)
    assert sol == w


def test_solve_generator_image_no_solution():
    ctx = SliceContext(R2)
    w, t = R2.var("w"), R2.var("t")
    with pytest.raises(ValueError):
        # t*b = w^2 has no polynomial solution b
        solve_generator_image("a+b*c", {"a": w * w, "c": t}, "b", 1, ctx)


def test_integral_equation_check():
    # z^4 + d_2 z^2 + d_3 z + (d_4 + d_2^2) = 0 in three variables
    R3 = PolyRing(["z", "t", "w"])
    from invar.invariants import embed

    z = R3.var("z")
    d2 = embed(dickson(2, R2)[2], R3)
    d3 = embed(dickson(2, R2)[3], R3)
    d4 = dickson(3, R3)[4]
    ok, remainder = integral_equation_check(
        z, {4: 1, 2: d2, 1: d3, 0: d4 + d2 * d2}
    )
    assert ok and not remainder.terms
    bad_ok, bad_rem = integral_equation_check(z, {4: 1, 0: d4})
    assert not bad_ok and bad_rem.terms
