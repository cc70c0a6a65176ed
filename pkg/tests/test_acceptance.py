"""End-to-end acceptance suite.

Thirteen headline verifications, each with exact (tolerance-free) expected
values and a wall-clock budget.  Everything is exercised through the public
package and CLI surfaces.
"""

import json
import time

import pytest

import invar.catalog as catalog
import invar.cli as cli
from invar.invariants import (
    A7_SERIES,
    dickson,
    relative_dickson_top,
    secondary_invariants,
)
from invar.poly import PolyRing
from invar.series import PoincareSeries, verify_detection

RANK4_DIMS = [1, 0, 0, 0, 1, 0, 1, 1, 3, 1, 2, 2, 5, 3]
PRIMARY_ONLY_DIMS = [1, 0, 0, 0, 1, 0, 1, 1, 2, 0, 1, 1, 3, 1]
SECONDARY_DEGREES = [0, 8, 9, 10, 11, 12, 13, 21]
TABLE_AFTER_2 = [1, 0, 0, 0, 1, 0, 1, 1, 3, 0, 1, 1, 4, 1]
TABLE_AFTER_3 = [1, 0, 0, 0, 1, 0, 1, 1, 3, 1, 1, 1, 4, 2]


class Budget:
    def __init__(self, seconds):
        self.seconds = seconds

    def __enter__(self):
        self.start = time.monotonic()
        return self

    def __exit__(self, *exc):
        if exc[0] is None:
            elapsed = time.monotonic() - self.start
            assert elapsed <= self.seconds, (
                "budget exceeded: %.1fs > %ds" % (elapsed, self.seconds)
            )


def run_cli(capsys, argv):
    code = cli.main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_criterion_01_rank4_invariant_dimensions(capsys):
    with Budget(60):
        code, rep = run_cli(capsys, [
            "invariants", "L3_2_on_2^4", "--degrees", "13", "--format", "json",
        ])
        assert code == 0
        assert rep["invariant_dims"] == RANK4_DIMS
        code, prim = run_cli(capsys, [
            "invariants", "L3_2_on_2^4", "--degrees", "13", "--primaries",
            "--format", "json",
        ])
        assert code == 0
        assert prim["primary_dims"] == PRIMARY_ONLY_DIMS
        assert prim["primary_degrees"] == [4, 6, 7, 8]


def test_criterion_02_secondary_discovery():
    with Budget(300):
        action = catalog.matrix_actions()["L3_2_on_2^4"]()
        prim = catalog.primaries_for("L3_2_on_2^4", action)
        dec, report = secondary_invariants(
            action, prim, bound=24, collect_tables=(13,)
        )
        assert sorted(report["secondary_degrees"]) == SECONDARY_DEGREES
        assert report["count"] == report["target"] == 8
        assert report["tables"][2][:14] == TABLE_AFTER_2
        assert report["tables"][3][:14] == TABLE_AFTER_3
        assert dec.series() == PoincareSeries.free([4, 6, 7, 8],
                                                   SECONDARY_DEGREES)


def test_criterion_03_steenrod_chain():
    with Budget(120):
        rep = catalog.secondary_chain_check()
        assert rep["ok"]
        by_name = {s["name"]: s for s in rep["steps"]}
        for name, degree, op, source in [
            ("a_9", 9, "Sq^1", "a_8"),
            ("a_11", 11, "Sq^2 Sq^1", "a_8"),
            ("a_12", 12, "Sq^2", "a_10"),
            ("a_13", 13, "Sq^1", "a_12"),
        ]:
            step = by_name[name]
            assert step["degree"] == degree and step["closes"]
            assert step["shortfall"] == 1 and step["invariant"]
        # both candidate products independently complete degree 21;
        # the report states which
        assert [(p["product"], p["degree"], p["closes"])
                for p in rep["products"]] == [
            ("a_10*a_11", 21, True),
            ("a_8*a_13", 21, True),
        ]


def test_criterion_04_dickson_layer():
    with Budget(10):
        rep = catalog.dickson_layer_check()
        assert rep["ok"] and rep["gl3_fixed"]
        # d_8 = w1^8 + w1^4 d_4 + w1^2 d_6 + w1 d_7 + d_4^2
        holds4, lhs4, rhs4 = relative_dickson_top(4)
        assert holds4 and lhs4 == rhs4
        # d_4 = z^4 + z^2 d_2 + z d_3 + d_2^2
        holds3, lhs3, rhs3 = relative_dickson_top(3)
        assert holds3 and lhs3 == rhs3
        assert sorted(dickson(3, catalog.RING3)) == [4, 6, 7]


def test_criterion_05_small_invariant_rings():
    with Budget(120):
        rep = catalog.small_rings_check(bound=24)
        assert rep["ok"]
        assert rep["D8_on_3"]["generator_degrees"] == [1, 2, 4]
        assert rep["S4_on_3"]["generator_degrees"] == [2, 3, 4]
        c = catalog.classes3()
        assert c["d_2"] == catalog.RING3.parse("t^2+t*w+w^2")
        assert c["d_3"] == catalog.RING3.parse("t^2*w+t*w^2")
        d8_prim = catalog.primaries_for(
            "D8_on_3", catalog.matrix_actions()["D8_on_3"]()
        )
        assert d8_prim[1] == c["t"] * (c["t"] + c["w"])


def test_criterion_06_appendix_pipeline():
    with Budget(180):
        rep = catalog.appendix_pipeline(bound=40)
        assert rep["ok"] and rep["ideal_form_matches_oracle"]
        assert rep["oracle"]["candidate_ok"]
        assert all(v[0] for v in rep["integral_equations"].values())

        small = rep["small_tower"]
        coeff = small.coeff_ring
        d2s, d3s = coeff.var("d_2"), coeff.var("d_3")
        assert rep["power_expressions"]["w^3"] == {"1": d3s, "w": d2s}
        # exact expansion of w^5 over the tower; the printed identity
        # "w^5 + d_2^2 w + d_2 d_3 = 0" misses the d_3 w^2 term
        assert rep["power_expressions"]["w^5"] == {
            "1": d2s * d3s, "w": d2s * d2s, "w^2": d3s,
        }
        c = catalog.classes3()
        w, d2, d3 = c["w"], c["d_2"], c["d_3"]
        assert w ** 5 + d2 * d2 * w + d2 * d3 == d3 * w * w

        R = rep["tower"].coeff_ring
        one = R.one()
        c2, c3, c4 = R.var("d_2^2"), R.var("d_3"), R.var("d_4^2")
        expected = (
            # {1, w, w^2, w d_2, w^2 d_2, d_2 d_3} . 1
            [("1", one), ("w", one), ("w^2", one), ("w*d_2", one),
             ("w^2*d_2", one), ("d_2", c3)]
            # . d_3 d_4  (the last entry is d_3^2 [d_2 d_4]; the display
            # duplicates d_3 [d_2 d_4] instead)
            + [("d_4", c3), ("w*d_4", c3), ("w^2*d_4", c3),
               ("w*d_2*d_4", c3), ("w^2*d_2*d_4", c3),
               ("d_2*d_4", c3 * c3)]
            # . d_2 d_3 d_4
            + [("d_2*d_4", c3), ("w*d_2*d_4", c3), ("w^2*d_2*d_4", c3),
               ("w*d_4", c2 * c3), ("w^2*d_4", c2 * c3),
               ("d_4", c2 * c3 * c3)]
            # . d_2 d_3^2 d_4^2
            + [("d_2", c3 * c3 * c4), ("w*d_2", c3 * c3 * c4),
               ("w^2*d_2", c3 * c3 * c4), ("w", c2 * c3 * c3 * c4),
               ("w^2", c2 * c3 * c3 * c4), ("1", c2 * c3 ** 3 * c4)]
        )
        got = [list(e.items())[0] for e in rep["product_expressions"]]
        assert len(got) == 24
        assert got == expected

        assert rep["ideals"] == {
            "1": [one], "d_2": [c3], "d_4": [c3], "d_2*d_4": [c3],
        }
        gens = [catalog.RING3.one(), d2 * d3, d3 * c["d_4"],
                d2 * d3 * c["d_4"]]
        assert rep["generators"] == gens


def test_criterion_07_dickson_side_intersections():
    with Budget(180):
        rep = catalog.dickson_meet_check(bound=40)
        assert rep["ok"]
        assert rep["image_meet_dickson_ok"]   # meets F_2[d_4,d_6,d_7] in
        assert rep["pair_meet_even_ok"]       # the stated module forms
        # the two decompositions of the same intersection have equal series
        assert catalog.MEET_DICKSON_SERIES == (
            PoincareSeries.free([8, 12])
            + PoincareSeries.monomial(7) * PoincareSeries.free([4, 6, 7])
        )


def test_criterion_08_ring_map_audit():
    with Budget(120):
        rep = catalog.restriction_map_check(bound=40)
        assert rep["ok"] and rep["relations_ok"]
        c = catalog.classes3()
        assert catalog.derive_s2_image() == c["w"] * c["w"]
        sub = rep["subring"]
        assert sub["equal"] and sub["contains_small_subring"]
        assert sub["omit_degree7_first_shortfall"] == 7


def test_criterion_09_detection_series():
    with Budget(60):
        seqs = catalog.detection_sequences()
        exact = verify_detection(seqs["2S8"], bound=60)
        assert exact["exact"] and exact["ok"]
        for name in ("2A8", "2A10", "Ly"):
            rep = verify_detection(seqs[name], bound=60)
            assert rep["nonnegative"] and rep["ok"], name
        e = catalog.einfty_series_check(bound=40)
        assert e["agree"] and not e["mismatches"]
        assert e["degree7"]["detection_route"] == 4
        assert e["degree7"]["spectral_route"] == 4
        assert e["degree7"]["prose_count"] == 3
        assert e["degree7"]["flag"]
        assert e["literal_first_mismatch"] == 6


def test_criterion_10_rank2_module_invariants():
    with Budget(120):
        rep = catalog.order6_module_check(bound=30)
        assert rep["ok"] and rep["stated_generate"]
        assert rep["found"] == [
            (3, "g3 + b3"),
            (5, "a5"),
            (7, "(v4)*g3 + (w4)*b3"),
        ]


def test_criterion_11_permutation_classification():
    with Budget(600):
        _, s8 = catalog.classify_maximal_ea2("S8")
        assert sorted(lbl for _, lbl in s8) == [
            "V_1^4", "V_2 x V_1^2", "V_2^2", "V_3",
        ]
        _, a10 = catalog.classify_maximal_ea2("A10")
        assert sorted(lbl for _, lbl in a10) == [
            "E_5", "V_2 x E_3", "V_2^2", "V_3",
        ]
        _, filtered = catalog.a10_2x4_filter()
        assert sorted(ref.order for ref, _ in filtered) == [4, 8]
        labels = {ref.order: lbl for ref, lbl in filtered}
        assert labels[8] == "V_3"
        assert catalog.normalizer_quotient_order() == 168


def test_criterion_12_sylow_model():
    with Budget(60):
        rep = catalog.sylow_claims()
        assert rep["ok"]
        for claim in (
            "ut_order_64", "ut_center", "full_center",
            "utg_order_128", "utg_two_2^4s", "utg_2^4s_normal",
            "utg_2^4s_not_conjugate", "utga_2^4s_fused",
            "full_two_2^4s", "full_2^4s_conjugate",
            "ATZ_ea_8", "gAZ_ea_8",
        ):
            assert rep[claim], claim


def test_criterion_13_order2520_decomposition():
    with Budget(3600):
        rep = catalog.invariants_report("A7_on_2^4", bound=45)
        assert rep["group_order"] == 2520
        assert rep["invariant_dims"][:25] == A7_SERIES.expand(24)
        assert rep["primary_degrees"] == [8, 12, 14, 15]
        assert sorted(rep["secondary_degrees"]) == [
            0, 18, 20, 21, 24, 25, 27, 45,
        ]
        assert len(rep["secondary_degrees"]) == 8 == (8 * 12 * 14 * 15) // 2520
        assert rep["free_module"]
