import math

import pytest

import gpmspace as g
from helpers import (ALPHA_GRID, T_GRID, make_instance,
                     squared_distance_table_instance, two_point_carrier)

FINE = make_instance("scaled", op=g.MAX)
TOL = g.BisectionSettings().tolerance


def test_d_alpha_matches_closed_form_for_scaled():
    # oracle: d/t < alpha iff t > d/alpha, so d_alpha(a,b) = d(a,b)/alpha
    for alpha in ALPHA_GRID:
        am = g.AlphaMetric(FINE, alpha)
        for a in FINE.carrier.labels:
            for b in FINE.carrier.labels:
                expected = FINE.carrier.base_distance(a, b) / alpha
                assert abs(g.d_alpha(am, a, b) - expected) <= 2 * TOL


def test_d_alpha_specific_values():
    assert abs(g.d_alpha(g.AlphaMetric(FINE, 0.5), "a", "b") - 2.0) <= 1e-6
    assert abs(g.d_alpha(g.AlphaMetric(FINE, 2.0), "a", "b") - 0.5) <= 1e-6
    for family, params in (("scaled", {}), ("damped", {}), ("discrete", {"c": 1.0})):
        inst = make_instance(family, op=g.MAX, **params)
        assert g.d_alpha(g.AlphaMetric(inst, 1.0), "a", "a") == 0.0


def test_requires_max_operation():
    inst = make_instance("scaled", op=g.PLUS)
    with pytest.raises(g.HypothesisError):
        g.AlphaMetric(inst, 1.0)


def test_ray_property_around_the_boundary():
    for alpha in (0.5, 1.0, 2.0):
        am = g.AlphaMetric(FINE, alpha)
        for a in FINE.carrier.labels:
            for b in FINE.carrier.labels:
                if a == b:
                    continue
                d = g.d_alpha(am, a, b)
                assert 0 < d < math.inf
                assert g.eval_P(FINE, a, b, d + TOL) < alpha
                assert g.eval_P(FINE, a, b, max(d - TOL, 1e-12)) >= alpha


def test_metric_axioms_scaled_alpha_one_equals_base_table():
    am = g.AlphaMetric(FINE, 1.0)
    assert g.check_alpha_metric_axioms(am).ok
    for a in FINE.carrier.labels:
        for b in FINE.carrier.labels:
            assert abs(g.d_alpha(am, a, b) - FINE.carrier.base_distance(a, b)) <= 2 * TOL


def test_metric_axioms_scaled_alpha_half_doubles_the_table():
    am = g.AlphaMetric(FINE, 0.5)
    assert g.check_alpha_metric_axioms(am).ok
    for a in FINE.carrier.labels:
        for b in FINE.carrier.labels:
            assert abs(g.d_alpha(am, a, b) - 2 * FINE.carrier.base_distance(a, b)) <= 2 * TOL


def test_constant_family_on_ultrametric_fails_positivity_above_max_d():
    carrier = g.FiniteCarrier(("a", "b", "c"),
                              [[0, 1, 1], [1, 0, 1], [1, 1, 0]])
    inst = g.gallery_construct("constant", {}, carrier, g.MAX, T_GRID, ALPHA_GRID)
    am = g.AlphaMetric(inst, 2.0)  # alpha above max d: the ray is all of (0, inf)
    assert g.d_alpha(am, "a", "b") == 0.0
    rep = g.check_alpha_metric_axioms(am)
    assert rep.failed
    assert any("separation hypothesis" in w.detail for w in rep.witnesses)
    assert not am.p4_ok


def test_alpha_monotonicity_scaled():
    rep = g.check_alpha_monotonicity(FINE, "a", "b", (0.5, 1.0, 2.0))
    assert rep.ok
    vals = rep.data["values"]
    assert vals == pytest.approx([2.0, 1.0, 0.5], abs=2 * TOL)


def test_alpha_monotonicity_trivial_on_diagonal():
    rep = g.check_alpha_monotonicity(FINE, "a", "a", (0.5, 1.0, 2.0))
    assert rep.ok
    assert rep.data["values"] == [0.0, 0.0, 0.0]


def test_alpha_monotonicity_damped_with_empty_ray_tail():
    inst = make_instance("damped", op=g.MAX)
    rep = g.check_alpha_monotonicity(inst, "a", "b", (1.5, 1.9, 2.5))
    assert rep.ok
    vals = rep.data["values"]
    # oracle: 1 + exp(-t) < alpha iff t > ln(1/(alpha-1)); above sup P the ray is everything
    assert vals[0] == pytest.approx(math.log(2.0), abs=2 * TOL)
    assert vals[1] == pytest.approx(math.log(1 / 0.9), abs=2 * TOL)
    assert vals[2] == 0.0


def test_scaling_consistency_for_fixed_pair():
    for alpha in (0.25, 0.5, 1.0, 2.0):
        a1 = g.AlphaMetric(FINE, alpha)
        a2 = g.AlphaMetric(FINE, 2 * alpha)
        for x in FINE.carrier.labels:
            for y in FINE.carrier.labels:
                assert g.d_alpha(a2, x, y) <= g.d_alpha(a1, x, y) + 2 * TOL


def test_tabulated_family_returns_exact_step_locations():
    inst = squared_distance_table_instance()
    # P(0,2,t) = 4/t sampled on T_GRID; first node with value < 0.25 is t = 50
    am = g.AlphaMetric(inst, 0.25)
    assert g.d_alpha(am, "0", "2") == 50.0
    am5 = g.AlphaMetric(inst, 5.0)
    assert g.d_alpha(am5, "0", "2") == 1.0  # 4/1 = 4 < 5, earlier nodes stay >= 5
    # no table value below alpha: empty ray, d_alpha = inf; with a finite
    # two-hop path the triangle inequality then genuinely fails
    am_tiny = g.AlphaMetric(inst, 0.05)
    assert g.d_alpha(am_tiny, "0", "2") == math.inf
    rep = g.check_alpha_metric_axioms(am_tiny)
    assert rep.failed
    assert any("triangle" in w.detail for w in rep.witnesses)


def test_metric_axioms_inconclusive_when_only_infinity_appears():
    carrier = g.FiniteCarrier(("a", "b"), [[0, 1], [1, 0]])
    params = {"tables": [{"pair": ["a", "b"], "t": [1.0, 2.0], "v": [4.0, 3.0]}]}
    inst = g.gallery_construct("tabulated", params, carrier, g.MAX, (1.0, 2.0), (1.0,))
    am = g.AlphaMetric(inst, 1.0)  # the table never drops below alpha
    assert g.d_alpha(am, "a", "b") == math.inf
    rep = g.check_alpha_metric_axioms(am)
    assert rep.verdict == g.INCONCLUSIVE
    assert "inf" in rep.note


def test_compare_topologies_fine_grids():
    for alpha in (0.5, 1.0, 2.0):
        rep = g.compare_topologies(FINE, alpha)
        assert rep.ok, rep.data
        assert rep.data["tau_P_size"] == rep.data["tau_d_alpha_size"] == 8


def test_compare_topologies_two_points():
    inst = g.gallery_construct("scaled", {}, two_point_carrier(), g.MAX,
                               T_GRID, ALPHA_GRID)
    for alpha in (0.5, 1.0, 2.0):
        rep = g.compare_topologies(inst, alpha)
        assert rep.ok
        assert rep.data["tau_P_size"] == 4


def test_compare_topologies_coarse_grid_is_inconclusive():
    inst = g.gallery_construct("scaled", {}, two_point_carrier(), g.MAX,
                               (1.0,), (2.0,))
    rep = g.compare_topologies(inst, 1.0)
    assert rep.verdict == g.INCONCLUSIVE
    assert rep.data["missing_from_tau_P"] == [["a"], ["b"]]
    assert rep.data["missing_from_tau_d_alpha"] == []


def test_compare_topologies_verdict_is_order_independent():
    r1 = g.compare_topologies(FINE, 1.0)
    r2 = g.compare_topologies(FINE, 1.0)
    assert r1.verdict == r2.verdict
    assert r1.to_jsonable() == r2.to_jsonable()


def test_compare_topologies_rejects_failed_separation_hypothesis():
    inst = make_instance("constant", op=g.MAX,
                         carrier=g.FiniteCarrier(("a", "b"), [[0, 1], [1, 0]]))
    with pytest.raises(g.HypothesisError):
        g.compare_topologies(inst, 4.0)


def test_alpha_metric_table_exports():
    table = g.alpha_metric_table(g.AlphaMetric(FINE, 1.0))
    assert len(table) == 3 and len(table[0]) == 3
    assert table[0][0] == 0.0
    assert table[0][1] == pytest.approx(1.0, abs=2 * TOL)
