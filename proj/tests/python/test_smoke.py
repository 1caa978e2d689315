from fractions import Fraction as F

import pytest

import dualrisk as dr

A = [(0, F(1, 6)), (3, F(5, 6))]
B = [(1, F(1, 6)), (2, F(1, 2)), (4, F(1, 3))]


def test_divergence_example_values():
    assert dr.dual_moment(A, 2) == F(25, 12)
    assert dr.dual_moment(B, 2) == F(23, 12)
    for beta in (F(0), F(1, 4), F(1, 2), F(1)):
        w = f"quadratic:beta={beta}"
        assert dr.dt_value(A, w) - dr.dt_value(B, w) == beta / 6
    assert dr.eu_value(A, "quadratic:c=1/16") == dr.eu_value(B, "quadratic:c=1/16")


def test_transcendental_weighting_returns_float():
    v = dr.dt_value(A, "prelec:a=0.65,b=1")
    assert isinstance(v, float)
    assert 0 < v < 3


def test_dominance_reports_failed_condition():
    r = dr.dual_sd_check(A, B, 3)
    assert not r["holds"]
    assert r["failed_condition"] == "dual_moment_2"
    assert dr.primal_sd_check(A, B, 3)["holds"]


def test_third_order_pair_and_replay():
    pair = dr.make_general_pair([1, 2, 4], 3, 6)
    assert pair["D"] == [F(7, 6), F(5, 3), F(25, 6)]
    assert pair["C"] == [F(5, 6), F(7, 3), F(23, 6)]
    assert dr.replay(pair["provenance"]) == pair
    sign, premium = dr.preference_direction(pair["provenance"], "dualpower:m=3")
    assert sign == 1 and premium == F(2, 27)


def test_parsimonious_increments_are_binomial():
    pair = dr.make_parsimonious_pair([0, 10, 20, 30, 40, 50, 60], 1, 5, 1)
    assert [d - c for c, d in zip(pair["C"], pair["D"])] == [0, 1, -4, 6, -4, 1, 0]


def test_random_pair_is_seeded():
    assert dr.random_general_pair(11, 4) == dr.random_general_pair(11, 4)


def test_verify_and_certificates():
    assert dr.verify_theorem(1, trials=20, seed=3)["passed"]
    assert dr.verify_theorem(4, trials=10, seed=3)["passed"]
    assert dr.finite_difference_sign("quadratic:beta=1/2", 3, 16) == "Zero"


def test_straddle_portfolio():
    d = dr.build_menu(3, [1, 3, 5, 7])
    assert d["premium"] == 2
    assert d["portfolio"] == [2, 2, 4, 8]


def test_self_protection_direction():
    cfg = "wealth = 10\nloss = 4\nepsilon = 1/2\nweighting = dualpower:m=3\neffort = hyperbolic\ncalibrate_at = 1/5\n"
    r = dr.self_protection(cfg)
    assert r["direction"] == 1
    assert r["e_star_with"] > r["e_star_without"]


def test_errors_carry_codes():
    with pytest.raises(dr.DualRiskError) as info:
        dr.dt_value([(1, F(1, 2))], "identity")
    assert info.value.code == "NonUnitMass"
    with pytest.raises(ValueError):
        dr.dt_value(A, "nonsense")


def test_repro_tables():
    tables = dr.repro_tables()
    assert set(tables) == {"divergence.csv", "apportionment.csv", "portfolio.csv", "self_protection.csv"}
    assert "25/12" in tables["divergence.csv"]
    assert "31/18" in tables["apportionment.csv"]
