"""End-to-end smoke tests for the Python package."""

import pytest

import tcore


def test_point_values():
    assert tcore.atn(3, 7) == 0  # no 3-core partitions of 7
    assert tcore.atn(5, 4) == 5
    assert tcore.atn(13, 6) == 11
    assert tcore.atn(2, 0) == 1


def test_two_core_matches_closed_form():
    values = tcore.atn_range(2, 0, 200)
    assert values == [tcore.a2_closed(n) for n in range(200)]
    assert values[:10] == [1, 1, 0, 1, 0, 0, 1, 0, 0, 0]


def test_cubes_of_euler_match_closed_form():
    series = tcore.expand([(1, 3)], length=120)
    assert series == [tcore.c_closed(n) for n in range(120)]
    assert series[1] == -3
    assert series[28] == -15


def test_partition_numbers_are_exact_big_ints():
    inverse_euler = tcore.expand([(1, -1)], length=500)
    assert inverse_euler[100] == 190569292
    assert inverse_euler[499] == 2176192515439287461625
    assert inverse_euler[499] > 2**64


def test_modular_ranges_reduce_exact_values():
    exact = tcore.atn_range(13, 0, 300)
    mod2 = tcore.atn_range(13, 0, 300, mod=2)
    assert mod2 == [v % 2 for v in exact]


def test_verify_pass():
    report = tcore.verify("Das", n_max=50)
    assert report["pass"] is True
    assert report["n_checked"] == 50
    assert report["counterexamples"] == []


def test_verify_reports_known_counterexample():
    report = tcore.verify("Thm1ii", primes=[5], j=1, n_max=15)
    assert report["pass"] is False
    assert [ce["n"] for ce in report["counterexamples"]] == [11]
    assert report["counterexamples"][0]["lhs"] == "1"
    assert report["claims"][0]["failures"] == 1


def test_verify_hypothesis_error():
    with pytest.raises(tcore.HypothesisError):
        tcore.verify("Thm1i", primes=[5], j=5, n_max=10)
    with pytest.raises(ValueError):
        tcore.verify("NoSuchFamily")


def test_budget_error():
    with pytest.raises(tcore.BudgetError):
        tcore.verify("Lem4e2", primes=[3], n_max=60000)


def test_eta_admissibility():
    report = tcore.eta_check(128, {8: 1, 16: 1})
    assert report["admissible"] is True
    assert report["twice_weight"] == 2
    assert report["character"]["discriminant"] == "-128"
    assert report["holomorphic_at_cusps"] is True
    assert all(c["numerator"] > 0 for c in report["cusp_orders"])

    degenerate = tcore.eta_check(1, {1: 3})
    assert degenerate["admissible"] is False
    assert degenerate["cond_a"] is False


def test_hecke_eigenvalues():
    zero = tcore.hecke_eigen(3)
    assert zero["eigenform"] is True
    assert zero["lambda"] == "0"
    minus_two = tcore.hecke_eigen(17)
    assert minus_two["lambda"] == "-2"
    assert minus_two["verified"] > 100


def test_kronecker():
    assert tcore.kronecker(-2, 3) == 1
    assert tcore.kronecker(-2, 5) == -1
    assert tcore.kronecker(-128, 3) == 1
