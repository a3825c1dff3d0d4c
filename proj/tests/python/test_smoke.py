import math

import pytest

import sparsesel


def test_sparsity_index_reference_values():
    assert round(sparsesel.sparsity_index(10, 2, 10), 3) == 0.395
    assert round(sparsesel.sparsity_index(50, 2, 10), 3) == 0.676
    assert sparsesel.active_count(500, 1, 0.5) == 22


def test_threshold_value():
    expected = math.sqrt(2.1 * (math.log(45) + math.log(20)))
    assert sparsesel.threshold(10, 2) == pytest.approx(expected, rel=1e-12)


def test_extremal_constraints_hold():
    sol = sparsesel.solve_extremal_exact(0.05, 2, 1.0, 1e-2)
    assert sol["sum_theta2"] == pytest.approx(0.05**2, rel=1e-8)
    assert sol["sum_c2_theta2"] == pytest.approx(1.0, rel=1e-8)
    ratio = sol["a_value"] / sparsesel.a_asymptotic(0.05, 2, 1.0, 1e-2)
    # At k = 2 the lattice correction is still about 24% at this radius.
    assert 1.0 < ratio < 1.3


def test_inadmissible_radius_raises():
    with pytest.raises(sparsesel.EmptyEllipsoid):
        sparsesel.solve_extremal_exact(0.2, 1, 1.0, 1e-2)


def test_weights_are_normalized():
    idx, w, r_star = sparsesel.weights(0.4, 10, 2, 1.0, 1e-4)
    assert len(idx) == len(w) > 1000
    assert sum(x * x for x in w) == pytest.approx(0.5, abs=1e-12)
    assert r_star > 0


def test_r_star_round_trip():
    target = sparsesel.selection_target(0.5, 10, 2)
    r = sparsesel.solve_r_star(target, 2, 1.0, 1e-4)
    assert sparsesel.a_asymptotic(r, 2, 1.0, 1e-4) == pytest.approx(target, rel=1e-10)


def test_g4_coefficients():
    row = sparsesel.fourier_coefficients("g4", 10)
    # Stored as l = -10..10; (g4, phi_{-l}) = -sqrt(2) / (2 pi l).
    for l in range(1, 11):
        assert row[10 - l] == pytest.approx(-math.sqrt(2) / (2 * math.pi * l), abs=1e-12)


def test_risk_report_is_deterministic():
    a = sparsesel.run_risk(cycles=2, alpha=5, seed=11)
    b = sparsesel.run_risk(cycles=2, alpha=5, seed=11, threads=2)
    assert a == b
    assert a["err"] == 0.0
    assert len(a["per_cycle"]) == 2


def test_bad_config_raises():
    with pytest.raises(sparsesel.InvalidArgument):
        sparsesel.run_risk("bogus = 1")


def test_phase_vector():
    rep = sparsesel.phase_vector(multipliers=(0.5, 1.2), replicates=20, seed=3)
    risks = [row["risk"] for row in rep["rows"]]
    assert risks[0] > risks[1]
