"""Smoke tests for the Python bindings: one quick pass over every exposed
operation, plus the identities that must hold regardless of configuration."""

import numpy as np
import pytest

import latadd


def test_version():
    assert latadd.__version__


def make_field(seed=0, size=20):
    params = latadd.AutoNormalParams(theta1=0.2, theta2=0.25)
    return latadd.simulate_autonormal(params, size, size, seed=seed)


def test_simulation_shapes_and_determinism():
    f1 = make_field(seed=7)
    f2 = make_field(seed=7)
    assert f1.shape == (20, 20)
    assert np.array_equal(f1.values, f2.values)
    f3 = make_field(seed=8)
    assert not np.array_equal(f1.values, f3.values)

    u = latadd.simulate_unilateral(24, 28, seed=3)
    assert u.values.shape == (24, 28)


def test_field_from_numpy_and_window():
    values = np.arange(30.0).reshape(5, 6)
    field = latadd.LatticeField(values)
    assert field.values[2, 3] == 15.0
    w = field.window(1, 1, 3, 3)
    assert w.values.shape == (3, 3)
    assert w.values[0, 0] == values[1, 1]
    with pytest.raises(Exception):
        latadd.LatticeField(np.array([[np.nan]]))


def test_extract_samples_known_design():
    values = np.array([[10 * (u + 1) + (v + 1) for v in range(5)] for u in range(5)], dtype=float)
    field = latadd.LatticeField(values)
    sample = latadd.extract_samples(field, [(1, 0), (0, 1)])
    assert len(sample) == 16
    assert sample.dim == 2
    k = sample.sites.index((2, 2))
    assert sample.designs[k, 0] == 23.0
    assert sample.designs[k, 1] == 32.0
    assert sample.responses[k] == 33.0
    # string offsets parse too
    same = latadd.extract_samples(field, "1,0;0,1")
    assert np.array_equal(same.designs, sample.designs)


def test_kernel_values():
    assert latadd.kernel_value("gaussian", 0.0) == pytest.approx(0.3989423, abs=1e-6)
    assert latadd.kernel_value("epanechnikov", 2.0) == 0.0
    assert latadd.kh_value("gaussian", 0.5, 0.0) == pytest.approx(0.7978846, abs=1e-6)


def test_backfit_identities():
    field = make_field(seed=1)
    sample = latadd.extract_samples(field, "1,0;0,1;-1,0;0,-1")
    fit = latadd.backfit(sample, bandwidth=0.4, grid_points=13)
    assert fit.converged
    assert fit.m0 == pytest.approx(np.mean(sample.responses), rel=1e-13)
    assert len(fit.components) == 4
    # evaluation at a design row is finite and near the responses' scale
    pred = fit.evaluate(np.asarray(sample.designs[0]))
    assert np.isfinite(pred)
    # components are callable interpolators
    c0 = fit.components[0]
    assert c0(c0.grid.points[3]) == pytest.approx(c0.values[3])


def test_backfit_agrees_with_direct_solver():
    field = latadd.simulate_unilateral(10, 10, seed=5)
    sample = latadd.extract_samples(field, [(1, 0), (0, 1)])
    fit = latadd.backfit(sample, bandwidth=0.5, grid_points=15, tolerance=1e-11, max_cycles=500)
    oracle = latadd.direct_additive_oracle(sample, bandwidth=0.5, grid_points=15)
    for a, b in zip(fit.components, oracle.components):
        assert np.max(np.abs(a.values - b.values)) < 1e-6


def test_restricted_mode_runs():
    field = make_field(seed=2)
    sample = latadd.extract_samples(field, "1,0;0,1;-1,0;0,-1")
    fit = latadd.backfit(sample, bandwidth=0.4, grid_points=13, restricted=True,
                         lag_sign="standard")
    assert fit.mode == "restricted"
    assert fit.converged


def test_select_bandwidth_single_candidate():
    field = make_field(seed=3)
    sample = latadd.extract_samples(field, "1,0;0,1;-1,0;0,-1")
    cv = latadd.select_bandwidth(sample, [0.4], grid_points=11, stride=8)
    assert cv.chosen == 0.4
    assert len(cv.scores) == 1
    assert cv.scores[0] >= 0.0


def test_bootstrap_ci_bands():
    field = make_field(seed=4, size=15)
    sample = latadd.extract_samples(field, "1,0;0,1;-1,0;0,-1")
    res = latadd.bootstrap_ci(sample, bandwidth=0.4, n_boot=15, seed=11, grid_points=11)
    assert len(res.bands) == 4
    for band in res.bands:
        assert np.all(band.lower <= band.center + 1e-12)
        assert np.all(band.center <= band.upper + 1e-12)
        assert band.n_boot == 15


def test_wild_resample_deterministic():
    field = make_field(seed=6, size=12)
    sample = latadd.extract_samples(field, "1,0;0,1")
    fit = latadd.backfit(sample, bandwidth=0.4, grid_points=11)
    a = latadd.wild_resample(sample, fit, seed=9)
    b = latadd.wild_resample(sample, fit, seed=9)
    assert np.array_equal(a, b)


def test_linearity_test_and_statistic():
    field = make_field(seed=5, size=16)
    params = latadd.coding_fit(field, with_intercept=False)
    t = latadd.linearity_statistic(field, params)
    assert t >= 0.0
    res = latadd.linearity_test(field, n_boot=39, seed=2, with_intercept=False,
                                force_unit_variance=True)
    assert 1.0 / 40.0 <= res.p_value <= 1.0
    assert len(res.t_boot) == 39
    again = latadd.linearity_test(field, n_boot=39, seed=2, with_intercept=False,
                                  force_unit_variance=True)
    assert res.p_value == again.p_value


def test_coding_fit_recovers_parameters():
    params = latadd.AutoNormalParams(theta1=0.2, theta2=0.25)
    field = latadd.simulate_autonormal(params, 60, 60, seed=21)
    est = latadd.coding_fit(field, with_intercept=False)
    assert est.theta1 == pytest.approx(0.2, abs=0.08)
    assert est.theta2 == pytest.approx(0.25, abs=0.08)


def test_csv_round_trip(tmp_path):
    field = make_field(seed=12, size=9)
    path = str(tmp_path / "field.csv")
    latadd.write_field_csv(field, path)
    back = latadd.read_field_csv(path)
    assert np.array_equal(back.values, field.values)
