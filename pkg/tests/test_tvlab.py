import math

import numpy as np
import pytest
from scipy.stats import norm

from tvbounds import bounds, models
from tvbounds.errors import ParameterError
from tvbounds.models import ARNormal1D
from tvbounds.stochastics import Normal, NoiseStream
from tvbounds.tvlab import (
    Histogram,
    shifted_l1,
    simulate_tv_curve,
    tv_exact_ar_normal,
    tv_from_histograms,
    tv_histogram,
)


# ----------------------------------------------------------------- histogram

def test_tv_identical_samples_zero(rng):
    x = rng.standard_normal(10_000)
    est = tv_histogram(x, x.copy(), 0.01)
    assert est.estimate == 0.0


def test_tv_normal_vs_shifted_normal(rng):
    # TV(N(0,1), N(1,1)) = 1 - 2 Phi(-1/2) = 0.3829...
    n = 1_000_000
    a = rng.standard_normal(n)
    b = rng.standard_normal(n) + 1.0
    est = tv_histogram(a, b, 0.01)
    assert est.estimate == pytest.approx(0.38292492254802624, abs=0.01)


def test_tv_disjoint_supports_is_one(rng):
    a = rng.uniform(0.0, 1.0, 5_000)
    b = rng.uniform(5.0, 6.0, 5_000)
    assert tv_histogram(a, b, 0.01).estimate == 1.0


def test_tv_input_validation(rng):
    with pytest.raises(ParameterError):
        tv_histogram([], [], 0.01)
    with pytest.raises(ParameterError):
        tv_histogram([1.0, 2.0], [1.0], 0.01)
    with pytest.raises(ParameterError):
        tv_histogram([1.0], [1.0], 0.0)


def test_tv_symmetry(rng):
    a = rng.standard_normal(20_000)
    b = rng.standard_normal(20_000) * 1.3
    assert tv_histogram(a, b, 0.05).estimate == tv_histogram(b, a, 0.05).estimate


def test_tv_triangle_inequality(rng):
    a = rng.standard_normal(30_000)
    b = rng.standard_normal(30_000) + 0.7
    c = rng.standard_normal(30_000) + 1.4
    ab = tv_histogram(a, b, 0.05)
    bc = tv_histogram(b, c, 0.05)
    ac = tv_histogram(a, c, 0.05)
    assert ac.estimate <= ab.estimate + bc.estimate + 2 * (ab.mc_se + bc.mc_se + ac.mc_se)


def test_tv_noise_floor_tracks_null(rng):
    """Two samples of one law: the estimate sits at its predicted floor."""
    n = 200_000
    a = rng.standard_normal(n)
    b = rng.standard_normal(n)
    est = tv_histogram(a, b, 0.01)
    assert est.estimate == pytest.approx(est.noise_floor, rel=0.05)
    assert est.estimate > 10 * est.mc_se  # the floor is bias, not noise


def test_monotone_map_invariance(rng):
    """TV is invariant under strictly monotone maps when the bin grid is
    transported along the map; uniform re-binning adds only binning error."""
    n = 200_000
    a = rng.standard_normal(n)
    b = rng.standard_normal(n) + 0.8
    w = 0.05
    base = tv_histogram(a, b, w)
    edges = np.arange(-12.0, 12.0 + w, w)

    def tv_on_edges(x, y, e):
        ca, _ = np.histogram(x, bins=e)
        cb, _ = np.histogram(y, bins=e)
        return 0.5 * np.abs(ca / len(x) - cb / len(y)).sum()

    raw = tv_on_edges(a, b, edges)
    for g, ginv_edges in [(lambda x: 2 * x + 1, 2 * edges + 1), (np.exp, np.exp(edges))]:
        adapted = tv_on_edges(g(a), g(b), ginv_edges)
        assert adapted == pytest.approx(raw, abs=1e-15)
    # affine map with re-anchored uniform grid of matching width: exact too
    affine = tv_histogram(2 * a + 1, 2 * b + 1, 2 * w, origin=1.0)
    assert affine.estimate == pytest.approx(base.estimate, abs=1e-15)
    # exp map onto a fresh uniform grid: within the binning allowance
    dens_sup = max(
        Histogram.from_samples(np.exp(a), w).density_sup(),
        Histogram.from_samples(np.exp(b), w).density_sup(),
    )
    exp_est = tv_histogram(np.exp(a), np.exp(b), w)
    assert abs(exp_est.estimate - base.estimate) <= 2 * w * dens_sup + 3 * (exp_est.mc_se + base.mc_se)


def test_histogram_merge_matches_bulk(rng):
    x = rng.standard_normal(10_000)
    h1 = Histogram.from_samples(x[:4_000], 0.1)
    h2 = Histogram.from_samples(x[4_000:], 0.1)
    h1.merge(h2)
    bulk = Histogram.from_samples(x, 0.1)
    assert h1.counts == bulk.counts and h1.total == bulk.total


# -------------------------------------------------------------- exact TV

def test_tv_exact_first_below_threshold_at_six():
    vals = {n: tv_exact_ar_normal(0.0, 1.0, n) for n in range(1, 9)}
    assert vals[6] < 0.01 < vals[5]
    assert vals[6] == pytest.approx(0.006234170759827351, rel=1e-12)


def test_tv_exact_identical_starts():
    assert tv_exact_ar_normal(1.3, 1.3, 4) == 0.0


def test_tv_exact_one_step():
    assert tv_exact_ar_normal(0.0, 1.0, 1) == pytest.approx(0.22717000731555248, rel=1e-12)
    # cross-check against the generic normal location family TV formula
    delta = 1.0 / 2.0
    sigma = math.sqrt(1 - 0.25)
    assert tv_exact_ar_normal(0.0, 1.0, 1) == pytest.approx(1 - 2 * norm.cdf(-delta / (2 * sigma)), rel=1e-12)


# ------------------------------------------------------------------- curves

def test_curve_tracks_exact_ar1():
    model = ARNormal1D(0.5, math.sqrt(0.75))
    cert = bounds.ar_normal_1d_certificate(0.5, math.sqrt(0.75), 1.0)
    curve = simulate_tv_curve(model, 0.0, 1.0, n_max=8, n_paths=100_000, bin_width=0.01,
                              stream=NoiseStream(2026), certificate=cert)
    for r in curve.rows:
        assert abs(r.tv_sim - r.tv_exact) <= 3 * r.mc_se + r.noise_floor + 0.01
        assert r.bound_clamped <= 1.0
        # soundness against the bound, floor-aware
        assert r.tv_sim <= r.bound_clamped + 3 * r.mc_se + r.noise_floor


def test_curve_sound_for_nonlinear_ar():
    cert = bounds.nonlinear_ar_certificate(gap=1.0)
    curve = simulate_tv_curve(models.NonlinearAR(), 1.0, 2.0, n_max=8, n_paths=200_000,
                              bin_width=0.01, stream=NoiseStream(41), certificate=cert)
    for r in curve.rows:
        assert r.tv_sim <= r.bound_clamped + 3 * r.mc_se + r.noise_floor


def test_curve_sound_for_gibbs_chains(trees):
    j, _, s = trees
    cert = bounds.location_gibbs_certificate(j, s, gap=19.0)
    curve = simulate_tv_curve(models.LocationGibbsTau(j, s), 1.0, 20.0, n_max=5,
                              n_paths=400_000, bin_width=0.05, stream=NoiseStream(43),
                              certificate=cert)
    for r in curve.rows:
        assert r.tv_sim <= r.bound_clamped + 3 * r.mc_se + r.noise_floor

    rcert = bounds.regression_gibbs_certificate(333, 4, 26123.0, gap=1000.0)
    rcurve = simulate_tv_curve(models.RegressionGibbsSigma(333, 4, 26123.0), 1.0, 1001.0,
                               n_max=4, n_paths=400_000, bin_width=0.05,
                               stream=NoiseStream(44), certificate=rcert)
    for r in rcurve.rows:
        assert r.tv_sim <= r.bound_clamped + 3 * r.mc_se + r.noise_floor


def test_curve_mc_se_scales_with_paths():
    model = ARNormal1D(0.5, math.sqrt(0.75))
    c1 = simulate_tv_curve(model, 0.0, 1.0, 3, 25_000, 0.01, NoiseStream(5))
    c2 = simulate_tv_curve(model, 0.0, 1.0, 3, 100_000, 0.01, NoiseStream(6))
    for r1, r2 in zip(c1.rows, c2.rows):
        assert r2.mc_se == pytest.approx(r1.mc_se / 2, rel=0.2)


def test_curve_deterministic_across_workers_and_reruns():
    model = models.GARCH(0.13, 0.1266, 0.7922, Normal(0.0, 1.0))
    kw = dict(n_max=3, n_paths=140_000, bin_width=0.01, s20=0.0001, s20_prime=0.01)
    a = simulate_tv_curve(model, 0.1, -0.1, stream=NoiseStream(77), workers=1, **kw)
    b = simulate_tv_curve(model, 0.1, -0.1, stream=NoiseStream(77), workers=3, **kw)
    c = simulate_tv_curve(model, 0.1, -0.1, stream=NoiseStream(77), workers=1, **kw)
    assert a.to_csv() == b.to_csv() == c.to_csv()


def test_curve_single_path_degenerate_but_legal():
    model = ARNormal1D(0.5, math.sqrt(0.75))
    curve = simulate_tv_curve(model, 0.0, 1.0, 2, 1, 0.01, NoiseStream(9))
    assert len(curve.rows) == 2
    assert curve.rows[0].mc_se > 0.1


def test_curve_csv_format():
    model = ARNormal1D(0.5, math.sqrt(0.75))
    cert = bounds.ar_normal_1d_certificate(0.5, math.sqrt(0.75), 1.0)
    curve = simulate_tv_curve(model, 0.0, 1.0, 2, 1000, 0.01, NoiseStream(10), certificate=cert)
    lines = curve.to_csv().strip().split("\n")
    assert lines[0] == "n,bound,bound_clamped,tv_sim,tv_exact,mc_se"
    first = lines[1].split(",")
    assert first[0] == "1"
    assert all(len(f) > 0 for f in first)
    # GARCH bound starts at n0+1 = 2: first row has empty bound fields
    g = models.GARCH(0.13, 0.1266, 0.7922, Normal(0.0, 1.0))
    gcert = bounds.garch_certificate(0.13, 0.1266, 0.7922,
                                     Normal(0.0, 1.0),
                                     0.1, -0.1, 0.0001, 0.01)
    gc = simulate_tv_curve(g, 0.1, -0.1, 2, 1000, 0.01, NoiseStream(11), certificate=gcert,
                           s20=0.0001, s20_prime=0.01)
    grow = gc.to_csv().strip().split("\n")[1].split(",")
    assert grow[1] == "" and grow[2] == ""


# ---------------------------------------------------------------- shifted L1

def test_shifted_l1_monotone_codomain():
    # strictly monotone with codomain (0, 1): the integral is exactly delta
    f = lambda x: 1.0 / (1.0 + np.exp(-np.asarray(x)))
    assert shifted_l1(f, 0.3) == pytest.approx(0.3, abs=1e-6)


def test_shifted_l1_normal_density():
    # closed form: 2 (Phi(delta/2) - Phi(-delta/2))
    f = lambda x: np.exp(-np.asarray(x) ** 2 / 2) / math.sqrt(2 * math.pi)
    v = shifted_l1(f, 0.1)
    assert v == pytest.approx(2 * (norm.cdf(0.05) - norm.cdf(-0.05)), abs=1e-6)
    assert v <= (1 / math.sqrt(2 * math.pi)) * 2 * 0.1 + 1e-6


def test_shifted_l1_zero_shift():
    assert shifted_l1(lambda x: np.exp(-np.asarray(x) ** 2), 0.0) == 0.0


@pytest.mark.parametrize(
    "name,f,sup",
    [
        ("normal", lambda x: np.exp(-np.asarray(x) ** 2 / 2) / math.sqrt(2 * math.pi), 1 / math.sqrt(2 * math.pi)),
        ("laplace", lambda x: 0.5 * np.exp(-np.abs(np.asarray(x))), 0.5),
        ("logistic", lambda x: np.exp(-np.asarray(x)) / (1 + np.exp(-np.asarray(x))) ** 2, 0.25),
    ],
)
@pytest.mark.parametrize("delta", [0.05, 0.3, 1.0])
def test_shifted_l1_unimodal_bound(name, f, sup, delta):
    # single-mode densities obey the K(M+1)*delta envelope with M = 1
    assert shifted_l1(f, delta) <= 2 * sup * delta + 1e-6


# ------------------------------------------------- independent coordinates TV

def test_joint_tv_d_scaling(rng):
    """Joint TV of two independent coordinates stays below twice the
    per-coordinate TV (plus Monte-Carlo allowance)."""
    n = 400_000
    # coordinate laws at iteration 2 of the standard AR(1) chain
    mean_a, mean_b = 0.0 / 4, 1.0 / 4
    sd = math.sqrt(1 - 1 / 16)
    a = rng.normal(mean_a, sd, size=(n, 2))
    b = rng.normal(mean_b, sd, size=(n, 2))
    w = 0.25
    # 2-d histogram TV via paired bin indices
    def joint_tv(x, y):
        ix = np.floor(x / w).astype(np.int64)
        iy = np.floor(y / w).astype(np.int64)
        key_x = (ix[:, 0] + 2**20) * 2**21 + (ix[:, 1] + 2**20)
        key_y = (iy[:, 0] + 2**20) * 2**21 + (iy[:, 1] + 2**20)
        all_keys = np.concatenate([key_x, key_y])
        uniq, inv = np.unique(all_keys, return_inverse=True)
        ca = np.bincount(inv[:n], minlength=uniq.size)
        cb = np.bincount(inv[n:], minlength=uniq.size)
        return 0.5 * np.abs(ca / n - cb / n).sum()

    coord = tv_histogram(a[:, 0], b[:, 0], w)
    joint = joint_tv(a, b)
    exact_coord = 1 - 2 * norm.cdf(-abs(mean_a - mean_b) / (2 * sd))
    assert coord.estimate == pytest.approx(exact_coord, abs=0.01)
    assert joint <= 2 * coord.estimate + 3 * coord.mc_se + 0.02


def test_tv_from_histograms_grid_mismatch(rng):
    a = Histogram.from_samples(rng.standard_normal(100), 0.1)
    b = Histogram.from_samples(rng.standard_normal(100), 0.2)
    with pytest.raises(ParameterError):
        tv_from_histograms(a, b)
