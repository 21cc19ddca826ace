import numpy as np
import pytest

from zerodetect.characters import character_from_label
from zerodetect.detect import (ScanCurve, find_peaks, fit_order_slope, make_grid, scan_grid,
                               unmatched_ordinates)
from zerodetect.errors import CoverageError, NoDivergenceError
from zerodetect.lfunc import find_zero_ordinates
from zerodetect.zerodata import ZeroList

CHI5 = character_from_label("5.2")


@pytest.fixture(scope="module")
def chi5_zeros():
    return find_zero_ordinates(CHI5, 20)


def test_grid_halving_shares_nodes():
    a = make_grid(0, 13, 0.02)
    b = make_grid(0, 13, 0.01)
    assert np.array_equal(a, b[::2][: a.size])
    assert np.all(np.diff(b) > 0)


def test_scan_determinism_and_refinement(zeta_zeros):
    c1 = scan_grid(CHI5, zeta_zeros, 100.0, 5.0, 7.0, 0.05)
    c2 = scan_grid(CHI5, zeta_zeros, 100.0, 5.0, 7.0, 0.05)
    c3 = scan_grid(CHI5, zeta_zeros, 100.0, 5.0, 7.0, 0.025, threads=4)
    assert np.array_equal(c1.magnitudes, c2.magnitudes)
    assert np.array_equal(c1.magnitudes, c3.magnitudes[::2][: c1.magnitudes.size])
    assert np.all(c1.magnitudes >= 0)


def test_peak_stable_under_refinement(zeta_zeros):
    p1 = find_peaks(scan_grid(CHI5, zeta_zeros, 100.0, 8.5, 11.0, 0.02))
    p2 = find_peaks(scan_grid(CHI5, zeta_zeros, 100.0, 8.5, 11.0, 0.01))
    top1 = max(p1, key=lambda p: p.height)
    top2 = max(p2, key=lambda p: p.height)
    assert abs(top1.t_star - top2.t_star) <= 0.02


def test_skipped_points_flagged(zeta_zeros):
    g = float(zeta_zeros.ordinates[0])
    c = scan_grid(CHI5, zeta_zeros, 100.0, g - 0.5, g + 0.5, 0.5)
    assert c.skipped.tolist() == [False, True, False]
    assert np.isfinite(c.magnitudes).all()


def test_empty_list_gives_zero_curve():
    Z = ZeroList("zeta", [], 1e4, "synthetic")
    c = scan_grid(CHI5, Z, 100.0, 0, 13, 0.1)
    assert not c.magnitudes.any()
    assert find_peaks(c) == []


def test_scan_coverage():
    Z = ZeroList("zeta", [14.13], 400.0, "synthetic")
    with pytest.raises(CoverageError):
        scan_grid(CHI5, Z, 100.0, 0, 13, 0.1)


def test_monotone_curve_has_no_peaks():
    g = make_grid(0, 5, 0.1)
    c = ScanCurve(CHI5, 100.0, g, g ** 2, np.zeros(g.size, bool))
    assert find_peaks(c) == []


def test_ambiguous_match():
    g = make_grid(0, 2, 0.05)
    y = np.exp(-((g - 1.0) / 0.2) ** 2)
    c = ScanCurve(CHI5, 100.0, g, y, np.zeros(g.size, bool))
    ref = ZeroList("L/5.2", [0.97, 1.04], 3.0, "synthetic")
    (p,) = find_peaks(c, reference=ref)
    assert p.ambiguous
    assert p.matched_ordinate in (0.97, 1.04)
    assert p.residual == pytest.approx(abs(p.matched_ordinate - p.t_star))


def test_residual_iff_matched():
    g = make_grid(0, 2, 0.05)
    y = np.exp(-((g - 1.0) / 0.2) ** 2)
    c = ScanCurve(CHI5, 100.0, g, y, np.zeros(g.size, bool))
    (p,) = find_peaks(c, reference=ZeroList("L/5.2", [1.5], 3.0, "s"))
    assert p.matched_ordinate is None and p.residual is None
    assert unmatched_ordinates([p], ZeroList("L/5.2", [1.5], 3.0, "s"), 0, 2) == [1.5]


def test_fit_first_zero(zeta_zeros, chi5_zeros):
    fit = fit_order_slope(CHI5, zeta_zeros, float(chi5_zeros.ordinates[0]), [1e2, 1e3, 1e4])
    assert fit.m == 1 and abs(fit.normalized_slope - 1) < 0.2


def test_fit_midpoint_no_divergence(zeta_zeros, chi5_zeros):
    mid = float(chi5_zeros.ordinates[:2].mean())
    with pytest.raises(NoDivergenceError):
        fit_order_slope(CHI5, zeta_zeros, mid, [1e2, 1e3, 1e4])


def test_fit_doubled_zero(zeta_zeros, chi5_zeros):
    n = 70000
    ords = zeta_zeros.ordinates[:n]
    doubled = ZeroList("zeta", np.repeat(ords, 2), float(zeta_zeros.ordinates[n] - 1e-6), "synthetic")
    fit = fit_order_slope(CHI5, doubled, float(chi5_zeros.ordinates[0]), [1e2, 1e3, 1e4])
    assert fit.m == 2


def test_off_zero_growth_slower(zeta_zeros, chi5_zeros):
    g0 = float(chi5_zeros.ordinates[1])
    ratios = []
    for x in (1e2, 1e3):
        c = scan_grid(CHI5, zeta_zeros, x, g0 - 1.0, g0 + 1.0, 0.05)
        off = c.magnitudes[np.abs(c.grid - g0) > 0.5].max()
        peak = c.magnitudes[np.abs(c.grid - g0) < 0.06].max()
        ratios.append(off / peak)
    assert ratios[1] < ratios[0]
