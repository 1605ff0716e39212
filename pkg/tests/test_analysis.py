"""Pattern analytics: peaks, interference orders, missing-order reports."""

import math
from dataclasses import replace

import numpy as np
import pytest

from doubleslit.analysis import (
    MissingOrderReport,
    factorization_audit,
    find_peaks,
    missing_orders,
    report_rows,
    report_text,
    two_slit_order_angles,
)
from doubleslit.config import de_broglie_wavelength, parse_config, with_detector
from doubleslit.farfield import DiffractionScan, ScanRow, scan


def synthetic_scan(config, betas, intensities):
    """Scan rows built from an analytic intensity profile (slit1 = total/4)."""
    rows = tuple(
        ScanRow(
            beta=float(b),
            intensity_total=float(i),
            intensity_slit1=float(i) / 4.0,
            two_slit_factor=4.0,
            intensity_normalized=float(i) / max(intensities),
        )
        for b, i in zip(betas, intensities)
    )
    return DiffractionScan(config_echo=config, rows=rows)


class TestFindPeaks:
    def test_synthetic_cosine_squared(self, small_config):
        cfg = with_detector(small_config, beta_min=-0.1, beta_max=0.1, steps=801)
        betas = cfg.detector.grid()
        profile = np.cos(50 * betas) ** 2
        result = find_peaks(synthetic_scan(cfg, betas, profile))
        step = betas[1] - betas[0]
        truth = [j * math.pi / 50 for j in range(-1, 2)]
        found = [p.beta for p in result]
        assert len(found) == len(truth)
        for t, f in zip(truth, found):
            assert abs(t - f) < 1e-3 * step

    def test_monotone_profile_has_no_peaks(self, small_config):
        cfg = with_detector(small_config, steps=101)
        betas = cfg.detector.grid()
        profile = np.exp(betas * 10)
        assert find_peaks(synthetic_scan(cfg, betas, profile)) == ()

    def test_requires_three_rows(self, small_config):
        cfg = with_detector(small_config, steps=2)
        with pytest.raises(ValueError):
            find_peaks(scan(cfg))

    def test_principal_peak_spacing_matches_order_geometry(self):
        # a=5, d=10 wavelengths: adjacent two-slit maxima separated by
        # delta sin(beta) = lambda/(a+d) = 1/15.  The spacing comes from the
        # factorization, so the single-slit envelope (which drags raw peak
        # positions a few percent inward) is divided out first.
        cfg = parse_config(
            "a = 5 lambda\nb = 1000 lambda\nc = 1 lambda\nd = 10 lambda\n"
            "m_max = 9\nn_max = 9\nbeta_steps = 2001\n"
        )
        result = scan(cfg)
        betas = [r.beta for r in result.rows]
        fringe = [r.two_slit_factor for r in result.rows]
        peaks = find_peaks(synthetic_scan(cfg, betas, fringe))
        sines = sorted(math.sin(p.beta) for p in peaks)
        gaps = [b - a for a, b in zip(sines, sines[1:])]
        assert len(gaps) >= 6
        for gap in gaps:
            assert gap == pytest.approx(1.0 / 15.0, rel=0.01)


class TestOrderAngles:
    def test_first_order_of_default_geometry(self, default_config):
        orders = two_slit_order_angles(default_config, j_max=3)
        assert orders[0][0] == 1
        assert orders[0][1] == pytest.approx(math.asin(1.0 / 30.0), rel=1e-10)
        assert orders[0][1] == pytest.approx(0.033339, abs=1e-5)

    def test_orders_beyond_range_omitted(self, default_config):
        orders = two_slit_order_angles(default_config, j_max=10_000)
        lam = de_broglie_wavelength(default_config.beam)
        spacing = default_config.slits.width_a + default_config.slits.separation_d
        s_max = math.sin(default_config.detector.beta_max)
        assert all(j * lam / spacing < s_max for j, _ in orders)
        assert orders  # the default grid holds several orders

    def test_wide_separation_shrinks_spacing(self):
        near = parse_config("d = 25 lambda\n")
        far = parse_config("d = 500 lambda\n")
        s_near = math.sin(two_slit_order_angles(near, 1)[0][1])
        s_far = math.sin(two_slit_order_angles(far, 1)[0][1])
        assert s_far < s_near / 10

    def test_invalid_j_max(self, default_config):
        with pytest.raises(ValueError):
            two_slit_order_angles(default_config, 0)


class TestMissingOrders:
    def run_report(self, text, threshold=0.05):
        cfg = parse_config(text)
        return cfg, missing_orders(cfg, scan(cfg), threshold)

    def test_analytic_ratio_six(self):
        _, report = self.run_report(
            "a = 5 lambda\nd = 25 lambda\nm_max = 9\nn_max = 29\n"
            "beta_min_rad = -0.45\nbeta_max_rad = 0.45\n"
        )
        assert report.ratio == pytest.approx(6.0, rel=1e-12)
        assert set(report.analytic_missing) >= {6, 12}

    def test_analytic_empty_for_non_integer_ratio(self):
        _, report = self.run_report("a = 5 lambda\nd = 12 lambda\nm_max = 9\nn_max = 29\n")
        assert report.ratio == pytest.approx(3.4, rel=1e-12)
        assert report.analytic_missing == ()

    def test_narrow_slit_ratio_six_includes_order_six(self):
        # a = lambda, d = 5*lambda: order 6 sits at sin(beta) = 1 and is
        # evaluated at the scan edge under the grazing rule.
        _, report = self.run_report(
            "a = 1 lambda\nd = 5 lambda\nm_max = 9\nn_max = 29\n"
            "beta_min_rad = -1.55\nbeta_max_rad = 1.55\nbeta_steps = 801\n"
        )
        assert 6 in report.analytic_missing

    def test_numeric_detection_wide_slits(self):
        # a = 20*lambda, d = 40*lambda: classical missing orders 3 and 6.
        _, report = self.run_report(
            "a = 20 lambda\nd = 40 lambda\nm_max = 21\nn_max = 12\n"
            f"beta_min_rad = {-math.asin(7.4 / 60)!r}\n"
            f"beta_max_rad = {math.asin(7.4 / 60)!r}\n"
        )
        assert set(report.numeric_missing) >= {3, 6}

    def test_no_false_missing_for_non_integer_ratio(self):
        for d in ("5.5", "12"):
            a = "1" if d == "5.5" else "5"
            _, report = self.run_report(
                f"a = {a} lambda\nd = {d} lambda\nm_max = 9\nn_max = 29\n"
                "beta_min_rad = -0.45\nbeta_max_rad = 0.45\n"
            )
            assert report.numeric_missing == ()
            assert report.analytic_missing == ()

    def test_threshold_validation(self, coarse_detector_config):
        result = scan(coarse_detector_config)
        with pytest.raises(ValueError):
            missing_orders(coarse_detector_config, result, threshold=0.0)
        with pytest.raises(ValueError):
            missing_orders(coarse_detector_config, result, threshold=1.0)

    def test_config_scan_mismatch_rejected(self, coarse_detector_config, default_config):
        result = scan(coarse_detector_config)
        with pytest.raises(ValueError):
            missing_orders(default_config, result)

    def test_report_type(self, coarse_detector_config):
        report = missing_orders(coarse_detector_config, scan(coarse_detector_config))
        assert isinstance(report, MissingOrderReport)
        assert report.suppression_threshold == 0.05


class TestFactorizationAudit:
    def test_audit_below_tolerance(self, coarse_detector_config):
        value = factorization_audit(coarse_detector_config, scan(coarse_detector_config))
        assert value < 1e-10

    def test_corrupted_scan_flagged(self, coarse_detector_config):
        good = scan(coarse_detector_config)
        corrupted = DiffractionScan(
            config_echo=good.config_echo,
            rows=tuple(replace(r, intensity_slit1=0.0) for r in good.rows),
        )
        assert factorization_audit(coarse_detector_config, corrupted) == pytest.approx(
            1.0, abs=1e-9
        )

    def test_empty_scan_rejected(self, coarse_detector_config):
        empty = DiffractionScan(config_echo=coarse_detector_config, rows=())
        with pytest.raises(ValueError):
            factorization_audit(coarse_detector_config, empty)


class TestReports:
    def test_rows_and_text_consistent(self):
        cfg = parse_config(
            "a = 5 lambda\nd = 10 lambda\nm_max = 9\nn_max = 9\n"
            "beta_min_rad = -0.45\nbeta_max_rad = 0.45\n"
        )
        result = scan(cfg)
        report = missing_orders(cfg, result)
        rows = report_rows(cfg, result, report)
        assert rows
        for j, beta, intensity, analytic, numeric in rows:
            assert j >= 1 and beta >= 0.0 and intensity >= 0.0
            assert analytic == (j in report.analytic_missing)
            assert numeric == (j in report.numeric_missing)
        text = report_text(cfg, result, report)
        assert "missing-order report" in text
        assert f"{report.ratio:.12g}" in text
