"""Pattern analytics: peaks, interference orders, missing-order detection.

The numeric missing-order criterion compares an order's intensity against
the neighboring order peaks rather than the global maximum, since the
single-slit envelope decays with angle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .config import HBAR, SimConfig, de_broglie_wavelength, wavenumber
from .farfield import DiffractionScan

# Integer test tolerance on the geometry ratio (d+a)/a.
RATIO_INT_TOL = 1e-9
# Orders whose sine exceeds the scanned range by at most this much are
# evaluated at the scan edge (grazing orders).
GRAZING_SINE_TOL = 1e-3
DEFAULT_SUPPRESSION_THRESHOLD = 0.05


@dataclass(frozen=True)
class Peak:
    beta: float
    intensity: float
    order_index: Optional[int]


@dataclass(frozen=True)
class MissingOrderReport:
    ratio: float
    analytic_missing: tuple[int, ...]
    numeric_missing: tuple[int, ...]
    suppression_threshold: float


def find_peaks(scan: DiffractionScan, hbar: float = HBAR) -> tuple[Peak, ...]:
    """Interior local maxima of the total intensity, quadratically refined."""
    rows = scan.rows
    if len(rows) < 3:
        raise ValueError("scan must have at least 3 rows")
    beta = np.array([r.beta for r in rows])
    inten = np.array([r.intensity_total for r in rows])

    orders = two_slit_order_angles(scan.config_echo, j_max=10_000, hbar=hbar)
    lam = de_broglie_wavelength(scan.config_echo.beam, hbar)
    spacing = lam / (
        scan.config_echo.slits.width_a + scan.config_echo.slits.separation_d
    )

    peaks = []
    for i in range(1, len(rows) - 1):
        if inten[i] > inten[i - 1] and inten[i] >= inten[i + 1]:
            denom = inten[i - 1] - 2.0 * inten[i] + inten[i + 1]
            if denom < 0.0:
                offset = 0.5 * (inten[i - 1] - inten[i + 1]) / denom
                b_hat = beta[i] + offset * (beta[i + 1] - beta[i])
                i_hat = inten[i] - 0.25 * (inten[i - 1] - inten[i + 1]) * offset
            else:
                b_hat, i_hat = beta[i], inten[i]
            order = None
            if orders:
                s_hat = math.sin(b_hat)
                j_near = min(orders, key=lambda oj: abs(math.sin(oj[1]) - s_hat))
                if abs(math.sin(j_near[1]) - s_hat) <= 0.25 * spacing:
                    order = j_near[0]
            peaks.append(Peak(beta=float(b_hat), intensity=float(i_hat), order_index=order))
    return tuple(peaks)


def two_slit_order_angles(
    config: SimConfig, j_max: int, hbar: float = HBAR
) -> tuple[tuple[int, float], ...]:
    """Angles beta_j = arcsin(j*lambda/(a+d)) of the two-slit maxima in range."""
    if j_max < 1:
        raise ValueError("j_max must be >= 1")
    lam = de_broglie_wavelength(config.beam, hbar)
    spacing = config.slits.width_a + config.slits.separation_d
    s_limit = min(math.sin(config.detector.beta_max), math.cos(config.beam.alpha))
    out = []
    for j in range(1, j_max + 1):
        s = j * lam / spacing
        if s >= s_limit:
            break
        out.append((j, math.asin(s)))
    return tuple(out)


def _intensity_at(sin_beta: np.ndarray, inten: np.ndarray, s_center: float) -> float:
    return float(inten[np.argmin(np.abs(sin_beta - s_center))])


def _peak_intensity(
    sin_beta: np.ndarray, inten: np.ndarray, s_center: float, s_half_window: float
) -> Optional[float]:
    mask = np.abs(sin_beta - s_center) <= s_half_window
    if not mask.any():
        return None
    return float(inten[mask].max())


def missing_orders(
    config: SimConfig,
    scan: DiffractionScan,
    threshold: float = DEFAULT_SUPPRESSION_THRESHOLD,
    hbar: float = HBAR,
) -> MissingOrderReport:
    """Analytic (ratio rule) and numeric (suppression) missing orders.

    Analytic: multiples of n when (d+a)/a is the integer n.  Numeric: the
    intensity at the order position beta_j falls below threshold times the
    median of the neighboring (j-1, j+1) order peak intensities.  Both are
    restricted to orders inside the scanned range; an order grazing the
    scan edge (the missing order of a wavelength-wide slit sits at
    sin(beta) = 1) is evaluated at the edge row.
    """
    if not 0 < threshold < 1:
        raise ValueError("threshold must be in (0, 1)")
    if scan.config_echo != config:
        raise ValueError("scan was produced from a different configuration")

    lam = de_broglie_wavelength(config.beam, hbar)
    a = config.slits.width_a
    d = config.slits.separation_d
    ratio = (d + a) / a
    spacing_s = lam / (a + d)

    beta = np.array([r.beta for r in scan.rows])
    inten = np.array([r.intensity_total for r in scan.rows])
    sin_beta = np.sin(beta)
    s_scan_max = float(sin_beta.max())

    candidates = []
    j = 1
    while True:
        s_j = j * spacing_s
        if s_j > 1.0 or s_j > s_scan_max + GRAZING_SINE_TOL:
            break
        candidates.append(j)
        j += 1

    n_int = round(ratio)
    is_integer_ratio = n_int >= 1 and abs(ratio - n_int) <= RATIO_INT_TOL * ratio
    analytic = (
        tuple(j for j in candidates if j % n_int == 0) if is_integer_ratio else ()
    )

    # The candidate is sampled at the order position (clamped to the scan
    # edge for grazing orders); neighbors use the fringe peak near their
    # position, since the suppressed order is compared against what its
    # neighbors actually reach.
    at_position: dict[int, float] = {}
    peak_near: dict[int, float] = {}
    for j in candidates:
        s_j = min(j * spacing_s, s_scan_max)
        at_position[j] = _intensity_at(sin_beta, inten, s_j)
        value = _peak_intensity(sin_beta, inten, s_j, 0.4 * spacing_s)
        if value is not None:
            peak_near[j] = value

    numeric = []
    for j in candidates:
        neighbors = [peak_near[i] for i in (j - 1, j + 1) if i in peak_near]
        if not neighbors:
            continue
        if at_position[j] < threshold * float(np.median(neighbors)):
            numeric.append(j)

    return MissingOrderReport(
        ratio=ratio,
        analytic_missing=analytic,
        numeric_missing=tuple(numeric),
        suppression_threshold=threshold,
    )


def factorization_audit(config: SimConfig, scan: DiffractionScan, hbar: float = HBAR) -> float:
    """Max relative residual of I_total = I_slit1 * 4 cos^2(k sin(beta) (a+d)/2)."""
    if not scan.rows:
        raise ValueError("scan is empty")
    k = wavenumber(config.beam, hbar)
    spacing = config.slits.width_a + config.slits.separation_d
    worst = 0.0
    tiny = np.finfo(float).tiny
    for row in scan.rows:
        predicted = row.intensity_slit1 * 4.0 * math.cos(0.5 * k * math.sin(row.beta) * spacing) ** 2
        residual = abs(row.intensity_total - predicted) / max(row.intensity_total, tiny)
        worst = max(worst, residual)
    return worst


def report_rows(
    config: SimConfig,
    scan: DiffractionScan,
    report: MissingOrderReport,
    hbar: float = HBAR,
) -> tuple[tuple[int, float, float, bool, bool], ...]:
    """Machine-readable order rows (order, beta_rad, intensity, analytic, numeric)."""
    lam = de_broglie_wavelength(config.beam, hbar)
    spacing_s = lam / (config.slits.width_a + config.slits.separation_d)
    beta = np.array([r.beta for r in scan.rows])
    inten = np.array([r.intensity_total for r in scan.rows])
    sin_beta = np.sin(beta)
    s_scan_max = float(sin_beta.max())

    out = []
    j = 1
    while True:
        s_j = j * spacing_s
        if s_j > 1.0 or s_j > s_scan_max + GRAZING_SINE_TOL:
            break
        value = _intensity_at(sin_beta, inten, min(s_j, s_scan_max))
        out.append(
            (
                j,
                math.asin(min(s_j, 1.0)),
                value,
                j in report.analytic_missing,
                j in report.numeric_missing,
            )
        )
        j += 1
    return tuple(out)


def report_text(
    config: SimConfig, scan: DiffractionScan, report: MissingOrderReport
) -> str:
    """Plain-text missing-order report block."""
    lines = [
        "missing-order report",
        f"  ratio (d+a)/a       : {report.ratio:.12g}",
        f"  suppression thresh  : {report.suppression_threshold:g}",
        f"  analytic missing    : {list(report.analytic_missing) or 'none'}",
        f"  numeric missing     : {list(report.numeric_missing) or 'none'}",
        "  order  beta_rad      intensity      analytic numeric",
    ]
    for j, b, value, ana, num in report_rows(config, scan, report):
        lines.append(
            f"  {j:>5d}  {b:<12.6g}  {value:<13.6g}  {str(ana):<8s} {num}"
        )
    return "\n".join(lines) + "\n"
