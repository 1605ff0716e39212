"""Closed-form far-field amplitudes and intensity scans.

The per-slit amplitude is a mode sum: each mode contributes its
coefficient, the thickness propagation factor, an obliquity prefactor
combining the axial wavenumber with the observation direction cosine, and
two 1D sine Fourier integrals (one along the slit length at fixed alpha,
one across the width as a function of beta).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .config import HBAR, SimConfig, wavenumber
from .modes import ModeTerm, enumerate_modes, thickness_attenuation

SINGULAR_EPS = kernels.SINGULAR_EPS


@dataclass(frozen=True)
class DirectionAngles:
    """Observation direction; alpha out of plane, beta the scan angle."""

    alpha: float
    beta: float

    def __post_init__(self) -> None:
        if math.sin(self.alpha) ** 2 + math.sin(self.beta) ** 2 >= 1.0:
            raise ValueError(
                f"invalid direction (alpha={self.alpha}, beta={self.beta}): "
                "sin^2(alpha) + sin^2(beta) must be < 1"
            )


@dataclass(frozen=True)
class ComplexAmplitude:
    value: complex
    angles: DirectionAngles

    def __post_init__(self) -> None:
        if not (math.isfinite(self.value.real) and math.isfinite(self.value.imag)):
            raise ValueError("amplitude must be finite")


@dataclass(frozen=True)
class ScanRow:
    beta: float
    intensity_total: float
    intensity_slit1: float
    two_slit_factor: float
    intensity_normalized: float


@dataclass(frozen=True)
class DiffractionScan:
    config_echo: SimConfig
    rows: tuple[ScanRow, ...]


def sine_fourier_integral(p: int, q: float, L: float) -> complex:
    """Closed form of integral_0^L exp(-i q y) sin(p pi y / L) dy, p odd.

    Switches to the analytic limit -iL/2 (+iL/2 at q = -p*pi/L) inside the
    removable-singularity window |q -/+ p*pi/L|*L < 1e-8.
    """
    if p <= 0 or p % 2 == 0:
        raise ValueError("p must be a positive odd integer")
    if L <= 0:
        raise ValueError("L must be > 0")
    w = p * math.pi / L
    if abs(q - w) * L < SINGULAR_EPS:
        return complex(0.0, -0.5 * L)
    if abs(q + w) * L < SINGULAR_EPS:
        return complex(0.0, 0.5 * L)
    return w * (1.0 + cmath.exp(-1j * q * L)) / (w * w - q * q)


def obliquity_prefactor(
    term: ModeTerm, angles: DirectionAngles, k: float, R: float
) -> complex:
    """Bracket factor i*k_z + (i*k - 1/R) * sqrt(cos^2(alpha) - sin^2(beta))."""
    g2 = math.cos(angles.alpha) ** 2 - math.sin(angles.beta) ** 2
    if g2 <= 0.0:
        raise ValueError(
            f"direction beta={angles.beta} outside the forward hemisphere "
            "(cos^2(alpha) - sin^2(beta) <= 0)"
        )
    return 1j * term.k_z + (1j * k - 1.0 / R) * math.sqrt(g2)


@dataclass(frozen=True)
class _ScanPlan:
    """Per-scan precomputation shared by the slit-1 and slit-2 paths."""

    w_y: np.ndarray  # distinct (2m+1)*pi/a, one entry per surviving m
    amp_grad: np.ndarray  # per-m sums including i*k_z (gradient term)
    amp_field: np.ndarray  # per-m sums of coefficient*attenuation*X_n
    envelope: complex  # -exp(ikR)/(4 pi R) * exp(-iEt/hbar)
    cterm: complex  # i*k - 1/R
    k: float


def _build_plan(config: SimConfig, hbar: float = HBAR) -> _ScanPlan:
    k = wavenumber(config.beam, hbar)
    slits = config.slits
    R = config.detector.distance_R
    alpha = config.beam.alpha
    q_x = k * math.sin(alpha)

    # The x' integrals depend only on n; compute each once per scan.
    x_cache: dict[int, complex] = {}
    grad: dict[int, complex] = {}
    field: dict[int, complex] = {}
    for term in enumerate_modes(config, hbar):
        m, n = term.index.m, term.index.n
        x_n = x_cache.get(n)
        if x_n is None:
            x_n = x_cache[n] = sine_fourier_integral(2 * n + 1, q_x, slits.length_b)
        base = term.coefficient * thickness_attenuation(term.k_z, slits.thickness_c) * x_n
        grad[m] = grad.get(m, 0j) + base * (1j * term.k_z)
        field[m] = field.get(m, 0j) + base

    ms = sorted(grad)
    w_y = np.array([(2 * m + 1) * math.pi / slits.width_a for m in ms])
    envelope = (
        -cmath.exp(1j * k * R)
        / (4.0 * math.pi * R)
        * cmath.exp(-1j * config.beam.energy * config.evaluation_time / hbar)
    )
    return _ScanPlan(
        w_y=w_y,
        amp_grad=np.array([grad[m] for m in ms]),
        amp_field=np.array([field[m] for m in ms]),
        envelope=envelope,
        cterm=1j * k - 1.0 / R,
        k=k,
    )


def _amplitudes(
    plan: _ScanPlan, config: SimConfig, betas: np.ndarray, shift: float
) -> np.ndarray:
    sinb = np.sin(betas)
    g2 = math.cos(config.beam.alpha) ** 2 - sinb**2
    if np.any(g2 <= 0.0):
        beta = float(betas[np.argmax(g2 <= 0.0)])
        raise ValueError(f"beta={beta} outside the forward hemisphere")
    psi = kernels.mode_sum(
        plan.w_y,
        plan.amp_grad,
        plan.amp_field,
        plan.k * sinb,
        np.sqrt(g2),
        config.slits.width_a,
        shift,
        plan.cterm,
    )
    return plan.envelope * psi


def slit1_amplitude(
    angles: DirectionAngles, config: SimConfig, hbar: float = HBAR
) -> ComplexAmplitude:
    """Far-field amplitude of the first slit at one direction."""
    plan = _build_plan(config, hbar)
    psi = _amplitudes(plan, config, np.array([angles.beta]), 0.0)
    return ComplexAmplitude(complex(psi[0]), angles)


def slit2_amplitude(
    angles: DirectionAngles, config: SimConfig, hbar: float = HBAR
) -> ComplexAmplitude:
    """Far-field amplitude of the second slit (y' integral over [a+d, 2a+d])."""
    plan = _build_plan(config, hbar)
    shift = config.slits.width_a + config.slits.separation_d
    psi = _amplitudes(plan, config, np.array([angles.beta]), shift)
    return ComplexAmplitude(complex(psi[0]), angles)


def two_slit_factor(beta: float, config: SimConfig, hbar: float = HBAR) -> float:
    """Interference modulation 4*cos^2(k sin(beta) (a+d)/2)."""
    k = wavenumber(config.beam, hbar)
    spacing = config.slits.width_a + config.slits.separation_d
    return 4.0 * math.cos(0.5 * k * math.sin(beta) * spacing) ** 2


def total_intensity(
    angles: DirectionAngles, config: SimConfig, hbar: float = HBAR
) -> float:
    """Relative intensity |psi1 + psi2|^2 at one direction."""
    plan = _build_plan(config, hbar)
    betas = np.array([angles.beta])
    shift = config.slits.width_a + config.slits.separation_d
    psi1 = _amplitudes(plan, config, betas, 0.0)
    psi2 = _amplitudes(plan, config, betas, shift)
    return float(abs(psi1[0] + psi2[0]) ** 2)


def scan(config: SimConfig, hbar: float = HBAR) -> DiffractionScan:
    """Intensity scan over the detector's uniform beta grid."""
    betas = config.detector.grid()
    plan = _build_plan(config, hbar)
    shift = config.slits.width_a + config.slits.separation_d
    psi1 = _amplitudes(plan, config, betas, 0.0)
    psi2 = _amplitudes(plan, config, betas, shift)
    i_total = np.abs(psi1 + psi2) ** 2
    i_slit1 = np.abs(psi1) ** 2
    factor = 4.0 * np.cos(0.5 * plan.k * np.sin(betas) * shift) ** 2
    peak = float(i_total.max())
    norm = i_total / peak if peak > 0.0 else np.zeros_like(i_total)
    rows = tuple(
        ScanRow(
            beta=float(betas[j]),
            intensity_total=float(i_total[j]),
            intensity_slit1=float(i_slit1[j]),
            two_slit_factor=float(factor[j]),
            intensity_normalized=float(norm[j]),
        )
        for j in range(betas.size)
    )
    return DiffractionScan(config_echo=config, rows=rows)
