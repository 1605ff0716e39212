"""Independent adaptive-quadrature reference for the closed forms.

Adaptive Simpson with interval bisection, applied to complex integrands.
The initial panel count scales with the oscillation count of the
integrand so no oscillation is straddled by a single panel.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .config import HBAR, SimConfig, wavenumber
from .modes import enumerate_modes, thickness_attenuation

MAX_DEPTH = 60


class QuadratureDepthError(RuntimeError):
    """Recursion-depth cap reached before convergence."""

    def __init__(self, lo: float, hi: float):
        super().__init__(f"adaptive Simpson depth exhausted on subinterval [{lo}, {hi}]")
        self.subinterval = (lo, hi)


@dataclass(frozen=True)
class QuadratureResult:
    value: complex
    abs_error_estimate: float
    evaluations: int


def integrate_1d(
    f: Callable[[float], complex],
    lo: float,
    hi: float,
    tol: float,
    max_depth: int = MAX_DEPTH,
    panels: int = 1,
) -> QuadratureResult:
    """Adaptive Simpson integral of a complex-valued f over [lo, hi]."""
    if not lo < hi:
        raise ValueError("integration bounds must satisfy lo < hi")
    if tol <= 0:
        raise ValueError("tol must be > 0")
    panels = max(1, int(panels))

    count = [0]

    def feval(x: float) -> complex:
        count[0] += 1
        return complex(f(x))

    def recurse(a, b, fa, fm, fb, whole, tol_here, depth):
        m = 0.5 * (a + b)
        if not a < m < b:
            # No representable midpoint left; the panel cannot be refined.
            return whole, 0.0
        lm = 0.5 * (a + m)
        rm = 0.5 * (m + b)
        flm = feval(lm)
        frm = feval(rm)
        h = b - a
        left = (h / 12.0) * (fa + 4.0 * flm + fm)
        right = (h / 12.0) * (fm + 4.0 * frm + fb)
        est = (left + right - whole) / 15.0
        # Roundoff floor: once the estimate falls below machine noise on the
        # panel's quadrature sum, further bisection cannot improve it.
        scale = (abs(fa) + 4.0 * abs(flm) + 2.0 * abs(fm) + 4.0 * abs(frm) + abs(fb)) * (
            h / 12.0
        )
        if abs(est) <= max(tol_here, 4e-15 * scale):
            # Richardson extrapolation term included in the value.
            return left + right + est, abs(est)
        if depth >= max_depth:
            raise QuadratureDepthError(a, b)
        v1, e1 = recurse(a, m, fa, flm, fm, left, 0.5 * tol_here, depth + 1)
        v2, e2 = recurse(m, b, fm, frm, fb, right, 0.5 * tol_here, depth + 1)
        return v1 + v2, e1 + e2

    total = 0j
    err = 0.0
    edges = np.linspace(lo, hi, panels + 1)
    for a, b in zip(edges[:-1], edges[1:]):
        a = float(a)
        b = float(b)
        fa = feval(a)
        fm = feval(0.5 * (a + b))
        fb = feval(b)
        whole = ((b - a) / 6.0) * (fa + 4.0 * fm + fb)
        value, e = recurse(a, b, fa, fm, fb, whole, tol / panels, 0)
        total += value
        err += e
    return QuadratureResult(value=total, abs_error_estimate=err, evaluations=count[0])


def oracle_sine_fourier(p: int, q: float, L: float, tol: float = 1e-12) -> complex:
    """Quadrature of integral_0^L exp(-i q y) sin(p pi y / L) dy."""
    if p <= 0 or p % 2 == 0:
        raise ValueError("p must be a positive odd integer")
    panels = p + math.ceil(abs(q) * L / math.pi) + 1

    def f(y: float) -> complex:
        return cmath.exp(-1j * q * y) * math.sin(p * math.pi * y / L)

    return integrate_1d(f, 0.0, L, tol * L, panels=panels).value


def oracle_surface_amplitude(
    angles, config: SimConfig, tol: float = 1e-9, hbar: float = HBAR
) -> complex:
    """Nested 1D quadrature of the exit-face Kirchhoff surface integral.

    The mode sum stays inside the integrand; only the x' and y' integrals
    are evaluated numerically.  tol is relative to a crude magnitude scale
    of the integrand sum.
    """
    k = wavenumber(config.beam, hbar)
    slits = config.slits
    a, b, c = slits.width_a, slits.length_b, slits.thickness_c
    R = config.detector.distance_R
    q_x = k * math.sin(angles.alpha)
    q_y = k * math.sin(angles.beta)
    g2 = math.cos(angles.alpha) ** 2 - math.sin(angles.beta) ** 2
    if g2 <= 0.0:
        raise ValueError("direction outside the forward hemisphere")
    cterm = 1j * k - 1.0 / R

    terms = enumerate_modes(config, hbar)
    m_orders = sorted({t.index.m for t in terms})
    n_orders = sorted({t.index.n for t in terms})
    m_pos = {m: i for i, m in enumerate(m_orders)}
    n_pos = {n: i for i, n in enumerate(n_orders)}
    weight = np.zeros((len(m_orders), len(n_orders)), dtype=complex)
    for t in terms:
        bracket = 1j * t.k_z + cterm * math.sqrt(g2)
        weight[m_pos[t.index.m], n_pos[t.index.n]] = (
            t.coefficient * thickness_attenuation(t.k_z, c) * bracket
        )

    w_m = np.array([(2 * m + 1) * math.pi / a for m in m_orders])
    w_n = np.array([(2 * n + 1) * math.pi / b for n in n_orders])
    scale = float(np.abs(weight).sum()) * (2 * b / math.pi) * (2 * a / math.pi)
    outer_tol = tol * scale
    inner_tol = outer_tol / a

    inner_panels = (2 * max(n_orders) + 1) + math.ceil(abs(q_x) * b / math.pi) + 1
    outer_panels = (2 * max(m_orders) + 1) + math.ceil(abs(q_y) * a / math.pi) + 1

    def outer_f(yp: float) -> complex:
        coeff_n = np.sin(w_m * yp).astype(complex) @ weight

        def inner_f(xp: float) -> complex:
            return cmath.exp(-1j * q_x * xp) * complex(coeff_n @ np.sin(w_n * xp))

        inner = integrate_1d(inner_f, 0.0, b, inner_tol, panels=inner_panels)
        return cmath.exp(-1j * q_y * yp) * inner.value

    outer = integrate_1d(outer_f, 0.0, a, outer_tol, panels=outer_panels)
    envelope = (
        -cmath.exp(1j * k * R)
        / (4.0 * math.pi * R)
        * cmath.exp(-1j * config.beam.energy * config.evaluation_time / hbar)
    )
    return envelope * outer.value
