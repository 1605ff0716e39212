"""Built-in parameter presets for the twelve published diffraction setups.

Geometry is given in de Broglie wavelengths of the default 0.001 eV
electron beam; the scan grid is chosen wide enough to cover the labeled
interference orders of every preset.
"""

from __future__ import annotations

from .config import SimConfig, parse_config

# figure id -> (a, b, c, d) in wavelengths
FIGURE_GEOMETRY: dict[int, tuple[float, float, float, float]] = {
    3: (1.0, 1000.0, 1.0, 5.0),
    4: (1.0, 1000.0, 1.0, 5.5),
    5: (5.0, 1000.0, 1.0, 10.0),
    6: (5.0, 1000.0, 1.0, 12.0),
    7: (5.0, 1000.0, 1.0, 25.0),
    8: (20.0, 1000.0, 1.0, 40.0),
    9: (30.0, 1000.0, 1.0, 60.0),
    10: (50.0, 1000.0, 1.0, 100.0),
    11: (10.0, 1000.0, 0.0, 20.0),
    12: (10.0, 1000.0, 10.0, 20.0),
    13: (10.0, 1000.0, 100.0, 20.0),
    14: (10.0, 1000.0, 1000.0, 20.0),
}

DEFAULT_BETA_RANGE = (-0.45, 0.45)
DEFAULT_STEPS = 2001


def figure_config_text(figure_id: int) -> str:
    """Config-file text for a figure preset."""
    if figure_id not in FIGURE_GEOMETRY:
        raise ValueError(f"unknown figure id {figure_id}; expected 3-14")
    a, b, c, d = FIGURE_GEOMETRY[figure_id]
    lo, hi = DEFAULT_BETA_RANGE
    return (
        f"# preset geometry {figure_id}\n"
        f"a = {a!r} lambda\n"
        f"b = {b!r} lambda\n"
        f"c = {c!r} lambda\n"
        f"d = {d!r} lambda\n"
        f"beta_min_rad = {lo!r}\n"
        f"beta_max_rad = {hi!r}\n"
        f"beta_steps = {DEFAULT_STEPS}\n"
    )


def figure_config(figure_id: int) -> SimConfig:
    """SimConfig for a figure preset."""
    return parse_config(figure_config_text(figure_id))
