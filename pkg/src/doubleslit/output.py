"""CSV and SVG emission for diffraction scans.

Both formats are byte-deterministic for identical scans; numbers are
written with 17 significant digits so re-parsing reproduces the doubles
bit-exactly.
"""

from __future__ import annotations

from pathlib import Path

from .farfield import DiffractionScan

CSV_HEADER = "beta_rad,intensity_total,intensity_slit1,two_slit_factor,intensity_normalized"

_SVG_WIDTH = 800
_SVG_HEIGHT = 600
_MARGIN = 60


def _g17(x: float) -> str:
    return format(x, ".17g")


def scan_csv(scan: DiffractionScan) -> str:
    lines = [CSV_HEADER]
    for r in scan.rows:
        lines.append(
            ",".join(
                _g17(v)
                for v in (
                    r.beta,
                    r.intensity_total,
                    r.intensity_slit1,
                    r.two_slit_factor,
                    r.intensity_normalized,
                )
            )
        )
    return "\n".join(lines) + "\n"


def write_csv(scan: DiffractionScan, path) -> None:
    Path(path).write_text(scan_csv(scan), encoding="utf-8", newline="\n")


def scan_svg(scan: DiffractionScan) -> str:
    """Standalone SVG polyline of (beta, normalized intensity)."""
    if len(scan.rows) < 2:
        raise ValueError("plot needs at least 2 rows")
    b0 = scan.rows[0].beta
    b1 = scan.rows[-1].beta
    span = b1 - b0
    w = _SVG_WIDTH - 2 * _MARGIN
    h = _SVG_HEIGHT - 2 * _MARGIN
    points = " ".join(
        f"{_MARGIN + (r.beta - b0) / span * w:.3f},"
        f"{_SVG_HEIGHT - _MARGIN - r.intensity_normalized * h:.3f}"
        for r in scan.rows
    )
    return (
        '<svg xmlns="http://www.w3.org/2000/svg" '
        f'viewBox="0 0 {_SVG_WIDTH} {_SVG_HEIGHT}">\n'
        f'<rect width="{_SVG_WIDTH}" height="{_SVG_HEIGHT}" fill="white"/>\n'
        f'<line x1="{_MARGIN}" y1="{_SVG_HEIGHT - _MARGIN}" x2="{_SVG_WIDTH - _MARGIN}" '
        f'y2="{_SVG_HEIGHT - _MARGIN}" stroke="black"/>\n'
        f'<line x1="{_MARGIN}" y1="{_MARGIN}" x2="{_MARGIN}" '
        f'y2="{_SVG_HEIGHT - _MARGIN}" stroke="black"/>\n'
        f'<text x="{_SVG_WIDTH // 2}" y="{_SVG_HEIGHT - 20}" '
        'text-anchor="middle" font-family="monospace">beta(rad)</text>\n'
        f'<text x="20" y="{_SVG_HEIGHT // 2}" text-anchor="middle" '
        'font-family="monospace">I</text>\n'
        f'<polyline fill="none" stroke="blue" stroke-width="1" points="{points}"/>\n'
        "</svg>\n"
    )


def write_plot(scan: DiffractionScan, path) -> None:
    Path(path).write_text(scan_svg(scan), encoding="utf-8", newline="\n")
