"""Normal-Mach-number sweeps of the wall pressure ratio and entropy contribution.

Produces the comparison data for all wall flux kinds on a uniform Ma_n grid,
as deterministic CSV (17 significant digits, LF line endings) or as a minimal
static SVG with one polyline per kind.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from xml.sax.saxutils import escape

import numpy as np

from . import wall
from .errors import InvalidRange
from .euler import GasModel
from .wall import WallFluxKind

CSV_HEADER = "ma_n,kind,pstar_ratio,delta_s"

DEFAULT_KINDS = tuple(WallFluxKind)


@dataclass(frozen=True)
class SweepSpec:
    """Sweep parameters.

    The default range reproduces the wide comparison (|Ma_n| <= 5, stopping a
    vacuum guard above the exact-solution vacuum limit for gamma = 7/5);
    :meth:`narrow` gives the |Ma_n| <= 1 close-up.
    """

    gamma: float = 1.4
    ma_min: float = -5.0 + 1e-3
    ma_max: float = 5.0
    samples: int = 2001
    kinds: tuple[WallFluxKind, ...] = DEFAULT_KINDS
    rho_c: float = 1.0
    vacuum_guard: float = 1e-3

    def __post_init__(self):
        if not self.ma_min < self.ma_max:
            raise InvalidRange(f"ma_min {self.ma_min} must be below ma_max {self.ma_max}")
        if self.samples < 2:
            raise InvalidRange("samples must be at least 2")
        object.__setattr__(self, "kinds", tuple(self.kinds))

    @classmethod
    def narrow(cls, **overrides) -> "SweepSpec":
        overrides.setdefault("ma_min", -1.0)
        overrides.setdefault("ma_max", 1.0)
        return cls(**overrides)

    def grid(self) -> np.ndarray:
        """Uniform sample grid; the node nearest zero is snapped onto Ma_n = 0
        when the range straddles it, so the exactly-satisfied boundary
        condition is always sampled."""
        grid = np.linspace(self.ma_min, self.ma_max, self.samples)
        if self.ma_min < 0.0 < self.ma_max:
            grid[int(np.argmin(np.abs(grid)))] = 0.0
        return grid


@dataclass(frozen=True)
class SweepCurve:
    kind: WallFluxKind
    ma: np.ndarray
    ratio: np.ndarray
    delta_s: np.ndarray


@dataclass(frozen=True)
class SweepResult:
    spec: SweepSpec
    curves: tuple[SweepCurve, ...] = field(default_factory=tuple)

    def curve(self, kind: WallFluxKind) -> SweepCurve:
        for c in self.curves:
            if c.kind is kind:
                return c
        raise KeyError(kind)


def run_sweep(spec: SweepSpec) -> SweepResult:
    """Evaluate pstar_ratio and delta_s for every requested kind on the grid.

    Exact-RP samples at or below vacuum_limit + vacuum_guard are dropped from
    that curve; all other kinds are defined on the whole grid.
    """
    gas = GasModel(spec.gamma)
    grid = spec.grid()
    c = 1.0  # rho_c scales the product (rho c); split immaterial for delta_s
    curves = []
    for kind in spec.kinds:
        ma = grid
        if kind is WallFluxKind.EXACT_RP:
            cutoff = wall.vacuum_limit(gas) + spec.vacuum_guard
            ma = grid[grid >= cutoff]
        ratio = np.asarray(wall.pstar_ratio(kind, ma, gas))
        ds = wall.delta_s(spec.rho_c, c, ma, ratio)
        curves.append(SweepCurve(kind=kind, ma=ma, ratio=ratio, delta_s=ds))
    return SweepResult(spec=spec, curves=tuple(curves))


def write_sweep_csv(result: SweepResult, path) -> None:
    lines = [CSV_HEADER]
    for curve in result.curves:
        name = curve.kind.value
        for m, r, d in zip(curve.ma, curve.ratio, curve.delta_s):
            lines.append(f"{m:.17g},{name},{r:.17g},{d:.17g}")
    Path(path).write_text("\n".join(lines) + "\n", newline="\n")


_PALETTE = (
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
    "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
)


def write_sweep_svg(result: SweepResult, path, width: int = 900, height: int = 620) -> None:
    """Static plot of delta_s over Ma_n, one polyline per kind."""
    margin = 70
    x_lo = min(float(c.ma.min()) for c in result.curves)
    x_hi = max(float(c.ma.max()) for c in result.curves)
    y_lo = min(float(c.delta_s.min()) for c in result.curves)
    y_hi = max(float(c.delta_s.max()) for c in result.curves)
    if y_hi == y_lo:
        y_hi = y_lo + 1.0
    pad = 0.05 * (y_hi - y_lo)
    y_lo -= pad
    y_hi += pad

    def sx(v):
        return margin + (v - x_lo) / (x_hi - x_lo) * (width - 2 * margin)

    def sy(v):
        return height - margin - (v - y_lo) / (y_hi - y_lo) * (height - 2 * margin)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]
    # axes
    parts.append(
        f'<line x1="{margin}" y1="{height - margin}" x2="{width - margin}" '
        f'y2="{height - margin}" stroke="black"/>'
    )
    parts.append(
        f'<line x1="{margin}" y1="{margin}" x2="{margin}" y2="{height - margin}" stroke="black"/>'
    )
    if y_lo < 0.0 < y_hi:  # reference line delta_s = 0
        parts.append(
            f'<line x1="{margin}" y1="{sy(0.0):.2f}" x2="{width - margin}" '
            f'y2="{sy(0.0):.2f}" stroke="#bbbbbb" stroke-dasharray="4 4"/>'
        )
    for frac in (0.0, 0.25, 0.5, 0.75, 1.0):
        xv = x_lo + frac * (x_hi - x_lo)
        yv = y_lo + frac * (y_hi - y_lo)
        parts.append(
            f'<text x="{sx(xv):.2f}" y="{height - margin + 22}" font-size="13" '
            f'text-anchor="middle">{xv:.3g}</text>'
        )
        parts.append(
            f'<text x="{margin - 8}" y="{sy(yv):.2f}" font-size="13" '
            f'text-anchor="end">{yv:.3g}</text>'
        )
    parts.append(
        f'<text x="{width / 2:.0f}" y="{height - 18}" font-size="15" '
        f'text-anchor="middle">Ma_n</text>'
    )
    parts.append(
        f'<text x="20" y="{height / 2:.0f}" font-size="15" text-anchor="middle" '
        f'transform="rotate(-90 20 {height / 2:.0f})">delta_s</text>'
    )

    for i, curve in enumerate(result.curves):
        color = _PALETTE[i % len(_PALETTE)]
        pts = " ".join(
            f"{sx(m):.3f},{sy(d):.3f}" for m, d in zip(curve.ma, curve.delta_s)
        )
        parts.append(
            f'<polyline fill="none" stroke="{color}" stroke-width="1.6" points="{pts}"/>'
        )
        ly = margin + 18 * (i + 1)
        parts.append(
            f'<line x1="{width - margin - 130}" y1="{ly - 4}" x2="{width - margin - 100}" '
            f'y2="{ly - 4}" stroke="{color}" stroke-width="2"/>'
        )
        parts.append(
            f'<text x="{width - margin - 92}" y="{ly}" font-size="13">'
            f"{escape(curve.kind.value)}</text>"
        )
    parts.append("</svg>")
    Path(path).write_text("\n".join(parts) + "\n", newline="\n")
