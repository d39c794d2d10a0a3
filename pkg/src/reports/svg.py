"""Graphon Entropy v1.0 — Diagramme de phases SVG

Canevas SVG 1.1 minimal (cercles, polylignes, texte) avec boîte englobante
suivie au fil des tracés. Le diagramme place chaque cellule de balayage en
(e, t), colorée par region_tag, sous les courbes t_min(e), e³ et e^{3/2}.

Date: Octobre 2026
"""

import logging
from pathlib import Path
from typing import Dict, List, Tuple

import numpy as np
import pandas as pd

from src.boundary.razborov import er_curve, max_triangle_density, min_triangle_density

import sys
sys.path.insert(0, str(Path(__file__).parent.parent.parent))

try:
    from config import SWEEP
except ImportError:
    SWEEP = {"svg_curve_points": 101}

logger = logging.getLogger(__name__)

PREAMBLE = """\
<?xml version="1.0" standalone="no"?>
<!DOCTYPE svg PUBLIC "-//W3C//DTD SVG 1.1//EN"
"http://www.w3.org/Graphics/SVG/1.1/DTD/svg11.dtd">
<svg width="%(width)fmm" height="%(height)fmm" viewBox="%(min_x)f %(min_y)f %(width)f %(height)f"
    version="1.1" xmlns="http://www.w3.org/2000/svg">
<rect x="%(min_x)f" y="%(min_y)f" width="%(width)f" height="%(height)f" style="fill:#ffffff"/>
"""

POSTAMBLE = """\
</svg>
"""

REGION_COLORS: Dict[str, str] = {
    "ER": "#1f77b4",
    "A(2,0)": "#2ca02c",
    "C": "#d62728",
    "F(1,1)": "#9467bd",
    "unclassified": "#7f7f7f",
    "failed": "#000000",
}

CURVE_COLORS = {"t_min": "#444444", "er": "#1f77b4", "t_max": "#444444"}


def region_color(tag: str) -> str:
    if isinstance(tag, str) and tag.startswith("C("):
        return REGION_COLORS["C"]
    return REGION_COLORS.get(tag, REGION_COLORS["unclassified"])


class PhaseDiagramSVG:
    """Canevas en millimètres; y vers le bas, ordonnées donc négatives."""

    def __init__(self, size: float = 150.0):
        self.size = size
        self.min_x = None
        self.max_x = None
        self.min_y = None
        self.max_y = None
        self.commands: List[str] = []

    # === Primitives ===

    def require(self, x: float, y: float) -> None:
        if self.min_x is None:
            self.min_x = self.max_x = x
            self.min_y = self.max_y = y
        else:
            self.min_x = min(self.min_x, x)
            self.max_x = max(self.max_x, x)
            self.min_y = min(self.min_y, y)
            self.max_y = max(self.max_y, y)

    def circle(self, x: float, y: float, diameter: float, fill: str = "#000000") -> None:
        radius = diameter * 0.5
        self.require(x - radius, y - radius)
        self.require(x + radius, y + radius)
        self.commands.append(
            '<circle cx="%(x)f" cy="%(y)f" r="%(radius)f" style="fill:%(fill)s;stroke:none"/>' % locals()
        )

    def line(self, points: List[Tuple[float, float]], color: str = "#000000", width: float = 0.25) -> None:
        for x, y in points:
            self.require(x, y)
        self.commands.append(
            '<polyline points="%s" style="fill:none;stroke:%s;stroke-width:%fmm" />' % (
                " ".join("%f,%f" % item for item in points),
                color,
                width,
            )
        )

    def text(self, x: float, y: float, text: str, color: str = "#666666") -> None:
        font_height = 3.5
        self.require(x, y - font_height)
        self.require(x + len(text) * font_height * 0.6, y)
        self.commands.append(
            '<text x="%(x)f" y="%(y)f" fill="%(color)s" font-size="%(font_height)f" '
            'font-family="monospace" xml:space="preserve">%(text)s</text>' % locals()
        )

    def render(self) -> str:
        if self.min_x is None:
            self.require(0.0, 0.0)
        pad = max(self.max_x - self.min_x, self.max_y - self.min_y, 1.0) * 0.05
        min_x = self.min_x - pad
        min_y = self.min_y - pad
        width = self.max_x - self.min_x + 2 * pad
        height = self.max_y - self.min_y + 2 * pad
        return PREAMBLE % locals() + "".join(item + "\n" for item in self.commands) + POSTAMBLE

    def save(self, path) -> None:
        path = Path(path)
        with open(path, "w", encoding="utf-8") as f:
            f.write(self.render())
        logger.info(f"SVG écrit: {path}")

    # === Diagramme (e, t) ===

    def to_canvas(self, e: float, t: float) -> Tuple[float, float]:
        return e * self.size, -t * self.size

    def plot_boundaries(self, n_points: int = None) -> None:
        n_points = SWEEP["svg_curve_points"] if n_points is None else n_points
        grid = np.linspace(0.0, 1.0, n_points)
        curves = {
            "t_min": min_triangle_density,
            "er": er_curve,
            "t_max": max_triangle_density,
        }
        for name, fn in curves.items():
            self.line([self.to_canvas(e, fn(e)) for e in grid], CURVE_COLORS[name], 0.3)

    def plot_cells(self, df: pd.DataFrame, diameter: float = 1.5) -> None:
        for row in df.itertuples(index=False):
            x, y = self.to_canvas(float(row.e), float(row.t))
            self.circle(x, y, diameter, region_color(row.region_tag))

    def plot_legend(self, tags: List[str]) -> None:
        x = self.size * 1.05
        for i, tag in enumerate(tags):
            y = -self.size + 6.0 * i
            self.circle(x, y - 1.0, 2.0, region_color(tag))
            self.text(x + 3.0, y, tag)


def sweep_svg(df: pd.DataFrame, path=None) -> str:
    """Diagramme complet d'un balayage (colonnes e, t, region_tag)."""
    canvas = PhaseDiagramSVG()
    canvas.plot_boundaries()
    canvas.plot_cells(df)
    tags = sorted(set(df["region_tag"].dropna())) if len(df) else []
    canvas.plot_legend(tags)
    canvas.text(0.0, 6.0, "e")
    canvas.text(-6.0, -canvas.size, "t")
    if path is not None:
        canvas.save(path)
    return canvas.render()
