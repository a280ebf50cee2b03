"""
SVG line charts on matplotlib's object-oriented API (Figure plus the SVG
canvas, no pyplot). The SVG settings go through rc_context, which swaps the
global rcParams, so charts are rendered one at a time.

Output is byte-deterministic: the SVG id hash salt is fixed, the date stamp is
dropped and text is kept as <text> rather than glyph paths.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from matplotlib import rc_context
from matplotlib.backends.backend_svg import FigureCanvasSVG
from matplotlib.figure import Figure

from ..errors import ContractError
from .base import ArtifactWriter

_RC = {"svg.hashsalt": "glucomem", "svg.fonttype": "none"}


@dataclass(frozen=True)
class Series:
    name: str
    x: Sequence[float]
    y: Sequence[float]


@dataclass(frozen=True)
class AxesSpec:
    xlabel: str = "X"
    ylabel: str = ""
    title: str = ""


def _check(series: Series) -> None:
    if len(series.x) != len(series.y):
        raise ContractError(f"series {series.name!r}: x and y lengths differ")
    if len(series.x) < 2:
        raise ContractError(f"series {series.name!r} needs at least 2 points")
    for value in (*series.x, *series.y):
        if not math.isfinite(value):
            raise ContractError(f"series {series.name!r} contains a non-finite value")


class SvgChart(ArtifactWriter):
    """One line per series, legend labelled with series names."""

    def __init__(self, series: Sequence[Series], axes: AxesSpec = AxesSpec(), provenance: Optional[str] = None) -> None:
        if not series:
            raise ContractError("at least one series is required")
        for s in series:
            _check(s)
        self.series = list(series)
        self.axes = axes
        self.provenance = provenance

    def render(self) -> str:
        buf = io.StringIO()
        with rc_context(_RC):
            fig = Figure(figsize=(6.4, 4.8))
            FigureCanvasSVG(fig)
            ax = fig.add_subplot()
            for s in self.series:
                ax.plot(list(s.x), list(s.y), label=s.name, gid=f"series-{s.name}")
            ax.set_xlabel(self.axes.xlabel)
            ax.set_ylabel(self.axes.ylabel)
            if self.axes.title:
                ax.set_title(self.axes.title)
            ax.grid(True, alpha=0.3)
            ax.legend()
            fig.savefig(
                buf,
                format="svg",
                metadata={
                    "Date": None,
                    "Creator": "glucomem",
                    "Title": self.axes.title or "glucomem",
                    "Description": self.provenance or "",
                },
            )
        return buf.getvalue()


def emit_svg_polyline(
    series: Sequence[Series],
    axes: AxesSpec,
    path: Path | str,
    provenance: Optional[str] = None,
) -> Path:
    return SvgChart(series, axes, provenance).write(path)
