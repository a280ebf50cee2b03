from .base import ArtifactWriter
from .csvfile import Comment, CsvArtifact, emit_csv
from .svgplot import AxesSpec, Series, SvgChart, emit_svg_polyline

__all__ = [
    "ArtifactWriter",
    "AxesSpec",
    "Comment",
    "CsvArtifact",
    "Series",
    "SvgChart",
    "emit_csv",
    "emit_svg_polyline",
]
