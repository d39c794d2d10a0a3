"""Graphon Entropy v1.0 — Reports Package

Exports JSON/CSV et diagramme de phases SVG.
"""

from .exports import (
    NaNSafeEncoder,
    SCHEMA_VERSION,
    SWEEP_COLUMNS,
    SWEEP_HEADER,
    to_json,
    result_to_dict,
    phase_to_dict,
    report_to_dict,
    sweep_frame,
    write_csv,
    write_json,
)
from .svg import PhaseDiagramSVG, region_color, sweep_svg

__all__ = [
    "NaNSafeEncoder",
    "SCHEMA_VERSION",
    "SWEEP_COLUMNS",
    "SWEEP_HEADER",
    "to_json",
    "result_to_dict",
    "phase_to_dict",
    "report_to_dict",
    "sweep_frame",
    "write_csv",
    "write_json",
    "PhaseDiagramSVG",
    "region_color",
    "sweep_svg",
]
