"""toricarc: exact workbench for toric LG boundary models and arc-quiver mirrors."""

from .lattice import (
    GradingContext,
    LatticeElement,
    CollapseMap,
    curve_class,
    parity,
    collapse,
    computational_collapse,
    grading_iso_A_to_B,
)

__all__ = [
    "GradingContext",
    "LatticeElement",
    "CollapseMap",
    "curve_class",
    "parity",
    "collapse",
    "computational_collapse",
    "grading_iso_A_to_B",
]
