"""Fréchet distance decisions under translation, driven by free-space events."""

from .curves import Curve, CurveParseError, load_curve, parse_curve, random_curve, serialize_curve, translate
from .freespace import alt_godau_decide, build_skeleton, corner_free, frechet_value
from .fsg import build_fsg, fsg_reachable
from .geometry import EPS, GeometryError, Point, Segment
from .grid import PlaceholderGrid, build_grid, grid_reachable
from .reach import BaselineBackend, BlockedBackend, make_backend
from .sweep import enumerate_sweep_events, run_sweep, sweep_decide
from .translation import critical_curves_2d, candidate_transformations, decide_translation_2d

__version__ = "0.1.0"

__all__ = [
    "Curve", "CurveParseError", "load_curve", "parse_curve", "random_curve", "serialize_curve", "translate",
    "alt_godau_decide", "build_skeleton", "corner_free", "frechet_value", "build_fsg", "fsg_reachable",
    "EPS", "GeometryError", "Point", "Segment", "PlaceholderGrid", "build_grid", "grid_reachable",
    "BaselineBackend", "BlockedBackend", "make_backend", "enumerate_sweep_events", "run_sweep", "sweep_decide",
    "critical_curves_2d", "candidate_transformations", "decide_translation_2d",
]
