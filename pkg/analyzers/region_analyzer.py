"""
Region analyzer module for the control-ability analysis toolkit.

This module traces the boundary of two-dimensional reach and control
regions, optionally in eigen-coordinates, and writes the vertices as CSV.
"""

import logging

import pandas as pd

import config
from analyzers.base_analyzer import BaseAnalyzer
from models import CONVENTIONS, REGION_KINDS
from utils.errors import DimensionUnsupported, InputError
from utils.matspec import jordan_structure
from utils.zonotope import (
    build_generators, eigen_coordinates, oracle_volume, polygon_2d,
    polygon_area, polygon_extent,
)

logger = logging.getLogger(__name__)


def write_polygon_csv(polygon, path):
    """Write polygon vertices as an ``x,y`` CSV with 17 significant digits."""
    frame = pd.DataFrame(polygon.vertices, columns=["x", "y"])
    frame.to_csv(path, index=False, float_format="%.17g", lineterminator="\n")
    logger.info(f"Wrote {len(frame)} vertices to {path}")


class RegionAnalyzer(BaseAnalyzer):
    """Analyzer for planar region boundaries."""

    def __init__(self):
        super().__init__('region')

    def region(self, source, horizon=None, convention="symmetric", region="reach", eigen=False, out=None):
        """
        Boundary polygon of the N-step region of a 2-D system.

        Args:
            source: System file path or decoded system-file document
            horizon: Number of steps (defaults to config.DEFAULT_HORIZON)
            convention: 'symmetric' or 'unit-cube'
            region: 'reach' or 'control'
            eigen: Express the region in eigen-coordinates
            out: Optional CSV path for the vertices

        Returns:
            dict with vertices, area, oracle area and extent, or an error payload
        """
        return self.run("region", self._region, source, horizon, convention, region, eigen, out)

    def _region(self, source, horizon, convention, region, eigen, out):
        horizon = config.DEFAULT_HORIZON if horizon is None else int(horizon)
        if horizon < 1:
            raise InputError(f"horizon must be positive, got {horizon}")
        if convention not in CONVENTIONS:
            raise InputError(f"unknown convention {convention!r}; expected one of {CONVENTIONS}")
        if region not in REGION_KINDS:
            raise InputError(f"unknown region {region!r}; expected one of {REGION_KINDS}")

        system = self.get_system(source)
        if system.n != 2:
            raise DimensionUnsupported(f"region export needs n = 2, got n = {system.n}")

        Z = build_generators(system, horizon, kind=region, convention=convention)
        if eigen:
            structure = system.jordan or jordan_structure(system.A)
            Z = eigen_coordinates(Z, structure.P)

        polygon = polygon_2d(Z)
        area = polygon_area(polygon)
        d_min, d_max, flatness = polygon_extent(polygon)
        if out is not None:
            write_polygon_csv(polygon, out)

        result = {
            "vertices": polygon.vertices.tolist(),
            "count": len(polygon),
            "area": area,
            "oracle_area": oracle_volume(Z),
            "d_min": d_min,
            "d_max": d_max,
            "flatness": flatness,
            "convention": convention,
            "region": region,
            "horizon": horizon,
            "eigen": bool(eigen),
        }
        self.log_action("region", {"count": result["count"], "area": area, "flatness": flatness})
        return result
