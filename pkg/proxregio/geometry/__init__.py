from proxregio.geometry.grid import (
    cell_adjacency,
    cell_point_region,
    cells_connected,
    region_cells,
    subregion_grid,
)
from proxregio.geometry.measures import (
    Part,
    RegionMeasure,
    cech_distance,
    contact,
    in_closure,
    measure,
    part_membership,
)
from proxregio.geometry.primitives import Box, FeaturePatch, Point2, Region, SubregionCell
from proxregio.geometry.scene import UNIVERSE_ID, Scene
from proxregio.geometry.shapes import (
    capsule_region,
    circle_region,
    closure_region,
    convex_hull,
    dilate,
    dilate_with_flag,
    is_convex,
    point_region,
    rectangle_region,
    region_from_shape,
    rotate_region,
    scale_region,
    translate_region,
)

__all__ = [
    "Box",
    "FeaturePatch",
    "Part",
    "Point2",
    "Region",
    "RegionMeasure",
    "Scene",
    "SubregionCell",
    "UNIVERSE_ID",
    "capsule_region",
    "cech_distance",
    "cell_adjacency",
    "cell_point_region",
    "cells_connected",
    "circle_region",
    "closure_region",
    "contact",
    "convex_hull",
    "dilate",
    "dilate_with_flag",
    "in_closure",
    "is_convex",
    "measure",
    "part_membership",
    "point_region",
    "rectangle_region",
    "region_cells",
    "region_from_shape",
    "rotate_region",
    "scale_region",
    "translate_region",
]
