from proxregio.description.classes import (
    RegionClass,
    class_of_regions,
    classes_dnear,
    phi_bounded,
    phi_bounded_set,
    phi_closure,
    phi_distance,
)
from proxregio.description.descriptive import (
    cell_matches_region,
    cells_dnear,
    describe,
    describe_cell,
    describe_polytope,
    descriptive_intersection,
    descriptive_intersection_sets,
    descriptively_congruent,
    dnear,
    dnear_sets,
    dsnear,
    dsnear_sets,
    shape_dnear,
)
from proxregio.description.factory import PROBE_KINDS, create_probe
from proxregio.description.probes import BaseProbe, ProbeKind
from proxregio.description.registry import FeatureVector, ProbeRegistry

__all__ = [
    "BaseProbe",
    "FeatureVector",
    "PROBE_KINDS",
    "ProbeKind",
    "ProbeRegistry",
    "RegionClass",
    "cell_matches_region",
    "cells_dnear",
    "class_of_regions",
    "classes_dnear",
    "create_probe",
    "describe",
    "describe_cell",
    "describe_polytope",
    "descriptive_intersection",
    "descriptive_intersection_sets",
    "descriptively_congruent",
    "dnear",
    "dnear_sets",
    "dsnear",
    "dsnear_sets",
    "phi_bounded",
    "phi_bounded_set",
    "phi_closure",
    "phi_distance",
    "shape_dnear",
]
