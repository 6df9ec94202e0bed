from proxregio.parallelism.lines import (
    PhysicalLine,
    direction_strips,
    is_straight,
    supporting_segment,
    sweep,
)
from proxregio.parallelism.predicates import (
    ParallelKind,
    ParallelVerdict,
    classes_parallel,
    descriptively_parallel,
    locally_parallel,
    parallel_regions,
    proximal_parallel,
)

__all__ = [
    "ParallelKind",
    "ParallelVerdict",
    "PhysicalLine",
    "classes_parallel",
    "descriptively_parallel",
    "direction_strips",
    "is_straight",
    "locally_parallel",
    "parallel_regions",
    "proximal_parallel",
    "supporting_segment",
    "sweep",
]
