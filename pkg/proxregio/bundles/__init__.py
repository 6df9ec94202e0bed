from proxregio.bundles.antipodes import (
    AntipodalGrid,
    AntipodalMatch,
    GridTopology,
    antipode_of,
    antisymmetric_field,
    described_grid,
    find_antipodal_match,
    find_strong_antipodal_match,
    symmetric_field,
    uniform_field,
)
from proxregio.bundles.fibre import (
    FibreSpace,
    build_fibre_space,
    bundles_parallel,
    fibre,
    fibre_union,
    is_sheaf,
)
from proxregio.bundles.sewn import SewnFibres, sewn_fibre_space, sewn_shape, similar_copies
from proxregio.bundles.wired_friend import (
    ShapeDescriptor,
    WiredFriend,
    WiredFriendTracker,
    wired_friend_map,
)

__all__ = [
    "AntipodalGrid",
    "AntipodalMatch",
    "FibreSpace",
    "GridTopology",
    "SewnFibres",
    "ShapeDescriptor",
    "WiredFriend",
    "WiredFriendTracker",
    "antipode_of",
    "antisymmetric_field",
    "build_fibre_space",
    "bundles_parallel",
    "described_grid",
    "fibre",
    "fibre_union",
    "find_antipodal_match",
    "find_strong_antipodal_match",
    "is_sheaf",
    "sewn_fibre_space",
    "sewn_shape",
    "similar_copies",
    "symmetric_field",
    "uniform_field",
    "wired_friend_map",
]
