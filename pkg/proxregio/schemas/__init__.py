from proxregio.schemas.scene_file import (
    GridFile,
    PatchFile,
    ProbeFile,
    ProbesFile,
    RegionFile,
    SceneFile,
    StringFile,
)

__all__ = [
    "GridFile",
    "PatchFile",
    "ProbeFile",
    "ProbesFile",
    "RegionFile",
    "SceneFile",
    "StringFile",
]
