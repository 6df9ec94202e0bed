from proxregio.strings.worldsheets import (
    Cylinder,
    PhysicalString,
    Worldsheet,
    WorldsheetCheck,
    is_worldsheet,
    make_string,
    make_worldsheet,
    roll_cylinder,
    striped_worldsheet,
)

__all__ = [
    "Cylinder",
    "PhysicalString",
    "Worldsheet",
    "WorldsheetCheck",
    "is_worldsheet",
    "make_string",
    "make_worldsheet",
    "roll_cylinder",
    "striped_worldsheet",
]
