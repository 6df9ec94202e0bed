from __future__ import annotations

import os
from pathlib import Path

from dotenv import load_dotenv

BASE_DIR = Path(__file__).resolve().parents[1]
load_dotenv(BASE_DIR.parent / ".env")


def _optional_int(name: str) -> int | None:
    raw = (os.getenv(name) or "").strip()
    return int(raw) if raw else None


DEFAULT_SEED: int | None = _optional_int("PROXREGIO_SEED")

DEFAULT_EPSILON: float = float(os.getenv("PROXREGIO_EPSILON", "1e-9"))
DEFAULT_CELL_SIZE: float = float(os.getenv("PROXREGIO_CELL_SIZE", "0.5"))

# polygonal arcs, segments per quarter circle
ARC_SEGMENTS: int = int(os.getenv("PROXREGIO_ARC_SEGMENTS", "16"))

FEATURE_TOLERANCE: float = float(os.getenv("PROXREGIO_FEATURE_TOLERANCE", "1e-6"))
ANGLE_TOLERANCE: float = float(os.getenv("PROXREGIO_ANGLE_TOLERANCE", "1e-6"))
DETERMINANT_TOLERANCE: float = float(os.getenv("PROXREGIO_DET_TOLERANCE", "1e-12"))
RECTANGLE_SIDE_TOLERANCE: float = 1e-9

# physical vertices are disks of radius epsilon * VERTEX_RADIUS_FACTOR
VERTEX_RADIUS_FACTOR: float = float(os.getenv("PROXREGIO_VERTEX_FACTOR", "1e3"))

LOG_LEVEL: str = os.getenv("PROXREGIO_LOG_LEVEL", "WARNING").upper()

SCENE_FILE_VERSION = 1
