"""Region-based proximal geometry: regions, nearness relations, descriptions and the structures built on them."""

__version__ = "0.1.0"
