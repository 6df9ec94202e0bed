from __future__ import annotations

from dataclasses import asdict, dataclass


@dataclass(frozen=True)
class ProbeTraits:
    congruence_invariant: bool = False
    translation_invariant: bool = False
    reads_features: bool = False

    def to_dict(self) -> dict:
        return asdict(self)
