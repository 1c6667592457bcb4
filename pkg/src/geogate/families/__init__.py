"""Task families: one generator per challenge type, keyed by family name."""

from .agent_sight import AgentSightFamily
from .base import (Candidate, CandidateSet, Family, NEAR_MISS_KINDS,
                   ValidationReport, validate_scene)
from .full_views import FullViewsFamily
from .polyomino_rotation import PolyominoFamily
from .pyramid import PyramidFamily
from .revolution import RevolutionFamily
from .sun_direction import SunDirectionFamily
from .unfolded import UnfoldedFamily

FAMILIES: dict[str, Family] = {
    f.name: f for f in (
        AgentSightFamily(),
        SunDirectionFamily(),
        PolyominoFamily(),
        UnfoldedFamily(),
        PyramidFamily(),
        RevolutionFamily(),
        FullViewsFamily(),
    )
}

__all__ = [
    "Candidate", "CandidateSet", "Family", "FAMILIES", "NEAR_MISS_KINDS",
    "ValidationReport", "validate_scene",
]
