"""
Modelos de domínio
"""

from .assets import AssetKind, MediaAsset, ProjectManifest, StyleKind, UserRequirements
from .evaluation import JudgeScores
from .keyframes import PerceptualHash, VideoSegment
from .music import BeatGrid, LibraryIndex, MatchTier, MusicMatch, MusicTrack
from .narration import AssetDescription, DescriptionResult, DirectorPlan
from .render import (
    BackgroundMode,
    CaptionStyle,
    OutputKind,
    RenderConfig,
    RenderResult,
    StyleAdapterConfig,
)
from .report import RunReport
from .timeline import (
    Placement,
    PlacementMode,
    Timeline,
    TimelineConfig,
    TimelineSegment,
    TitleCard,
    Transition,
)

__all__ = [
    "AssetDescription",
    "AssetKind",
    "BackgroundMode",
    "BeatGrid",
    "CaptionStyle",
    "DescriptionResult",
    "DirectorPlan",
    "JudgeScores",
    "LibraryIndex",
    "MatchTier",
    "MediaAsset",
    "MusicMatch",
    "MusicTrack",
    "OutputKind",
    "PerceptualHash",
    "Placement",
    "PlacementMode",
    "ProjectManifest",
    "RenderConfig",
    "RenderResult",
    "RunReport",
    "StyleAdapterConfig",
    "StyleKind",
    "Timeline",
    "TimelineConfig",
    "TimelineSegment",
    "TitleCard",
    "Transition",
    "UserRequirements",
    "VideoSegment",
]
