"""
Modelos da linha do tempo de edição
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Tuple, Union

from .music import MusicTrack


class PlacementMode(str, Enum):
    FIT_WIDTH_LIMITED = "fit_width_limited"
    FIT_HEIGHT_LIMITED = "fit_height_limited"
    EXACT_FIT = "exact_fit"


class Transition(str, Enum):
    """Animação de troca aplicada na entrada de um trecho"""

    CUT = "cut"
    CROSSFADE_IN = "crossfade_in"
    CROSSFADE_OUT = "crossfade_out"
    TRANSLATE_UP = "translate_up"
    TRANSLATE_LATERAL = "translate_lateral"


# Sorteadas a cada troca de material
ANIMATED_TRANSITIONS = (
    Transition.CROSSFADE_IN,
    Transition.CROSSFADE_OUT,
    Transition.TRANSLATE_UP,
    Transition.TRANSLATE_LATERAL,
)


@dataclass(frozen=True)
class Placement:
    """Geometria resolvida do primeiro plano e do fundo desfocado"""

    fg_width: int
    fg_height: int
    fg_offset_x: int
    fg_offset_y: int
    bg_width: int
    bg_height: int
    bg_blur_sigma: float
    mode: PlacementMode

    @property
    def has_background(self) -> bool:
        return self.mode is not PlacementMode.EXACT_FIT

    def to_dict(self) -> dict:
        return {
            "fg_width": self.fg_width,
            "fg_height": self.fg_height,
            "fg_offset_x": self.fg_offset_x,
            "fg_offset_y": self.fg_offset_y,
            "bg_width": self.bg_width,
            "bg_height": self.bg_height,
            "bg_blur_sigma": self.bg_blur_sigma,
            "mode": self.mode.value,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Placement":
        dados = dict(data)
        dados["mode"] = PlacementMode(dados["mode"])
        return cls(**dados)


@dataclass(frozen=True)
class TimelineSegment:
    """Trecho de um material na linha do tempo"""

    asset_id: int
    start: float
    end: float
    caption: str
    transition_in: Transition
    transition_duration: float
    placement: Placement
    source_trim: Optional[Tuple[float, float]] = None

    @property
    def duration(self) -> float:
        return self.end - self.start

    def to_dict(self) -> dict:
        return {
            "asset_id": self.asset_id,
            "start": self.start,
            "end": self.end,
            "caption": self.caption,
            "transition_in": self.transition_in.value,
            "transition_duration": self.transition_duration,
            "placement": self.placement.to_dict(),
            "source_trim": list(self.source_trim) if self.source_trim else None,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "TimelineSegment":
        trim = data.get("source_trim")
        return cls(
            asset_id=int(data["asset_id"]),
            start=float(data["start"]),
            end=float(data["end"]),
            caption=data["caption"],
            transition_in=Transition(data["transition_in"]),
            transition_duration=float(data["transition_duration"]),
            placement=Placement.from_dict(data["placement"]),
            source_trim=(float(trim[0]), float(trim[1])) if trim else None,
        )


@dataclass(frozen=True)
class TitleCard:
    """Cartela de abertura ou encerramento (fundo escuro, texto centralizado)"""

    text: str
    start: float
    end: float
    transition_in: Transition = Transition.CUT
    transition_duration: float = 0.0

    @property
    def duration(self) -> float:
        return self.end - self.start

    def to_dict(self) -> dict:
        return {
            "text": self.text,
            "start": self.start,
            "end": self.end,
            "transition_in": self.transition_in.value,
            "transition_duration": self.transition_duration,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "TitleCard":
        return cls(
            text=data["text"],
            start=float(data["start"]),
            end=float(data["end"]),
            transition_in=Transition(data["transition_in"]),
            transition_duration=float(data["transition_duration"]),
        )


Clip = Union[TitleCard, TimelineSegment]


@dataclass(frozen=True)
class TimelineConfig:
    """Parâmetros da montagem (segundos, salvo indicação)"""

    card_duration: float = 3.0
    image_duration: float = 4.0
    min_duration: float = 1.5
    max_hold: float = 0.5
    max_trim: float = 1.0
    transition_duration: float = 0.5
    loop_crossfade: float = 1.0
    seed: int = 0
    frame_rate: float = 25.0
    target_width: int = 1280
    target_height: int = 720
    blur_sigma: Optional[float] = None

    @property
    def effective_blur_sigma(self) -> float:
        return self.blur_sigma if self.blur_sigma is not None else self.target_width / 64


@dataclass(frozen=True)
class Timeline:
    """Linha do tempo completa e imutável consumida pelo renderizador"""

    opening: TitleCard
    segments: Tuple[TimelineSegment, ...]
    closing: TitleCard
    music: Optional[MusicTrack]
    total_duration: float
    music_loops: bool = False
    loop_crossfade: float = 1.0
    warnings: Tuple[str, ...] = field(default=())

    @property
    def clips(self) -> Tuple[Clip, ...]:
        return (self.opening, *self.segments, self.closing)

    @property
    def order(self) -> Tuple[int, ...]:
        return tuple(s.asset_id for s in self.segments)

    def to_dict(self) -> dict:
        return {
            "opening": self.opening.to_dict(),
            "segments": [s.to_dict() for s in self.segments],
            "closing": self.closing.to_dict(),
            "music": self.music.to_dict() if self.music else None,
            "total_duration": self.total_duration,
            "music_loops": self.music_loops,
            "loop_crossfade": self.loop_crossfade,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Timeline":
        return cls(
            opening=TitleCard.from_dict(data["opening"]),
            segments=tuple(TimelineSegment.from_dict(s) for s in data["segments"]),
            closing=TitleCard.from_dict(data["closing"]),
            music=MusicTrack.from_dict(data["music"]) if data.get("music") else None,
            total_duration=float(data["total_duration"]),
            music_loops=bool(data.get("music_loops", False)),
            loop_crossfade=float(data.get("loop_crossfade", 1.0)),
        )
