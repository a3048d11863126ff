"""
Modelos da biblioteca de músicas e da grade de batidas
"""

from dataclasses import dataclass, field
from enum import IntEnum
from pathlib import Path
from typing import Dict, Iterator, Tuple


@dataclass(frozen=True)
class MusicTrack:
    """Faixa decodificável da biblioteca"""

    title: str
    path: Path
    duration: float
    sample_rate: int
    channels: int

    def __post_init__(self):
        if self.duration <= 0:
            raise ValueError(f"Faixa sem duração: {self.path}")
        if self.channels not in (1, 2):
            raise ValueError(f"Faixa com {self.channels} canais não suportada: {self.path}")

    def to_dict(self) -> dict:
        return {
            "title": self.title,
            "path": str(self.path),
            "duration": self.duration,
            "sample_rate": self.sample_rate,
            "channels": self.channels,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "MusicTrack":
        return cls(
            title=data["title"],
            path=Path(data["path"]),
            duration=float(data["duration"]),
            sample_rate=int(data["sample_rate"]),
            channels=int(data["channels"]),
        )


@dataclass(frozen=True)
class LibraryIndex:
    """Índice título normalizado -> faixa"""

    tracks: Dict[str, MusicTrack] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.tracks)

    def __iter__(self) -> Iterator[str]:
        return iter(sorted(self.tracks))

    def __contains__(self, key: object) -> bool:
        return key in self.tracks


class MatchTier(IntEnum):
    """Nível de correspondência: menor é melhor"""

    EXACT = 1
    CONTAINS = 2
    EDIT_DISTANCE = 3


@dataclass(frozen=True)
class MusicMatch:
    """Resultado da busca: faixa, nível e distância normalizada (0 = idêntico)"""

    track: MusicTrack
    tier: MatchTier
    score: float

    def to_dict(self) -> dict:
        return {"track": self.track.to_dict(), "tier": int(self.tier), "score": self.score}

    @classmethod
    def from_dict(cls, data: dict) -> "MusicMatch":
        return cls(MusicTrack.from_dict(data["track"]), MatchTier(data["tier"]), data["score"])


@dataclass(frozen=True)
class BeatGrid:
    """Instantes de batida (segundos, estritamente crescentes) e andamento em BPM"""

    beats: Tuple[float, ...]
    tempo: float
    detected: bool = True

    def __post_init__(self):
        if any(b >= a for b, a in zip(self.beats, self.beats[1:])):
            raise ValueError("Batidas devem ser estritamente crescentes")
        if self.beats and self.beats[0] < 0:
            raise ValueError("Batidas não podem ser negativas")
        if self.beats and self.tempo <= 0:
            raise ValueError("Andamento deve ser positivo")

    @property
    def is_empty(self) -> bool:
        return not self.beats

    def to_dict(self) -> dict:
        return {"beats": list(self.beats), "tempo": self.tempo, "detected": self.detected}

    @classmethod
    def from_dict(cls, data: dict) -> "BeatGrid":
        return cls(tuple(float(b) for b in data["beats"]), float(data["tempo"]), data["detected"])
