"""
Modelos de configuração do renderizador
"""

from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Optional, Tuple

from .assets import StyleKind


class OutputKind(str, Enum):
    FRAME_DIRECTORY = "frames"
    CONTAINER_FILE = "container"


class BackgroundMode(str, Enum):
    BLURRED = "blurred"
    BLACK = "black"


@dataclass(frozen=True)
class CaptionStyle:
    """Estilo das legendas; tamanho de fonte derivado da altura quando ausente"""

    font_size: Optional[int] = None
    fill: Tuple[int, int, int] = (255, 255, 255)
    outline: Tuple[int, int, int] = (16, 16, 16)
    outline_width: int = 2
    bottom_margin: float = 0.05

    def size_for(self, height: int) -> int:
        return self.font_size or max(8, round(height / 18))


@dataclass(frozen=True)
class RenderConfig:
    """Parâmetros da renderização"""

    width: int = 1280
    height: int = 720
    frame_rate: float = 25.0
    caption_style: CaptionStyle = field(default_factory=CaptionStyle)
    blur_sigma: Optional[float] = None
    output: OutputKind = OutputKind.FRAME_DIRECTORY
    background: BackgroundMode = BackgroundMode.BLURRED
    card_color: Tuple[int, int, int] = (18, 18, 24)
    workers: int = 4

    def __post_init__(self):
        if self.width * self.height <= 0:
            raise ValueError("Dimensões de renderização inválidas")
        if self.frame_rate <= 0:
            raise ValueError("Taxa de quadros deve ser positiva")

    @property
    def effective_blur_sigma(self) -> float:
        return self.blur_sigma if self.blur_sigma is not None else self.width / 64


@dataclass(frozen=True)
class StyleAdapterConfig:
    """Escolha do estágio de estilo (endpoint só para o tipo externo)"""

    kind: StyleKind = StyleKind.NONE
    endpoint: Optional[str] = None
    model: str = ""


@dataclass(frozen=True)
class RenderResult:
    """Artefatos gerados pela renderização"""

    frames_dir: Path
    audio_path: Path
    meta_path: Path
    frame_count: int
    container_path: Optional[Path] = None

    def to_dict(self) -> dict:
        return {
            "frames_dir": str(self.frames_dir),
            "audio_path": str(self.audio_path),
            "meta_path": str(self.meta_path),
            "frame_count": self.frame_count,
            "container_path": str(self.container_path) if self.container_path else None,
        }
