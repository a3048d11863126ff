"""
Modelos de materiais e requisitos do usuário
"""

from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Optional, Tuple


class AssetKind(str, Enum):
    """Tipo de material"""

    IMAGE = "image"
    VIDEO = "video"

    @property
    def label(self) -> str:
        """Rótulo usado na descrição de entrada ("Image 1", "Video 4")"""
        return "Image" if self is AssetKind.IMAGE else "Video"


class StyleKind(str, Enum):
    """Estágio de estilo aplicado após a composição"""

    NONE = "none"
    GRAY = "gray"
    SEPIA = "sepia"
    EXTERNAL = "external"


# Resoluções de saída nomeadas (largura, altura)
PRESETS = {
    "720p": (1280, 720),
    "1080p": (1920, 1080),
}


@dataclass(frozen=True)
class MediaAsset:
    """Uma imagem ou vídeo de entrada já sondado"""

    id: int
    kind: AssetKind
    source_path: Path
    width: int
    height: int
    duration: Optional[float] = None
    frame_rate: Optional[float] = None
    frame_count: Optional[int] = None

    def __post_init__(self):
        if self.width <= 0 or self.height <= 0:
            raise ValueError(f"Dimensões inválidas para o material {self.id}")
        if self.kind is AssetKind.VIDEO:
            if not self.duration or self.duration <= 0:
                raise ValueError(f"Vídeo {self.id} sem duração")
            if not self.frame_rate or self.frame_rate <= 0:
                raise ValueError(f"Vídeo {self.id} sem taxa de quadros")

    @property
    def is_video(self) -> bool:
        return self.kind is AssetKind.VIDEO

    def to_dict(self) -> dict:
        """Converte o material para dicionário"""
        return {
            "id": self.id,
            "kind": self.kind.value,
            "source_path": str(self.source_path),
            "width": self.width,
            "height": self.height,
            "duration": self.duration,
            "frame_rate": self.frame_rate,
            "frame_count": self.frame_count,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "MediaAsset":
        return cls(
            id=int(data["id"]),
            kind=AssetKind(data["kind"]),
            source_path=Path(data["source_path"]),
            width=int(data["width"]),
            height=int(data["height"]),
            duration=data.get("duration"),
            frame_rate=data.get("frame_rate"),
            frame_count=data.get("frame_count"),
        )


@dataclass(frozen=True)
class UserRequirements:
    """Requisitos do usuário: os quatro campos livres mais os parâmetros de saída"""

    theme: str = ""
    time: str = ""
    location: str = ""
    requirement: str = ""
    target_width: int = 1280
    target_height: int = 720
    frame_rate: float = 25.0
    seed: int = 0
    style: StyleKind = StyleKind.NONE
    style_model: str = ""

    def __post_init__(self):
        if self.target_width <= 0 or self.target_height <= 0:
            raise ValueError("Dimensões de saída devem ser positivas")
        if self.target_width % 2 or self.target_height % 2:
            raise ValueError(
                f"Dimensões de saída devem ser pares: {self.target_width}x{self.target_height}"
            )
        if self.frame_rate <= 0:
            raise ValueError("Taxa de quadros deve ser positiva")
        if self.seed < 0:
            raise ValueError("Semente deve ser um inteiro sem sinal")

    def to_dict(self) -> dict:
        return {
            "theme": self.theme,
            "time": self.time,
            "location": self.location,
            "requirement": self.requirement,
            "target_width": self.target_width,
            "target_height": self.target_height,
            "frame_rate": self.frame_rate,
            "seed": self.seed,
            "style": self.style.value,
            "style_model": self.style_model,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "UserRequirements":
        dados = dict(data)
        dados["style"] = StyleKind(dados.get("style", "none"))
        return cls(**dados)


@dataclass(frozen=True)
class ProjectManifest:
    """Projeto carregado: materiais em ordem de id, requisitos e biblioteca de músicas"""

    assets: Tuple[MediaAsset, ...]
    requirements: UserRequirements
    music_library_path: Optional[Path] = None
    source_path: Optional[Path] = None
    warnings: Tuple[str, ...] = field(default=())

    @property
    def asset_ids(self) -> Tuple[int, ...]:
        return tuple(a.id for a in self.assets)

    def asset(self, asset_id: int) -> MediaAsset:
        for a in self.assets:
            if a.id == asset_id:
                return a
        raise KeyError(asset_id)

    def to_dict(self) -> dict:
        return {
            "assets": [a.to_dict() for a in self.assets],
            "requirements": self.requirements.to_dict(),
            "music_library_path": str(self.music_library_path)
            if self.music_library_path
            else None,
            "source_path": str(self.source_path) if self.source_path else None,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ProjectManifest":
        biblioteca = data.get("music_library_path")
        origem = data.get("source_path")
        return cls(
            assets=tuple(MediaAsset.from_dict(a) for a in data["assets"]),
            requirements=UserRequirements.from_dict(data["requirements"]),
            music_library_path=Path(biblioteca) if biblioteca else None,
            source_path=Path(origem) if origem else None,
        )
