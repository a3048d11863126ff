"""
Modelos de descrição de materiais e do plano do diretor
"""

from dataclasses import dataclass, field
from typing import Dict, Tuple

from .assets import AssetKind


@dataclass(frozen=True)
class AssetDescription:
    """Descrição de um material: uma linha por imagem, uma por quadro-chave de vídeo"""

    asset_id: int
    kind: AssetKind
    lines: Tuple[str, ...]

    def __post_init__(self):
        if not self.lines:
            raise ValueError(f"Descrição vazia para o material {self.asset_id}")
        if self.kind is AssetKind.IMAGE and len(self.lines) != 1:
            raise ValueError(f"Imagem {self.asset_id} deve ter exatamente uma descrição")

    def to_dict(self) -> dict:
        return {"asset_id": self.asset_id, "kind": self.kind.value, "lines": list(self.lines)}

    @classmethod
    def from_dict(cls, data: dict) -> "AssetDescription":
        return cls(int(data["asset_id"]), AssetKind(data["kind"]), tuple(data["lines"]))


@dataclass(frozen=True)
class DescriptionResult:
    """Descrições em ordem de id mais os avisos de falhas do legendador"""

    descriptions: Tuple[AssetDescription, ...]
    warnings: Tuple[str, ...] = ()


@dataclass(frozen=True)
class DirectorPlan:
    """Plano da história extraído da resposta do modelo"""

    order: Tuple[int, ...]
    title: str
    captions: Dict[int, str]
    closing: str
    music_name: str
    warnings: Tuple[str, ...] = field(default=())

    def caption_for(self, asset_id: int) -> str:
        return self.captions.get(asset_id, "")

    def to_dict(self) -> dict:
        return {
            "order": list(self.order),
            "title": self.title,
            "captions": {str(k): v for k, v in sorted(self.captions.items())},
            "closing": self.closing,
            "music_name": self.music_name,
            "warnings": list(self.warnings),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "DirectorPlan":
        return cls(
            order=tuple(int(i) for i in data["order"]),
            title=data.get("title", ""),
            captions={int(k): v for k, v in data.get("captions", {}).items()},
            closing=data.get("closing", ""),
            music_name=data.get("music_name", ""),
            warnings=tuple(data.get("warnings", ())),
        )
