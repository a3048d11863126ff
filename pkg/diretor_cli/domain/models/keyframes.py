"""
Modelos de hash perceptual e segmentos de vídeo
"""

from dataclasses import dataclass

HASH_BITS = 64


@dataclass(frozen=True)
class PerceptualHash:
    """Hash perceptual de 64 bits (bit mais significativo = primeiro coeficiente)"""

    bits: int

    def __post_init__(self):
        if not 0 <= self.bits < (1 << HASH_BITS):
            raise ValueError("Hash perceptual fora de 64 bits")

    def __sub__(self, other: "PerceptualHash") -> int:
        """Distância de Hamming"""
        return (self.bits ^ other.bits).bit_count()

    def __str__(self) -> str:
        return f"{self.bits:016x}"


@dataclass(frozen=True)
class VideoSegment:
    """Trecho contíguo de um vídeo com seu quadro-chave (índices inclusivos)"""

    start_frame: int
    end_frame: int
    keyframe_index: int

    def __post_init__(self):
        if not self.start_frame <= self.keyframe_index <= self.end_frame:
            raise ValueError(
                f"Quadro-chave {self.keyframe_index} fora de "
                f"[{self.start_frame}, {self.end_frame}]"
            )

    def to_dict(self) -> dict:
        return {
            "start_frame": self.start_frame,
            "end_frame": self.end_frame,
            "keyframe_index": self.keyframe_index,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "VideoSegment":
        return cls(int(data["start_frame"]), int(data["end_frame"]), int(data["keyframe_index"]))
