"""
Interfaces base para os adaptadores de modelos externos
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np


@dataclass(frozen=True)
class CaptionRequest:
    """Pedido de descrição de um quadro"""

    asset_id: int
    image: np.ndarray
    question: str
    keyframe: Optional[int] = None


class CaptionerAdapter(ABC):
    """Interface para o modelo que descreve imagens"""

    @abstractmethod
    def health_check(self) -> Tuple[bool, str]:
        """Verifica a saúde do serviço"""
        pass

    @abstractmethod
    def describe(self, request: CaptionRequest) -> str:
        """Descreve o quadro; falhas levantam AdapterError"""
        pass


class ChatAdapter(ABC):
    """Interface para o modelo de linguagem que planeja a história"""

    @abstractmethod
    def health_check(self) -> Tuple[bool, str]:
        """Verifica a saúde do serviço"""
        pass

    @abstractmethod
    def complete(self, prompt: str) -> str:
        """Retorna o texto da resposta sem modificações"""
        pass


class FrameStyleAdapter(ABC):
    """Transforma um quadro RGB em outro de mesmas dimensões"""

    # Quantas requisições simultâneas o adaptador aceita
    max_concurrency: int = 1

    def health_check(self) -> Tuple[bool, str]:
        """Estilos locais estão sempre prontos; os externos sobrescrevem"""
        return True, f"Estilo local ({type(self).__name__})"

    @abstractmethod
    def stylize(self, frame: np.ndarray) -> np.ndarray:
        pass
