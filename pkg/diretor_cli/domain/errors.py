"""
Exceções do Diretor
"""

from typing import Optional


class DiretorError(Exception):
    """Erro base do pacote; `stage` indica a etapa do pipeline que falhou"""

    def __init__(self, message: str, stage: Optional[str] = None):
        super().__init__(message)
        self.stage = stage


class ManifestError(DiretorError):
    """Manifesto ausente, malformado ou inconsistente"""


class MediaError(DiretorError):
    """Mídia ilegível ou codec indisponível"""


class KeyframeError(DiretorError):
    """Falha na segmentação de vídeo"""


class AdapterError(DiretorError):
    """Falha de transporte ou resposta de um adaptador externo"""

    def __init__(self, message: str, status: Optional[int] = None, stage: Optional[str] = None):
        super().__init__(message, stage=stage)
        self.status = status


class NarrationError(DiretorError):
    """Falha ao descrever materiais ou ao planejar a história"""


class PlanParseError(NarrationError):
    """Resposta do modelo sem as seções obrigatórias"""


class MusicError(DiretorError):
    """Falha na biblioteca de músicas"""


class NoMusicAvailable(MusicError):
    """Índice vazio"""


class NoPlausibleMatch(MusicError):
    """Nenhum título suficientemente próximo do nome pedido"""


class BeatTrackingError(MusicError):
    """Áudio inadequado para estimar andamento"""


class TimelineError(DiretorError):
    """Plano e materiais incompatíveis com a montagem"""


class RenderError(DiretorError):
    """Falha ao rasterizar ou codificar"""


class EvalError(DiretorError):
    """Entrada inválida para as métricas"""


class JudgeParseError(EvalError):
    """Resposta do juiz sem um aspecto ou com nota fora do intervalo"""


class DatasetError(DiretorError):
    """Raiz do conjunto de dados vazia ou ilegível"""
