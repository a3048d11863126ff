"""
Serviço de quadros-chave: hash perceptual e segmentação de vídeos
"""

from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Optional, Sequence

import numpy as np
from PIL import Image
from scipy import fft

from diretor_cli.domain.errors import KeyframeError
from diretor_cli.domain.models.assets import MediaAsset
from diretor_cli.domain.models.keyframes import HASH_BITS, PerceptualHash, VideoSegment
from diretor_cli.infrastructure.logging_config import obter_logger

logger = obter_logger("keyframe")

DEFAULT_THRESHOLD = 0.6

HASH_SIZE = 32
BLOCK_SIZE = 8

_LUMA = np.array([0.299, 0.587, 0.114])

HASH_WORKERS = 4


def phash(frame: np.ndarray) -> PerceptualHash:
    """
    Hash perceptual de 64 bits.

    Luma ITU-R 601, redução bilinear para 32x32, DCT-II 2D, bloco 8x8 de
    baixa frequência, bit = coeficiente acima da mediana dos 63 termos AC.
    O primeiro coeficiente ocupa o bit mais significativo.
    """
    if frame.size == 0:
        raise ValueError("Quadro vazio")
    if frame.ndim == 2:
        luma = frame.astype(np.float64)
    else:
        luma = frame[..., :3].astype(np.float64) @ _LUMA

    reduzida = Image.fromarray(luma.astype(np.float32)).resize(
        (HASH_SIZE, HASH_SIZE), Image.Resampling.BILINEAR
    )
    coeficientes = fft.dctn(np.asarray(reduzida, dtype=np.float64), type=2, norm="ortho")
    bloco = coeficientes[:BLOCK_SIZE, :BLOCK_SIZE].flatten()

    # Resíduo numérico de um sinal constante conta como zero
    bloco[np.abs(bloco) < 1e-6 * max(abs(bloco[0]), 1.0)] = 0.0

    mediana = np.median(bloco[1:])
    valor = 0
    for bit in bloco > mediana:
        valor = (valor << 1) | int(bit)
    return PerceptualHash(valor)


def similarity(a: PerceptualHash, b: PerceptualHash) -> float:
    """1 − distância de Hamming / 64"""
    return 1.0 - (a - b) / HASH_BITS


def default_stride(frame_rate: Optional[float]) -> int:
    """Cerca de dois hashes por segundo"""
    return max(1, round((frame_rate or 1.0) / 2))


def _nearest_sample(amostras: Sequence[int], inicio: int, fim: int) -> int:
    meio = (inicio + fim) / 2
    candidatos = [i for i in amostras if inicio <= i <= fim]
    # min() devolve o primeiro em caso de empate, ou seja, o mais cedo
    return min(candidatos, key=lambda i: abs(i - meio))


def segment_video(
    frames: Sequence[np.ndarray],
    threshold: float = DEFAULT_THRESHOLD,
    sample_stride: int = 1,
) -> List[VideoSegment]:
    """
    Divide o vídeo em trechos comparando cada quadro amostrado com a âncora
    (primeiro quadro amostrado) do trecho aberto.

    Args:
        frames: Quadros em ordem
        threshold: Similaridade abaixo da qual um novo trecho começa, em (0, 1]
        sample_stride: Intervalo entre quadros amostrados

    Returns:
        Trechos contíguos cobrindo todos os quadros, cada um com seu quadro-chave
    """
    if not 0 < threshold <= 1:
        raise ValueError(f"Limiar fora de (0, 1]: {threshold}")
    if sample_stride < 1:
        raise ValueError(f"Passo de amostragem deve ser >= 1: {sample_stride}")
    if len(frames) == 0:
        raise KeyframeError("Sequência de quadros vazia")

    amostras = list(range(0, len(frames), sample_stride))
    with ThreadPoolExecutor(max_workers=HASH_WORKERS) as pool:
        hashes = list(pool.map(lambda i: phash(frames[i]), amostras))

    inicios = [amostras[0]]
    ancora = hashes[0]
    for indice, atual in zip(amostras[1:], hashes[1:]):
        if similarity(atual, ancora) < threshold:
            inicios.append(indice)
            ancora = atual

    trechos = []
    for n, inicio in enumerate(inicios):
        fim = inicios[n + 1] - 1 if n + 1 < len(inicios) else len(frames) - 1
        trechos.append(VideoSegment(inicio, fim, _nearest_sample(amostras, inicio, fim)))

    logger.debug(f"{len(trechos)} trechos em {len(frames)} quadros (limiar {threshold})")
    return trechos


def segment_asset(
    asset: MediaAsset,
    frames: Sequence[np.ndarray],
    threshold: float = DEFAULT_THRESHOLD,
    sample_stride: Optional[int] = None,
) -> List[VideoSegment]:
    """Segmenta um vídeo já decodificado usando o passo padrão da sua taxa de quadros"""
    passo = sample_stride or default_stride(asset.frame_rate)
    try:
        return segment_video(frames, threshold, passo)
    except KeyframeError as e:
        raise KeyframeError(f"Vídeo {asset.id} ({asset.source_path.name}): {e}") from e


def format_segments(segments: Sequence[VideoSegment]) -> str:
    """Relatório texto: uma linha `início fim quadro-chave` por trecho"""
    return "".join(f"{s.start_frame} {s.end_frame} {s.keyframe_index}\n" for s in segments)


def segments_to_dict(segments: Dict[int, List[VideoSegment]]) -> dict:
    return {str(k): [s.to_dict() for s in v] for k, v in sorted(segments.items())}


def segments_from_dict(data: dict) -> Dict[int, List[VideoSegment]]:
    return {int(k): [VideoSegment.from_dict(s) for s in v] for k, v in data.items()}
