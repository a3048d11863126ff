"""
Serviço de renderização: desfoque do fundo, composição dos quadros, legendas,
animações de troca, trilha sonora e estágio de estilo
"""

import bisect
import math
import threading
from concurrent.futures import ThreadPoolExecutor
from functools import lru_cache
from pathlib import Path
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
from PIL import Image, ImageDraw, ImageFilter, ImageFont
from scipy import ndimage

from diretor_cli.application.services.asset_service import decode_frames
from diretor_cli.domain.errors import MediaError, RenderError
from diretor_cli.domain.interfaces.adapters import FrameStyleAdapter
from diretor_cli.domain.models.assets import MediaAsset
from diretor_cli.domain.models.render import (
    BackgroundMode,
    OutputKind,
    RenderConfig,
    RenderResult,
)
from diretor_cli.domain.models.timeline import (
    Clip,
    Placement,
    Timeline,
    TimelineSegment,
    TitleCard,
    Transition,
)
from diretor_cli.infrastructure.config import CODEC_TEMPLATE_PADRAO
from diretor_cli.infrastructure.logging_config import obter_logger
from diretor_cli.infrastructure.media.codec import encode_container
from diretor_cli.infrastructure.media.frame_io import (
    AUDIO_FILE,
    FRAME_PATTERN,
    META_FILE,
    encode_png,
    read_audio,
    write_frame_directory_meta,
    write_wav,
)
from diretor_cli.infrastructure.providers.style_providers import IdentityStyle

logger = obter_logger("render")

# Altura das linhas da fonte bitmap embutida no Pillow
BITMAP_FONT_HEIGHT = 11
CAPTION_WIDTH = 0.9
SILENT_SAMPLE_RATE = 22050

# Quadros compostos mantidos em memória pelo compositor
CACHE_FRAMES = 64

FrameLoader = Callable[[MediaAsset], List[np.ndarray]]


def gaussian_blur(frame: np.ndarray, sigma: float) -> np.ndarray:
    """
    Desfoque gaussiano separável, raio ceil(3σ), bordas replicadas.

    Args:
        frame: Quadro (H, W) ou (H, W, C) em uint8
        sigma: Desvio padrão em pixels; 0 devolve uma cópia
    """
    if sigma < 0:
        raise ValueError(f"Sigma deve ser >= 0: {sigma}")
    if sigma == 0:
        return frame.copy()

    raio = int(math.ceil(3 * sigma))
    dados = frame.astype(np.float32)
    for eixo in (0, 1):
        dados = ndimage.gaussian_filter1d(dados, sigma, axis=eixo, mode="nearest", radius=raio)
    return np.clip(np.rint(dados), 0, 255).astype(np.uint8)


def _resize(frame: np.ndarray, largura: int, altura: int) -> np.ndarray:
    if frame.shape[1] == largura and frame.shape[0] == altura:
        return frame
    imagem = Image.fromarray(frame).resize((largura, altura), Image.Resampling.BILINEAR)
    return np.asarray(imagem)


def composite_material(
    frame: np.ndarray,
    placement: Placement,
    width: int,
    height: int,
    background: BackgroundMode = BackgroundMode.BLURRED,
) -> np.ndarray:
    """Fundo (desfocado ou preto) recortado ao centro e primeiro plano por cima"""
    if not placement.has_background:
        return _resize(frame, width, height).copy()

    if background is BackgroundMode.BLURRED:
        fundo = gaussian_blur(
            _resize(frame, placement.bg_width, placement.bg_height), placement.bg_blur_sigma
        )
        x0 = (placement.bg_width - width) // 2
        y0 = (placement.bg_height - height) // 2
        canvas = fundo[y0 : y0 + height, x0 : x0 + width].copy()
    else:
        canvas = np.zeros((height, width, 3), dtype=np.uint8)

    frente = _resize(frame, placement.fg_width, placement.fg_height)
    x, y = placement.fg_offset_x, placement.fg_offset_y
    canvas[y : y + placement.fg_height, x : x + placement.fg_width] = frente
    return canvas


# Texto


@lru_cache(maxsize=1)
def _bitmap_font() -> ImageFont.ImageFont:
    return ImageFont.load_default_imagefont()


def _text_scale(font_size: int) -> int:
    return max(1, round(font_size / BITMAP_FONT_HEIGHT))


def wrap_text(text: str, max_width: float, scale: int) -> List[str]:
    """Quebra gulosa por palavras usando a largura da fonte bitmap"""
    fonte = _bitmap_font()
    # A fonte bitmap cobre apenas Latin-1
    text = text.encode("latin-1", "replace").decode("latin-1")
    linhas: List[str] = []
    atual = ""
    for palavra in text.split():
        tentativa = f"{atual} {palavra}".strip()
        if atual and fonte.getlength(tentativa) * scale > max_width:
            linhas.append(atual)
            atual = palavra
        else:
            atual = tentativa
    if atual:
        linhas.append(atual)
    return linhas


@lru_cache(maxsize=512)
def _line_masks(line: str, scale: int, outline: int) -> Tuple[np.ndarray, np.ndarray]:
    """Máscaras (texto, contorno) de uma linha já ampliada"""
    fonte = _bitmap_font()
    esquerda, topo, direita, base = fonte.getbbox(line)
    margem = 1
    imagem = Image.new("L", (direita - esquerda + 2 * margem, base - topo + 2 * margem), 0)
    ImageDraw.Draw(imagem).text((margem - esquerda, margem - topo), line, fill=255, font=fonte)
    ampliada = imagem.resize(
        (imagem.width * scale, imagem.height * scale), Image.Resampling.NEAREST
    )
    texto = np.asarray(ampliada) > 0
    if outline > 0:
        contorno = np.asarray(ampliada.filter(ImageFilter.MaxFilter(2 * outline + 1))) > 0
    else:
        contorno = texto
    return texto, contorno


def _stamp(
    canvas: np.ndarray,
    mascaras: Tuple[np.ndarray, np.ndarray],
    x: int,
    y: int,
    fill: Tuple[int, int, int],
    outline: Tuple[int, int, int],
) -> None:
    texto, contorno = mascaras
    altura, largura = canvas.shape[:2]
    x0, y0 = max(x, 0), max(y, 0)
    x1, y1 = min(x + texto.shape[1], largura), min(y + texto.shape[0], altura)
    if x0 >= x1 or y0 >= y1:
        return
    regiao = canvas[y0:y1, x0:x1]
    recorte = (slice(y0 - y, y1 - y), slice(x0 - x, x1 - x))
    regiao[contorno[recorte]] = outline
    regiao[texto[recorte]] = fill


def draw_caption(frame: np.ndarray, caption: str, cfg: RenderConfig) -> np.ndarray:
    """Legenda centralizada embaixo, com contorno escuro e margem inferior"""
    if not caption.strip():
        return frame
    estilo = cfg.caption_style
    escala = _text_scale(estilo.size_for(cfg.height))
    linhas = wrap_text(caption, cfg.width * CAPTION_WIDTH, escala)
    saida = frame.copy()
    base = cfg.height - round(cfg.height * estilo.bottom_margin)
    for linha in reversed(linhas):
        mascaras = _line_masks(linha, escala, estilo.outline_width)
        altura, largura = mascaras[0].shape
        _stamp(
            saida, mascaras, (cfg.width - largura) // 2, base - altura, estilo.fill, estilo.outline
        )
        base -= altura + escala
    return saida


def title_card_frame(text: str, cfg: RenderConfig) -> np.ndarray:
    """Cartela: fundo liso e texto centralizado, uma vez e meia o tamanho da legenda"""
    estilo = cfg.caption_style
    canvas = np.empty((cfg.height, cfg.width, 3), dtype=np.uint8)
    canvas[:] = cfg.card_color
    if not text.strip():
        return canvas

    escala = _text_scale(round(estilo.size_for(cfg.height) * 1.5))
    linhas = [
        _line_masks(linha, escala, estilo.outline_width)
        for linha in wrap_text(text, cfg.width * CAPTION_WIDTH, escala)
    ]
    total = sum(m[0].shape[0] for m in linhas) + escala * (len(linhas) - 1)
    y = (cfg.height - total) // 2
    for mascaras in linhas:
        altura, largura = mascaras[0].shape
        _stamp(canvas, mascaras, (cfg.width - largura) // 2, y, estilo.fill, estilo.outline)
        y += altura + escala
    return canvas


# Fontes de quadros


class AssetFrameSource:
    """
    Entrega o quadro de um material num instante da fonte.

    Os quadros são decodificados uma vez por material e ficam em memória.
    """

    def __init__(
        self,
        assets: Union[Sequence[MediaAsset], Mapping[int, MediaAsset]],
        loader: FrameLoader = decode_frames,
    ):
        self.assets: Dict[int, MediaAsset] = (
            dict(assets) if isinstance(assets, Mapping) else {a.id: a for a in assets}
        )
        self._loader = loader
        self._cache: Dict[int, List[np.ndarray]] = {}
        # Índice do primeiro quadro de cada sequência de quadros idênticos
        self._canonicos: Dict[int, List[int]] = {}
        self._lock = threading.Lock()

    def frames(self, asset_id: int) -> List[np.ndarray]:
        with self._lock:
            if asset_id not in self._cache:
                quadros = self._loader(self.assets[asset_id])
                if not quadros:
                    raise MediaError(f"Material {asset_id} sem quadros decodificáveis")
                canonicos = [0]
                for i in range(1, len(quadros)):
                    igual = np.array_equal(quadros[i], quadros[i - 1])
                    canonicos.append(canonicos[-1] if igual else i)
                self._cache[asset_id] = quadros
                self._canonicos[asset_id] = canonicos
            return self._cache[asset_id]

    def is_still(self, asset_id: int) -> bool:
        return not self.assets[asset_id].is_video or len(self.frames(asset_id)) == 1

    def frame_index(self, asset_id: int, seconds: float, until: Optional[float] = None) -> int:
        """
        Índice do quadro exibido em `seconds` do material; depois de `until`
        (ou do fim) o último quadro fica congelado. Quadros repetidos em
        sequência compartilham o índice do primeiro.
        """
        quadros = self.frames(asset_id)
        if self.is_still(asset_id):
            return 0
        fps = self.assets[asset_id].frame_rate or 1.0
        ultimo = len(quadros) - 1
        if until is not None:
            ultimo = min(ultimo, max(0, math.ceil(until * fps - 1e-6) - 1))
        indice = min(max(int(math.floor(seconds * fps + 1e-6)), 0), ultimo)
        return self._canonicos[asset_id][indice]

    def frame_at(self, asset_id: int, seconds: float, until: Optional[float] = None) -> np.ndarray:
        return self.frames(asset_id)[self.frame_index(asset_id, seconds, until)]


# Composição


def _ease(alpha: float) -> float:
    return (1 - math.cos(math.pi * alpha)) / 2


def blend_transition(
    outgoing: np.ndarray, incoming: np.ndarray, transition: Transition, alpha: float
) -> np.ndarray:
    """
    Mistura dois quadros numa fração `alpha` da animação de troca.

    Dissolve linear, passagem pelo preto ou deslocamento com aceleração suave
    (o quadro novo entra por baixo ou pela direita).
    """
    if transition is Transition.CUT:
        return incoming if alpha >= 0.5 else outgoing
    if transition is Transition.CROSSFADE_IN:
        mistura = outgoing.astype(np.float64) * (1 - alpha) + incoming.astype(np.float64) * alpha
        return np.clip(np.rint(mistura), 0, 255).astype(np.uint8)
    if transition is Transition.CROSSFADE_OUT:
        if alpha < 0.5:
            mistura = outgoing.astype(np.float64) * (1 - 2 * alpha)
        else:
            mistura = incoming.astype(np.float64) * (2 * alpha - 1)
        return np.clip(np.rint(mistura), 0, 255).astype(np.uint8)

    eixo = 0 if transition is Transition.TRANSLATE_UP else 1
    tamanho = outgoing.shape[eixo]
    deslocamento = int(round(_ease(alpha) * tamanho))
    if deslocamento == 0:
        return outgoing.copy()
    return np.concatenate(
        [
            np.take(outgoing, range(deslocamento, tamanho), axis=eixo),
            np.take(incoming, range(0, deslocamento), axis=eixo),
        ],
        axis=eixo,
    )


class FrameCompositor:
    """
    Rasteriza a linha do tempo num instante qualquer.

    O resultado depende só de (timeline, t); o cache guarda quadros já
    compostos por (clipe, quadro da fonte).
    """

    def __init__(
        self,
        timeline: Timeline,
        frame_source: AssetFrameSource,
        cfg: Optional[RenderConfig] = None,
    ):
        self.timeline = timeline
        self.source = frame_source
        self.cfg = cfg or RenderConfig()
        self.clips: Tuple[Clip, ...] = timeline.clips
        self._starts = [c.start for c in self.clips]
        self._cache: Dict[Tuple[int, int], np.ndarray] = {}
        self._lock = threading.Lock()

    def _source_index(self, segmento: TimelineSegment, t: float) -> int:
        local = max(0.0, t - segmento.start)
        if segmento.source_trim is not None:
            inicio, fim = segmento.source_trim
            return self.source.frame_index(segmento.asset_id, inicio + local, until=fim)
        return self.source.frame_index(segmento.asset_id, local)

    def clip_frame(self, indice: int, t: float) -> np.ndarray:
        """Quadro de um único clipe em t, sem animação de troca"""
        clipe = self.clips[indice]
        fonte = 0 if isinstance(clipe, TitleCard) else self._source_index(clipe, t)
        chave = (indice, fonte)
        with self._lock:
            pronto = self._cache.get(chave)
        if pronto is not None:
            return pronto

        if isinstance(clipe, TitleCard):
            quadro = title_card_frame(clipe.text, self.cfg)
        else:
            quadro = composite_material(
                self.source.frames(clipe.asset_id)[fonte],
                clipe.placement,
                self.cfg.width,
                self.cfg.height,
                self.cfg.background,
            )
            quadro = draw_caption(quadro, clipe.caption, self.cfg)

        with self._lock:
            if len(self._cache) >= CACHE_FRAMES:
                self._cache.pop(next(iter(self._cache)))
            self._cache[chave] = quadro
        return quadro

    def frame(self, t: float) -> np.ndarray:
        total = self.timeline.total_duration
        if not 0 <= t < total:
            raise ValueError(f"Instante fora da linha do tempo: {t} (duração {total})")

        i = bisect.bisect_right(self._starts, t) - 1
        atual = self.clips[i]
        d = atual.transition_duration
        if i > 0 and atual.transition_in is not Transition.CUT and d > 0:
            if t < atual.start + d / 2:
                alpha = (t - (atual.start - d / 2)) / d
                return blend_transition(
                    self.clip_frame(i - 1, t), self.clip_frame(i, t), atual.transition_in, alpha
                )

        if i + 1 < len(self.clips):
            seguinte = self.clips[i + 1]
            d = seguinte.transition_duration
            inicio = seguinte.start - d / 2
            if seguinte.transition_in is not Transition.CUT and d > 0 and t >= inicio:
                return blend_transition(
                    self.clip_frame(i, t),
                    self.clip_frame(i + 1, t),
                    seguinte.transition_in,
                    (t - inicio) / d,
                )
        return self.clip_frame(i, t)


def compose_frame(
    timeline: Timeline,
    t: float,
    frame_source: AssetFrameSource,
    cfg: Optional[RenderConfig] = None,
) -> np.ndarray:
    """Quadro da linha do tempo no instante t (0 <= t < duração total)"""
    return FrameCompositor(timeline, frame_source, cfg).frame(t)


# Trilha sonora


def _mono_or_stereo(amostras: np.ndarray) -> np.ndarray:
    return amostras if amostras.ndim == 1 else amostras[:, :2]


def build_soundtrack(timeline: Timeline) -> Tuple[np.ndarray, int]:
    """
    Trilha da duração exata do vídeo: música cortada ou repetida com
    cruzamento linear; silêncio quando não há música.
    """
    if timeline.music is None:
        n = int(round(timeline.total_duration * SILENT_SAMPLE_RATE))
        return np.zeros(n, dtype=np.float32), SILENT_SAMPLE_RATE

    amostras, taxa = read_audio(timeline.music.path)
    amostras = _mono_or_stereo(amostras).astype(np.float32)
    necessarias = int(round(timeline.total_duration * taxa))
    if len(amostras) == 0:
        raise RenderError(f"Faixa sem amostras: {timeline.music.path}")

    trilha = amostras
    cruzamento = min(int(round(timeline.loop_crossfade * taxa)), len(amostras) // 2)
    while len(trilha) < necessarias:
        if cruzamento > 0:
            rampa = np.linspace(0.0, 1.0, cruzamento, dtype=np.float32)
            if trilha.ndim == 2:
                rampa = rampa[:, None]
            emenda = trilha[-cruzamento:] * (1 - rampa) + amostras[:cruzamento] * rampa
            trilha = np.concatenate([trilha[:-cruzamento], emenda, amostras[cruzamento:]])
        else:
            trilha = np.concatenate([trilha, amostras])
    return trilha[:necessarias], taxa


# Estilo


class _StyleStage:
    """Aplica o adaptador de estilo com uma nova tentativa e recuo para identidade"""

    def __init__(self, style: FrameStyleAdapter, workers: int):
        self.style = style
        self._limite = threading.Semaphore(max(1, min(style.max_concurrency, workers)))
        self._identidade = IdentityStyle()

    def _attempt(self, quadro: np.ndarray) -> np.ndarray:
        with self._limite:
            saida = np.asarray(self.style.stylize(quadro))
        if saida.shape != quadro.shape:
            raise RenderError(f"Estilo devolveu dimensões {saida.shape}, esperado {quadro.shape}")
        return saida.astype(np.uint8, copy=False)

    def apply(self, quadro: np.ndarray, indice: int) -> np.ndarray:
        for tentativa in (1, 2):
            try:
                return self._attempt(quadro)
            except Exception as e:
                logger.debug(f"Estilo falhou no quadro {indice} (tentativa {tentativa}): {e}")
        logger.warning(f"Estilo falhou duas vezes no quadro {indice}; quadro mantido sem estilo")
        return self._identidade.stylize(quadro)


def frame_count(timeline: Timeline, frame_rate: float) -> int:
    return int(round(timeline.total_duration * frame_rate))


def render_video(
    timeline: Timeline,
    cfg: RenderConfig,
    style: FrameStyleAdapter,
    output_dir: Path,
    frame_source: AssetFrameSource,
    codec_template: str = CODEC_TEMPLATE_PADRAO,
) -> RenderResult:
    """
    Renderiza a linha do tempo num diretório de quadros (e opcionalmente num contêiner).

    Args:
        timeline: Linha do tempo montada
        cfg: Resolução, taxa de quadros, legenda, fundo, saída
        style: Estágio de estilo aplicado a cada quadro depois da composição
        output_dir: Diretório de saída (frames/, audio.wav, meta.json)
        frame_source: Fonte de quadros dos materiais
        codec_template: Comando do transcodificador para saída em contêiner

    Returns:
        RenderResult com os caminhos gerados
    """
    output_dir = Path(output_dir)
    quadros_dir = output_dir / "frames"
    quadros_dir.mkdir(parents=True, exist_ok=True)
    for antigo in quadros_dir.glob("frame_*.png"):
        antigo.unlink()

    total = frame_count(timeline, cfg.frame_rate)
    compositor = FrameCompositor(timeline, frame_source, cfg)
    estilo = _StyleStage(style, cfg.workers)

    def produzir(indice: int) -> bytes:
        quadro = compositor.frame(indice / cfg.frame_rate)
        return encode_png(estilo.apply(quadro, indice))

    logger.info(f"Renderizando {total} quadros {cfg.width}x{cfg.height} a {cfg.frame_rate:g} fps")
    lote = max(1, cfg.workers) * 4
    try:
        with ThreadPoolExecutor(max_workers=max(1, cfg.workers)) as pool:
            for inicio in range(0, total, lote):
                indices = range(inicio, min(inicio + lote, total))
                for indice, dados in zip(indices, pool.map(produzir, indices)):
                    (quadros_dir / FRAME_PATTERN.format(indice)).write_bytes(dados)
    except OSError as e:
        raise RenderError(f"Falha ao gravar quadros em {quadros_dir}: {e}") from e

    trilha, taxa = build_soundtrack(timeline)
    audio = output_dir / AUDIO_FILE
    try:
        write_wav(audio, trilha, taxa)
        write_frame_directory_meta(
            output_dir,
            fps=cfg.frame_rate,
            width=cfg.width,
            height=cfg.height,
            duration=timeline.total_duration,
            frame_count=total,
            audio_sample_rate=taxa,
            frames_dir=quadros_dir.name,
        )
    except OSError as e:
        raise RenderError(f"Falha ao gravar áudio ou metadados em {output_dir}: {e}") from e

    conteiner = None
    if cfg.output is OutputKind.CONTAINER_FILE:
        conteiner = encode_container(
            quadros_dir, audio, output_dir / "output.mp4", cfg.frame_rate, codec_template
        )

    return RenderResult(
        frames_dir=quadros_dir,
        audio_path=audio,
        meta_path=output_dir / META_FILE,
        frame_count=total,
        container_path=conteiner,
    )


def select_judge_frames(frames_dir: Path, count: int = 8) -> List[Path]:
    """Quadros igualmente espaçados do vídeo renderizado, para o juiz"""
    arquivos = sorted(Path(frames_dir).glob("frame_*.png"))
    if not arquivos or count <= 0:
        return []
    indices = np.unique(np.round(np.linspace(0, len(arquivos) - 1, count)).astype(int))
    return [arquivos[i] for i in indices]
