"""
Serviço de linha do tempo: geometria dos materiais, encaixe nas batidas e
sorteio das transições
"""

import bisect
import hashlib
import math
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from diretor_cli.domain.errors import TimelineError
from diretor_cli.domain.models.assets import MediaAsset
from diretor_cli.domain.models.music import BeatGrid, MusicTrack
from diretor_cli.domain.models.narration import DirectorPlan
from diretor_cli.domain.models.timeline import (
    ANIMATED_TRANSITIONS,
    Placement,
    PlacementMode,
    Timeline,
    TimelineConfig,
    TimelineSegment,
    TitleCard,
)
from diretor_cli.infrastructure.logging_config import obter_logger

logger = obter_logger("timeline")

EDL_HEADER = "# diretor edl v1"


def _round_half_up(valor: float) -> int:
    return int(math.floor(valor + 0.5))


def fit_material(
    H_O: int, W_O: int, H_T: int, W_T: int, blur_sigma: Optional[float] = None
) -> Placement:
    """
    Resolve as duas escalas do material.

    M1 = (H_T, W_O·H_T/H_O) e M2 = (H_O·W_T/W_O, W_T). Se M1 cabe na
    largura do alvo, ele é o primeiro plano centralizado na horizontal e M2
    desfocado e recortado ao centro é o fundo; caso contrário os papéis se
    invertem. Proporção igual à do alvo dispensa o fundo.

    Args:
        H_O, W_O: Altura e largura do material
        H_T, W_T: Altura e largura do alvo
        blur_sigma: Sigma do desfoque do fundo (padrão: W_T / 64)
    """
    if min(H_O, W_O, H_T, W_T) <= 0:
        raise ValueError("Dimensões devem ser positivas")
    sigma = W_T / 64 if blur_sigma is None else blur_sigma

    m1_largura = max(1, _round_half_up(W_O * H_T / H_O))
    m2_altura = max(1, _round_half_up(H_O * W_T / W_O))

    if W_O * H_T == W_T * H_O or m1_largura == W_T:
        return Placement(W_T, H_T, 0, 0, W_T, H_T, 0.0, PlacementMode.EXACT_FIT)
    if m1_largura <= W_T:
        return Placement(
            fg_width=m1_largura,
            fg_height=H_T,
            fg_offset_x=(W_T - m1_largura) // 2,
            fg_offset_y=0,
            bg_width=W_T,
            bg_height=max(m2_altura, H_T),
            bg_blur_sigma=sigma,
            mode=PlacementMode.FIT_WIDTH_LIMITED,
        )
    altura = min(m2_altura, H_T)
    return Placement(
        fg_width=W_T,
        fg_height=altura,
        fg_offset_x=0,
        fg_offset_y=(H_T - altura) // 2,
        bg_width=max(m1_largura, W_T),
        bg_height=H_T,
        bg_blur_sigma=sigma,
        mode=PlacementMode.FIT_HEIGHT_LIMITED,
    )


class _BeatCursor:
    """Batidas ordenadas, estendidas periodicamente quando a música repete"""

    def __init__(self, beats: Sequence[float]):
        self.beats = list(beats)

    def after(self, instante: float) -> List[float]:
        return self.beats[bisect.bisect_right(self.beats, instante + 1e-9) :]

    def snap_end(
        self, start: float, nominal_end: float, min_duration: float
    ) -> float:
        """
        Fim encaixado: a batida mais próxima do fim nominal; se o trecho ficar
        menor que o mínimo, a primeira batida que respeita o mínimo.
        """
        candidatos = self.after(start)
        if candidatos:
            melhor = min(candidatos, key=lambda b: abs(b - nominal_end))
            if melhor - start >= min_duration - 1e-9:
                return melhor
            for batida in candidatos:
                if batida - start >= min_duration - 1e-9:
                    return batida
        fim = max(nominal_end, start + min_duration)
        logger.warning(
            f"Sem batida válida depois de {start:.2f} s; corte em {fim:.2f} s fica fora da grade"
        )
        return fim

    def nearest_within(self, alvo: float, inicio: float, fim: float) -> Optional[float]:
        dentro = [b for b in self.beats if inicio - 1e-9 <= b <= fim + 1e-9]
        if not dentro:
            return None
        return min(dentro, key=lambda b: abs(b - alvo))


def extend_beats(
    beats: BeatGrid, music: Optional[MusicTrack], horizon: float, loop_crossfade: float
) -> List[float]:
    """Repete a grade a cada volta da música (duração menos o cruzamento) até o horizonte"""
    batidas = list(beats.beats)
    if not batidas or music is None:
        return batidas
    periodo = music.duration - loop_crossfade
    if periodo <= 0:
        return batidas
    estendidas = list(batidas)
    volta = 1
    while volta * periodo <= horizon:
        deslocadas = [b + volta * periodo for b in batidas]
        estendidas.extend(b for b in deslocadas if b > estendidas[-1] + 1e-6)
        volta += 1
    return estendidas


def _transition_duration(cfg: TimelineConfig, anterior: float, atual: float) -> float:
    return min(cfg.transition_duration, anterior / 2, atual / 2)


def assemble_timeline(
    plan: DirectorPlan,
    assets: Union[Sequence[MediaAsset], Mapping[int, MediaAsset]],
    beats: BeatGrid,
    cfg: Optional[TimelineConfig] = None,
    music: Optional[MusicTrack] = None,
) -> Timeline:
    """
    Monta a linha do tempo encaixando cada corte numa batida.

    Args:
        plan: Plano do diretor (ordem, título, legendas, encerramento)
        assets: Materiais do projeto
        beats: Grade de batidas da música (ou grade fixa)
        cfg: Parâmetros de montagem
        music: Faixa escolhida (define a repetição com cruzamento)

    Returns:
        Timeline imutável, pronta para renderizar
    """
    cfg = cfg or TimelineConfig()
    por_id: Dict[int, MediaAsset] = (
        dict(assets) if isinstance(assets, Mapping) else {a.id: a for a in assets}
    )
    assert sorted(plan.order) == sorted(por_id), "ordem do plano não é permutação dos materiais"
    if beats.is_empty:
        raise TimelineError("grade de batidas vazia e sem alternativa")

    nominal_total = 2 * cfg.card_duration + sum(
        cfg.image_duration if not por_id[i].is_video else (por_id[i].duration or 0.0)
        for i in plan.order
    )
    horizonte = 2 * nominal_total + 10 * cfg.image_duration
    cursor = _BeatCursor(extend_beats(beats, music, horizonte, cfg.loop_crossfade))
    rng = np.random.default_rng(cfg.seed)
    avisos: List[str] = []

    fim_abertura = cursor.snap_end(0.0, cfg.card_duration, cfg.min_duration)
    abertura = TitleCard(plan.title, 0.0, fim_abertura)

    trechos: List[TimelineSegment] = []
    anterior = abertura.duration
    instante = fim_abertura
    for asset_id in plan.order:
        asset = por_id[asset_id]
        placement = fit_material(
            asset.height,
            asset.width,
            cfg.target_height,
            cfg.target_width,
            cfg.effective_blur_sigma,
        )
        if asset.is_video:
            clipe = float(asset.duration or 0.0)
            fim = cursor.snap_end(instante, instante + clipe, cfg.min_duration)
            if fim - instante > clipe + cfg.max_hold:
                alternativa = cursor.nearest_within(
                    instante + clipe,
                    max(instante + clipe - cfg.max_trim, instante + cfg.min_duration),
                    instante + clipe + cfg.max_hold,
                )
                if alternativa is not None:
                    fim = alternativa
                else:
                    aviso = (
                        f"Vídeo {asset_id}: nenhuma batida perto do fim do clipe; "
                        f"último quadro congelado por {fim - instante - clipe:.2f} s"
                    )
                    logger.warning(aviso)
                    avisos.append(aviso)
            duracao = fim - instante
            trim: Optional[Tuple[float, float]] = (0.0, min(duracao, clipe))
        else:
            fim = cursor.snap_end(instante, instante + cfg.image_duration, cfg.min_duration)
            duracao = fim - instante
            trim = None

        transicao = ANIMATED_TRANSITIONS[int(rng.integers(len(ANIMATED_TRANSITIONS)))]
        trechos.append(
            TimelineSegment(
                asset_id=asset_id,
                start=instante,
                end=fim,
                caption=plan.caption_for(asset_id),
                transition_in=transicao,
                transition_duration=_transition_duration(cfg, anterior, duracao),
                placement=placement,
                source_trim=trim,
            )
        )
        anterior = duracao
        instante = fim

    fim_encerramento = cursor.snap_end(
        instante, instante + cfg.card_duration, cfg.min_duration
    )
    transicao = ANIMATED_TRANSITIONS[int(rng.integers(len(ANIMATED_TRANSITIONS)))]
    encerramento = TitleCard(
        plan.closing,
        instante,
        fim_encerramento,
        transicao,
        _transition_duration(cfg, anterior, fim_encerramento - instante),
    )

    total = encerramento.end
    repete = bool(music is not None and total > music.duration)
    if repete and music is not None:
        logger.info(
            f"Música ({music.duration:.1f} s) menor que o vídeo ({total:.1f} s); "
            f"repetindo com cruzamento de {cfg.loop_crossfade:g} s"
        )

    return Timeline(
        opening=abertura,
        segments=tuple(trechos),
        closing=encerramento,
        music=music,
        total_duration=total,
        music_loops=repete,
        loop_crossfade=cfg.loop_crossfade,
        warnings=tuple(avisos),
    )


def caption_hash(caption: str) -> str:
    return hashlib.sha1(caption.encode("utf-8")).hexdigest()[:12]


def timeline_to_edl(timeline: Timeline) -> str:
    """Lista de decisões de edição: um trecho por linha"""
    musica = timeline.music.title if timeline.music else "-"
    linhas = [
        f"{EDL_HEADER} total={timeline.total_duration:.3f} music={musica} "
        f"loops={'yes' if timeline.music_loops else 'no'}"
    ]
    for numero, clipe in enumerate(timeline.clips):
        if isinstance(clipe, TitleCard):
            rotulo = "TITLE" if clipe is timeline.opening else "CLOSE"
            texto = clipe.text
        else:
            rotulo = f"A{clipe.asset_id}"
            texto = clipe.caption
        linhas.append(
            f"{numero:03d} {rotulo:<6} {clipe.start:10.3f} {clipe.end:10.3f} "
            f"{clipe.transition_in.value:<17} {clipe.transition_duration:5.2f} "
            f"{caption_hash(texto)}"
        )
    return "\n".join(linhas) + "\n"
