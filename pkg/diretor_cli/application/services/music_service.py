"""
Serviço de música: índice da biblioteca local, busca pelo nome recomendado
e detecção de batidas
"""

import re
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Dict, List, Optional, Tuple

import librosa
import numpy as np
from rapidfuzz.distance import Levenshtein

from diretor_cli.domain.errors import (
    BeatTrackingError,
    MediaError,
    MusicError,
    NoMusicAvailable,
    NoPlausibleMatch,
)
from diretor_cli.domain.models.music import (
    BeatGrid,
    LibraryIndex,
    MatchTier,
    MusicMatch,
    MusicTrack,
)
from diretor_cli.infrastructure.logging_config import obter_logger
from diretor_cli.infrastructure.media.frame_io import AUDIO_EXTENSIONS, read_audio

logger = obter_logger("music")

TITLES_SIDECAR = "titles.tsv"

# Distância normalizada acima da qual nenhum título é considerado plausível
MAX_DISTANCE = 0.7

# Rastreador de batidas
TARGET_SR = 22050
N_FFT = 2048
HOP_LENGTH = 512
START_BPM = 120.0
TIGHTNESS = 100.0
MIN_TRACK_SECONDS = 5.0

FALLBACK_SPACING = 4.0

INDEX_WORKERS = 4


# Biblioteca


def normalize_title(title: str) -> str:
    """Minúsculas, sem pontuação, espaços colapsados"""
    texto = title.lower().replace("_", " ")
    texto = re.sub(r"[^\w\s]", "", texto)
    return " ".join(texto.split())


def _read_sidecar(directory: Path) -> Dict[str, str]:
    arquivo = directory / TITLES_SIDECAR
    if not arquivo.exists():
        return {}
    titulos = {}
    for numero, linha in enumerate(arquivo.read_text(encoding="utf-8").splitlines(), start=1):
        if not linha.strip() or linha.startswith("#"):
            continue
        partes = linha.split("\t")
        if len(partes) < 2:
            logger.warning(f"{TITLES_SIDECAR}:{numero}: linha sem tabulação ignorada")
            continue
        titulos[partes[0].strip()] = partes[1].strip()
    return titulos


def inspect_track(path: Path, title: str) -> MusicTrack:
    """Decodifica a faixa para validar e medir duração e canais"""
    amostras, taxa = read_audio(path)
    canais = 1 if amostras.ndim == 1 else amostras.shape[1]
    if len(amostras) == 0:
        raise MediaError(f"Faixa sem amostras: {path}")
    return MusicTrack(
        title=title,
        path=path,
        duration=len(amostras) / taxa,
        sample_rate=taxa,
        channels=canais,
    )


def index_library(directory: Path) -> LibraryIndex:
    """
    Indexa os arquivos de áudio do diretório pelo título normalizado.

    O título vem do `titles.tsv` (nome do arquivo, tabulação, título) quando
    presente, senão do nome do arquivo sem extensão. Arquivos que não
    decodificam são ignorados com aviso.
    """
    directory = Path(directory)
    if not directory.is_dir():
        raise MusicError(f"Biblioteca de músicas ilegível: {directory}")

    titulos = _read_sidecar(directory)
    arquivos = sorted(
        p for p in directory.iterdir() if p.is_file() and p.suffix.lower() in AUDIO_EXTENSIONS
    )

    def sondar(path: Path) -> Tuple[Path, Optional[MusicTrack], Optional[str]]:
        titulo = titulos.get(path.name, path.stem)
        try:
            return path, inspect_track(path, titulo), None
        except (MediaError, ValueError) as e:
            return path, None, str(e)

    with ThreadPoolExecutor(max_workers=INDEX_WORKERS) as pool:
        resultados = list(pool.map(sondar, arquivos))

    faixas: Dict[str, MusicTrack] = {}
    for path, faixa, erro in resultados:
        if faixa is None:
            logger.warning(f"Faixa ignorada (não decodifica): {path.name}: {erro}")
            continue
        chave = normalize_title(faixa.title)
        if chave in faixas:
            logger.warning(f"Título repetido na biblioteca, mantendo o primeiro: {faixa.title}")
            continue
        faixas[chave] = faixa

    logger.info(f"Biblioteca indexada: {len(faixas)} faixas em {directory}")
    return LibraryIndex(faixas)


def retrieve_music(name: str, index: LibraryIndex) -> MusicMatch:
    """
    Busca a faixa mais próxima do nome recomendado.

    Níveis: igualdade do título normalizado, depois contenção em qualquer
    sentido, depois menor distância de Levenshtein normalizada. Empates vão
    para o título lexicograficamente menor.

    Raises:
        NoMusicAvailable: índice vazio
        NoPlausibleMatch: melhor distância acima de 0.7
    """
    if len(index) == 0:
        raise NoMusicAvailable("nenhuma música disponível na biblioteca")
    chave = normalize_title(name)
    if not chave:
        raise ValueError("Nome de música vazio")

    if chave in index:
        return MusicMatch(index.tracks[chave], MatchTier.EXACT, 0.0)

    def distancia(titulo: str) -> Tuple[float, str]:
        return Levenshtein.normalized_distance(chave, titulo), titulo

    contidos = [t for t in index if chave in t or t in chave]
    if contidos:
        score, titulo = min(distancia(t) for t in contidos)
        return MusicMatch(index.tracks[titulo], MatchTier.CONTAINS, score)

    score, titulo = min(distancia(t) for t in index)
    if score > MAX_DISTANCE:
        raise NoPlausibleMatch(
            f"nenhum título plausível para '{name}' (mais próximo: '{titulo}', "
            f"distância {score:.2f})"
        )
    return MusicMatch(index.tracks[titulo], MatchTier.EDIT_DISTANCE, score)


def first_track(index: LibraryIndex) -> MusicTrack:
    """Primeira faixa em ordem de título, usada como alternativa"""
    if len(index) == 0:
        raise NoMusicAvailable("nenhuma música disponível na biblioteca")
    return index.tracks[next(iter(index))]


# Batidas


def _mono(samples: np.ndarray) -> np.ndarray:
    amostras = np.asarray(samples, dtype=np.float32)
    if amostras.ndim == 2:
        amostras = amostras.mean(axis=1)
    return amostras


def onset_envelope(y: np.ndarray) -> np.ndarray:
    """
    Fluxo espectral retificado de meia onda sobre o espectro em dB.

    O envelope é atrasado em n_fft / (2 * hop) quadros para compensar a
    janela centrada, como no librosa.
    """
    espectro = np.abs(librosa.stft(y, n_fft=N_FFT, hop_length=HOP_LENGTH, center=True))
    log_espectro = librosa.amplitude_to_db(espectro, ref=np.max, top_db=80.0)
    fluxo = np.maximum(0.0, np.diff(log_espectro, axis=1)).mean(axis=0)
    atraso = 1 + N_FFT // (2 * HOP_LENGTH)
    envelope = np.concatenate([np.zeros(atraso), fluxo])[: espectro.shape[1]]
    return envelope.astype(np.float64)


def detect_beats(samples: np.ndarray, sample_rate: int) -> BeatGrid:
    """
    Detecta as batidas de uma faixa.

    Args:
        samples: PCM float com forma (n,) ou (n, canais)
        sample_rate: Taxa de amostragem em Hz

    Returns:
        BeatGrid com instantes em segundos; vazio (com aviso) para áudio silencioso

    Raises:
        BeatTrackingError: menos de 5 segundos de áudio
    """
    y = _mono(samples)
    duracao = len(y) / sample_rate
    if duracao < MIN_TRACK_SECONDS:
        raise BeatTrackingError(
            f"faixa curta demais para estimar o andamento ({duracao:.1f} s)"
        )
    if sample_rate != TARGET_SR:
        y = librosa.resample(y, orig_sr=sample_rate, target_sr=TARGET_SR)

    envelope = onset_envelope(y)
    if np.max(np.abs(y)) < 1e-6 or envelope.max() <= 1e-6:
        logger.warning("Áudio silencioso: nenhuma batida detectada")
        return BeatGrid((), 0.0, detected=False)
    estimado, tempos = librosa.beat.beat_track(
        onset_envelope=envelope,
        sr=TARGET_SR,
        hop_length=HOP_LENGTH,
        start_bpm=START_BPM,
        tightness=TIGHTNESS,
        units="time",
    )
    tempos = np.asarray(tempos, dtype=np.float64)
    tempos = tempos[(tempos >= 0) & (tempos <= duracao)]
    batidas = tuple(float(t) for t in np.unique(tempos))

    # A estimativa global é quantizada no hop; o intervalo médio das batidas a refina
    tempo = float(np.atleast_1d(estimado)[0])
    if len(batidas) >= 2:
        tempo = 60.0 / float(np.mean(np.diff(batidas)))
    if tempo <= 0:
        logger.warning("Andamento não estimado: nenhuma batida detectada")
        return BeatGrid((), 0.0, detected=False)

    logger.debug(f"Andamento {tempo:.2f} BPM, {len(batidas)} batidas")
    return BeatGrid(batidas, tempo)


def fixed_grid(duration: float, spacing: float = FALLBACK_SPACING) -> BeatGrid:
    """Grade fixa usada quando a faixa não tem batidas detectáveis"""
    batidas = tuple(float(t) for t in np.arange(0.0, duration + 1e-9, spacing))
    return BeatGrid(batidas, 60.0 / spacing, detected=False)


def analyze_track(track: MusicTrack) -> BeatGrid:
    """Lê a faixa e detecta as batidas, caindo para a grade fixa se não houver nenhuma"""
    amostras, taxa = read_audio(track.path)
    grade = detect_beats(amostras, taxa)
    if grade.is_empty:
        logger.warning(
            f"Sem batidas em '{track.title}'; usando grade fixa de {FALLBACK_SPACING:g} s"
        )
        return fixed_grid(track.duration)
    return grade


def beats_text(grid: BeatGrid) -> List[str]:
    """Linhas do relatório de `diretor beats`"""
    return [f"{b:.3f}" for b in grid.beats]
