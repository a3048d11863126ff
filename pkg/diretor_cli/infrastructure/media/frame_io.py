#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Leitura e escrita de quadros e áudio PCM

Quadros circulam como arrays numpy uint8 (altura, largura, 3) em RGB.
Vídeos podem ser contêineres (lidos com OpenCV) ou "diretórios de quadros":
arquivos frame_%06d.png mais um meta.json com a taxa de quadros.
"""

import io
import json
from pathlib import Path
from typing import Iterator, List, Optional, Tuple

import numpy as np
from PIL import Image
from scipy.io import wavfile

from diretor_cli.domain.errors import MediaError
from diretor_cli.infrastructure.logging_config import obter_logger

logger = obter_logger("media")

IMAGE_EXTENSIONS = {".jpg", ".jpeg", ".png", ".bmp", ".webp", ".tif", ".tiff", ".gif"}
VIDEO_EXTENSIONS = {".mp4", ".mov", ".avi", ".mkv", ".webm", ".m4v", ".mpg", ".mpeg"}
AUDIO_EXTENSIONS = {".wav", ".mp3", ".flac", ".ogg", ".m4a", ".aac"}

FRAME_PATTERN = "frame_{:06d}.png"
META_FILE = "meta.json"
AUDIO_FILE = "audio.wav"


def read_image(path: Path) -> np.ndarray:
    """Lê uma imagem como RGB 8 bits"""
    try:
        with Image.open(path) as img:
            return np.asarray(img.convert("RGB"), dtype=np.uint8).copy()
    except Exception as e:
        raise MediaError(f"Imagem ilegível: {path} ({e})") from e


def inspect_image(path: Path) -> Tuple[int, int]:
    """Retorna (largura, altura) lendo apenas o cabeçalho"""
    try:
        with Image.open(path) as img:
            return img.size
    except Exception as e:
        raise MediaError(f"Imagem ilegível: {path} ({e})") from e


def encode_png(frame: np.ndarray) -> bytes:
    """Codifica um quadro em PNG (saída determinística byte a byte)"""
    buffer = io.BytesIO()
    imagem = Image.fromarray(np.ascontiguousarray(frame, dtype=np.uint8))
    imagem.save(buffer, format="PNG", compress_level=6)
    return buffer.getvalue()


# Diretórios de quadros


def is_frame_directory(path: Path) -> bool:
    return path.is_dir() and any(path.glob("frame_*"))


def frame_directory_files(path: Path) -> List[Path]:
    arquivos = [
        p for p in path.glob("frame_*") if p.suffix.lower() in IMAGE_EXTENSIONS and p.is_file()
    ]
    return sorted(arquivos)


def read_frame_directory_meta(path: Path) -> dict:
    meta_path = path / META_FILE
    if not meta_path.exists():
        raise MediaError(f"Diretório de quadros sem {META_FILE}: {path}")
    try:
        meta = json.loads(meta_path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise MediaError(f"{meta_path} não é um JSON válido: {e}") from e
    if float(meta.get("fps", 0)) <= 0:
        raise MediaError(f"{meta_path} sem taxa de quadros válida")
    return meta


def write_frame_directory_meta(path: Path, **meta) -> None:
    (path / META_FILE).write_text(json.dumps(meta, indent=2, sort_keys=True), encoding="utf-8")


def iter_frame_directory(path: Path, expected: Optional[int] = None) -> Iterator[np.ndarray]:
    """Itera os quadros em ordem; um quadro corrompido encerra a leitura com aviso"""
    arquivos = frame_directory_files(path)
    if expected is None:
        expected = len(arquivos)
    lidos = 0
    for arquivo in arquivos[:expected]:
        try:
            quadro = read_image(arquivo)
        except MediaError as e:
            logger.debug(str(e))
            break
        lidos += 1
        yield quadro
    if lidos < expected:
        logger.warning(f"Vídeo truncado em {path.name}: {lidos} de {expected} quadros lidos")


# Contêineres (OpenCV)


def _cv2():
    try:
        import cv2
    except ImportError as e:
        raise MediaError("OpenCV não está disponível para ler vídeos em contêiner") from e
    return cv2


def inspect_container(path: Path) -> Tuple[int, int, float, int]:
    """Retorna (largura, altura, fps, quadros) de um vídeo em contêiner"""
    cv2 = _cv2()
    captura = cv2.VideoCapture(str(path))
    try:
        if not captura.isOpened():
            raise MediaError(f"Vídeo ilegível: {path}")
        largura = int(captura.get(cv2.CAP_PROP_FRAME_WIDTH))
        altura = int(captura.get(cv2.CAP_PROP_FRAME_HEIGHT))
        fps = float(captura.get(cv2.CAP_PROP_FPS))
        quadros = int(captura.get(cv2.CAP_PROP_FRAME_COUNT))
    finally:
        captura.release()
    if largura <= 0 or altura <= 0 or fps <= 0 or quadros <= 0:
        raise MediaError(f"Metadados inválidos no vídeo {path}")
    return largura, altura, fps, quadros


def iter_container(path: Path, expected: Optional[int] = None) -> Iterator[np.ndarray]:
    cv2 = _cv2()
    captura = cv2.VideoCapture(str(path))
    if not captura.isOpened():
        raise MediaError(f"Falha de codec ao abrir {path}")
    lidos = 0
    try:
        while expected is None or lidos < expected:
            ok, quadro = captura.read()
            if not ok:
                break
            lidos += 1
            yield cv2.cvtColor(quadro, cv2.COLOR_BGR2RGB)
    finally:
        captura.release()
    if expected is not None and lidos < expected:
        logger.warning(f"Vídeo truncado em {path.name}: {lidos} de {expected} quadros lidos")


# Áudio PCM


def read_wav(path: Path) -> Tuple[np.ndarray, int]:
    """
    Lê um WAV como float32 em [-1, 1].

    Returns:
        (amostras com forma (n,) ou (n, canais), taxa de amostragem)
    """
    try:
        taxa, dados = wavfile.read(str(path))
    except Exception as e:
        raise MediaError(f"Áudio ilegível: {path} ({e})") from e
    if dados.dtype == np.int16:
        amostras = dados.astype(np.float32) / 32768.0
    elif dados.dtype == np.int32:
        amostras = dados.astype(np.float32) / 2147483648.0
    elif dados.dtype == np.uint8:
        amostras = (dados.astype(np.float32) - 128.0) / 128.0
    else:
        amostras = dados.astype(np.float32)
    return amostras, int(taxa)


def read_audio(path: Path) -> Tuple[np.ndarray, int]:
    """Lê WAV diretamente; demais formatos passam pelo librosa"""
    if path.suffix.lower() == ".wav":
        return read_wav(path)
    try:
        import librosa

        amostras, taxa = librosa.load(str(path), sr=None, mono=False)
    except Exception as e:
        raise MediaError(f"Áudio ilegível: {path} ({e})") from e
    if amostras.ndim == 2:
        amostras = amostras.T
    return amostras.astype(np.float32), int(taxa)


def write_wav(path: Path, samples: np.ndarray, sample_rate: int) -> None:
    """Grava PCM 16 bits; amostras float em [-1, 1] são convertidas"""
    if samples.dtype != np.int16:
        samples = np.clip(np.rint(samples * 32767.0), -32768, 32767).astype(np.int16)
    wavfile.write(str(path), int(sample_rate), samples)
