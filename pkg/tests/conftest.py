"""
Fixtures compartilhadas: vídeos sintéticos com cenas de hash conhecido,
faixa de cliques e um projeto completo para o pipeline
"""

import json
import os
import tempfile
from pathlib import Path
from typing import Iterable, List, Sequence, Tuple

import numpy as np
import pytest
from PIL import Image
from scipy import fft
from scipy.io import wavfile

# Logs e config.json dos testes ficam fora do diretório do usuário
os.environ.setdefault("DIRETOR_HOME", tempfile.mkdtemp(prefix="diretor-testes-"))

SAMPLE_RATE = 22050

# Posições (índice achatado no bloco 8x8) com os 31 maiores coeficientes AC.
# A e B discordam em 62 bits, A e C em 30, B e C em 32.
SCENE_TOPS = {
    "A": tuple(range(33, 64)),
    "B": tuple(range(1, 32)),
    "C": tuple(range(17, 32)) + tuple(range(48, 64)),
}


def scene_frame(top: Iterable[int], size: int = 32) -> np.ndarray:
    """Quadro cinza cujo hash perceptual tem bit 1 exatamente nas posições `top`"""
    topo = sorted(top)
    resto = [p for p in range(1, 64) if p not in topo]
    coeficientes = np.zeros((size, size))
    for rank, posicao in enumerate(resto + topo):
        coeficientes[posicao // 8, posicao % 8] = 2.0 * (rank - 31)
    pixels = fft.idctn(coeficientes, norm="ortho") + 128
    cinza = np.clip(np.rint(pixels), 0, 255).astype(np.uint8)
    return np.repeat(cinza[..., None], 3, axis=2)


def scene_video(scenes: str, frames_per_scene: int) -> List[np.ndarray]:
    """Sequência de cenas estáticas, por exemplo "ABC" com 20 quadros cada"""
    return [scene_frame(SCENE_TOPS[s]) for s in scenes for _ in range(frames_per_scene)]


def write_frame_video(directory: Path, frames: Sequence[np.ndarray], fps: float) -> Path:
    """Grava um diretório de quadros (frame_%06d.png + meta.json)"""
    directory.mkdir(parents=True, exist_ok=True)
    for i, quadro in enumerate(frames):
        Image.fromarray(quadro).save(directory / f"frame_{i:06d}.png")
    (directory / "meta.json").write_text(
        json.dumps({"fps": fps, "frame_count": len(frames)}), encoding="utf-8"
    )
    return directory


def gradient_image(width: int, height: int, seed: int = 0) -> np.ndarray:
    """Imagem suave com cor dependente da semente"""
    rng = np.random.default_rng(seed)
    base = rng.integers(40, 200, size=3)
    x = np.linspace(0, 1, width)[None, :, None]
    y = np.linspace(0, 1, height)[:, None, None]
    imagem = base + 50 * x - 30 * y
    return np.clip(np.rint(imagem), 0, 255).astype(np.uint8)


def click_track(
    duration: float = 30.0, bpm: float = 120.0, offset: float = 0.25, sr: int = SAMPLE_RATE
) -> Tuple[np.ndarray, np.ndarray]:
    """Rajadas curtas de ruído em andamento fixo; devolve (amostras, instantes dos cliques)"""
    rng = np.random.default_rng(0)
    amostras = np.zeros(int(duration * sr), dtype=np.float32)
    tamanho = int(0.02 * sr)
    envelope = np.exp(-np.arange(tamanho) / (0.003 * sr))
    cliques = np.arange(offset, duration - 0.05, 60.0 / bpm)
    for instante in cliques:
        i = int(round(instante * sr))
        rajada = 0.8 * envelope * rng.uniform(-1, 1, tamanho)
        amostras[i : i + tamanho] += rajada[: len(amostras) - i].astype(np.float32)
    return amostras, cliques


def write_wav(path: Path, samples: np.ndarray, sr: int = SAMPLE_RATE) -> Path:
    pcm = np.clip(np.rint(samples * 32767.0), -32768, 32767).astype(np.int16)
    wavfile.write(str(path), sr, pcm)
    return path


@pytest.fixture
def three_scene_video() -> List[np.ndarray]:
    """Cenas A, B e C com 20 quadros cada (cortes em 20 e 40)"""
    return scene_video("ABC", 20)


@pytest.fixture
def music_library(tmp_path: Path) -> Path:
    biblioteca = tmp_path / "library"
    biblioteca.mkdir()
    amostras, _ = click_track()
    write_wav(biblioteca / "click_track.wav", amostras)
    return biblioteca


@pytest.fixture
def project(tmp_path: Path, music_library: Path) -> Path:
    """
    Projeto com três imagens de proporções diferentes e um vídeo de duas
    cenas (4 s a 5 fps). Saída pequena e 10 fps para renderizar rápido.
    """
    raiz = tmp_path / "projeto"
    raiz.mkdir()
    for nome, (largura, altura), semente in (
        ("praia.png", (64, 48), 1),
        ("retrato.png", (48, 64), 2),
        ("panorama.png", (96, 32), 3),
    ):
        Image.fromarray(gradient_image(largura, altura, semente)).save(raiz / nome)
    write_frame_video(raiz / "passeio", scene_video("AB", 10), fps=5)

    manifesto = raiz / "ferias.manifest"
    manifesto.write_text(
        "\n".join(
            [
                "[requirements]",
                "theme = summer holiday",
                "location = the beach",
                "time = August 2023",
                "requirement = keep it light",
                "width = 320",
                "height = 180",
                "fps = 10",
                "seed = 7",
                "",
                "[assets]",
                "passeio",
                "praia.png",
                "retrato.png",
                "panorama.png",
                "",
                "[music]",
                f"library_path = {music_library}",
                "",
            ]
        ),
        encoding="utf-8",
    )
    return manifesto
