#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Integração com o transcodificador externo (ffmpeg por padrão)
"""

import shlex
import shutil
import subprocess
from pathlib import Path
from typing import List, Optional

from diretor_cli.domain.errors import RenderError
from diretor_cli.infrastructure.config import CODEC_TEMPLATE_PADRAO
from diretor_cli.infrastructure.logging_config import obter_logger

logger = obter_logger("codec")


def build_command(
    template: str, frames_dir: Path, audio: Path, output: Path, fps: float
) -> List[str]:
    """Monta a linha de comando a partir do modelo configurado"""
    valores = {
        "frames": str(frames_dir),
        "audio": str(audio),
        "output": str(output),
        "fps": f"{fps:g}",
    }
    return [parte.format(**valores) for parte in shlex.split(template)]


def encode_container(
    frames_dir: Path,
    audio: Path,
    output: Path,
    fps: float,
    template: str = CODEC_TEMPLATE_PADRAO,
    timeout: int = 600,
) -> Optional[Path]:
    """
    Codifica o diretório de quadros em um contêiner.

    Returns:
        Caminho do arquivo gerado, ou None quando a ferramenta não está instalada
        (a saída continua disponível como diretório de quadros)
    """
    comando = build_command(template, frames_dir, audio, output, fps)
    if shutil.which(comando[0]) is None:
        logger.warning(
            f"Transcodificador '{comando[0]}' não encontrado; "
            "mantendo saída em diretório de quadros"
        )
        return None

    logger.debug(f"Executando comando: {' '.join(comando)}")
    try:
        resultado = subprocess.run(
            comando, capture_output=True, text=True, timeout=timeout, check=False
        )
    except subprocess.TimeoutExpired as e:
        raise RenderError(f"Timeout: o transcodificador excedeu {timeout} segundos") from e

    if resultado.returncode != 0:
        logger.error(f"STDERR: {resultado.stderr}")
        raise RenderError(f"Transcodificador falhou com código {resultado.returncode}")
    return output
