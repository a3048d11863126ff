#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Módulo de configuração do Diretor CLI

A configuração persistente fica em ~/.diretor/config.json (escrita por
`diretor configure`). Variáveis de ambiente, carregadas também de um .env,
servem de alternativa apenas para endpoints e credenciais dos adaptadores.
"""

import json
import os
from dataclasses import dataclass
from typing import Dict, Optional

from dotenv import load_dotenv

from diretor_cli.infrastructure.logging_config import DIRETOR_HOME, obter_logger

logger = obter_logger("config")

# Chave no config.json -> variável de ambiente
CHAVES_AMBIENTE = {
    "captioner_url": "DIRETOR_CAPTIONER_URL",
    "captioner_cmd": "DIRETOR_CAPTIONER_CMD",
    "chat_url": "DIRETOR_CHAT_URL",
    "chat_cmd": "DIRETOR_CHAT_CMD",
    "chat_api_key": "DIRETOR_CHAT_API_KEY",
    "chat_base_url": "DIRETOR_CHAT_BASE_URL",
    "chat_model": "DIRETOR_CHAT_MODEL",
    "style_url": "DIRETOR_STYLE_URL",
    "style_cmd": "DIRETOR_STYLE_CMD",
    "codec_template": "DIRETOR_CODEC_TEMPLATE",
    "adapter_timeout": "DIRETOR_ADAPTER_TIMEOUT",
}

CODEC_TEMPLATE_PADRAO = (
    "ffmpeg -y -loglevel error -framerate {fps} -i {frames}/frame_%06d.png -i {audio} "
    "-c:v libx264 -pix_fmt yuv420p -c:a aac -shortest {output}"
)


def _get_config_file() -> str:
    """Retorna o caminho do arquivo de configuração"""
    os.makedirs(DIRETOR_HOME, exist_ok=True)
    return os.path.join(DIRETOR_HOME, "config.json")


def _load_config() -> Dict:
    """Carrega a configuração do arquivo"""
    config_file = os.path.join(DIRETOR_HOME, "config.json")
    if not os.path.exists(config_file):
        return {}

    try:
        with open(config_file, "r", encoding="utf-8") as f:
            return json.load(f)
    except Exception as e:
        logger.error(f"Erro ao carregar configuração: {str(e)}")
        return {}


def _save_config(config: Dict) -> None:
    """Salva a configuração no arquivo"""
    config_file = _get_config_file()
    try:
        with open(config_file, "w", encoding="utf-8") as f:
            json.dump(config, f, indent=2)
    except Exception as e:
        logger.error(f"Erro ao salvar configuração: {str(e)}")
        raise


@dataclass(frozen=True)
class AdapterSettings:
    """Endpoints e credenciais resolvidos para uma execução"""

    captioner_url: Optional[str] = None
    captioner_cmd: Optional[str] = None
    chat_url: Optional[str] = None
    chat_cmd: Optional[str] = None
    chat_api_key: Optional[str] = None
    chat_base_url: Optional[str] = None
    chat_model: Optional[str] = None
    style_url: Optional[str] = None
    style_cmd: Optional[str] = None
    codec_template: str = CODEC_TEMPLATE_PADRAO
    adapter_timeout: float = 60.0


def load_adapter_settings(config: Optional[Dict] = None) -> AdapterSettings:
    """
    Resolve as configurações dos adaptadores.

    Prioridade: arquivo de configuração, depois variáveis de ambiente.

    Args:
        config: Configuração já carregada (padrão: lê ~/.diretor/config.json)

    Returns:
        AdapterSettings preenchido
    """
    load_dotenv()
    if config is None:
        config = _load_config()

    valores: Dict[str, object] = {}
    for chave, variavel in CHAVES_AMBIENTE.items():
        valor = config.get(chave) or os.getenv(variavel)
        if valor:
            valores[chave] = valor

    if "adapter_timeout" in valores:
        try:
            valores["adapter_timeout"] = float(valores["adapter_timeout"])  # type: ignore[arg-type]
        except ValueError:
            logger.warning(f"Timeout de adaptador inválido: {valores['adapter_timeout']}")
            del valores["adapter_timeout"]

    return AdapterSettings(**valores)  # type: ignore[arg-type]


def configure(**valores: Optional[str]) -> Dict:
    """
    Atualiza o arquivo de configuração com os valores informados.

    Valores vazios removem a chave correspondente.
    """
    config = _load_config()
    for chave, valor in valores.items():
        if chave not in CHAVES_AMBIENTE:
            raise ValueError(f"Chave de configuração desconhecida: {chave}")
        if valor is None:
            continue
        if valor == "":
            config.pop(chave, None)
        else:
            config[chave] = valor
    _save_config(config)
    logger.info("Configuração salva")
    return config
