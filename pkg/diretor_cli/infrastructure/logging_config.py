#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Configuração de logging para a CLI do Diretor
"""

import os
import logging
from contextlib import contextmanager
from logging.handlers import RotatingFileHandler
from typing import Iterator, List

# Diretório base (pode ser sobrescrito por DIRETOR_HOME, útil nos testes)
DIRETOR_HOME = os.path.expanduser(os.getenv("DIRETOR_HOME", "~/.diretor"))

# Diretório de logs
LOG_DIR = os.path.join(DIRETOR_HOME, "logs")
LOG_FILE = os.path.join(LOG_DIR, "diretor.log")

# Logger pai de todos os módulos do pacote
LOGGER_RAIZ = "diretor"

# Formatos
CONSOLE_FORMAT = "%(levelname)s: %(message)s"
FILE_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


def configurar_logging(nivel_console=logging.INFO, nivel_arquivo=logging.DEBUG):
    """
    Configura o logger para a aplicação.

    Args:
        nivel_console: Nível de logging para o console (padrão: INFO)
        nivel_arquivo: Nível de logging para o arquivo (padrão: DEBUG)
    """
    os.makedirs(LOG_DIR, exist_ok=True)

    logger = logging.getLogger()
    logger.setLevel(logging.DEBUG)  # Captura tudo, depois filtra nos handlers

    # Limpar handlers existentes para evitar duplicação
    logger.handlers = []

    console_handler = logging.StreamHandler()
    console_handler.setLevel(nivel_console)
    console_handler.setFormatter(logging.Formatter(CONSOLE_FORMAT))

    file_handler = RotatingFileHandler(
        LOG_FILE,
        maxBytes=10 * 1024 * 1024,  # 10MB
        backupCount=5,
        encoding="utf-8",
    )
    file_handler.setLevel(nivel_arquivo)
    file_handler.setFormatter(logging.Formatter(FILE_FORMAT))

    logger.addHandler(console_handler)
    logger.addHandler(file_handler)

    configurar_loggers_bibliotecas()

    logger.debug(f"Sistema de logging configurado. Arquivo de log: {LOG_FILE}")
    return logger


def configurar_loggers_bibliotecas():
    """
    Configura loggers de bibliotecas externas para evitar poluição da saída.
    """
    for nome in (
        "openai",
        "openai._base_client",
        "httpx",
        "httpcore",
        "urllib3",
        "requests",
        "numba",
        "librosa",
        "PIL",
    ):
        logging.getLogger(nome).setLevel(logging.WARNING)


def obter_logger(nome: str) -> logging.Logger:
    """
    Obtém um logger configurado para um módulo específico.

    Os nomes são colocados sob o logger "diretor" para que o coletor de
    avisos de uma execução enxergue todos os módulos.

    Args:
        nome: Nome do módulo/componente

    Returns:
        Logger configurado
    """
    if nome != LOGGER_RAIZ and not nome.startswith(LOGGER_RAIZ + "."):
        nome = f"{LOGGER_RAIZ}.{nome}"
    return logging.getLogger(nome)


def definir_nivel_log(nivel):
    """
    Define o nível de log para o logger raiz.

    Args:
        nivel: Nível de log (logging.DEBUG, logging.INFO, etc.)
    """
    logging.getLogger().setLevel(nivel)

    # Atualiza também o console handler para o mesmo nível
    for handler in logging.getLogger().handlers:
        if isinstance(handler, logging.StreamHandler) and not isinstance(
            handler, RotatingFileHandler
        ):
            handler.setLevel(nivel)

    configurar_loggers_bibliotecas()
    return True


class ColetorDeAvisos(logging.Handler):
    """Handler que guarda cada aviso emitido durante uma execução"""

    def __init__(self):
        super().__init__(level=logging.WARNING)
        self.avisos: List[str] = []

    def emit(self, record: logging.LogRecord) -> None:
        if record.levelno == logging.WARNING:
            self.avisos.append(record.getMessage())


@contextmanager
def coletar_avisos() -> Iterator[ColetorDeAvisos]:
    """
    Captura os avisos (nível WARNING) de todos os loggers do pacote.

    Exemplo:
        with coletar_avisos() as coletor:
            executar_pipeline()
        relatorio.warnings = coletor.avisos
    """
    raiz = logging.getLogger(LOGGER_RAIZ)
    coletor = ColetorDeAvisos()
    raiz.addHandler(coletor)
    nivel_anterior = raiz.level
    if raiz.getEffectiveLevel() > logging.WARNING:
        raiz.setLevel(logging.WARNING)
    try:
        yield coletor
    finally:
        raiz.removeHandler(coletor)
        raiz.setLevel(nivel_anterior)
