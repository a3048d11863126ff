#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Transportes do protocolo de adaptadores

Cada chamada troca um registro JSON de pedido por um registro JSON de
resposta ({"text": ...} ou {"frame": ...}, com "error" opcional), via
HTTP POST ou via stdin/stdout de um subprocesso (uma linha por registro).
"""

import base64
import json
import queue
import shlex
import subprocess
import threading
from abc import ABC, abstractmethod
from typing import Any, Dict

import numpy as np
import requests

from diretor_cli.domain.errors import AdapterError
from diretor_cli.infrastructure.logging_config import obter_logger
from diretor_cli.infrastructure.media.frame_io import encode_png

logger = obter_logger("transport")


def run_command_with_timeout(cmd: str, stdin_text: str, timeout: float = 60) -> Dict[str, Any]:
    """
    Executa um comando com timeout usando threads

    Args:
        cmd: Comando a ser executado
        stdin_text: Texto enviado na entrada padrão
        timeout: Tempo máximo de execução em segundos

    Returns:
        {"stdout", "stderr"} ou {"error", ...}
    """
    result_queue: "queue.Queue[Dict[str, Any]]" = queue.Queue()

    def target():
        try:
            process = subprocess.Popen(
                shlex.split(cmd),
                stdin=subprocess.PIPE,
                stdout=subprocess.PIPE,
                stderr=subprocess.PIPE,
                text=True,
            )
            stdout, stderr = process.communicate(stdin_text)
            result_queue.put(
                {"returncode": process.returncode, "stdout": stdout, "stderr": stderr}
            )
        except Exception as e:
            result_queue.put({"error": str(e)})

    thread = threading.Thread(target=target)
    thread.daemon = True
    thread.start()

    try:
        result = result_queue.get(timeout=timeout)
    except queue.Empty:
        return {"error": f"Timeout: o comando excedeu {timeout} segundos", "command": cmd}

    if "error" in result:
        return {"error": result["error"]}
    if result["returncode"] != 0:
        return {
            "error": f"Comando falhou com código {result['returncode']}",
            "stderr": result["stderr"],
        }
    return {"stdout": result["stdout"], "stderr": result["stderr"]}


class AdapterTransport(ABC):
    """Troca um registro de pedido por um registro de resposta"""

    @abstractmethod
    def exchange(self, record: Dict[str, Any]) -> Dict[str, Any]:
        pass

    @abstractmethod
    def describe(self) -> str:
        pass


class HttpTransport(AdapterTransport):
    """POST de um registro JSON por chamada"""

    def __init__(self, url: str, timeout: float = 60, headers: Dict[str, str] | None = None):
        self.url = url
        self.timeout = timeout
        self.headers = headers or {}

    def exchange(self, record: Dict[str, Any]) -> Dict[str, Any]:
        try:
            resposta = requests.post(
                self.url, json=record, headers=self.headers, timeout=self.timeout
            )
        except requests.RequestException as e:
            logger.error(f"Erro de conexão com {self.url}: {e}")
            raise AdapterError(f"Adaptador inacessível em {self.url}: {e}") from e

        if resposta.status_code >= 400:
            logger.error(f"Adaptador {self.url} respondeu HTTP {resposta.status_code}")
            raise AdapterError(
                f"Adaptador respondeu HTTP {resposta.status_code}", status=resposta.status_code
            )
        return _decode_record(resposta.text)

    def describe(self) -> str:
        return f"http {self.url}"


class SubprocessTransport(AdapterTransport):
    """Uma linha JSON na entrada padrão, uma linha JSON na saída"""

    def __init__(self, command: str, timeout: float = 60):
        self.command = command
        self.timeout = timeout

    def exchange(self, record: Dict[str, Any]) -> Dict[str, Any]:
        logger.debug(f"Executando comando: {self.command}")
        resultado = run_command_with_timeout(
            self.command, json.dumps(record) + "\n", timeout=self.timeout
        )
        if "error" in resultado:
            logger.error(f"Erro na execução do comando: {resultado['error']}")
            raise AdapterError(resultado["error"])

        linhas = [linha for linha in resultado["stdout"].splitlines() if linha.strip()]
        if not linhas:
            raise AdapterError("Subprocesso não produziu resposta")
        return _decode_record(linhas[-1])

    def describe(self) -> str:
        return f"subprocess {self.command}"


def _decode_record(texto: str) -> Dict[str, Any]:
    try:
        registro = json.loads(texto)
    except json.JSONDecodeError as e:
        raise AdapterError(f"Resposta do adaptador não é um JSON válido: {texto[:200]}") from e
    if not isinstance(registro, dict):
        raise AdapterError("Resposta do adaptador deve ser um objeto JSON")
    if registro.get("error"):
        raise AdapterError(f"Adaptador retornou erro: {registro['error']}")
    return registro


# Codificação de quadros


def encode_png_base64(frame: np.ndarray) -> str:
    return base64.b64encode(encode_png(frame)).decode("ascii")


def encode_raw_frame(frame: np.ndarray) -> Dict[str, Any]:
    altura, largura = frame.shape[:2]
    return {
        "frame": base64.b64encode(np.ascontiguousarray(frame).tobytes()).decode("ascii"),
        "width": largura,
        "height": altura,
    }


def decode_raw_frame(data: str, width: int, height: int) -> np.ndarray:
    bruto = base64.b64decode(data)
    if len(bruto) != width * height * 3:
        raise AdapterError(
            f"Quadro estilizado com {len(bruto)} bytes; esperado {width * height * 3}"
        )
    return np.frombuffer(bruto, dtype=np.uint8).reshape(height, width, 3).copy()
