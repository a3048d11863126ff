#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Adaptadores que falam o protocolo de registros (HTTP ou subprocesso)
"""

from typing import Tuple

import numpy as np

from diretor_cli.domain.errors import AdapterError
from diretor_cli.domain.interfaces.adapters import (
    CaptionerAdapter,
    CaptionRequest,
    ChatAdapter,
    FrameStyleAdapter,
)
from diretor_cli.infrastructure.logging_config import obter_logger
from diretor_cli.infrastructure.providers.transport import (
    AdapterTransport,
    HttpTransport,
    decode_raw_frame,
    encode_png_base64,
    encode_raw_frame,
)

logger = obter_logger("remote_providers")


def _texto(registro: dict) -> str:
    texto = registro.get("text")
    if not isinstance(texto, str):
        raise AdapterError("Resposta do adaptador sem campo 'text'")
    return texto


class RemoteCaptioner(CaptionerAdapter):
    """Legendador externo: envia a pergunta e o quadro em PNG base64"""

    def __init__(self, transport: AdapterTransport):
        self.transport = transport

    def health_check(self) -> Tuple[bool, str]:
        return True, f"Legendador configurado ({self.transport.describe()})"

    def describe(self, request: CaptionRequest) -> str:
        registro = self.transport.exchange(
            {"question": request.question, "image": encode_png_base64(request.image)}
        )
        return _texto(registro)


class RemoteChat(ChatAdapter):
    """Modelo de linguagem externo: envia o prompt completo"""

    def __init__(self, transport: AdapterTransport):
        self.transport = transport

    def health_check(self) -> Tuple[bool, str]:
        return True, f"Modelo de chat configurado ({self.transport.describe()})"

    def complete(self, prompt: str) -> str:
        return _texto(self.transport.exchange({"prompt": prompt}))


class RemoteStyle(FrameStyleAdapter):
    """Estilização externa quadro a quadro (RGB bruto em base64)"""

    def __init__(self, transport: AdapterTransport, model: str = ""):
        self.transport = transport
        self.model = model
        # HTTP aceita pedidos em paralelo; subprocesso atende um por vez
        self.max_concurrency = 4 if isinstance(transport, HttpTransport) else 1

    def health_check(self) -> Tuple[bool, str]:
        return True, f"Estilo externo configurado ({self.transport.describe()})"

    def stylize(self, frame: np.ndarray) -> np.ndarray:
        pedido = encode_raw_frame(frame)
        if self.model:
            pedido["style"] = self.model
        registro = self.transport.exchange(pedido)
        dados = registro.get("frame")
        if not isinstance(dados, str):
            raise AdapterError("Resposta de estilo sem campo 'frame'")
        altura, largura = frame.shape[:2]
        return decode_raw_frame(dados, largura, altura)
