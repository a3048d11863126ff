#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Fábrica para criar os adaptadores de legenda, chat e estilo
"""

from pathlib import Path
from typing import Optional

from diretor_cli.domain.errors import AdapterError
from diretor_cli.domain.interfaces.adapters import (
    CaptionerAdapter,
    ChatAdapter,
    FrameStyleAdapter,
)
from diretor_cli.domain.models.assets import StyleKind
from diretor_cli.infrastructure.config import AdapterSettings
from diretor_cli.infrastructure.logging_config import obter_logger
from diretor_cli.infrastructure.providers.mock_providers import MockCaptioner, MockChat
from diretor_cli.infrastructure.providers.openai_provider import OpenAIChatProvider
from diretor_cli.infrastructure.providers.remote_providers import (
    RemoteCaptioner,
    RemoteChat,
    RemoteStyle,
)
from diretor_cli.infrastructure.providers.style_providers import (
    GrayStyle,
    IdentityStyle,
    SepiaStyle,
)
from diretor_cli.infrastructure.providers.transport import (
    AdapterTransport,
    HttpTransport,
    SubprocessTransport,
)

logger = obter_logger("provider_factory")


def _transport(
    url: Optional[str], cmd: Optional[str], timeout: float
) -> Optional[AdapterTransport]:
    """HTTP tem prioridade sobre subprocesso quando ambos estão configurados"""
    if url:
        return HttpTransport(url, timeout=timeout)
    if cmd:
        return SubprocessTransport(cmd, timeout=timeout)
    return None


def get_captioner(settings: AdapterSettings, mock: bool = False) -> CaptionerAdapter:
    """Obtém o legendador configurado (ou o simulado)"""
    if mock:
        return MockCaptioner()
    transporte = _transport(
        settings.captioner_url, settings.captioner_cmd, settings.adapter_timeout
    )
    if transporte is None:
        raise AdapterError(
            "Legendador não configurado. Defina DIRETOR_CAPTIONER_URL ou "
            "DIRETOR_CAPTIONER_CMD, ou use --mock-adapters."
        )
    logger.debug(f"Legendador: {transporte.describe()}")
    return RemoteCaptioner(transporte)


def get_chat(
    settings: AdapterSettings,
    mock: bool = False,
    fixture: Optional[Path] = None,
    music_name: str = "click track",
) -> ChatAdapter:
    """
    Obtém o modelo de chat.

    Prioridade: chave de API (cliente OpenAI), depois endpoint HTTP, depois comando.
    """
    if mock or fixture is not None:
        return MockChat(fixture=fixture, music_name=music_name)
    if settings.chat_api_key:
        return OpenAIChatProvider(
            api_key=settings.chat_api_key,
            model=settings.chat_model,
            base_url=settings.chat_base_url,
            timeout=settings.adapter_timeout,
        )
    transporte = _transport(settings.chat_url, settings.chat_cmd, settings.adapter_timeout)
    if transporte is None:
        raise AdapterError(
            "Modelo de chat não configurado. Defina DIRETOR_CHAT_API_KEY, "
            "DIRETOR_CHAT_URL ou DIRETOR_CHAT_CMD, ou use --mock-adapters."
        )
    logger.debug(f"Modelo de chat: {transporte.describe()}")
    return RemoteChat(transporte)


def get_style(
    kind: StyleKind, settings: Optional[AdapterSettings] = None, model: str = ""
) -> FrameStyleAdapter:
    """Obtém o estágio de estilo; o externo exige endpoint ou comando configurado"""
    if kind is StyleKind.GRAY:
        return GrayStyle()
    if kind is StyleKind.SEPIA:
        return SepiaStyle()
    if kind is StyleKind.EXTERNAL:
        settings = settings or AdapterSettings()
        transporte = _transport(settings.style_url, settings.style_cmd, settings.adapter_timeout)
        if transporte is None:
            raise AdapterError(
                "Estilo externo sem endpoint. Defina DIRETOR_STYLE_URL ou DIRETOR_STYLE_CMD."
            )
        return RemoteStyle(transporte, model=model)
    return IdentityStyle()
