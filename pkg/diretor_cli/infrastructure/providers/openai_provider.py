#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Provedor de chat compatível com a API da OpenAI
"""

import time
from typing import Optional, Tuple

from openai import OpenAI

from diretor_cli.domain.errors import AdapterError
from diretor_cli.domain.interfaces.adapters import ChatAdapter
from diretor_cli.infrastructure.logging_config import (
    configurar_loggers_bibliotecas,
    obter_logger,
)

logger = obter_logger("openai_provider")

# Garantir que os loggers de bibliotecas estão configurados
configurar_loggers_bibliotecas()


class OpenAIChatProvider(ChatAdapter):
    """Planejador de história servido por um endpoint /chat/completions"""

    def __init__(
        self,
        api_key: str,
        model: Optional[str] = None,
        base_url: Optional[str] = None,
        temperature: float = 0.7,
        timeout: float = 60,
    ):
        if not api_key:
            raise ValueError(
                "API key não encontrada. Defina DIRETOR_CHAT_API_KEY no .env ou "
                "configure com 'diretor configure'."
            )
        self.model = model or "gpt-3.5-turbo"
        self.temperature = temperature
        self.client = OpenAI(api_key=api_key, base_url=base_url, timeout=timeout)

    def health_check(self) -> Tuple[bool, str]:
        """Verifica apenas se temos uma chave configurada"""
        return True, f"Chave API configurada (modelo {self.model})"

    def complete(self, prompt: str) -> str:
        start_time = time.time()
        try:
            response = self.client.chat.completions.create(  # type: ignore
                model=self.model,
                messages=[{"role": "user", "content": prompt}],
                temperature=self.temperature,
            )
        except Exception as e:
            logger.error(f"Erro na chamada ao modelo de chat: {e}")
            raise AdapterError(
                f"Modelo de chat inacessível: {e}", status=getattr(e, "status_code", None)
            ) from e

        logger.debug(f"Tempo de resposta da API: {time.time() - start_time:.2f} segundos")
        return response.choices[0].message.content or ""
