#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Comando para configurar os adaptadores do Diretor
"""

from typing import Dict, Optional

from rich import print
from rich.prompt import Prompt

from diretor_cli.infrastructure.config import _load_config
from diretor_cli.infrastructure.config import configure as salvar_configuracao

# Chave -> (pergunta, é segredo)
PERGUNTAS = {
    "captioner_url": ("🖼️  Endpoint HTTP do legendador (vazio para usar comando)", False),
    "captioner_cmd": ("🖼️  Comando do legendador (opcional)", False),
    "chat_api_key": ("🔑 Chave de API do modelo de chat (compatível com OpenAI)", True),
    "chat_base_url": ("🌐 URL base da API de chat (opcional)", False),
    "chat_model": ("🤖 Modelo de chat", False),
    "chat_url": ("💬 Endpoint HTTP do modelo de chat (sem chave de API)", False),
    "style_url": ("🎨 Endpoint HTTP do estilo externo (opcional)", False),
}


def configure(**valores: Optional[str]) -> Dict:
    """
    Configura os adaptadores, perguntando pelos valores não informados.

    Args:
        **valores: Chaves de PERGUNTAS já conhecidas (linha de comando)
    """
    atual = _load_config()
    respostas: Dict[str, Optional[str]] = {}
    for chave, (pergunta, segredo) in PERGUNTAS.items():
        valor = valores.get(chave)
        if valor is None:
            valor = Prompt.ask(pergunta, default=atual.get(chave, ""), password=segredo)
        respostas[chave] = valor

    try:
        config = salvar_configuracao(**respostas)
        print("\n✅ Configuração salva com sucesso!")
        return config
    except Exception as e:
        print(f"\n❌ Erro ao salvar configuração: {str(e)}")
        return atual
