#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Adaptadores determinísticos para testes e execuções sem rede
"""

import re
from pathlib import Path
from typing import Dict, Optional, Tuple

from diretor_cli.domain.interfaces.adapters import (
    CaptionerAdapter,
    CaptionRequest,
    ChatAdapter,
)
from diretor_cli.domain.models.narration import DirectorPlan
from diretor_cli.infrastructure.logging_config import obter_logger

logger = obter_logger("mock_providers")

_LINHA_ENTRADA = re.compile(r"^(Image|Video) (\d+): (?:key frame \d+: )?(.*)$")
_TEMA = re.compile(r"centered around the theme (.+?)\.(?:\s|$)")


class MockCaptioner(CaptionerAdapter):
    """Ecoa um modelo de texto com o id do material (e do quadro-chave)"""

    def __init__(self, template: str = "scene-{asset_id}", video_template: Optional[str] = None):
        self.template = template
        self.video_template = video_template or template

    def health_check(self) -> Tuple[bool, str]:
        return True, "Legendador simulado"

    def describe(self, request: CaptionRequest) -> str:
        modelo = self.template if request.keyframe is None else self.video_template
        return modelo.format(asset_id=request.asset_id, keyframe=request.keyframe or 0)


class MockChat(ChatAdapter):
    """
    Devolve o conteúdo de um arquivo de fixture ou, sem fixture, monta um
    plano bem formado a partir do bloco de descrições do prompt.
    """

    def __init__(self, fixture: Optional[Path] = None, music_name: str = "click track"):
        self.fixture = fixture
        self.music_name = music_name

    def health_check(self) -> Tuple[bool, str]:
        if self.fixture and not self.fixture.exists():
            return False, f"Fixture não encontrada: {self.fixture}"
        return True, "Modelo de chat simulado"

    def complete(self, prompt: str) -> str:
        if self.fixture is not None:
            return self.fixture.read_text(encoding="utf-8")
        return self._synthesize(prompt)

    def _synthesize(self, prompt: str) -> str:
        from diretor_cli.application.services.narration_service import render_plan_text

        descricoes: Dict[int, str] = {}
        for linha in prompt.splitlines():
            achado = _LINHA_ENTRADA.match(linha.strip())
            if achado:
                descricoes.setdefault(int(achado.group(2)), achado.group(3).strip())

        tema = _TEMA.search(prompt)
        titulo = "A Story in Pictures"
        if tema:
            palavras = tema.group(1).split()[:3]
            titulo = " ".join(["Our"] + palavras).title()

        ordem = tuple(sorted(descricoes))
        legendas = {
            i: " ".join(f"Moment {n}: {descricoes[i]}".split()[:20])
            for n, i in enumerate(ordem, start=1)
        }
        plano = DirectorPlan(
            order=ordem,
            title=titulo,
            captions=legendas,
            closing="Thank you for watching",
            music_name=self.music_name,
        )
        return render_plan_text(plano)
