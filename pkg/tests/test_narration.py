import json
import logging
from pathlib import Path
from typing import List, Tuple

import numpy as np
import pytest

from diretor_cli.application.services.narration_service import (
    build_prompt,
    describe_assets,
    format_descriptions,
    parse_plan,
    plan_story,
    random_plan,
    render_plan_text,
)
from diretor_cli.domain import prompts
from diretor_cli.domain.errors import AdapterError, NarrationError, PlanParseError
from diretor_cli.domain.interfaces.adapters import CaptionerAdapter, CaptionRequest, ChatAdapter
from diretor_cli.domain.models.assets import AssetKind, MediaAsset, UserRequirements
from diretor_cli.domain.models.keyframes import VideoSegment
from diretor_cli.domain.models.narration import AssetDescription, DirectorPlan
from diretor_cli.infrastructure.providers.mock_providers import MockCaptioner, MockChat

GOLDEN = Path(__file__).parent / "golden"

VOCABULARIO = [
    "sun",
    "sea",
    "walk",
    "bright",
    "morning",
    "river",
    "quiet",
    "friends",
    "journey",
    "light",
    "home",
    "city",
]

DESCRICOES = [
    AssetDescription(1, AssetKind.IMAGE, ("a dog running on the sand",)),
    AssetDescription(2, AssetKind.IMAGE, ("a red umbrella next to a towel",)),
    AssetDescription(
        3,
        AssetKind.VIDEO,
        ("waves breaking at sunset", "people walking along the shore"),
    ),
]

REQUISITOS = UserRequirements(
    theme="summer holiday",
    time="August 2023",
    location="the beach",
    requirement="keep it light",
)


def _assets() -> List[MediaAsset]:
    return [
        MediaAsset(1, AssetKind.IMAGE, Path("a.png"), 40, 30),
        MediaAsset(2, AssetKind.IMAGE, Path("b.png"), 40, 30),
        MediaAsset(
            3, AssetKind.VIDEO, Path("v"), 32, 32, duration=4.0, frame_rate=5.0, frame_count=20
        ),
    ]


def _loader(asset: MediaAsset) -> List[np.ndarray]:
    """Cada quadro carrega o próprio índice no valor dos pixels"""
    total = 20 if asset.is_video else 1
    return [np.full((4, 4, 3), i, dtype=np.uint8) for i in range(total)]


SEGMENTOS = {3: [VideoSegment(0, 9, 4), VideoSegment(10, 19, 14)]}


class _RecordingCaptioner(CaptionerAdapter):
    def __init__(self, falhar_em: Tuple[int, ...] = (), vazio_em: Tuple[int, ...] = ()):
        self.falhar_em = falhar_em
        self.vazio_em = vazio_em
        self.pedidos: List[CaptionRequest] = []

    def health_check(self):
        return True, "ok"

    def describe(self, request: CaptionRequest) -> str:
        self.pedidos.append(request)
        if request.asset_id in self.falhar_em:
            raise AdapterError("tempo esgotado")
        if request.asset_id in self.vazio_em:
            return "   "
        return f"quadro {int(request.image[0, 0, 0])}\n de {request.asset_id}"


class _BrokenChat(ChatAdapter):
    def health_check(self):
        return False, "fora do ar"

    def complete(self, prompt: str) -> str:
        raise AdapterError("HTTP 503", status=503)


# Descrições


def test_describe_one_line_per_image_and_keyframe() -> None:
    captioner = MockCaptioner(
        template="img {asset_id}", video_template="vid {asset_id} kf {keyframe}"
    )

    resultado = describe_assets(_assets(), SEGMENTOS, captioner, _loader)

    assert [d.lines for d in resultado.descriptions] == [
        ("img 1",),
        ("img 2",),
        ("vid 3 kf 1", "vid 3 kf 2"),
    ]
    assert resultado.warnings == ()


def test_describe_sends_keyframes_and_question() -> None:
    captioner = _RecordingCaptioner()

    resultado = describe_assets(_assets(), SEGMENTOS, captioner, _loader)

    video = [p for p in captioner.pedidos if p.asset_id == 3]
    assert sorted(int(p.image[0, 0, 0]) for p in video) == [4, 14]
    assert all(p.question == prompts.CAPTION_QUESTION for p in captioner.pedidos)
    # Quebras de linha da resposta viram espaço
    assert resultado.descriptions[2].lines == ("quadro 4 de 3", "quadro 14 de 3")


def test_captioner_failure_uses_placeholder_and_warns(caplog) -> None:
    captioner = _RecordingCaptioner(falhar_em=(2,), vazio_em=(1,))

    with caplog.at_level(logging.WARNING, logger="diretor"):
        resultado = describe_assets(_assets(), SEGMENTOS, captioner, _loader)

    assert resultado.descriptions[0].lines == (prompts.PLACEHOLDER_DESCRIPTION,)
    assert resultado.descriptions[1].lines == (prompts.PLACEHOLDER_DESCRIPTION,)
    assert len(resultado.warnings) == 2
    assert any("Image 2" in aviso and "tempo esgotado" in aviso for aviso in resultado.warnings)
    assert "Image 1" in caplog.text


def test_video_without_segments_is_an_error() -> None:
    with pytest.raises(NarrationError):
        describe_assets(_assets(), {}, MockCaptioner(), _loader)


def test_format_descriptions_orders_by_id() -> None:
    texto = format_descriptions(list(reversed(DESCRICOES)))

    assert texto.splitlines() == [
        "Image 1: a dog running on the sand",
        "Image 2: a red umbrella next to a towel",
        "Video 3: key frame 1: waves breaking at sunset",
        "Video 3: key frame 2: people walking along the shore",
    ]


# Prompt


def test_prompt_matches_golden_file() -> None:
    esperado = (GOLDEN / "director_prompt.txt").read_text(encoding="utf-8").rstrip("\n")

    assert build_prompt(REQUISITOS, DESCRICOES) == esperado


def test_time_sentence_has_no_trailing_period() -> None:
    prompt = build_prompt(REQUISITOS, DESCRICOES)

    assert "\nThey were captured at August 2023\nI will provide descriptions" in prompt


def test_prompt_omits_sentences_with_empty_fields() -> None:
    prompt = build_prompt(UserRequirements(), DESCRICOES)

    assert "to create a video. Additionally" in prompt
    assert "theme" not in prompt.split("\n\n")[0]
    assert "taken at" not in prompt
    assert "captured at" not in prompt
    assert "following requirements" not in prompt
    assert "(2) Write a script according to the adjusted material sequence. It should be" in prompt


def test_prompt_keeps_braces_in_user_text() -> None:
    prompt = build_prompt(UserRequirements(theme="{festa}"), DESCRICOES)

    assert "centered around the theme {festa}." in prompt


def test_prompt_requires_descriptions() -> None:
    with pytest.raises(ValueError):
        build_prompt(REQUISITOS, [])


# Chamada ao modelo


def test_plan_story_returns_fixture_and_logs_exchange(tmp_path: Path) -> None:
    resposta = GOLDEN / "plan_response.txt"
    log = tmp_path / "adapter_log.jsonl"

    texto = plan_story("meu prompt", MockChat(fixture=resposta), log)

    assert texto == resposta.read_text(encoding="utf-8")
    registro = json.loads(log.read_text(encoding="utf-8").splitlines()[0])
    assert registro == {"prompt": "meu prompt", "response": texto}


def test_plan_story_logs_and_reraises_adapter_errors(tmp_path: Path) -> None:
    log = tmp_path / "adapter_log.jsonl"

    with pytest.raises(AdapterError) as erro:
        plan_story("meu prompt", _BrokenChat(), log)

    assert erro.value.status == 503
    registro = json.loads(log.read_text(encoding="utf-8"))
    assert registro["response"] is None
    assert "503" in registro["error"]


def test_plan_story_rejects_empty_response(tmp_path: Path) -> None:
    vazio = tmp_path / "vazio.txt"
    vazio.write_text("  \n", encoding="utf-8")

    with pytest.raises(PlanParseError, match="plano vazio"):
        plan_story("meu prompt", MockChat(fixture=vazio))


# Leitura do plano


def test_parse_decorated_response() -> None:
    resposta = (GOLDEN / "plan_response.txt").read_text(encoding="utf-8")

    plano = parse_plan(resposta, [1, 2, 3])

    assert plano.order == (2, 3, 1)
    assert plano.title == "Sunny Days by the Sea"
    assert plano.captions == {
        1: "Our dog races across the warm sand.",
        2: "A red umbrella marks our spot for the day.",
        3: "Waves roll in as the sun dips low, painting the shore in gold.",
    }
    assert plano.closing == "Until the next summer"
    assert plano.music_name == "Summer Breeze"
    assert plano.warnings == ()


def test_parse_requires_order_and_captions() -> None:
    with pytest.raises(PlanParseError, match="Order"):
        parse_plan("Title: x\nCaptions:\n1: a\n", [1])
    with pytest.raises(PlanParseError, match="Captions"):
        parse_plan("Order: 1\nTitle: x\n", [1])


def test_order_is_repaired_with_warning(caplog) -> None:
    with caplog.at_level(logging.WARNING, logger="diretor"):
        plano = parse_plan("Order: 3, 3, 9, 1\nCaptions:\n1: a\n2: b\n3: c\n", [1, 2, 3])

    assert plano.order == (3, 1, 2)
    assert any("Ordem reparada" in aviso for aviso in plano.warnings)
    assert "Ordem reparada" in caplog.text


def test_mutated_orders_always_become_permutations() -> None:
    rng = np.random.default_rng(7)
    esperados = [1, 2, 3, 4]
    for _ in range(100):
        bruta = rng.integers(0, 7, size=int(rng.integers(0, 9)))
        resposta = f"Order: {', '.join(str(i) for i in bruta)}\nCaptions:\n1: a\n"

        plano = parse_plan(resposta, esperados)

        assert sorted(plano.order) == esperados


def test_missing_and_unknown_captions_warn() -> None:
    plano = parse_plan("Order: 1, 2\nCaptions:\n1: ola\n9: perdida\n", [1, 2])

    assert plano.captions == {1: "ola", 2: ""}
    assert any("sem legenda" in aviso for aviso in plano.warnings)
    assert any("inexistentes" in aviso for aviso in plano.warnings)


def test_word_limits_only_warn() -> None:
    longa = " ".join(["word"] * 25)
    resposta = (
        "Order: 1\nTitle: one two three four five six\n"
        f"Captions:\n1: {longa}\nClosing: ok\nMusic Recommendation: Song\n"
    )

    plano = parse_plan(resposta, [1])

    assert plano.captions[1] == longa
    assert any("Título" in aviso for aviso in plano.warnings)
    assert any("Legendas com mais de 20" in aviso for aviso in plano.warnings)


def test_rendered_plans_parse_back() -> None:
    rng = np.random.default_rng(11)

    def frase(minimo: int, maximo: int) -> str:
        n = int(rng.integers(minimo, maximo + 1))
        return " ".join(VOCABULARIO[int(i)] for i in rng.integers(0, len(VOCABULARIO), n))

    for _ in range(50):
        ids = list(range(1, int(rng.integers(1, 7)) + 1))
        plano = DirectorPlan(
            order=tuple(int(i) for i in rng.permutation(ids)),
            title=frase(1, 5),
            captions={i: frase(1, 12) for i in ids},
            closing=frase(1, 8),
            music_name=frase(1, 4),
        )

        lido = parse_plan(render_plan_text(plano), ids)

        assert lido.order == plano.order
        assert lido.title == plano.title
        assert lido.captions == plano.captions
        assert lido.closing == plano.closing
        assert lido.music_name == plano.music_name
        assert lido.warnings == ()


def test_mock_chat_answers_the_director_prompt() -> None:
    prompt = build_prompt(REQUISITOS, DESCRICOES)

    plano = parse_plan(MockChat().complete(prompt), [1, 2, 3])

    assert plano.order == (1, 2, 3)
    assert plano.title == "Our Summer Holiday"
    assert plano.captions[3] == "Moment 3: waves breaking at sunset"
    assert plano.music_name == "click track"


def test_random_plan_is_seeded_permutation() -> None:
    primeiro = random_plan(DESCRICOES, seed=5)
    segundo = random_plan(DESCRICOES, seed=5)

    assert primeiro == segundo
    assert sorted(primeiro.order) == [1, 2, 3]
    assert primeiro.captions[3] == "waves breaking at sunset"
    assert primeiro.title == ""
    orders = {random_plan(DESCRICOES, seed=s).order for s in range(20)}
    assert len(orders) > 1
