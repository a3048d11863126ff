import json
from pathlib import Path

import numpy as np
import pytest
from PIL import Image

from diretor_cli.application.services import pipeline_service
from diretor_cli.application.services.pipeline_service import (
    REPORT_FILE,
    STAGES,
    Ablation,
    ComposeOptions,
    compose,
    resolve_stage,
)
from diretor_cli.domain.errors import AdapterError, DiretorError, MusicError
from diretor_cli.domain.interfaces.adapters import FrameStyleAdapter
from diretor_cli.domain.models.timeline import Timeline
from diretor_cli.infrastructure.config import AdapterSettings

GOLDEN = Path(__file__).parent / "golden"

ARTEFATOS = (
    "manifest.json",
    "keyframes.json",
    "descriptions.json",
    "prompt.txt",
    "response.txt",
    "plan.json",
    "adapter_log.jsonl",
    "music.json",
    "beats.json",
    "timeline.json",
    "timeline.edl",
    REPORT_FILE,
)


def _compose(project: Path, saida: Path, **opcoes):
    opcoes.setdefault("mock_adapters", True)
    opcoes.setdefault("workers", 2)
    return compose(project, saida, ComposeOptions(**opcoes), settings=AdapterSettings())


def _json(caminho: Path) -> dict:
    return json.loads(caminho.read_text(encoding="utf-8"))


def test_full_run_with_mock_adapters(project: Path, tmp_path: Path) -> None:
    saida = tmp_path / "saida"

    relatorio = _compose(project, saida)

    assert relatorio.succeeded
    assert relatorio.completed_stages == list(STAGES)
    for nome in ARTEFATOS:
        assert (saida / nome).exists(), nome
    assert _json(saida / REPORT_FILE)["status"] == "ok"

    assert relatorio.plan["order"] == [1, 2, 3, 4]
    assert relatorio.plan["title"] == "Our Summer Holiday"
    assert relatorio.music["title"] == "click track"
    assert relatorio.music["tier"] == "exact"
    assert relatorio.tempo == pytest.approx(120.0, abs=2.0)

    timeline = Timeline.from_dict(_json(saida / "timeline.json"))
    assert timeline.order == (1, 2, 3, 4)
    assert relatorio.frame_count == round(timeline.total_duration * 10)
    assert len(list((saida / "render" / "frames").glob("frame_*.png"))) == relatorio.frame_count
    meta = _json(saida / "render" / "meta.json")
    assert (meta["width"], meta["height"], meta["fps"]) == (320, 180, 10)


def test_video_keyframes_are_recorded(project: Path, tmp_path: Path) -> None:
    saida = tmp_path / "saida"

    _compose(project, saida, stop_after="describe")

    trechos = _json(saida / "keyframes.json")
    assert [(t["start_frame"], t["end_frame"]) for t in trechos["4"]] == [(0, 9), (10, 19)]
    descricoes = _json(saida / "descriptions.json")["text"].splitlines()
    assert descricoes[-2:] == ["Video 4: key frame 1: scene-4", "Video 4: key frame 2: scene-4"]


def test_runs_are_deterministic(project: Path, tmp_path: Path) -> None:
    a, b = tmp_path / "a", tmp_path / "b"

    _compose(project, a, workers=1)
    _compose(project, b, workers=3)

    for nome in ("plan.json", "beats.json", "timeline.json", "timeline.edl"):
        assert (a / nome).read_bytes() == (b / nome).read_bytes(), nome
    quadros_a = sorted((a / "render" / "frames").iterdir())
    quadros_b = sorted((b / "render" / "frames").iterdir())
    assert len(quadros_a) == len(quadros_b)
    for x, y in zip(quadros_a, quadros_b):
        assert x.read_bytes() == y.read_bytes()


def test_stop_and_resume(project: Path, tmp_path: Path) -> None:
    saida = tmp_path / "saida"

    parcial = _compose(project, saida, stop_after="timeline")

    assert parcial.completed_stages == list(STAGES[:-1])
    assert parcial.frame_count is None
    assert not (saida / "render").exists()

    retomado = _compose(project, saida, resume_from="render")

    assert retomado.succeeded
    assert retomado.completed_stages == list(STAGES)
    assert retomado.frame_count > 0
    assert retomado.segments == parcial.segments


def test_resume_from_parse_reruns_only_the_plan(project: Path, tmp_path: Path) -> None:
    saida = tmp_path / "saida"
    _compose(project, saida, stop_after="plan")

    relatorio = _compose(
        project,
        saida,
        resume_from="parse",
        stop_after="plan",
        chat_fixture=GOLDEN / "plan_response.txt",
    )

    assert relatorio.completed_stages == list(STAGES[:5])
    assert _json(saida / "plan.json")["title"] == "Sunny Days by the Sea"


def test_resume_needs_every_earlier_artifact(project: Path, tmp_path: Path) -> None:
    saida = tmp_path / "saida"
    _compose(project, saida, stop_after="plan")
    (saida / "plan.json").unlink()

    with pytest.raises(DiretorError) as erro:
        _compose(project, saida, resume_from="retrieve", stop_after="retrieve")

    assert erro.value.stage == "plan"
    assert _json(saida / REPORT_FILE)["failed_stage"] == "plan"


def test_stage_names_are_validated() -> None:
    assert resolve_stage("parse") == "plan"
    assert resolve_stage(" Render ") == "render"
    with pytest.raises(ValueError):
        resolve_stage("mixagem")


def test_stop_before_resume_is_rejected(project: Path, tmp_path: Path) -> None:
    with pytest.raises(ValueError):
        _compose(project, tmp_path / "saida", stop_after="describe", resume_from="plan")


def test_missing_artifact_names_the_stage(project: Path, tmp_path: Path) -> None:
    saida = tmp_path / "vazia"

    with pytest.raises(DiretorError, match="Artefato ausente") as erro:
        _compose(project, saida, resume_from="timeline")

    assert erro.value.stage == "load"
    relatorio = _json(saida / REPORT_FILE)
    assert relatorio["status"] == "failed"
    assert relatorio["failed_stage"] == "load"


def test_failure_is_reported_with_its_stage(project: Path, tmp_path: Path) -> None:
    texto = project.read_text(encoding="utf-8")
    sem_musica = project.with_name("sem_musica.manifest")
    sem_musica.write_text(texto.split("[music]")[0], encoding="utf-8")
    saida = tmp_path / "saida"

    with pytest.raises(MusicError) as erro:
        _compose(sem_musica, saida)

    assert erro.value.stage == "retrieve"
    relatorio = _json(saida / REPORT_FILE)
    assert relatorio["failed_stage"] == "retrieve"
    assert relatorio["completed_stages"] == list(STAGES[:5])
    assert relatorio["plan"]["order"] == [1, 2, 3, 4]


class _SickStyle(FrameStyleAdapter):
    def health_check(self):
        return False, "estilo fora do ar"

    def stylize(self, frame: np.ndarray) -> np.ndarray:
        raise AssertionError("não deveria estilizar")


def test_unhealthy_chat_stops_before_planning(project: Path, tmp_path: Path) -> None:
    saida = tmp_path / "saida"

    with pytest.raises(AdapterError, match="Fixture não encontrada") as erro:
        _compose(project, saida, chat_fixture=tmp_path / "sumiu.txt")

    assert erro.value.stage == "plan"
    assert not (saida / "response.txt").exists()
    assert _json(saida / REPORT_FILE)["completed_stages"] == list(STAGES[:4])


def test_unhealthy_style_stops_before_rendering(
    project: Path, tmp_path: Path, monkeypatch
) -> None:
    monkeypatch.setattr(pipeline_service, "get_style", lambda *args: _SickStyle())
    saida = tmp_path / "saida"

    with pytest.raises(AdapterError, match="estilo fora do ar") as erro:
        _compose(project, saida)

    assert erro.value.stage == "render"
    assert not (saida / "render" / "frames").exists()
    assert _json(saida / REPORT_FILE)["failed_stage"] == "render"


def test_io_failure_is_reported_with_its_stage(
    project: Path, tmp_path: Path, monkeypatch
) -> None:
    def disco_cheio(*args):
        raise OSError("No space left on device")

    monkeypatch.setattr(pipeline_service, "render_video", disco_cheio)
    saida = tmp_path / "saida"

    with pytest.raises(DiretorError, match="No space left") as erro:
        _compose(project, saida)

    assert erro.value.stage == "render"
    assert _json(saida / REPORT_FILE)["failed_stage"] == "render"


def test_chat_fixture_is_repaired_and_warned(project: Path, tmp_path: Path) -> None:
    saida = tmp_path / "saida"

    relatorio = _compose(
        project,
        saida,
        chat_fixture=GOLDEN / "plan_response.txt",
        stop_after="plan",
    )

    plano = _json(saida / "plan.json")
    assert plano["order"] == [2, 3, 1, 4]
    assert plano["title"] == "Sunny Days by the Sea"
    assert any("Ordem reparada" in aviso for aviso in relatorio.warnings)
    registro = json.loads((saida / "adapter_log.jsonl").read_text(encoding="utf-8"))
    assert registro["prompt"] == (saida / "prompt.txt").read_text(encoding="utf-8")


def test_no_theme_ablation_drops_the_theme(project: Path, tmp_path: Path) -> None:
    com_tema = tmp_path / "com"
    sem_tema = tmp_path / "sem"

    _compose(project, com_tema, stop_after="plan")
    _compose(project, sem_tema, stop_after="plan", ablation=Ablation.NO_THEME)

    assert "summer holiday" in (com_tema / "prompt.txt").read_text(encoding="utf-8")
    assert "summer holiday" not in (sem_tema / "prompt.txt").read_text(encoding="utf-8")
    assert _json(sem_tema / "plan.json")["title"] == "A Story in Pictures"


def test_no_llm_ablation_uses_a_seeded_random_plan(project: Path, tmp_path: Path) -> None:
    a, b = tmp_path / "a", tmp_path / "b"

    _compose(project, a, stop_after="plan", ablation=Ablation.NO_LLM)
    _compose(project, b, stop_after="plan", ablation=Ablation.NO_LLM)

    plano = _json(a / "plan.json")
    assert sorted(plano["order"]) == [1, 2, 3, 4]
    assert plano["title"] == ""
    assert plano == _json(b / "plan.json")
    assert not (a / "adapter_log.jsonl").exists()
    assert (a / "response.txt").exists()


def test_no_blur_ablation_uses_black_bars(project: Path, tmp_path: Path) -> None:
    saida = tmp_path / "saida"

    _compose(project, saida, ablation=Ablation.NO_BLUR)

    timeline = Timeline.from_dict(_json(saida / "timeline.json"))
    retrato = next(s for s in timeline.segments if s.asset_id == 2)
    indice = round((retrato.start + retrato.duration / 2) * 10)
    quadro = np.asarray(
        Image.open(saida / "render" / "frames" / f"frame_{indice:06d}.png").convert("RGB")
    )
    x = retrato.placement.fg_offset_x
    assert x > 0
    assert not quadro[:100, :x].any()
