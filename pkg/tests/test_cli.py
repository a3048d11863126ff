import json
from pathlib import Path

import pytest
from conftest import click_track, scene_video, write_frame_video, write_wav
from typer.testing import CliRunner

from diretor_cli import __main__ as cli
from diretor_cli.application.services.eval_service import serialize_judge_scores
from diretor_cli.domain.models.evaluation import JudgeScores

runner = CliRunner()


def test_keyframes_prints_segments(tmp_path: Path) -> None:
    video = write_frame_video(tmp_path / "cenas", scene_video("ABC", 20), fps=24)

    resultado = runner.invoke(cli.app, ["keyframes", str(video), "--stride", "1"])

    assert resultado.exit_code == 0, resultado.output
    assert resultado.stdout == "0 19 9\n20 39 29\n40 59 49\n"


def test_keyframes_rejects_images(tmp_path: Path) -> None:
    imagem = tmp_path / "foto.png"
    imagem.write_bytes(b"")

    resultado = runner.invoke(cli.app, ["keyframes", str(imagem)])

    assert resultado.exit_code == 1
    assert "Não é um vídeo" in resultado.output


def test_beats_prints_tempo_and_times(tmp_path: Path) -> None:
    amostras, _ = click_track(duration=12.0)
    faixa = write_wav(tmp_path / "cliques.wav", amostras)

    resultado = runner.invoke(cli.app, ["beats", str(faixa)])

    assert resultado.exit_code == 0, resultado.output
    linhas = resultado.stdout.splitlines()
    assert linhas[0].startswith("# tempo ")
    assert abs(float(linhas[0].split()[-1]) - 120.0) <= 2.0
    assert len(linhas) > 15
    assert all(len(linha.split(".")[1]) == 3 for linha in linhas[1:])


def test_eval_ttr_reports_each_file_and_mean(tmp_path: Path) -> None:
    a = tmp_path / "a.txt"
    a.write_text("the cat\nthe dog\n", encoding="utf-8")
    b = tmp_path / "b.txt"
    b.write_text("sun sea\n", encoding="utf-8")

    resultado = runner.invoke(cli.app, ["eval", "ttr", str(a), str(b)])

    assert resultado.exit_code == 0, resultado.output
    assert "0.7500" in resultado.output
    assert "TTR médio: 0.8750" in resultado.output


def test_eval_ttr_fails_on_empty_text(tmp_path: Path) -> None:
    vazio = tmp_path / "vazio.txt"
    vazio.write_text("\n", encoding="utf-8")

    resultado = runner.invoke(cli.app, ["eval", "ttr", str(vazio)])

    assert resultado.exit_code == 1


def test_eval_judge_prints_prompt(tmp_path: Path) -> None:
    roteiro = tmp_path / "roteiro.txt"
    roteiro.write_text("Sunny Days\nOur dog runs", encoding="utf-8")
    quadros = tmp_path / "frames"
    quadros.mkdir()
    for i in range(4):
        (quadros / f"frame_{i:06d}.png").write_bytes(b"")

    com = runner.invoke(
        cli.app,
        ["eval", "judge", "--script", str(roteiro), "--frames-dir", str(quadros), "--count", "2"],
    )
    sem = runner.invoke(cli.app, ["eval", "judge", "--script", str(roteiro)])

    assert com.exit_code == 0, com.output
    assert "[frame 2]" in com.stdout and "frame_000003.png" in com.stdout
    assert sem.stdout.rstrip().endswith("(0 frames attached)")


def test_eval_judge_reads_saved_response(tmp_path: Path) -> None:
    resposta = tmp_path / "resposta.json"
    notas = JudgeScores(consistency=4, logicality=4, vividness=5, aesthetic=2, overall=4)
    resposta.write_text(serialize_judge_scores(notas), encoding="utf-8")
    roteiro = tmp_path / "roteiro.txt"
    roteiro.write_text("x", encoding="utf-8")

    resultado = runner.invoke(
        cli.app, ["eval", "judge", "--script", str(roteiro), "--response", str(resposta)]
    )

    assert resultado.exit_code == 0, resultado.output
    assert "Média (quatro aspectos): 4.25" in resultado.output


def test_dataset_sample_command(tmp_path: Path) -> None:
    classe = tmp_path / "ucf" / "JumpRope"
    classe.mkdir(parents=True)
    for i in range(5):
        (classe / f"c{i}.avi").write_bytes(b"")

    resultado = runner.invoke(
        cli.app, ["dataset", "sample", str(tmp_path / "ucf"), "--per-class", "2"]
    )

    assert resultado.exit_code == 0, resultado.output
    assert "1 manifestos gravados, 2 clipes" in resultado.output
    assert (tmp_path / "ucf" / "JumpRope.manifest").exists()


def test_dataset_sample_command_writes_library(tmp_path: Path) -> None:
    classe = tmp_path / "ucf" / "JumpRope"
    classe.mkdir(parents=True)
    (classe / "c0.avi").write_bytes(b"")
    biblioteca = tmp_path / "musicas"
    biblioteca.mkdir()

    resultado = runner.invoke(
        cli.app,
        ["dataset", "sample", str(tmp_path / "ucf"), "--per-class", "1", "--library", str(biblioteca)],
    )

    assert resultado.exit_code == 0, resultado.output
    texto = (tmp_path / "ucf" / "JumpRope.manifest").read_text(encoding="utf-8")
    assert f"library_path = {biblioteca.resolve()}" in texto


def test_dataset_sample_rejects_missing_root(tmp_path: Path) -> None:
    resultado = runner.invoke(cli.app, ["dataset", "sample", str(tmp_path / "nada")])

    assert resultado.exit_code == 1


def test_compose_with_mock_adapters(project: Path, tmp_path: Path) -> None:
    saida = tmp_path / "saida"

    resultado = runner.invoke(
        cli.app,
        ["compose", str(project), "--out", str(saida), "--mock-adapters", "--stop-after", "plan"],
    )

    assert resultado.exit_code == 0, resultado.output
    assert "Our Summer Holiday" in resultado.output
    relatorio = json.loads((saida / "report.json").read_text(encoding="utf-8"))
    assert relatorio["completed_stages"][-1] == "plan"


@pytest.mark.parametrize(
    "extra, mensagem",
    [
        (["--style", "aquarela"], "Estilo desconhecido"),
        (["--ablation", "no-music"], "no-music"),
        (["--stop-after", "mixagem"], "Etapa desconhecida"),
    ],
)
def test_compose_rejects_bad_options(project: Path, tmp_path: Path, extra, mensagem) -> None:
    resultado = runner.invoke(
        cli.app, ["compose", str(project), "--out", str(tmp_path / "s"), "--mock-adapters", *extra]
    )

    assert resultado.exit_code == 1
    assert mensagem in resultado.output


def test_compose_failure_names_the_stage(tmp_path: Path) -> None:
    resultado = runner.invoke(
        cli.app, ["compose", str(tmp_path / "nada.manifest"), "--out", str(tmp_path / "s")]
    )

    assert resultado.exit_code == 1
    assert "Etapa 'load' falhou" in resultado.output


def test_logs_level_is_validated(monkeypatch) -> None:
    chamadas = []
    monkeypatch.setattr(cli, "definir_nivel_log", chamadas.append)

    invalido = runner.invoke(cli.app, ["logs", "nivel", "barulhento"])
    valido = runner.invoke(cli.app, ["logs", "nivel", "warning"])

    assert invalido.exit_code == 1
    assert valido.exit_code == 0
    assert chamadas == [30]
