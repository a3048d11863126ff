import logging
from pathlib import Path

import pytest

from diretor_cli.application.services.dataset_service import (
    dataset_sample,
    humanize_class,
    list_clips,
)
from diretor_cli.domain.errors import DatasetError


def _classes(raiz: Path) -> Path:
    maquiagem = raiz / "ApplyEyeMakeup"
    maquiagem.mkdir(parents=True)
    for i in range(10):
        (maquiagem / f"v_ApplyEyeMakeup_g{i:02d}.avi").write_bytes(b"")
    (maquiagem / "leia-me.txt").write_text("nada", encoding="utf-8")

    dentes = raiz / "brushing_teeth"
    dentes.mkdir()
    for i in range(3):
        (dentes / f"clip{i}.mp4").write_bytes(b"")

    (raiz / "Vazia").mkdir()
    return raiz


def test_humanize_class() -> None:
    assert humanize_class("ApplyEyeMakeup") == "apply eye makeup"
    assert humanize_class("brushing_teeth") == "brushing teeth"
    assert humanize_class("Yo-Yo") == "yo yo"
    assert humanize_class("PlayingTV") == "playing tv"


def test_list_clips_ignores_other_files(tmp_path: Path) -> None:
    raiz = _classes(tmp_path / "ucf")

    clipes = list_clips(raiz / "ApplyEyeMakeup")

    assert len(clipes) == 10
    assert clipes == sorted(clipes)


def test_sample_writes_one_manifest_per_class(tmp_path: Path, caplog) -> None:
    raiz = _classes(tmp_path / "ucf")

    with caplog.at_level(logging.WARNING, logger="diretor"):
        manifestos = dataset_sample(raiz, per_class=4, seed=1, out_dir=tmp_path / "saida")

    assert [m.class_name for m in manifestos] == ["ApplyEyeMakeup", "brushing_teeth"]
    maquiagem, dentes = manifestos
    assert len(maquiagem.clips) == 4
    assert len(set(maquiagem.clips)) == 4
    assert len(dentes.clips) == 3
    assert "Vazia" in caplog.text
    assert "usando todos" in caplog.text

    texto = maquiagem.path.read_text(encoding="utf-8")
    assert maquiagem.path == tmp_path / "saida" / "ApplyEyeMakeup.manifest"
    assert "theme = apply eye makeup" in texto
    assert all(str(p.resolve()) in texto for p in maquiagem.clips)


def test_sample_is_deterministic(tmp_path: Path) -> None:
    raiz = _classes(tmp_path / "ucf")

    primeiro = dataset_sample(raiz, per_class=5, seed=3, out_dir=tmp_path / "a")
    segundo = dataset_sample(raiz, per_class=5, seed=3, out_dir=tmp_path / "b")
    sorteios = {
        tuple(dataset_sample(raiz, per_class=5, seed=s, out_dir=tmp_path / "c")[0].clips)
        for s in range(10)
    }

    assert [m.clips for m in primeiro] == [m.clips for m in segundo]
    assert len(sorteios) > 1


def test_manifests_default_to_the_class_root(tmp_path: Path) -> None:
    raiz = _classes(tmp_path / "ucf")

    manifestos = dataset_sample(raiz, per_class=2)

    assert manifestos[0].path.parent == raiz


def test_invalid_requests(tmp_path: Path) -> None:
    with pytest.raises(ValueError):
        dataset_sample(tmp_path, per_class=0)
    with pytest.raises(DatasetError):
        dataset_sample(tmp_path / "sumiu")
    with pytest.raises(DatasetError):
        dataset_sample(tmp_path)
    (tmp_path / "Vazia").mkdir()
    with pytest.raises(DatasetError):
        dataset_sample(tmp_path)


def test_library_is_written_to_the_music_section(tmp_path: Path) -> None:
    raiz = _classes(tmp_path / "ucf")
    biblioteca = tmp_path / "musicas"
    biblioteca.mkdir()

    com = dataset_sample(raiz, per_class=2, out_dir=tmp_path / "com", library=biblioteca)
    sem = dataset_sample(raiz, per_class=2, out_dir=tmp_path / "sem")

    assert f"[music]\nlibrary_path = {biblioteca.resolve()}\n" in com[0].path.read_text(
        encoding="utf-8"
    )
    assert "[music]" not in sem[0].path.read_text(encoding="utf-8")


def test_full_class_tree_gives_808_clips(tmp_path: Path) -> None:
    raiz = tmp_path / "ucf101"
    for indice in range(101):
        classe = raiz / f"Action{indice:03d}"
        classe.mkdir(parents=True)
        for clipe in range(10):
            (classe / f"v_{indice:03d}_g{clipe:02d}.avi").write_bytes(b"")

    manifestos = dataset_sample(raiz, per_class=8, seed=0, out_dir=tmp_path / "a")
    repetidos = dataset_sample(raiz, per_class=8, seed=0, out_dir=tmp_path / "b")

    assert len(manifestos) == 101
    assert sum(len(m.clips) for m in manifestos) == 808
    assert len(list((tmp_path / "a").glob("*.manifest"))) == 101
    assert [m.clips for m in manifestos] == [m.clips for m in repetidos]
