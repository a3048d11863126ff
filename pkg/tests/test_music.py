import logging
from pathlib import Path

import numpy as np
import pytest
from conftest import SAMPLE_RATE, click_track, write_wav

from diretor_cli.application.services import music_service
from diretor_cli.application.services.music_service import (
    analyze_track,
    beats_text,
    detect_beats,
    first_track,
    fixed_grid,
    index_library,
    inspect_track,
    normalize_title,
    retrieve_music,
)
from diretor_cli.domain.errors import (
    BeatTrackingError,
    MusicError,
    NoMusicAvailable,
    NoPlausibleMatch,
)
from diretor_cli.domain.models.music import BeatGrid, LibraryIndex, MatchTier


def _tom(segundos: float = 1.0) -> np.ndarray:
    t = np.arange(int(segundos * SAMPLE_RATE)) / SAMPLE_RATE
    return (0.3 * np.sin(2 * np.pi * 440 * t)).astype(np.float32)


def _biblioteca(tmp_path: Path, *nomes: str) -> Path:
    pasta = tmp_path / "musicas"
    pasta.mkdir(exist_ok=True)
    for nome in nomes:
        write_wav(pasta / nome, _tom())
    return pasta


def _indice(tmp_path: Path, *titulos: str) -> LibraryIndex:
    pasta = _biblioteca(tmp_path, *(f"faixa_{i}.wav" for i in range(len(titulos))))
    (pasta / "titles.tsv").write_text(
        "".join(f"faixa_{i}.wav\t{t}\n" for i, t in enumerate(titulos)), encoding="utf-8"
    )
    return index_library(pasta)


def _casadas(batidas, cliques, tolerancia: float = 0.05) -> float:
    batidas = np.asarray(batidas)
    perto = [np.min(np.abs(batidas - c)) <= tolerancia for c in cliques]
    return float(np.mean(perto))


# Biblioteca


def test_normalize_title() -> None:
    assert normalize_title("  Summer_Breeze!! ") == "summer breeze"
    assert normalize_title("Clair de Lune (Live)") == "clair de lune live"


def test_index_uses_sidecar_and_filename(tmp_path: Path, caplog) -> None:
    pasta = _biblioteca(tmp_path, "01.wav", "gymnopedie_no_1.wav")
    (pasta / "quebrada.wav").write_bytes(b"RIFF????")
    (pasta / "titles.tsv").write_text("# arquivo\ttitulo\n01.wav\tClair de Lune\n", "utf-8")

    with caplog.at_level(logging.WARNING, logger="diretor"):
        indice = index_library(pasta)

    assert list(indice) == ["clair de lune", "gymnopedie no 1"]
    assert indice.tracks["clair de lune"].title == "Clair de Lune"
    assert indice.tracks["gymnopedie no 1"].duration == pytest.approx(1.0)
    assert "quebrada.wav" in caplog.text


def test_index_rejects_missing_directory(tmp_path: Path) -> None:
    with pytest.raises(MusicError):
        index_library(tmp_path / "nada")


def test_inspect_track_reads_channels(tmp_path: Path) -> None:
    estereo = np.stack([_tom(), _tom()], axis=1)
    caminho = write_wav(tmp_path / "estereo.wav", estereo)

    faixa = inspect_track(caminho, "Estereo")

    assert faixa.channels == 2
    assert faixa.sample_rate == SAMPLE_RATE


def test_exact_match(tmp_path: Path) -> None:
    indice = _indice(tmp_path, "Clair de Lune", "Gymnopedie No 1")

    achado = retrieve_music("clair de lune!", indice)

    assert achado.tier is MatchTier.EXACT
    assert achado.score == 0.0
    assert achado.track.title == "Clair de Lune"


def test_containment_match(tmp_path: Path) -> None:
    indice = _indice(tmp_path, "Clair de Lune", "Gymnopedie No 1")

    achado = retrieve_music("Gymnopedie", indice)

    assert achado.tier is MatchTier.CONTAINS
    assert achado.track.title == "Gymnopedie No 1"


def test_edit_distance_match(tmp_path: Path) -> None:
    indice = _indice(tmp_path, "Clair de Lune", "Gymnopedie No 1")

    achado = retrieve_music("Clare de Lune", indice)

    assert achado.tier is MatchTier.EDIT_DISTANCE
    assert achado.track.title == "Clair de Lune"
    assert 0 < achado.score <= 0.7


def test_tiers_are_ordered(tmp_path: Path) -> None:
    indice = _indice(tmp_path, "Rain", "Rain Song", "Rainy")

    assert retrieve_music("rain", indice).track.title == "Rain"
    contido = retrieve_music("rain song remix", indice)
    assert contido.tier is MatchTier.CONTAINS
    assert contido.track.title == "Rain Song"


def test_ties_go_to_the_smallest_title(tmp_path: Path) -> None:
    indice = _indice(tmp_path, "abce", "abcd")

    assert retrieve_music("abcx", indice).track.title == "abcd"


def test_implausible_name_raises(tmp_path: Path) -> None:
    indice = _indice(tmp_path, "Clair de Lune", "Gymnopedie No 1")

    with pytest.raises(NoPlausibleMatch):
        retrieve_music("xyzzy qqq", indice)


def test_empty_index_and_name() -> None:
    with pytest.raises(NoMusicAvailable):
        retrieve_music("qualquer", LibraryIndex())
    with pytest.raises(NoMusicAvailable):
        first_track(LibraryIndex())


def test_first_track_is_alphabetical(tmp_path: Path) -> None:
    indice = _indice(tmp_path, "Zebra", "Aurora")

    assert first_track(indice).title == "Aurora"
    with pytest.raises(ValueError):
        retrieve_music("  !! ", indice)


# Batidas


def test_click_track_tempo_and_beats() -> None:
    amostras, cliques = click_track()

    grade = detect_beats(amostras, SAMPLE_RATE)

    assert grade.tempo == pytest.approx(120.0, abs=2.0)
    assert grade.detected
    internos = cliques[(cliques > 1.0) & (cliques < 28.0)]
    assert _casadas(grade.beats, internos) >= 0.95


def test_beats_are_increasing_and_inside_the_track() -> None:
    amostras, _ = click_track(duration=12.0, bpm=100.0)

    grade = detect_beats(amostras, SAMPLE_RATE)

    assert all(b < a for b, a in zip(grade.beats, grade.beats[1:]))
    assert grade.beats[0] >= 0
    assert grade.beats[-1] <= 12.0


def test_detection_is_deterministic() -> None:
    amostras, _ = click_track(duration=10.0)

    assert detect_beats(amostras, SAMPLE_RATE) == detect_beats(amostras.copy(), SAMPLE_RATE)


def test_shifting_audio_shifts_beats() -> None:
    base, cliques = click_track(duration=20.0, offset=0.25)
    atrasada, _ = click_track(duration=20.0, offset=0.35)

    antes = np.asarray(detect_beats(base, SAMPLE_RATE).beats)
    depois = np.asarray(detect_beats(atrasada, SAMPLE_RATE).beats)

    diferencas = [
        np.min(np.abs(depois - (b + 0.1))) for b in antes if 1.0 < b < 18.0
    ]
    assert np.median(diferencas) <= 0.03


def test_tempo_agrees_with_the_beat_spacing() -> None:
    amostras, _ = click_track(duration=20.0, bpm=100.0)

    grade = detect_beats(amostras, SAMPLE_RATE)

    mediana = float(np.median(np.diff(grade.beats)))
    assert grade.tempo > 0
    assert abs(mediana - 60.0 / grade.tempo) <= 0.1 * mediana


def test_tracking_runs_through_librosa(monkeypatch) -> None:
    chamadas = []

    def beat_track(**kwargs):
        chamadas.append(kwargs)
        return np.array([119.0]), np.array([1.0, 1.5, 2.0, 2.5])

    monkeypatch.setattr(music_service.librosa.beat, "beat_track", beat_track)
    amostras, _ = click_track(duration=6.0)

    grade = detect_beats(amostras, SAMPLE_RATE)

    assert grade.beats == (1.0, 1.5, 2.0, 2.5)
    assert grade.tempo == pytest.approx(120.0)
    (argumentos,) = chamadas
    assert argumentos["start_bpm"] == 120.0
    assert argumentos["tightness"] == 100.0
    assert argumentos["hop_length"] == 512
    assert argumentos["units"] == "time"


def test_stereo_input_is_mixed_down() -> None:
    amostras, _ = click_track(duration=10.0)
    estereo = np.stack([amostras, amostras], axis=1)

    assert detect_beats(estereo, SAMPLE_RATE) == detect_beats(amostras, SAMPLE_RATE)


def test_silence_gives_empty_grid(caplog) -> None:
    with caplog.at_level(logging.WARNING, logger="diretor"):
        grade = detect_beats(np.zeros(10 * SAMPLE_RATE, dtype=np.float32), SAMPLE_RATE)

    assert grade.is_empty
    assert not grade.detected
    assert "silencioso" in caplog.text


def test_short_track_is_rejected() -> None:
    amostras, _ = click_track(duration=3.0)

    with pytest.raises(BeatTrackingError, match="curta"):
        detect_beats(amostras, SAMPLE_RATE)


def test_fixed_grid() -> None:
    grade = fixed_grid(10.0)

    assert grade.beats == (0.0, 4.0, 8.0)
    assert grade.tempo == 15.0
    assert not grade.detected


def test_analyze_silent_track_falls_back_to_grid(tmp_path: Path) -> None:
    caminho = write_wav(tmp_path / "silencio.wav", np.zeros(9 * SAMPLE_RATE, dtype=np.float32))

    grade = analyze_track(inspect_track(caminho, "silencio"))

    assert grade.beats == (0.0, 4.0, 8.0)


def test_beats_text() -> None:
    assert beats_text(BeatGrid((0.5, 1.0), 120.0)) == ["0.500", "1.000"]
