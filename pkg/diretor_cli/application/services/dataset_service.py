"""
Amostragem de conjuntos de vídeos por classe (um manifesto por classe)
"""

from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional

import numpy as np

from diretor_cli.application.services.asset_service import render_manifest_text
from diretor_cli.domain.errors import DatasetError
from diretor_cli.infrastructure.logging_config import obter_logger
from diretor_cli.infrastructure.media.frame_io import VIDEO_EXTENSIONS, is_frame_directory

logger = obter_logger("dataset")

DEFAULT_PER_CLASS = 8


@dataclass(frozen=True)
class SampledManifest:
    class_name: str
    path: Path
    clips: List[Path]


def humanize_class(name: str) -> str:
    """`ApplyEyeMakeup` / `apply_eye_makeup` -> `apply eye makeup`"""
    partes: List[str] = []
    atual = ""
    for anterior, letra in zip(" " + name, name):
        if letra in "_- ":
            partes.append(atual)
            atual = ""
            continue
        if letra.isupper() and anterior.islower():
            partes.append(atual)
            atual = ""
        atual += letra
    partes.append(atual)
    return " ".join(p.lower() for p in partes if p)


def list_clips(class_dir: Path) -> List[Path]:
    """Vídeos de uma classe em ordem de nome (arquivos ou diretórios de quadros)"""
    return sorted(
        p
        for p in class_dir.iterdir()
        if (p.is_file() and p.suffix.lower() in VIDEO_EXTENSIONS)
        or (p.is_dir() and is_frame_directory(p))
    )


def dataset_sample(
    class_root: Path,
    per_class: int = DEFAULT_PER_CLASS,
    seed: int = 0,
    out_dir: Optional[Path] = None,
    library: Optional[Path] = None,
) -> List[SampledManifest]:
    """
    Sorteia `per_class` clipes de cada classe, sem reposição, e grava um
    manifesto por classe.

    Args:
        class_root: Diretório com um subdiretório por classe
        per_class: Clipes por classe
        seed: Semente do sorteio
        out_dir: Onde gravar os manifestos (padrão: o próprio class_root)
        library: Biblioteca de música gravada na seção [music] de cada manifesto

    Returns:
        Manifestos gravados, em ordem alfabética de classe
    """
    if per_class < 1:
        raise ValueError(f"per_class deve ser >= 1: {per_class}")
    class_root = Path(class_root)
    if not class_root.is_dir():
        raise DatasetError(f"Diretório de classes não encontrado: {class_root}")

    classes = sorted(p for p in class_root.iterdir() if p.is_dir() and not is_frame_directory(p))
    if not classes:
        raise DatasetError(f"Nenhuma classe em {class_root}")

    destino = Path(out_dir) if out_dir is not None else class_root
    biblioteca = Path(library).expanduser().resolve() if library is not None else None
    destino.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(seed)

    manifestos: List[SampledManifest] = []
    for classe in classes:
        clipes = list_clips(classe)
        if not clipes:
            logger.warning(f"Classe {classe.name} sem clipes; ignorada")
            continue
        if len(clipes) < per_class:
            logger.warning(
                f"Classe {classe.name} tem {len(clipes)} clipes (pedidos {per_class}); "
                "usando todos"
            )
            escolhidos = clipes
        else:
            indices = np.sort(rng.choice(len(clipes), size=per_class, replace=False))
            escolhidos = [clipes[i] for i in indices]

        texto = render_manifest_text(
            [p.resolve() for p in escolhidos],
            {"theme": humanize_class(classe.name)},
            library_path=biblioteca,
        )
        caminho = destino / f"{classe.name}.manifest"
        caminho.write_text(texto, encoding="utf-8")
        manifestos.append(SampledManifest(classe.name, caminho, escolhidos))

    if not manifestos:
        raise DatasetError(f"Nenhum clipe encontrado em {class_root}")
    logger.info(
        f"{len(manifestos)} manifestos, {sum(len(m.clips) for m in manifestos)} clipes"
    )
    return manifestos
