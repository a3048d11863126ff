"""
Serviço de materiais: leitura do manifesto do projeto e decodificação de quadros
"""

import configparser
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Tuple

import numpy as np

from diretor_cli.domain.errors import ManifestError
from diretor_cli.domain.models.assets import (
    PRESETS,
    AssetKind,
    MediaAsset,
    ProjectManifest,
    StyleKind,
    UserRequirements,
)
from diretor_cli.infrastructure.logging_config import obter_logger
from diretor_cli.infrastructure.media.frame_io import (
    IMAGE_EXTENSIONS,
    VIDEO_EXTENSIONS,
    frame_directory_files,
    inspect_container,
    inspect_image,
    is_frame_directory,
    iter_container,
    iter_frame_directory,
    read_frame_directory_meta,
    read_image,
)

logger = obter_logger("assets")

REQUIREMENT_KEYS = {
    "theme",
    "time",
    "location",
    "requirement",
    "width",
    "height",
    "preset",
    "fps",
    "seed",
    "style",
    "style_model",
}
MUSIC_KEYS = {"library_path"}
SECTIONS = {"requirements", "assets", "music"}

STYLE_ALIASES = {
    "": StyleKind.NONE,
    "none": StyleKind.NONE,
    "identity": StyleKind.NONE,
    "gray": StyleKind.GRAY,
    "grey": StyleKind.GRAY,
    "referencegray": StyleKind.GRAY,
    "sepia": StyleKind.SEPIA,
    "referencesepia": StyleKind.SEPIA,
    "external": StyleKind.EXTERNAL,
}

# Quantos materiais sondar em paralelo
PROBE_WORKERS = 8


def _parser() -> configparser.ConfigParser:
    parser = configparser.ConfigParser(
        allow_no_value=True,
        delimiters=("=",),
        interpolation=None,
        strict=False,
        comment_prefixes=("#", ";"),
    )
    parser.optionxform = str  # type: ignore[assignment]
    return parser


def _number(secao: Dict[str, Optional[str]], chave: str, tipo, padrao):
    valor = secao.get(chave)
    if valor is None or valor.strip() == "":
        return padrao
    try:
        return tipo(valor.strip())
    except ValueError as e:
        raise ManifestError(f"Valor inválido para '{chave}': {valor}") from e


def parse_requirements(secao: Dict[str, Optional[str]], avisos: List[str]) -> UserRequirements:
    """Converte a seção [requirements] em UserRequirements"""
    for chave in secao:
        if chave not in REQUIREMENT_KEYS:
            avisos.append(f"Chave desconhecida em [requirements]: {chave}")

    largura, altura = PRESETS["720p"]
    preset = (secao.get("preset") or "").strip().lower()
    if preset:
        if preset not in PRESETS:
            raise ManifestError(
                f"Preset desconhecido: {preset} (opções: {', '.join(sorted(PRESETS))})"
            )
        largura, altura = PRESETS[preset]
    largura = _number(secao, "width", int, largura)
    altura = _number(secao, "height", int, altura)
    if largura <= 0 or altura <= 0 or largura % 2 or altura % 2:
        raise ManifestError(f"Dimensão de saída ímpar ou inválida: {largura}x{altura}")

    estilo_bruto = (secao.get("style") or "").strip().lower().replace("_", "").replace("-", "")
    if estilo_bruto not in STYLE_ALIASES:
        raise ManifestError(f"Estilo desconhecido: {secao.get('style')}")

    try:
        return UserRequirements(
            theme=(secao.get("theme") or "").strip(),
            time=(secao.get("time") or "").strip(),
            location=(secao.get("location") or "").strip(),
            requirement=(secao.get("requirement") or "").strip(),
            target_width=largura,
            target_height=altura,
            frame_rate=_number(secao, "fps", float, 25.0),
            seed=_number(secao, "seed", int, 0),
            style=STYLE_ALIASES[estilo_bruto],
            style_model=(secao.get("style_model") or "").strip(),
        )
    except ValueError as e:
        raise ManifestError(str(e)) from e


def asset_kind(path: Path) -> AssetKind:
    """Tipo do material pela extensão; diretório de quadros conta como vídeo"""
    if path.is_dir():
        if is_frame_directory(path):
            return AssetKind.VIDEO
        raise ManifestError(f"Diretório sem quadros frame_*: {path}")
    sufixo = path.suffix.lower()
    if sufixo in IMAGE_EXTENSIONS:
        return AssetKind.IMAGE
    if sufixo in VIDEO_EXTENSIONS:
        return AssetKind.VIDEO
    raise ManifestError(f"Formato de material não suportado: {path}")


def inspect_asset(asset_id: int, kind: AssetKind, path: Path) -> MediaAsset:
    """Lê dimensões (e duração, para vídeos) sem decodificar o conteúdo inteiro"""
    if kind is AssetKind.IMAGE:
        largura, altura = inspect_image(path)
        return MediaAsset(asset_id, kind, path, largura, altura)

    if path.is_dir():
        meta = read_frame_directory_meta(path)
        arquivos = frame_directory_files(path)
        fps = float(meta["fps"])
        quadros = int(meta.get("frame_count", len(arquivos)))
        largura, altura = inspect_image(arquivos[0])
    else:
        largura, altura, fps, quadros = inspect_container(path)

    if quadros <= 0:
        raise ManifestError(f"Vídeo sem quadros: {path}")
    return MediaAsset(
        id=asset_id,
        kind=kind,
        source_path=path,
        width=largura,
        height=altura,
        duration=quadros / fps,
        frame_rate=fps,
        frame_count=quadros,
    )


def assign_ids(paths: Iterable[Path]) -> List[Tuple[int, AssetKind, Path]]:
    """Numera imagens primeiro e depois vídeos, cada grupo na ordem do manifesto"""
    classificados = [(asset_kind(p), p) for p in paths]
    ordenados = [c for c in classificados if c[0] is AssetKind.IMAGE] + [
        c for c in classificados if c[0] is AssetKind.VIDEO
    ]
    return [(i, kind, p) for i, (kind, p) in enumerate(ordenados, start=1)]


def load_manifest(path: Path) -> ProjectManifest:
    """
    Carrega o manifesto do projeto e sonda todos os materiais.

    Args:
        path: Arquivo com seções [requirements], [assets] e [music]

    Returns:
        ProjectManifest com ids 1..n+m (imagens primeiro, depois vídeos)
    """
    path = Path(path)
    if not path.is_file():
        raise ManifestError(f"Manifesto não encontrado: {path}")

    parser = _parser()
    try:
        parser.read_string(path.read_text(encoding="utf-8"), source=str(path))
    except (configparser.Error, UnicodeDecodeError) as e:
        raise ManifestError(f"Manifesto malformado: {e}") from e

    avisos: List[str] = []
    for secao in parser.sections():
        if secao not in SECTIONS:
            avisos.append(f"Seção desconhecida no manifesto: [{secao}]")

    requisitos = parse_requirements(
        dict(parser["requirements"]) if parser.has_section("requirements") else {}, avisos
    )

    base = path.parent
    caminhos: List[Path] = []
    if parser.has_section("assets"):
        for chave, valor in parser["assets"].items():
            # "caminho" sozinho na linha, ou "rótulo = caminho"
            bruto = valor if valor else chave
            caminho = Path(bruto.strip()).expanduser()
            if not caminho.is_absolute():
                caminho = base / caminho
            if not caminho.exists():
                raise ManifestError(f"Material não encontrado: {caminho}")
            caminhos.append(caminho)
    if not caminhos:
        raise ManifestError("projeto vazio: nenhum material em [assets]")

    biblioteca: Optional[Path] = None
    if parser.has_section("music"):
        musica = parser["music"]
        for chave in musica:
            if chave not in MUSIC_KEYS:
                avisos.append(f"Chave desconhecida em [music]: {chave}")
        if musica.get("library_path"):
            biblioteca = Path(musica["library_path"].strip()).expanduser()
            if not biblioteca.is_absolute():
                biblioteca = base / biblioteca

    numerados = assign_ids(caminhos)
    with ThreadPoolExecutor(max_workers=min(PROBE_WORKERS, len(numerados))) as pool:
        materiais = list(pool.map(lambda item: inspect_asset(*item), numerados))

    for aviso in avisos:
        logger.warning(aviso)
    logger.info(
        f"Manifesto carregado: {sum(not a.is_video for a in materiais)} imagens, "
        f"{sum(a.is_video for a in materiais)} vídeos"
    )
    return ProjectManifest(
        assets=tuple(materiais),
        requirements=requisitos,
        music_library_path=biblioteca,
        source_path=path,
        warnings=tuple(avisos),
    )


def decode_frames(asset: MediaAsset) -> List[np.ndarray]:
    """
    Decodifica todos os quadros do material em RGB 8 bits na resolução nativa.

    Imagens produzem exatamente um quadro. Vídeos produzem
    round(duração × fps) quadros, ou os lidos até o ponto de corrupção
    (com aviso).
    """
    if asset.kind is AssetKind.IMAGE:
        return [read_image(asset.source_path)]

    esperado = round((asset.duration or 0) * (asset.frame_rate or 0))
    if asset.source_path.is_dir():
        return list(iter_frame_directory(asset.source_path, expected=esperado))
    return list(iter_container(asset.source_path, expected=esperado))


def render_manifest_text(
    assets: Iterable[Path],
    requirements: Optional[Dict[str, object]] = None,
    library_path: Optional[Path] = None,
) -> str:
    """Escreve um manifesto no formato lido por load_manifest"""
    linhas = ["[requirements]"]
    for chave, valor in (requirements or {}).items():
        linhas.append(f"{chave} = {valor}")
    linhas += ["", "[assets]"]
    linhas += [str(p) for p in assets]
    if library_path is not None:
        linhas += ["", "[music]", f"library_path = {library_path}"]
    return "\n".join(linhas) + "\n"
