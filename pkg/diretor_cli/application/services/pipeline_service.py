"""
Serviço de composição: encadeia as etapas do diretor e persiste os artefatos
de cada uma para permitir retomar a execução
"""

import json
import time
from dataclasses import dataclass, field, replace
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional

from diretor_cli.application.services.asset_service import load_manifest
from diretor_cli.application.services.keyframe_service import (
    segment_asset,
    segments_from_dict,
    segments_to_dict,
)
from diretor_cli.application.services.music_service import (
    analyze_track,
    first_track,
    fixed_grid,
    index_library,
    retrieve_music,
)
from diretor_cli.application.services.narration_service import (
    build_prompt,
    describe_assets,
    format_descriptions,
    parse_plan,
    plan_story,
    random_plan,
    render_plan_text,
)
from diretor_cli.application.services.render_service import AssetFrameSource, render_video
from diretor_cli.application.services.timeline_service import (
    assemble_timeline,
    timeline_to_edl,
)
from diretor_cli.domain.errors import (
    AdapterError,
    BeatTrackingError,
    DiretorError,
    MusicError,
    NoPlausibleMatch,
)
from diretor_cli.domain.models.assets import ProjectManifest, StyleKind, UserRequirements
from diretor_cli.domain.models.keyframes import VideoSegment
from diretor_cli.domain.models.music import BeatGrid, MusicMatch, MusicTrack
from diretor_cli.domain.models.narration import AssetDescription, DirectorPlan
from diretor_cli.domain.models.render import (
    BackgroundMode,
    OutputKind,
    RenderConfig,
    RenderResult,
)
from diretor_cli.domain.models.report import RunReport
from diretor_cli.domain.models.timeline import Timeline, TimelineConfig
from diretor_cli.infrastructure.config import (
    CODEC_TEMPLATE_PADRAO,
    AdapterSettings,
    load_adapter_settings,
)
from diretor_cli.infrastructure.logging_config import coletar_avisos, obter_logger
from diretor_cli.infrastructure.providers.provider_factory import (
    get_captioner,
    get_chat,
    get_style,
)

logger = obter_logger("pipeline")

STAGES = (
    "load",
    "keyframes",
    "describe",
    "prompt",
    "plan",
    "retrieve",
    "beats",
    "timeline",
    "render",
)
STAGE_ALIASES = {"parse": "plan"}

REPORT_FILE = "report.json"


class Ablation(str, Enum):
    """Variantes de ablação do pipeline"""

    NONE = "none"
    NO_THEME = "no-theme"
    NO_BLUR = "no-blur"
    NO_LLM = "no-llm"


def resolve_stage(nome: Optional[str]) -> Optional[str]:
    """Normaliza o nome de uma etapa (aceita `parse` como sinônimo de `plan`)"""
    if nome is None:
        return None
    etapa = STAGE_ALIASES.get(nome.strip().lower(), nome.strip().lower())
    if etapa not in STAGES:
        raise ValueError(f"Etapa desconhecida: {nome} (opções: {', '.join(STAGES)})")
    return etapa


@dataclass(frozen=True)
class ComposeOptions:
    """Opções de linha de comando do compose"""

    mock_adapters: bool = False
    seed: Optional[int] = None
    stop_after: Optional[str] = None
    resume_from: Optional[str] = None
    style: Optional[StyleKind] = None
    ablation: Ablation = Ablation.NONE
    chat_fixture: Optional[Path] = None
    output: OutputKind = OutputKind.FRAME_DIRECTORY
    workers: int = 4
    timeline: TimelineConfig = field(default_factory=TimelineConfig)


class ComposePipeline:
    """
    Executa load → keyframes → describe → prompt → plan → retrieve → beats →
    timeline → render, gravando os artefatos de cada etapa em `out_dir`.
    """

    def __init__(
        self,
        manifest_path: Path,
        out_dir: Path,
        options: Optional[ComposeOptions] = None,
        settings: Optional[AdapterSettings] = None,
    ):
        self.manifest_path = Path(manifest_path)
        self.out_dir = Path(out_dir)
        self.options = options or ComposeOptions()
        self._settings = settings

        self.manifest: Optional[ProjectManifest] = None
        self.source: Optional[AssetFrameSource] = None
        self.segments: Dict[int, List[VideoSegment]] = {}
        self.descriptions: List[AssetDescription] = []
        self.prompt: str = ""
        self.response: str = ""
        self.plan: Optional[DirectorPlan] = None
        self.match: Optional[MusicMatch] = None
        self.track: Optional[MusicTrack] = None
        self.beats: Optional[BeatGrid] = None
        self.timeline: Optional[Timeline] = None
        self.render_result: Optional[RenderResult] = None

    # Utilidades

    @property
    def settings(self) -> AdapterSettings:
        if self._settings is None:
            self._settings = load_adapter_settings()
        return self._settings

    @property
    def requirements(self) -> UserRequirements:
        assert self.manifest is not None
        return self.manifest.requirements

    def _path(self, nome: str) -> Path:
        return self.out_dir / nome

    def _write_json(self, nome: str, dados: Any) -> None:
        self._path(nome).write_text(
            json.dumps(dados, indent=2, ensure_ascii=False) + "\n", encoding="utf-8"
        )

    def _write_text(self, nome: str, texto: str) -> None:
        self._path(nome).write_text(texto, encoding="utf-8")

    def _read_json(self, nome: str, etapa: str) -> Any:
        try:
            return json.loads(self._read_text(nome, etapa))
        except json.JSONDecodeError as e:
            raise DiretorError(f"Artefato corrompido: {nome} ({e})", stage=etapa) from e

    def _read_text(self, nome: str, etapa: str) -> str:
        caminho = self._path(nome)
        if not caminho.is_file():
            raise DiretorError(
                f"Artefato ausente para retomar a partir desta etapa: {caminho}", stage=etapa
            )
        return caminho.read_text(encoding="utf-8")

    # Etapas

    def _check_health(self, adaptador: Any, etapa: str) -> None:
        """Consulta o adaptador antes de a etapa usá-lo"""
        saudavel, mensagem = adaptador.health_check()
        if not saudavel:
            raise AdapterError(f"Adaptador indisponível: {mensagem}", stage=etapa)
        logger.debug(f"{etapa}: {mensagem}")

    def _with_overrides(self, manifesto: ProjectManifest) -> ProjectManifest:
        requisitos = manifesto.requirements
        if self.options.seed is not None:
            requisitos = replace(requisitos, seed=self.options.seed)
        if self.options.style is not None:
            requisitos = replace(requisitos, style=self.options.style)
        return replace(manifesto, requirements=requisitos)

    def run_load(self) -> None:
        self.manifest = self._with_overrides(load_manifest(self.manifest_path))
        self._write_json("manifest.json", self.manifest.to_dict())

    def load_load(self) -> None:
        dados = self._read_json("manifest.json", "load")
        self.manifest = self._with_overrides(ProjectManifest.from_dict(dados))

    def run_keyframes(self) -> None:
        assert self.manifest is not None and self.source is not None
        self.segments = {
            a.id: segment_asset(a, self.source.frames(a.id))
            for a in self.manifest.assets
            if a.is_video
        }
        self._write_json("keyframes.json", segments_to_dict(self.segments))

    def load_keyframes(self) -> None:
        self.segments = segments_from_dict(self._read_json("keyframes.json", "keyframes"))

    def run_describe(self) -> None:
        assert self.manifest is not None and self.source is not None
        fonte = self.source
        legendador = get_captioner(self.settings, mock=self.options.mock_adapters)
        self._check_health(legendador, "describe")
        resultado = describe_assets(
            self.manifest.assets,
            self.segments,
            legendador,
            frame_loader=lambda asset: fonte.frames(asset.id),
        )
        self.descriptions = list(resultado.descriptions)
        self._write_json(
            "descriptions.json",
            {
                "descriptions": [d.to_dict() for d in self.descriptions],
                "text": format_descriptions(self.descriptions),
            },
        )

    def load_describe(self) -> None:
        dados = self._read_json("descriptions.json", "describe")
        self.descriptions = [AssetDescription.from_dict(d) for d in dados["descriptions"]]

    def run_prompt(self) -> None:
        requisitos = self.requirements
        if self.options.ablation is Ablation.NO_THEME:
            requisitos = replace(requisitos, theme="")
        self.prompt = build_prompt(requisitos, self.descriptions)
        self._write_text("prompt.txt", self.prompt)

    def load_prompt(self) -> None:
        self.prompt = self._read_text("prompt.txt", "prompt")

    def run_plan(self) -> None:
        assert self.manifest is not None
        if self.options.ablation is Ablation.NO_LLM:
            self.plan = random_plan(self.descriptions, self.requirements.seed)
            self.response = render_plan_text(self.plan)
        else:
            chat = get_chat(
                self.settings,
                mock=self.options.mock_adapters,
                fixture=self.options.chat_fixture,
            )
            self._check_health(chat, "plan")
            self.response = plan_story(self.prompt, chat, self._path("adapter_log.jsonl"))
            self.plan = parse_plan(self.response, self.manifest.asset_ids)
        self._write_text("response.txt", self.response)
        self._write_json("plan.json", self.plan.to_dict())

    def load_plan(self) -> None:
        self.response = self._read_text("response.txt", "plan")
        self.plan = DirectorPlan.from_dict(self._read_json("plan.json", "plan"))

    def run_retrieve(self) -> None:
        assert self.manifest is not None and self.plan is not None
        if self.manifest.music_library_path is None:
            raise MusicError("Biblioteca de músicas não configurada no manifesto ([music])")
        indice = index_library(self.manifest.music_library_path)

        self.match = None
        if not self.plan.music_name.strip():
            self.track = first_track(indice)
            logger.warning(f"Plano sem recomendação de música; usando '{self.track.title}'")
        else:
            try:
                self.match = retrieve_music(self.plan.music_name, indice)
                self.track = self.match.track
            except NoPlausibleMatch as e:
                self.track = first_track(indice)
                logger.warning(f"{e}; usando '{self.track.title}'")
        self._write_json(
            "music.json",
            {
                "requested": self.plan.music_name,
                "match": self.match.to_dict() if self.match else None,
                "track": self.track.to_dict(),
            },
        )

    def load_retrieve(self) -> None:
        dados = self._read_json("music.json", "retrieve")
        self.match = MusicMatch.from_dict(dados["match"]) if dados.get("match") else None
        self.track = MusicTrack.from_dict(dados["track"])

    def run_beats(self) -> None:
        assert self.track is not None
        try:
            self.beats = analyze_track(self.track)
        except BeatTrackingError as e:
            logger.warning(f"{e}; usando grade fixa")
            self.beats = fixed_grid(self.track.duration)
        self._write_json("beats.json", self.beats.to_dict())

    def load_beats(self) -> None:
        self.beats = BeatGrid.from_dict(self._read_json("beats.json", "beats"))

    def run_timeline(self) -> None:
        assert self.manifest is not None and self.plan is not None and self.beats is not None
        requisitos = self.requirements
        cfg = replace(
            self.options.timeline,
            seed=requisitos.seed,
            frame_rate=requisitos.frame_rate,
            target_width=requisitos.target_width,
            target_height=requisitos.target_height,
        )
        self.timeline = assemble_timeline(
            self.plan, self.manifest.assets, self.beats, cfg, music=self.track
        )
        self._write_json("timeline.json", self.timeline.to_dict())
        self._write_text("timeline.edl", timeline_to_edl(self.timeline))

    def load_timeline(self) -> None:
        self.timeline = Timeline.from_dict(self._read_json("timeline.json", "timeline"))

    def run_render(self) -> None:
        assert self.timeline is not None and self.source is not None
        requisitos = self.requirements
        cfg = RenderConfig(
            width=requisitos.target_width,
            height=requisitos.target_height,
            frame_rate=requisitos.frame_rate,
            blur_sigma=self.options.timeline.blur_sigma,
            output=self.options.output,
            background=(
                BackgroundMode.BLACK
                if self.options.ablation is Ablation.NO_BLUR
                else BackgroundMode.BLURRED
            ),
            workers=self.options.workers,
        )
        estilo_settings = self.settings if requisitos.style is StyleKind.EXTERNAL else None
        estilo = get_style(requisitos.style, estilo_settings, requisitos.style_model)
        self._check_health(estilo, "render")
        modelo = (
            self.settings.codec_template
            if self.options.output is OutputKind.CONTAINER_FILE
            else CODEC_TEMPLATE_PADRAO
        )
        self.render_result = render_video(
            self.timeline, cfg, estilo, self._path("render"), self.source, modelo
        )

    # Execução

    def _fill_report(self, report: RunReport) -> None:
        if self.plan is not None:
            report.plan = {
                "title": self.plan.title,
                "order": list(self.plan.order),
                "closing": self.plan.closing,
                "music_name": self.plan.music_name,
            }
        if self.track is not None:
            report.music = {
                "title": self.track.title,
                "tier": self.match.tier.name.lower() if self.match else "fallback",
                "score": self.match.score if self.match else None,
            }
        if self.beats is not None:
            report.tempo = self.beats.tempo
        if self.timeline is not None:
            report.segments = [
                {
                    "asset_id": s.asset_id,
                    "start": round(s.start, 6),
                    "end": round(s.end, 6),
                    "transition": s.transition_in.value,
                }
                for s in self.timeline.segments
            ]
        if self.render_result is not None:
            report.frame_count = self.render_result.frame_count

    def run(self) -> RunReport:
        """
        Executa o pipeline e grava report.json, inclusive em caso de falha.

        Returns:
            RunReport da execução

        Raises:
            DiretorError: a etapa que falhou fica em `stage` e no relatório
        """
        parar = resolve_stage(self.options.stop_after)
        retomar = resolve_stage(self.options.resume_from)
        inicio_retomada = STAGES.index(retomar) if retomar else 0
        if parar and STAGES.index(parar) < inicio_retomada:
            raise ValueError("--stop-after não pode vir antes de --resume-from")

        self.out_dir.mkdir(parents=True, exist_ok=True)
        report = RunReport(output_path=str(self.out_dir))
        inicio = time.monotonic()
        etapa = STAGES[0]

        with coletar_avisos() as coletor:
            try:
                for n, etapa in enumerate(STAGES):
                    if n < inicio_retomada:
                        getattr(self, f"load_{etapa}")()
                    else:
                        logger.info(f"Etapa {etapa}")
                        getattr(self, f"run_{etapa}")()
                    if etapa == "load":
                        assert self.manifest is not None
                        self.source = AssetFrameSource(self.manifest.assets)
                    report.completed_stages.append(etapa)
                    if etapa == parar:
                        break
                report.status = "ok"
            except Exception as e:
                report.status = "failed"
                report.failed_stage = etapa
                report.error = str(e)
                if isinstance(e, DiretorError) and e.stage is None:
                    e.stage = etapa
                logger.error(f"Etapa {etapa} falhou: {e}")
                if isinstance(e, OSError):
                    raise DiretorError(f"Falha de E/S: {e}", stage=etapa) from e
                raise
            finally:
                self._fill_report(report)
                report.warnings = list(coletor.avisos)
                report.wall_time = round(time.monotonic() - inicio, 3)
                self._write_json(REPORT_FILE, report.to_dict())
        return report


def compose(
    manifest_path: Path,
    out_dir: Path,
    options: Optional[ComposeOptions] = None,
    settings: Optional[AdapterSettings] = None,
) -> RunReport:
    """Atalho para ComposePipeline(...).run()"""
    return ComposePipeline(manifest_path, out_dir, options, settings).run()
