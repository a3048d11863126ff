#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
CLI do Diretor Inteligente
"""

import logging
import os
import sys
from datetime import datetime
from pathlib import Path
from typing import List, NoReturn, Optional

import typer
from rich import print
from rich.console import Console
from rich.panel import Panel
from rich.prompt import Prompt
from rich.table import Table

from diretor_cli.application.services.asset_service import (
    STYLE_ALIASES,
    asset_kind,
    decode_frames,
    inspect_asset,
)
from diretor_cli.application.services.dataset_service import DEFAULT_PER_CLASS, dataset_sample
from diretor_cli.application.services.eval_service import (
    build_judge_prompt,
    judge_scores_to_dict,
    mean_ttr,
    parse_judge_response,
    read_captions_file,
    ttr,
)
from diretor_cli.application.services.keyframe_service import (
    DEFAULT_THRESHOLD,
    format_segments,
    segment_asset,
)
from diretor_cli.application.services.music_service import beats_text, detect_beats
from diretor_cli.application.services.pipeline_service import (
    REPORT_FILE,
    Ablation,
    ComposeOptions,
    compose as executar_compose,
    resolve_stage,
)
from diretor_cli.application.services.render_service import select_judge_frames
from diretor_cli.commands.configure import configure as configurar_adaptadores
from diretor_cli.domain.errors import DiretorError
from diretor_cli.domain.models.assets import AssetKind, StyleKind
from diretor_cli.domain.models.render import OutputKind
from diretor_cli.infrastructure.config import load_adapter_settings
from diretor_cli.infrastructure.logging_config import (
    LOG_DIR,
    LOG_FILE,
    configurar_logging,
    definir_nivel_log,
    obter_logger,
)
from diretor_cli.infrastructure.media.frame_io import read_audio
from diretor_cli.infrastructure.providers.provider_factory import get_chat

# Configuração de logging
configurar_logging()
logger = obter_logger("cli")

app = typer.Typer(
    help="""
    🎬 CLI do Diretor Inteligente

    Compõe vídeos a partir de fotos e vídeos: descreve cada material, pede ao
    modelo de linguagem uma ordem e um roteiro, escolhe a música e monta tudo
    no ritmo das batidas.
    Use o comando 'configure' para apontar os adaptadores.
    Use o comando 'compose' para gerar um vídeo a partir de um manifesto.
    """
)

# Cria um grupo de comandos para avaliação
eval_app = typer.Typer(
    help="""
    📊 Avaliação

    Diversidade lexical (TTR) e protocolo do juiz.
    """
)
app.add_typer(eval_app, name="eval")

# Cria um grupo de comandos para conjuntos de dados
dataset_app = typer.Typer(
    help="""
    🗂️ Conjuntos de dados

    Amostragem de clipes por classe.
    """
)
app.add_typer(dataset_app, name="dataset")

# Cria um grupo de comandos para logs
logs_app = typer.Typer(
    help="""
    📝 Gerenciamento de logs

    Comandos para visualizar e gerenciar os logs do sistema.
    """
)
app.add_typer(logs_app, name="logs")

console = Console()


def _falhar(mensagem: str) -> NoReturn:
    print(f"❌ {mensagem}")
    raise typer.Exit(code=1)


def _style_option(style: Optional[str]) -> Optional[StyleKind]:
    if style is None:
        return None
    chave = style.strip().lower().replace("_", "").replace("-", "")
    if chave not in STYLE_ALIASES:
        _falhar(f"Estilo desconhecido: {style} (opções: none, gray, sepia, external)")
    return STYLE_ALIASES[chave]


@app.command()
def configure(
    captioner_url: Optional[str] = typer.Option(None, help="Endpoint HTTP do legendador"),
    chat_api_key: Optional[str] = typer.Option(None, help="Chave de API do modelo de chat"),
    chat_model: Optional[str] = typer.Option(None, help="Modelo de chat"),
):
    """Configura os endpoints e credenciais dos adaptadores"""
    configurar_adaptadores(
        captioner_url=captioner_url, chat_api_key=chat_api_key, chat_model=chat_model
    )


@app.command()
def compose(
    manifest: Path = typer.Argument(..., help="Manifesto do projeto"),
    out: Path = typer.Option(Path("saida"), "--out", help="Diretório de saída"),
    mock_adapters: bool = typer.Option(
        False, "--mock-adapters", help="Usa os adaptadores simulados (sem rede)"
    ),
    seed: Optional[int] = typer.Option(None, help="Semente (sobrescreve o manifesto)"),
    stop_after: Optional[str] = typer.Option(None, help="Para depois desta etapa"),
    resume_from: Optional[str] = typer.Option(
        None, help="Retoma a partir desta etapa usando os artefatos já gravados"
    ),
    style: Optional[str] = typer.Option(None, help="Estilo: none, gray, sepia, external"),
    ablation: str = typer.Option("none", help="Ablação: none, no-theme, no-blur, no-llm"),
    chat_fixture: Optional[Path] = typer.Option(
        None, help="Arquivo com a resposta do modelo de chat (simulado)"
    ),
    container: bool = typer.Option(False, "--container", help="Codifica também um .mp4"),
    workers: int = typer.Option(4, help="Quadros renderizados em paralelo"),
):
    """Compõe um vídeo a partir de um manifesto"""
    logger.info(f"Compondo {manifest} em {out}")
    try:
        opcoes = ComposeOptions(
            mock_adapters=mock_adapters,
            seed=seed,
            stop_after=resolve_stage(stop_after),
            resume_from=resolve_stage(resume_from),
            style=_style_option(style),
            ablation=Ablation(ablation),
            chat_fixture=chat_fixture,
            output=OutputKind.CONTAINER_FILE if container else OutputKind.FRAME_DIRECTORY,
            workers=workers,
        )
    except ValueError as e:
        _falhar(str(e))

    try:
        relatorio = executar_compose(manifest, out, opcoes)
    except (DiretorError, ValueError, OSError) as e:
        etapa = getattr(e, "stage", None)
        logger.exception(f"Erro na etapa {etapa}: {e}")
        _falhar(f"Etapa '{etapa}' falhou: {e} (relatório em {out / REPORT_FILE})")

    tabela = Table(title="🎬 Trechos")
    tabela.add_column("Material", style="cyan")
    tabela.add_column("Início", style="green")
    tabela.add_column("Fim", style="green")
    tabela.add_column("Transição", style="yellow")
    for trecho in relatorio.segments:
        tabela.add_row(
            str(trecho["asset_id"]),
            f"{trecho['start']:.2f}",
            f"{trecho['end']:.2f}",
            trecho["transition"],
        )
    if relatorio.segments:
        console.print(tabela)

    if relatorio.plan:
        print(f"📝 Título: {relatorio.plan['title'] or '(sem título)'}")
    if relatorio.music:
        print(f"🎵 Música: {relatorio.music['title']} ({relatorio.music['tier']})")
    if relatorio.tempo:
        print(f"🥁 Andamento: {relatorio.tempo:.1f} BPM")
    if relatorio.frame_count is not None:
        print(f"🖼️  {relatorio.frame_count} quadros")
    for aviso in relatorio.warnings:
        print(f"⚠️ {aviso}")
    print(f"✅ Etapas concluídas: {', '.join(relatorio.completed_stages)}")
    print(f"📁 Saída: {out}")


@app.command()
def keyframes(
    video: Path = typer.Argument(..., help="Vídeo (arquivo ou diretório de quadros)"),
    threshold: float = typer.Option(DEFAULT_THRESHOLD, help="Limiar de similaridade"),
    stride: Optional[int] = typer.Option(None, help="Intervalo entre quadros amostrados"),
):
    """Segmenta um vídeo e imprime `início fim quadro-chave` por trecho"""
    try:
        if asset_kind(video) is not AssetKind.VIDEO:
            _falhar(f"Não é um vídeo: {video}")
        asset = inspect_asset(1, AssetKind.VIDEO, video)
        trechos = segment_asset(asset, decode_frames(asset), threshold, stride)
    except (DiretorError, ValueError) as e:
        logger.exception(f"Erro ao segmentar {video}: {e}")
        _falhar(str(e))
    typer.echo(format_segments(trechos), nl=False)


@app.command()
def beats(audio: Path = typer.Argument(..., help="Faixa de áudio")):
    """Detecta o andamento e as batidas de uma faixa"""
    try:
        amostras, taxa = read_audio(audio)
        grade = detect_beats(amostras, taxa)
    except DiretorError as e:
        logger.exception(f"Erro ao analisar {audio}: {e}")
        _falhar(str(e))
    typer.echo(f"# tempo {grade.tempo:.2f}")
    for linha in beats_text(grade):
        typer.echo(linha)


@eval_app.command("ttr")
def eval_ttr(
    arquivos: List[Path] = typer.Argument(..., help="plan.json ou texto (um por vídeo)"),
    captions_only: bool = typer.Option(
        False, "--captions-only", help="Apenas as legendas dos materiais"
    ),
):
    """Calcula o TTR de cada vídeo e a média"""
    try:
        valores = [ttr(read_captions_file(a, captions_only)) for a in arquivos]
        media = mean_ttr(valores)
    except DiretorError as e:
        _falhar(str(e))

    tabela = Table(title="📊 TTR")
    tabela.add_column("Arquivo", style="cyan")
    tabela.add_column("TTR", style="green")
    for arquivo, valor in zip(arquivos, valores):
        tabela.add_row(str(arquivo), f"{valor:.4f}")
    console.print(tabela)
    print(f"📈 TTR médio: {media:.4f}")


@eval_app.command("judge")
def eval_judge(
    script: Path = typer.Option(..., help="Roteiro (texto) do vídeo"),
    frames_dir: Optional[Path] = typer.Option(None, help="Diretório de quadros renderizados"),
    count: int = typer.Option(8, help="Quantidade de quadros anexados"),
    send: bool = typer.Option(False, "--send", help="Envia ao modelo de chat configurado"),
    response: Optional[Path] = typer.Option(None, help="Resposta do juiz já salva"),
):
    """Monta o prompt do juiz ou lê as notas de uma resposta"""
    try:
        if response is not None:
            notas = parse_judge_response(response.read_text(encoding="utf-8"))
        else:
            quadros = select_judge_frames(frames_dir, count) if frames_dir else []
            prompt = build_judge_prompt(
                script.read_text(encoding="utf-8"), [str(q) for q in quadros]
            )
            if not send:
                typer.echo(prompt)
                return
            notas = parse_judge_response(get_chat(load_adapter_settings()).complete(prompt))
    except (DiretorError, ValueError, OSError) as e:
        logger.exception(f"Erro no protocolo do juiz: {e}")
        _falhar(str(e))

    dados = judge_scores_to_dict(notas)
    tabela = Table(title="⚖️ Notas do juiz")
    tabela.add_column("Aspecto", style="cyan")
    tabela.add_column("Nota", style="green")
    tabela.add_column("Justificativa", style="yellow")
    for aspecto, motivo in dados["reasons"].items():
        tabela.add_row(aspecto, str(dados[aspecto]), motivo)
    console.print(tabela)
    print(f"📈 Média (quatro aspectos): {dados['average']:.2f}")


@dataset_app.command("sample")
def dataset_sample_command(
    class_root: Path = typer.Argument(..., help="Diretório com uma pasta por classe"),
    per_class: int = typer.Option(DEFAULT_PER_CLASS, help="Clipes por classe"),
    seed: int = typer.Option(0, help="Semente do sorteio"),
    out: Optional[Path] = typer.Option(None, "--out", help="Onde gravar os manifestos"),
    library: Optional[Path] = typer.Option(
        None, "--library", help="Biblioteca de música gravada em [music]"
    ),
):
    """Sorteia clipes por classe e grava um manifesto por classe"""
    try:
        manifestos = dataset_sample(class_root, per_class, seed, out, library)
    except (DiretorError, ValueError) as e:
        _falhar(str(e))
    total = sum(len(m.clips) for m in manifestos)
    print(f"✅ {len(manifestos)} manifestos gravados, {total} clipes")


@logs_app.command("listar")
def listar_logs():
    """Lista os arquivos de log disponíveis"""
    if not os.path.exists(LOG_DIR):
        print(f"❌ Diretório de logs não encontrado: {LOG_DIR}")
        return

    logs = sorted(f for f in os.listdir(LOG_DIR) if ".log" in f)
    if not logs:
        print("ℹ️ Nenhum arquivo de log encontrado.")
        return

    tabela = Table(title="📝 Arquivos de Log")
    tabela.add_column("Nome", style="cyan")
    tabela.add_column("Tamanho", style="green")
    tabela.add_column("Data de Modificação", style="yellow")
    for nome in logs:
        caminho = os.path.join(LOG_DIR, nome)
        tamanho = os.path.getsize(caminho)
        texto = f"{tamanho / 1024:.2f} KB" if tamanho > 1024 else f"{tamanho} bytes"
        data = datetime.fromtimestamp(os.path.getmtime(caminho)).strftime("%Y-%m-%d %H:%M:%S")
        tabela.add_row(nome, texto, data)
    console.print(tabela)


@logs_app.command("ver")
def ver_log(
    linhas: int = typer.Option(50, help="Número de linhas para exibir"),
):
    """Exibe as últimas linhas do log"""
    if not os.path.exists(LOG_FILE):
        print(f"❌ Arquivo de log não encontrado: {LOG_FILE}")
        return
    with open(LOG_FILE, "r", encoding="utf-8") as f:
        todas = f.readlines()
    ultimas = todas[-linhas:]
    console.print(
        Panel(
            "".join(ultimas),
            title=f"📝 diretor.log (últimas {len(ultimas)} de {len(todas)} linhas)",
        )
    )


@logs_app.command("limpar")
def limpar_logs(
    confirmar: bool = typer.Option(False, "--sim", help="Confirma a operação sem prompt"),
):
    """Limpa os arquivos de log"""
    if not os.path.exists(LOG_DIR):
        print(f"ℹ️ Diretório de logs não encontrado: {LOG_DIR}")
        return
    logs = [f for f in os.listdir(LOG_DIR) if ".log" in f]
    if not logs:
        print("ℹ️ Nenhum arquivo de log encontrado para limpar.")
        return

    if not confirmar:
        confirmacao = Prompt.ask(
            f"⚠️ Deseja realmente limpar {len(logs)} arquivos de log?",
            choices=["s", "n"],
            default="n",
        )
        if confirmacao.lower() != "s":
            print("❌ Operação cancelada pelo usuário.")
            return

    for nome in logs:
        # Trunca; o handler de arquivo continua aberto
        with open(os.path.join(LOG_DIR, nome), "w"):
            pass
    print(f"✅ {len(logs)} arquivos de log foram limpos com sucesso.")


@logs_app.command("nivel")
def definir_nivel(
    nivel: str = typer.Argument(..., help="Nível de log (debug, info, warning, error, critical)"),
):
    """Define o nível de log da sessão atual"""
    niveis = {
        "debug": logging.DEBUG,
        "info": logging.INFO,
        "warning": logging.WARNING,
        "error": logging.ERROR,
        "critical": logging.CRITICAL,
    }
    if nivel.lower() not in niveis:
        print(f"❌ Nível de log inválido: {nivel}")
        print(f"ℹ️ Níveis válidos: {', '.join(niveis.keys())}")
        raise typer.Exit(code=1)
    definir_nivel_log(niveis[nivel.lower()])
    print(f"✅ Nível de log definido para: {nivel.upper()}")


def main():
    try:
        app()
    except KeyboardInterrupt:
        logger.info("Programa encerrado pelo usuário via KeyboardInterrupt")
        print("\n👋 Programa encerrado pelo usuário")
        sys.exit(0)


if __name__ == "__main__":
    main()
