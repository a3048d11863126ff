"""
Serviço de narração: descrições dos materiais, prompt do diretor e leitura do plano
"""

import json
import re
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from diretor_cli.domain import prompts
from diretor_cli.domain.errors import AdapterError, NarrationError, PlanParseError
from diretor_cli.domain.interfaces.adapters import CaptionerAdapter, CaptionRequest, ChatAdapter
from diretor_cli.domain.models.assets import AssetKind, MediaAsset, UserRequirements
from diretor_cli.domain.models.keyframes import VideoSegment
from diretor_cli.domain.models.narration import (
    AssetDescription,
    DescriptionResult,
    DirectorPlan,
)
from diretor_cli.infrastructure.logging_config import obter_logger

logger = obter_logger("narration")

FrameLoader = Callable[[MediaAsset], Sequence[np.ndarray]]

DEFAULT_CAPTION_WORKERS = 4


def _single_line(texto: str) -> str:
    return " ".join(texto.split())


# Descrições


def describe_assets(
    assets: Sequence[MediaAsset],
    segments: Dict[int, List[VideoSegment]],
    captioner: CaptionerAdapter,
    frame_loader: FrameLoader,
    max_workers: int = DEFAULT_CAPTION_WORKERS,
) -> DescriptionResult:
    """
    Descreve cada imagem e cada quadro-chave de vídeo com o legendador.

    Falhas em um pedido viram a descrição substituta mais um aviso; a
    execução nunca é interrompida por uma legenda.

    Args:
        assets: Materiais em ordem de id
        segments: Trechos de cada vídeo (por id)
        captioner: Adaptador de legendas
        frame_loader: Função que devolve os quadros de um material
        max_workers: Limite de pedidos simultâneos ao legendador

    Returns:
        DescriptionResult com as descrições em ordem de id
    """
    pedidos: List[Tuple[MediaAsset, CaptionRequest]] = []
    for asset in sorted(assets, key=lambda a: a.id):
        quadros = frame_loader(asset)
        if asset.kind is AssetKind.IMAGE:
            pedidos.append(
                (asset, CaptionRequest(asset.id, quadros[0], prompts.CAPTION_QUESTION))
            )
            continue
        trechos = segments.get(asset.id) or []
        if not trechos or not quadros:
            raise NarrationError(f"Vídeo {asset.id} sem quadros-chave")
        for numero, trecho in enumerate(trechos, start=1):
            quadro = quadros[min(trecho.keyframe_index, len(quadros) - 1)]
            pedidos.append(
                (asset, CaptionRequest(asset.id, quadro, prompts.CAPTION_QUESTION, numero))
            )

    def descrever(item: Tuple[MediaAsset, CaptionRequest]) -> Tuple[str, Optional[str]]:
        asset, pedido = item
        rotulo = f"{asset.kind.label} {asset.id}"
        if pedido.keyframe is not None:
            rotulo += f" (quadro-chave {pedido.keyframe})"
        try:
            texto = _single_line(captioner.describe(pedido))
        except Exception as e:
            return prompts.PLACEHOLDER_DESCRIPTION, f"Legendador falhou para {rotulo}: {e}"
        if not texto:
            return prompts.PLACEHOLDER_DESCRIPTION, f"Legendador sem texto para {rotulo}"
        return texto, None

    with ThreadPoolExecutor(max_workers=max(1, max_workers)) as pool:
        respostas = list(pool.map(descrever, pedidos))

    avisos: List[str] = []
    linhas: Dict[int, List[str]] = {}
    for (asset, _), (texto, aviso) in zip(pedidos, respostas):
        linhas.setdefault(asset.id, []).append(texto)
        if aviso:
            logger.warning(aviso)
            avisos.append(aviso)

    descricoes = tuple(
        AssetDescription(a.id, a.kind, tuple(linhas[a.id]))
        for a in sorted(assets, key=lambda a: a.id)
    )
    logger.info(f"{len(pedidos)} descrições obtidas para {len(descricoes)} materiais")
    return DescriptionResult(descricoes, tuple(avisos))


def format_descriptions(descriptions: Sequence[AssetDescription]) -> str:
    """Bloco de entrada: "Image k: ..." e "Video k: key frame j: ..." em ordem de id"""
    linhas = []
    for d in sorted(descriptions, key=lambda d: d.asset_id):
        if d.kind is AssetKind.IMAGE:
            linhas.append(f"Image {d.asset_id}: {d.lines[0]}")
        else:
            linhas.extend(
                f"Video {d.asset_id}: key frame {j}: {texto}"
                for j, texto in enumerate(d.lines, start=1)
            )
    return "\n".join(linhas)


# Prompt


def build_prompt(reqs: UserRequirements, descriptions: Sequence[AssetDescription]) -> str:
    """
    Monta o prompt do diretor: descrição da tarefa, descrições de entrada e
    requisitos detalhados. Frases cujo campo está vazio são omitidas.
    """
    if not descriptions:
        raise ValueError("É preciso ao menos uma descrição para montar o prompt")

    if reqs.theme:
        arranjo = prompts.TASK_ARRANGE_WITH_THEME.format(theme=reqs.theme)
    else:
        arranjo = prompts.TASK_ARRANGE_WITHOUT_THEME
    tarefa = [" ".join([prompts.TASK_OPENING, arranjo, prompts.TASK_SCRIPT])]
    if reqs.location:
        tarefa.append(prompts.TASK_LOCATION.format(location=reqs.location))
    if reqs.time:
        tarefa.append(prompts.TASK_TIME.format(time=reqs.time))
    tarefa.append(prompts.TASK_CLOSING)

    passo_dois = [prompts.REQUIREMENTS_STEP_TWO]
    if reqs.requirement:
        passo_dois.append(prompts.REQUIREMENTS_USER.format(requirement=reqs.requirement))
    passo_dois.append(prompts.REQUIREMENTS_STYLE)
    requisitos = [
        prompts.REQUIREMENTS_HEADER,
        prompts.REQUIREMENTS_STEP_ONE,
        " ".join(passo_dois),
        prompts.REQUIREMENTS_TAIL,
    ]

    return "\n\n".join(
        ["\n".join(tarefa), format_descriptions(descriptions), "\n".join(requisitos)]
    )


# Chamada ao modelo


def plan_story(prompt: str, chat: ChatAdapter, log_path: Optional[Path] = None) -> str:
    """
    Envia o prompt ao modelo de chat e devolve a resposta sem alterações.

    O par prompt/resposta é anexado a `log_path` (JSON por linha) quando informado.
    """
    resposta: Optional[str] = None
    erro: Optional[str] = None
    try:
        resposta = chat.complete(prompt)
    except AdapterError as e:
        erro = str(e)
        logger.error(f"Modelo de chat falhou: {e}")
        raise
    finally:
        if log_path is not None:
            registro = {"prompt": prompt, "response": resposta}
            if erro is not None:
                registro["error"] = erro
            with open(log_path, "a", encoding="utf-8") as f:
                f.write(json.dumps(registro, ensure_ascii=False) + "\n")

    if not resposta or not resposta.strip():
        raise PlanParseError("plano vazio: o modelo devolveu uma resposta vazia")
    return resposta


# Leitura do plano

_CABECALHO = re.compile(
    r"^(?:\d+[.)]\s+)?"
    r"(order|title|materials?|captions?|closing|music(?:\s+recommendation)?)"
    r"\s*[:：]\s*(.*)$",
    re.IGNORECASE,
)
_MARCADOR = re.compile(r"^(?:[-*•>]\s*|#+\s*)+")
_LEGENDA = re.compile(
    r"^(?:(?:image|video|material|caption)\s*)?"
    r"(?:\((\d+)\)|(\d+)(?=\s*(?:[:.)\-–]|$)))"
    r"\s*[:.)\-–]?\s*(.*)$",
    re.IGNORECASE,
)
_ENTRE_ASPAS = re.compile(r'["“«]([^"”»]+)["”»]')
_PONTUACAO = " \t\"'“”‘’«»*_`.,;:!()[]-"


def _clean(linha: str) -> str:
    texto = _MARCADOR.sub("", linha.strip())
    return texto.replace("**", "").replace("__", "").strip()


def _unquote(texto: str) -> str:
    texto = texto.strip()
    if len(texto) >= 2 and texto[0] in "\"“'" and texto[-1] in "\"”'":
        return texto[1:-1].strip()
    return texto


def _section_name(bruto: str) -> str:
    nome = bruto.lower()
    if nome.startswith("music"):
        return "music"
    if nome.startswith("caption"):
        return "captions"
    if nome.startswith("material"):
        return "materials"
    return nome


def split_sections(response: str) -> Dict[str, List[str]]:
    """Agrupa as linhas da resposta sob cada cabeçalho reconhecido"""
    secoes: Dict[str, List[str]] = {}
    atual: Optional[List[str]] = None
    for linha in response.splitlines():
        limpa = _clean(linha)
        achado = _CABECALHO.match(limpa)
        if achado:
            nome = _section_name(achado.group(1))
            if nome in secoes:
                # Seção repetida: mantém a primeira
                atual = None
                continue
            atual = secoes[nome] = []
            if achado.group(2).strip():
                atual.append(achado.group(2).strip())
        elif atual is not None and limpa:
            atual.append(limpa)
    return secoes


def _repair_order(
    bruta: Sequence[int], expected_ids: Sequence[int], avisos: List[str]
) -> Tuple[int, ...]:
    esperados = set(expected_ids)
    ordem: List[int] = []
    descartados: List[int] = []
    for i in bruta:
        if i in esperados and i not in ordem:
            ordem.append(i)
        else:
            descartados.append(i)
    faltantes = [i for i in expected_ids if i not in ordem]
    ordem.extend(faltantes)
    if descartados or faltantes:
        partes = []
        if descartados:
            partes.append(f"descartados {descartados}")
        if faltantes:
            partes.append(f"acrescentados {faltantes}")
        avisos.append(f"Ordem reparada: {', '.join(partes)}")
    return tuple(ordem)


def _parse_captions(
    linhas: Sequence[str], expected_ids: Sequence[int], avisos: List[str]
) -> Dict[int, str]:
    legendas: Dict[int, str] = {}
    desconhecidos: List[int] = []
    repetidos: List[int] = []
    atual: Optional[int] = None
    for linha in linhas:
        achado = _LEGENDA.match(linha)
        if achado:
            numero = int(achado.group(1) or achado.group(2))
            if numero not in expected_ids:
                desconhecidos.append(numero)
                atual = None
            elif numero in legendas:
                repetidos.append(numero)
                atual = None
            else:
                legendas[numero] = achado.group(3).strip()
                atual = numero
        elif atual is not None:
            legendas[atual] = f"{legendas[atual]} {linha}".strip()

    if desconhecidos:
        avisos.append(f"Legendas para materiais inexistentes ignoradas: {desconhecidos}")
    if repetidos:
        avisos.append(f"Legendas repetidas ignoradas: {repetidos}")
    faltantes = [i for i in expected_ids if i not in legendas]
    if faltantes:
        avisos.append(f"Materiais sem legenda: {faltantes}")
    for i in faltantes:
        legendas[i] = ""
    return {i: _unquote(legendas[i]) for i in expected_ids}


def _first_line(secoes: Dict[str, List[str]], nome: str, avisos: List[str]) -> str:
    linhas = secoes.get(nome)
    if not linhas:
        avisos.append(f"Seção '{nome}' ausente ou vazia")
        return ""
    return _unquote(linhas[0])


def _music_name(linhas: Optional[List[str]], avisos: List[str]) -> str:
    if not linhas:
        avisos.append("Seção 'music recommendation' ausente ou vazia")
        return ""
    texto = " ".join(linhas)
    aspas = _ENTRE_ASPAS.search(texto)
    if aspas:
        texto = aspas.group(1)
    return texto.strip(_PONTUACAO)


def _word_count(texto: str) -> int:
    return len(texto.split())


def parse_plan(response: str, expected_ids: Sequence[int]) -> DirectorPlan:
    """
    Extrai o plano do diretor da resposta do modelo, reparando o que for possível.

    Args:
        response: Texto devolvido pelo modelo
        expected_ids: Ids de todos os materiais do projeto

    Returns:
        DirectorPlan cuja ordem é sempre uma permutação de expected_ids

    Raises:
        PlanParseError: sem seção Order ou sem seção Captions
    """
    esperados = list(expected_ids)
    if not esperados:
        raise ValueError("Lista de ids esperados vazia")

    secoes = split_sections(response)
    if "order" not in secoes:
        raise PlanParseError("plano sem a seção Order")
    if "captions" not in secoes:
        raise PlanParseError("plano sem a seção Captions")

    avisos: List[str] = []
    bruta = [int(n) for n in re.findall(r"\d+", " ".join(secoes["order"]))]
    ordem = _repair_order(bruta, esperados, avisos)
    legendas = _parse_captions(secoes["captions"], esperados, avisos)
    titulo = _first_line(secoes, "title", avisos)
    encerramento = _first_line(secoes, "closing", avisos)
    musica = _music_name(secoes.get("music"), avisos)

    if _word_count(titulo) > prompts.TITLE_MAX_WORDS:
        avisos.append(f"Título com mais de {prompts.TITLE_MAX_WORDS} palavras")
    if _word_count(encerramento) > prompts.CLOSING_MAX_WORDS:
        avisos.append(f"Encerramento com mais de {prompts.CLOSING_MAX_WORDS} palavras")
    longas = [i for i in esperados if _word_count(legendas[i]) > prompts.CAPTION_MAX_WORDS]
    if longas:
        avisos.append(f"Legendas com mais de {prompts.CAPTION_MAX_WORDS} palavras: {longas}")

    for aviso in avisos:
        logger.warning(aviso)
    return DirectorPlan(
        order=ordem,
        title=titulo,
        captions=legendas,
        closing=encerramento,
        music_name=musica,
        warnings=tuple(avisos),
    )


def render_plan_text(plan: DirectorPlan) -> str:
    """Escreve o plano no formato de resposta pedido ao modelo"""
    linhas = [
        f"Order: {', '.join(str(i) for i in plan.order)}",
        f"Title: {plan.title}",
        "Captions:",
    ]
    linhas += [f"{i}: {plan.caption_for(i)}" for i in plan.order]
    linhas += [f"Closing: {plan.closing}", f"Music Recommendation: {plan.music_name}"]
    return "\n".join(linhas) + "\n"


def random_plan(descriptions: Sequence[AssetDescription], seed: int) -> DirectorPlan:
    """
    Plano sem modelo de linguagem: ordem sorteada e a primeira descrição
    de cada material como legenda.
    """
    ids = [d.asset_id for d in sorted(descriptions, key=lambda d: d.asset_id)]
    rng = np.random.default_rng(seed)
    ordem = tuple(int(ids[i]) for i in rng.permutation(len(ids)))
    return DirectorPlan(
        order=ordem,
        title="",
        captions={d.asset_id: d.lines[0] for d in descriptions},
        closing="",
        music_name="",
    )
