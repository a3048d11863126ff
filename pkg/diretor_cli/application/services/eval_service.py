"""
Serviço de avaliação: diversidade lexical (TTR) e protocolo do juiz
"""

import json
import re
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence

from diretor_cli.domain.errors import EvalError, JudgeParseError
from diretor_cli.domain.models.evaluation import JUDGE_ASPECTS, JudgeScores
from diretor_cli.domain.models.narration import DirectorPlan
from diretor_cli.domain.prompts import JUDGE_PROMPT
from diretor_cli.infrastructure.logging_config import obter_logger

logger = obter_logger("eval")

_TOKEN = re.compile(r"[^\W_]+")
_CERCA = re.compile(r"```(?:json)?\s*(.*?)```", re.DOTALL | re.IGNORECASE)
_DIGITOS = re.compile(r"\d+")


def tokenize(text: str) -> List[str]:
    """Minúsculas, separando em qualquer sequência não alfanumérica"""
    return _TOKEN.findall(text.lower())


def ttr(captions: Iterable[str]) -> float:
    """
    Razão tipo-token: palavras distintas / total de palavras.

    Args:
        captions: Textos do vídeo (título, legendas, encerramento)

    Returns:
        Fração em (0, 1]
    """
    tokens = [t for texto in captions for t in tokenize(texto)]
    if not tokens:
        raise EvalError("texto vazio: nenhuma palavra para calcular o TTR")
    return len(set(tokens)) / len(tokens)


def mean_ttr(per_video_ttrs: Sequence[float]) -> float:
    if not per_video_ttrs:
        raise EvalError("lista de TTR vazia")
    return sum(per_video_ttrs) / len(per_video_ttrs)


def plan_text(plan: DirectorPlan, captions_only: bool = False) -> List[str]:
    """Textos do plano na ordem de exibição"""
    legendas = [plan.caption_for(i) for i in plan.order]
    if captions_only:
        return legendas
    return [plan.title, *legendas, plan.closing]


def read_captions_file(path: Path, captions_only: bool = False) -> List[str]:
    """
    Lê os textos de um vídeo.

    Aceita um plan.json gravado pelo compose ou um arquivo texto com um texto
    por linha.
    """
    path = Path(path)
    try:
        conteudo = path.read_text(encoding="utf-8")
    except OSError as e:
        raise EvalError(f"Não foi possível ler {path}: {e}") from e
    if path.suffix.lower() == ".json":
        try:
            return plan_text(DirectorPlan.from_dict(json.loads(conteudo)), captions_only)
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as e:
            raise EvalError(f"Plano inválido em {path}: {e}") from e
    return [linha for linha in conteudo.splitlines() if linha.strip()]


# Juiz


def build_judge_prompt(script: str, frames: Sequence[str]) -> str:
    """
    Monta o prompt do juiz com o roteiro e as referências dos quadros em ordem.

    Chaves no roteiro não interferem na substituição, que é feita uma única vez.
    """
    if not script.strip():
        raise ValueError("Roteiro vazio")
    if frames:
        quadros = "\n".join(f"[frame {n}] {ref}" for n, ref in enumerate(frames, start=1))
    else:
        logger.warning("Prompt do juiz sem quadros anexados")
        quadros = "(0 frames attached)"
    return JUDGE_PROMPT.format(text=script, frames=quadros)


def _json_candidates(texto: str) -> List[str]:
    candidatos = [m.group(1) for m in _CERCA.finditer(texto)]
    inicio, fim = texto.find("{"), texto.rfind("}")
    if inicio != -1 and fim > inicio:
        candidatos.append(texto[inicio : fim + 1])
    return candidatos


def _score(valor: object, aspecto: str) -> int:
    digitos = _DIGITOS.search(str(valor))
    if digitos is None:
        raise JudgeParseError(f"{aspecto} sem nota numérica")
    nota = int(digitos.group())
    if not 1 <= nota <= 5:
        raise JudgeParseError(f"{aspecto} fora do intervalo")
    return nota


def _from_mapping(dados: Dict[str, object]) -> JudgeScores:
    normalizado = {str(k).strip().lower(): v for k, v in dados.items()}
    notas: Dict[str, int] = {}
    motivos: Dict[str, str] = {}
    for chave, aspecto in JUDGE_ASPECTS.items():
        if chave not in normalizado:
            raise JudgeParseError(f"{aspecto} ausente na resposta do juiz")
        item = normalizado[chave]
        if isinstance(item, dict):
            notas[aspecto] = _score(item.get("score"), aspecto)
            motivos[aspecto] = str(item.get("reason", ""))
        else:
            notas[aspecto] = _score(item, aspecto)
            motivos[aspecto] = ""
    return JudgeScores(reasons=motivos, **notas)


def _from_regex(texto: str) -> JudgeScores:
    """Recuperação para JSON quebrado: procura `"aspecto" ... "score": "n"`"""
    dados: Dict[str, object] = {}
    for chave in JUDGE_ASPECTS:
        padrao = re.compile(
            rf'"{re.escape(chave)}"\s*:\s*\{{(.*?)\}}', re.DOTALL | re.IGNORECASE
        )
        achado = padrao.search(texto)
        if achado is None:
            continue
        corpo = achado.group(1)
        nota = re.search(r'"score"\s*:\s*"?([^",}\n]*)', corpo)
        motivo = re.search(r'"reason"\s*:\s*"((?:[^"\\]|\\.)*)"', corpo)
        dados[chave] = {
            "score": nota.group(1) if nota else "",
            "reason": motivo.group(1) if motivo else "",
        }
    return _from_mapping(dados)


def parse_judge_response(text: str) -> JudgeScores:
    """
    Extrai as cinco notas da resposta do juiz.

    Tolera texto em volta e blocos de código; a média usa quatro aspectos
    (estética fica de fora).
    """
    for candidato in _json_candidates(text):
        try:
            dados = json.loads(candidato)
        except json.JSONDecodeError:
            continue
        if isinstance(dados, dict):
            return _from_mapping(dados)
    logger.debug("Resposta do juiz não é JSON válido; tentando extração por padrão")
    return _from_regex(text)


def serialize_judge_scores(scores: JudgeScores) -> str:
    """JSON no formato pedido ao juiz"""
    dados = {
        chave: {
            "reason": scores.reasons.get(aspecto, ""),
            "score": str(getattr(scores, aspecto)),
        }
        for chave, aspecto in JUDGE_ASPECTS.items()
    }
    return json.dumps(dados, indent=4, ensure_ascii=False)


def judge_scores_to_dict(scores: JudgeScores, extra: Optional[dict] = None) -> dict:
    dados = {aspecto: getattr(scores, aspecto) for aspecto in JUDGE_ASPECTS.values()}
    dados["average"] = scores.average
    dados["reasons"] = dict(scores.reasons)
    dados.update(extra or {})
    return dados
