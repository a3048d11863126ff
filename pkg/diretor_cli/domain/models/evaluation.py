"""
Modelo das notas do juiz
"""

from dataclasses import dataclass, field
from typing import Dict

# Chave no JSON do juiz -> campo do modelo
JUDGE_ASPECTS = {
    "consistency of text and video": "consistency",
    "logicality": "logicality",
    "vividness": "vividness",
    "aesthetic": "aesthetic",
    "overall": "overall",
}

# Aspectos que entram na média (estética fica de fora)
AVERAGED_ASPECTS = ("consistency", "logicality", "vividness", "overall")


@dataclass(frozen=True)
class JudgeScores:
    consistency: int
    logicality: int
    vividness: int
    aesthetic: int
    overall: int
    reasons: Dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        for aspecto in JUDGE_ASPECTS.values():
            nota = getattr(self, aspecto)
            if not 1 <= nota <= 5:
                raise ValueError(f"{aspecto} fora do intervalo 1..5")

    @property
    def average(self) -> float:
        return sum(getattr(self, a) for a in AVERAGED_ASPECTS) / len(AVERAGED_ASPECTS)
