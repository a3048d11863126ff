"""
Relatório de uma execução do pipeline
"""

from dataclasses import dataclass, field
from typing import List, Optional


@dataclass
class RunReport:
    """Resumo persistido em report.json, inclusive quando a execução falha"""

    output_path: str
    status: str = "running"
    completed_stages: List[str] = field(default_factory=list)
    failed_stage: Optional[str] = None
    error: Optional[str] = None
    plan: Optional[dict] = None
    music: Optional[dict] = None
    tempo: Optional[float] = None
    segments: List[dict] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)
    frame_count: Optional[int] = None
    wall_time: float = 0.0

    @property
    def succeeded(self) -> bool:
        return self.status == "ok"

    def to_dict(self) -> dict:
        return {
            "output_path": self.output_path,
            "status": self.status,
            "completed_stages": list(self.completed_stages),
            "failed_stage": self.failed_stage,
            "error": self.error,
            "plan": self.plan,
            "music": self.music,
            "tempo": self.tempo,
            "segments": list(self.segments),
            "warnings": list(self.warnings),
            "frame_count": self.frame_count,
            "wall_time": self.wall_time,
        }
