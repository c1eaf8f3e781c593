"""运行清单与校验结论"""

from typing import Optional, Dict, Any, List
from datetime import datetime, timezone
from pydantic import BaseModel, Field


class Verdict(BaseModel):
    """单条校验结论"""

    name: str
    expected: str
    actual: str
    tolerance: Optional[str] = None
    passed: bool

    def __str__(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.name}: expected={self.expected} actual={self.actual}"


class RunManifest(BaseModel):
    """一次 CLI 实验的记录：配置回显、产物列表、所有校验结论"""

    run_id: str
    subcommand: str
    timestamp: datetime = Field(default_factory=lambda: datetime.now(timezone.utc))
    config: Dict[str, Any] = Field(default_factory=dict)
    verdicts: List[Verdict] = Field(default_factory=list)
    artifacts: List[str] = Field(default_factory=list)
    summary: Dict[str, Any] = Field(default_factory=dict)

    def add_verdict(
        self,
        name: str,
        expected: Any,
        actual: Any,
        passed: bool,
        tolerance: Any = None,
    ) -> Verdict:
        """追加一条结论并返回它"""
        verdict = Verdict(
            name=name,
            expected=str(expected),
            actual=str(actual),
            tolerance=None if tolerance is None else str(tolerance),
            passed=bool(passed),
        )
        self.verdicts.append(verdict)
        return verdict

    def add_artifact(self, path: str):
        if path not in self.artifacts:
            self.artifacts.append(path)

    @property
    def passed(self) -> bool:
        """所有结论均通过（且至少有一条结论）"""
        return bool(self.verdicts) and all(v.passed for v in self.verdicts)

    def failures(self) -> List[Verdict]:
        return [v for v in self.verdicts if not v.passed]

    def to_dict(self) -> Dict[str, Any]:
        """转换为可 JSON 序列化的字典"""
        return self.model_dump(mode="json")

    def __str__(self) -> str:
        ok = sum(1 for v in self.verdicts if v.passed)
        return f"RunManifest(run_id={self.run_id}, verdicts={ok}/{len(self.verdicts)})"
