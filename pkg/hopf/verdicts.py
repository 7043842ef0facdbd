from dataclasses import dataclass
from typing import Any, Literal

Verdict = Literal["yes", "no", "inconclusive"]


@dataclass(frozen=True)
class CheckResult:
    """Three-valued verdict. A "no" always carries a witness."""

    verdict: Verdict
    detail: str = ""
    witness: Any = None
    certificate: Any = None

    def __post_init__(self) -> None:
        if self.verdict not in ("yes", "no", "inconclusive"):
            raise ValueError(f"unknown verdict {self.verdict!r}")
        if self.verdict == "no" and self.witness is None:
            raise ValueError("a 'no' verdict needs a witness")

    @classmethod
    def yes(cls, detail: str = "", certificate: Any = None) -> "CheckResult":
        return cls("yes", detail, None, certificate)

    @classmethod
    def no(cls, detail: str, witness: Any) -> "CheckResult":
        return cls("no", detail, witness)

    @classmethod
    def inconclusive(cls, detail: str) -> "CheckResult":
        return cls("inconclusive", detail)

    @property
    def ok(self) -> bool:
        return self.verdict == "yes"

    @property
    def failed(self) -> bool:
        return self.verdict == "no"
