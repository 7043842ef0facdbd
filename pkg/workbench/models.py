from typing import Any, Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, Field

Level = Literal["algebra", "coalgebra", "bialgebra", "hopf"]


class ObjectFile(BaseModel):
    """On-disk algebra/coalgebra/bialgebra/Hopf algebra. Scalars are strings like "3/2" or "5 mod 7"."""

    format_version: Literal[1] = 1
    kind: Literal["object"] = "object"
    field: str = "q"
    level: Level
    dim: int = Field(gt=0)
    basis: List[str] = []
    mult: Optional[List[Tuple[int, int, int, str]]] = None
    unit: Optional[List[str]] = None
    comult: Optional[List[Tuple[int, int, int, str]]] = None
    counit: Optional[List[str]] = None
    antipode: Optional[List[List[str]]] = None


class MorphismFile(BaseModel):
    format_version: Literal[1] = 1
    kind: Literal["morphism"] = "morphism"
    level: Level
    source: str
    target: str
    matrix: List[List[str]]
    label: str = ""


class ExampleSpec(BaseModel):
    name: str
    params: Dict[str, Any] = {}


class Report(BaseModel):
    command: str
    status: Literal["yes", "no", "inconclusive", "ok", "error"]
    message: str = ""
    fields: Dict[str, Any] = {}
