"""Object and morphism files: versioned JSON validated by the pydantic models in ``workbench.models``."""
import json
import logging
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

from pydantic import ValidationError

from hopf.convolution import NoAntipode, antipode_solve
from hopf.errors import AxiomError, FileFormatError, HopfError, UnverifiedMorphism
from hopf.linalg import Matrix, SparseTensor3
from hopf.scalars import FieldSpec, Scalar
from hopf.structures import (
    Algebra,
    AnyObject,
    Bialgebra,
    Coalgebra,
    HopfAlgebra,
    LinearMap,
    check_morphism,
    level_of,
    validated,
)
from workbench.models import MorphismFile, ObjectFile

log = logging.getLogger(__name__)

Loaded = Union[AnyObject, LinearMap]


def _location(error: ValidationError) -> str:
    first = error.errors()[0]
    return ".".join(str(p) for p in first["loc"]) or "<root>"


def _scalar(field: FieldSpec, text: str, where: str) -> Scalar:
    try:
        return field.parse_scalar(text)
    except HopfError as e:
        raise FileFormatError(str(e), where) from e


def _tensor(field: FieldSpec, dim: int, entries: Sequence[Tuple[int, int, int, str]], name: str) -> SparseTensor3:
    values: Dict[Tuple[int, int, int], Scalar] = {}
    for n, (i, j, k, text) in enumerate(entries):
        where = f"{name}[{n}]"
        if not all(0 <= x < dim for x in (i, j, k)):
            raise FileFormatError(f"index out of range for dim {dim} in entry ({i}, {j}, {k})", where)
        if (i, j, k) in values:
            raise FileFormatError(f"duplicate entry ({i}, {j}, {k})", where)
        values[(i, j, k)] = _scalar(field, text, where)
    return SparseTensor3.from_dict(field, (dim, dim, dim), values)


def _vector(field: FieldSpec, dim: int, texts: Optional[List[str]], name: str) -> Tuple[Scalar, ...]:
    if texts is None:
        raise FileFormatError("missing for this level", name)
    if len(texts) != dim:
        raise FileFormatError(f"{len(texts)} entries for dim {dim}", name)
    return tuple(_scalar(field, t, f"{name}[{n}]") for n, t in enumerate(texts))


def _matrix(field: FieldSpec, rows: int, cols: int, texts: List[List[str]], name: str) -> Matrix:
    if len(texts) != rows or any(len(r) != cols for r in texts):
        raise FileFormatError(f"expected a {rows}x{cols} matrix", name)
    return Matrix(field, rows, cols, tuple(
        tuple(_scalar(field, t, f"{name}[{i}][{j}]") for j, t in enumerate(row)) for i, row in enumerate(texts)))


def object_from_model(model: ObjectFile) -> AnyObject:
    try:
        field = FieldSpec.parse(model.field)
    except HopfError as e:
        raise FileFormatError(str(e), "field") from e
    dim = model.dim
    names = tuple(model.basis)
    if names and len(names) != dim:
        raise FileFormatError(f"{len(names)} names for dim {dim}", "basis")
    algebra = coalgebra = None
    if model.level in ("algebra", "bialgebra", "hopf"):
        if model.mult is None:
            raise FileFormatError("missing for this level", "mult")
        algebra = Algebra(field, dim, _tensor(field, dim, model.mult, "mult"),
                          _vector(field, dim, model.unit, "unit"), names)
    if model.level in ("coalgebra", "bialgebra", "hopf"):
        if model.comult is None:
            raise FileFormatError("missing for this level", "comult")
        coalgebra = Coalgebra(field, dim, _tensor(field, dim, model.comult, "comult"),
                              _vector(field, dim, model.counit, "counit"), names)
    if model.level == "algebra":
        return validated(algebra)  # type: ignore[arg-type]
    if model.level == "coalgebra":
        return validated(coalgebra)  # type: ignore[arg-type]
    bialgebra = Bialgebra(algebra, coalgebra)  # type: ignore[arg-type]
    if model.level == "bialgebra":
        return validated(bialgebra)
    if model.antipode is not None:
        return validated(HopfAlgebra(bialgebra, _matrix(field, dim, dim, model.antipode, "antipode")))
    solved = antipode_solve(validated(bialgebra))  # type: ignore[arg-type]
    if isinstance(solved, NoAntipode):
        raise AxiomError(f"level hopf without an antipode, and none exists: {solved.detail}")
    log.info("🔧 antipode solved for a hopf file without one")
    return HopfAlgebra(bialgebra, solved)


def object_to_model(x: AnyObject) -> ObjectFile:
    field = x.field
    fmt = field.format_scalar
    data: Dict[str, object] = {"field": field.tag, "level": level_of(x), "dim": x.dim, "basis": list(x.names)}
    if isinstance(x, (Algebra, Bialgebra, HopfAlgebra)):
        a = x if isinstance(x, Algebra) else x.algebra
        data["mult"] = [(i, j, k, fmt(c)) for i, j, k, c in sorted(a.mult.entries, key=lambda e: e[:3])]
        data["unit"] = [fmt(c) for c in a.unit]
    if isinstance(x, (Coalgebra, Bialgebra, HopfAlgebra)):
        c = x if isinstance(x, Coalgebra) else x.coalgebra
        data["comult"] = [(i, j, k, fmt(s)) for i, j, k, s in sorted(c.comult.entries, key=lambda e: e[:3])]
        data["counit"] = [fmt(s) for s in c.counit]
    if isinstance(x, HopfAlgebra) and x.antipode is not None:
        data["antipode"] = [[fmt(s) for s in row] for row in x.antipode.entries]
    return ObjectFile(**data)  # type: ignore[arg-type]


def dumps(model: Union[ObjectFile, MorphismFile]) -> str:
    return model.model_dump_json(indent=2, exclude_none=True) + "\n"


def _read(path: Path) -> str:
    try:
        return path.read_text(encoding="utf-8")
    except OSError as e:
        raise FileFormatError(f"cannot read file: {e.strerror}", str(path)) from e


def load_object(path: Union[str, Path]) -> AnyObject:
    path = Path(path)
    try:
        model = ObjectFile.model_validate_json(_read(path))
    except ValidationError as e:
        raise FileFormatError(e.errors()[0]["msg"], f"{path}: {_location(e)}") from e
    try:
        return object_from_model(model)
    except FileFormatError as e:
        raise FileFormatError(str(e), str(path)) from e


def load_morphism(path: Union[str, Path]) -> Tuple[LinearMap, str]:
    """Load a morphism file and re-validate it at its declared level."""
    path = Path(path)
    try:
        model = MorphismFile.model_validate_json(_read(path))
    except ValidationError as e:
        raise FileFormatError(e.errors()[0]["msg"], f"{path}: {_location(e)}") from e
    source = load_object(path.parent / model.source)
    target = load_object(path.parent / model.target)
    if source.field != target.field:
        raise FileFormatError("source and target live over different fields", str(path))
    matrix = _matrix(source.field, target.dim, source.dim, model.matrix, "matrix")
    f = LinearMap(source, target, matrix, model.label)
    result = check_morphism(f, model.level)
    if not result.ok:
        log.error(f"❌ {path.name}: not a {model.level} morphism: {result.detail}")
        raise UnverifiedMorphism(f"{path}: not a {model.level} morphism: {result.detail}")
    return f, model.level


def load(path: Union[str, Path]) -> Loaded:
    """Dispatch on the file's ``kind``."""
    path = Path(path)
    try:
        kind = json.loads(_read(path)).get("kind", "object")
    except (json.JSONDecodeError, AttributeError) as e:
        raise FileFormatError("not a JSON object", str(path)) from e
    if kind == "morphism":
        return load_morphism(path)[0]
    return load_object(path)


def save(x: AnyObject, path: Union[str, Path]) -> None:
    Path(path).write_text(dumps(object_to_model(x)), encoding="utf-8")
    log.info(f"💾 saved {level_of(x)} to {path}")


def save_morphism(f: LinearMap, level: str, path: Union[str, Path], source: str, target: str) -> None:
    """Write ``f`` referencing already-saved source/target files (paths relative to ``path``)."""
    fmt = f.field.format_scalar
    model = MorphismFile(level=level, source=source, target=target,  # type: ignore[arg-type]
                         matrix=[[fmt(c) for c in row] for row in f.matrix.entries], label=f.label)
    Path(path).write_text(dumps(model), encoding="utf-8")
    log.info(f"💾 saved {level} morphism to {path}")
