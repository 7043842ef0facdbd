"""Built-in example library: group algebras, Taft/Sweedler, matrix (co)algebras, monoid bialgebras."""
import itertools
import logging
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from hopf.errors import InvalidParameters, UnknownExample, UnverifiedMorphism
from hopf.linalg import Matrix, SparseTensor3, Vector, basis_vector
from hopf.scalars import FieldSpec, Scalar
from hopf.structures import (
    Algebra,
    AnyObject,
    Bialgebra,
    Coalgebra,
    HopfAlgebra,
    LinearMap,
    algebra_of,
    check_morphism,
    dual,
    dual_map,
    op_cop,
    tensor_product,
    validated,
)
from workbench.models import ExampleSpec

log = logging.getLogger(__name__)

Q = FieldSpec.rationals()


def _grouplike_coalgebra(field: FieldSpec, names: Sequence[str]) -> Coalgebra:
    n = len(names)
    comult = SparseTensor3.from_dict(field, (n, n, n), {(i, i, i): field.one for i in range(n)})
    return Coalgebra(field, n, comult, tuple(field.one for _ in range(n)), tuple(names))


def _table_algebra(field: FieldSpec, table: Sequence[Sequence[int]], names: Sequence[str]) -> Algebra:
    n = len(table)
    if any(len(row) != n for row in table):
        raise InvalidParameters("Cayley table must be square")
    identity = next((e for e in range(n) if all(table[e][i] == i and table[i][e] == i for i in range(n))), None)
    if identity is None:
        raise InvalidParameters("table has no identity element")
    mult = SparseTensor3.from_dict(field, (n, n, n), {(i, j, table[i][j]): field.one
                                                       for i in range(n) for j in range(n)})
    return Algebra(field, n, mult, basis_vector(field, n, identity), tuple(names))


def grouplike_coalgebra(m: int, field: FieldSpec = Q) -> Coalgebra:
    """span of m grouplikes g, h, ... (named g0, g1, ... past two)."""
    names = ["g", "h"][:m] if m <= 2 else [f"g{i}" for i in range(m)]
    return validated(_grouplike_coalgebra(field, names))  # type: ignore[return-value]


def group_algebra(table: Sequence[Sequence[int]], names: Optional[Sequence[str]] = None,
                  field: FieldSpec = Q) -> HopfAlgebra:
    """kG from a Cayley table: Delta g = g (x) g, eps g = 1, S g = g^-1."""
    n = len(table)
    names = list(names) if names else [f"g{i}" for i in range(n)]
    algebra = _table_algebra(field, table, names)
    identity = algebra.unit.index(field.one)
    rows = [[field.zero] * n for _ in range(n)]
    for i in range(n):
        inv = next((j for j in range(n) if table[i][j] == identity), None)
        if inv is None:
            raise InvalidParameters(f"element {names[i]} has no inverse; use monoid_bialgebra")
        rows[inv][i] = field.one
    antipode = Matrix(field, n, n, tuple(tuple(r) for r in rows))
    return validated(HopfAlgebra(Bialgebra(algebra, _grouplike_coalgebra(field, names)), antipode))  # type: ignore


def _power_name(symbol: str, k: int) -> str:
    if k == 0:
        return ""
    return symbol if k == 1 else f"{symbol}^{k}"


def cyclic_group_algebra(n: int, field: FieldSpec = Q) -> HopfAlgebra:
    if n < 1:
        raise InvalidParameters("cyclic group order must be positive")
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    names = [_power_name("g", i) or "1" for i in range(n)]
    return group_algebra(table, names, field)


def symmetric_group_algebra(field: FieldSpec = Q) -> HopfAlgebra:
    """kS_3 with basis the permutations of (0, 1, 2) in lexicographic order."""
    perms = list(itertools.permutations(range(3)))
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(p[q[t]] for t in range(3))] for q in perms] for p in perms]
    names = ["1" if p == (0, 1, 2) else "[" + "".join(str(x) for x in p) + "]" for p in perms]
    return group_algebra(table, names, field)


def dual_group_algebra(n: int, field: FieldSpec = Q) -> HopfAlgebra:
    return validated(dual(cyclic_group_algebra(n, field)))  # type: ignore[return-value]


def is_primitive_root(q: Scalar, n: int, field: FieldSpec) -> bool:
    if q ** n != field.one:
        return False
    return all(q ** k != field.one for k in range(1, n))


def taft(n: int, q: object, field: FieldSpec = Q) -> HopfAlgebra:
    """Taft algebra T_n(q): g^n = 1, x^n = 0, xg = q gx, Delta x = x (x) 1 + g (x) x.

    Basis g^a x^b at index b*n + a.
    """
    if n < 2:
        raise InvalidParameters("Taft algebras need n >= 2")
    qq = field(q)  # type: ignore[arg-type]
    if not is_primitive_root(qq, n, field):
        raise InvalidParameters(f"q = {q} is not a primitive {n}-th root of unity in {field}")
    dim = n * n

    def idx(a: int, b: int) -> int:
        return b * n + a

    names = [(_power_name("g", a) + _power_name("x", b)) or "1" for b in range(n) for a in range(n)]
    mult: Dict[Tuple[int, int, int], Scalar] = {}
    for b in range(n):
        for a in range(n):
            for d in range(n):
                for c in range(n):
                    if b + d < n:
                        mult[(idx(a, b), idx(c, d), idx((a + c) % n, b + d))] = qq ** (b * c)
    algebra = Algebra(field, dim, SparseTensor3.from_dict(field, (dim, dim, dim), mult),
                      basis_vector(field, dim, 0), tuple(names))
    square = tensor_product(algebra, algebra)
    g, x, one = basis_vector(field, dim, idx(1, 0)), basis_vector(field, dim, idx(0, 1)), algebra.unit

    def tens(u: Vector, v: Vector) -> Vector:
        return tuple(p * r for p in u for r in v)

    delta_g = tens(g, g)
    delta_x = tuple(p + r for p, r in zip(tens(x, one), tens(g, x)))
    comult: Dict[Tuple[int, int, int], Scalar] = {}
    for b in range(n):
        for a in range(n):
            value = tens(one, one)
            for _ in range(a):
                value = square.multiply(value, delta_g)  # type: ignore[union-attr]
            for _ in range(b):
                value = square.multiply(value, delta_x)  # type: ignore[union-attr]
            for flat, c in enumerate(value):
                if c:
                    comult[(idx(a, b), flat // dim, flat % dim)] = c
    counit = tuple(field.one if i < n else field.zero for i in range(dim))
    coalgebra = Coalgebra(field, dim, SparseTensor3.from_dict(field, (dim, dim, dim), comult), counit, tuple(names))

    s_g = basis_vector(field, dim, idx(n - 1, 0))
    s_x = tuple(-c for c in algebra.multiply(s_g, x))
    columns: List[Vector] = []
    for b in range(n):
        for a in range(n):
            value = one
            for _ in range(b):
                value = algebra.multiply(value, s_x)
            for _ in range(a):
                value = algebra.multiply(value, s_g)
            columns.append(value)
    antipode = Matrix.from_columns(field, columns, dim)
    return validated(HopfAlgebra(Bialgebra(algebra, coalgebra), antipode))  # type: ignore[return-value]


def sweedler(field: FieldSpec = Q) -> HopfAlgebra:
    """Sweedler's 4-dimensional Hopf algebra, basis 1, g, x, gx."""
    return taft(2, -1, field)


def _matrix_unit_names(n: int) -> Tuple[str, ...]:
    return tuple(f"e{i + 1}{j + 1}" for i in range(n) for j in range(n))


def matrix_algebra(n: int, field: FieldSpec = Q) -> Algebra:
    dim = n * n
    mult = {(i * n + j, j * n + l, i * n + l): field.one for i in range(n) for j in range(n) for l in range(n)}
    unit = tuple(field.one if (k // n) == (k % n) else field.zero for k in range(dim))
    return validated(Algebra(field, dim, SparseTensor3.from_dict(field, (dim,) * 3, mult), unit,  # type: ignore
                             _matrix_unit_names(n)))


def matrix_coalgebra(n: int, field: FieldSpec = Q) -> Coalgebra:
    """M_n(k)^*: Delta(e_ij) = sum_l e_il (x) e_lj, eps(e_ij) = delta_ij."""
    dim = n * n
    comult = {(i * n + j, i * n + l, l * n + j): field.one for i in range(n) for j in range(n) for l in range(n)}
    counit = tuple(field.one if (k // n) == (k % n) else field.zero for k in range(dim))
    return validated(Coalgebra(field, dim, SparseTensor3.from_dict(field, (dim,) * 3, comult), counit,  # type: ignore
                               _matrix_unit_names(n)))


def diagonal_algebra(n: int, field: FieldSpec = Q) -> Algebra:
    """k^n with basis the primitive idempotents p1..pn."""
    mult = {(i, i, i): field.one for i in range(n)}
    return validated(Algebra(field, n, SparseTensor3.from_dict(field, (n,) * 3, mult),  # type: ignore
                             tuple(field.one for _ in range(n)), tuple(f"p{i + 1}" for i in range(n))))


def monoid_bialgebra(table: Sequence[Sequence[int]], names: Optional[Sequence[str]] = None,
                     field: FieldSpec = Q) -> Bialgebra:
    """k[M] for a finite monoid given by its multiplication table."""
    names = list(names) if names else [f"m{i}" for i in range(len(table))]
    return validated(Bialgebra(_table_algebra(field, table, names), _grouplike_coalgebra(field, names)))  # type: ignore


def idempotent_monoid(field: FieldSpec = Q) -> Bialgebra:
    """k[{1, z}] with z^2 = z."""
    return monoid_bialgebra([[0, 1], [1, 1]], ["1", "z"], field)


@dataclass(frozen=True)
class CappedMonoid:
    """Grouplikes 1, x, ..., x^cap of k[N] with the products that stay below the cap."""

    coalgebra: Coalgebra
    products: Tuple[Tuple[int, int, int], ...]
    unit: int
    cap: int

    @property
    def field(self) -> FieldSpec:
        return self.coalgebra.field

    @property
    def dim(self) -> int:
        return self.coalgebra.dim

    @property
    def names(self) -> Tuple[str, ...]:
        return self.coalgebra.names


def nat_monoid_coalgebra_cap(cap: int, field: FieldSpec = Q) -> CappedMonoid:
    if cap < 1:
        raise InvalidParameters("the N-monoid cap must be at least 1")
    names = ["1"] + [_power_name("x", k) for k in range(1, cap + 1)]
    products = tuple((a, b, a + b) for a in range(cap + 1) for b in range(cap + 1) if a + b <= cap)
    return CappedMonoid(validated(_grouplike_coalgebra(field, names)), products, 0, cap)  # type: ignore[arg-type]


def trivial_hopf(field: FieldSpec = Q) -> HopfAlgebra:
    """The ground field k as a 1-dimensional Hopf algebra."""
    return cyclic_group_algebra(1, field)


# ---------------------------------------------------------------- maps

def _map(source: AnyObject, target: AnyObject, images: Sequence[int], label: str) -> LinearMap:
    """Basis-to-basis map e_i -> e_{images[i]}."""
    field = source.field
    rows = [[field.zero] * source.dim for _ in range(target.dim)]
    for i, t in enumerate(images):
        rows[t][i] = field.one
    return LinearMap(source, target, Matrix(field, target.dim, source.dim, tuple(tuple(r) for r in rows)), label)


def cyclic_projection(n: int, m: int, field: FieldSpec = Q) -> LinearMap:
    """kZ_n ->> kZ_m, g -> g (m divides n)."""
    if m <= 0 or n % m:
        raise InvalidParameters(f"{m} does not divide {n}")
    return _map(cyclic_group_algebra(n, field), cyclic_group_algebra(m, field), [i % m for i in range(n)],
                f"kZ{n}->>kZ{m}")


def cyclic_inclusion(m: int, n: int, field: FieldSpec = Q) -> LinearMap:
    """kZ_m -> kZ_n, g -> g^(n/m)."""
    if m <= 0 or n % m:
        raise InvalidParameters(f"{m} does not divide {n}")
    step = n // m
    return _map(cyclic_group_algebra(m, field), cyclic_group_algebra(n, field), [i * step for i in range(m)],
                f"kZ{m}->kZ{n}")


def antipode_map(h: HopfAlgebra) -> LinearMap:
    """S as a map H -> H^{op,cop}."""
    if h.antipode is None:
        raise InvalidParameters("antipode_map needs an attached antipode")
    return LinearMap(h, op_cop(h), h.antipode, "S")


def unit_map(h: HopfAlgebra) -> LinearMap:
    k = trivial_hopf(h.field)
    return LinearMap(k, h, Matrix.from_columns(h.field, [h.algebra.unit], h.dim), "eta")


def counit_map(h: HopfAlgebra) -> LinearMap:
    k = trivial_hopf(h.field)
    return LinearMap(h, k, Matrix.from_rows(h.field, [list(h.coalgebra.counit)]), "eps")


def subgroup_inclusion(order: int, field: FieldSpec = Q) -> LinearMap:
    """kZ_2 (transposition [102]) or kZ_3 (3-cycle [120]) inside kS_3."""
    s3 = symmetric_group_algebra(field)
    if order == 2:
        return _map(cyclic_group_algebra(2, field), s3, [0, s3.names.index("[102]")], "kZ2->kS3")
    if order == 3:
        c = s3.names.index("[120]")
        c2 = s3.names.index("[201]")
        return _map(cyclic_group_algebra(3, field), s3, [0, c, c2], "kZ3->kS3")
    raise InvalidParameters("S_3 has cyclic subgroups of order 2 and 3 only")


def grouplikes_into_sweedler(field: FieldSpec = Q) -> LinearMap:
    return _map(cyclic_group_algebra(2, field), sweedler(field), [0, 1], "kZ2->H4")


def idempotent_into_diagonal(field: FieldSpec = Q) -> LinearMap:
    """k[z]/(z^2 - z) -> k x k x k, 1 -> (1,1,1), z -> (1,1,0)."""
    source = algebra_of(idempotent_monoid(field))
    target = diagonal_algebra(3, field)
    matrix = Matrix.from_rows(field, [[1, 1], [1, 1], [1, 0]])
    return LinearMap(source, target, matrix, "k[z]->k^3")


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    level: str
    morphism: LinearMap


def morphism_corpus(field: FieldSpec = Q) -> List[CorpusEntry]:
    """Named morphisms with a declared level; each is checked at that level before it is returned."""
    entries = [
        CorpusEntry("kz4_onto_kz2", "hopf", cyclic_projection(4, 2, field)),
        CorpusEntry("kz2_into_kz4", "hopf", cyclic_inclusion(2, 4, field)),
        CorpusEntry("kz6_onto_kz3", "hopf", cyclic_projection(6, 3, field)),
        CorpusEntry("id_kz3", "hopf", _map(cyclic_group_algebra(3, field), cyclic_group_algebra(3, field),
                                           [0, 1, 2], "id")),
        CorpusEntry("antipode_kz3", "hopf", antipode_map(cyclic_group_algebra(3, field))),
        CorpusEntry("antipode_s3", "hopf", antipode_map(symmetric_group_algebra(field))),
        CorpusEntry("kz2_into_s3", "hopf", subgroup_inclusion(2, field)),
        CorpusEntry("kz3_into_s3", "hopf", subgroup_inclusion(3, field)),
        CorpusEntry("idempotent_into_k3", "algebra", idempotent_into_diagonal(field)),
    ]
    if field.characteristic != 2:
        h4 = sweedler(field)
        entries += [
            CorpusEntry("antipode_sweedler", "hopf", antipode_map(h4)),
            CorpusEntry("antipode_dual_sweedler", "hopf", antipode_map(dual(h4))),  # type: ignore[arg-type]
            CorpusEntry("unit_sweedler", "hopf", unit_map(h4)),
            CorpusEntry("counit_sweedler", "hopf", counit_map(h4)),
            CorpusEntry("kz2_into_sweedler", "hopf", grouplikes_into_sweedler(field)),
        ]
    duals = []
    for entry in entries:
        if entry.name in ("kz4_onto_kz2", "kz2_into_kz4", "idempotent_into_k3"):
            level = "coalgebra" if entry.level == "algebra" else entry.level
            duals.append(CorpusEntry(f"dual_{entry.name}", level, dual_map(entry.morphism)))
    for entry in entries + duals:
        result = check_morphism(entry.morphism, entry.level)
        if not result.ok:
            raise UnverifiedMorphism(f"corpus entry {entry.name}: {result.detail}")
    return entries + duals


def corpus_entry(name: str, field: FieldSpec = Q) -> CorpusEntry:
    for entry in morphism_corpus(field):
        if entry.name == name:
            return entry
    raise UnknownExample(f"no corpus morphism named '{name}'")


# ---------------------------------------------------------------- ExampleSpec dispatch

_BUILDERS: Dict[str, Tuple[Tuple[str, ...], Callable[..., Any]]] = {
    "cyclic": (("n",), lambda f, n: cyclic_group_algebra(int(n), f)),
    "group_algebra": (("table", "names"), lambda f, table, names=None: group_algebra(table, names, f)),
    "symmetric3": ((), lambda f: symmetric_group_algebra(f)),
    "dual_group_algebra": (("n",), lambda f, n: dual_group_algebra(int(n), f)),
    "sweedler": ((), lambda f: sweedler(f)),
    "taft": (("n", "q"), lambda f, n, q: taft(int(n), int(q), f)),
    "matrix_coalgebra": (("n",), lambda f, n: matrix_coalgebra(int(n), f)),
    "matrix_algebra": (("n",), lambda f, n: matrix_algebra(int(n), f)),
    "diagonal": (("n",), lambda f, n: diagonal_algebra(int(n), f)),
    "monoid_bialgebra": (("table", "names"), lambda f, table, names=None: monoid_bialgebra(table, names, f)),
    "idempotent_monoid": ((), lambda f: idempotent_monoid(f)),
    "nat_monoid_cap": (("cap",), lambda f, cap: nat_monoid_coalgebra_cap(int(cap), f)),
    "grouplikes": (("m",), lambda f, m: grouplike_coalgebra(int(m), f)),
    "trivial": ((), lambda f: trivial_hopf(f)),
}


def example_names() -> List[str]:
    return sorted(_BUILDERS)


def parse_example(text: str) -> ExampleSpec:
    """``name[:p1[:p2...]]`` with positional parameters, e.g. ``taft:3:3`` or ``cyclic:4``."""
    name, *args = text.split(":")
    if name not in _BUILDERS:
        raise UnknownExample(f"unknown example '{name}' (known: {', '.join(example_names())})")
    param_names = _BUILDERS[name][0]
    if len(args) > len(param_names):
        raise InvalidParameters(f"example '{name}' takes parameters {list(param_names)}")
    return ExampleSpec(name=name, params=dict(zip(param_names, args)))


def make_example(spec: ExampleSpec, field: FieldSpec = Q) -> Any:
    if spec.name not in _BUILDERS:
        raise UnknownExample(f"unknown example '{spec.name}'")
    _, builder = _BUILDERS[spec.name]
    log.info(f"🔧 building example {spec.name} {spec.params} over {field}")
    try:
        return builder(field, **spec.params)
    except TypeError as e:
        raise InvalidParameters(f"bad parameters for '{spec.name}': {e}") from e
