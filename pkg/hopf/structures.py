"""Finite-dimensional algebras, coalgebras, bialgebras and Hopf algebras by structure constants.

Conventions:
  - e_i e_j = sum_k mult[i, j, k] e_k
  - Delta(e_i) = sum_{j,k} comult[i, j, k] e_j (x) e_k
  - the dual of an algebra reads comult[k, i, j] = mult[i, j, k] (coordinate dual basis)
"""
import logging
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple, Union

from hopf.errors import AxiomError, DimensionMismatch, HopfError
from hopf.linalg import (
    Matrix,
    SparseTensor3,
    Vector,
    basis_vector,
    in_span,
    inverse,
    kron,
    zero_vector,
)
from hopf.scalars import FieldSpec, Scalar
from hopf.verdicts import CheckResult

log = logging.getLogger(__name__)

Sparse = Dict[int, Scalar]


def _add_into(acc: Dict, key: object, c: Scalar) -> None:
    v = acc.get(key)
    v = c if v is None else v + c
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


def _dense(field: FieldSpec, sparse: Dict[int, Scalar], n: int) -> Vector:
    z = field.zero
    return tuple(sparse.get(i, z) for i in range(n))


def _default_names(dim: int) -> Tuple[str, ...]:
    return tuple(f"e{i}" for i in range(dim))


@dataclass(frozen=True)
class Algebra:
    field: FieldSpec
    dim: int
    mult: SparseTensor3
    unit: Vector
    names: Tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.dim <= 0:
            raise DimensionMismatch("an algebra needs positive dimension")
        if self.mult.dims != (self.dim, self.dim, self.dim) or len(self.unit) != self.dim:
            raise DimensionMismatch(f"multiplication/unit shapes do not match dimension {self.dim}")
        if not self.names:
            object.__setattr__(self, "names", _default_names(self.dim))
        elif len(self.names) != self.dim:
            raise DimensionMismatch(f"{len(self.names)} basis names for dimension {self.dim}")

    @cached_property
    def _table(self) -> Dict[Tuple[int, int], List[Tuple[int, Scalar]]]:
        return self.mult.by_pair

    def multiply(self, u: Sequence[Scalar], v: Sequence[Scalar]) -> Vector:
        acc: Sparse = {}
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if not b:
                    continue
                for k, c in self._table.get((i, j), ()):
                    _add_into(acc, k, a * b * c)
        return _dense(self.field, acc, self.dim)

    def basis_product(self, i: int, j: int) -> Vector:
        acc = {k: c for k, c in self._table.get((i, j), ())}
        return _dense(self.field, acc, self.dim)

    def basis(self, i: int) -> Vector:
        return basis_vector(self.field, self.dim, i)


@dataclass(frozen=True)
class Coalgebra:
    field: FieldSpec
    dim: int
    comult: SparseTensor3
    counit: Vector
    names: Tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.dim <= 0:
            raise DimensionMismatch("a coalgebra needs positive dimension")
        if self.comult.dims != (self.dim, self.dim, self.dim) or len(self.counit) != self.dim:
            raise DimensionMismatch(f"comultiplication/counit shapes do not match dimension {self.dim}")
        if not self.names:
            object.__setattr__(self, "names", _default_names(self.dim))
        elif len(self.names) != self.dim:
            raise DimensionMismatch(f"{len(self.names)} basis names for dimension {self.dim}")

    @cached_property
    def _table(self) -> Dict[int, List[Tuple[int, int, Scalar]]]:
        return self.comult.by_first

    def coproduct_basis(self, i: int) -> List[Tuple[int, int, Scalar]]:
        return self._table.get(i, [])

    def coproduct(self, v: Sequence[Scalar]) -> Vector:
        """Delta(v) as a flat vector of length dim**2."""
        acc: Sparse = {}
        for i, a in enumerate(v):
            if not a:
                continue
            for j, k, c in self._table.get(i, ()):
                _add_into(acc, j * self.dim + k, a * c)
        return _dense(self.field, acc, self.dim * self.dim)

    def apply_counit(self, v: Sequence[Scalar]) -> Scalar:
        acc = self.field.zero
        for a, e in zip(v, self.counit):
            if a and e:
                acc = acc + a * e
        return acc

    def basis(self, i: int) -> Vector:
        return basis_vector(self.field, self.dim, i)

    @cached_property
    def comult_matrix(self) -> Matrix:
        return Matrix.from_columns(self.field, [self.coproduct(self.basis(i)) for i in range(self.dim)],
                                   self.dim * self.dim)


@dataclass(frozen=True)
class Bialgebra:
    algebra: Algebra
    coalgebra: Coalgebra

    def __post_init__(self) -> None:
        if self.algebra.dim != self.coalgebra.dim or self.algebra.field != self.coalgebra.field:
            raise DimensionMismatch("algebra and coalgebra must share the based space and field")

    @property
    def field(self) -> FieldSpec:
        return self.algebra.field

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def names(self) -> Tuple[str, ...]:
        return self.algebra.names


@dataclass(frozen=True)
class HopfAlgebra:
    bialgebra: Bialgebra
    antipode: Optional[Matrix] = None

    def __post_init__(self) -> None:
        if self.antipode is not None and (self.antipode.rows, self.antipode.cols) != (self.dim, self.dim):
            raise DimensionMismatch(f"antipode must be {self.dim}x{self.dim}")

    @property
    def algebra(self) -> Algebra:
        return self.bialgebra.algebra

    @property
    def coalgebra(self) -> Coalgebra:
        return self.bialgebra.coalgebra

    @property
    def field(self) -> FieldSpec:
        return self.bialgebra.field

    @property
    def dim(self) -> int:
        return self.bialgebra.dim

    @property
    def names(self) -> Tuple[str, ...]:
        return self.bialgebra.names

    def with_antipode(self, antipode: Optional[Matrix]) -> "HopfAlgebra":
        return HopfAlgebra(self.bialgebra, antipode)


AnyObject = Union[Algebra, Coalgebra, Bialgebra, HopfAlgebra]


def level_of(x: AnyObject) -> str:
    if isinstance(x, HopfAlgebra):
        return "hopf"
    if isinstance(x, Bialgebra):
        return "bialgebra"
    if isinstance(x, Coalgebra):
        return "coalgebra"
    return "algebra"


def algebra_of(x: AnyObject) -> Algebra:
    if isinstance(x, Algebra):
        return x
    if isinstance(x, (Bialgebra, HopfAlgebra)):
        return x.algebra
    raise HopfError(f"a {level_of(x)} has no multiplication")


def coalgebra_of(x: AnyObject) -> Coalgebra:
    if isinstance(x, Coalgebra):
        return x
    if isinstance(x, (Bialgebra, HopfAlgebra)):
        return x.coalgebra
    raise HopfError(f"a {level_of(x)} has no comultiplication")


def bialgebra_of(x: AnyObject) -> Bialgebra:
    if isinstance(x, Bialgebra):
        return x
    if isinstance(x, HopfAlgebra):
        return x.bialgebra
    raise HopfError(f"a {level_of(x)} is not a bialgebra")


# ---------------------------------------------------------------- axiom checks

def check_algebra(a: Algebra) -> CheckResult:
    for i in range(a.dim):
        e = a.basis(i)
        if a.multiply(a.unit, e) != e or a.multiply(e, a.unit) != e:
            return CheckResult.no(f"unit law fails at {a.names[i]}", ("unit", i))
    products = [[a.basis_product(i, j) for j in range(a.dim)] for i in range(a.dim)]
    for i in range(a.dim):
        for j in range(a.dim):
            for k in range(a.dim):
                left = a.multiply(products[i][j], a.basis(k))
                right = a.multiply(a.basis(i), products[j][k])
                if left != right:
                    return CheckResult.no(
                        f"associativity fails at ({a.names[i]}, {a.names[j]}, {a.names[k]})", ("assoc", i, j, k))
    return CheckResult.yes("associative and unital")


def _coassoc_sides(c: Coalgebra, i: int) -> Tuple[Dict, Dict]:
    left: Dict = {}
    right: Dict = {}
    for j, k, x in c.coproduct_basis(i):
        for a, b, y in c.coproduct_basis(j):
            _add_into(left, (a, b, k), x * y)
        for a, b, y in c.coproduct_basis(k):
            _add_into(right, (j, a, b), x * y)
    return left, right


def check_coalgebra(c: Coalgebra) -> CheckResult:
    for i in range(c.dim):
        left: Sparse = {}
        right: Sparse = {}
        for j, k, x in c.coproduct_basis(i):
            if c.counit[j]:
                _add_into(left, k, c.counit[j] * x)
            if c.counit[k]:
                _add_into(right, j, c.counit[k] * x)
        expected = {i: c.field.one}
        if left != expected or right != expected:
            return CheckResult.no(f"counit law fails at {c.names[i]}", ("counit", i))
    for i in range(c.dim):
        left_side, right_side = _coassoc_sides(c, i)
        if left_side != right_side:
            return CheckResult.no(f"coassociativity fails at {c.names[i]}", ("coassoc", i))
    return CheckResult.yes("coassociative and counital")


def _tensor_square_product(a: Algebra, x: Dict[Tuple[int, int], Scalar],
                           y: Dict[Tuple[int, int], Scalar]) -> Dict[Tuple[int, int], Scalar]:
    out: Dict = {}
    for (p, q), s in x.items():
        for (r, t), u in y.items():
            left = a._table.get((p, r), ())
            if not left:
                continue
            right = a._table.get((q, t), ())
            for k1, c1 in left:
                for k2, c2 in right:
                    _add_into(out, (k1, k2), s * u * c1 * c2)
    return out


def _coproduct_pairs(c: Coalgebra, i: int) -> Dict[Tuple[int, int], Scalar]:
    return {(j, k): x for j, k, x in c.coproduct_basis(i)}


def _coproduct_of_vector(c: Coalgebra, v: Sequence[Scalar]) -> Dict[Tuple[int, int], Scalar]:
    out: Dict = {}
    for i, a in enumerate(v):
        if a:
            for j, k, x in c.coproduct_basis(i):
                _add_into(out, (j, k), a * x)
    return out


def check_bialgebra(b: Bialgebra) -> CheckResult:
    for result in (check_algebra(b.algebra), check_coalgebra(b.coalgebra)):
        if not result.ok:
            return result
    a, c = b.algebra, b.coalgebra
    one = b.field.one
    if c.apply_counit(a.unit) != one:
        return CheckResult.no("counit is not unital: eps(1) != 1", ("counit-unit",))
    unit_sq = {(i, j): x * y for i, x in enumerate(a.unit) if x for j, y in enumerate(a.unit) if y}
    if _coproduct_of_vector(c, a.unit) != unit_sq:
        return CheckResult.no("Delta(1) != 1 (x) 1", ("coproduct-unit",))
    for i in range(b.dim):
        for j in range(b.dim):
            prod = a.basis_product(i, j)
            if c.apply_counit(prod) != c.counit[i] * c.counit[j]:
                return CheckResult.no(f"counit not multiplicative at ({b.names[i]}, {b.names[j]})", ("counit-mult", i, j))
            lhs = _coproduct_of_vector(c, prod)
            rhs = _tensor_square_product(a, _coproduct_pairs(c, i), _coproduct_pairs(c, j))
            if lhs != rhs:
                return CheckResult.no(
                    f"Delta not multiplicative at ({b.names[i]}, {b.names[j]})", ("coproduct-mult", i, j))
    return CheckResult.yes("bialgebra axioms hold")


def _antipode_sides(h: HopfAlgebra, s: Matrix, i: int) -> Tuple[Vector, Vector]:
    a = h.algebra
    z = zero_vector(h.field, h.dim)
    left, right = z, z
    for j, k, x in h.coalgebra.coproduct_basis(i):
        lt = a.multiply(s.column(j), a.basis(k))
        rt = a.multiply(a.basis(j), s.column(k))
        left = tuple(p + x * q for p, q in zip(left, lt))
        right = tuple(p + x * q for p, q in zip(right, rt))
    return left, right


def check_hopf(h: HopfAlgebra) -> CheckResult:
    if h.antipode is None:
        raise AxiomError("check_hopf: no antipode attached (run antipode_solve first)")
    result = check_bialgebra(h.bialgebra)
    if not result.ok:
        return result
    for i in range(h.dim):
        expected = tuple(h.coalgebra.counit[i] * u for u in h.algebra.unit)
        left, right = _antipode_sides(h, h.antipode, i)
        if left != expected:
            return CheckResult.no(f"m(S (x) id)Delta != eta eps at {h.names[i]}", ("antipode-left", i))
        if right != expected:
            return CheckResult.no(f"m(id (x) S)Delta != eta eps at {h.names[i]}", ("antipode-right", i))
    return CheckResult.yes("Hopf algebra axioms hold")


def check(x: AnyObject) -> CheckResult:
    if isinstance(x, HopfAlgebra):
        return check_hopf(x)
    if isinstance(x, Bialgebra):
        return check_bialgebra(x)
    if isinstance(x, Coalgebra):
        return check_coalgebra(x)
    return check_algebra(x)


def validated(x: AnyObject) -> AnyObject:
    """Return ``x`` unchanged, raising ``AxiomError`` if it fails its level's axioms."""
    result = check(x)
    if not result.ok:
        log.error(f"❌ {level_of(x)} rejected: {result.detail}")
        raise AxiomError(f"{level_of(x)} fails its axioms: {result.detail}", result)
    return x


# ---------------------------------------------------------------- op / cop / dual

def _opposite_algebra(a: Algebra) -> Algebra:
    return Algebra(a.field, a.dim, a.mult.permuted((1, 0, 2)), a.unit, a.names)


def _coopposite_coalgebra(c: Coalgebra) -> Coalgebra:
    return Coalgebra(c.field, c.dim, c.comult.permuted((0, 2, 1)), c.counit, c.names)


def _inverse_antipode(h: HopfAlgebra, role: str) -> Optional[Matrix]:
    if h.antipode is None:
        log.warning(f"⚠️ {role}: source has no antipode, result left without one")
        return None
    s_inv = inverse(h.antipode)
    if s_inv is None:
        log.warning(f"⚠️ {role}: antipode is not invertible, result left without antipode")
    return s_inv


def opposite(x: AnyObject) -> AnyObject:
    """Opposite multiplication. A Hopf algebra's opposite carries S^-1 (absent when S is singular)."""
    if isinstance(x, Algebra):
        return _opposite_algebra(x)
    if isinstance(x, Bialgebra):
        return Bialgebra(_opposite_algebra(x.algebra), x.coalgebra)
    if isinstance(x, HopfAlgebra):
        return HopfAlgebra(Bialgebra(_opposite_algebra(x.algebra), x.coalgebra), _inverse_antipode(x, "opposite"))
    raise HopfError("a coalgebra has no opposite multiplication; use coopposite")


def coopposite(x: AnyObject) -> AnyObject:
    if isinstance(x, Coalgebra):
        return _coopposite_coalgebra(x)
    if isinstance(x, Bialgebra):
        return Bialgebra(x.algebra, _coopposite_coalgebra(x.coalgebra))
    if isinstance(x, HopfAlgebra):
        return HopfAlgebra(Bialgebra(x.algebra, _coopposite_coalgebra(x.coalgebra)),
                           _inverse_antipode(x, "coopposite"))
    raise HopfError("an algebra has no coopposite comultiplication; use opposite")


def op_cop(h: Union[Bialgebra, HopfAlgebra]) -> Union[Bialgebra, HopfAlgebra]:
    """H^{op,cop}; its antipode is S itself."""
    if isinstance(h, Bialgebra):
        return Bialgebra(_opposite_algebra(h.algebra), _coopposite_coalgebra(h.coalgebra))
    if h.antipode is None:
        log.warning("⚠️ op_cop: source has no antipode, result left without one")
    return HopfAlgebra(Bialgebra(_opposite_algebra(h.algebra), _coopposite_coalgebra(h.coalgebra)), h.antipode)


def _dual_names(names: Tuple[str, ...]) -> Tuple[str, ...]:
    out = []
    for n in names:
        out.append(n[:-1] if n.endswith("*") else f"{n}*")
    return tuple(out)


def dual(x: AnyObject) -> AnyObject:
    """Linear dual in the coordinate dual basis; dual(dual(x)) has x's structure constants."""
    if isinstance(x, Algebra):
        return Coalgebra(x.field, x.dim, x.mult.permuted((2, 0, 1)), x.unit, _dual_names(x.names))
    if isinstance(x, Coalgebra):
        return Algebra(x.field, x.dim, x.comult.permuted((1, 2, 0)), x.counit, _dual_names(x.names))
    if isinstance(x, Bialgebra):
        return Bialgebra(dual(x.coalgebra), dual(x.algebra))  # type: ignore[arg-type]
    antipode = x.antipode.transpose() if x.antipode is not None else None
    return HopfAlgebra(dual(x.bialgebra), antipode)  # type: ignore[arg-type]


def tensor_product(x: AnyObject, y: AnyObject) -> AnyObject:
    """x (x) y with the row-major basis e_i (x) f_j -> i * dim(y) + j."""
    if level_of(x) != level_of(y):
        raise HopfError(f"tensor product of a {level_of(x)} and a {level_of(y)}")
    if x.field != y.field:
        raise HopfError("tensor product across different fields")
    n, m = x.dim, y.dim
    names = tuple(f"{p}⊗{q}" for p in x.names for q in y.names)
    if isinstance(x, Algebra):
        mult: Dict = {}
        for (i, k), first in x.mult.by_pair.items():
            for (j, l), second in y.mult.by_pair.items():
                for p, c1 in first:
                    for q, c2 in second:
                        _add_into(mult, (i * m + j, k * m + l, p * m + q), c1 * c2)
        unit = tuple(u * v for u in x.unit for v in y.unit)
        return Algebra(x.field, n * m, SparseTensor3.from_dict(x.field, (n * m,) * 3, mult), unit, names)
    if isinstance(x, Coalgebra):
        comult: Dict = {}
        for i, first in x.comult.by_first.items():
            for j, second in y.comult.by_first.items():
                for a, b, c1 in first:
                    for c, d, c2 in second:
                        _add_into(comult, (i * m + j, a * m + c, b * m + d), c1 * c2)
        counit = tuple(u * v for u in x.counit for v in y.counit)
        return Coalgebra(x.field, n * m, SparseTensor3.from_dict(x.field, (n * m,) * 3, comult), counit, names)
    if isinstance(x, Bialgebra):
        return Bialgebra(tensor_product(x.algebra, y.algebra), tensor_product(x.coalgebra, y.coalgebra))  # type: ignore
    antipode = None
    if x.antipode is not None and y.antipode is not None:
        antipode = kron(x.antipode, y.antipode)
    return HopfAlgebra(tensor_product(x.bialgebra, y.bialgebra), antipode)  # type: ignore[arg-type]


def is_subcoalgebra(c: Coalgebra, basis: Matrix) -> bool:
    square = kron(basis, basis)
    return all(in_span(square, c.coproduct(basis.column(j))) for j in range(basis.cols))


def is_subalgebra(a: Algebra, basis: Matrix) -> bool:
    if not in_span(basis, a.unit):
        return False
    cols = basis.columns()
    return all(in_span(basis, a.multiply(u, v)) for u in cols for v in cols)


# ---------------------------------------------------------------- morphisms

@dataclass(frozen=True)
class LinearMap:
    source: AnyObject
    target: AnyObject
    matrix: Matrix
    label: str = dc_field(default="", compare=False)

    def __post_init__(self) -> None:
        if (self.matrix.rows, self.matrix.cols) != (self.target.dim, self.source.dim):
            raise DimensionMismatch(
                f"map matrix is {self.matrix.rows}x{self.matrix.cols}, "
                f"expected {self.target.dim}x{self.source.dim}")

    @property
    def field(self) -> FieldSpec:
        return self.matrix.field

    def __call__(self, v: Sequence[Scalar]) -> Vector:
        return self.matrix.apply(v)


def identity_map(x: AnyObject) -> LinearMap:
    return LinearMap(x, x, Matrix.identity(x.field, x.dim), "id")


def is_algebra_morphism(f: LinearMap) -> CheckResult:
    a, b = algebra_of(f.source), algebra_of(f.target)
    if f(a.unit) != b.unit:
        return CheckResult.no("f(1) != 1", ("unit",))
    images = [f.matrix.column(i) for i in range(a.dim)]
    for i in range(a.dim):
        for j in range(a.dim):
            if f(a.basis_product(i, j)) != b.multiply(images[i], images[j]):
                return CheckResult.no(f"f({a.names[i]}·{a.names[j]}) != f({a.names[i]})f({a.names[j]})", ("mult", i, j))
    return CheckResult.yes("algebra morphism")


def is_coalgebra_morphism(f: LinearMap) -> CheckResult:
    c, d = coalgebra_of(f.source), coalgebra_of(f.target)
    square = kron(f.matrix, f.matrix)
    for i in range(c.dim):
        image = f.matrix.column(i)
        if d.apply_counit(image) != c.counit[i]:
            return CheckResult.no(f"eps(f({c.names[i]})) != eps({c.names[i]})", ("counit", i))
        if d.coproduct(image) != square.apply(c.coproduct(c.basis(i))):
            return CheckResult.no(f"Delta f != (f (x) f) Delta at {c.names[i]}", ("coproduct", i))
    return CheckResult.yes("coalgebra morphism")


def is_bialgebra_morphism(f: LinearMap) -> CheckResult:
    result = is_algebra_morphism(f)
    if not result.ok:
        return result
    result = is_coalgebra_morphism(f)
    if not result.ok:
        return result
    return CheckResult.yes("bialgebra morphism")


def is_hopf_morphism(f: LinearMap) -> CheckResult:
    result = is_bialgebra_morphism(f)
    if not result.ok:
        return result
    if not isinstance(f.source, HopfAlgebra) or not isinstance(f.target, HopfAlgebra):
        raise HopfError("is_hopf_morphism needs Hopf algebras on both ends")
    if f.source.antipode is None or f.target.antipode is None:
        raise AxiomError("is_hopf_morphism: both ends need an antipode")
    left = f.matrix @ f.source.antipode
    right = f.target.antipode @ f.matrix
    if left != right:
        bad = next(j for j in range(left.cols) if left.column(j) != right.column(j))
        return CheckResult.no(f"f S != S' f at {f.source.names[bad]}", ("antipode", bad))
    return CheckResult.yes("Hopf morphism")


def check_morphism(f: LinearMap, level: str) -> CheckResult:
    return {
        "algebra": is_algebra_morphism,
        "coalgebra": is_coalgebra_morphism,
        "bialgebra": is_bialgebra_morphism,
        "hopf": is_hopf_morphism,
    }[level](f)


def dual_map(f: LinearMap) -> LinearMap:
    """f^*: target^* -> source^*, the transpose in the dual bases."""
    return LinearMap(dual(f.target), dual(f.source), f.matrix.transpose(), f"{f.label}*" if f.label else "")
