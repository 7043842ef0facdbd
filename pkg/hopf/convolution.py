"""The convolution algebra Hom(C, A) and antipodes as convolution inverses of the identity."""
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple, Union

from hopf.errors import AxiomError, DimensionMismatch
from hopf.linalg import Matrix, NoSolution, inverse, rank, solve
from hopf.scalars import Scalar
from hopf.structures import (
    AnyObject,
    Bialgebra,
    HopfAlgebra,
    LinearMap,
    algebra_of,
    bialgebra_of,
    coalgebra_of,
    coopposite,
    identity_map,
)
from workbench.config import get_settings

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class ConvolutionProblem:
    """Maps from the coalgebra carried by ``source`` to the algebra carried by ``target``."""

    source: AnyObject
    target: AnyObject
    candidate: Optional[LinearMap] = None

    def __post_init__(self) -> None:
        if coalgebra_of(self.source).field != algebra_of(self.target).field:
            raise DimensionMismatch("convolution across different fields")
        if self.candidate is not None and (self.candidate.source.dim, self.candidate.target.dim) != (
                self.source.dim, self.target.dim):
            raise DimensionMismatch("candidate map does not go from source to target")

    def unit(self) -> LinearMap:
        return convolution_unit(self.source, self.target)


@dataclass(frozen=True)
class NotInvertible:
    detail: str
    witness: Optional[int] = None


@dataclass(frozen=True)
class NoAntipode:
    detail: str
    witness: Optional[int] = None


@dataclass(frozen=True)
class NoSkewAntipode:
    detail: str


@dataclass(frozen=True)
class AntipodeReport:
    bijective: bool
    order: Optional[int]
    order_exceeded: bool
    image_dim: int
    max_order: int


def convolution_unit(source: AnyObject, target: AnyObject) -> LinearMap:
    """eta_A eps_C."""
    c, a = coalgebra_of(source), algebra_of(target)
    rows = [[u * e for e in c.counit] for u in a.unit]
    return LinearMap(source, target, Matrix(a.field, a.dim, c.dim, tuple(tuple(r) for r in rows)), "eta eps")


def _check_same_hom(f: LinearMap, g: LinearMap) -> None:
    if f.source.dim != g.source.dim or f.target.dim != g.target.dim:
        raise DimensionMismatch("convolution of maps between different spaces")


def convolve(f: LinearMap, g: LinearMap) -> LinearMap:
    """(f * g)(c) = f(c_(1)) g(c_(2)) = m_A (f (x) g) Delta_C."""
    _check_same_hom(f, g)
    c, a = coalgebra_of(f.source), algebra_of(f.target)
    zero = a.field.zero
    columns = []
    for i in range(c.dim):
        acc = [zero] * a.dim
        for j, k, x in c.coproduct_basis(i):
            prod = a.multiply(f.matrix.column(j), g.matrix.column(k))
            acc = [s + x * p for s, p in zip(acc, prod)]
        columns.append(tuple(acc))
    return LinearMap(f.source, f.target, Matrix.from_columns(a.field, columns, a.dim))


def _left_system(f: LinearMap) -> Matrix:
    """Coefficient matrix of g -> f * g; unknown g[b][k] sits at b*dimC + k, output (t, i) at t*dimC + i."""
    c, a = coalgebra_of(f.source), algebra_of(f.target)
    nc, na = c.dim, a.dim
    by_left: Dict[int, List[Tuple[int, int, Scalar]]] = a.mult.by_first
    rows: Dict[Tuple[int, int], Scalar] = {}
    for i in range(nc):
        for j, k, x in c.coproduct_basis(i):
            for aa in range(na):
                fa = f.matrix[aa, j]
                if not fa:
                    continue
                for b, t, m in by_left.get(aa, ()):
                    key = (t * nc + i, b * nc + k)
                    value = rows.get(key, a.field.zero) + x * fa * m
                    rows[key] = value
    zero = a.field.zero
    n = na * nc
    dense = [[zero] * n for _ in range(n)]
    for (r, col), v in rows.items():
        dense[r][col] = v
    return Matrix(a.field, n, n, tuple(tuple(r) for r in dense))


def convolution_inverse(f: LinearMap) -> Union[LinearMap, NotInvertible]:
    """Solve f * g = eta eps, then verify g * f = eta eps."""
    c, a = coalgebra_of(f.source), algebra_of(f.target)
    unit = convolution_unit(f.source, f.target)
    rhs = Matrix(a.field, a.dim * c.dim, 1,
                 tuple((unit.matrix[t, i],) for t in range(a.dim) for i in range(c.dim)))
    x = solve(_left_system(f), rhs)
    if isinstance(x, NoSolution):
        log.info("🔍 f * g = eta eps has no solution")
        return NotInvertible("f * g = eta eps has no solution")
    g_rows = [[x[b * c.dim + k, 0] for k in range(c.dim)] for b in range(a.dim)]
    g = LinearMap(f.source, f.target, Matrix(a.field, a.dim, c.dim, tuple(tuple(r) for r in g_rows)))
    right = convolve(g, f)
    if right.matrix != unit.matrix:
        bad = next(i for i in range(c.dim) if right.matrix.column(i) != unit.matrix.column(i))
        return NotInvertible("right inverse fails g * f = eta eps", bad)
    return g


def antipode_solve(b: Union[Bialgebra, HopfAlgebra]) -> Union[Matrix, NoAntipode]:
    """The antipode as the two-sided convolution inverse of id_B."""
    bialg = bialgebra_of(b)
    result = convolution_inverse(identity_map(bialg))
    if isinstance(result, NotInvertible):
        log.info(f"❌ no antipode: {result.detail}")
        return NoAntipode(f"id has no convolution inverse: {result.detail}", result.witness)
    log.info("✅ antipode found")
    return result.matrix


def skew_antipode(h: HopfAlgebra) -> Union[Matrix, NoSkewAntipode]:
    """Antipode of H^cop; agrees with S^-1."""
    found = antipode_solve(coopposite(h.bialgebra))  # type: ignore[arg-type]
    if isinstance(found, NoAntipode):
        return NoSkewAntipode(f"H^cop has no antipode: {found.detail}")
    if h.antipode is not None:
        s_inv = inverse(h.antipode)
        if s_inv is None or s_inv != found:
            raise AxiomError("skew antipode exists but does not invert the attached antipode")
    return found


def antipode_order(s: Matrix, cap: int) -> Optional[int]:
    """Least n <= cap with S^n = id, or None past the cap."""
    identity = Matrix.identity(s.field, s.rows)
    power = s
    for n in range(1, cap + 1):
        if power == identity:
            return n
        power = power @ s
    return None


def antipode_report(h: HopfAlgebra, max_order: Optional[int] = None) -> AntipodeReport:
    if h.antipode is None:
        raise AxiomError("antipode_report: no antipode attached")
    cap = max_order if max_order is not None else get_settings().max_order
    order = antipode_order(h.antipode, cap)
    if order is None:
        log.warning(f"⚠️ antipode order exceeds the cap {cap}")
    image_dim = rank(h.antipode)
    return AntipodeReport(
        bijective=image_dim == h.dim,
        order=order,
        order_exceeded=order is None,
        image_dim=image_dim,
        max_order=cap,
    )
