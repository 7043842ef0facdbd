"""Exact dense matrices, sparse structure-constant tensors and the elimination core.

Basis convention for tensor products, used by every module: the basis vector
e_i (x) e_j of V (x) W has flat index ``i * dim(W) + j`` (row-major).
"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Dict, Iterable, List, Mapping, NamedTuple, Optional, Sequence, Tuple, Union

from hopf.errors import DimensionMismatch
from hopf.scalars import FieldSpec, Residue, Scalar

log = logging.getLogger(__name__)

Vector = Tuple[Scalar, ...]


@dataclass(frozen=True)
class Matrix:
    field: FieldSpec
    rows: int
    cols: int
    entries: Tuple[Tuple[Scalar, ...], ...]

    def __post_init__(self) -> None:
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise DimensionMismatch(f"matrix entries do not match declared shape {self.rows}x{self.cols}")

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Sequence[Sequence[object]], cols: Optional[int] = None) -> "Matrix":
        width = cols if cols is not None else (len(rows[0]) if rows else 0)
        return cls(field, len(rows), width, tuple(tuple(field(x) for x in r) for r in rows))  # type: ignore[arg-type]

    @classmethod
    def from_columns(cls, field: FieldSpec, columns: Sequence[Sequence[Scalar]], rows: int) -> "Matrix":
        for col in columns:
            if len(col) != rows:
                raise DimensionMismatch(f"column of length {len(col)} in a matrix with {rows} rows")
        return cls(field, rows, len(columns), tuple(tuple(col[j] for col in columns) for j in range(rows)))

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int) -> "Matrix":
        z = field.zero
        return cls(field, rows, cols, tuple(tuple(z for _ in range(cols)) for _ in range(rows)))

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "Matrix":
        z, o = field.zero, field.one
        return cls(field, n, n, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)))

    def __getitem__(self, index: Tuple[int, int]) -> Scalar:
        i, j = index
        return self.entries[i][j]

    def row(self, i: int) -> Vector:
        return self.entries[i]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.entries)

    def columns(self) -> List[Vector]:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> "Matrix":
        return Matrix(self.field, self.cols, self.rows, tuple(self.columns()))

    def select_columns(self, indices: Iterable[int]) -> "Matrix":
        return Matrix.from_columns(self.field, [self.column(j) for j in indices], self.rows)

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.rows != other.rows:
            raise DimensionMismatch(f"hstack of {self.rows} and {other.rows} rows")
        return Matrix(self.field, self.rows, self.cols + other.cols,
                      tuple(a + b for a, b in zip(self.entries, other.entries)))

    def apply(self, vector: Sequence[Scalar]) -> Vector:
        if len(vector) != self.cols:
            raise DimensionMismatch(f"vector of length {len(vector)} applied to {self.rows}x{self.cols} matrix")
        z = self.field.zero
        out = []
        for r in self.entries:
            acc = z
            for a, v in zip(r, vector):
                if a and v:
                    acc = acc + a * v
            out.append(acc)
        return tuple(out)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        other_cols = other.columns()
        return Matrix.from_columns(self.field, [self.apply(c) for c in other_cols], self.rows)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(self.field, self.rows, self.cols,
                      tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(self.field, self.rows, self.cols,
                      tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)))

    def __neg__(self) -> "Matrix":
        return self.scaled(-self.field.one)

    def scaled(self, c: Scalar) -> "Matrix":
        return Matrix(self.field, self.rows, self.cols, tuple(tuple(c * a for a in r) for r in self.entries))

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def _same_shape(self, other: "Matrix") -> None:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch(f"shapes {self.rows}x{self.cols} and {other.rows}x{other.cols} differ")


@dataclass(frozen=True)
class SparseTensor3:
    """Structure constants T[i, j, k] stored as sorted (i, j, k, c) entries with c != 0."""

    field: FieldSpec
    dims: Tuple[int, int, int]
    entries: Tuple[Tuple[int, int, int, Scalar], ...]

    def __post_init__(self) -> None:
        seen = set()
        for i, j, k, c in self.entries:
            if not (0 <= i < self.dims[0] and 0 <= j < self.dims[1] and 0 <= k < self.dims[2]):
                raise DimensionMismatch(f"tensor entry ({i},{j},{k}) outside dims {self.dims}")
            if not c:
                raise DimensionMismatch(f"explicit zero stored at ({i},{j},{k})")
            if (i, j, k) in seen:
                raise DimensionMismatch(f"duplicate tensor entry ({i},{j},{k})")
            seen.add((i, j, k))

    @classmethod
    def from_dict(cls, field: FieldSpec, dims: Tuple[int, int, int],
                  mapping: Mapping[Tuple[int, int, int], Scalar]) -> "SparseTensor3":
        entries = tuple((i, j, k, field(c)) for (i, j, k), c in sorted(mapping.items()) if c)
        return cls(field, dims, entries)

    @classmethod
    def empty(cls, field: FieldSpec, dims: Tuple[int, int, int]) -> "SparseTensor3":
        return cls(field, dims, ())

    @property
    def nnz(self) -> int:
        return len(self.entries)

    def as_dict(self) -> Dict[Tuple[int, int, int], Scalar]:
        return {(i, j, k): c for i, j, k, c in self.entries}

    def get(self, i: int, j: int, k: int) -> Scalar:
        return self.as_dict().get((i, j, k), self.field.zero)

    def permuted(self, order: Tuple[int, int, int]) -> "SparseTensor3":
        """New tensor whose index slot ``s`` reads old slot ``order[s]``."""
        dims = (self.dims[order[0]], self.dims[order[1]], self.dims[order[2]])
        moved = {}
        for i, j, k, c in self.entries:
            idx = (i, j, k)
            moved[(idx[order[0]], idx[order[1]], idx[order[2]])] = c
        return SparseTensor3.from_dict(self.field, dims, moved)

    @cached_property
    def by_first(self) -> Dict[int, List[Tuple[int, int, Scalar]]]:
        out: Dict[int, List[Tuple[int, int, Scalar]]] = {}
        for i, j, k, c in self.entries:
            out.setdefault(i, []).append((j, k, c))
        return out

    @cached_property
    def by_pair(self) -> Dict[Tuple[int, int], List[Tuple[int, Scalar]]]:
        out: Dict[Tuple[int, int], List[Tuple[int, Scalar]]] = {}
        for i, j, k, c in self.entries:
            out.setdefault((i, j), []).append((k, c))
        return out


class RankKernelImage(NamedTuple):
    rank: int
    kernel_basis: Matrix
    image_basis: Matrix


@dataclass(frozen=True)
class NoSolution:
    """m x = b has no solution; ``column`` is the first right-hand side outside the column space."""

    column: int = 0
    detail: str = "right-hand side is not in the column space"


def _rref_rational(rows: List[List[Scalar]], ncols: int) -> Tuple[List[List[Scalar]], List[int]]:
    # fraction-free: clear denominators, eliminate on integers, strip row content
    work: List[List[int]] = []
    for row in rows:
        den = math.lcm(1, *(Fraction(x).denominator for x in row))
        ints = [Fraction(x).numerator * (den // Fraction(x).denominator) for x in row]
        if any(ints):
            work.append(ints)
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        if r == len(work):
            break
        pr = next((i for i in range(r, len(work)) if work[i][c] != 0), None)
        if pr is None:
            continue
        work[r], work[pr] = work[pr], work[r]
        g = math.gcd(*work[r])
        if g > 1:
            work[r] = [a // g for a in work[r]]
        prow = work[r]
        p = prow[c]
        for i in range(len(work)):
            if i == r or work[i][c] == 0:
                continue
            q = work[i][c]
            row = [p * a - q * b for a, b in zip(work[i], prow)]
            g = math.gcd(*row)
            if g > 1:
                row = [a // g for a in row]
            work[i] = row
        pivots.append(c)
        r += 1
    reduced = [[Fraction(a, work[i][c]) for a in work[i]] for i, c in enumerate(pivots)]
    return reduced, pivots  # type: ignore[return-value]


def _rref_modular(rows: List[List[Scalar]], ncols: int, p: int) -> Tuple[List[List[Scalar]], List[int]]:
    work = [[int(x) % p for x in row] for row in rows]
    work = [row for row in work if any(row)]
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        if r == len(work):
            break
        pr = next((i for i in range(r, len(work)) if work[i][c]), None)
        if pr is None:
            continue
        work[r], work[pr] = work[pr], work[r]
        inv = pow(work[r][c], -1, p)
        work[r] = [(a * inv) % p for a in work[r]]
        prow = work[r]
        for i in range(len(work)):
            if i == r or not work[i][c]:
                continue
            q = work[i][c]
            work[i] = [(a - q * b) % p for a, b in zip(work[i], prow)]
        pivots.append(c)
        r += 1
    reduced = [[Residue(a, p) for a in work[i]] for i in range(len(pivots))]
    return reduced, pivots  # type: ignore[return-value]


def rref(field: FieldSpec, rows: Sequence[Sequence[Scalar]], ncols: int) -> Tuple[List[List[Scalar]], List[int]]:
    """Reduced row echelon form (nonzero rows only) and the pivot columns."""
    rows = [list(r) for r in rows]
    if field.characteristic == 0:
        return _rref_rational(rows, ncols)
    return _rref_modular(rows, ncols, field.characteristic)


def rank_kernel_image(m: Matrix) -> RankKernelImage:
    reduced, pivots = rref(m.field, m.entries, m.cols)
    pivot_set = set(pivots)
    free = [j for j in range(m.cols) if j not in pivot_set]
    zero, one = m.field.zero, m.field.one
    kernel_cols = []
    for f in free:
        v = [zero] * m.cols
        v[f] = one
        for row, c in zip(reduced, pivots):
            v[c] = -row[f]
        kernel_cols.append(tuple(v))
    kernel = Matrix.from_columns(m.field, kernel_cols, m.cols)
    image = m.select_columns(pivots)
    return RankKernelImage(len(pivots), kernel, image)


def rank(m: Matrix) -> int:
    return len(rref(m.field, m.entries, m.cols)[1])


def solve(m: Matrix, b: Matrix) -> Union[Matrix, NoSolution]:
    """Particular solution of m x = b (free variables set to zero), or ``NoSolution``."""
    if m.rows != b.rows:
        raise DimensionMismatch(f"solve: {m.rows} rows against right-hand side with {b.rows}")
    augmented = m.hstack(b)
    reduced, pivots = rref(m.field, augmented.entries, augmented.cols)
    for row, c in zip(reduced, pivots):
        if c >= m.cols:
            return NoSolution(column=c - m.cols)
    zero = m.field.zero
    solution = [[zero] * b.cols for _ in range(m.cols)]
    for row, c in zip(reduced, pivots):
        for j in range(b.cols):
            solution[c][j] = row[m.cols + j]
    return Matrix(m.field, m.cols, b.cols, tuple(tuple(r) for r in solution))


def solve_vector(m: Matrix, v: Sequence[Scalar]) -> Optional[Vector]:
    x = solve(m, Matrix.from_columns(m.field, [tuple(v)], m.rows))
    if isinstance(x, NoSolution):
        return None
    return x.column(0)


def in_span(basis: Matrix, v: Sequence[Scalar]) -> bool:
    if basis.cols == 0:
        return all(not a for a in v)
    return solve_vector(basis, v) is not None


def inverse(m: Matrix) -> Optional[Matrix]:
    if not m.is_square:
        return None
    x = solve(m, Matrix.identity(m.field, m.rows))
    if isinstance(x, NoSolution) or rank(m) < m.rows:
        return None
    return x


def matrix_power(m: Matrix, n: int) -> Matrix:
    result = Matrix.identity(m.field, m.rows)
    base = m
    while n > 0:
        if n & 1:
            result = result @ base
        base = base @ base
        n >>= 1
    return result


def kron(a: Matrix, b: Matrix) -> Matrix:
    """Kronecker product; (a (x) b)(e_i (x) e_j) = a(e_i) (x) b(e_j) under row-major flattening."""
    entries = []
    for i in range(a.rows):
        for k in range(b.rows):
            entries.append(tuple(a.entries[i][j] * b.entries[k][l] for j in range(a.cols) for l in range(b.cols)))
    return Matrix(a.field, a.rows * b.rows, a.cols * b.cols, tuple(entries))


def basis_vector(field: FieldSpec, n: int, i: int) -> Vector:
    return tuple(field.one if j == i else field.zero for j in range(n))


def zero_vector(field: FieldSpec, n: int) -> Vector:
    return tuple(field.zero for _ in range(n))
