import random
import sys
from fractions import Fraction
from pathlib import Path
sys.path.insert(0, str(Path(__file__).resolve().parents[1]))

import pytest

from hopf.errors import DimensionMismatch, InvalidParameters
from hopf.linalg import (
    Matrix,
    NoSolution,
    SparseTensor3,
    in_span,
    inverse,
    kron,
    matrix_power,
    rank,
    rank_kernel_image,
    solve,
)
from hopf.scalars import FieldSpec, Residue

Q = FieldSpec.rationals()
F7 = FieldSpec.prime(7)


def test_field_parsing() -> None:
    assert FieldSpec.parse("q") == Q
    assert FieldSpec.parse("p:13").characteristic == 13
    with pytest.raises(InvalidParameters):
        FieldSpec.parse("p:12")
    with pytest.raises(InvalidParameters):
        FieldSpec.parse("r")
    assert Q.parse_scalar("3/2") == Fraction(3, 2)
    assert F7.parse_scalar("5 mod 7") == Residue(5, 7)
    assert F7.parse_scalar("-1") == Residue(6, 7)
    assert F7.format_scalar(F7(10)) == "3 mod 7"
    print("✅ fields parse")


def test_residue_arithmetic() -> None:
    a, b = Residue(3, 7), Residue(5, 7)
    assert a + b == Residue(1, 7)
    assert a * b == Residue(1, 7)
    assert a / b == Residue(2, 7)
    assert -a == Residue(4, 7)
    assert a ** 6 == 1
    assert not Residue(7, 7)


def test_rank_kernel_image_over_rationals() -> None:
    m = Matrix.from_rows(Q, [[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    rki = rank_kernel_image(m)
    assert rki.rank == 2
    assert rki.kernel_basis.cols == 1
    v = rki.kernel_basis.column(0)
    assert m.apply(v) == (0, 0, 0)
    assert rki.image_basis.cols == 2


def test_rank_over_prime_field_differs() -> None:
    # det = 7
    m = Matrix.from_rows(Q, [[1, 2], [3, 13]])
    assert rank(m) == 2
    assert rank(Matrix.from_rows(F7, [[1, 2], [3, 13]])) == 1


def test_solve_and_no_solution() -> None:
    m = Matrix.from_rows(Q, [[1, 1], [1, -1]])
    x = solve(m, Matrix.from_rows(Q, [[3], [1]]))
    assert isinstance(x, Matrix)
    assert x.column(0) == (2, 1)
    singular = Matrix.from_rows(Q, [[1, 1], [2, 2]])
    assert isinstance(solve(singular, Matrix.from_rows(Q, [[1], [3]])), NoSolution)


def test_inverse_and_powers() -> None:
    m = Matrix.from_rows(Q, [[0, -1], [1, 0]])
    inv = inverse(m)
    assert inv is not None
    assert m @ inv == Matrix.identity(Q, 2)
    assert matrix_power(m, 4) == Matrix.identity(Q, 2)
    assert inverse(Matrix.from_rows(Q, [[1, 2], [2, 4]])) is None


def test_kron_and_span() -> None:
    a = Matrix.from_rows(Q, [[1], [1]])
    b = Matrix.from_rows(Q, [[1], [0]])
    k = kron(a, b)
    assert k.column(0) == (1, 0, 1, 0)
    assert in_span(k, (2, 0, 2, 0))
    assert not in_span(k, (1, 0, 0, 0))


def test_sparse_tensor_validation() -> None:
    with pytest.raises(DimensionMismatch):
        SparseTensor3(Q, (2, 2, 2), ((0, 0, 5, Fraction(1)),))
    t = SparseTensor3.from_dict(Q, (2, 2, 2), {(0, 1, 1): Fraction(1), (1, 1, 0): Fraction(0)})
    assert t.nnz == 1
    assert t.permuted((2, 0, 1)).get(1, 0, 1) == 1
    print("✅ sparse tensors validate")


def _random_matrix(rng: random.Random, field: FieldSpec, rows: int, cols: int) -> Matrix:
    return Matrix.from_rows(field, [[rng.randrange(field.characteristic) for _ in range(cols)] for _ in range(rows)])


def test_rank_over_f2() -> None:
    f2 = FieldSpec.prime(2)
    rki = rank_kernel_image(Matrix.from_rows(f2, [[1, 1], [1, 1]]))
    assert rki.rank == 1
    assert rki.kernel_basis.cols == 1
    assert rki.kernel_basis.column(0) == (1, 1)


def test_kron_mixed_product_and_associativity() -> None:
    f5 = FieldSpec.prime(5)
    rng = random.Random(7)
    for _ in range(5):
        a, c = _random_matrix(rng, f5, 2, 3), _random_matrix(rng, f5, 3, 2)
        b, d = _random_matrix(rng, f5, 2, 2), _random_matrix(rng, f5, 2, 3)
        assert kron(a, b) @ kron(c, d) == kron(a @ c, b @ d)
        e = _random_matrix(rng, f5, 2, 1)
        assert kron(kron(a, b), e) == kron(a, kron(b, e))
    print("✅ kron respects composition")
