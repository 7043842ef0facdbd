import random
import sys
from pathlib import Path
from typing import Sequence
sys.path.insert(0, str(Path(__file__).resolve().parents[1]))

import pytest

from hopf.convolution import (
    ConvolutionProblem,
    NoAntipode,
    NotInvertible,
    antipode_order,
    antipode_report,
    antipode_solve,
    convolution_inverse,
    convolution_unit,
    convolve,
    skew_antipode,
)
from hopf.errors import DimensionMismatch
from hopf.examples import (
    cyclic_group_algebra,
    dual_group_algebra,
    idempotent_monoid,
    matrix_algebra,
    matrix_coalgebra,
    morphism_corpus,
    sweedler,
    symmetric_group_algebra,
    taft,
)
from hopf.linalg import Matrix, SparseTensor3, inverse, matrix_power
from hopf.scalars import FieldSpec
from hopf.structures import Algebra, Bialgebra, Coalgebra, HopfAlgebra, LinearMap, dual, identity_map

Q = FieldSpec.rationals()
F5 = FieldSpec.prime(5)
F13 = FieldSpec.prime(13)


def test_antipode_of_cyclic_group_algebras() -> None:
    for n in range(1, 7):
        h = cyclic_group_algebra(n)
        s = antipode_solve(h.bialgebra)
        assert isinstance(s, Matrix)
        assert s == h.antipode
        # g^k -> g^-k
        for k in range(n):
            assert s.column(k)[(-k) % n] == 1
    print("✅ kZ_n antipodes solved")


def test_antipode_is_unique_on_sweedler_and_taft() -> None:
    h4 = sweedler()
    assert antipode_solve(h4.bialgebra) == h4.antipode
    t = taft(3, 3, F13)
    assert antipode_solve(t.bialgebra) == t.antipode
    assert antipode_order(t.antipode, 10) == 6


def test_idempotent_monoid_has_no_antipode() -> None:
    result = antipode_solve(idempotent_monoid())
    assert isinstance(result, NoAntipode)
    assert "no convolution inverse" in result.detail


def test_convolution_unit_is_neutral() -> None:
    h = sweedler()
    f = identity_map(h)
    unit = convolution_unit(h, h)
    assert convolve(unit, f).matrix == f.matrix
    assert convolve(f, unit).matrix == f.matrix
    s = LinearMap(h, h, h.antipode)
    assert convolve(f, s).matrix == unit.matrix
    assert convolve(s, f).matrix == unit.matrix


def test_convolution_from_matrix_coalgebra_to_matrix_algebra() -> None:
    c, a = matrix_coalgebra(2), matrix_algebra(2)
    unit = convolution_unit(c, a)
    inv = convolution_inverse(unit)
    assert isinstance(inv, LinearMap)
    assert inv.matrix == unit.matrix
    zero = LinearMap(c, a, Matrix.zeros(Q, 4, 4))
    assert isinstance(convolution_inverse(zero), NotInvertible)


def test_convolution_dimension_mismatch() -> None:
    h2, h3 = cyclic_group_algebra(2), cyclic_group_algebra(3)
    with pytest.raises(DimensionMismatch):
        convolve(identity_map(h2), identity_map(h3))


def test_skew_antipode_inverts_the_antipode() -> None:
    h4 = sweedler()
    skew = skew_antipode(h4)
    assert isinstance(skew, Matrix)
    assert skew == inverse(h4.antipode)
    assert skew != h4.antipode
    s3 = symmetric_group_algebra()
    assert skew_antipode(s3) == s3.antipode


def test_antipode_report() -> None:
    report = antipode_report(sweedler())
    assert report.bijective and report.image_dim == 4
    assert report.order == 4
    capped = antipode_report(dual(sweedler()), max_order=3)
    assert capped.order is None and capped.order_exceeded
    assert antipode_report(dual_group_algebra(3)).order == 2
    assert antipode_report(cyclic_group_algebra(2)).order == 1


def test_convolution_problem_validates_its_candidate() -> None:
    h = sweedler()
    problem = ConvolutionProblem(h, h, identity_map(h))
    assert problem.unit().matrix == convolution_unit(h, h).matrix
    with pytest.raises(DimensionMismatch):
        ConvolutionProblem(h, h, identity_map(cyclic_group_algebra(2)))
    with pytest.raises(DimensionMismatch):
        ConvolutionProblem(h, sweedler(F13))


def _random_map(rng: random.Random, h: HopfAlgebra) -> LinearMap:
    p = h.field.characteristic
    rows = [[rng.randrange(p) for _ in range(h.dim)] for _ in range(h.dim)]
    return LinearMap(h, h, Matrix.from_rows(h.field, rows))


def test_convolution_is_associative_over_f5() -> None:
    rng = random.Random(11)
    for h in (sweedler(F5), symmetric_group_algebra(F5)):
        for _ in range(3):
            f, g, k = (_random_map(rng, h) for _ in range(3))
            assert convolve(convolve(f, g), k).matrix == convolve(f, convolve(g, k)).matrix
    print("✅ convolution associative on random triples")


def test_antipode_composites_invert_morphisms() -> None:
    for entry in morphism_corpus(Q):
        f = entry.morphism
        if entry.level != "hopf" or f.source.antipode is None or f.target.antipode is None:
            continue
        unit = convolution_unit(f.source, f.target)
        # f∘S inverts an algebra map, S∘f a coalgebra map
        f_s = LinearMap(f.source, f.target, f.matrix @ f.source.antipode)
        s_f = LinearMap(f.source, f.target, f.target.antipode @ f.matrix)
        assert convolve(f, f_s).matrix == unit.matrix, entry.name
        assert convolve(f_s, f).matrix == unit.matrix, entry.name
        assert convolve(f, s_f).matrix == unit.matrix, entry.name
        assert convolve(s_f, f).matrix == unit.matrix, entry.name


def _relabelled(h: HopfAlgebra, sigma: Sequence[int]) -> HopfAlgebra:
    """The same Hopf algebra with basis element i renamed sigma[i]; no antipode attached."""
    field, n = h.field, h.dim
    mult = SparseTensor3.from_dict(field, (n, n, n), {
        (sigma[i], sigma[j], sigma[k]): c for i, j, k, c in h.algebra.mult.entries})
    comult = SparseTensor3.from_dict(field, (n, n, n), {
        (sigma[i], sigma[j], sigma[k]): c for i, j, k, c in h.coalgebra.comult.entries})
    unit = [field.zero] * n
    counit = [field.zero] * n
    names = [""] * n
    for i in range(n):
        unit[sigma[i]] = h.algebra.unit[i]
        counit[sigma[i]] = h.coalgebra.counit[i]
        names[sigma[i]] = h.names[i]
    algebra = Algebra(field, n, mult, tuple(unit), tuple(names))
    coalgebra = Coalgebra(field, n, comult, tuple(counit), tuple(names))
    return HopfAlgebra(Bialgebra(algebra, coalgebra))


def test_antipode_is_basis_independent() -> None:
    h = sweedler()
    sigma = [2, 0, 3, 1]
    moved = _relabelled(h, sigma)
    p = Matrix.from_columns(Q, [tuple(Q.one if r == sigma[i] else Q.zero for r in range(4)) for i in range(4)], 4)
    solved = antipode_solve(moved.bialgebra)
    assert isinstance(solved, Matrix)
    assert solved == p @ h.antipode @ inverse(p)


def test_taft_skew_antipode_is_fifth_power() -> None:
    t = taft(3, 3, F13)
    skew = skew_antipode(t)
    assert isinstance(skew, Matrix)
    assert skew == matrix_power(t.antipode, 5)
