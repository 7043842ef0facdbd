import sys
from dataclasses import replace
from fractions import Fraction
from pathlib import Path
sys.path.insert(0, str(Path(__file__).resolve().parents[1]))

import pytest

from hopf.errors import AxiomError, InvalidParameters, UnknownExample
from hopf.examples import (
    cyclic_group_algebra,
    dual_group_algebra,
    idempotent_monoid,
    make_example,
    matrix_algebra,
    matrix_coalgebra,
    morphism_corpus,
    nat_monoid_coalgebra_cap,
    parse_example,
    sweedler,
    symmetric_group_algebra,
    taft,
)
from hopf.linalg import Matrix, SparseTensor3, inverse
from hopf.scalars import FieldSpec
from hopf.structures import (
    Coalgebra,
    HopfAlgebra,
    check,
    check_morphism,
    coopposite,
    dual,
    is_subalgebra,
    is_subcoalgebra,
    op_cop,
    opposite,
    tensor_product,
    validated,
)
from workbench.models import ExampleSpec

Q = FieldSpec.rationals()
F13 = FieldSpec.prime(13)


def test_builtin_examples_pass_their_checks() -> None:
    objects = [cyclic_group_algebra(n) for n in range(1, 7)]
    objects += [dual_group_algebra(n) for n in range(1, 7)]
    objects += [symmetric_group_algebra(), dual(symmetric_group_algebra()), sweedler(), dual(sweedler()),
                taft(3, 3, F13), matrix_coalgebra(2), matrix_algebra(2), idempotent_monoid(),
                nat_monoid_coalgebra_cap(2).coalgebra]
    for x in objects:
        result = check(x)
        assert result.ok, result.detail
    print(f"✅ {len(objects)} built-in objects pass")


def test_mutation_flips_the_verdict() -> None:
    h = sweedler()
    entries = dict(((i, j, k), c) for i, j, k, c in h.coalgebra.comult.entries)
    entries[(2, 2, 0)] = Fraction(2)
    broken = Coalgebra(Q, 4, SparseTensor3.from_dict(Q, (4, 4, 4), entries), h.coalgebra.counit, h.names)
    result = check(broken)
    assert result.failed
    assert result.witness[1] == 2
    with pytest.raises(AxiomError):
        validated(broken)

    a = cyclic_group_algebra(3).algebra
    mult = dict(((i, j, k), c) for i, j, k, c in a.mult.entries)
    mult[(1, 2, 0)] = Fraction(3)
    bad = replace(a, mult=SparseTensor3.from_dict(Q, (3, 3, 3), mult))
    assert check(bad).failed


def test_sweedler_antipode_shape() -> None:
    h = sweedler()
    assert h.names == ("1", "g", "x", "gx")
    s = h.antipode
    assert s is not None
    assert s.column(2) == (0, 0, 0, -1)
    assert s @ s != Matrix.identity(Q, 4)


def test_taft_rejects_non_primitive_root() -> None:
    with pytest.raises(InvalidParameters):
        taft(3, 1, F13)
    with pytest.raises(InvalidParameters):
        taft(3, 5, F13)
    h = taft(3, 3, F13)
    assert h.dim == 9
    assert h.names[3] == "x"


def test_op_cop_antipodes() -> None:
    h = sweedler()
    s = h.antipode
    s_inv = inverse(s)
    oc = op_cop(h)
    assert oc.antipode == s
    assert check(oc).ok
    op = opposite(h)
    assert isinstance(op, HopfAlgebra) and op.antipode == s_inv
    assert check(op).ok
    assert check(coopposite(h)).ok


def test_dual_is_involutive_on_structure_constants() -> None:
    h = sweedler()
    dd = dual(dual(h))
    assert dd.algebra.mult == h.algebra.mult
    assert dd.coalgebra.comult == h.coalgebra.comult
    assert dd.names == h.names


def test_dual_matrix_algebra_matches_matrix_coalgebra() -> None:
    d = dual(matrix_algebra(2))
    c = matrix_coalgebra(2)
    assert d.comult == c.comult
    assert d.counit == c.counit


def test_tensor_product_of_group_algebras() -> None:
    t = tensor_product(cyclic_group_algebra(2), cyclic_group_algebra(3))
    assert t.dim == 6
    assert check(t).ok
    assert t.names[4] == "g⊗g"


def test_subobjects() -> None:
    h = sweedler()
    grouplikes = Matrix.from_rows(Q, [[1, 0], [0, 1], [0, 0], [0, 0]])
    assert is_subcoalgebra(h.coalgebra, grouplikes)
    assert is_subalgebra(h.algebra, grouplikes)
    xs = Matrix.from_rows(Q, [[0], [0], [1], [0]])
    assert not is_subcoalgebra(h.coalgebra, xs)


def test_corpus_morphisms_hold_at_their_levels() -> None:
    corpus = morphism_corpus(Q)
    assert len(corpus) >= 12
    for entry in corpus:
        result = check_morphism(entry.morphism, entry.level)
        assert result.ok, f"{entry.name}: {result.detail}"
    print(f"✅ {len(corpus)} corpus morphisms verified")


def test_corpus_is_checked_over_prime_fields() -> None:
    for p in (3, 5):
        names = [entry.name for entry in morphism_corpus(FieldSpec.prime(p))]
        assert names == [entry.name for entry in morphism_corpus(Q)]
    assert "antipode_sweedler" not in [entry.name for entry in morphism_corpus(FieldSpec.prime(2))]


def test_make_example_dispatch() -> None:
    assert make_example(parse_example("cyclic:4")).dim == 4
    assert make_example(parse_example("taft:3:3"), F13).dim == 9
    assert make_example(ExampleSpec(name="matrix_coalgebra", params={"n": 2})).dim == 4
    with pytest.raises(UnknownExample):
        parse_example("quaternions")
    with pytest.raises(InvalidParameters):
        parse_example("cyclic:2:3")
