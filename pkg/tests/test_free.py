import sys
from pathlib import Path
sys.path.insert(0, str(Path(__file__).resolve().parents[1]))

import pytest

from hopf.errors import InvalidParameters, ResourceBudgetExceeded
from hopf.examples import (
    cyclic_group_algebra,
    grouplike_coalgebra,
    idempotent_monoid,
    matrix_coalgebra,
    nat_monoid_coalgebra_cap,
    sweedler,
)
from hopf.free import (
    ImageDims,
    RewritingSystem,
    antipode_image_dims,
    colimit_oracle,
    format_combination,
    free_bialgebra,
    free_hopf_on_bialgebra,
    free_hopf_on_coalgebra,
    k_star,
    opposite_truncation,
    truncation_check,
    unit_arrow_report,
)
from hopf.scalars import FieldSpec
from hopf.structures import opposite

Q = FieldSpec.rationals()


def test_rewriting_commutator_gives_polynomial_ring() -> None:
    system = RewritingSystem(Q, 4)
    # ba -> ab
    system.complete([{(1, 0): Q.one, (0, 1): -Q.one}])
    assert system.rules == {(1, 0): {(0, 1): Q.one}}
    words = system.normal_words(2, 3)
    assert len([w for w in words if len(w) == 3]) == 4
    assert system.reduce({(1, 1, 0): Q.one}) == {(0, 1, 1): Q.one}


def test_rewriting_budget() -> None:
    system = RewritingSystem(Q, 6, cap=5)
    with pytest.raises(ResourceBudgetExceeded):
        system.normal_words(3, 3)


def test_free_bialgebra_on_two_grouplikes() -> None:
    t = free_bialgebra(grouplike_coalgebra(2), 3)
    assert t.dims == (1, 3, 7, 15)
    assert t.stable
    assert t.antipode(1) is None
    assert truncation_check(t).ok
    print(f"✅ free bialgebra dims {list(t.dims)}")


def test_free_hopf_on_one_grouplike_is_laurent() -> None:
    t = free_hopf_on_coalgebra(grouplike_coalgebra(1), 2, 2)
    assert t.dims == (1, 3, 5)
    assert t.names[:3] == ("1", "g_0", "g_1")
    assert truncation_check(t).ok


def test_free_hopf_on_two_grouplikes_matches_free_group() -> None:
    t = free_hopf_on_coalgebra(grouplike_coalgebra(2), 3, 2)
    assert t.dims == (1, 5, 17, 53)
    assert t.stable
    report = unit_arrow_report(t)
    assert report.injective_on_base and report.image_dim == 2
    assert report.up_to_cutoff and report.witness is None
    print(f"✅ free Hopf dims {list(t.dims)}, stable={t.stable}")


def test_free_hopf_on_idempotent_monoid_collapses() -> None:
    t = free_hopf_on_bialgebra(idempotent_monoid(), 2, 2)
    assert t.dims == (1, 1, 1)
    report = unit_arrow_report(t)
    assert not report.injective_on_base
    assert report.witness == "z − 1"


def test_free_hopf_on_group_bialgebra_recovers_the_group() -> None:
    t = free_hopf_on_bialgebra(cyclic_group_algebra(2).bialgebra, 2, 2)
    assert t.dims == (1, 2, 2)
    assert truncation_check(t).ok


def test_free_hopf_on_capped_monoid() -> None:
    t = free_hopf_on_bialgebra(nat_monoid_coalgebra_cap(2), 2, 2)
    # x, x^2 and their inverses in degree one
    assert t.dims[1] == 5
    assert t.metadata()["kind"] == "free-hopf-bialgebra"
    assert free_hopf_on_bialgebra(nat_monoid_coalgebra_cap(1), 2, 2).dims == (1, 3, 5)


def test_k_star_is_opposite_of_free_hopf_on_opposite() -> None:
    for h, top in ((cyclic_group_algebra(2), 2), (sweedler(), 4)):
        ks = k_star(h, 2, 2)
        inner = free_hopf_on_bialgebra(opposite(h).bialgebra, 2, 2)
        assert ks.kind == "kstar" and ks.opposite
        assert ks.dims == inner.dims
        assert ks.dims[-1] == top
        for (i, j), product in inner.multiplication_table.items():
            assert ks.multiply(j, i) == product
        assert opposite_truncation(ks).multiplication_table == inner.multiplication_table


def test_k_star_collapses_to_the_colimit_dims() -> None:
    for h in (cyclic_group_algebra(2), sweedler()):
        ks = k_star(h, 2, 2)
        assert list(ks.dims) == colimit_oracle(h, 2)


def test_colimit_oracle() -> None:
    assert colimit_oracle(sweedler(), 3) == [1, 4, 4, 4]
    assert colimit_oracle(cyclic_group_algebra(3), 2) == [1, 3, 3]
    with pytest.raises(InvalidParameters):
        colimit_oracle(sweedler().with_antipode(None), 2)


def test_antipode_image_dims() -> None:
    t = free_hopf_on_coalgebra(grouplike_coalgebra(1), 2, 2)
    dims = antipode_image_dims(t)
    assert dims[0] == ImageDims(0, 1, 1, 0)
    assert dims[1] == ImageDims(1, 3, 3, 0)
    assert dims[2].full_dim == 5
    with pytest.raises(InvalidParameters):
        antipode_image_dims(free_bialgebra(grouplike_coalgebra(1), 2))


def test_truncation_parameters() -> None:
    with pytest.raises(InvalidParameters):
        free_hopf_on_coalgebra(grouplike_coalgebra(1), -1, 2)
    with pytest.raises(InvalidParameters):
        unit_arrow_report(free_bialgebra(grouplike_coalgebra(1), 0))


def test_format_combination() -> None:
    names = ["1", "z"]
    assert format_combination(Q, (-1, 1), names) == "z − 1"
    assert format_combination(Q, (2, 0), names) == "2·1"
    assert format_combination(Q, (0, 0), names) == "0"


def test_matrix_coalgebra_image_dims_are_recorded() -> None:
    t = free_hopf_on_coalgebra(matrix_coalgebra(2), 2, 1)
    rows = antipode_image_dims(t)
    assert rows[0] == ImageDims(0, 1, 1, 0)
    assert all(row.image_dim <= row.full_dim for row in rows)
    print(f"📐 M_2(k)^* dims {list(t.dims)}, images {[row.image_dim for row in rows]}")


def test_zero_products_become_relations() -> None:
    # x·x = 0 in H4 must give x_n·x_n = 0 in every family
    t = free_hopf_on_bialgebra(sweedler().bialgebra, 2, 2)
    assert t.dims == (1, 4, 4)
    assert truncation_check(t).ok


def test_k_star_carries_the_inverse_shift() -> None:
    ks = k_star(sweedler(), 2, 2)
    p = ks.presentation
    for i, w in enumerate(ks.words):
        image = ks.antipode(i)
        if any(p.family(a) == 0 for a in w):
            assert image is None
        else:
            assert image == ks.normal_form({tuple(a - p.base_dim for a in reversed(w)): Q.one})
    inner = free_hopf_on_bialgebra(opposite(sweedler()).bialgebra, 2, 2)
    assert ks.antipode(0) == inner.antipode(0) == {0: Q.one}


def test_antipode_equation_holds_on_truncations() -> None:
    for t in (
        free_hopf_on_coalgebra(grouplike_coalgebra(2), 2, 2),
        free_hopf_on_bialgebra(cyclic_group_algebra(2).bialgebra, 2, 2),
        free_hopf_on_bialgebra(sweedler().bialgebra, 2, 2),
        k_star(cyclic_group_algebra(2), 2, 2),
        k_star(sweedler(), 2, 2),
    ):
        result = truncation_check(t)
        assert result.ok, result.detail
    print("✅ m(S⊗id)Δ = ηε on every truncation")


def test_stability_compares_windows_over_fixed_families() -> None:
    m2 = matrix_coalgebra(2)
    wide = free_hopf_on_coalgebra(m2, 2, 1)
    narrow = free_hopf_on_coalgebra(m2, 2, 0, n_max=3)
    assert wide.n_max == narrow.n_max == 3
    assert wide.dims[1] == narrow.dims[1] == 17
    assert all(a <= b for a, b in zip(wide.dims, narrow.dims))
    assert wide.stable == (wide.dims == narrow.dims)
    # the default family cap grows with the slack
    assert free_hopf_on_coalgebra(m2, 2, 0).dims[1] == 13
    with pytest.raises(InvalidParameters):
        free_hopf_on_coalgebra(m2, 2, 1, n_max=0)
