"""Tests for finite categories, functors and transformations."""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

from hypothesis import given, strategies as st
import pytest

from noncanon.exceptions import (
    ComponentTypeMismatch,
    IndexOutOfRange,
    InvalidParameter,
    NotComposable,
    NotInvertible,
    SearchSpaceTooLarge,
)
from noncanon.fincat import (
    FinCategory,
    FunctionMapping,
    Functor,
    LazyValues,
    NatTrans,
    check_category,
    check_functor,
    check_naturality,
    compose_functors,
    enumerate_nat_trans,
    find_inverse,
    finset_skeleton,
    function_of,
    horizontal_comp,
    identity_functor,
    identity_transformation,
    invert,
    morphism_of,
    product_category,
    vert_comp,
    whisker,
)
from noncanon.fixtures import arrow_category, terminal_category

from tests.settings import QUICK_SETTINGS, STANDARD_SETTINGS

ARROW_TABLE = {
    "arrows": [(0, 0), (1, 1), (0, 1)],
    "identities": [0, 1],
    "compose": [(0, 0, 0), (1, 1, 1), (2, 0, 2), (1, 2, 2)],
}

CYCLIC3_TABLE = {
    "arrows": [(0, 0)] * 3,
    "identities": [0],
    "compose": [(g, f, (g + f) % 3) for g in range(3) for f in range(3)],
}


def _from_table(table: dict, compose: list) -> FinCategory:
    n_objects = len(table["identities"])
    return FinCategory.from_table(
        "mutated", n_objects, table["arrows"], table["identities"], compose
    )


def test_finset_skeleton_counts():
    C = finset_skeleton(2)

    assert C.n_objects == 3
    assert C.size == 11
    assert len(C.hom(2, 2)) == 4
    assert len(C.hom(1, 0)) == 0
    assert function_of(C, C.identity(2)) == (0, 1)


def test_finset_skeleton_limit():
    with pytest.raises(InvalidParameter):
        finset_skeleton(5)
    with pytest.raises(InvalidParameter):
        finset_skeleton(-1)

    assert finset_skeleton(6, limit=None).n_objects == 7


@pytest.mark.parametrize(
    "category",
    [
        terminal_category(),
        arrow_category(),
        finset_skeleton(0),
        finset_skeleton(1),
        finset_skeleton(2),
        finset_skeleton(3),
    ],
    ids=lambda category: category.name,
)
def test_fixture_categories_pass(category):
    report = check_category(category)

    assert report.ok, report.violations
    assert report.counts["identity"] == 2 * category.size


def test_swap_is_its_own_inverse():
    C = finset_skeleton(2)
    swap = morphism_of(C, (1, 0), 2)

    assert C.compose(swap, swap) == C.identity(2)
    assert find_inverse(C, swap) == swap
    assert invert(C, C.identity(1)) == C.identity(1)


def test_non_injective_map_is_not_invertible():
    C = finset_skeleton(2)
    constant = morphism_of(C, (0, 0), 2)

    assert find_inverse(C, constant) is None
    with pytest.raises(NotInvertible):
        invert(C, constant)


def test_compose_rejects_mismatched_morphisms():
    C = arrow_category()

    with pytest.raises(NotComposable):
        C.compose(2, 1)
    with pytest.raises(IndexOutOfRange):
        C.morphism(3)
    assert C.compose_path(1, 2, 0) == 2


def test_inverse_is_an_involution():
    C = finset_skeleton(3)
    for m in range(C.size):
        if (g := find_inverse(C, m)) is not None:
            assert find_inverse(C, g) == m


@pytest.mark.parametrize("table", [ARROW_TABLE, CYCLIC3_TABLE], ids=["arrow", "cyclic3"])
@given(data=st.data())
@QUICK_SETTINGS
def test_single_entry_mutation_is_reported(table, data):
    compose = list(table["compose"])
    position = data.draw(st.integers(min_value=0, max_value=len(compose) - 1))
    g, f, gf = compose[position]
    replacement = data.draw(
        st.sampled_from([m for m in range(len(table["arrows"])) if m != gf])
    )
    compose[position] = (g, f, replacement)

    assert check_category(_from_table(table, compose)).ok is False


def test_product_category():
    A = arrow_category()
    P = product_category(A, A)

    assert P.n_objects == 4
    assert P.size == 9
    assert check_category(P).ok


def test_functor_checks():
    A = arrow_category()
    identity = identity_functor(A)
    collapse = Functor("collapse", A, A, (1, 1), (1, 1, 1))
    broken = Functor("broken", A, A, (0, 1), (0, 1, 1))

    assert check_functor(identity).ok
    assert check_functor(collapse).ok
    assert check_functor(compose_functors(collapse, identity)).ok
    assert "functor-type" in check_functor(broken).kinds()


def test_compose_functors_requires_matching_ends():
    one, two = terminal_category(), arrow_category()
    point = Functor("point", one, two, (1,), (1,))

    with pytest.raises(NotComposable):
        compose_functors(point, point)


def test_transformation_shape_is_checked():
    A = arrow_category()
    identity = identity_functor(A)

    with pytest.raises(IndexOutOfRange):
        NatTrans("short", identity, identity, (0,))
    with pytest.raises(NotComposable):
        NatTrans("skew", identity, identity_functor(terminal_category()), (0, 1))
    with pytest.raises(ComponentTypeMismatch):
        check_naturality(NatTrans("typo", identity, identity, (0, 2)))


def test_natural_endomorphisms_of_doubling(f_dbl, beta_swap):
    F = f_dbl.underlying
    everything = enumerate_nat_trans(F, F)
    automorphisms = enumerate_nat_trans(F, F, invertible_only=True)

    assert len(everything) == 4
    assert len(automorphisms) == 2
    assert check_naturality(beta_swap).ok
    assert any(tau.components == beta_swap.components for tau in automorphisms)


def test_enumeration_respects_bound(f_dbl):
    F = f_dbl.underlying

    with pytest.raises(SearchSpaceTooLarge):
        enumerate_nat_trans(F, F, bound=10)


def test_vertical_composite_of_swap_is_identity(f_dbl, beta_swap):
    twice = vert_comp(beta_swap, beta_swap)

    assert twice.components == identity_transformation(f_dbl.underlying).components


def test_horizontal_composite_with_identity(f_dbl, beta_swap):
    D = f_dbl.target.base
    unit = identity_transformation(identity_functor(D))

    assert horizontal_comp(unit, beta_swap).components == beta_swap.components


@given(data=st.data())
@STANDARD_SETTINGS
def test_whiskering_preserves_vertical_composition(f_dbl, data):
    F = f_dbl.underlying
    taus = enumerate_nat_trans(F, F)
    first = data.draw(st.sampled_from(taus))
    second = data.draw(st.sampled_from(taus))
    H = identity_functor(F.target)

    whiskered = whisker(H, vert_comp(second, first), None)
    composed = vert_comp(whisker(H, second, None), whisker(H, first, None))

    assert whiskered.components == composed.components


def test_lazy_tables_share_values_across_threads():
    values = LazyValues(50, lambda i: [i])
    mapping = FunctionMapping(lambda key: [key], lambda: range(50))

    with ThreadPoolExecutor(max_workers=8) as pool:
        results = list(
            pool.map(lambda i: (values[i % 50], mapping[i % 50]), range(1000))
        )

    for i, (item, value) in enumerate(results):
        assert item == [i % 50]
        assert item is values[i % 50]
        assert value is mapping[i % 50]


def test_inverses_under_threads():
    serial = finset_skeleton(3)
    expected = [find_inverse(serial, m) for m in range(serial.size)]
    threaded = finset_skeleton(3)

    with ThreadPoolExecutor(max_workers=8) as pool:
        found = list(
            pool.map(lambda m: find_inverse(threaded, m), range(threaded.size))
        )

    assert found == expected
