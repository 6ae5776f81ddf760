"""Tests for the truncated free monoidal category and the fold algebra."""
from __future__ import annotations

import dataclasses

from hypothesis import given, strategies as st
import pytest

from noncanon.exceptions import InvalidParameter, SearchSpaceTooLarge, TruncationExceeded
from noncanon.fincat import (
    check_category,
    check_functor,
    check_naturality,
    finset_skeleton,
    morphism_of,
)
from noncanon.freemono import (
    algebra_cell,
    all_words,
    build_free,
    check_lax_algebra,
    check_lax_morphism,
    comparison_cell,
    comparison_family,
    concat_cell,
    flatten,
    fold,
    fold_mor,
    fold_functor,
    foldable_words,
    is_foldable,
    lift_functor,
    singletons,
)
from noncanon.fixtures import arrow_category
from noncanon.monoidal import check_monoidal_category

from tests.settings import STANDARD_SETTINGS

words_of_words = st.lists(
    st.lists(st.integers(min_value=0, max_value=2), max_size=3).map(tuple), max_size=3
).map(tuple)


def test_all_words_shortest_first():
    words = all_words([0, 1], 2)

    assert words[0] == ()
    assert len(words) == 7
    assert [len(w) for w in words] == sorted(len(w) for w in words)


@given(nested=words_of_words)
@STANDARD_SETTINGS
def test_flatten_is_associative_and_unital(nested):
    word = flatten(nested)

    assert flatten(singletons(word)) == word
    assert flatten((word,)) == word
    assert flatten(tuple(flatten(singletons(w)) for w in nested)) == word


def test_free_category_on_arrow():
    free = build_free(arrow_category(), 2)

    assert len(free.words) == 7
    assert free.category.size == 13
    assert free.word(free.monoidal.unit) == ()
    assert check_category(free.category).ok
    assert check_monoidal_category(free.monoidal).ok


def test_free_tensor_concatenates():
    free = build_free(arrow_category(), 2)
    M = free.monoidal
    x, y = free.index((0,)), free.index((1,))

    assert free.word(M.tensor(x, y)) == (0, 1)
    assert not M.has_tensor(free.index((0, 1)), y)
    product = M.tensor_mor(free.morphism((2,)), free.morphism((1,)))
    assert free.category.label(product) == (2, 1)


def test_build_free_parameters():
    with pytest.raises(InvalidParameter):
        build_free(arrow_category(), 0)
    with pytest.raises(SearchSpaceTooLarge):
        build_free(finset_skeleton(2), 3, bound=10)
    with pytest.raises(TruncationExceeded):
        build_free(arrow_category(), 1, words=[(0, 1)])


def test_fold_in_finset(finset2):
    M = finset2.monoidal

    assert fold(M, ()) == 0
    assert fold(M, (1, 0, 1)) == 2
    assert not is_foldable(M, (2, 1))
    assert len(foldable_words(M, 2)) == 10


def test_fold_functor_is_a_functor(finset2):
    M = finset2.monoidal
    free = build_free(M.base, 2, words=foldable_words(M, 2))

    assert check_functor(fold_functor(M, free)).ok


def test_algebra_cells_of_strict_structure_are_identities(finset2):
    M = finset2.monoidal

    assert algebra_cell(M, ((1,), (), (1,))) == M.id(2)
    assert algebra_cell(M, ((1, 0),)) == M.id(1)


def test_cocartesian_fold_is_lax_algebra(finset2):
    report = check_lax_algebra(finset2.monoidal, 3)

    assert report.ok, report.violations
    assert report.counts["multiplication"] > 0
    assert report.counts["unit"] > 0


def test_broken_unitor_breaks_lax_algebra(finset2):
    M = finset2.monoidal
    C = M.base
    lunitor = [M.lunit(x) for x in C.objects]
    lunitor[2] = morphism_of(C, (1, 0), 2)
    broken = dataclasses.replace(M, left_unitor=lunitor)

    report = check_lax_algebra(broken, 3)
    assert "multiplication" in report.kinds()
    assert ((), (1,), (1,)) in [v.instance for v in report.of_kind("unit")]


def test_lax_algebra_respects_bound(finset2):
    with pytest.raises(SearchSpaceTooLarge):
        check_lax_algebra(finset2.monoidal, 3, bound=10)


def test_comparison_cells(f_dbl):
    D = f_dbl.target.base

    assert comparison_cell(f_dbl, ()) == f_dbl.phi0
    assert comparison_cell(f_dbl, (1,)) == D.identity(2)
    assert comparison_cell(f_dbl, (1, 1)) == f_dbl.phi_at(1, 1)
    with pytest.raises(TruncationExceeded):
        comparison_cell(f_dbl, (1, 1), max_len=1)


@pytest.mark.parametrize("functor", ["f_dbl:2", "f_sq:2", "shift:3:1"])
def test_comparison_cells_form_lax_morphism(builtins, functor):
    F = builtins.monoidal_functor(functor)
    report = check_lax_morphism(F, 2)

    assert report.ok, report.violations
    assert check_naturality(comparison_family(F, 2).transformation).ok


def test_lift_functor_letterwise(builtins):
    d0 = builtins.functor("d0")
    source = build_free(d0.source, 2)
    target = build_free(d0.target, 2)
    lifted = lift_functor(d0, 2, source=source, target=target)

    assert lifted.obj(source.index((0, 0))) == target.index((1, 1))
    assert lifted.obj(source.index(())) == target.index(())
    assert lifted.phi0 == target.category.identity(target.index(()))


def test_fold_mor_in_delooping(delooping3):
    assert fold_mor(delooping3, (1, 2)) == 0
    assert fold_mor(delooping3, (1, 1)) == 2
    assert fold_mor(delooping3, ()) == delooping3.id(delooping3.unit)


def test_concat_cell_boundaries(finset2):
    M = finset2.monoidal

    assert concat_cell(M, (), (1,)) == M.lunit(1)
    assert concat_cell(M, (1,), ()) == M.runit(1)
    assert concat_cell(M, (1,), (1,)) == M.id(2)
