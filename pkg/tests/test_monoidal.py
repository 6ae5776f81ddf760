"""Tests for monoidal categories, functors and transformations."""
from __future__ import annotations

import dataclasses

import pytest

from noncanon.exceptions import ComponentTypeMismatch, MissingBraiding, NotComposable
from noncanon.famf import finset_coproducts
from noncanon.fincat import NatTrans, finset_skeleton, function_of, morphism_of
from noncanon.fixtures import cyclic_monoidal, delooping_monoidal, shift_functor
from noncanon.monoidal import (
    MonoidalFunctor,
    MonoidalTransformation,
    check_binary_premise,
    check_braiding,
    check_monoidal_category,
    check_monoidal_functor,
    check_monoidal_transformation,
    compose_monoidal,
    identity_monoidal,
    interchange,
    inverse_transformation,
    is_normal,
    is_strong,
    reverse_braiding,
    transport_structure,
)


def test_finset_cocartesian_structure_passes(finset2):
    M = finset2.monoidal
    report = check_monoidal_category(M)

    assert report.ok, report.violations
    assert report.counts["pentagon"] > 0
    assert report.counts["triangle"] > 0
    assert check_braiding(M).ok


def test_finset_tensor_is_partial(finset2):
    M = finset2.monoidal

    assert M.tensor(1, 1) == 2
    assert M.has_tensor(1, 1)
    assert not M.has_tensor(2, 1)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_cyclic_and_delooping_pass(n):
    for M in (cyclic_monoidal(n), delooping_monoidal(n)):
        assert check_monoidal_category(M).ok
        assert check_braiding(M).ok


def test_swapped_associator_is_reported(finset2):
    M = finset2.monoidal
    C = M.base
    associator = {key: M.associator[key] for key in M.associator}
    associator[(1, 1, 0)] = morphism_of(C, (1, 0), 2)
    broken = dataclasses.replace(M, associator=associator)

    assert not check_monoidal_category(broken).ok


def test_bad_braiding_is_reported(finset2):
    M = finset2.monoidal
    C = M.base
    braiding = {key: M.braiding[key] for key in M.braiding}
    braiding[(1, 1)] = C.identity(2)
    broken = dataclasses.replace(M, braiding=braiding)

    assert not check_braiding(broken).ok


def test_reverse_braiding_of_symmetric_structure(finset2):
    M = finset2.monoidal
    reversed_ = reverse_braiding(M)

    assert check_braiding(reversed_).ok
    for key in M.pairs():
        assert reversed_.braid(*key) == M.braid(*key)


def test_missing_braiding(finset2):
    M = dataclasses.replace(finset2.monoidal, braiding=None)

    with pytest.raises(MissingBraiding):
        M.braid(0, 1)


def test_interchange_swaps_middle_letters(finset2):
    M = finset2.monoidal
    C = M.base

    m = interchange(M, 1, 0, 0, 1)

    assert C.src(m) == 2
    assert C.dst(m) == 2
    assert function_of(C, m) == (0, 1)
    assert function_of(C, interchange(M, 0, 1, 1, 0)) == (1, 0)


def test_doubling_is_strong_monoidal(f_dbl):
    assert check_monoidal_functor(f_dbl).ok
    assert is_normal(f_dbl)
    strength = is_strong(f_dbl)
    assert strength.holds
    assert () in strength.inverses


def test_squaring_is_lax_but_not_strong(f_sq):
    assert check_monoidal_functor(f_sq).ok
    strength = is_strong(f_sq)

    assert not strength
    assert strength.failure == (1, 1)


def test_shift_functors(delooping3):
    for c in range(3):
        assert check_monoidal_functor(shift_functor(delooping3, c)).ok


def test_wrong_unit_comparison_is_reported(delooping3):
    F = shift_functor(delooping3, 1)
    broken = dataclasses.replace(F, phi0=0)

    assert "left-unit" in check_monoidal_functor(broken).kinds()


def test_ill_typed_comparison_raises(f_dbl):
    D = f_dbl.target.base
    phi = {key: f_dbl.phi_at(*key) for key in f_dbl.source.pairs()}
    phi[(1, 1)] = D.identity(2)
    broken = dataclasses.replace(f_dbl, phi=phi)

    with pytest.raises(ComponentTypeMismatch):
        check_monoidal_functor(broken)


def test_identity_and_composite_monoidal_functors(delooping3):
    one, two = shift_functor(delooping3, 1), shift_functor(delooping3, 1)
    composite = compose_monoidal(two, one)

    assert check_monoidal_functor(identity_monoidal(delooping3)).ok
    assert check_monoidal_functor(composite).ok
    assert composite.phi_at(0, 0) == 2
    assert composite.phi0 == 1


def _finset1_monoidal():
    return finset_coproducts(finset_skeleton(1)).monoidal


def _shift_transformation(M, c: int, d: int, component: int) -> MonoidalTransformation:
    F, G = shift_functor(M, c), shift_functor(M, d)
    return MonoidalTransformation(
        "m", F, G, NatTrans("m", F.underlying, G.underlying, (component,))
    )


def test_monoidal_transformation_between_shifts(delooping3):
    m = _shift_transformation(delooping3, 1, 2, 2)

    assert check_monoidal_transformation(m).ok
    assert check_monoidal_transformation(inverse_transformation(m)).ok


def test_wrong_monoidal_transformation_is_reported(delooping3):
    kinds = check_monoidal_transformation(
        _shift_transformation(delooping3, 1, 2, 0)
    ).kinds()

    assert kinds == {"binary", "nullary"}


def test_monoidal_transformation_needs_parallel_functors(delooping3):
    F = shift_functor(delooping3, 1)
    other = shift_functor(delooping_monoidal(3), 1)
    m = MonoidalTransformation(
        "m", F, other, NatTrans("m", F.underlying, F.underlying, (0,))
    )

    with pytest.raises(NotComposable):
        check_monoidal_transformation(m)


def test_transport_along_swap_keeps_doubling(f_dbl, beta_swap):
    twisted = transport_structure(f_dbl, beta_swap)

    assert check_monoidal_functor(twisted).ok
    for key in f_dbl.source.pairs():
        assert twisted.phi_at(*key) == f_dbl.phi_at(*key)


def test_binary_premise(f_dbl):
    phi = {key: f_dbl.phi_at(*key) for key in f_dbl.source.pairs()}

    assert check_binary_premise(f_dbl, phi).ok


def test_binary_premise_rejects_identity_family(f_dbl):
    D = f_dbl.target.base
    phi = {(x, y): D.identity(2 * (x + y)) for x, y in f_dbl.source.pairs()}

    assert not check_binary_premise(f_dbl, phi).ok


def test_binary_premise_needs_braidings():
    M = dataclasses.replace(_finset1_monoidal(), braiding=None)
    F = identity_monoidal(M)

    with pytest.raises(MissingBraiding):
        check_binary_premise(F, F.phi)


def test_monoidal_functor_is_frozen(f_dbl):
    assert isinstance(f_dbl, MonoidalFunctor)
    with pytest.raises(dataclasses.FrozenInstanceError):
        f_dbl.phi0 = 1
