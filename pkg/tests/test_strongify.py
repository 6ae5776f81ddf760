"""Tests for f-isomorphisms and strength certification."""
from __future__ import annotations

import dataclasses

import pytest

from noncanon.exceptions import (
    ComponentTypeMismatch,
    HypothesisViolated,
    NotAnFIsomorphism,
)
from noncanon.famf import finset_coproducts
from noncanon.fincat import find_inverse, finset_skeleton, morphism_of
from noncanon.freemono import comparison_cell
from noncanon.fixtures import PHI_CANONICAL, PHI_SWAPPED, PHI_TWISTED
from noncanon.models import KIND_PHI
from noncanon.monoidal import identity_monoidal
from noncanon.strongify import (
    NON_EXISTENCE,
    REJECTED,
    STRONG,
    CandidatePsi,
    build_psi,
    check_f_isomorphism,
    extract_inverse,
    search_f_isomorphisms,
    strongify_end_to_end,
)


def _phi(builtins, name: str):
    return builtins.family(KIND_PHI, "f_dbl:2", name)


def test_psi_from_canonical_phi(builtins, f_dbl):
    psi = build_psi(_phi(builtins, PHI_CANONICAL), f_dbl, 3)

    assert psi.component(()) == f_dbl.phi0
    assert psi.component((1,)) == f_dbl.target.id(2)
    assert psi.component((1, 1)) == f_dbl.phi_at(1, 1)
    assert check_f_isomorphism(psi).ok


@pytest.mark.parametrize("name", [PHI_CANONICAL, PHI_TWISTED])
def test_strongify_from_phi(builtins, f_dbl, name):
    witness = strongify_end_to_end(f_dbl, phi=_phi(builtins, name), max_len=3)
    D = f_dbl.target.base

    assert witness.verdict == STRONG
    assert witness.holds
    for word, inverse in witness.inverses.items():
        assert inverse == find_inverse(D, comparison_cell(f_dbl, word))


def test_swapped_phi_still_certifies(builtins, f_dbl):
    phi = _phi(builtins, PHI_SWAPPED)
    assert not check_f_isomorphism(build_psi(phi, f_dbl, 2)).ok

    witness = strongify_end_to_end(f_dbl, phi=phi, max_len=2)
    D = f_dbl.target.base

    assert witness.verdict == STRONG
    assert witness.report.ok
    for word, inverse in witness.inverses.items():
        assert inverse == find_inverse(D, comparison_cell(f_dbl, word))


@pytest.mark.parametrize("with_unit", [False, True])
def test_partial_psi_is_not_certified(f_sq, with_unit):
    psi = CandidatePsi(f_sq, 3, {(): f_sq.phi0} if with_unit else {})

    report = check_f_isomorphism(psi)

    assert not report.ok
    assert report.kinds() == {"coverage"}
    assert ((1, 1),) in [v.instance for v in report.of_kind("coverage")]

    witness = strongify_end_to_end(f_sq, psi=psi, max_len=3)
    assert witness.verdict == REJECTED
    assert not witness.inverses


def test_identity_family_violates_premise(f_dbl):
    D = f_dbl.target.base
    phi = {(x, y): D.identity(2 * (x + y)) for x, y in f_dbl.source.pairs()}

    with pytest.raises(HypothesisViolated) as info:
        build_psi(phi, f_dbl, 2)
    assert info.value.which == "premise"
    assert not info.value.report.ok


def test_premises_need_braiding():
    M = dataclasses.replace(finset_coproducts(finset_skeleton(1)).monoidal, braiding=None)
    F = identity_monoidal(M)

    with pytest.raises(HypothesisViolated) as info:
        build_psi(F.phi, F, 2)
    assert info.value.which == "braiding"


def test_premises_need_normality(f_dbl):
    D = f_dbl.target.base
    broken = dataclasses.replace(f_dbl, phi0=morphism_of(D, (0, 0), 2))

    with pytest.raises(HypothesisViolated) as info:
        build_psi(f_dbl.phi, broken, 2)
    assert info.value.which == "normality"
    assert search_f_isomorphisms(broken, 2) == ([], 0)


def test_squaring_has_no_f_isomorphism(f_sq):
    found, searched = search_f_isomorphisms(f_sq, 2)

    assert found == []
    assert searched == 2

    witness = strongify_end_to_end(f_sq, max_len=2)
    assert witness.verdict == NON_EXISTENCE
    assert witness.searched == 2
    assert witness.to_dict()["verdict"] == NON_EXISTENCE


def test_search_finds_f_isomorphism_for_shift(builtins):
    F = builtins.monoidal_functor("shift:3:1")
    found, searched = search_f_isomorphisms(F, 3)

    assert searched == 3
    assert found
    witness = strongify_end_to_end(F, max_len=3)
    assert witness.verdict == STRONG
    assert witness.inverses[(0, 0)] == find_inverse(F.target.base, F.phi_at(0, 0))


def test_search_finds_doubling_f_isomorphisms(f_dbl):
    found, searched = search_f_isomorphisms(f_dbl, 2)

    assert searched == 2
    assert found
    assert all(check_f_isomorphism(psi).ok for psi in found)


def test_extract_inverse_refuses_rejected_candidate(builtins, f_dbl):
    psi = build_psi(_phi(builtins, PHI_SWAPPED), f_dbl, 2)

    with pytest.raises(NotAnFIsomorphism):
        extract_inverse(psi, (1, 1))


def test_ill_typed_candidate_raises(f_dbl):
    D = f_dbl.target.base
    psi = CandidatePsi(f_dbl, 1, {(): f_dbl.phi0, (1,): D.identity(0)})

    with pytest.raises(ComponentTypeMismatch):
        check_f_isomorphism(psi)


def test_witness_serializes_words(builtins, f_dbl):
    witness = strongify_end_to_end(f_dbl, phi=_phi(builtins, PHI_CANONICAL), max_len=2)
    data = witness.to_dict()

    assert data["functor"] == "F_dbl"
    assert data["max_word_len"] == 2
    assert data["psi"][0] == [[], f_dbl.phi0]
    assert data["report"]["ok"] is True
