"""Deciding strength of monoidal functors through f-isomorphisms.

A candidate family ψ_w: fold(F w) → F(fold w) indexed by words is an
f-isomorphism when it is invertible, natural in the free category and
monoidal. Any f-isomorphism yields an explicit inverse of every comparison
cell, so its existence certifies that the functor is strong.
"""
from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field
import itertools
import logging
from typing import Optional

from .const import DEFAULT_MAX_WORD_LEN, DEFAULT_SEARCH_BOUND
from .exceptions import (
    ComponentTypeMismatch,
    HypothesisViolated,
    InternalProofMismatch,
    NotAnFIsomorphism,
    NotInvertible,
    TruncationExceeded,
)
from .fincat import ProductSeq, enumerate_nat_trans, find_inverse, invert
from .freemono import (
    Word,
    admissible_words,
    algebra_cell,
    check_pasting,
    comparison_cell,
    concat_cell,
    fold,
    fold_mor,
    singletons,
)
from .monoidal import (
    MonoidalFunctor,
    check_binary_premise,
    check_braiding,
    is_normal,
    is_strong,
)
from .report import ValidationReport, to_plain

_LOGGER = logging.getLogger(__name__)

STRONG = "strong"
NON_EXISTENCE = "non-existence"
REJECTED = "rejected"


@dataclass(frozen=True)
class CandidatePsi:
    """A word-indexed family ψ_w: fold(F w) → F(fold w)."""

    functor: MonoidalFunctor
    max_len: int
    components: Mapping[Word, int]

    def component(self, word: Word) -> int:
        """Return ψ at a word."""
        try:
            return self.components[tuple(word)]
        except KeyError as err:
            raise TruncationExceeded(f"ψ has no component at {word}") from err

    def image(self, word: Word) -> Word:
        """Return the word F(w)."""
        return tuple(self.functor.obj(x) for x in word)


def _check_types(psi: CandidatePsi) -> None:
    F = psi.functor
    D = F.target.base
    for word, m in psi.components.items():
        expected = (fold(F.target, psi.image(word)), F.obj(fold(F.source, word)))
        record = D.morphism(m)
        if (record.src, record.dst) != expected:
            raise ComponentTypeMismatch(
                f"ψ at {word} is {record.src} → {record.dst}, "
                f"expected {expected[0]} → {expected[1]}"
            )


def check_f_isomorphism(psi: CandidatePsi) -> ValidationReport:
    """Check invertibility, naturality and monoidality of a candidate family.

    A candidate missing a component at some admissible word is reported under
    "coverage" and checked no further.

    Args:
        psi: The candidate; its components must be well typed.

    Returns:
        A report that is empty exactly when ψ is an f-isomorphism at the
        candidate's truncation.
    """
    _check_types(psi)
    F = psi.functor
    S, T = F.source, F.target
    A, D = S.base, T.base
    report = ValidationReport(f"f-isomorphism for {F.name} at length {psi.max_len}")
    for word in admissible_words(F, psi.max_len):
        report.check("coverage", (word,), word in psi.components)
    if not report.ok:
        _LOGGER.debug("%s", report)
        return report
    words = sorted(psi.components, key=lambda w: (len(w), w))

    for word in words:
        report.check(
            "invertibility", (word,), find_inverse(D, psi.component(word)) is not None
        )
    for w, w2 in itertools.product(words, repeat=2):
        if len(w) != len(w2):
            continue
        for u in ProductSeq([A.hom(x, y) for x, y in zip(w, w2)]):
            report.evaluate(
                "naturality",
                (w, w2, u),
                lambda: (
                    D.compose(
                        psi.component(w2), fold_mor(T, tuple(F.mor(a) for a in u))
                    ),
                    D.compose(F.mor(fold_mor(S, u)), psi.component(w)),
                ),
            )
    for w, v in itertools.product(words, repeat=2):
        if w + v not in psi.components:
            continue
        report.evaluate(
            "monoidal-binary",
            (w, v),
            lambda: (
                D.compose(
                    psi.component(w + v), concat_cell(T, psi.image(w), psi.image(v))
                ),
                D.compose_path(
                    F.mor(concat_cell(S, w, v)),
                    F.phi_at(fold(S, w), fold(S, v)),
                    T.tensor_mor(psi.component(w), psi.component(v)),
                ),
            ),
        )
    report.check("monoidal-unit", (), psi.component(()) == F.phi0)
    check_pasting(psi.component, F, psi.max_len, report)
    _LOGGER.debug("%s", report)
    return report


def _recursive_family(
    F: MonoidalFunctor,
    max_len: int,
    letter: Mapping[int, int],
    twist: Mapping[tuple[int, int], int],
) -> dict[Word, int]:
    """ψ_() = φ₀, ψ_(x) = letter_x, ψ_{w·x} = twist_{fold w, x}∘(ψ_w⊗letter_x)."""
    S, T = F.source, F.target
    components: dict[Word, int] = {(): F.phi0}
    for word in admissible_words(F, max_len):
        if len(word) == 1:
            components[word] = letter[word[0]]
        elif len(word) > 1:
            head, x = word[:-1], word[-1]
            try:
                step = twist[(fold(S, head), x)]
            except KeyError as err:
                raise TruncationExceeded(f"φ missing at ({head}, {x})") from err
            components[word] = T.base.compose(
                step, T.tensor_mor(components[head], letter[x])
            )
    return components


def build_psi(
    phi: Mapping[tuple[int, int], int],
    F: MonoidalFunctor,
    max_len: int = DEFAULT_MAX_WORD_LEN,
    *,
    check_premises: bool = True,
) -> CandidatePsi:
    """Build ψ from a binary isomorphism φ by recursion on word length.

    Args:
        phi: Components φ_{x,y}: F(x)⊗F(y) → F(x⊗y).
        F: A normal monoidal functor between braided monoidal categories.
        max_len: The truncation.
        check_premises: Verify normality, the braiding, invertibility of φ
            and that φ is a monoidal transformation before building.

    Returns:
        The family with ψ_() = φ₀, ψ_(x) = id and
        ψ_{w·x} = φ_{fold w, x}∘(ψ_w⊗id).
    """
    S, T = F.source, F.target
    if check_premises:
        if not is_normal(F):
            raise HypothesisViolated("normality")
        if S.braiding is None or T.braiding is None:
            raise HypothesisViolated("braiding")
        if not (report := check_braiding(T)).ok:
            raise HypothesisViolated("braiding", report)
        for key in S.pairs():
            if key in phi and find_inverse(T.base, phi[key]) is None:
                raise HypothesisViolated("invertibility")
        if not (report := check_binary_premise(F, phi)).ok:
            raise HypothesisViolated("premise", report)
    identities = {x: T.id(F.obj(x)) for x in S.base.objects}
    components = _recursive_family(F, max_len, identities, phi)
    _LOGGER.debug("Built ψ for %s over %d words", F.name, len(components))
    return CandidatePsi(F, max_len, components)


def search_f_isomorphisms(
    F: MonoidalFunctor,
    max_len: int = DEFAULT_MAX_WORD_LEN,
    bound: int = DEFAULT_SEARCH_BOUND,
) -> tuple[list[CandidatePsi], int]:
    """Find every f-isomorphism at truncation `max_len`.

    An f-isomorphism is determined by its one-letter components, which form
    a natural automorphism β of F, through ψ_{w·x} = φ_{fold w, x}∘(ψ_w⊗β_x).
    The search enumerates those β and keeps the families that pass
    `check_f_isomorphism`.

    Returns:
        The f-isomorphisms found and the number of candidates examined.
    """
    if find_inverse(F.target.base, F.phi0) is None:
        return [], 0
    betas = enumerate_nat_trans(
        F.underlying, F.underlying, bound=bound, invertible_only=True, name="β"
    )
    found = []
    for beta in betas:
        letter = {x: beta.component(x) for x in F.source.base.objects}
        try:
            psi = CandidatePsi(
                F, max_len, _recursive_family(F, max_len, letter, F.phi)
            )
        except TruncationExceeded:
            continue
        if check_f_isomorphism(psi).ok:
            found.append(psi)
    _LOGGER.debug(
        "%d of %d candidates are f-isomorphisms for %s", len(found), len(betas), F.name
    )
    return found, len(betas)


def extract_inverse(
    psi: CandidatePsi, word: Word, report: Optional[ValidationReport] = None
) -> int:
    """Return the inverse of the comparison cell at a word, read off from ψ.

    The pasting equation at the word of one-letter words over w gives
    cell_w = F(z̄)⁻¹∘ψ_w∘z̄′∘fold(ψ_(x₁), …, ψ_(x_n))⁻¹, so the inverse is
    the reverse composite of the inverses. The empty word yields ψ_()⁻¹.

    Args:
        psi: An f-isomorphism.
        word: The word.
        report: A report of `check_f_isomorphism` for ψ, computed when omitted.

    Returns:
        The two-sided inverse of `comparison_cell(F, word)`.
    """
    if report is None:
        report = check_f_isomorphism(psi)
    if not report.ok:
        raise NotAnFIsomorphism(report)
    F = psi.functor
    S, T = F.source, F.target
    D = T.base
    word = tuple(word)
    try:
        candidate = D.compose_path(
            fold_mor(T, tuple(psi.component((x,)) for x in word)),
            invert(D, algebra_cell(T, singletons(psi.image(word)))),
            invert(D, psi.component(word)),
            F.mor(algebra_cell(S, singletons(word))),
        )
    except NotInvertible as err:
        raise InternalProofMismatch(f"inverse at {word}: {err}") from err
    cell = comparison_cell(F, word)
    if D.compose(candidate, cell) != D.identity(D.src(cell)) or D.compose(
        cell, candidate
    ) != D.identity(D.dst(cell)):
        raise InternalProofMismatch(f"composite at {word} is not an inverse")
    return candidate


@dataclass
class StrongMonoidalWitness:
    """Outcome of `strongify_end_to_end`."""

    functor: MonoidalFunctor
    max_len: int
    verdict: str
    psi: Optional[CandidatePsi] = None
    inverses: dict[Word, int] = field(default_factory=dict)
    report: Optional[ValidationReport] = None
    searched: Optional[int] = None

    @property
    def holds(self) -> bool:
        """Return whether strength was certified."""
        return self.verdict == STRONG

    def to_dict(self) -> dict:
        """Convert a class instance to a dictionary."""
        result: dict = {
            "functor": self.functor.name,
            "max_word_len": self.max_len,
            "verdict": self.verdict,
        }
        if self.psi is not None:
            result["psi"] = [
                [to_plain(w), m]
                for w, m in sorted(
                    self.psi.components.items(), key=lambda i: (len(i[0]), i[0])
                )
            ]
        if self.inverses:
            result["inverses"] = [
                [to_plain(w), m]
                for w, m in sorted(self.inverses.items(), key=lambda i: (len(i[0]), i[0]))
            ]
        if self.report is not None:
            result["report"] = self.report.to_dict()
        if self.searched is not None:
            result["searched"] = self.searched
        return result


def _fallback_psi(
    F: MonoidalFunctor, rejected: CandidatePsi, max_len: int, bound: int
) -> tuple[CandidatePsi, Optional[int]]:
    """Return the comparison cells, or a searched f-isomorphism, in place of ψ.

    The premises on φ already force F to be strong, so one of these passes
    whenever the truncation is large enough. `rejected` is returned when
    neither does.
    """
    try:
        comparison = CandidatePsi(
            F,
            max_len,
            {w: comparison_cell(F, w) for w in admissible_words(F, max_len)},
        )
    except TruncationExceeded:
        pass
    else:
        if check_f_isomorphism(comparison).ok:
            return comparison, None
    found, searched = search_f_isomorphisms(F, max_len, bound)
    return (found[0] if found else rejected), searched


def strongify_end_to_end(
    F: MonoidalFunctor,
    phi: Optional[Mapping[tuple[int, int], int]] = None,
    psi: Optional[CandidatePsi] = None,
    max_len: int = DEFAULT_MAX_WORD_LEN,
    bound: int = DEFAULT_SEARCH_BOUND,
) -> StrongMonoidalWitness:
    """Certify strength of F from φ, from ψ, or by exhaustive search.

    Args:
        F: The monoidal functor.
        phi: A binary isomorphism to build ψ from. When the recursion from
            it fails, the comparison cells or a searched family stand in.
        psi: A candidate f-isomorphism.
        max_len: The truncation.
        bound: The search bound when neither φ nor ψ is given.

    Returns:
        The witness: the inverse of every comparison cell on a strong
        verdict, the failing report on a rejected candidate, or a
        non-existence verdict after a complete search.
    """
    searched = None
    if phi is not None:
        psi = build_psi(phi, F, max_len)
        if not check_f_isomorphism(psi).ok:
            _LOGGER.info(
                "Recursion from the given φ fails for %s; trying other candidates",
                F.name,
            )
            psi, searched = _fallback_psi(F, psi, max_len, bound)
    elif psi is None:
        found, searched = search_f_isomorphisms(F, max_len, bound)
        if not found:
            _LOGGER.info("No f-isomorphism exists for %s", F.name)
            return StrongMonoidalWitness(F, max_len, NON_EXISTENCE, searched=searched)
        psi = found[0]
    report = check_f_isomorphism(psi)
    if not report.ok:
        _LOGGER.info("Candidate for %s rejected: %s", F.name, report)
        return StrongMonoidalWitness(F, max_len, REJECTED, psi, report=report)
    inverses = {w: extract_inverse(psi, w, report) for w in psi.components}
    if max_len >= 2 and not is_strong(F):
        raise InternalProofMismatch(f"{F.name} certified but not strong")
    _LOGGER.info("%s is strong at length %d", F.name, max_len)
    return StrongMonoidalWitness(
        F, max_len, STRONG, psi, inverses, report, searched
    )
