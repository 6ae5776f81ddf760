"""Truncated free strict monoidal categories and the fold algebra.

Words are tuples of object indices. A word of words is a tuple of words;
the monad multiplication is `flatten` and its unit is `singletons`.
"""
from __future__ import annotations

from collections.abc import Callable, Iterable, Iterator, Sequence
from dataclasses import dataclass
import itertools
import logging
from typing import Optional, final

from .const import DEFAULT_SEARCH_BOUND
from .exceptions import (
    InvalidParameter,
    NotComposable,
    NotInvertible,
    SearchSpaceTooLarge,
    TruncationExceeded,
)
from .fincat import (
    FinCategory,
    FunctionMapping,
    Functor,
    NatTrans,
    ProductSeq,
    check_naturality,
    compose_functors,
    find_inverse,
    functor_from,
    lazy_category,
)
from .monoidal import MonoidalFunctor, MonoidalStructure
from .report import ValidationReport

_LOGGER = logging.getLogger(__name__)

Word = tuple


def all_words(objects: Iterable[int], max_len: int) -> list[Word]:
    """Return every word of length at most `max_len`, shortest first."""
    objects = list(objects)
    return [
        word
        for length in range(max_len + 1)
        for word in itertools.product(objects, repeat=length)
    ]


def flatten(words: Sequence[Word]) -> Word:
    """Concatenate a word of words."""
    return tuple(itertools.chain.from_iterable(words))


def singletons(word: Word) -> tuple[Word, ...]:
    """Return the word of one-letter words over `word`."""
    return tuple((x,) for x in word)


@final
@dataclass(frozen=True, eq=False)
class FreeMonoidalCat:
    """The free strict monoidal category on a base, truncated at `max_len`."""

    base: FinCategory
    max_len: int
    words: tuple[Word, ...]
    category: FinCategory
    monoidal: MonoidalStructure

    def index(self, word: Word) -> int:
        """Return the object of a word."""
        return self.category.object_index(tuple(word))

    def word(self, x: int) -> Word:
        """Return the word of an object."""
        return self.words[x]

    def morphism(self, components: Sequence[int]) -> int:
        """Return the morphism given by a tuple of base morphisms."""
        base = self.base
        src = self.index(tuple(base.src(m) for m in components))
        dst = self.index(tuple(base.dst(m) for m in components))
        return self.category.morphism_index(src, dst, tuple(components))


def build_free(
    base: FinCategory,
    max_len: int,
    *,
    words: Optional[Iterable[Word]] = None,
    bound: int = DEFAULT_SEARCH_BOUND,
) -> FreeMonoidalCat:
    """Build the free strict monoidal category on `base`, truncated.

    Args:
        base: The base category.
        max_len: The largest word length, at least 1.
        words: Restrict the objects to these words; defaults to every word
            of length at most `max_len`.
        bound: The largest number of objects or morphisms allowed.

    Returns:
        The free category with its strict, partially defined tensor.
    """
    if max_len < 1:
        raise InvalidParameter(f"word length bound {max_len} must be at least 1")
    if words is None:
        words = all_words(base.objects, max_len)
    else:
        words = sorted({tuple(word) for word in words}, key=lambda w: (len(w), w))
    words = tuple(words)
    if any(len(word) > max_len for word in words):
        raise TruncationExceeded(f"words longer than {max_len} requested")
    if len(words) ** 2 > bound:
        raise SearchSpaceTooLarge(len(words) ** 2, bound, f"free category on {base.name}")

    def hom_labels(i: int, j: int) -> Sequence:
        source, target = words[i], words[j]
        if len(source) != len(target):
            return ()
        return ProductSeq([base.hom(x, y) for x, y in zip(source, target)])

    category = lazy_category(
        f"F{max_len}({base.name})",
        words,
        hom_labels,
        lambda g, f: tuple(base.compose(b, a) for b, a in zip(g, f)),
        lambda i: tuple(base.identity(x) for x in words[i]),
    )
    if category.size > bound:
        raise SearchSpaceTooLarge(category.size, bound, f"free category on {base.name}")
    position = {word: i for i, word in enumerate(words)}

    def tensor_object(key: tuple[int, int]) -> int:
        i, j = key
        return position[words[i] + words[j]]

    def tensor_keys() -> Iterator[tuple[int, int]]:
        for i, j in itertools.product(range(len(words)), repeat=2):
            if words[i] + words[j] in position:
                yield i, j

    def tensor_morphism(key: tuple[int, int]) -> int:
        f, g = key
        src = tensor_object((category.src(f), category.src(g)))
        dst = tensor_object((category.dst(f), category.dst(g)))
        return category.morphism_index(src, dst, category.label(f) + category.label(g))

    def tensor_morphism_keys() -> Iterator[tuple[int, int]]:
        for i, j in tensor_keys():
            for k, m in tensor_keys():
                for f in category.hom(i, k):
                    for g in category.hom(j, m):
                        yield f, g

    def associator(key: tuple[int, int, int]) -> int:
        x, y, z = key
        return category.identity(tensor_object((tensor_object((x, y)), z)))

    identities = FunctionMapping(category.identity, lambda: category.objects)
    monoidal = MonoidalStructure(
        category.name,
        category,
        FunctionMapping(tensor_object, tensor_keys),
        FunctionMapping(tensor_morphism, tensor_morphism_keys),
        position[()] if () in position else -1,
        FunctionMapping(
            associator,
            lambda: (
                (x, y, z)
                for x, y, z in itertools.product(category.objects, repeat=3)
                if words[x] + words[y] + words[z] in position
            ),
        ),
        identities,
        identities,
    )
    _LOGGER.debug(
        "Built %s with %d words and %d morphisms", category.name, len(words), category.size
    )
    return FreeMonoidalCat(base, max_len, words, category, monoidal)


def fold(M: MonoidalStructure, word: Word) -> int:
    """Return the left-nested tensor of a word; the empty word folds to I."""
    if not word:
        return M.unit
    result = word[0]
    for x in word[1:]:
        result = M.tensor(result, x)
    return result


def fold_mor(M: MonoidalStructure, morphisms: Sequence[int]) -> int:
    """Return the left-nested tensor of a tuple of morphisms."""
    if not morphisms:
        return M.id(M.unit)
    result = morphisms[0]
    for m in morphisms[1:]:
        result = M.tensor_mor(result, m)
    return result


def is_foldable(M: MonoidalStructure, word: Word) -> bool:
    """Return whether every tensor in the fold of a word is defined."""
    try:
        fold(M, word)
    except TruncationExceeded:
        return False
    return True


def foldable_words(M: MonoidalStructure, max_len: int) -> list[Word]:
    """Return the words of length at most `max_len` that fold."""
    return [w for w in all_words(M.base.objects, max_len) if is_foldable(M, w)]


def admissible_words(F: MonoidalFunctor, max_len: int) -> list[Word]:
    """Return the words that fold in the source and whose image folds in the target."""
    return [
        w
        for w in foldable_words(F.source, max_len)
        if is_foldable(F.target, tuple(F.obj(x) for x in w))
    ]


def fold_functor(M: MonoidalStructure, free: FreeMonoidalCat) -> Functor:
    """Return the fold as a functor from a free category into M's base."""
    category = free.category
    return functor_from(
        f"fold_{M.name}",
        category,
        M.base,
        lambda i: fold(M, free.word(i)),
        lambda m: fold_mor(M, category.label(m)),
    )


def lift_functor(
    f: Functor,
    max_len: int,
    *,
    source: Optional[FreeMonoidalCat] = None,
    target: Optional[FreeMonoidalCat] = None,
) -> MonoidalFunctor:
    """Apply a functor letter by letter, as a strict monoidal functor.

    Args:
        f: The functor on the bases.
        max_len: The truncation.
        source: The free category on `f.source`; built in full when omitted.
        target: The free category on `f.target`; defaults to `source` for an
            endofunctor and to the full free category otherwise.

    Returns:
        The lifted functor with identity comparison cells.
    """
    if source is None:
        source = build_free(f.source, max_len)
    if target is None:
        target = source if f.target is f.source else build_free(f.target, max_len)
    S, T = source.monoidal, target.monoidal
    src_cat, dst_cat = source.category, target.category

    def on_morphism(m: int) -> int:
        return dst_cat.morphism_index(
            on_object(src_cat.src(m)),
            on_object(src_cat.dst(m)),
            tuple(f.mor(a) for a in src_cat.label(m)),
        )

    def on_object(x: int) -> int:
        return target.index(tuple(f.obj(y) for y in source.word(x)))

    underlying = functor_from(f"F({f.name})", src_cat, dst_cat, on_object, on_morphism)
    return MonoidalFunctor(
        underlying.name,
        underlying,
        S,
        T,
        FunctionMapping(
            lambda key: dst_cat.identity(on_object(S.tensor(*key))), S.pairs
        ),
        dst_cat.identity(on_object(S.unit)),
    )


def comparison_cell(
    F: MonoidalFunctor, word: Word, max_len: Optional[int] = None
) -> int:
    """Return the comparison fold(F w) → F(fold w) at a word.

    The empty word gives φ₀, a one-letter word gives the identity and
    w·x gives φ_{fold w, x}∘(cell(w)⊗id_{F x}).
    """
    if max_len is not None and len(word) > max_len:
        raise TruncationExceeded(f"word of length {len(word)} exceeds {max_len}")
    S, T = F.source, F.target
    if not word:
        return F.phi0
    cell = T.id(F.obj(word[0]))
    prefix = word[0]
    for x in word[1:]:
        cell = T.base.compose(
            F.phi_at(prefix, x), T.tensor_mor(cell, T.id(F.obj(x)))
        )
        prefix = S.tensor(prefix, x)
    return cell


def concat_cell(M: MonoidalStructure, w: Word, v: Word) -> int:
    """Return fold(w)⊗fold(v) → fold(w·v), built from associators and unitors."""
    if not w:
        return M.lunit(fold(M, v))
    if not v:
        return M.runit(fold(M, w))
    if len(v) == 1:
        return M.id(fold(M, w + v))
    head, last = v[:-1], v[-1]
    return M.base.compose(
        M.tensor_mor(concat_cell(M, w, head), M.id(last)),
        M.assoc_inverse(fold(M, w), fold(M, head), last),
    )


def algebra_cell(M: MonoidalStructure, words: Sequence[Word]) -> int:
    """Return the structure cell fold(fold v₁, …, fold v_r) → fold(v₁⋯v_r)."""
    words = tuple(words)
    if len(words) <= 1:
        return M.id(fold(M, tuple(fold(M, v) for v in words)))
    prefix, last = words[:-1], words[-1]
    return M.base.compose(
        concat_cell(M, flatten(prefix), last),
        M.tensor_mor(algebra_cell(M, prefix), M.id(fold(M, last))),
    )


def _tuples(parts: int, max_total: int) -> Iterator[tuple[int, ...]]:
    for candidate in itertools.product(range(max_total + 1), repeat=parts):
        if sum(candidate) <= max_total:
            yield candidate


def _compositions(max_parts: int, max_total: int) -> Iterator[tuple[int, ...]]:
    for parts in range(max_parts + 1):
        yield from _tuples(parts, max_total)


def _fill(shape: Sequence, letters: Iterator[int]):
    if isinstance(shape, int):
        return tuple(next(letters) for _ in range(shape))
    return tuple(_fill(part, letters) for part in shape)


def _letters(shape) -> int:
    if isinstance(shape, int):
        return shape
    return sum(_letters(part) for part in shape)


def words_of_words(objects: Sequence[int], max_len: int) -> Iterator[tuple[Word, ...]]:
    """Iterate over words of words with at most `max_len` words and letters."""
    for shape in _compositions(max_len, max_len):
        for letters in itertools.product(objects, repeat=sum(shape)):
            yield _fill(shape, iter(letters))


def _nested_shapes(max_len: int) -> Iterator[tuple]:
    for counts in _compositions(max_len, max_len):
        for lengths in _tuples(sum(counts), max_len):
            groups = iter(lengths)
            yield tuple(tuple(next(groups) for _ in range(c)) for c in counts)


def nested_words(objects: Sequence[int], max_len: int) -> Iterator[tuple]:
    """Iterate over words of words of words, each level bounded by `max_len`."""
    for shape in _nested_shapes(max_len):
        for letters in itertools.product(objects, repeat=_letters(shape)):
            yield _fill(shape, iter(letters))


def _instance_count(objects: int, shapes: Iterable) -> int:
    return sum(objects ** _letters(shape) for shape in shapes)


def check_lax_algebra(
    M: MonoidalStructure, max_len: int, *, bound: int = DEFAULT_SEARCH_BOUND
) -> ValidationReport:
    """Check the lax-algebra axioms of the fold at truncation `max_len`.

    The multiplication axiom is evaluated at every word of words of words
    that fits the truncation. The unit axioms insert an empty word before or
    after every pair of words, where the left unitor must agree with
    λ_{a⊗b}∘α_{I,a,b} and the right unitor must be natural. Every structure
    cell is tested for invertibility.
    """
    objects = list(M.base.objects)
    count = _instance_count(len(objects), _nested_shapes(max_len))
    if count > bound:
        raise SearchSpaceTooLarge(count, bound, f"lax algebra {M.name}")
    report = ValidationReport(f"lax algebra {M.name} at length {max_len}")
    C = M.base

    for nested in nested_words(objects, max_len):
        report.evaluate(
            "multiplication",
            nested,
            lambda: (
                C.compose(
                    algebra_cell(M, tuple(flatten(v) for v in nested)),
                    fold_mor(M, tuple(algebra_cell(M, v) for v in nested)),
                ),
                C.compose(
                    algebra_cell(M, flatten(nested)),
                    algebra_cell(
                        M, tuple(tuple(fold(M, w) for w in v) for v in nested)
                    ),
                ),
            ),
        )
    for w, v in itertools.product(all_words(objects, max_len), repeat=2):
        if len(w) + len(v) > max_len:
            continue
        report.evaluate(
            "unit",
            ((), w, v),
            lambda: (
                algebra_cell(M, ((), w, v)),
                C.compose_path(
                    algebra_cell(M, (w, v)),
                    M.lunit(M.tensor(fold(M, w), fold(M, v))),
                    M.assoc(M.unit, fold(M, w), fold(M, v)),
                ),
            ),
        )
        report.evaluate(
            "unit",
            (w, v, ()),
            lambda: (
                algebra_cell(M, (w, v, ())),
                C.compose(
                    algebra_cell(M, (w, v)), M.runit(M.tensor(fold(M, w), fold(M, v)))
                ),
            ),
        )
    for words in words_of_words(objects, max_len):
        try:
            cell = algebra_cell(M, words)
        except TruncationExceeded:
            continue
        except (NotComposable, NotInvertible) as err:
            report.fail("invertibility", words, str(err))
            continue
        report.check("invertibility", words, find_inverse(C, cell) is not None)
    _LOGGER.debug("%s", report)
    return report


def check_pasting(
    family: Callable[[Word], int],
    F: MonoidalFunctor,
    max_len: int,
    report: ValidationReport,
    kind: str = "pasting",
) -> ValidationReport:
    """Check a word-indexed family against the algebra cells on both sides.

    For every word of words W the family must satisfy
    c_{flatten W}∘z̄(F W) = F(z̄ W)∘cell(fold w₁, …, fold w_r)∘fold(c_{w₁}, …, c_{w_r}),
    where z̄ is `algebra_cell` and cell is `comparison_cell`.
    """
    S, T = F.source, F.target
    D = T.base
    for words in words_of_words(list(S.base.objects), max_len):
        report.evaluate(
            kind,
            words,
            lambda: (
                D.compose(
                    family(flatten(words)),
                    algebra_cell(
                        T, tuple(tuple(F.obj(x) for x in w) for w in words)
                    ),
                ),
                D.compose_path(
                    F.mor(algebra_cell(S, words)),
                    comparison_cell(F, tuple(fold(S, w) for w in words)),
                    fold_mor(T, tuple(family(w) for w in words)),
                ),
            ),
        )
    return report


@dataclass(frozen=True)
class ComparisonFamily:
    """The comparison cells packaged as a transformation between free-category functors."""

    source: FreeMonoidalCat
    target: FreeMonoidalCat
    lift: MonoidalFunctor
    transformation: NatTrans


def comparison_family(F: MonoidalFunctor, max_len: int) -> ComparisonFamily:
    """Return the comparison cells as fold∘F_N(F) ⇒ F∘fold over admissible words."""
    words = admissible_words(F, max_len)
    source = build_free(F.source.base, max_len, words=words)
    target = build_free(
        F.target.base, max_len, words=[tuple(F.obj(x) for x in w) for w in words]
    )
    lift = lift_functor(F.underlying, max_len, source=source, target=target)
    transformation = NatTrans(
        f"⟨{F.name}⟩",
        compose_functors(fold_functor(F.target, target), lift.underlying),
        compose_functors(F.underlying, fold_functor(F.source, source)),
        tuple(comparison_cell(F, w) for w in source.words),
    )
    return ComparisonFamily(source, target, lift, transformation)


def check_lax_morphism(F: MonoidalFunctor, max_len: int) -> ValidationReport:
    """Check the lax-morphism axioms of the comparison cells at truncation `max_len`."""
    report = ValidationReport(f"lax morphism {F.name} at length {max_len}")
    report.merge(check_naturality(comparison_family(F, max_len).transformation))
    for x in F.source.base.objects:
        report.check(
            "unit", (x,), comparison_cell(F, (x,)) == F.target.id(F.obj(x))
        )
    check_pasting(lambda w: comparison_cell(F, w), F, max_len, report, "multiplication")
    _LOGGER.debug("%s", report)
    return report
