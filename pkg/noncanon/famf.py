"""The free binary-coproduct completion and coproduct preservation.

A family is a nonempty tuple of base objects; a family morphism X → Y is a
reindexing t₀ of positions together with base morphisms t_j: x_j → y_{t₀(j)}.
Positions are 0-based.
"""
from __future__ import annotations

from collections import Counter
from collections.abc import Callable, Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
import itertools
import logging
from typing import Optional, final

from .const import DEFAULT_MAX_FAMILY_LEN, DEFAULT_SEARCH_BOUND
from .exceptions import (
    ComponentTypeMismatch,
    HypothesisViolated,
    InternalProofMismatch,
    InvalidParameter,
    MissingCoproduct,
    NotInvertible,
    SearchSpaceTooLarge,
)
from .fincat import (
    ChainSeq,
    FinCategory,
    FunctionMapping,
    Functor,
    NatTrans,
    ProductSeq,
    check_naturality,
    enumerate_nat_trans,
    find_inverse,
    functor_from,
    invert,
    lazy_category,
    morphism_of,
)
from .monoidal import (
    MonoidalFunctor,
    MonoidalStructure,
    binary_transformation,
    functor_after_tensor,
    tensor_after_pair,
)
from .report import ValidationReport, to_plain

_LOGGER = logging.getLogger(__name__)

Family = tuple


@final
@dataclass(frozen=True, eq=False)
class CoproductChoice:
    """Chosen binary coproducts and an optional initial object.

    `coproducts[(x, y)]` is `(x⊔y, i₁, i₂)`. `copair_rule(f, g)` may return
    the copairing [f, g] directly; otherwise it is found from the universal
    property by search.
    """

    name: str
    category: FinCategory
    coproducts: Mapping[tuple[int, int], tuple[int, int, int]]
    initial: Optional[int] = None
    copair_rule: Optional[Callable[[int, int], int]] = field(default=None, repr=False)

    def _entry(self, x: int, y: int) -> tuple[int, int, int]:
        try:
            return self.coproducts[(x, y)]
        except KeyError as err:
            raise MissingCoproduct(f"{self.name}: no coproduct of {x} and {y}") from err

    def coproduct(self, x: int, y: int) -> int:
        """Return the chosen x⊔y."""
        return self._entry(x, y)[0]

    def injections(self, x: int, y: int) -> tuple[int, int]:
        """Return the chosen injections x → x⊔y ← y."""
        _, i1, i2 = self._entry(x, y)
        return i1, i2

    def has(self, x: int, y: int) -> bool:
        """Return whether x⊔y is chosen."""
        return (x, y) in self.coproducts

    def pairs(self) -> list[tuple[int, int]]:
        """Return the pairs with a chosen coproduct."""
        return [
            pair
            for pair in itertools.product(self.category.objects, repeat=2)
            if pair in self.coproducts
        ]

    def copair(self, f: int, g: int) -> int:
        """Return the unique [f, g]: x⊔y → z with [f, g]∘i₁ = f and [f, g]∘i₂ = g."""
        C = self.category
        z = C.dst(f)
        if C.dst(g) != z:
            raise MissingCoproduct(f"{self.name}: copairing of {f} and {g}")
        s = self.coproduct(C.src(f), C.src(g))
        if self.copair_rule is not None:
            return self.copair_rule(f, g)
        key = (f, g)
        if key in self._copairs:
            return self._copairs[key]
        i1, i2 = self.injections(C.src(f), C.src(g))
        for h in C.hom(s, z):
            if C.compose(h, i1) == f and C.compose(h, i2) == g:
                self._copairs[key] = h
                return h
        raise MissingCoproduct(f"{self.name}: {f} and {g} have no copairing")

    def copair_all(self, morphisms: Sequence[int]) -> int:
        """Copair a nonempty list of morphisms out of a left-nested coproduct."""
        result = morphisms[0]
        for m in morphisms[1:]:
            result = self.copair(result, m)
        return result

    def coproduct_mor(self, f: int, g: int) -> int:
        """Return f⊔g."""
        C = self.category
        j1, j2 = self.injections(C.dst(f), C.dst(g))
        return self.copair(C.compose(j1, f), C.compose(j2, g))

    def initial_map(self, x: int) -> int:
        """Return the unique morphism from the initial object to x."""
        if self.initial is None:
            raise MissingCoproduct(f"{self.name}: no initial object chosen")
        hom = self.category.hom(self.initial, x)
        if not hom:
            raise MissingCoproduct(f"{self.name}: no map from the initial object to {x}")
        return hom[0]

    @cached_property
    def _copairs(self) -> dict[tuple[int, int], int]:
        return {}

    @cached_property
    def monoidal(self) -> MonoidalStructure:
        """Return the cocartesian monoidal structure of the choice."""
        return cocartesian_monoidal(self)


def check_coproduct_choice(choice: CoproductChoice) -> ValidationReport:
    """Check the universal property of every chosen coproduct and the initial object."""
    C = choice.category
    report = ValidationReport(f"coproducts {choice.name}")
    for x, y in choice.pairs():
        s = choice.coproduct(x, y)
        i1, i2 = choice.injections(x, y)
        typed = (C.src(i1), C.dst(i1), C.src(i2), C.dst(i2)) == (x, s, y, s)
        if not report.check("injection-type", (x, y), typed):
            continue
        for z in C.objects:
            induced = Counter(
                (C.compose(h, i1), C.compose(h, i2)) for h in C.hom(s, z)
            )
            for f, g in itertools.product(C.hom(x, z), C.hom(y, z)):
                report.check("universal", (x, y, f, g), induced[(f, g)] == 1)
                if choice.copair_rule is not None and induced[(f, g)] == 1:
                    h = choice.copair_rule(f, g)
                    report.check(
                        "copair-rule",
                        (x, y, f, g),
                        C.compose(h, i1) == f and C.compose(h, i2) == g,
                    )
    if choice.initial is not None:
        for x in C.objects:
            report.check("initial", (x,), len(C.hom(choice.initial, x)) == 1)
    _LOGGER.debug("%s", report)
    return report


def finset_coproducts(C: FinCategory, name: Optional[str] = None) -> CoproductChoice:
    """Choose m⊔n = m+n in a FinSet skeleton, first block then second block."""
    top = C.n_objects - 1

    def entry(key: tuple[int, int]) -> tuple[int, int, int]:
        m, n = key
        if not (0 <= m and 0 <= n and m + n <= top):
            raise KeyError(key)
        s = m + n
        return (
            s,
            morphism_of(C, tuple(range(m)), s),
            morphism_of(C, tuple(range(m, s)), s),
        )

    return CoproductChoice(
        name or f"⊔_{C.name}",
        C,
        FunctionMapping(
            entry,
            lambda: (
                (m, n)
                for m, n in itertools.product(C.objects, repeat=2)
                if m + n <= top
            ),
        ),
        0,
        lambda f, g: morphism_of(C, C.label(f) + C.label(g), C.dst(f)),
    )


def cocartesian_monoidal(choice: CoproductChoice) -> MonoidalStructure:
    """Return the monoidal structure given by the chosen coproducts.

    α = [[i₁, i₂∘i₁], i₂∘i₂], l = [!, id], r = [id, !] and the symmetric
    braiding [i₂, i₁].
    """
    C = choice.category
    cp = choice

    def associator(key: tuple[int, int, int]) -> int:
        x, y, z = key
        yz = cp.coproduct(y, z)
        j1, j2 = cp.injections(x, yz)
        k1, k2 = cp.injections(y, z)
        inner = cp.copair(j1, C.compose(j2, k1))
        return cp.copair(inner, C.compose(j2, k2))

    def left(x: int) -> int:
        return cp.copair(cp.initial_map(x), C.identity(x))

    def right(x: int) -> int:
        return cp.copair(C.identity(x), cp.initial_map(x))

    def braiding(key: tuple[int, int]) -> int:
        x, y = key
        j1, j2 = cp.injections(y, x)
        return cp.copair(j2, j1)

    def associator_keys():
        for x, y, z in itertools.product(C.objects, repeat=3):
            if (
                cp.has(x, y)
                and cp.has(y, z)
                and cp.has(cp.coproduct(x, y), z)
                and cp.has(x, cp.coproduct(y, z))
            ):
                yield x, y, z

    def tensor_morphism(key: tuple[int, int]) -> int:
        f, g = key
        if not (cp.has(C.src(f), C.src(g)) and cp.has(C.dst(f), C.dst(g))):
            raise KeyError(key)
        return cp.coproduct_mor(f, g)

    def tensor_morphism_keys():
        for f, g in itertools.product(range(C.size), repeat=2):
            if cp.has(C.src(f), C.src(g)) and cp.has(C.dst(f), C.dst(g)):
                yield f, g

    unitors = (
        (FunctionMapping(left, lambda: C.objects), FunctionMapping(right, lambda: C.objects))
        if cp.initial is not None
        else ({}, {})
    )
    return MonoidalStructure(
        f"({C.name}, ⊔)",
        C,
        FunctionMapping(lambda key: cp.coproducts[key][0], cp.pairs),
        FunctionMapping(tensor_morphism, tensor_morphism_keys),
        cp.initial if cp.initial is not None else -1,
        FunctionMapping(associator, associator_keys),
        unitors[0],
        unitors[1],
        FunctionMapping(braiding, cp.pairs),
    )


@dataclass(frozen=True)
class FamMorphism:
    """A morphism of families: a reindexing and one base morphism per source position."""

    source: Family
    target: Family
    reindex: tuple[int, ...]
    components: tuple[int, ...]


@final
@dataclass(frozen=True, eq=False)
class FamCategory:
    """The category of nonempty families over a base, truncated at `max_len`."""

    base: FinCategory
    max_len: int
    families: tuple[Family, ...]
    category: FinCategory

    def index(self, family: Family) -> int:
        """Return the object of a family."""
        return self.category.object_index(tuple(family))

    def family(self, x: int) -> Family:
        """Return the family of an object."""
        return self.families[x]

    def fam_morphism(self, m: int) -> FamMorphism:
        """Return the record of a morphism."""
        C = self.category
        reindex, components = C.label(m)
        return FamMorphism(
            self.family(C.src(m)), self.family(C.dst(m)), reindex, components
        )

    def morphism(self, t: FamMorphism) -> int:
        """Return the morphism of a record."""
        return self.category.morphism_index(
            self.index(t.source), self.index(t.target), (t.reindex, t.components)
        )


def build_famf(
    base: FinCategory,
    max_len: int,
    families: Optional[Iterable[Family]] = None,
    *,
    bound: int = DEFAULT_SEARCH_BOUND,
) -> FamCategory:
    """Build the family category on `base`.

    Composition is (s∘t)₀ = s₀∘t₀ and (s∘t)_j = s_{t₀(j)}∘t_j.

    Args:
        base: The base category.
        max_len: The largest family length, at least 1.
        families: Restrict the objects to these families.
        bound: The largest number of objects squared or morphisms allowed.
    """
    if max_len < 1:
        raise InvalidParameter(f"family length bound {max_len} must be at least 1")
    if families is None:
        families = [
            family
            for length in range(1, max_len + 1)
            for family in itertools.product(base.objects, repeat=length)
        ]
    families = tuple(sorted({tuple(f) for f in families}, key=lambda f: (len(f), f)))
    if any(not family or len(family) > max_len for family in families):
        raise InvalidParameter(f"families must have length 1..{max_len}")
    if len(families) ** 2 > bound:
        raise SearchSpaceTooLarge(
            len(families) ** 2, bound, f"family category on {base.name}"
        )

    def hom_labels(i: int, j: int) -> Sequence:
        source, target = families[i], families[j]
        return ChainSeq(
            (
                reindex,
                ProductSeq(
                    [base.hom(x, target[r]) for x, r in zip(source, reindex)]
                ),
            )
            for reindex in itertools.product(range(len(target)), repeat=len(source))
        )

    def compose_labels(s, t):
        s0, s_parts = s
        t0, t_parts = t
        return (
            tuple(s0[r] for r in t0),
            tuple(base.compose(s_parts[r], part) for r, part in zip(t0, t_parts)),
        )

    category = lazy_category(
        f"Fam{max_len}({base.name})",
        families,
        hom_labels,
        compose_labels,
        lambda i: (
            tuple(range(len(families[i]))),
            tuple(base.identity(x) for x in families[i]),
        ),
    )
    if category.size > bound:
        raise SearchSpaceTooLarge(category.size, bound, f"family category on {base.name}")
    _LOGGER.debug(
        "Built %s with %d families and %d morphisms",
        category.name,
        len(families),
        category.size,
    )
    return FamCategory(base, max_len, families, category)


def injection(choice: CoproductChoice, family: Family, position: int) -> int:
    """Return the injection of one position into the left-nested coproduct."""
    C = choice.category
    if len(family) == 1:
        return C.identity(family[0])
    head, last = family[:-1], family[-1]
    j1, j2 = choice.injections(coproduct_algebra(choice, head), last)
    if position == len(family) - 1:
        return j2
    return C.compose(j1, injection(choice, head, position))


def coproduct_algebra(choice: CoproductChoice, item: Family | FamMorphism) -> int:
    """Evaluate a family or a family morphism in the chosen coproducts.

    A family goes to its left-nested coproduct; a morphism t goes to the
    copairing of inj_{t₀(j)}∘t_j over the source positions.
    """
    C = choice.category
    if isinstance(item, FamMorphism):
        return choice.copair_all(
            [
                C.compose(injection(choice, item.target, r), part)
                for r, part in zip(item.reindex, item.components)
            ]
        )
    if not item:
        raise InvalidParameter("families are nonempty")
    result = item[0]
    for x in item[1:]:
        result = choice.coproduct(result, x)
    return result


def is_evaluable(choice: CoproductChoice, family: Family) -> bool:
    """Return whether every coproduct in a family's evaluation is chosen."""
    try:
        coproduct_algebra(choice, family)
    except MissingCoproduct:
        return False
    return True


def admissible_families(
    F: Functor,
    source: CoproductChoice,
    target: CoproductChoice,
    max_len: int,
) -> list[Family]:
    """Return the families evaluable in the source whose image is evaluable too."""
    return [
        family
        for length in range(1, max_len + 1)
        for family in itertools.product(F.source.objects, repeat=length)
        if is_evaluable(source, family)
        and is_evaluable(target, tuple(F.obj(x) for x in family))
    ]


def algebra_functor(choice: CoproductChoice, fam: FamCategory) -> Functor:
    """Return the evaluation of families as a functor into the base."""
    return functor_from(
        f"alg_{choice.name}",
        fam.category,
        choice.category,
        lambda i: coproduct_algebra(choice, fam.family(i)),
        lambda m: coproduct_algebra(choice, fam.fam_morphism(m)),
    )


def lift_family_functor(F: Functor, source: FamCategory, target: FamCategory) -> Functor:
    """Apply a functor position by position, keeping the reindexing."""

    def on_object(i: int) -> int:
        return target.index(tuple(F.obj(x) for x in source.family(i)))

    def on_morphism(m: int) -> int:
        t = source.fam_morphism(m)
        return target.morphism(
            FamMorphism(
                tuple(F.obj(x) for x in t.source),
                tuple(F.obj(x) for x in t.target),
                t.reindex,
                tuple(F.mor(part) for part in t.components),
            )
        )

    return functor_from(
        f"Fam({F.name})", source.category, target.category, on_object, on_morphism
    )


@dataclass(frozen=True)
class CanonicalComparison:
    """κ_{x,y}: F(x)⊔F(y) → F(x⊔y) and the unique map into F of the initial object."""

    binary: dict[tuple[int, int], int]
    initial: Optional[int]


def canonical_lax_structure(
    F: Functor, source: CoproductChoice, target: CoproductChoice
) -> CanonicalComparison:
    """Return the comparison induced by the images of the injections."""
    binary = {}
    for x, y in source.pairs():
        i1, i2 = source.injections(x, y)
        binary[(x, y)] = target.copair(F.mor(i1), F.mor(i2))
    initial = None
    if source.initial is not None and target.initial is not None:
        initial = target.initial_map(F.obj(source.initial))
    return CanonicalComparison(binary, initial)


def canonical_monoidal_functor(
    F: Functor,
    source: CoproductChoice,
    target: CoproductChoice,
    name: Optional[str] = None,
) -> MonoidalFunctor:
    """Return F with its canonical lax structure for the cocartesian tensors."""
    comparison = canonical_lax_structure(F, source, target)
    if comparison.initial is None:
        raise MissingCoproduct(f"{F.name}: both sides need an initial object")
    return MonoidalFunctor(
        name or F.name,
        F,
        source.monoidal,
        target.monoidal,
        comparison.binary,
        comparison.initial,
    )


@dataclass
class PreservationVerdict:
    """Whether every canonical comparison is invertible."""

    binary: bool
    initial: Optional[bool]
    failing_pair: Optional[tuple[int, int]] = None
    inverses: dict[tuple[int, int], int] = field(default_factory=dict)

    def to_dict(self) -> dict:
        """Convert a class instance to a dictionary."""
        return {
            "binary": self.binary,
            "initial": self.initial,
            "failing_pair": to_plain(self.failing_pair),
            "inverses": [[to_plain(k), v] for k, v in sorted(self.inverses.items())],
        }


def preserves_binary_coproducts(
    F: Functor, source: CoproductChoice, target: CoproductChoice
) -> PreservationVerdict:
    """Test every κ_{x,y} for invertibility and F(0) for initiality."""
    D = target.category
    comparison = canonical_lax_structure(F, source, target)
    verdict = PreservationVerdict(True, None)
    for key, kappa in comparison.binary.items():
        if (inverse := find_inverse(D, kappa)) is None:
            verdict.binary = False
            verdict.failing_pair = key
            break
        verdict.inverses[key] = inverse
    if comparison.initial is not None:
        verdict.initial = find_inverse(D, comparison.initial) is not None
    _LOGGER.debug("%s preserves coproducts: %s", F.name, verdict)
    return verdict


def _preserves_initial(F: Functor, source: CoproductChoice, target: CoproductChoice) -> bool:
    if source.initial is None or target.initial is None:
        return False
    unique = target.initial_map(F.obj(source.initial))
    return find_inverse(target.category, unique) is not None


def binary_functors(
    F: Functor, source: CoproductChoice, target: CoproductChoice
) -> tuple[Functor, Functor]:
    """Return (x, y) ↦ F(x)⊔F(y) and (x, y) ↦ F(x⊔y) on the source product."""
    lax = canonical_monoidal_functor(F, source, target)
    return tensor_after_pair(lax, "⊔∘(F×F)"), functor_after_tensor(lax)


def binary_family(
    F: Functor,
    source: CoproductChoice,
    target: CoproductChoice,
    alpha: Mapping[tuple[int, int], int],
    name: str = "α",
) -> NatTrans:
    """Package a binary family as a transformation between `binary_functors`."""
    return binary_transformation(canonical_monoidal_functor(F, source, target), alpha, name)


def induced_comparison(
    F: Functor, beta: NatTrans, source: CoproductChoice, target: CoproductChoice
) -> dict[tuple[int, int], int]:
    """Return [F(i₁)∘β_x, F(i₂)∘β_y]: F(x)⊔F(y) → F(x⊔y) at every pair."""
    D = target.category
    induced = {}
    for x, y in source.pairs():
        i1, i2 = source.injections(x, y)
        induced[(x, y)] = target.copair(
            D.compose(F.mor(i1), beta.component(x)),
            D.compose(F.mor(i2), beta.component(y)),
        )
    return induced


@dataclass
class BetaVerdict:
    """Outcome of the β-criterion."""

    holds: bool
    failing_pair: Optional[tuple[int, int]] = None
    induced: dict[tuple[int, int], int] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.holds


def _natural_iso_report(beta: NatTrans) -> ValidationReport:
    report = check_naturality(beta)
    category = beta.source.target
    for x in beta.source.source.objects:
        report.check(
            "invertibility", (x,), find_inverse(category, beta.component(x)) is not None
        )
    return report


def beta_criterion(
    F: Functor, beta: NatTrans, source: CoproductChoice, target: CoproductChoice
) -> BetaVerdict:
    """Decide whether a natural automorphism β of F induces invertible comparisons."""
    try:
        report = _natural_iso_report(beta)
    except ComponentTypeMismatch as err:
        raise HypothesisViolated("beta") from err
    if not report.ok:
        raise HypothesisViolated("beta", report)
    D = target.category
    induced = induced_comparison(F, beta, source, target)
    for key, m in induced.items():
        if find_inverse(D, m) is None:
            return BetaVerdict(False, key, induced)
    return BetaVerdict(True, None, induced)


def enumerate_binary_isos(
    F: Functor,
    source: CoproductChoice,
    target: CoproductChoice,
    bound: int = DEFAULT_SEARCH_BOUND,
) -> list[dict[tuple[int, int], int]]:
    """Return every natural isomorphism F(x)⊔F(y) → F(x⊔y), as pair-keyed families."""
    left, right = binary_functors(F, source, target)
    product = left.source
    return [
        {
            product.object_label(i): transformation.component(i)
            for i in product.objects
        }
        for transformation in enumerate_nat_trans(
            left, right, bound=bound, invertible_only=True, name="α"
        )
    ]


def search_beta(
    F: Functor,
    source: CoproductChoice,
    target: CoproductChoice,
    bound: int = DEFAULT_SEARCH_BOUND,
) -> tuple[list[NatTrans], int]:
    """Find every natural automorphism of F satisfying the β-criterion."""
    betas = enumerate_nat_trans(F, F, bound=bound, invertible_only=True, name="β")
    found = [beta for beta in betas if beta_criterion(F, beta, source, target)]
    return found, len(betas)


@lru_cache(maxsize=32)
def _fam_pair(
    F: Functor, source: CoproductChoice, target: CoproductChoice, max_len: int
) -> tuple[FamCategory, FamCategory, Functor]:
    families = admissible_families(F, source, target, max_len)
    fam_source = build_famf(F.source, max_len, families)
    fam_target = build_famf(
        F.target, max_len, [tuple(F.obj(x) for x in family) for family in families]
    )
    return fam_source, fam_target, lift_family_functor(F, fam_source, fam_target)


def _check_family(
    F: Functor,
    source: CoproductChoice,
    target: CoproductChoice,
    max_len: int,
    components: Mapping[Family, int],
    report: ValidationReport,
) -> None:
    """Check naturality of a family alg∘Fam(F) ⇒ F∘alg over admissible families."""
    fam_source, fam_target, lifted = _fam_pair(F, source, target, max_len)
    D = target.category
    C = fam_source.category
    for m in range(C.size):
        t = fam_source.fam_morphism(m)
        if t.source not in components or t.target not in components:
            continue
        image = fam_target.fam_morphism(lifted.mor(m))
        report.check(
            "naturality",
            (to_plain(t.source), to_plain(t.target), t.reindex, t.components),
            D.compose(components[t.target], coproduct_algebra(target, image))
            == D.compose(F.mor(coproduct_algebra(source, t)), components[t.source]),
        )


@dataclass
class AlphaPrime:
    """The family α′ over families, with its checks."""

    components: dict[Family, int]
    natural: bool
    report: ValidationReport
    preservation: PreservationVerdict

    def to_dict(self) -> dict:
        """Convert a class instance to a dictionary."""
        return {
            "components": [
                [to_plain(k), v]
                for k, v in sorted(self.components.items(), key=lambda i: (len(i[0]), i[0]))
            ],
            "natural": self.natural,
            "report": self.report.to_dict(),
            "preservation": self.preservation.to_dict(),
        }


def build_alpha_prime(
    F: Functor,
    alpha: Mapping[tuple[int, int], int],
    source: CoproductChoice,
    target: CoproductChoice,
    max_len: int = DEFAULT_MAX_FAMILY_LEN,
) -> AlphaPrime:
    """Extend a binary isomorphism α to every family.

    α′ on a singleton (y) is F(i₁)⁻¹∘α_{y,O}∘i₁: F(y) → F(y⊔O) → F(y) through
    the initial object O, α′ on a pair is α, and α′_{X·x} = α_{alg X, x}∘(α′_X⊔id).

    Args:
        F: A functor preserving the initial object.
        alpha: A natural isomorphism F(x)⊔F(y) → F(x⊔y), keyed by pairs.
        source: The coproducts of the source.
        target: The coproducts of the target.
        max_len: The largest family length.

    Returns:
        The components together with a naturality flag and the preservation
        verdict, which must report binary preservation.
    """
    if not _preserves_initial(F, source, target):
        raise HypothesisViolated("initial")
    try:
        report = _natural_iso_report(binary_family(F, source, target, alpha))
    except (ComponentTypeMismatch, KeyError) as err:
        raise HypothesisViolated("alpha") from err
    if not report.ok:
        raise HypothesisViolated("alpha", report)

    D = target.category
    initial = source.initial
    components: dict[Family, int] = {}
    for family in admissible_families(F, source, target, max_len):
        if len(family) == 1:
            y = family[0]
            i1, _ = source.injections(y, initial)
            j1, _ = target.injections(F.obj(y), F.obj(initial))
            try:
                components[family] = D.compose_path(
                    invert(D, F.mor(i1)), alpha[(y, initial)], j1
                )
            except NotInvertible as err:
                raise InternalProofMismatch(f"α′ at {family}: {err}") from err
        elif len(family) == 2:
            components[family] = alpha[family]
        else:
            head, x = family[:-1], family[-1]
            components[family] = D.compose(
                alpha[(coproduct_algebra(source, head), x)],
                target.coproduct_mor(components[head], D.identity(F.obj(x))),
            )
    for family, m in components.items():
        if find_inverse(D, m) is None:
            raise InternalProofMismatch(f"α′ at {family} is not invertible")

    check = ValidationReport(f"α′ for {F.name} at length {max_len}")
    _check_family(F, source, target, max_len, components, check)
    preservation = preserves_binary_coproducts(F, source, target)
    if not preservation.binary:
        raise InternalProofMismatch(f"{F.name} has α′ but does not preserve coproducts")
    return AlphaPrime(components, check.ok, check, preservation)


def canonical_family(
    F: Functor,
    source: CoproductChoice,
    target: CoproductChoice,
    max_len: int = DEFAULT_MAX_FAMILY_LEN,
    beta: Optional[NatTrans] = None,
) -> dict[Family, int]:
    """Return ψ_X = [F(inj_j)∘β_{x_j}]_j: alg(F X) → F(alg X) over admissible families.

    Without β this is the canonical comparison.
    """
    D = target.category
    family_components = {}
    for family in admissible_families(F, source, target, max_len):
        parts = []
        for j, x in enumerate(family):
            part = F.mor(injection(source, family, j))
            if beta is not None:
                part = D.compose(part, beta.component(x))
            parts.append(part)
        family_components[family] = target.copair_all(parts)
    return family_components


@dataclass
class KZVerdict:
    """Outcome of the shortcut test for a plain invertible family."""

    holds: bool
    report: ValidationReport
    preservation: Optional[PreservationVerdict] = None

    def __bool__(self) -> bool:
        return self.holds


def kz_shortcut(
    F: Functor,
    psi: Mapping[Family, int],
    source: CoproductChoice,
    target: CoproductChoice,
    max_len: int = DEFAULT_MAX_FAMILY_LEN,
) -> KZVerdict:
    """Decide whether ψ: alg∘Fam(F) ⇒ F∘alg is a natural isomorphism.

    No monoidality is required. ψ must have a component at every admissible
    family of length at most `max_len`, and `max_len` must reach pairs. A
    positive verdict is confirmed against `preserves_binary_coproducts`.
    """
    if max_len < 2:
        raise InvalidParameter(
            f"the shortcut needs families of length 2, not {max_len}"
        )
    D = target.category
    for family, m in psi.items():
        expected = (
            coproduct_algebra(target, tuple(F.obj(x) for x in family)),
            F.obj(coproduct_algebra(source, family)),
        )
        if (D.src(m), D.dst(m)) != expected:
            raise ComponentTypeMismatch(
                f"ψ at {family} is {D.src(m)} → {D.dst(m)}, "
                f"expected {expected[0]} → {expected[1]}"
            )
    report = ValidationReport(f"shortcut for {F.name} at length {max_len}")
    for family in admissible_families(F, source, target, max_len):
        report.check("coverage", (family,), family in psi)
    if not report.ok:
        return KZVerdict(False, report)
    for family in sorted(psi, key=lambda f: (len(f), f)):
        report.check(
            "invertibility", (family,), find_inverse(D, psi[family]) is not None
        )
    _check_family(F, source, target, max_len, psi, report)
    if not report.ok:
        return KZVerdict(False, report)
    preservation = preserves_binary_coproducts(F, source, target)
    if not preservation.binary:
        report.fail(
            "preservation",
            preservation.failing_pair,
            "no admissible family reaches the failing pair",
        )
        return KZVerdict(False, report, preservation)
    return KZVerdict(True, report, preservation)


def search_kz(
    F: Functor,
    source: CoproductChoice,
    target: CoproductChoice,
    max_len: int = DEFAULT_MAX_FAMILY_LEN,
    bound: int = DEFAULT_SEARCH_BOUND,
) -> tuple[list[dict[Family, int]], int]:
    """Find every natural isomorphism alg∘Fam(F) ⇒ F∘alg.

    Naturality against the injections forces ψ_X = [F(inj_j)∘ψ_{(x_j)}]_j,
    and the singleton components form a natural automorphism of F, so the
    search runs over those.
    """
    if max_len < 2:
        raise InvalidParameter(
            f"the shortcut needs families of length 2, not {max_len}"
        )
    betas = enumerate_nat_trans(F, F, bound=bound, invertible_only=True, name="β")
    found = []
    for beta in betas:
        try:
            psi = canonical_family(F, source, target, max_len, beta)
        except MissingCoproduct:
            continue
        if kz_shortcut(F, psi, source, target, max_len):
            found.append(psi)
    _LOGGER.debug("%d of %d candidates pass for %s", len(found), len(betas), F.name)
    return found, len(betas)
