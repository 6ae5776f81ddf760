"""Biased monoidal structures, monoidal functors and their coherence checks.

Tensors may be partial: a truncated fragment such as a small FinSet
skeleton is not closed under the tensor. Every coherence equation is
evaluated exactly at the object tuples where all the tensors it mentions
exist, and skipped elsewhere.
"""
from __future__ import annotations

from collections.abc import Hashable, Mapping, Sequence
from dataclasses import dataclass, field, replace
from functools import cached_property
import itertools
import logging
from typing import Optional, final

from .exceptions import (
    ComponentTypeMismatch,
    IndexOutOfRange,
    MissingBraiding,
    NotComposable,
    TruncationExceeded,
)
from .fincat import (
    FinCategory,
    FunctionMapping,
    Functor,
    NatTrans,
    check_component_types,
    check_functor,
    check_naturality,
    compose_functors,
    find_inverse,
    functor_from,
    identity_functor,
    invert,
    product_category,
)
from .report import ValidationReport

_LOGGER = logging.getLogger(__name__)


@final
@dataclass(frozen=True, eq=False)
class MonoidalStructure:
    """A biased monoidal structure on a finite category.

    `associator[(x, y, z)]` runs (x⊗y)⊗z → x⊗(y⊗z), `left_unitor[x]` runs
    I⊗x → x, `right_unitor[x]` runs x⊗I → x and `braiding[(x, y)]` runs
    x⊗y → y⊗x.
    """

    name: str
    base: FinCategory
    tensor_objects: Mapping[tuple[int, int], int]
    tensor_morphisms: Mapping[tuple[int, int], int]
    unit: int
    associator: Mapping[tuple[int, int, int], int]
    left_unitor: Mapping[int, int] | Sequence[int]
    right_unitor: Mapping[int, int] | Sequence[int]
    braiding: Optional[Mapping[tuple[int, int], int]] = field(default=None)

    def tensor(self, x: int, y: int) -> int:
        """Return x⊗y."""
        try:
            return self.tensor_objects[(x, y)]
        except KeyError as err:
            raise TruncationExceeded(f"{self.name}: {x} ⊗ {y} is undefined") from err

    def tensor_mor(self, f: int, g: int) -> int:
        """Return f⊗g."""
        try:
            return self.tensor_morphisms[(f, g)]
        except KeyError as err:
            raise TruncationExceeded(
                f"{self.name}: morphism {f} ⊗ {g} is undefined"
            ) from err

    def has_tensor(self, x: int, y: int) -> bool:
        """Return whether x⊗y is defined."""
        return (x, y) in self.tensor_objects

    def id(self, x: int) -> int:
        """Return the identity of an object of the base."""
        return self.base.identity(x)

    def assoc(self, x: int, y: int, z: int) -> int:
        """Return the associator component at (x, y, z)."""
        self.tensor(self.tensor(x, y), z)
        return self.associator[(x, y, z)]

    def assoc_inverse(self, x: int, y: int, z: int) -> int:
        """Return the inverse of the associator component at (x, y, z)."""
        return invert(self.base, self.assoc(x, y, z))

    def lunit(self, x: int) -> int:
        """Return the left unitor component at x."""
        return self.left_unitor[x]

    def runit(self, x: int) -> int:
        """Return the right unitor component at x."""
        return self.right_unitor[x]

    def braid(self, x: int, y: int) -> int:
        """Return the braiding component at (x, y)."""
        if self.braiding is None:
            raise MissingBraiding(f"{self.name} carries no braiding")
        self.tensor(x, y)
        return self.braiding[(x, y)]

    def pairs(self) -> list[tuple[int, int]]:
        """Return the object pairs whose tensor is defined."""
        return self._pairs

    @cached_property
    def _pairs(self) -> list[tuple[int, int]]:
        return [
            pair
            for pair in itertools.product(self.base.objects, repeat=2)
            if pair in self.tensor_objects
        ]

    @cached_property
    def product(self) -> FinCategory:
        """Return the full subcategory of base×base on the tensorable pairs."""
        return product_category(
            self.base, self.base, self.pairs(), f"{self.base.name}×{self.base.name}"
        )

    @cached_property
    def tensor_functor(self) -> Functor:
        """Return the tensor as a functor out of `product`."""
        product = self.product
        return functor_from(
            f"⊗_{self.name}",
            product,
            self.base,
            lambda i: self.tensor(*product.object_label(i)),
            lambda m: self.tensor_mor(*product.label(m)),
        )


def _typed(category: FinCategory, m: int, src: int, dst: int) -> bool:
    record = category.morphism(m)
    return record.src == src and record.dst == dst


def _check_invertible(
    report: ValidationReport, category: FinCategory, instance: tuple, m: int
) -> None:
    report.check("invertibility", instance, find_inverse(category, m) is not None)


def _check_structure_cells(M: MonoidalStructure, report: ValidationReport) -> None:
    C = M.base
    for x, y, z in itertools.product(C.objects, repeat=3):
        try:
            src = M.tensor(M.tensor(x, y), z)
            dst = M.tensor(x, M.tensor(y, z))
        except TruncationExceeded:
            continue
        a = M.associator[(x, y, z)]
        if report.check("component-type", ("associator", x, y, z), _typed(C, a, src, dst)):
            _check_invertible(report, C, ("associator", x, y, z), a)
    for x in C.objects:
        for kind, m, src in (
            ("left-unitor", M.lunit(x), M.tensor(M.unit, x)),
            ("right-unitor", M.runit(x), M.tensor(x, M.unit)),
        ):
            if report.check("component-type", (kind, x), _typed(C, m, src, x)):
                _check_invertible(report, C, (kind, x), m)


def _morphism_triples(M: MonoidalStructure):
    C = M.base
    for f in range(C.size):
        for g in range(C.size):
            if not (
                M.has_tensor(C.src(f), C.src(g)) and M.has_tensor(C.dst(f), C.dst(g))
            ):
                continue
            for h in range(C.size):
                yield f, g, h


def check_monoidal_category(M: MonoidalStructure) -> ValidationReport:
    """Check the tensor, the structure cells, pentagon and triangle.

    Args:
        M: The monoidal structure; its base should pass `check_category`.

    Returns:
        A report of tensor functoriality, component types, invertibility,
        naturality of the structure cells, pentagon and triangle instances.
    """
    report = ValidationReport(f"monoidal category {M.name}")
    C = M.base
    if not 0 <= M.unit < C.n_objects:
        raise IndexOutOfRange(f"{M.name}: unit {M.unit} is not an object")
    report.merge(check_functor(M.tensor_functor))
    _check_structure_cells(M, report)
    if not report.ok:
        return report

    for f, g, h in _morphism_triples(M):
        x, y, z = C.src(f), C.src(g), C.src(h)
        x2, y2, z2 = C.dst(f), C.dst(g), C.dst(h)
        report.evaluate(
            "naturality",
            ("associator", f, g, h),
            lambda: (
                C.compose(M.assoc(x2, y2, z2), M.tensor_mor(M.tensor_mor(f, g), h)),
                C.compose(M.tensor_mor(f, M.tensor_mor(g, h)), M.assoc(x, y, z)),
            ),
        )
    id_unit = M.id(M.unit)
    for f in range(C.size):
        x, x2 = C.src(f), C.dst(f)
        report.evaluate(
            "naturality",
            ("left-unitor", f),
            lambda: (
                C.compose(M.lunit(x2), M.tensor_mor(id_unit, f)),
                C.compose(f, M.lunit(x)),
            ),
        )
        report.evaluate(
            "naturality",
            ("right-unitor", f),
            lambda: (
                C.compose(M.runit(x2), M.tensor_mor(f, id_unit)),
                C.compose(f, M.runit(x)),
            ),
        )

    for w, x, y, z in itertools.product(C.objects, repeat=4):
        report.evaluate(
            "pentagon",
            (w, x, y, z),
            lambda: (
                C.compose(
                    M.assoc(w, x, M.tensor(y, z)), M.assoc(M.tensor(w, x), y, z)
                ),
                C.compose_path(
                    M.tensor_mor(M.id(w), M.assoc(x, y, z)),
                    M.assoc(w, M.tensor(x, y), z),
                    M.tensor_mor(M.assoc(w, x, y), M.id(z)),
                ),
            ),
        )
    for x, y in itertools.product(C.objects, repeat=2):
        report.evaluate(
            "triangle",
            (x, y),
            lambda: (
                C.compose(
                    M.tensor_mor(M.id(x), M.lunit(y)), M.assoc(x, M.unit, y)
                ),
                M.tensor_mor(M.runit(x), M.id(y)),
            ),
        )
    _LOGGER.debug("%s", report)
    return report


def check_braiding(M: MonoidalStructure) -> ValidationReport:
    """Check that the braiding is a natural isomorphism satisfying both hexagons."""
    if M.braiding is None:
        raise MissingBraiding(f"{M.name} carries no braiding")
    report = ValidationReport(f"braiding of {M.name}")
    C = M.base
    for x, y in M.pairs():
        b = M.braid(x, y)
        typed = _typed(C, b, M.tensor(x, y), M.tensor_objects.get((y, x), -1))
        if report.check("component-type", ("braiding", x, y), typed):
            _check_invertible(report, C, ("braiding", x, y), b)
    if not report.ok:
        return report

    for f in range(C.size):
        for g in range(C.size):
            report.evaluate(
                "naturality",
                ("braiding", f, g),
                lambda: (
                    C.compose(M.braid(C.dst(f), C.dst(g)), M.tensor_mor(f, g)),
                    C.compose(M.tensor_mor(g, f), M.braid(C.src(f), C.src(g))),
                ),
            )
    for x, y, z in itertools.product(C.objects, repeat=3):
        report.evaluate(
            "hexagon",
            (1, x, y, z),
            lambda: (
                C.compose_path(
                    M.assoc(y, z, x),
                    M.braid(x, M.tensor(y, z)),
                    M.assoc(x, y, z),
                ),
                C.compose_path(
                    M.tensor_mor(M.id(y), M.braid(x, z)),
                    M.assoc(y, x, z),
                    M.tensor_mor(M.braid(x, y), M.id(z)),
                ),
            ),
        )
        report.evaluate(
            "hexagon",
            (2, x, y, z),
            lambda: (
                C.compose_path(
                    M.assoc_inverse(z, x, y),
                    M.braid(M.tensor(x, y), z),
                    M.assoc_inverse(x, y, z),
                ),
                C.compose_path(
                    M.tensor_mor(M.braid(x, z), M.id(y)),
                    M.assoc_inverse(x, z, y),
                    M.tensor_mor(M.id(x), M.braid(y, z)),
                ),
            ),
        )
    _LOGGER.debug("%s", report)
    return report


def reverse_braiding(M: MonoidalStructure) -> MonoidalStructure:
    """Return M with the reverse braiding x⊗y → y⊗x given by (λ_{y,x})⁻¹."""
    if M.braiding is None:
        raise MissingBraiding(f"{M.name} carries no braiding")
    return replace(
        M,
        name=f"{M.name}ʳ",
        braiding=FunctionMapping(
            lambda key: invert(M.base, M.braid(key[1], key[0])),
            M.pairs,
        ),
    )


def interchange(M: MonoidalStructure, w: int, x: int, y: int, z: int) -> int:
    """Return the middle-four interchange (w⊗x)⊗(y⊗z) → (w⊗y)⊗(x⊗z)."""
    C = M.base
    inner = C.compose_path(
        M.assoc(y, x, z),
        M.tensor_mor(M.braid(x, y), M.id(z)),
        M.assoc_inverse(x, y, z),
    )
    return C.compose_path(
        M.assoc_inverse(w, y, M.tensor(x, z)),
        M.tensor_mor(M.id(w), inner),
        M.assoc(w, x, M.tensor(y, z)),
    )


@final
@dataclass(frozen=True, eq=False)
class MonoidalFunctor:
    """A lax monoidal functor.

    `phi[(x, y)]` runs F(x)⊗F(y) → F(x⊗y); `phi0` runs I → F(I).
    """

    name: str
    underlying: Functor
    source: MonoidalStructure
    target: MonoidalStructure
    phi: Mapping[tuple[int, int], int]
    phi0: int

    def obj(self, x: int) -> int:
        """Return F(x)."""
        return self.underlying.obj(x)

    def mor(self, m: int) -> int:
        """Return F(m)."""
        return self.underlying.mor(m)

    def phi_at(self, x: int, y: int) -> int:
        """Return φ_{x,y}."""
        try:
            return self.phi[(x, y)]
        except KeyError as err:
            raise TruncationExceeded(f"{self.name}: φ at ({x}, {y})") from err


def tensor_after_pair(F: MonoidalFunctor, name: str = "⊗∘(F×F)") -> Functor:
    """Return (x, y) ↦ F(x)⊗F(y) as a functor out of the source product."""
    S, T = F.source, F.target
    product = S.product
    return functor_from(
        name,
        product,
        T.base,
        lambda i: T.tensor(*(F.obj(x) for x in product.object_label(i))),
        lambda m: T.tensor_mor(*(F.mor(f) for f in product.label(m))),
    )


def functor_after_tensor(F: MonoidalFunctor) -> Functor:
    """Return (x, y) ↦ F(x⊗y) as a functor out of the source product."""
    return compose_functors(F.underlying, F.source.tensor_functor)


def binary_transformation(
    F: MonoidalFunctor, phi: Mapping[tuple[int, int], int], name: str = "φ"
) -> NatTrans:
    """Package a binary family as a transformation ⊗∘(F×F) ⇒ F∘⊗."""
    product = F.source.product
    return NatTrans(
        name,
        tensor_after_pair(F),
        functor_after_tensor(F),
        tuple(phi[product.object_label(i)] for i in product.objects),
    )


def _check_functor_types(F: MonoidalFunctor) -> None:
    S, T = F.source, F.target
    for x, y in S.pairs():
        if not T.has_tensor(F.obj(x), F.obj(y)):
            continue
        expected = (T.tensor(F.obj(x), F.obj(y)), F.obj(S.tensor(x, y)))
        record = T.base.morphism(F.phi_at(x, y))
        if (record.src, record.dst) != expected:
            raise ComponentTypeMismatch(
                f"{F.name}: φ at ({x}, {y}) is {record.src} → {record.dst}, "
                f"expected {expected[0]} → {expected[1]}"
            )
    if not _typed(T.base, F.phi0, T.unit, F.obj(S.unit)):
        raise ComponentTypeMismatch(f"{F.name}: φ₀ is not I → F(I)")


def check_monoidal_functor(F: MonoidalFunctor) -> ValidationReport:
    """Check naturality of φ and the associativity and unit squares."""
    _check_functor_types(F)
    report = ValidationReport(f"monoidal functor {F.name}")
    report.merge(check_functor(F.underlying))
    report.merge(check_naturality(binary_transformation(F, F.phi)))
    S, T = F.source, F.target
    D = T.base

    for x, y, z in itertools.product(S.base.objects, repeat=3):
        report.evaluate(
            "associativity",
            (x, y, z),
            lambda: (
                D.compose_path(
                    F.mor(S.assoc(x, y, z)),
                    F.phi_at(S.tensor(x, y), z),
                    T.tensor_mor(F.phi_at(x, y), T.id(F.obj(z))),
                ),
                D.compose_path(
                    F.phi_at(x, S.tensor(y, z)),
                    T.tensor_mor(T.id(F.obj(x)), F.phi_at(y, z)),
                    T.assoc(F.obj(x), F.obj(y), F.obj(z)),
                ),
            ),
        )
    for x in S.base.objects:
        report.evaluate(
            "left-unit",
            (x,),
            lambda: (
                D.compose_path(
                    F.mor(S.lunit(x)),
                    F.phi_at(S.unit, x),
                    T.tensor_mor(F.phi0, T.id(F.obj(x))),
                ),
                T.lunit(F.obj(x)),
            ),
        )
        report.evaluate(
            "right-unit",
            (x,),
            lambda: (
                D.compose_path(
                    F.mor(S.runit(x)),
                    F.phi_at(x, S.unit),
                    T.tensor_mor(T.id(F.obj(x)), F.phi0),
                ),
                T.runit(F.obj(x)),
            ),
        )
    _LOGGER.debug("%s", report)
    return report


@final
@dataclass(frozen=True, eq=False)
class MonoidalTransformation:
    """A transformation between the underlying functors of two monoidal functors."""

    name: str
    source: MonoidalFunctor
    target: MonoidalFunctor
    transformation: NatTrans

    def component(self, x: int) -> int:
        """Return the component at an object."""
        return self.transformation.component(x)


def check_monoidal_transformation(m: MonoidalTransformation) -> ValidationReport:
    """Check naturality and compatibility with φ and φ₀ on both sides."""
    F, G = m.source, m.target
    if F.source is not G.source or F.target is not G.target:
        raise NotComposable(f"{F.name} and {G.name} are not parallel")
    if not (
        m.transformation.source.same_as(F.underlying)
        and m.transformation.target.same_as(G.underlying)
    ):
        raise NotComposable(f"{m.name} does not run from {F.name} to {G.name}")
    check_component_types(m.transformation)
    report = ValidationReport(f"monoidal transformation {m.name}")
    report.merge(check_naturality(m.transformation))
    S, T = F.source, F.target
    D = T.base
    for x, y in S.pairs():
        report.evaluate(
            "binary",
            (x, y),
            lambda: (
                D.compose(m.component(S.tensor(x, y)), F.phi_at(x, y)),
                D.compose(
                    G.phi_at(x, y), T.tensor_mor(m.component(x), m.component(y))
                ),
            ),
        )
    report.check("nullary", (), D.compose(m.component(S.unit), F.phi0) == G.phi0)
    _LOGGER.debug("%s", report)
    return report


@dataclass(frozen=True)
class StrengthWitness:
    """Outcome of a normality or strength test.

    `inverses` maps `()` to the inverse of φ₀ and `(x, y)` to the inverse of
    φ_{x,y}; `failure` names the first component without an inverse.
    """

    holds: bool
    inverses: dict = field(default_factory=dict)
    failure: Optional[Hashable] = None

    def __bool__(self) -> bool:
        return self.holds


def is_normal(F: MonoidalFunctor) -> StrengthWitness:
    """Return whether φ₀ is invertible, with its inverse as witness."""
    if (inverse := find_inverse(F.target.base, F.phi0)) is None:
        return StrengthWitness(False, {}, ())
    return StrengthWitness(True, {(): inverse})


def is_strong(F: MonoidalFunctor) -> StrengthWitness:
    """Return whether φ₀ and every φ_{x,y} are invertible."""
    D = F.target.base
    inverses = {}
    for key in [(), *F.source.pairs()]:
        try:
            m = F.phi0 if key == () else F.phi_at(*key)
        except TruncationExceeded:
            continue
        if (inverse := find_inverse(D, m)) is None:
            return StrengthWitness(False, inverses, key)
        inverses[key] = inverse
    return StrengthWitness(True, inverses)


def identity_monoidal(M: MonoidalStructure) -> MonoidalFunctor:
    """Return the identity monoidal functor with identity comparison."""
    return MonoidalFunctor(
        f"Id_{M.name}",
        identity_functor(M.base),
        M,
        M,
        FunctionMapping(lambda key: M.id(M.tensor(*key)), M.pairs),
        M.id(M.unit),
    )


def compose_monoidal(G: MonoidalFunctor, F: MonoidalFunctor) -> MonoidalFunctor:
    """Return G∘F with φ = G(φ^F)∘φ^G and φ₀ = G(φ₀^F)∘φ₀^G."""
    if F.target is not G.source:
        raise NotComposable(f"{G.name} ∘ {F.name}")
    P = G.target.base

    def phi(key: tuple[int, int]) -> int:
        x, y = key
        return P.compose(G.mor(F.phi_at(x, y)), G.phi_at(F.obj(x), F.obj(y)))

    return MonoidalFunctor(
        f"{G.name}∘{F.name}",
        compose_functors(G.underlying, F.underlying),
        F.source,
        G.target,
        FunctionMapping(phi, F.source.pairs),
        P.compose(G.mor(F.phi0), G.phi0),
    )


def inverse_transformation(m: MonoidalTransformation) -> MonoidalTransformation:
    """Return the componentwise inverse, running target ⇒ source."""
    tau = m.transformation
    D = m.source.target.base
    return MonoidalTransformation(
        f"{m.name}⁻¹",
        m.target,
        m.source,
        NatTrans(
            f"{tau.name}⁻¹",
            tau.target,
            tau.source,
            tuple(invert(D, tau.component(x)) for x in tau.source.source.objects),
        ),
    )


def transport_structure(
    F: MonoidalFunctor, beta: NatTrans, name: Optional[str] = None
) -> MonoidalFunctor:
    """Transport F's comparison along a natural isomorphism β: F ⇒ G.

    The result has underlying functor G, φ′_{x,y} = β_{x⊗y}∘φ_{x,y}∘(β_x⊗β_y)⁻¹
    and φ′₀ = β_I∘φ₀, so that β is monoidal from F to it.
    """
    if not beta.source.same_as(F.underlying):
        raise NotComposable(f"{beta.name} does not start at {F.name}")
    S, T = F.source, F.target
    D = T.base
    inverses = [invert(D, beta.component(x)) for x in S.base.objects]

    def phi(key: tuple[int, int]) -> int:
        x, y = key
        return D.compose_path(
            beta.component(S.tensor(x, y)),
            F.phi_at(x, y),
            T.tensor_mor(inverses[x], inverses[y]),
        )

    return MonoidalFunctor(
        name or f"{F.name}^{beta.name}",
        beta.target,
        S,
        T,
        FunctionMapping(phi, F.phi.keys),
        D.compose(beta.component(S.unit), F.phi0),
    )


def check_binary_premise(
    F: MonoidalFunctor, phi: Mapping[tuple[int, int], int]
) -> ValidationReport:
    """Check that φ is a monoidal isomorphism ⊗∘(F×F) ⇒ F∘⊗.

    Both tensors are monoidal functors through the middle-four interchange,
    so both source and target must be braided.
    """
    S, T = F.source, F.target
    if S.braiding is None or T.braiding is None:
        raise MissingBraiding(f"{F.name}: both sides must be braided")
    D = T.base
    transformation = binary_transformation(F, phi)
    check_component_types(transformation)
    report = ValidationReport(f"binary premise of {F.name}")
    for key in S.pairs():
        _check_invertible(report, D, key, phi[key])
    report.merge(check_naturality(transformation))

    def phi_at(x: int, y: int) -> int:
        try:
            return phi[(x, y)]
        except KeyError as err:
            raise TruncationExceeded(f"φ at ({x}, {y})") from err

    for w, x, y, z in itertools.product(S.base.objects, repeat=4):
        fw, fx, fy, fz = (F.obj(v) for v in (w, x, y, z))
        report.evaluate(
            "premise-binary",
            (w, x, y, z),
            lambda: (
                D.compose_path(
                    phi_at(S.tensor(w, y), S.tensor(x, z)),
                    T.tensor_mor(F.phi_at(w, y), F.phi_at(x, z)),
                    interchange(T, fw, fx, fy, fz),
                ),
                D.compose_path(
                    F.mor(interchange(S, w, x, y, z)),
                    F.phi_at(S.tensor(w, x), S.tensor(y, z)),
                    T.tensor_mor(phi_at(w, x), phi_at(y, z)),
                ),
            ),
        )
    report.evaluate(
        "premise-unit",
        (),
        lambda: (
            D.compose_path(
                phi_at(S.unit, S.unit),
                T.tensor_mor(F.phi0, F.phi0),
                invert(D, T.lunit(T.unit)),
            ),
            D.compose(F.mor(invert(S.base, S.lunit(S.unit))), F.phi0),
        ),
    )
    _LOGGER.debug("%s", report)
    return report
