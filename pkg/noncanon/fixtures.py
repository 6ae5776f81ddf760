"""Built-in fixtures and the fixture loader.

A fixture file is JSON: a single document, a list of documents, or an object
with a `documents` list. Documents reference each other by name. A name is
resolved against the documents loaded so far, then against the built-in
generators (`finset:2`, `f_dbl`, ...), and `path#name` loads another file
first.
"""
from __future__ import annotations

from collections.abc import Callable, Mapping
from dataclasses import dataclass, field
from itertools import chain
import json
import logging
from pathlib import Path
from typing import Any, Optional, Union

import voluptuous as vol

from .const import FINSET_MAX
from .exceptions import (
    ComponentTypeMismatch,
    IndexOutOfRange,
    InvalidParameter,
    NotComposable,
    ParseError,
    UnresolvedReference,
    ValidationError,
)
from .famf import (
    CoproductChoice,
    canonical_monoidal_functor,
    check_coproduct_choice,
    finset_coproducts,
)
from .fincat import (
    FinCategory,
    FunctionMapping,
    Functor,
    NatTrans,
    check_category,
    check_functor,
    check_naturality,
    finset_skeleton,
    function_of,
    functor_from,
    identity_functor,
    morphism_of,
)
from .models import (
    FILE_SCHEMA,
    KIND_ALPHA,
    KIND_PHI,
    CategoryDocument,
    ComponentDocument,
    CoproductsDocument,
    FunctorDocument,
    MonoidalDocument,
    MonoidalFunctorDocument,
    TransformationDocument,
    parse_document,
)
from .monoidal import (
    MonoidalFunctor,
    MonoidalStructure,
    check_braiding,
    check_monoidal_category,
    check_monoidal_functor,
    identity_monoidal,
    transport_structure,
)
from .report import ValidationReport

_LOGGER = logging.getLogger(__name__)

PHI_CANONICAL = "canonical"
PHI_TWISTED = "twisted"
PHI_SWAPPED = "swapped"


def terminal_category() -> FinCategory:
    """Return 𝟙: one object and its identity."""
    return FinCategory.from_table("1", 1, [(0, 0)], [0], [(0, 0, 0)])


def arrow_category() -> FinCategory:
    """Return 𝟚: objects 0 and 1 with one morphism 0 → 1 (id 2)."""
    return FinCategory.from_table(
        "2",
        2,
        [(0, 0), (1, 1), (0, 1)],
        [0, 1],
        [(0, 0, 0), (1, 1, 1), (2, 0, 2), (1, 2, 2)],
    )


def max_coproducts(C: FinCategory, name: str) -> CoproductChoice:
    """Choose x⊔y = max(x, y) in a total order with its identities and unique arrows."""
    coproducts = {}
    for x in C.objects:
        for y in C.objects:
            s = max(x, y)
            coproducts[(x, y)] = (s, C.hom(x, s)[0], C.hom(y, s)[0])
    return CoproductChoice(name, C, coproducts, 0)


def cyclic_monoidal(n: int) -> MonoidalStructure:
    """Return the discrete monoidal category on ℤ/n with tensor given by addition."""
    if n < 1:
        raise InvalidParameter(f"cyclic order {n} must be positive")
    C = FinCategory.from_table(
        f"Z/{n}", n, [(x, x) for x in range(n)], range(n), [(x, x, x) for x in range(n)]
    )
    table = {(x, y): (x + y) % n for x in range(n) for y in range(n)}
    return MonoidalStructure(
        f"(Z/{n}, +)",
        C,
        table,
        table,
        0,
        {
            (x, y, z): (x + y + z) % n
            for x in range(n)
            for y in range(n)
            for z in range(n)
        },
        range(n),
        range(n),
        table,
    )


def delooping_monoidal(n: int) -> MonoidalStructure:
    """Return ℤ/n as a one-object category, tensored by addition of morphisms."""
    if n < 1:
        raise InvalidParameter(f"delooping order {n} must be positive")
    C = FinCategory.from_table(
        f"B(Z/{n})",
        1,
        [(0, 0)] * n,
        [0],
        [(g, f, (g + f) % n) for g in range(n) for f in range(n)],
    )
    return MonoidalStructure(
        f"(B(Z/{n}), +)",
        C,
        {(0, 0): 0},
        {(f, g): (f + g) % n for f in range(n) for g in range(n)},
        0,
        {(0, 0, 0): 0},
        [0],
        [0],
        {(0, 0): 0},
    )


def shift_functor(M: MonoidalStructure, c: int) -> MonoidalFunctor:
    """Return the identity of a delooping with comparison φ = c and φ₀ = −c."""
    n = M.base.size
    return MonoidalFunctor(
        f"shift_{c % n}",
        identity_functor(M.base),
        M,
        M,
        {(0, 0): c % n},
        (-c) % n,
    )


def doubling_functor(
    source: CoproductChoice, target: CoproductChoice
) -> MonoidalFunctor:
    """Return F_dbl: n ↦ 2n, two copies of every function, with the shuffle comparison.

    Element t·n+i of F(n) is copy t of i. φ_{m,n} sends copy t of the first
    block to t(m+n)+i and copy t of the second block to t(m+n)+m+j.
    """
    S, T = source.category, target.category

    def on_morphism(f: int) -> int:
        m, n = S.src(f), S.dst(f)
        values = function_of(S, f)
        return morphism_of(T, [t * n + values[i] for t in (0, 1) for i in range(m)], 2 * n)

    def phi(key: tuple[int, int]) -> int:
        if not source.has(*key):
            raise KeyError(key)
        m, n = key
        s = m + n
        values = [t * s + i for t in (0, 1) for i in range(m)]
        values += [t * s + m + j for t in (0, 1) for j in range(n)]
        return morphism_of(T, values, 2 * s)

    underlying = functor_from("F_dbl", S, T, lambda n: 2 * n, on_morphism)
    return MonoidalFunctor(
        "F_dbl",
        underlying,
        source.monoidal,
        target.monoidal,
        FunctionMapping(phi, source.pairs),
        T.identity(0),
    )


def block_swap(F: MonoidalFunctor) -> NatTrans:
    """Return β_swap: the automorphism of F_dbl exchanging the two copies."""
    T = F.target.base
    components = []
    for n in F.source.base.objects:
        values = [(1 - t) * n + i for t in (0, 1) for i in range(n)]
        components.append(morphism_of(T, values, 2 * n))
    return NatTrans("β_swap", F.underlying, F.underlying, tuple(components))


def squaring_functor(source: CoproductChoice, target: CoproductChoice) -> Functor:
    """Return F_sq: n ↦ n², f ↦ f×f with pairs (i, j) numbered i·n+j."""
    S, T = source.category, target.category

    def on_morphism(f: int) -> int:
        m, n = S.src(f), S.dst(f)
        values = function_of(S, f)
        return morphism_of(
            T, [values[i] * n + values[j] for i in range(m) for j in range(m)], n * n
        )

    return functor_from("F_sq", S, T, lambda n: n * n, on_morphism)


@dataclass
class FixtureBundle:
    """Named categories, functors and transformations with their validation reports.

    Entries are keyed by the name they were requested or defined under.
    Component families (`phi`, `psi`, `alpha`) are keyed by functor name and
    family name. `documents` holds every loaded document in normal form, in
    load order.
    """

    categories: dict[str, FinCategory] = field(default_factory=dict)
    monoidal: dict[str, MonoidalStructure] = field(default_factory=dict)
    functors: dict[str, Functor] = field(default_factory=dict)
    monoidal_functors: dict[str, MonoidalFunctor] = field(default_factory=dict)
    transformations: dict[str, NatTrans] = field(default_factory=dict)
    choices: dict[str, CoproductChoice] = field(default_factory=dict)
    families: dict[tuple[str, str, str], Mapping] = field(default_factory=dict)
    reports: dict[str, ValidationReport] = field(default_factory=dict)
    loaded: set[Path] = field(default_factory=set)
    documents: list[dict] = field(default_factory=list)
    _finsets: dict[int, CoproductChoice] = field(default_factory=dict, repr=False)
    _doublings: dict[int, MonoidalFunctor] = field(default_factory=dict, repr=False)

    def _lookup(self, table: dict, name: str, base: Optional[Path] = None):
        if name in table:
            return table[name]
        if "#" in name:
            path, _, inner = name.partition("#")
            load_fixture((base or Path.cwd()) / path, self)
            if inner in table:
                table[name] = table[inner]
                return table[name]
        elif not self._known(name) and self.ensure_builtin(name) and name in table:
            return table[name]
        raise UnresolvedReference(name)

    def _known(self, name: str) -> bool:
        tables = (
            self.categories,
            self.monoidal,
            self.functors,
            self.transformations,
            self.choices,
        )
        return any(name in table for table in tables)

    def category(self, name: str, base: Optional[Path] = None) -> FinCategory:
        """Return a named category."""
        return self._lookup(self.categories, name, base)

    def monoidal_structure(
        self, name: str, base: Optional[Path] = None
    ) -> MonoidalStructure:
        """Return a named monoidal structure."""
        return self._lookup(self.monoidal, name, base)

    def functor(self, name: str, base: Optional[Path] = None) -> Functor:
        """Return a named functor, or the underlying functor of a monoidal one."""
        return self._lookup(self.functors, name, base)

    def monoidal_functor(self, name: str, base: Optional[Path] = None) -> MonoidalFunctor:
        """Return a named monoidal functor."""
        return self._lookup(self.monoidal_functors, name, base)

    def transformation(self, name: str, base: Optional[Path] = None) -> NatTrans:
        """Return a named transformation."""
        return self._lookup(self.transformations, name, base)

    def coproducts(self, name: str, base: Optional[Path] = None) -> CoproductChoice:
        """Return a named coproduct choice."""
        return self._lookup(self.choices, name, base)

    def choice_for(self, category: FinCategory) -> CoproductChoice:
        """Return the first coproduct choice registered on a category.

        The FinSet skeletons built for built-in functors count as registered.
        """
        for choice in chain(self.choices.values(), self._finsets.values()):
            if choice.category is category:
                return choice
        raise UnresolvedReference(f"coproducts on {category.name}")

    def family(self, kind: str, functor: str, name: str) -> Mapping:
        """Return a named component family attached to a functor."""
        if (kind, functor, name) not in self.families and not self._known(functor):
            self.ensure_builtin(functor)
        try:
            return self.families[(kind, functor, name)]
        except KeyError as err:
            raise UnresolvedReference(f"{kind} {name} of {functor}") from err

    def finset(self, k: int) -> CoproductChoice:
        """Return the shared FinSet skeleton of size k with its coproducts."""
        if k not in self._finsets:
            C = finset_skeleton(k, limit=None)
            self._finsets[k] = finset_coproducts(C, f"finset:{k}")
        return self._finsets[k]

    def ensure_builtin(self, name: str) -> bool:
        """Build and register a built-in fixture; return whether the name is built in."""
        head, _, rest = name.partition(":")
        if head == "id" and rest:
            M = self.monoidal_structure(rest)
            self._register_monoidal_functor(name, identity_monoidal(M))
            return True
        if (builder := BUILTINS.get(head)) is None:
            return False
        try:
            args = [int(part) for part in rest.split(":")] if rest else []
        except ValueError as err:
            raise UnresolvedReference(name) from err
        _LOGGER.debug("Building fixture %s", name)
        builder(self, name, *args)
        return True

    def _register_choice(self, name: str, choice: CoproductChoice) -> None:
        self.categories[name] = choice.category
        self.choices[name] = choice
        self.monoidal[name] = choice.monoidal

    def _register_monoidal_functor(self, name: str, F: MonoidalFunctor) -> None:
        self.monoidal_functors[name] = F
        self.functors[name] = F.underlying
        self.families[(KIND_PHI, name, PHI_CANONICAL)] = F.phi


def _build_terminal(bundle: FixtureBundle, name: str) -> None:
    bundle._register_choice(name, max_coproducts(terminal_category(), name))


def _build_arrow(bundle: FixtureBundle, name: str) -> None:
    bundle._register_choice(name, max_coproducts(arrow_category(), name))


def _build_finset(bundle: FixtureBundle, name: str, k: int = 2) -> None:
    if not 0 <= k <= FINSET_MAX:
        raise InvalidParameter(f"finset:{k} outside 0..{FINSET_MAX}")
    bundle._register_choice(name, bundle.finset(k))


def _build_cyclic(bundle: FixtureBundle, name: str, n: int = 2) -> None:
    M = cyclic_monoidal(n)
    bundle.categories[name] = M.base
    bundle.monoidal[name] = M


def _build_delooping(bundle: FixtureBundle, name: str, n: int = 2) -> None:
    M = delooping_monoidal(n)
    bundle.categories[name] = M.base
    bundle.monoidal[name] = M


def _build_shift(bundle: FixtureBundle, name: str, n: int = 2, c: int = 1) -> None:
    key = f"delooping:{n}"
    M = bundle.monoidal_structure(key)
    bundle._register_monoidal_functor(name, shift_functor(M, c))


def _doubling(bundle: FixtureBundle, k: int) -> MonoidalFunctor:
    if not 0 <= k <= FINSET_MAX:
        raise InvalidParameter(f"F_dbl source size {k} outside 0..{FINSET_MAX}")
    if k not in bundle._doublings:
        bundle._doublings[k] = doubling_functor(bundle.finset(k), bundle.finset(2 * k))
    return bundle._doublings[k]


def _build_doubling(bundle: FixtureBundle, name: str, k: int = 2) -> None:
    F = _doubling(bundle, k)
    beta = block_swap(F)
    D = F.target.base
    S = F.source
    bundle._register_monoidal_functor(name, F)
    bundle.families[(KIND_PHI, name, PHI_TWISTED)] = transport_structure(F, beta).phi

    def swapped(key: tuple[int, int]) -> int:
        if not S.has_tensor(*key):
            raise KeyError(key)
        return D.compose(beta.component(S.tensor(*key)), F.phi_at(*key))

    bundle.families[(KIND_PHI, name, PHI_SWAPPED)] = FunctionMapping(swapped, S.pairs)


def _build_block_swap(bundle: FixtureBundle, name: str, k: int = 2) -> None:
    bundle.transformations[name] = block_swap(_doubling(bundle, k))


def _build_squaring(bundle: FixtureBundle, name: str, k: int = 2) -> None:
    if not 0 <= k <= FINSET_MAX:
        raise InvalidParameter(f"F_sq source size {k} outside 0..{FINSET_MAX}")
    source, target = bundle.finset(k), bundle.finset(k * k)
    F = canonical_monoidal_functor(squaring_functor(source, target), source, target)
    bundle._register_monoidal_functor(name, F)


def _build_coface(bundle: FixtureBundle, name: str) -> None:
    one, two = bundle.category("terminal"), bundle.category("arrow")
    bundle.functors[name] = Functor("d0", one, two, (1,), (1,))


def _build_point(bundle: FixtureBundle, name: str, k: int = 2, n: int = 1) -> None:
    one = bundle.category("terminal")
    target = bundle.category(f"finset:{k}")
    if not 0 <= n <= k:
        raise InvalidParameter(f"point {n} outside 0..{k}")
    bundle.functors[name] = Functor(f"pt_{n}", one, target, (n,), (target.identity(n),))


BUILTINS: dict[str, Callable[..., None]] = {
    "terminal": _build_terminal,
    "arrow": _build_arrow,
    "finset": _build_finset,
    "cyclic": _build_cyclic,
    "delooping": _build_delooping,
    "shift": _build_shift,
    "f_dbl": _build_doubling,
    "beta_swap": _build_block_swap,
    "f_sq": _build_squaring,
    "d0": _build_coface,
    "point": _build_point,
}


def _validated(name: str, build: Callable[[], Any], *checks: Callable[[Any], ValidationReport]):
    """Build an object and run its validators, raising ValidationError on failure."""
    report = ValidationReport(name)
    try:
        obj = build()
        for check in checks:
            report.merge(check(obj))
            if not report.ok:
                break
    except (ComponentTypeMismatch, IndexOutOfRange, NotComposable, KeyError) as err:
        report.fail("structure", (), str(err))
    if not report.ok:
        raise ValidationError(name, report)
    return obj, report


def _category(doc: CategoryDocument) -> FinCategory:
    return FinCategory.from_table(
        doc.name,
        doc.objects,
        [(src, dst) for _, src, dst in doc.morphisms],
        doc.identity,
        doc.compose,
    )


def _monoidal(doc: MonoidalDocument) -> MonoidalStructure:
    C = _category(doc.category)
    return MonoidalStructure(
        doc.name,
        C,
        {(x, y): xy for x, y, xy in doc.tensor_obj},
        {(f, g): fg for f, g, fg in doc.tensor_mor},
        doc.unit,
        {(x, y, z): m for x, y, z, m in doc.associator},
        tuple(doc.lunitor),
        tuple(doc.runitor),
        None
        if doc.braiding is None
        else {(x, y): m for x, y, m in doc.braiding},
    )


def _check_monoidal(M: MonoidalStructure) -> ValidationReport:
    report = check_category(M.base)
    if report.ok:
        report.merge(check_monoidal_category(M))
    if report.ok and M.braiding is not None:
        report.merge(check_braiding(M))
    return report


def _functor(doc: FunctorDocument, source: FinCategory, target: FinCategory) -> Functor:
    if len(doc.obj_map) != source.n_objects or len(doc.mor_map) != source.size:
        raise IndexOutOfRange(f"{doc.name}: maps do not cover {source.name}")
    return Functor(doc.name, source, target, tuple(doc.obj_map), tuple(doc.mor_map))


def _register(bundle: FixtureBundle, document, base: Path) -> None:
    name = document.name
    if isinstance(document, MonoidalDocument):
        M, report = _validated(name, lambda: _monoidal(document), _check_monoidal)
        bundle.categories[name] = M.base
        bundle.monoidal[name] = M
    elif isinstance(document, CategoryDocument):
        C, report = _validated(name, lambda: _category(document), check_category)
        bundle.categories[name] = C
    elif isinstance(document, MonoidalFunctorDocument):
        doc = document.functor
        S = bundle.monoidal_structure(doc.source, base)
        T = bundle.monoidal_structure(doc.target, base)
        F, report = _validated(
            name,
            lambda: MonoidalFunctor(
                name,
                _functor(doc, S.base, T.base),
                S,
                T,
                {(x, y): m for x, y, m in document.phi},
                document.phi0,
            ),
            check_monoidal_functor,
        )
        bundle._register_monoidal_functor(name, F)
    elif isinstance(document, FunctorDocument):
        S = bundle.category(document.source, base)
        T = bundle.category(document.target, base)
        F, report = _validated(
            name, lambda: _functor(document, S, T), check_functor
        )
        bundle.functors[name] = F
    elif isinstance(document, TransformationDocument):
        source = bundle.functor(document.source, base)
        target = bundle.functor(document.target, base)
        tau, report = _validated(
            name,
            lambda: NatTrans(name, source, target, tuple(document.components)),
            check_naturality,
        )
        bundle.transformations[name] = tau
    elif isinstance(document, CoproductsDocument):
        C = bundle.category(document.category, base)
        choice, report = _validated(
            name,
            lambda: CoproductChoice(
                name,
                C,
                {(x, y): (s, i1, i2) for x, y, s, i1, i2 in document.coproduct},
                document.initial,
            ),
            check_coproduct_choice,
        )
        bundle.choices[name] = choice
    elif isinstance(document, ComponentDocument):
        if document.kind == KIND_ALPHA:
            bundle.functor(document.functor, base)
        else:
            bundle.monoidal_functor(document.functor, base)
        bundle.families[(document.kind, document.functor, name)] = document.components
        return
    else:
        raise ParseError("kind", f"unsupported document {type(document).__name__}")
    bundle.reports[name] = report
    _LOGGER.debug("Loaded %s: %s", name, report)


def _read_documents(path: Path) -> list:
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as err:
        raise ParseError(path.name, f"not valid JSON: {err.msg}") from err
    if isinstance(data, dict) and "documents" in data:
        try:
            data = FILE_SCHEMA(data)["documents"]
        except vol.Invalid as err:
            raise ParseError(f"{path.name}.documents", str(err)) from err
    if isinstance(data, dict):
        return [data]
    if not isinstance(data, list):
        raise ParseError(path.name, "expected a document or a list of documents")
    return data


def load_fixture(
    source: Union[str, Path], bundle: Optional[FixtureBundle] = None
) -> FixtureBundle:
    """Load a fixture file or a built-in fixture into a bundle.

    Args:
        source: A JSON file, or the name of a built-in fixture.
        bundle: The bundle to extend; a new one when omitted.

    Returns:
        The bundle. Every object in it passed its validator.
    """
    bundle = bundle if bundle is not None else FixtureBundle()
    path = Path(source)
    if not path.is_file():
        if not bundle.ensure_builtin(str(source)):
            raise UnresolvedReference(str(source))
        return bundle
    path = path.resolve()
    if path in bundle.loaded:
        return bundle
    bundle.loaded.add(path)
    for position, raw in enumerate(_read_documents(path)):
        document = parse_document(raw, f"{path.name}[{position}].")
        _register(bundle, document, path.parent)
        bundle.documents.append(document.to_dict())
    _LOGGER.info("Loaded %s", path)
    return bundle
