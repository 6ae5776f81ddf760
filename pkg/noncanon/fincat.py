"""Finite categories, functors and natural transformations.

Morphisms are plain integers indexing one category's morphism sequence, so
two morphisms are equal exactly when their indices are. Large derived
categories (FinSet skeletons, product categories, free constructions) index
their morphisms lazily by hom-block and never materialize the full table.
"""
from __future__ import annotations

from bisect import bisect_right
from collections import defaultdict
from collections.abc import Callable, Hashable, Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass, field
from functools import cached_property
import itertools
import logging
import math
import threading
from typing import Any, Optional, final

from .const import DEFAULT_SEARCH_BOUND, FINSET_MAX
from .exceptions import (
    ComponentTypeMismatch,
    IndexOutOfRange,
    InvalidParameter,
    NotComposable,
    NotInvertible,
    SearchSpaceTooLarge,
)
from .report import ValidationReport

_LOGGER = logging.getLogger(__name__)
_INVERSES_LOCK = threading.Lock()


@final
class ProductSeq(Sequence):
    """Cartesian product of sequences, indexed in `itertools.product` order."""

    def __init__(self, factors: Iterable[Sequence]) -> None:
        """Construct a new instance.

        Args:
            factors: The sequences to multiply; each must support `index`.
        """
        self._factors = tuple(factors)
        self._sizes = tuple(len(factor) for factor in self._factors)
        self._len = math.prod(self._sizes)

    def __len__(self) -> int:
        return self._len

    def __getitem__(self, index):
        if isinstance(index, slice):
            return [self[i] for i in range(*index.indices(self._len))]
        if index < 0:
            index += self._len
        if not 0 <= index < self._len:
            raise IndexError(index)
        digits = []
        for factor, size in zip(reversed(self._factors), reversed(self._sizes)):
            index, digit = divmod(index, size)
            digits.append(factor[digit])
        return tuple(reversed(digits))

    def index(self, value, start: int = 0, stop: Optional[int] = None) -> int:
        if len(value) != len(self._factors):
            raise ValueError(value)
        position = 0
        for factor, size, item in zip(self._factors, self._sizes, value):
            position = position * size + factor.index(item)
        return position

    def __contains__(self, value) -> bool:
        try:
            self.index(value)
        except (ValueError, TypeError):
            return False
        return True


@final
class ChainSeq(Sequence):
    """Concatenation of keyed sequences; items are `(key, item)` pairs."""

    def __init__(self, parts: Iterable[tuple[Hashable, Sequence]]) -> None:
        """Construct a new instance.

        Args:
            parts: Pairs of a distinct key and the sequence filed under it.
        """
        parts = list(parts)
        self._keys = [key for key, _ in parts]
        self._parts = [part for _, part in parts]
        self._position = {key: i for i, key in enumerate(self._keys)}
        self._offsets = list(
            itertools.accumulate((len(part) for part in self._parts), initial=0)
        )

    def __len__(self) -> int:
        return self._offsets[-1]

    def __getitem__(self, index):
        if isinstance(index, slice):
            return [self[i] for i in range(*index.indices(len(self)))]
        if index < 0:
            index += len(self)
        if not 0 <= index < len(self):
            raise IndexError(index)
        block = bisect_right(self._offsets, index) - 1
        return self._keys[block], self._parts[block][index - self._offsets[block]]

    def index(self, value, start: int = 0, stop: Optional[int] = None) -> int:
        key, item = value
        if key not in self._position:
            raise ValueError(value)
        block = self._position[key]
        return self._offsets[block] + self._parts[block].index(item)

    def __contains__(self, value) -> bool:
        try:
            self.index(value)
        except (ValueError, TypeError):
            return False
        return True


@final
class LazyValues(Sequence):
    """A sequence whose items are computed on first access and then kept."""

    def __init__(self, length: int, compute: Callable[[int], Any]) -> None:
        """Construct a new instance."""
        self._length = length
        self._compute = compute
        self._memo: dict[int, Any] = {}
        self._lock = threading.Lock()

    def __len__(self) -> int:
        return self._length

    def __getitem__(self, index):
        if isinstance(index, slice):
            return [self[i] for i in range(*index.indices(self._length))]
        if index < 0:
            index += self._length
        if not 0 <= index < self._length:
            raise IndexError(index)
        with self._lock:
            if index in self._memo:
                return self._memo[index]
        value = self._compute(index)
        with self._lock:
            return self._memo.setdefault(index, value)


@final
class FunctionMapping(Mapping):
    """A read-only mapping whose values are computed on demand.

    `compute` raises `KeyError` for keys outside the mapping; `keys` yields
    the keys in a fixed order.
    """

    def __init__(
        self, compute: Callable[[Any], Any], keys: Callable[[], Iterable]
    ) -> None:
        """Construct a new instance."""
        self._compute = compute
        self._keys = keys
        self._memo: dict = {}
        self._lock = threading.Lock()
        self._len: Optional[int] = None

    def __getitem__(self, key):
        with self._lock:
            if key in self._memo:
                return self._memo[key]
        value = self._compute(key)
        with self._lock:
            return self._memo.setdefault(key, value)

    def __iter__(self) -> Iterator:
        return iter(self._keys())

    def __len__(self) -> int:
        if self._len is None:
            self._len = sum(1 for _ in self._keys())
        return self._len

    def __contains__(self, key) -> bool:
        try:
            self[key]
        except (KeyError, TypeError):
            return False
        return True


@dataclass(frozen=True)
class Morphism:
    """A morphism record of a finite category."""

    id: int
    src: int
    dst: int


class _HomBlocks:
    """Morphism numbering of a category whose hom-sets are label sequences."""

    def __init__(
        self, n_objects: int, hom_labels: Callable[[int, int], Sequence]
    ) -> None:
        self.n_objects = n_objects
        self.labels = [
            hom_labels(x, y) for x in range(n_objects) for y in range(n_objects)
        ]
        self.offsets = list(
            itertools.accumulate((len(block) for block in self.labels), initial=0)
        )

    def __len__(self) -> int:
        return self.offsets[-1]

    def locate(self, morphism: int) -> tuple[int, int, Hashable]:
        if not 0 <= morphism < len(self):
            raise IndexOutOfRange(f"morphism {morphism} does not exist")
        block = bisect_right(self.offsets, morphism) - 1
        x, y = divmod(block, self.n_objects)
        return x, y, self.labels[block][morphism - self.offsets[block]]

    def encode(self, x: int, y: int, label: Hashable) -> int:
        if not (0 <= x < self.n_objects and 0 <= y < self.n_objects):
            raise IndexOutOfRange(f"no hom({x}, {y})")
        block = x * self.n_objects + y
        try:
            return self.offsets[block] + self.labels[block].index(label)
        except ValueError as err:
            raise IndexOutOfRange(f"no morphism {label!r} in hom({x}, {y})") from err

    def hom(self, x: int, y: int) -> range:
        block = x * self.n_objects + y
        return range(self.offsets[block], self.offsets[block + 1])


class _BlockMorphisms(Sequence):
    def __init__(self, blocks: _HomBlocks) -> None:
        self._blocks = blocks

    def __len__(self) -> int:
        return len(self._blocks)

    def __getitem__(self, index):
        if isinstance(index, slice):
            return [self[i] for i in range(*index.indices(len(self)))]
        x, y, _ = self._blocks.locate(index)
        return Morphism(index, x, y)


class _BlockLabels(Sequence):
    def __init__(self, blocks: _HomBlocks) -> None:
        self._blocks = blocks

    def __len__(self) -> int:
        return len(self._blocks)

    def __getitem__(self, index):
        if isinstance(index, slice):
            return [self[i] for i in range(*index.indices(len(self)))]
        return self._blocks.locate(index)[2]


class _BlockComposition(Mapping):
    def __init__(
        self,
        blocks: _HomBlocks,
        compose_labels: Callable[[Hashable, Hashable], Hashable],
    ) -> None:
        self._blocks = blocks
        self._compose_labels = compose_labels

    def __getitem__(self, key):
        g, f = key
        try:
            y2, z, g_label = self._blocks.locate(g)
            x, y, f_label = self._blocks.locate(f)
        except IndexOutOfRange as err:
            raise KeyError(key) from err
        if y != y2:
            raise KeyError(key)
        return self._blocks.encode(x, z, self._compose_labels(g_label, f_label))

    def __iter__(self) -> Iterator[tuple[int, int]]:
        n = self._blocks.n_objects
        for x, y, z in itertools.product(range(n), repeat=3):
            for f in self._blocks.hom(x, y):
                for g in self._blocks.hom(y, z):
                    yield g, f

    def __len__(self) -> int:
        n = self._blocks.n_objects
        return sum(
            len(self._blocks.hom(x, y)) * len(self._blocks.hom(y, z))
            for x, y, z in itertools.product(range(n), repeat=3)
        )

    def __contains__(self, key) -> bool:
        try:
            self[key]
        except (KeyError, TypeError, ValueError):
            return False
        return True


@final
@dataclass(frozen=True, eq=False)
class FinCategory:
    """A finite category given by its morphisms and composition table.

    Categories compare by identity: morphism indices of two different
    categories are never related.
    """

    name: str
    n_objects: int
    morphisms: Sequence[Morphism]
    identities: Sequence[int]
    composition: Mapping[tuple[int, int], int]
    object_labels: Optional[Sequence[Hashable]] = None
    morphism_labels: Optional[Sequence[Hashable]] = None
    hom_view: Optional[Callable[[int, int], Sequence[int]]] = field(
        default=None, repr=False
    )
    label_lookup: Optional[Callable[[int, int, Hashable], int]] = field(
        default=None, repr=False
    )

    @classmethod
    def from_table(
        cls,
        name: str,
        n_objects: int,
        arrows: Sequence[tuple[int, int]],
        identities: Sequence[int],
        compose: Iterable[tuple[int, int, int]],
        object_labels: Optional[Sequence[Hashable]] = None,
        morphism_labels: Optional[Sequence[Hashable]] = None,
    ) -> FinCategory:
        """Build a category from explicit tables.

        Args:
            name: The category name.
            n_objects: The number of objects.
            arrows: `(src, dst)` of every morphism, in id order.
            identities: The identity morphism of every object.
            compose: Triples `(g, f, g∘f)`.
            object_labels: Optional display labels of the objects.
            morphism_labels: Optional display labels of the morphisms.

        Returns:
            The category. It is not validated; use `check_category`.
        """
        return cls(
            name,
            n_objects,
            tuple(Morphism(i, src, dst) for i, (src, dst) in enumerate(arrows)),
            tuple(identities),
            {(g, f): gf for g, f, gf in compose},
            None if object_labels is None else tuple(object_labels),
            None if morphism_labels is None else tuple(morphism_labels),
        )

    @property
    def objects(self) -> range:
        """Return the object indices."""
        return range(self.n_objects)

    @property
    def size(self) -> int:
        """Return the number of morphisms."""
        return len(self.morphisms)

    def morphism(self, m: int) -> Morphism:
        """Return the record of a morphism."""
        if not 0 <= m < len(self.morphisms):
            raise IndexOutOfRange(f"{self.name}: morphism {m} does not exist")
        return self.morphisms[m]

    def src(self, m: int) -> int:
        """Return the source object of a morphism."""
        return self.morphism(m).src

    def dst(self, m: int) -> int:
        """Return the target object of a morphism."""
        return self.morphism(m).dst

    def identity(self, x: int) -> int:
        """Return the identity morphism of an object."""
        if not 0 <= x < self.n_objects:
            raise IndexOutOfRange(f"{self.name}: object {x} does not exist")
        return self.identities[x]

    def compose(self, g: int, f: int) -> int:
        """Return g∘f."""
        try:
            return self.composition[(g, f)]
        except KeyError as err:
            raise NotComposable(f"{self.name}: {g} ∘ {f} is undefined") from err

    def compose_path(self, *morphisms: int) -> int:
        """Return the composite of a path written right to left."""
        result = morphisms[-1]
        for m in reversed(morphisms[:-1]):
            result = self.compose(m, result)
        return result

    def hom(self, x: int, y: int) -> Sequence[int]:
        """Return the morphisms from x to y."""
        if self.hom_view is not None:
            return self.hom_view(x, y)
        return self._homs.get((x, y), ())

    def arrows_from(self, x: int) -> Iterator[int]:
        """Iterate over the morphisms whose source is x."""
        for y in self.objects:
            yield from self.hom(x, y)

    def label(self, m: int) -> Hashable:
        """Return the display label of a morphism."""
        return m if self.morphism_labels is None else self.morphism_labels[m]

    def object_label(self, x: int) -> Hashable:
        """Return the display label of an object."""
        return x if self.object_labels is None else self.object_labels[x]

    def object_index(self, label: Hashable) -> int:
        """Return the object with a given label."""
        try:
            return self._object_index[label]
        except KeyError as err:
            raise IndexOutOfRange(f"{self.name}: no object {label!r}") from err

    def has_object(self, label: Hashable) -> bool:
        """Return whether an object with a given label exists."""
        return label in self._object_index

    def morphism_index(self, x: int, y: int, label: Hashable) -> int:
        """Return the morphism of hom(x, y) with a given label."""
        if self.label_lookup is not None:
            return self.label_lookup(x, y, label)
        try:
            return self._morphism_index[(x, y, label)]
        except KeyError as err:
            raise IndexOutOfRange(
                f"{self.name}: no morphism {label!r} in hom({x}, {y})"
            ) from err

    @cached_property
    def _homs(self) -> dict[tuple[int, int], list[int]]:
        homs: dict[tuple[int, int], list[int]] = defaultdict(list)
        for record in self.morphisms:
            homs[(record.src, record.dst)].append(record.id)
        return dict(homs)

    @cached_property
    def _object_index(self) -> dict[Hashable, int]:
        return {self.object_label(x): x for x in self.objects}

    @cached_property
    def _morphism_index(self) -> dict[tuple[int, int, Hashable], int]:
        return {
            (record.src, record.dst, self.label(record.id)): record.id
            for record in self.morphisms
        }

    @cached_property
    def _inverses(self) -> dict[int, Optional[int]]:
        return {}


def lazy_category(
    name: str,
    object_labels: Sequence[Hashable],
    hom_labels: Callable[[int, int], Sequence],
    compose_labels: Callable[[Hashable, Hashable], Hashable],
    identity_label: Callable[[int], Hashable],
) -> FinCategory:
    """Build a category whose hom-sets are computed label sequences.

    Args:
        name: The category name.
        object_labels: The object labels, in object order.
        hom_labels: Returns the labels of hom(x, y); must support `index`.
        compose_labels: Returns the label of g∘f from the labels of g and f.
        identity_label: Returns the label of the identity of an object.

    Returns:
        A category numbering its morphisms block by block.
    """
    blocks = _HomBlocks(len(object_labels), hom_labels)
    identities = LazyValues(
        len(object_labels), lambda x: blocks.encode(x, x, identity_label(x))
    )
    return FinCategory(
        name,
        len(object_labels),
        _BlockMorphisms(blocks),
        identities,
        _BlockComposition(blocks, compose_labels),
        tuple(object_labels),
        _BlockLabels(blocks),
        hom_view=blocks.hom,
        label_lookup=blocks.encode,
    )


def finset_skeleton(k: int, *, limit: Optional[int] = FINSET_MAX) -> FinCategory:
    """Build the skeleton of finite sets of size at most k.

    Object n is the set {0, …, n−1}; a morphism m → n is the tuple of its
    values.

    Args:
        k: The largest set size.
        limit: The largest k accepted, or None for no limit.

    Returns:
        The skeleton category.
    """
    if k < 0 or (limit is not None and k > limit):
        raise InvalidParameter(f"FinSet skeleton size {k} outside 0..{limit}")
    return lazy_category(
        f"FinSet_{k}",
        tuple(range(k + 1)),
        lambda m, n: ProductSeq([range(n)] * m),
        lambda g, f: tuple(g[i] for i in f),
        lambda n: tuple(range(n)),
    )


def function_of(category: FinCategory, m: int) -> tuple[int, ...]:
    """Return the value tuple of a morphism of a FinSet skeleton."""
    return category.label(m)


def morphism_of(category: FinCategory, values: Sequence[int], dst: int) -> int:
    """Return the morphism of a FinSet skeleton with the given values."""
    return category.morphism_index(len(values), dst, tuple(values))


def product_category(
    left: FinCategory,
    right: FinCategory,
    pairs: Optional[Sequence[tuple[int, int]]] = None,
    name: Optional[str] = None,
) -> FinCategory:
    """Build the product category, or its full subcategory on some pairs."""
    if pairs is None:
        pairs = list(itertools.product(left.objects, right.objects))
    pairs = tuple(pairs)
    return lazy_category(
        name or f"{left.name}×{right.name}",
        pairs,
        lambda i, j: ProductSeq(
            [left.hom(pairs[i][0], pairs[j][0]), right.hom(pairs[i][1], pairs[j][1])]
        ),
        lambda g, f: (left.compose(g[0], f[0]), right.compose(g[1], f[1])),
        lambda i: (left.identity(pairs[i][0]), right.identity(pairs[i][1])),
    )


def _try_compose(category: FinCategory, g: int, f: int) -> Optional[int]:
    try:
        return category.compose(g, f)
    except NotComposable:
        return None


def check_category(category: FinCategory) -> ValidationReport:
    """Check the category laws exhaustively.

    Args:
        category: The category to check.

    Returns:
        A report listing every violated identity, composability and
        associativity instance.
    """
    report = ValidationReport(f"category {category.name}")
    total = category.size
    for record in category.morphisms:
        if not (
            0 <= record.src < category.n_objects and 0 <= record.dst < category.n_objects
        ):
            raise IndexOutOfRange(f"{category.name}: morphism {record.id} endpoints")
    if len(category.identities) != category.n_objects:
        raise IndexOutOfRange(f"{category.name}: one identity per object required")
    for x, ident in enumerate(category.identities):
        record = category.morphism(ident)
        report.check("identity-type", (x,), record.src == x and record.dst == x)
    for (g, f), gf in category.composition.items():
        if not all(0 <= m < total for m in (g, f, gf)):
            raise IndexOutOfRange(f"{category.name}: compose entry ({g}, {f}, {gf})")
        well_typed = (
            category.dst(f) == category.src(g)
            and category.src(gf) == category.src(f)
            and category.dst(gf) == category.dst(g)
        )
        report.check("composability", (g, f), well_typed)

    for f in range(total):
        id_src = category.identities[category.src(f)]
        id_dst = category.identities[category.dst(f)]
        report.check("identity", (id_dst, f), _try_compose(category, id_dst, f) == f)
        report.check("identity", (f, id_src), _try_compose(category, f, id_src) == f)

    for f in range(total):
        for g in category.arrows_from(category.dst(f)):
            if (gf := _try_compose(category, g, f)) is None:
                report.fail("composability", (g, f), "missing")
                continue
            for h in category.arrows_from(category.dst(g)):
                hg = _try_compose(category, h, g)
                if hg is None:
                    continue
                left = _try_compose(category, h, gf)
                right = _try_compose(category, hg, f)
                if left is None or right is None:
                    continue
                report.check("associativity", (h, g, f), left == right)
    _LOGGER.debug("%s", report)
    return report


def find_inverse(category: FinCategory, m: int) -> Optional[int]:
    """Search hom(dst, src) for the two-sided inverse of m.

    Args:
        category: The category.
        m: The morphism.

    Returns:
        The inverse, or None when m is not an isomorphism.
    """
    with _INVERSES_LOCK:
        cache = category._inverses
        if m in cache:
            return cache[m]
    record = category.morphism(m)
    id_src = category.identity(record.src)
    id_dst = category.identity(record.dst)
    found = None
    for g in category.hom(record.dst, record.src):
        if category.compose(g, m) == id_src and category.compose(m, g) == id_dst:
            found = g
            break
    with _INVERSES_LOCK:
        cache[m] = found
        if found is not None:
            cache[found] = m
    return found


def invert(category: FinCategory, m: int) -> int:
    """Return the inverse of an isomorphism."""
    if (inverse := find_inverse(category, m)) is None:
        raise NotInvertible(f"{category.name}: morphism {m} is not invertible")
    return inverse


def is_isomorphism(category: FinCategory, m: int) -> bool:
    """Return whether a morphism is invertible."""
    return find_inverse(category, m) is not None


@final
@dataclass(frozen=True, eq=False)
class Functor:
    """A functor between finite categories."""

    name: str
    source: FinCategory
    target: FinCategory
    obj_map: Sequence[int]
    mor_map: Sequence[int]

    def obj(self, x: int) -> int:
        """Return the image of an object."""
        return self.obj_map[x]

    def mor(self, m: int) -> int:
        """Return the image of a morphism."""
        return self.mor_map[m]

    def same_as(self, other: Functor) -> bool:
        """Return whether two functors agree on every object and morphism."""
        if self is other:
            return True
        return (
            self.source is other.source
            and self.target is other.target
            and all(self.obj(x) == other.obj(x) for x in self.source.objects)
            and all(self.mor(m) == other.mor(m) for m in range(self.source.size))
        )


def functor_from(
    name: str,
    source: FinCategory,
    target: FinCategory,
    on_object: Callable[[int], int],
    on_morphism: Callable[[int], int],
) -> Functor:
    """Build a functor whose maps are evaluated on demand."""
    return Functor(
        name,
        source,
        target,
        LazyValues(source.n_objects, on_object),
        LazyValues(source.size, on_morphism),
    )


def identity_functor(category: FinCategory) -> Functor:
    """Return the identity functor."""
    return Functor(
        f"Id_{category.name}",
        category,
        category,
        range(category.n_objects),
        range(category.size),
    )


def compose_functors(second: Functor, first: Functor) -> Functor:
    """Return second∘first."""
    if first.target is not second.source:
        raise NotComposable(f"{second.name} ∘ {first.name}")
    return functor_from(
        f"{second.name}∘{first.name}",
        first.source,
        second.target,
        lambda x: second.obj(first.obj(x)),
        lambda m: second.mor(first.mor(m)),
    )


def check_functor(functor: Functor) -> ValidationReport:
    """Check that a functor preserves endpoints, identities and composition."""
    report = ValidationReport(f"functor {functor.name}")
    source, target = functor.source, functor.target
    for x in source.objects:
        if not 0 <= functor.obj(x) < target.n_objects:
            raise IndexOutOfRange(f"{functor.name}: image of object {x}")
    for m in range(source.size):
        image = target.morphism(functor.mor(m))
        typed = image.src == functor.obj(source.src(m)) and image.dst == functor.obj(
            source.dst(m)
        )
        report.check("functor-type", (m,), typed)
    for x in source.objects:
        report.check(
            "functor-identity",
            (x,),
            functor.mor(source.identity(x)) == target.identity(functor.obj(x)),
        )
    for f in range(source.size):
        for g in source.arrows_from(source.dst(f)):
            image = _try_compose(target, functor.mor(g), functor.mor(f))
            report.check(
                "functor-composition",
                (g, f),
                image is not None and functor.mor(source.compose(g, f)) == image,
            )
    return report


@final
@dataclass(frozen=True, eq=False)
class NatTrans:
    """A family of components between two parallel functors."""

    name: str
    source: Functor
    target: Functor
    components: Sequence[int]

    def __post_init__(self) -> None:
        if (
            self.source.source is not self.target.source
            or self.source.target is not self.target.target
        ):
            raise NotComposable(
                f"{self.name}: {self.source.name} and {self.target.name} are not parallel"
            )
        if len(self.components) != self.source.source.n_objects:
            raise IndexOutOfRange(f"{self.name}: one component per object required")

    def component(self, x: int) -> int:
        """Return the component at an object."""
        return self.components[x]


def identity_transformation(functor: Functor) -> NatTrans:
    """Return the identity transformation of a functor."""
    return NatTrans(
        f"id_{functor.name}",
        functor,
        functor,
        tuple(functor.target.identity(functor.obj(x)) for x in functor.source.objects),
    )


def check_component_types(transformation: NatTrans) -> None:
    """Raise unless every component runs from F(x) to G(x)."""
    source, target = transformation.source, transformation.target
    category = source.target
    for x in source.source.objects:
        record = category.morphism(transformation.component(x))
        if record.src != source.obj(x) or record.dst != target.obj(x):
            raise ComponentTypeMismatch(
                f"{transformation.name}: component at {x} is "
                f"{record.src} → {record.dst}, expected "
                f"{source.obj(x)} → {target.obj(x)}"
            )


def check_naturality(transformation: NatTrans) -> ValidationReport:
    """Check G(a)∘τ_x = τ_y∘F(a) for every morphism a: x → y."""
    check_component_types(transformation)
    report = ValidationReport(f"transformation {transformation.name}")
    source, target = transformation.source, transformation.target
    domain, category = source.source, source.target
    for a in range(domain.size):
        x, y = domain.src(a), domain.dst(a)
        left = category.compose(target.mor(a), transformation.component(x))
        right = category.compose(transformation.component(y), source.mor(a))
        report.check("naturality", (a,), left == right)
    return report


def _require_parallel(first: Functor, second: Functor) -> None:
    if first.source is not second.source or first.target is not second.target:
        raise NotComposable(f"{first.name} and {second.name} are not parallel")


def enumerate_nat_trans(
    source: Functor,
    target: Functor,
    *,
    bound: int = DEFAULT_SEARCH_BOUND,
    invertible_only: bool = False,
    name: str = "τ",
) -> list[NatTrans]:
    """Enumerate every natural transformation between two functors.

    Components are chosen object by object; a partial choice is abandoned
    as soon as a morphism between already chosen objects fails to commute.

    Args:
        source: The source functor.
        target: The target functor, parallel to `source`.
        bound: The largest number of candidate families allowed.
        invertible_only: Restrict the components to isomorphisms.
        name: Prefix for the names of the returned transformations.

    Returns:
        All natural transformations, in lexicographic order of components.
    """
    _require_parallel(source, target)
    domain, category = source.source, source.target
    homs = [category.hom(source.obj(x), target.obj(x)) for x in domain.objects]
    size = math.prod(len(hom) for hom in homs)
    if invertible_only and size > bound:
        if any(len(hom) > bound for hom in homs):
            raise SearchSpaceTooLarge(size, bound, f"{source.name} ⇒ {target.name}")
        homs = [[m for m in hom if is_isomorphism(category, m)] for hom in homs]
        size = math.prod(len(hom) for hom in homs)
    elif invertible_only:
        homs = [[m for m in hom if is_isomorphism(category, m)] for hom in homs]
    if size > bound:
        raise SearchSpaceTooLarge(size, bound, f"{source.name} ⇒ {target.name}")
    _LOGGER.debug(
        "Enumerating %d candidate families for %s ⇒ %s", size, source.name, target.name
    )

    constraints: dict[int, list[int]] = defaultdict(list)
    for a in range(domain.size):
        constraints[max(domain.src(a), domain.dst(a))].append(a)

    chosen: list[int] = [0] * domain.n_objects
    found: list[tuple[int, ...]] = []

    def commutes(a: int) -> bool:
        x, y = domain.src(a), domain.dst(a)
        return category.compose(target.mor(a), chosen[x]) == category.compose(
            chosen[y], source.mor(a)
        )

    def extend(x: int) -> None:
        if x == domain.n_objects:
            found.append(tuple(chosen))
            return
        for candidate in homs[x]:
            chosen[x] = candidate
            if all(commutes(a) for a in constraints[x]):
                extend(x + 1)

    extend(0)
    return [
        NatTrans(f"{name}{i}", source, target, components)
        for i, components in enumerate(found)
    ]


def vert_comp(second: NatTrans, first: NatTrans) -> NatTrans:
    """Return the vertical composite second∘first."""
    if not first.target.same_as(second.source):
        raise NotComposable(f"{second.name} ∘ {first.name}")
    category = first.source.target
    return NatTrans(
        f"{second.name}∘{first.name}",
        first.source,
        second.target,
        tuple(
            category.compose(second.component(x), first.component(x))
            for x in first.source.source.objects
        ),
    )


def whisker(
    left: Optional[Functor], transformation: NatTrans, right: Optional[Functor]
) -> NatTrans:
    """Whisker a transformation by functors on either side.

    Args:
        left: H, applied after the transformation, or None.
        transformation: τ: F ⇒ G.
        right: K, applied before the transformation, or None.

    Returns:
        Hτ K with components H(τ_{K x}).
    """
    source, target = transformation.source, transformation.target
    if right is not None and right.target is not source.source:
        raise NotComposable(f"{transformation.name} after {right.name}")
    if left is not None and left.source is not source.target:
        raise NotComposable(f"{left.name} after {transformation.name}")
    if right is not None:
        source = compose_functors(source, right)
        target = compose_functors(target, right)
    if left is not None:
        source = compose_functors(left, source)
        target = compose_functors(left, target)

    def component(x: int) -> int:
        base = transformation.component(right.obj(x) if right is not None else x)
        return left.mor(base) if left is not None else base

    return NatTrans(
        transformation.name,
        source,
        target,
        tuple(component(x) for x in source.source.objects),
    )


def horizontal_comp(outer: NatTrans, inner: NatTrans) -> NatTrans:
    """Return the horizontal composite σ∗τ of σ: H ⇒ H′ and τ: F ⇒ F′."""
    return vert_comp(
        whisker(None, outer, inner.target), whisker(outer.source, inner, None)
    )
