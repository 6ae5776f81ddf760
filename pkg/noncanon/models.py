"""Models for fixture documents."""
from __future__ import annotations

import contextlib
from dataclasses import dataclass
from typing import Any, Callable, List, Optional, TypeVar

import voluptuous as vol

from .exceptions import ParseError

T = TypeVar("T")

KIND_CATEGORY = "category"
KIND_MONOIDAL = "monoidal"
KIND_FUNCTOR = "functor"
KIND_MONOIDAL_FUNCTOR = "monoidal_functor"
KIND_TRANSFORMATION = "transformation"
KIND_COPRODUCTS = "coproducts"
KIND_PHI = "phi"
KIND_PSI = "psi"
KIND_ALPHA = "alpha"

INDEX = vol.All(int, vol.Range(min=0))
TRIPLE = vol.ExactSequence([INDEX, INDEX, INDEX])
QUADRUPLE = vol.ExactSequence([INDEX, INDEX, INDEX, INDEX])

MORPHISM_SCHEMA = vol.Schema(
    {
        vol.Required("id"): INDEX,
        vol.Required("src"): INDEX,
        vol.Required("dst"): INDEX,
    }
)

CATEGORY_FIELDS = {
    vol.Required("name"): str,
    vol.Required("objects"): INDEX,
    vol.Required("morphisms"): [MORPHISM_SCHEMA],
    vol.Required("identity"): [INDEX],
    vol.Required("compose"): [TRIPLE],
}

CATEGORY_SCHEMA = vol.Schema({vol.Required("kind"): KIND_CATEGORY, **CATEGORY_FIELDS})

MONOIDAL_SCHEMA = vol.Schema(
    {
        vol.Required("kind"): KIND_MONOIDAL,
        **CATEGORY_FIELDS,
        vol.Required("tensor_obj"): [TRIPLE],
        vol.Required("tensor_mor"): [TRIPLE],
        vol.Required("unit"): INDEX,
        vol.Required("associator"): [QUADRUPLE],
        vol.Required("lunitor"): [INDEX],
        vol.Required("runitor"): [INDEX],
        vol.Optional("braiding"): [TRIPLE],
    }
)

FUNCTOR_FIELDS = {
    vol.Required("name"): str,
    vol.Required("source"): str,
    vol.Required("target"): str,
    vol.Required("obj_map"): [INDEX],
    vol.Required("mor_map"): [INDEX],
}

FUNCTOR_SCHEMA = vol.Schema({vol.Required("kind"): KIND_FUNCTOR, **FUNCTOR_FIELDS})

MONOIDAL_FUNCTOR_SCHEMA = vol.Schema(
    {
        vol.Required("kind"): KIND_MONOIDAL_FUNCTOR,
        **FUNCTOR_FIELDS,
        vol.Required("phi"): [TRIPLE],
        vol.Required("phi0"): INDEX,
    }
)

TRANSFORMATION_SCHEMA = vol.Schema(
    {
        vol.Required("kind"): KIND_TRANSFORMATION,
        vol.Required("name"): str,
        vol.Required("source"): str,
        vol.Required("target"): str,
        vol.Required("components"): [INDEX],
    }
)

COPRODUCTS_SCHEMA = vol.Schema(
    {
        vol.Required("kind"): KIND_COPRODUCTS,
        vol.Required("name"): str,
        vol.Required("category"): str,
        vol.Required("coproduct"): [vol.ExactSequence([INDEX] * 5)],
        vol.Optional("initial"): INDEX,
    }
)

PAIR_FAMILY_SCHEMA = vol.Schema(
    {
        vol.Required("kind"): vol.In([KIND_PHI, KIND_ALPHA]),
        vol.Required("name"): str,
        vol.Required("functor"): str,
        vol.Required("components"): [TRIPLE],
    }
)

WORD_FAMILY_SCHEMA = vol.Schema(
    {
        vol.Required("kind"): KIND_PSI,
        vol.Required("name"): str,
        vol.Required("functor"): str,
        vol.Required("components"): [vol.ExactSequence([[INDEX], INDEX])],
    }
)

SCHEMAS = {
    KIND_CATEGORY: CATEGORY_SCHEMA,
    KIND_MONOIDAL: MONOIDAL_SCHEMA,
    KIND_FUNCTOR: FUNCTOR_SCHEMA,
    KIND_MONOIDAL_FUNCTOR: MONOIDAL_FUNCTOR_SCHEMA,
    KIND_TRANSFORMATION: TRANSFORMATION_SCHEMA,
    KIND_COPRODUCTS: COPRODUCTS_SCHEMA,
    KIND_PHI: PAIR_FAMILY_SCHEMA,
    KIND_ALPHA: PAIR_FAMILY_SCHEMA,
    KIND_PSI: WORD_FAMILY_SCHEMA,
}

DOCUMENT_SCHEMA = vol.Schema(
    {vol.Required("kind"): vol.In(sorted(SCHEMAS))}, extra=vol.ALLOW_EXTRA
)

FILE_SCHEMA = vol.Schema({vol.Required("documents"): [dict]})


def from_list(f: Callable[[Any], T], x: Any) -> List[T]:
    """Retrieve from a list."""
    assert isinstance(x, list)
    return [f(y) for y in x]


def from_str(x: Any) -> str:
    """Retrieve from a str."""
    assert isinstance(x, str)
    return x


def from_int(x: Any) -> int:
    """Retrieve from a int."""
    assert isinstance(x, int) and not isinstance(x, bool)
    return x


def from_none(x: Any) -> Any:
    """Retrieve from a None."""
    assert x is None
    return x


def from_union(fs, x):
    """Return the first type that matches."""
    for f in fs:
        with contextlib.suppress(Exception):
            return f(x)
    assert False


def from_tuple(x: Any) -> tuple[int, ...]:
    """Retrieve a tuple of ints from a list."""
    return tuple(from_list(from_int, x))


def validate(document: Any, where: str = "") -> dict:
    """Validate a document against the schema of its kind.

    Args:
        document: The decoded document.
        where: A prefix for reported key paths.

    Returns:
        The validated document.
    """
    try:
        kind = DOCUMENT_SCHEMA(document)["kind"]
        return SCHEMAS[kind](document)
    except vol.MultipleInvalid as err:
        path = ".".join(str(part) for part in err.path) or "document"
        raise ParseError(f"{where}{path}", err.msg) from err
    except vol.Invalid as err:
        raise ParseError(where.rstrip(".") or "document", str(err)) from err


@dataclass
class CategoryDocument:
    """A category given by explicit tables."""

    name: str
    objects: int
    morphisms: List[tuple[int, int, int]]
    identity: List[int]
    compose: List[tuple[int, ...]]

    @staticmethod
    def from_dict(obj: Any) -> CategoryDocument:
        """Build a class instance from a dictionary."""
        assert isinstance(obj, dict)
        morphisms = sorted(
            (from_int(m["id"]), from_int(m["src"]), from_int(m["dst"]))
            for m in obj["morphisms"]
        )
        if [m[0] for m in morphisms] != list(range(len(morphisms))):
            raise ParseError("morphisms", "ids must be 0..n-1 without gaps")
        return CategoryDocument(
            from_str(obj["name"]),
            from_int(obj["objects"]),
            morphisms,
            from_list(from_int, obj["identity"]),
            from_list(from_tuple, obj["compose"]),
        )

    def to_dict(self) -> dict:
        """Convert a class instance to a dictionary."""
        return {
            "kind": KIND_CATEGORY,
            "name": self.name,
            "objects": self.objects,
            "morphisms": [{"id": i, "src": s, "dst": d} for i, s, d in self.morphisms],
            "identity": list(self.identity),
            "compose": [list(entry) for entry in self.compose],
        }


@dataclass
class MonoidalDocument:
    """A category with a biased monoidal structure."""

    category: CategoryDocument
    tensor_obj: List[tuple[int, ...]]
    tensor_mor: List[tuple[int, ...]]
    unit: int
    associator: List[tuple[int, ...]]
    lunitor: List[int]
    runitor: List[int]
    braiding: Optional[List[tuple[int, ...]]]

    @property
    def name(self) -> str:
        """Return the document name."""
        return self.category.name

    @staticmethod
    def from_dict(obj: Any) -> MonoidalDocument:
        """Build a class instance from a dictionary."""
        assert isinstance(obj, dict)
        return MonoidalDocument(
            CategoryDocument.from_dict(obj),
            from_list(from_tuple, obj["tensor_obj"]),
            from_list(from_tuple, obj["tensor_mor"]),
            from_int(obj["unit"]),
            from_list(from_tuple, obj["associator"]),
            from_list(from_int, obj["lunitor"]),
            from_list(from_int, obj["runitor"]),
            from_union(
                [from_none, lambda x: from_list(from_tuple, x)], obj.get("braiding")
            ),
        )

    def to_dict(self) -> dict:
        """Convert a class instance to a dictionary."""
        result = self.category.to_dict()
        result["kind"] = KIND_MONOIDAL
        result["tensor_obj"] = [list(entry) for entry in self.tensor_obj]
        result["tensor_mor"] = [list(entry) for entry in self.tensor_mor]
        result["unit"] = self.unit
        result["associator"] = [list(entry) for entry in self.associator]
        result["lunitor"] = list(self.lunitor)
        result["runitor"] = list(self.runitor)
        if self.braiding is not None:
            result["braiding"] = [list(entry) for entry in self.braiding]
        return result


@dataclass
class FunctorDocument:
    """A functor between referenced categories."""

    name: str
    source: str
    target: str
    obj_map: List[int]
    mor_map: List[int]

    @staticmethod
    def from_dict(obj: Any) -> FunctorDocument:
        """Build a class instance from a dictionary."""
        assert isinstance(obj, dict)
        return FunctorDocument(
            from_str(obj["name"]),
            from_str(obj["source"]),
            from_str(obj["target"]),
            from_list(from_int, obj["obj_map"]),
            from_list(from_int, obj["mor_map"]),
        )

    def to_dict(self) -> dict:
        """Convert a class instance to a dictionary."""
        return {
            "kind": KIND_FUNCTOR,
            "name": self.name,
            "source": self.source,
            "target": self.target,
            "obj_map": list(self.obj_map),
            "mor_map": list(self.mor_map),
        }


@dataclass
class MonoidalFunctorDocument:
    """A functor between referenced monoidal categories with its comparison."""

    functor: FunctorDocument
    phi: List[tuple[int, ...]]
    phi0: int

    @property
    def name(self) -> str:
        """Return the document name."""
        return self.functor.name

    @staticmethod
    def from_dict(obj: Any) -> MonoidalFunctorDocument:
        """Build a class instance from a dictionary."""
        assert isinstance(obj, dict)
        return MonoidalFunctorDocument(
            FunctorDocument.from_dict(obj),
            from_list(from_tuple, obj["phi"]),
            from_int(obj["phi0"]),
        )

    def to_dict(self) -> dict:
        """Convert a class instance to a dictionary."""
        result = self.functor.to_dict()
        result["kind"] = KIND_MONOIDAL_FUNCTOR
        result["phi"] = [list(entry) for entry in self.phi]
        result["phi0"] = self.phi0
        return result


@dataclass
class TransformationDocument:
    """A transformation between referenced functors."""

    name: str
    source: str
    target: str
    components: List[int]

    @staticmethod
    def from_dict(obj: Any) -> TransformationDocument:
        """Build a class instance from a dictionary."""
        assert isinstance(obj, dict)
        return TransformationDocument(
            from_str(obj["name"]),
            from_str(obj["source"]),
            from_str(obj["target"]),
            from_list(from_int, obj["components"]),
        )

    def to_dict(self) -> dict:
        """Convert a class instance to a dictionary."""
        return {
            "kind": KIND_TRANSFORMATION,
            "name": self.name,
            "source": self.source,
            "target": self.target,
            "components": list(self.components),
        }


@dataclass
class CoproductsDocument:
    """Chosen coproducts on a referenced category."""

    name: str
    category: str
    coproduct: List[tuple[int, ...]]
    initial: Optional[int]

    @staticmethod
    def from_dict(obj: Any) -> CoproductsDocument:
        """Build a class instance from a dictionary."""
        assert isinstance(obj, dict)
        return CoproductsDocument(
            from_str(obj["name"]),
            from_str(obj["category"]),
            from_list(from_tuple, obj["coproduct"]),
            from_union([from_none, from_int], obj.get("initial")),
        )

    def to_dict(self) -> dict:
        """Convert a class instance to a dictionary."""
        result: dict = {
            "kind": KIND_COPRODUCTS,
            "name": self.name,
            "category": self.category,
            "coproduct": [list(entry) for entry in self.coproduct],
        }
        if self.initial is not None:
            result["initial"] = self.initial
        return result


@dataclass
class ComponentDocument:
    """A component family attached to a referenced monoidal functor.

    `phi` and `alpha` families are keyed by object pairs, `psi` families by
    words.
    """

    kind: str
    name: str
    functor: str
    components: dict

    @staticmethod
    def from_dict(obj: Any) -> ComponentDocument:
        """Build a class instance from a dictionary."""
        assert isinstance(obj, dict)
        kind = from_str(obj["kind"])
        if kind == KIND_PSI:
            components = {
                from_tuple(word): from_int(m) for word, m in obj["components"]
            }
        else:
            components = {(x, y): m for x, y, m in obj["components"]}
        return ComponentDocument(
            kind, from_str(obj["name"]), from_str(obj["functor"]), components
        )

    def to_dict(self) -> dict:
        """Convert a class instance to a dictionary."""
        if self.kind == KIND_PSI:
            components = [[list(w), m] for w, m in sorted(self.components.items())]
        else:
            components = [[x, y, m] for (x, y), m in sorted(self.components.items())]
        return {
            "kind": self.kind,
            "name": self.name,
            "functor": self.functor,
            "components": components,
        }


DOCUMENT_MODELS = {
    KIND_CATEGORY: CategoryDocument,
    KIND_MONOIDAL: MonoidalDocument,
    KIND_FUNCTOR: FunctorDocument,
    KIND_MONOIDAL_FUNCTOR: MonoidalFunctorDocument,
    KIND_TRANSFORMATION: TransformationDocument,
    KIND_COPRODUCTS: CoproductsDocument,
    KIND_PHI: ComponentDocument,
    KIND_ALPHA: ComponentDocument,
    KIND_PSI: ComponentDocument,
}


def parse_document(document: Any, where: str = ""):
    """Validate a document and convert it to its model."""
    validated = validate(document, where)
    try:
        return DOCUMENT_MODELS[validated["kind"]].from_dict(validated)
    except AssertionError as err:
        raise ParseError(where.rstrip(".") or "document", "unexpected value type") from err
