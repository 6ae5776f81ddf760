"""Tests for fixture documents, the loader and the built-in fixtures."""
from __future__ import annotations

import json

import pytest

from noncanon.exceptions import (
    InvalidParameter,
    ParseError,
    UnresolvedReference,
    ValidationError,
)
from noncanon.fixtures import FixtureBundle, load_fixture
from noncanon.models import (
    KIND_PHI,
    KIND_PSI,
    CategoryDocument,
    ComponentDocument,
    MonoidalDocument,
    parse_document,
)
from noncanon.monoidal import check_monoidal_functor

ARROW = {
    "kind": "category",
    "name": "A",
    "objects": 2,
    "morphisms": [
        {"id": 0, "src": 0, "dst": 0},
        {"id": 1, "src": 1, "dst": 1},
        {"id": 2, "src": 0, "dst": 1},
    ],
    "identity": [0, 1],
    "compose": [[0, 0, 0], [1, 1, 1], [2, 0, 2], [1, 2, 2]],
}

Z2 = {
    "kind": "monoidal",
    "name": "Z2",
    "objects": 2,
    "morphisms": [{"id": 0, "src": 0, "dst": 0}, {"id": 1, "src": 1, "dst": 1}],
    "identity": [0, 1],
    "compose": [[0, 0, 0], [1, 1, 1]],
    "tensor_obj": [[x, y, (x + y) % 2] for x in range(2) for y in range(2)],
    "tensor_mor": [[x, y, (x + y) % 2] for x in range(2) for y in range(2)],
    "unit": 0,
    "associator": [
        [x, y, z, (x + y + z) % 2] for x in range(2) for y in range(2) for z in range(2)
    ],
    "lunitor": [0, 1],
    "runitor": [0, 1],
    "braiding": [[x, y, (x + y) % 2] for x in range(2) for y in range(2)],
}

DOCUMENTS = [
    ARROW,
    Z2,
    {
        "kind": "functor",
        "name": "idZ2",
        "source": "Z2",
        "target": "Z2",
        "obj_map": [0, 1],
        "mor_map": [0, 1],
    },
    {
        "kind": "monoidal_functor",
        "name": "mZ2",
        "source": "Z2",
        "target": "Z2",
        "obj_map": [0, 1],
        "mor_map": [0, 1],
        "phi": [[x, y, (x + y) % 2] for x in range(2) for y in range(2)],
        "phi0": 0,
    },
    {
        "kind": "transformation",
        "name": "unit",
        "source": "idZ2",
        "target": "idZ2",
        "components": [0, 1],
    },
    {
        "kind": "coproducts",
        "name": "maxA",
        "category": "A",
        "coproduct": [[0, 0, 0, 0, 0], [0, 1, 1, 2, 1], [1, 0, 1, 1, 2], [1, 1, 1, 1, 1]],
        "initial": 0,
    },
    {
        "kind": "phi",
        "name": "phi1",
        "functor": "mZ2",
        "components": [[x, y, (x + y) % 2] for x in range(2) for y in range(2)],
    },
    {
        "kind": "psi",
        "name": "psi1",
        "functor": "mZ2",
        "components": [[[], 0], [[1], 1]],
    },
]


def _write(path, data):
    path.write_text(json.dumps(data), encoding="utf-8")
    return path


def test_category_document():
    document = parse_document(ARROW)

    assert isinstance(document, CategoryDocument)
    assert document.morphisms == [(0, 0, 0), (1, 1, 1), (2, 0, 1)]
    assert document.to_dict() == ARROW


def test_monoidal_document_keeps_braiding():
    document = parse_document(Z2)

    assert isinstance(document, MonoidalDocument)
    assert document.name == "Z2"
    assert document.braiding is not None
    assert "braiding" not in MonoidalDocument.from_dict(
        {key: value for key, value in Z2.items() if key != "braiding"}
    ).to_dict()


def test_word_family_document():
    document = parse_document(DOCUMENTS[-1])

    assert isinstance(document, ComponentDocument)
    assert document.kind == KIND_PSI
    assert document.components == {(): 0, (1,): 1}


@pytest.mark.parametrize(
    "document", DOCUMENTS, ids=[document["kind"] for document in DOCUMENTS]
)
def test_document_normal_form(document):
    assert parse_document(document).to_dict() == document


@pytest.mark.parametrize(
    "change, key",
    [
        ({"compose": None}, "compose"),
        ({"objects": -1}, "objects"),
        ({"kind": "sheaf"}, "kind"),
        (
            {"morphisms": [{"id": 0, "src": 0, "dst": 0}, {"id": 2, "src": 1, "dst": 1}]},
            "morphisms",
        ),
        ({"objects": True}, "document"),
    ],
)
def test_malformed_documents(change, key):
    document = {**ARROW, **change}
    document = {k: v for k, v in document.items() if v is not None}

    with pytest.raises(ParseError) as info:
        parse_document(document)
    assert info.value.key == key


def test_load_file(tmp_path):
    bundle = load_fixture(_write(tmp_path / "z2.json", DOCUMENTS))

    assert bundle.reports["Z2"].ok
    assert bundle.choices["maxA"].coproduct(0, 1) == 1
    assert bundle.transformations["unit"].components == (0, 1)
    assert check_monoidal_functor(bundle.monoidal_functor("mZ2")).ok
    assert bundle.family(KIND_PSI, "mZ2", "psi1") == {(): 0, (1,): 1}
    assert bundle.family(KIND_PHI, "mZ2", "phi1")[(1, 1)] == 0
    assert bundle.documents == DOCUMENTS


def test_load_wrapped_documents_once(tmp_path):
    path = _write(tmp_path / "arrow.json", {"documents": [ARROW]})
    bundle = load_fixture(path)
    category = bundle.category("A")

    assert load_fixture(path, bundle).category("A") is category


def test_reference_into_other_file(tmp_path):
    _write(tmp_path / "arrow.json", ARROW)
    path = _write(
        tmp_path / "functor.json",
        {
            "kind": "functor",
            "name": "collapse",
            "source": "arrow.json#A",
            "target": "arrow.json#A",
            "obj_map": [1, 1],
            "mor_map": [1, 1, 1],
        },
    )
    bundle = load_fixture(path)

    assert bundle.functor("collapse").obj(0) == 1
    assert bundle.category("arrow.json#A") is bundle.category("A")


def test_document_referencing_builtin(tmp_path):
    path = _write(
        tmp_path / "point.json",
        {
            "kind": "functor",
            "name": "pt",
            "source": "terminal",
            "target": "finset:2",
            "obj_map": [2],
            "mor_map": [FixtureBundle().category("finset:2").identity(2)],
        },
    )

    assert load_fixture(path).reports["pt"].ok


def test_invalid_category_is_rejected(tmp_path):
    broken = {**ARROW, "compose": [[0, 0, 0], [1, 1, 1], [2, 0, 1], [1, 2, 2]]}

    with pytest.raises(ValidationError) as info:
        load_fixture(_write(tmp_path / "broken.json", broken))
    assert info.value.document == "A"
    assert not info.value.report.ok


def test_unresolved_reference(tmp_path):
    path = _write(
        tmp_path / "dangling.json",
        {
            "kind": "transformation",
            "name": "tau",
            "source": "nowhere",
            "target": "nowhere",
            "components": [],
        },
    )

    with pytest.raises(UnresolvedReference) as info:
        load_fixture(path)
    assert info.value.name == "nowhere"


def test_parse_error_names_file_position(tmp_path):
    path = _write(tmp_path / "bad.json", [ARROW, {**ARROW, "name": 3}])

    with pytest.raises(ParseError) as info:
        load_fixture(path)
    assert info.value.key == "bad.json[1].name"


def test_malformed_files(tmp_path):
    path = tmp_path / "junk.json"
    path.write_text("{not json", encoding="utf-8")
    with pytest.raises(ParseError):
        load_fixture(path)

    with pytest.raises(ParseError) as info:
        load_fixture(_write(tmp_path / "wrapped.json", {"documents": 3}))
    assert info.value.key == "wrapped.json.documents"


def test_builtin_fixtures():
    bundle = FixtureBundle()

    assert load_fixture("f_dbl", bundle) is bundle
    assert bundle.monoidal_functor("f_dbl").name == "F_dbl"
    assert bundle.transformation("beta_swap").name == "β_swap"
    identity = bundle.monoidal_functor("id:finset:2")
    assert identity.phi0 == bundle.finset(2).category.identity(0)
    assert bundle.coproducts("finset:3") is bundle.finset(3)


@pytest.mark.parametrize(
    "name, error",
    [
        ("finset:5", InvalidParameter),
        ("finset:x", UnresolvedReference),
        ("sheaf", UnresolvedReference),
        ("point:2:3", InvalidParameter),
    ],
)
def test_bad_builtin_names(name, error):
    with pytest.raises(error):
        load_fixture(name)


def test_builtin_is_built_once():
    bundle = FixtureBundle()
    first = bundle.monoidal_functor("f_dbl:2")
    bundle.transformation("beta_swap:2")

    assert bundle.monoidal_functor("f_dbl:2") is first
    assert bundle.transformation("beta_swap:2").source is first.underlying
