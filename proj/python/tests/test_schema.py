import json
import pathlib

import pytest

import hypercurrent as hc

jsonschema = pytest.importorskip("jsonschema")
referencing = pytest.importorskip("referencing")

SCHEMA_DIR = pathlib.Path(__file__).resolve().parents[2] / "docs" / "schema"


def validator(name):
    schemas = {p.name: json.loads(p.read_text()) for p in SCHEMA_DIR.glob("*.json")}
    registry = referencing.Registry().with_resources(
        (k, referencing.Resource.from_contents(v)) for k, v in schemas.items()
    )
    return jsonschema.Draft202012Validator(schemas[name], registry=registry)


@pytest.mark.parametrize(
    "module",
    [
        lambda: hc.weyl_module("A2", (1, 1), field=5),
        lambda: hc.weyl_module("A1", (2,), variant="graded", n=2),
        lambda: hc.loop_weyl_module("A1", [((1,), ("1/2", 3))]),
        lambda: hc.evaluation_module("A2", (1, 0), (2,), field=7),
    ],
)
def test_module_json_matches_schema(module):
    validator("module.schema.json").validate(json.loads(module().to_json()))


def test_element_json_matches_schema():
    out = hc.straighten("2 xp[a1](1)^(2) xm[a1](t1^-1)^(2) - 1/3 L[1,t1,2]", field=0)
    validator("element.schema.json").validate(out["element"])
    out = hc.straighten("xp[a1](1) xm[a1](t1)", field=7)
    validator("element.schema.json").validate(out["element"])
