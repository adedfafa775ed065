"""JSON I/O for group specs; documents are schema-checked before they are decoded."""
from __future__ import annotations

import hashlib
import json
from functools import lru_cache
from importlib import resources
from pathlib import Path

import jsonschema

from .group_spec import (
    BorelOf,
    GroupSpec,
    Levi,
    Semisimple,
    Solvable,
    TorusPart,
    UnipotentPart,
    WeightAction,
    format_constant,
)

SCHEMA_VERSION = 1


@lru_cache(maxsize=None)
def load_schema(name: str) -> dict:
    text = resources.files("zdense").joinpath("schemas").joinpath(f"{name}.schema.json").read_text()
    return json.loads(text)


def validate_document(doc: dict, schema: str) -> None:
    jsonschema.validate(doc, load_schema(schema))


def _solvable_from(doc: dict) -> Solvable:
    torus = doc.get("torus", {})
    unip = doc.get("unipotent", {"dim": 0})
    flags = doc.get("flags", {})
    brackets = tuple((i - 1, j - 1, k - 1, c) for i, j, k, c in unip.get("brackets", []))
    return Solvable(
        torus=TorusPart(torus.get("split_rank", 0), torus.get("anisotropic_rank", 0)),
        unipotent=UnipotentPart(
            dim=unip["dim"],
            brackets=brackets,
            over_Q=unip.get("over_Q", True),
            labels=tuple(unip.get("labels", ())),
        ),
        action=WeightAction(tuple(tuple(w) for w in doc.get("weights", []))),
        commutator_over_Q=flags.get("commutator_over_Q", True),
    )


def spec_from_json(doc: dict) -> GroupSpec:
    validate_document(doc, "group_spec")
    variant = doc["variant"]
    flags = doc.get("flags", {})
    if variant == "Semisimple":
        return Semisimple(flags["isotropic"], flags.get("anisotropic_factor_present", False))
    if variant == "Solvable":
        return _solvable_from(doc)
    if variant == "Levi":
        return Levi(
            Semisimple(flags["isotropic"], flags.get("anisotropic_factor_present", False)),
            _solvable_from(doc),
            flags.get("is_semidirect_over_k", False),
        )
    return BorelOf(simple=flags["ambient"] == "Simple", count=flags.get("count", 1))


def _solvable_to(s: Solvable) -> dict:
    u = s.unipotent
    return {
        "torus": {"split_rank": s.torus.split_rank, "anisotropic_rank": s.torus.anisotropic_rank},
        "unipotent": {
            "dim": u.dim,
            "labels": list(u.labels),
            "brackets": [[i + 1, j + 1, k + 1, format_constant(c)] for i, j, k, c in u.brackets],
            "over_Q": u.over_Q,
        },
        "weights": [list(w) for w in s.weights],
    }


def spec_to_json(spec: GroupSpec) -> dict:
    doc: dict = {"schema_version": SCHEMA_VERSION, "variant": spec.variant}
    if isinstance(spec, Semisimple):
        doc["flags"] = {"isotropic": spec.isotropic, "anisotropic_factor_present": spec.anisotropic_factor_present}
    elif isinstance(spec, Solvable):
        doc.update(_solvable_to(spec))
        doc["flags"] = {"commutator_over_Q": spec.commutator_over_Q}
    elif isinstance(spec, Levi):
        doc.update(_solvable_to(spec.radical))
        doc["flags"] = {
            "isotropic": spec.semisimple.isotropic,
            "anisotropic_factor_present": spec.semisimple.anisotropic_factor_present,
            "commutator_over_Q": spec.radical.commutator_over_Q,
            "is_semidirect_over_k": spec.is_semidirect_over_k,
        }
    else:
        doc["flags"] = {"ambient": "Simple" if spec.simple else "ProductOfSimples", "count": spec.count}
    return doc


def load_spec(path) -> GroupSpec:
    return spec_from_json(json.loads(Path(path).read_text()))


def dumps(obj) -> str:
    """Canonical JSON: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def sha256_bytes(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()
