"""JSON documents for the four object kinds.

Kinds are detected from the keys present, or named by an explicit ``"kind"``
key: ``multimatroid``, ``matroid``, ``delta-matroid`` or ``ribbon-graph``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .core import Multimatroid, MultimatroidError
from .matroid_delta import DeltaMatroid, Matroid
from .ribbon import RibbonGraph

KINDS = ("multimatroid", "matroid", "delta-matroid", "ribbon-graph")
_LOADERS = {
    "multimatroid": Multimatroid.from_json,
    "matroid": Matroid.from_json,
    "delta-matroid": DeltaMatroid.from_json,
    "ribbon-graph": RibbonGraph.from_json,
}


def detect_kind(data) -> str:
    if not isinstance(data, dict):
        raise MultimatroidError("a document must be a JSON object")
    kind = data.get("kind")
    if kind is not None:
        if kind not in KINDS:
            raise MultimatroidError(f"unknown kind {kind!r}")
        return kind
    if "skew_classes" in data:
        return "multimatroid"
    if "vertices" in data:
        return "ribbon-graph"
    if "feasible" in data:
        return "delta-matroid"
    if "elements" in data and "bases" in data:
        return "matroid"
    raise MultimatroidError("cannot tell what kind of object this document describes")


def load_object(data):
    """``(kind, object)`` from a parsed document."""
    kind = detect_kind(data)
    return kind, _LOADERS[kind](data)


def read_document(source) -> dict:
    if hasattr(source, "read"):
        text = source.read()
    else:
        text = Path(source).read_text(encoding="utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MultimatroidError(f"invalid JSON: {exc}") from None


def dump_object(kind: str, obj) -> dict:
    doc = {"kind": kind}
    doc.update(obj.to_json())
    return doc


def parse_scalar(value) -> Fraction:
    """Numbers, or strings such as ``"3/4"``, as exact rationals."""
    if isinstance(value, bool):
        raise MultimatroidError("weights must be numbers")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(value).limit_denominator()
    if isinstance(value, str):
        try:
            return Fraction(value)
        except ValueError:
            raise MultimatroidError(f"bad rational {value!r}") from None
    raise MultimatroidError(f"bad weight {value!r}")


def bundled_names() -> list[str]:
    root = resources.files("multimatroid") / "data"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def bundled(name: str):
    """``(kind, object)`` for one of the example documents shipped with the package."""
    path = resources.files("multimatroid") / "data" / f"{name}.json"
    if not path.is_file():
        raise MultimatroidError(f"no bundled example {name!r}; have {bundled_names()}")
    return load_object(json.loads(path.read_text(encoding="utf-8")))
