"""Poset JSON file format.

    {"elements": [...], "covers": [["q", "p"], ...], "marking": {"a": 6, ...},
     "decomposition": {"U1": [...], "U2": [...]}}

``["q", "p"]`` means p covers q.  Cover lists are normalized to their
transitive reduction on load; "decomposition" is optional.
"""

from __future__ import annotations

import json
from typing import Any

from .decomposition import Decomposition
from .errors import InputError
from .poset import MarkedPoset, validate_poset


def marked_poset_from_dict(data: dict[str, Any]) -> tuple[MarkedPoset, Decomposition | None]:
    try:
        elements = [str(e) for e in data["elements"]]
        relations = [(str(q), str(p)) for q, p in data.get("covers", [])]
        marking = {str(k): v for k, v in data.get("marking", {}).items()}
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed poset file: {exc}") from exc
    m = MarkedPoset(validate_poset(elements, relations), marking)
    dec = None
    raw = data.get("decomposition")
    if raw:
        u1 = raw.get("U1")
        u2 = raw.get("U2")
        u1 = None if u1 is None else [str(e) for e in u1]
        u2 = None if u2 is None else [str(e) for e in u2]
        dec = Decomposition.of(m, u1=u1, u2=u2)
    return m, dec


def marked_poset_to_dict(m: MarkedPoset, dec: Decomposition | None = None) -> dict[str, Any]:
    P = m.poset
    covers = sorted(P.covers, key=lambda c: (P.index(c[0]), P.index(c[1])))
    out: dict[str, Any] = {
        "elements": [str(e) for e in P.elements],
        "covers": [[str(q), str(p)] for q, p in covers],
        "marking": {str(a): v for a, v in m.marking.items()},
    }
    if dec is not None:
        out["decomposition"] = {
            "U1": [str(e) for e in m.unmarked if e in dec.u1],
            "U2": [str(e) for e in m.unmarked if e in dec.u2],
        }
    return out


def loads(text: str) -> tuple[MarkedPoset, Decomposition | None]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise InputError("poset file must hold a JSON object")
    return marked_poset_from_dict(data)


def load(path) -> tuple[MarkedPoset, Decomposition | None]:
    with open(path) as fh:
        return loads(fh.read())


def dumps(m: MarkedPoset, dec: Decomposition | None = None) -> str:
    return json.dumps(marked_poset_to_dict(m, dec), indent=2)
