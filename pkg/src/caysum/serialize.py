"""JSON encodings for groups, elements, subgroups, regions and witnesses.

Elements are written in canonical factor order. The one exception is the
group file, whose ``b_squared`` uses the user's own coordinates; the
normalization is echoed back by ``group_to_json``.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .abelian import Element, normalize_spec
from .dicyclic import ConnectionSet, DicyclicGroup, GroupElement, canonical, make_group, validate_connection_set
from .feasibility import FeasibleRegion
from .subgroups import Subgroup, subgroup_from_gens


class MalformedInput(ValueError):
    """A JSON document does not describe the expected object."""


def dumps(obj: Any) -> str:
    """Deterministic JSON text: fixed key order, compact separators."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def load_json(path: str | Path) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"{path}: invalid JSON ({exc})") from exc
    except OSError as exc:
        raise MalformedInput(f"{path}: {exc.strerror}") from exc


def _int_list(value: Any, what: str) -> list[int]:
    if not isinstance(value, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in value):
        raise MalformedInput(f"{what} must be a list of integers, got {value!r}")
    return list(value)


def _field(doc: Any, key: str, what: str) -> Any:
    if not isinstance(doc, dict) or key not in doc:
        raise MalformedInput(f"{what}: missing key {key!r}")
    return doc[key]


# --- group ------------------------------------------------------------------


def group_from_json(doc: Any) -> DicyclicGroup:
    orders = _int_list(_field(doc, "abelian", "group"), "abelian")
    b2 = _int_list(_field(doc, "b_squared", "group"), "b_squared")
    try:
        spec = normalize_spec(orders)
        return make_group(spec, spec.from_user(b2))
    except ValueError as exc:
        raise MalformedInput(f"group: {exc}") from exc


def group_to_json(G: DicyclicGroup) -> dict:
    A = G.spec
    return {
        "abelian": list(A.user_orders),
        "canonical_moduli": list(A.moduli),
        "canonical_sources": list(A.sources),
        "b_squared": A.to_user(G.b_squared),
        "b_squared_canonical": list(G.b_squared),
        "order": G.order,
    }


# --- elements and sets --------------------------------------------------------


def element_to_json(g: GroupElement) -> list:
    return [list(g.a), g.flag]


def element_from_json(G: DicyclicGroup, doc: Any) -> GroupElement:
    if not isinstance(doc, list) or len(doc) != 2 or doc[1] not in (0, 1):
        raise MalformedInput(f"group element must be [[exponents], flag], got {doc!r}")
    exps = _int_list(doc[0], "exponents")
    if len(exps) != G.spec.rank:
        raise MalformedInput(f"element {doc!r} has {len(exps)} coordinates, expected {G.spec.rank}")
    return GroupElement(G.spec.element(exps), int(doc[1]))


def elements_to_json(elements) -> list:
    return [element_to_json(g) for g in canonical(elements)]


def connection_set_to_json(S: ConnectionSet) -> dict:
    return {"elements": elements_to_json(S.elements)}


def connection_set_from_json(G: DicyclicGroup, doc: Any) -> ConnectionSet:
    raw = _field(doc, "elements", "connection set")
    if not isinstance(raw, list):
        raise MalformedInput("connection set: 'elements' must be a list")
    return validate_connection_set(G, [element_from_json(G, g) for g in raw])


# --- subgroups ----------------------------------------------------------------


def subgroup_to_json(K: Subgroup) -> dict:
    gens = [list(g) for g in K.H.generators]
    if K.kind == "A":
        return {"kind": "A", "gens": gens}
    return {"kind": "zb", "H_gens": gens, "z": list(K.z)}


def subgroup_from_json(G: DicyclicGroup, doc: Any) -> Subgroup:
    kind = _field(doc, "kind", "subgroup")
    rank = G.spec.rank

    def gens_of(key: str) -> list[Element]:
        raw = _field(doc, key, "subgroup")
        if not isinstance(raw, list):
            raise MalformedInput(f"subgroup: {key!r} must be a list")
        out = []
        for g in raw:
            exps = _int_list(g, key)
            if len(exps) != rank:
                raise MalformedInput(f"generator {g!r} has {len(exps)} coordinates, expected {rank}")
            out.append(G.spec.element(exps))
        return out

    try:
        if kind == "A":
            return subgroup_from_gens(G, gens_of("gens"))
        if kind == "zb":
            z = _int_list(_field(doc, "z", "subgroup"), "z")
            if len(z) != rank:
                raise MalformedInput(f"z has {len(z)} coordinates, expected {rank}")
            return subgroup_from_gens(G, gens_of("H_gens"), tuple(z))
    except ValueError as exc:
        if isinstance(exc, MalformedInput):
            raise
        raise MalformedInput(f"subgroup: {exc}") from exc
    raise MalformedInput(f"subgroup kind must be 'A' or 'zb', got {kind!r}")


# --- regions and witnesses ------------------------------------------------------


def region_to_json(region: FeasibleRegion) -> dict:
    out = {
        "case": region.case_label,
        "pairs": [list(p) for p in sorted(region.pairs)],
        "consistent": region.consistent,
    }
    if not region.consistent:
        out["closed_form_pairs"] = [list(p) for p in sorted(region.theorem_pairs)]
    return out


def region_pairs_from_json(doc: Any) -> set[tuple[int, int]]:
    raw = _field(doc, "pairs", "region")
    out = set()
    for p in raw:
        vals = _int_list(p, "pair")
        if len(vals) != 2:
            raise MalformedInput(f"pair must have two entries, got {p!r}")
        out.add((vals[0], vals[1]))
    return out


def witness_to_json(w) -> dict:
    return {
        "subgroup": subgroup_to_json(w.subgroup),
        "alpha": w.alpha,
        "beta": w.beta,
        "S": connection_set_to_json(w.S),
        "plan": dict(w.plan, recipes=[r.as_dict() for r in w.recipes]),
    }
