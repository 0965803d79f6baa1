"""Named desk-scale groups used for cross-checking.

Each entry gives the cyclic orders of A and b^2 in those (user) coordinates.
"""

from __future__ import annotations

from .abelian import normalize_spec
from .dicyclic import DicyclicGroup, make_group

CATALOG: dict[str, tuple[list[int], list[int]]] = {
    "Q8": ([4], [2]),
    "Dic16": ([8], [4]),
    "Z2xZ4_b2_in_B": ([2, 4], [0, 2]),
    "Z2xZ4_b2_not_in_B": ([2, 4], [1, 0]),
    "Z12": ([12], [6]),
    "Z2xZ2xZ2": ([2, 2, 2], [1, 0, 0]),
    "Z4xZ4": ([4, 4], [2, 0]),
    "Z2xZ8": ([2, 8], [0, 4]),
}


def build(orders: list[int], b_squared_user: list[int]) -> DicyclicGroup:
    spec = normalize_spec(orders)
    return make_group(spec, spec.from_user(b_squared_user))


def catalog_group(name: str) -> DicyclicGroup:
    orders, b2 = CATALOG[name]
    return build(orders, b2)


def catalog_groups() -> dict[str, DicyclicGroup]:
    return {name: catalog_group(name) for name in CATALOG}
