"""Generalized dicyclic groups G = <A, b> with b^2 an involution of A and
b a b^-1 = a^-1.

An element a*b^f is stored as ``GroupElement(a, f)``. Multiplication:

    (x,0)(y,f) = (x+y, f)
    (x,1)(y,0) = (x-y, 1)
    (x,1)(y,1) = (x-y+b^2, 0)
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

from .abelian import AbelianSpec, Element, SubgroupA


class GroupElement(NamedTuple):
    a: Element
    flag: int


def sort_key(g: GroupElement) -> tuple[int, Element]:
    """Canonical order: elements of A before elements of Ab, then by exponents."""
    return (g.flag, g.a)


def canonical(elements: Iterable[GroupElement]) -> list[GroupElement]:
    return sorted(elements, key=sort_key)


class DicyclicGroup:
    """An immutable generalized dicyclic group with its cached structure."""

    def __init__(self, spec: AbelianSpec, b_squared: Element) -> None:
        if spec.order % 2:
            raise ValueError(f"|A|={spec.order} is odd; no dicyclic extension exists")
        b_squared = spec.element(b_squared)
        if spec.element_order(b_squared) != 2:
            raise ValueError(f"b^2={list(b_squared)} is not an involution of A")
        self.spec = spec
        self.b_squared = b_squared
        A = spec
        self.A_elements: tuple[Element, ...] = tuple(A.elements())
        self.elements: tuple[GroupElement, ...] = tuple(
            canonical(GroupElement(a, f) for f in (0, 1) for a in self.A_elements)
        )
        self.index = {g: i for i, g in enumerate(self.elements)}
        lam = A.lam
        self.B = SubgroupA(
            tuple(x for x in self.A_elements if all(c % 2 == 0 for c in x[:lam]))
        )
        halves = [n // 2 for n in A.moduli[:lam]]
        self.A_prime = SubgroupA(
            tuple(
                x
                for x in self.A_elements
                if all(c in (0, h) for c, h in zip(x[:lam], halves))
                and all(c == 0 for c in x[lam:])
            )
        )
        self.squares: frozenset[GroupElement] = frozenset(
            GroupElement(x, 0) for x in set(self.B.elements) | {b_squared}
        )
        self.classes: tuple[tuple[GroupElement, ...], ...] = self._closed_form_classes()
        self.class_index = {g: i for i, c in enumerate(self.classes) for g in c}

    # --- basic arithmetic -------------------------------------------------
    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> GroupElement:
        return GroupElement(self.spec.identity, 0)

    @property
    def b(self) -> GroupElement:
        return GroupElement(self.spec.identity, 1)

    def _own(self, *gs: GroupElement) -> None:
        for g in gs:
            if g not in self.index:
                raise ValueError(f"{g} is not an element of this group")

    def mul(self, x: GroupElement, y: GroupElement) -> GroupElement:
        self._own(x, y)
        A = self.spec
        if x.flag == 0:
            return GroupElement(A.mul(x.a, y.a), y.flag)
        if y.flag == 0:
            return GroupElement(A.mul(x.a, A.inv(y.a)), 1)
        return GroupElement(A.mul(A.mul(x.a, A.inv(y.a)), self.b_squared), 0)

    def inv(self, x: GroupElement) -> GroupElement:
        self._own(x)
        A = self.spec
        if x.flag == 0:
            return GroupElement(A.inv(x.a), 0)
        # (xb)^-1 = b^-1 x^-1 = b^3 x^-1 = x b^3 = x b^2 b
        return GroupElement(A.mul(x.a, self.b_squared), 1)

    def conjugate(self, x: GroupElement, g: GroupElement) -> GroupElement:
        """g x g^-1."""
        return self.mul(self.mul(g, x), self.inv(g))

    @property
    def mul_table(self) -> list[list[int]]:
        table = self.__dict__.get("_mul_table")
        if table is None:
            els = self.elements
            table = [[self.index[self.mul(x, y)] for y in els] for x in els]
            self.__dict__["_mul_table"] = table
        return table

    # --- derived sets -----------------------------------------------------
    def square_set(self) -> frozenset[GroupElement]:
        return self.squares

    def nonsquares(self) -> list[GroupElement]:
        return [g for g in self.elements if g not in self.squares]

    def involution_set(self) -> frozenset[GroupElement]:
        e = self.spec.identity
        return frozenset(GroupElement(x, 0) for x in self.A_prime.elements if x != e)

    def conjugacy_classes(self) -> list[tuple[GroupElement, ...]]:
        return list(self.classes)

    def nonsquare_classes(self) -> list[tuple[GroupElement, ...]]:
        return [c for c in self.classes if c[0] not in self.squares]

    def _closed_form_classes(self) -> tuple[tuple[GroupElement, ...], ...]:
        A = self.spec
        seen: set[GroupElement] = set()
        classes = []
        for x in self.A_elements:
            g = GroupElement(x, 0)
            if g in seen:
                continue
            cls = {g} if x in self.A_prime else {g, GroupElement(A.inv(x), 0)}
            seen |= cls
            classes.append(tuple(canonical(cls)))
        for x in self.A_elements:
            g = GroupElement(x, 1)
            if g in seen:
                continue
            cls = {GroupElement(A.mul(c, x), 1) for c in self.B.elements}
            seen |= cls
            classes.append(tuple(canonical(cls)))
        return tuple(sorted(classes, key=lambda c: sort_key(c[0])))

    def describe(self) -> str:
        return f"G(A={'x'.join(f'Z{n}' for n in self.spec.moduli)}, b^2={list(self.b_squared)})"


def make_group(spec: AbelianSpec, b_squared: Iterable[int]) -> DicyclicGroup:
    return DicyclicGroup(spec, tuple(b_squared))


@dataclass(frozen=True)
class ConnectionSet:
    """A candidate connection set with the outcome of its validity checks."""

    elements: frozenset[GroupElement]
    normal: bool
    square_free: bool
    missing_conjugates: tuple[GroupElement, ...] = ()
    squares_present: tuple[GroupElement, ...] = ()
    # Construction recipes that produced this set, if any.
    recipes: tuple = field(default=(), compare=False, repr=False)

    @property
    def valid(self) -> bool:
        return self.normal and self.square_free

    def sorted(self) -> list[GroupElement]:
        return canonical(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def problems(self) -> str:
        parts = []
        if self.missing_conjugates:
            parts.append(f"not normal, missing conjugates {[tuple(g) for g in self.missing_conjugates]}")
        if self.squares_present:
            parts.append(f"contains squares {[tuple(g) for g in self.squares_present]}")
        return "; ".join(parts) or "ok"


def validate_connection_set(G: DicyclicGroup, S: Iterable[GroupElement]) -> ConnectionSet:
    """Check that S is a union of conjugacy classes and avoids every square."""
    S = frozenset(GroupElement(tuple(g[0]), int(g[1])) for g in S)
    G._own(*S)
    missing = set()
    for g in S:
        for h in G.classes[G.class_index[g]]:
            if h not in S:
                missing.add(h)
    squares = S & G.squares
    return ConnectionSet(
        elements=S,
        normal=not missing,
        square_free=not squares,
        missing_conjugates=tuple(canonical(missing)),
        squares_present=tuple(canonical(squares)),
    )


# --- brute-force references ---------------------------------------------------
# These recompute the structural facts from the multiplication law alone and
# are used to cross-check the closed forms above.


def brute_squares(G: DicyclicGroup) -> frozenset[GroupElement]:
    return frozenset(G.mul(g, g) for g in G.elements)


def brute_involutions(G: DicyclicGroup) -> frozenset[GroupElement]:
    e = G.identity
    return frozenset(g for g in G.elements if g != e and G.mul(g, g) == e)


def brute_conjugacy_classes(G: DicyclicGroup) -> list[tuple[GroupElement, ...]]:
    seen: set[GroupElement] = set()
    out = []
    for x in G.elements:
        if x in seen:
            continue
        cls = {G.conjugate(x, g) for g in G.elements}
        seen |= cls
        out.append(tuple(canonical(cls)))
    return sorted(out, key=lambda c: sort_key(c[0]))
