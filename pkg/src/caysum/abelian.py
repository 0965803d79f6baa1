"""Finite abelian groups as products of cyclic prime-power factors.

Elements are plain tuples of exponents, one per canonical factor. All sets of
elements are kept sorted lexicographically so that every output is
deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from itertools import product
from math import gcd
from typing import Iterable, Sequence

Element = tuple[int, ...]

DEFAULT_SUBGROUP_CAP = 64


class CapExceeded(RuntimeError):
    """Raised when an exhaustive computation would exceed its size cap."""


def _prime_power_parts(n: int) -> list[tuple[int, int]]:
    parts = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            parts.append((p, e))
        p += 1
    if n > 1:
        parts.append((n, 1))
    return parts


@dataclass(frozen=True)
class AbelianSpec:
    """Canonical cyclic decomposition of an abelian group.

    ``factors`` lists ``(prime, exponent)`` pairs with the 2-power factors
    first in nondecreasing exponent order. ``sources`` records, for each
    canonical factor, the index of the user-supplied cyclic factor it came
    from, so user coordinates can be translated.
    """

    factors: tuple[tuple[int, int], ...]
    sources: tuple[int, ...] = ()
    user_orders: tuple[int, ...] = ()
    moduli: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        for p, e in self.factors:
            if e < 1 or len(_prime_power_parts(p)) != 1 or _prime_power_parts(p)[0][1] != 1:
                raise ValueError(f"factor {(p, e)} is not a prime power")
        two_flags = [p == 2 for p, _ in self.factors]
        if two_flags != sorted(two_flags, reverse=True):
            raise ValueError("2-power factors must precede odd factors")
        two_exps = [e for p, e in self.factors if p == 2]
        if two_exps != sorted(two_exps):
            raise ValueError("2-power exponents must be nondecreasing")
        object.__setattr__(self, "moduli", tuple(p**e for p, e in self.factors))

    # --- shape -----------------------------------------------------------
    @property
    def lam(self) -> int:
        return sum(1 for p, _ in self.factors if p == 2)

    @property
    def mu(self) -> int:
        return len(self.factors) - self.lam

    @property
    def k(self) -> int:
        return sum(1 for p, e in self.factors if (p, e) == (2, 1))

    @property
    def rank(self) -> int:
        return len(self.factors)

    @property
    def order(self) -> int:
        return reduce(lambda x, y: x * y, self.moduli, 1)

    @property
    def orders(self) -> list[int]:
        return list(self.moduli)

    # --- elements --------------------------------------------------------
    @property
    def identity(self) -> Element:
        return (0,) * self.rank

    def element(self, exps: Sequence[int]) -> Element:
        """Validate and return an element; raises on wrong length or range."""
        if len(exps) != self.rank:
            raise ValueError(f"expected {self.rank} coordinates, got {len(exps)}")
        out = tuple(int(x) for x in exps)
        for x, n in zip(out, self.moduli):
            if not 0 <= x < n:
                raise ValueError(f"coordinate {x} out of range for Z{n}")
        return out

    def _check(self, *xs: Element) -> None:
        for x in xs:
            if len(x) != self.rank:
                raise ValueError("element does not belong to this group")

    def mul(self, x: Element, y: Element) -> Element:
        self._check(x, y)
        return tuple((a + b) % n for a, b, n in zip(x, y, self.moduli))

    def inv(self, x: Element) -> Element:
        self._check(x)
        return tuple((-a) % n for a, n in zip(x, self.moduli))

    def pow(self, x: Element, n: int) -> Element:
        self._check(x)
        return tuple((a * n) % m for a, m in zip(x, self.moduli))

    def elements(self) -> list[Element]:
        return list(product(*(range(n) for n in self.moduli)))

    def element_order(self, x: Element) -> int:
        self._check(x)
        o = 1
        for a, n in zip(x, self.moduli):
            c = n // gcd(a, n)
            o = o * c // gcd(o, c)
        return o

    def projection(self, i: int, x: Element) -> Element:
        """Keep coordinate ``i`` (0-based) and zero the others."""
        self._check(x)
        if not 0 <= i < self.rank:
            raise IndexError(f"factor index {i} out of range")
        return tuple(a if j == i else 0 for j, a in enumerate(x))

    def unit(self, i: int) -> Element:
        """The canonical generator of factor ``i``."""
        return tuple(1 if j == i else 0 for j in range(self.rank))

    def parity(self, x: Element) -> tuple[int, ...]:
        """Image of ``x`` in A/A^2, i.e. the parities of the 2-power coordinates."""
        return tuple(a & 1 for a in x[: self.lam])

    def from_user(self, user_exps: Sequence[int]) -> Element:
        """Translate an element given in user coordinates to canonical ones."""
        if len(user_exps) != len(self.user_orders):
            raise ValueError(
                f"expected {len(self.user_orders)} user coordinates, got {len(user_exps)}"
            )
        return tuple(int(user_exps[src]) % n for src, n in zip(self.sources, self.moduli))


    def to_user(self, x: Element) -> list[int]:
        """Inverse of ``from_user``: recombine prime-power pieces by CRT."""
        self._check(x)
        out = []
        for idx, n in enumerate(self.user_orders):
            value, mod = 0, 1
            for c, src, q in zip(x, self.sources, self.moduli):
                if src != idx:
                    continue
                # Solve value' = value (mod mod), value' = c (mod q).
                step = ((c - value) * pow(mod, -1, q)) % q
                value, mod = value + mod * step, mod * q
            out.append(value % n)
        return out


def normalize_spec(orders: Sequence[int]) -> AbelianSpec:
    """Split cyclic orders into prime powers and put them in canonical order."""
    if not orders:
        raise ValueError("at least one cyclic factor is required")
    pieces = []
    for idx, n in enumerate(orders):
        if int(n) < 2:
            raise ValueError(f"cyclic order must be >= 2, got {n}")
        for p, e in _prime_power_parts(int(n)):
            pieces.append((p != 2, p, e, idx))
    pieces.sort()
    return AbelianSpec(
        factors=tuple((p, e) for _, p, e, _ in pieces),
        sources=tuple(idx for *_, idx in pieces),
        user_orders=tuple(int(n) for n in orders),
    )


@dataclass(frozen=True)
class SubgroupA:
    """A subgroup of A, stored as its sorted element tuple."""

    elements: tuple[Element, ...]
    generators: tuple[Element, ...] = ()

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def element_set(self) -> frozenset[Element]:
        s = self.__dict__.get("_set")
        if s is None:
            s = frozenset(self.elements)
            object.__setattr__(self, "_set", s)
        return s

    def __contains__(self, x: object) -> bool:
        return x in self.element_set

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SubgroupA) and self.elements == other.elements

    def __hash__(self) -> int:
        return hash(self.elements)

    def issubset(self, other: Iterable[Element]) -> bool:
        other_set = other.element_set if isinstance(other, SubgroupA) else set(other)
        return self.element_set <= other_set


def _minimal_generators(A: AbelianSpec, elements: Sequence[Element]) -> tuple[Element, ...]:
    # Greedy: walk the sorted elements and keep any that enlarges the span.
    gens: list[Element] = []
    span = {A.identity}
    for x in sorted(elements):
        if x in span:
            continue
        gens.append(x)
        span = _join_sets(A, span, _cyclic(A, x))
    return tuple(gens)


def _cyclic(A: AbelianSpec, x: Element) -> set[Element]:
    out = {A.identity}
    y = x
    while y not in out:
        out.add(y)
        y = A.mul(y, x)
    return out


def _join_sets(A: AbelianSpec, H: set[Element], C: set[Element]) -> set[Element]:
    return {A.mul(h, c) for h in H for c in C}


def subgroup_closure(A: AbelianSpec, gens: Iterable[Element]) -> SubgroupA:
    """Smallest subgroup containing ``gens``, by closure iteration."""
    span = {A.identity}
    for g in gens:
        g = A.element(g)
        if g not in span:
            span = _join_sets(A, span, _cyclic(A, g))
    elements = tuple(sorted(span))
    return SubgroupA(elements, _minimal_generators(A, elements))


def is_subgroup(A: AbelianSpec, elements: Iterable[Element]) -> bool:
    s = set(elements)
    if A.identity not in s:
        return False
    return all(A.mul(x, y) in s for x in s for y in s)


def enumerate_subgroups_A(A: AbelianSpec, cap: int = DEFAULT_SUBGROUP_CAP) -> list[SubgroupA]:
    """Every subgroup of A exactly once, ordered by (order, elements)."""
    if A.order > cap:
        raise CapExceeded(f"|A|={A.order} exceeds subgroup enumeration cap {cap}")
    cyclics = {frozenset(_cyclic(A, x)) for x in A.elements()}
    found = set(cyclics)
    frontier = list(cyclics)
    while frontier:
        nxt = []
        for H in frontier:
            for C in cyclics:
                if C <= H:
                    continue
                J = frozenset(_join_sets(A, set(H), set(C)))
                if J not in found:
                    found.add(J)
                    nxt.append(J)
        frontier = nxt
    ordered = sorted((tuple(sorted(s)) for s in found), key=lambda e: (len(e), e))
    return [SubgroupA(e, _minimal_generators(A, e)) for e in ordered]


def cosets(A: AbelianSpec, H: SubgroupA) -> list[tuple[Element, ...]]:
    """Partition of A into cosets of H; H first, the rest by least element."""
    if not is_subgroup(A, H.elements):
        raise ValueError("H is not a subgroup of A")
    seen: set[Element] = set()
    blocks = []
    for x in [A.identity] + A.elements():
        if x in seen:
            continue
        block = tuple(sorted(A.mul(h, x) for h in H.elements))
        seen.update(block)
        blocks.append(block)
    return blocks


def subset_product(A: AbelianSpec, C: Iterable[Element]) -> Element:
    out = A.identity
    for x in C:
        out = A.mul(out, x)
    return out
