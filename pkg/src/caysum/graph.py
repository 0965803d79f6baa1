"""Cayley sum graphs and (alpha, beta)-regularity of vertex subsets."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .dicyclic import ConnectionSet, DicyclicGroup, GroupElement, validate_connection_set
from .subgroups import Subgroup, right_cosets


class RegularityPair(NamedTuple):
    alpha: int
    beta: int
    # Class-level marker: True only for the C = G convention, where no
    # outside vertex exists and beta is reported as 0.
    vacuous_beta = False


class WholeSetPair(RegularityPair):
    __slots__ = ()
    vacuous_beta = True


@dataclass(frozen=True)
class NotRegular:
    """A vertex whose neighbour count in C breaks the pattern."""

    vertex: GroupElement
    count: int
    expected: int
    inside: bool

    def __bool__(self) -> bool:
        return False


@dataclass(frozen=True)
class CaySumGraph:
    group: DicyclicGroup
    S: ConnectionSet
    adjacency: dict[GroupElement, tuple[GroupElement, ...]]

    def neighbours(self, g: GroupElement) -> tuple[GroupElement, ...]:
        return self.adjacency[g]

    def degree(self, g: GroupElement) -> int:
        return len(self.adjacency[g])

    def to_json(self) -> dict:
        return {
            "vertices": [[list(g.a), g.flag] for g in self.group.elements],
            "adjacency": [
                [[list(h.a), h.flag] for h in self.adjacency[g]] for g in self.group.elements
            ],
        }


def build_caysum(G: DicyclicGroup, S: ConnectionSet | Iterable[GroupElement]) -> CaySumGraph:
    """x ~ y iff x != y and xy in S. S must be normal and square-free."""
    if not isinstance(S, ConnectionSet):
        S = validate_connection_set(G, S)
    if not S.valid:
        raise ValueError(f"connection set rejected: {S.problems()}")
    order = G.index
    adjacency = {}
    for x in G.elements:
        xinv = G.inv(x)
        nbrs = {G.mul(xinv, s) for s in S.elements}
        nbrs.discard(x)
        adjacency[x] = tuple(sorted(nbrs, key=order.__getitem__))
    return CaySumGraph(G, S, adjacency)


def regular_profile(graph: CaySumGraph, C: Iterable[GroupElement]) -> RegularityPair | NotRegular:
    """Definition-level check of (alpha, beta)-regularity of C."""
    C = frozenset(C)
    G = graph.group
    if not C:
        return RegularityPair(0, 0)
    alpha = beta = None
    for g in G.elements:
        count = sum(1 for h in graph.adjacency[g] if h in C)
        if g in C:
            if alpha is None:
                alpha = count
            elif count != alpha:
                return NotRegular(g, count, alpha, True)
        else:
            if beta is None:
                beta = count
            elif count != beta:
                return NotRegular(g, count, beta, False)
    if beta is None:
        return WholeSetPair(alpha, 0)
    return RegularityPair(alpha, beta)


def subgroup_profile_fast(
    G: DicyclicGroup, S: ConnectionSet | Iterable[GroupElement], K: Subgroup
) -> RegularityPair | NotRegular:
    """Profile of a subgroup from coset counts alone: alpha = |S n K| and
    beta = |S n Kx|, provided the latter is the same for every Kx != K."""
    elements = S.elements if isinstance(S, ConnectionSet) else frozenset(S)
    cs = right_cosets(G, K)
    alpha = sum(1 for g in cs[0] if g in elements)
    if len(cs) == 1:
        return WholeSetPair(alpha, 0)
    counts = [sum(1 for g in c if g in elements) for c in cs[1:]]
    for c, n in zip(cs[1:], counts):
        if n != counts[0]:
            return NotRegular(c[0], n, counts[0], False)
    return RegularityPair(alpha, counts[0])
