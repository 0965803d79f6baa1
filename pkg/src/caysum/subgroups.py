"""Subgroups of a dicyclic group and the invariants that govern their
regular-set behaviour.

Every subgroup is either a subgroup H of A or K = H u Hzb with b^2 in H.

Invariants
----------
The structural counts are computed basis-free:

* ``l`` is the rank of H/(H n B), so |H n B| = |H| / 2^l;
* ``m`` is the rank of H n A' (the involutions of H plus e);
* ``r`` is ``m`` minus the rank of H n A' n B.

When H is *aligned* (the product of its coordinate projections) these
coincide with the coordinate definitions: ``l`` counts the 2-power
coordinates on which H projects onto the whole factor, ``m`` the 2-power
coordinates on which it projects nontrivially and ``r`` the order-2
coordinates it contains. The coordinate versions are kept in
``proj_L``/``proj_m``/``proj_r`` for reference.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .abelian import (
    AbelianSpec,
    CapExceeded,
    Element,
    SubgroupA,
    enumerate_subgroups_A,
    subgroup_closure,
)
from .dicyclic import DicyclicGroup, GroupElement, canonical

DEFAULT_GROUP_CAP = 128


def _log2_exact(n: int) -> int:
    if n < 1 or n & (n - 1):
        raise ArithmeticError(f"{n} is not a power of two")
    return n.bit_length() - 1


@dataclass(frozen=True)
class Subgroup:
    """A subgroup of G: ``kind`` is ``"A"`` (K = H) or ``"zb"`` (K = H u Hzb)."""

    kind: str
    H: SubgroupA
    z: Element | None
    elements: frozenset[GroupElement] = field(repr=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, g: object) -> bool:
        return g in self.elements

    def sorted(self) -> list[GroupElement]:
        return canonical(self.elements)

    def label(self) -> str:
        gens = ",".join(str(list(g)) for g in self.H.generators) or "e"
        if self.kind == "A":
            return f"<{gens}>"
        return f"<{gens};{list(self.z)}b>"


def subgroup_A(G: DicyclicGroup, H: SubgroupA) -> Subgroup:
    return Subgroup("A", H, None, frozenset(GroupElement(x, 0) for x in H.elements))


def subgroup_zb(G: DicyclicGroup, H: SubgroupA, z: Element) -> Subgroup:
    """The subgroup generated by H and zb, normalized so that H = K n A.

    Requires b^2 in H; otherwise <H, zb> meets A in more than H and the
    encoding is rejected.
    """
    A = G.spec
    z = A.element(z)
    if G.b_squared not in H:
        raise ValueError("b^2 must lie in H for <H, zb> to contain H with index 2")
    coset = [A.mul(h, z) for h in H.elements]
    z = min(coset)
    elements = {GroupElement(x, 0) for x in H.elements} | {GroupElement(x, 1) for x in coset}
    return Subgroup("zb", H, z, frozenset(elements))


def enumerate_all_subgroups(G: DicyclicGroup, cap: int = DEFAULT_GROUP_CAP) -> list[Subgroup]:
    """All subgroups of G: the subgroups of A, then one <H,zb> per coset Hz."""
    if G.order > cap:
        raise CapExceeded(f"|G|={G.order} exceeds subgroup enumeration cap {cap}")
    A = G.spec
    Hs = enumerate_subgroups_A(A, cap=cap // 2)
    out = [subgroup_A(G, H) for H in Hs]
    for H in Hs:
        if G.b_squared not in H:
            continue
        reps = sorted({min(A.mul(h, x) for h in H.elements) for x in G.A_elements})
        out.extend(subgroup_zb(G, H, z) for z in reps)
    return out


def brute_subgroups(G: DicyclicGroup) -> list[frozenset[GroupElement]]:
    """All subgroups of G by closure under joins of cyclic subgroups.

    Independent of the H / <H,zb> classification; used as a reference.
    """
    table = G.mul_table
    e = G.index[G.identity]

    def close(gens: set[int]) -> frozenset[int]:
        out = {e} | gens
        frontier = list(out)
        while frontier:
            nxt = []
            for x in frontier:
                for y in list(out):
                    for p in (table[x][y], table[y][x]):
                        if p not in out:
                            out.add(p)
                            nxt.append(p)
            frontier = nxt
        return frozenset(out)

    cyclic = {close({i}) for i in range(G.order)}
    found = set(cyclic)
    frontier = list(cyclic)
    while frontier:
        nxt = []
        for H in frontier:
            for C in cyclic:
                if C <= H:
                    continue
                J = close(set(H) | set(C))
                if J not in found:
                    found.add(J)
                    nxt.append(J)
        frontier = nxt
    return [frozenset(G.elements[i] for i in s) for s in found]


def right_cosets(G: DicyclicGroup, K: Subgroup) -> list[tuple[GroupElement, ...]]:
    """Right cosets Kx; K itself first, the rest by least element."""
    seen: set[GroupElement] = set()
    out = []
    for x in (G.identity,) + G.elements:
        if x in seen:
            continue
        coset = tuple(canonical(G.mul(k, x) for k in K.elements))
        seen.update(coset)
        out.append(coset)
    return out


# --- structural data of H ------------------------------------------------------


@dataclass(frozen=True)
class JSet:
    """Union of cosets Ha != H with Ha = Ha^-1 and Ha n A' empty."""

    elements: frozenset[Element]
    cosets: tuple[tuple[Element, ...], ...]

    def __bool__(self) -> bool:
        return bool(self.cosets)


def compute_J(G: DicyclicGroup, H: SubgroupA) -> JSet:
    A = G.spec
    seen: set[Element] = set(H.elements)
    out = []
    for x in G.A_elements:
        if x in seen:
            continue
        coset = tuple(sorted(A.mul(h, x) for h in H.elements))
        seen.update(coset)
        self_inverse = A.mul(x, x) in H
        if self_inverse and not any(c in G.A_prime for c in coset):
            out.append(coset)
    return JSet(frozenset(x for c in out for x in c), tuple(out))


@dataclass(frozen=True)
class ParityBasis:
    """Generators splitting A/B into the part coming from H and a complement.

    ``l_gens`` are elements of H whose images form a basis of HB/B;
    ``t_gens`` are factor generators completing that basis to one of A/B.
    For aligned H these are exactly the factor generators indexed by L and
    by its complement.
    """

    l_gens: tuple[Element, ...]
    t_gens: tuple[Element, ...]
    pivots: tuple[int, ...]

    def a_L(self, A: AbelianSpec, subset: tuple[int, ...]) -> Element:
        out = A.identity
        for j in subset:
            out = A.mul(out, self.l_gens[j])
        return out

    def a_T(self, A: AbelianSpec, subset: tuple[int, ...]) -> Element:
        out = A.identity
        for j in subset:
            out = A.mul(out, self.t_gens[j])
        return out

    def l_subsets(self) -> list[tuple[int, ...]]:
        return _subsets(len(self.l_gens))

    def t_subsets(self) -> list[tuple[int, ...]]:
        return _subsets(len(self.t_gens))


def _subsets(n: int) -> list[tuple[int, ...]]:
    return [c for size in range(n + 1) for c in combinations(range(n), size)]


def parity_basis(G: DicyclicGroup, H: SubgroupA) -> ParityBasis:
    A = G.spec
    lam = A.lam
    # Reduced row echelon basis of the parity image of H.
    rows: list[list[int]] = []
    pivots: list[int] = []
    for h in H.elements:
        v = list(A.parity(h))
        for row, p in zip(rows, pivots):
            if v[p]:
                v = [a ^ b for a, b in zip(v, row)]
        if any(v):
            p = v.index(1)
            for i, row in enumerate(rows):
                if row[p]:
                    rows[i] = [a ^ b for a, b in zip(row, v)]
            rows.append(v)
            pivots.append(p)
    order = sorted(range(len(pivots)), key=lambda i: pivots[i])
    rows = [rows[i] for i in order]
    pivots = [pivots[i] for i in order]
    l_gens = tuple(min(h for h in H.elements if list(A.parity(h)) == row) for row in rows)
    t_gens = tuple(A.unit(i) for i in range(lam) if i not in pivots)
    return ParityBasis(l_gens, t_gens, tuple(pivots))


@dataclass(frozen=True)
class SubgroupInvariants:
    """Everything the feasibility theorems read off a subgroup."""

    kind: str
    order_H: int
    l: int
    m: int
    r: int
    h_unit: int
    proj_L: tuple[int, ...]
    proj_T: tuple[int, ...]
    proj_m: int
    proj_r: int
    aligned: bool
    B_in_H: bool
    b2_in_H: bool
    b2_in_B: bool
    b2_in_H_minus_B: bool
    eps: int
    eps_bar: int
    case_label: str
    beta_clause: int
    script_L: int
    J: JSet
    whole_group: bool

    @property
    def L(self) -> tuple[int, ...]:
        return self.proj_L

    @property
    def T(self) -> tuple[int, ...]:
        return self.proj_T


def projection_data(
    G: DicyclicGroup, H: SubgroupA, coords: dict[Element, tuple[int, ...]] | None = None
) -> tuple[tuple[int, ...], int, int, bool]:
    """Coordinate-projection invariants (L, m, r) and whether H is aligned.

    ``coords`` rewrites elements in another basis of the same shape; by
    default the canonical coordinates are used.
    """
    A = G.spec
    lam, k = A.lam, A.k
    vecs = [coords[h] for h in H.elements] if coords is not None else list(H.elements)
    proj = [sorted({v[i] for v in vecs}) for i in range(A.rank)]
    L = tuple(i for i in range(lam) if any(c % 2 for c in proj[i]))
    m = sum(1 for i in range(lam) if proj[i] != [0])
    r = sum(1 for i in range(k) if i in L)
    size = 1
    for p in proj:
        size *= len(p)
    return L, m, r, size == H.order


@dataclass(frozen=True)
class AdaptedBasis:
    """A basis of A with the canonical factor orders in which H is aligned."""

    generators: tuple[Element, ...]
    coords: dict[Element, tuple[int, ...]] = field(repr=False, compare=False)


def _span_coords(A: AbelianSpec, gens: list[Element]) -> dict[Element, tuple[int, ...]]:
    out: dict[Element, tuple[int, ...]] = {A.identity: (0,) * len(gens)}
    for i, g in enumerate(gens):
        step = {}
        for x, c in out.items():
            y = x
            for e in range(1, A.moduli[i]):
                y = A.mul(y, g)
                step[y] = c[:i] + (e,) + c[i + 1 :]
        out.update(step)
    return out


def adapted_basis(G: DicyclicGroup, H: SubgroupA, limit: int = 100_000) -> AdaptedBasis | None:
    """Depth-first search for a basis in which H is the product of its
    coordinate projections. Returns None if ``limit`` candidate bases are
    exhausted first."""
    A = G.spec
    by_order: dict[int, list[Element]] = {}
    for x in G.A_elements:
        by_order.setdefault(A.element_order(x), []).append(x)
    budget = [limit]

    def extend(gens: list[Element], span: set[Element]) -> AdaptedBasis | None:
        i = len(gens)
        if i == A.rank:
            budget[0] -= 1
            coords = _span_coords(A, gens)
            if projection_data(G, H, coords)[3]:
                return AdaptedBasis(tuple(gens), coords)
            return None
        for g in by_order.get(A.moduli[i], []):
            if budget[0] <= 0:
                return None
            cyc = {A.pow(g, e) for e in range(A.moduli[i])}
            if len(cyc & span) != 1:
                continue
            found = extend(gens + [g], {A.mul(x, y) for x in span for y in cyc})
            if found is not None:
                return found
        return None

    return extend([], {A.identity})


def beta_clause(G: DicyclicGroup, H: SubgroupA) -> int:
    """Which of the four square-placement situations H is in (1..4).

    1: B u {b^2} in H;  2: B in H, b^2 not in H;
    3: B not in H, b^2 not in H u B, Hb^2 meets B;  4: otherwise.
    """
    A = G.spec
    b2 = G.b_squared
    B_in_H = G.B.issubset(H)
    if B_in_H:
        return 1 if b2 in H else 2
    if b2 not in H and b2 not in G.B:
        if any(A.mul(h, b2) in G.B for h in H.elements):
            return 3
    return 4


EPS_BAR_BY_CLAUSE = {1: 0, 2: 1, 3: 2, 4: 1}


def eps_bar_A(G: DicyclicGroup, H: SubgroupA) -> int:
    return EPS_BAR_BY_CLAUSE[beta_clause(G, H)]


def structural_counts(G: DicyclicGroup, H: SubgroupA) -> tuple[int, int, int]:
    """(l, m, r) computed from subgroup orders, independent of coordinates."""
    HB = sum(1 for h in H.elements if h in G.B)
    HA = sum(1 for h in H.elements if h in G.A_prime)
    HAB = sum(1 for h in H.elements if h in G.A_prime and h in G.B)
    l = _log2_exact(H.order // HB)
    m = _log2_exact(HA)
    r = m - _log2_exact(HAB)
    return l, m, r


def script_L(G: DicyclicGroup, K: Subgroup) -> int:
    """Least number of non-squares in a coset Kx != K (|K| when K = G)."""
    cs = right_cosets(G, K)
    if len(cs) == 1:
        return K.order
    return min(sum(1 for g in c if g not in G.squares) for c in cs[1:])


def script_L_closed_form(G: DicyclicGroup, H: SubgroupA) -> int:
    l, _, _ = structural_counts(G, H)
    u = H.order >> l
    clause = beta_clause(G, H)
    return {
        1: H.order,
        2: H.order - 1,
        3: (2**l - 1) * u - 1,
        4: (2**l - 1) * u,
    }[clause]


def case_for(kind: str, l: int, m: int, r: int, b2_in_H_minus_B: bool) -> str:
    if kind == "A":
        if b2_in_H_minus_B:
            return "A:b2-outside-B,m=l=1" if m == l == 1 else "A:b2-outside-B"
        return "A:r=0" if r == 0 else "A:r>0"
    if b2_in_H_minus_B:
        return "zb:b2-outside-B,m>l" if m > l else "zb:b2-outside-B,m=l"
    if m > l:
        return "zb:m>l,r=0" if r == 0 else "zb:m>l,r>0"
    return "zb:m=l"


def subgroup_invariants(G: DicyclicGroup, K: Subgroup) -> SubgroupInvariants:
    H = K.H
    l, m, r = structural_counts(G, H)
    pL, pm, pr, aligned = projection_data(G, H)
    lam = G.spec.lam
    B_in_H = G.B.issubset(H)
    b2 = G.b_squared
    b2_in_H = b2 in H
    b2_in_B = b2 in G.B
    b2_HmB = b2_in_H and not b2_in_B
    clause = beta_clause(G, H)
    if K.kind == "A":
        eps_bar = EPS_BAR_BY_CLAUSE[clause]
    else:
        eps_bar = 0 if B_in_H else 1
    return SubgroupInvariants(
        kind=K.kind,
        order_H=H.order,
        l=l,
        m=m,
        r=r,
        h_unit=H.order >> l,
        proj_L=pL,
        proj_T=tuple(i for i in range(lam) if i not in pL),
        proj_m=pm,
        proj_r=pr,
        aligned=aligned,
        B_in_H=B_in_H,
        b2_in_H=b2_in_H,
        b2_in_B=b2_in_B,
        b2_in_H_minus_B=b2_HmB,
        eps=1 if b2_HmB else 0,
        eps_bar=eps_bar,
        case_label=case_for(K.kind, l, m, r, b2_HmB),
        beta_clause=clause,
        script_L=script_L(G, K),
        J=compute_J(G, H),
        whole_group=K.order == G.order,
    )


def subgroup_from_gens(G: DicyclicGroup, gens: list[Element], z: Element | None = None) -> Subgroup:
    H = subgroup_closure(G.spec, gens)
    if z is None:
        return subgroup_A(G, H)
    return subgroup_zb(G, H, z)


def subgroup_sort_key(K: Subgroup) -> tuple:
    return (K.kind != "A", K.H.order, K.H.elements, K.z or ())


__all__ = [
    "Subgroup",
    "SubgroupInvariants",
    "JSet",
    "ParityBasis",
    "subgroup_A",
    "subgroup_zb",
    "subgroup_from_gens",
    "enumerate_all_subgroups",
    "brute_subgroups",
    "right_cosets",
    "compute_J",
    "parity_basis",
    "projection_data",
    "AdaptedBasis",
    "adapted_basis",
    "structural_counts",
    "beta_clause",
    "eps_bar_A",
    "script_L",
    "script_L_closed_form",
    "subgroup_invariants",
    "case_for",
]
