"""Explicit connection sets realising a requested (alpha, beta).

Every builder replays a sufficiency construction: it picks the prescribed
number of building blocks of each kind (singleton involution classes,
inverse pairs, translated transversals, unions of B-cosets times b), in
canonical order. The block counts follow the recipes' arithmetic exactly.
When that arithmetic asks for a negative or unavailable number of blocks the
builder raises ``ConstructionError`` with the offending numbers instead of
improvising.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .abelian import Element, SubgroupA, cosets
from .dicyclic import ConnectionSet, DicyclicGroup, GroupElement, canonical, validate_connection_set
from .feasibility import (
    DecompositionPlan,
    alpha_only_set,
    beta_only_set_H,
    decomposition_plans,
    region_for,
    zb_ab_pairs,
    zb_beta_inA,
)
from .graph import build_caysum, regular_profile, subgroup_profile_fast
from .subgroups import (
    Subgroup,
    compute_J,
    parity_basis,
    subgroup_A,
    subgroup_invariants,
)


class InfeasibleRequest(ValueError):
    """The requested pair lies outside the predicted region."""


class ConstructionError(RuntimeError):
    """A recipe could not be carried out as written, or its result failed
    verification."""


@dataclass(frozen=True)
class Transversal:
    H: SubgroupA
    reps: tuple[Element, ...]
    J_reps: frozenset[Element]

    def without_identity(self, identity: Element) -> list[Element]:
        return [x for x in self.reps if x != identity]

    def outside_J(self, identity: Element) -> list[Element]:
        return [x for x in self.reps if x != identity and x not in self.J_reps]


@dataclass
class ConstructionRecipe:
    case_id: str
    sigma_parity: int | None = None
    delta_mr: int | None = None
    pieces: list[tuple[str, tuple]] = field(default_factory=list)

    def add(self, kind: str, elements) -> None:
        self.pieces.append((kind, tuple(canonical(elements))))

    def as_dict(self) -> dict:
        return {
            "case": self.case_id,
            "sigma": self.sigma_parity,
            "delta": self.delta_mr,
            "pieces": [{"type": k, "size": len(e)} for k, e in self.pieces],
        }


@dataclass(frozen=True)
class Witness:
    subgroup: Subgroup
    alpha: int
    beta: int
    S: ConnectionSet
    plan: dict
    recipes: tuple[ConstructionRecipe, ...]


# Names for the four positions of B and b^2 relative to H (see beta_clause).
SQUARE_PLACEMENT = {1: "B-and-b2-in-H", 2: "B-in-H", 3: "Hb2-meets-B", 4: "B-not-in-H"}


def sigma(n: int) -> int:
    return n % 2


def delta(m: int, r: int) -> int:
    return 1 if m == r else 0


# --- transversal ---------------------------------------------------------------


def build_transversal(G: DicyclicGroup, H: SubgroupA) -> Transversal:
    """One representative per coset of H, chosen so that the representatives
    outside J are closed under inverses and every coset meeting a square is
    represented by a square."""
    A = G.spec
    squares = {g.a for g in G.squares}
    J = compute_J(G, H)
    blocks = cosets(A, H)
    where = {x: i for i, c in enumerate(blocks) for x in c}
    reps: dict[int, Element] = {0: A.identity}
    j_reps = set()
    for i, c in enumerate(blocks[1:], start=1):
        if i in reps:
            continue
        partner = where[A.inv(c[0])]
        sq = [x for x in c if x in squares]
        if partner != i:
            rep = min(sq) if sq else c[0]
            reps[i] = rep
            reps[partner] = A.inv(rep)
            continue
        invols = [x for x in c if x in G.A_prime]
        if invols:
            if sq:
                both = [x for x in invols if x in squares]
                if not both:
                    raise ConstructionError(
                        f"self-inverse coset {c} meets A' and the squares but not their intersection"
                    )
                reps[i] = min(both)
            else:
                reps[i] = min(invols)
        else:
            rep = min(sq) if sq else c[0]
            reps[i] = rep
            j_reps.add(rep)
    ordered = tuple(reps[i] for i in range(len(blocks)))
    assert all(x in J.elements for x in j_reps)
    return Transversal(H, ordered, frozenset(j_reps))


def _translate(G: DicyclicGroup, reps: list[Element], x: Element) -> set[GroupElement]:
    A = G.spec
    return {GroupElement(A.mul(i, x), 0) for i in reps}


def _inverse_pairs(G: DicyclicGroup, pool: list[Element]) -> list[tuple[Element, Element]]:
    """Split a pool closed under inverses into {x, x^-1} pairs, x != x^-1."""
    A = G.spec
    out, seen = [], set()
    for x in sorted(pool):
        if x in seen:
            continue
        y = A.inv(x)
        if y == x:
            continue
        seen |= {x, y}
        out.append((x, y))
    return out


def _take(pool: list, n: int, what: str, recipe: ConstructionRecipe) -> list:
    if n < 0 or n > len(pool):
        raise ConstructionError(
            f"{recipe.case_id}: needs {n} blocks of type {what}, {len(pool)} available"
        )
    return pool[:n]


def _finish(G: DicyclicGroup, elements: set[GroupElement], recipe: ConstructionRecipe) -> ConnectionSet:
    S = validate_connection_set(G, elements)
    if not S.valid:
        raise ConstructionError(f"{recipe.case_id}: built set is invalid ({S.problems()})")
    return ConnectionSet(
        S.elements, S.normal, S.square_free, recipes=(recipe,)
    )


# --- (alpha, 0) inside H ---------------------------------------------------------


def construct_alpha0(G: DicyclicGroup, H: SubgroupA, alpha: int) -> ConnectionSet:
    """S inside H with |S| = alpha, made of involution singletons and
    inverse pairs."""
    if alpha not in alpha_only_set(G, H):
        raise InfeasibleRequest(f"alpha={alpha} is not attainable with beta=0 for this H")
    iv = subgroup_invariants(G, subgroup_A(G, H))
    m, r, b2 = iv.m, iv.r, G.b_squared
    singles_pool = [x for x in H.elements if x in G.A_prime and x not in G.B and x != b2]
    pair_pool = _inverse_pairs(
        G, [x for x in H.elements if x not in G.A_prime and x not in G.B]
    )
    d = delta(m, r)
    if iv.b2_in_H_minus_B:
        if m == 1:
            recipe = ConstructionRecipe("alpha0:b2-outside-B,m=1", sigma(alpha), d)
            n_single = 0
        else:
            cap = 2**m - 2 ** (m - r) - 1
            if alpha <= cap:
                recipe = ConstructionRecipe("alpha0:b2-outside-B,small", sigma(alpha), d)
                n_single = alpha
            elif alpha % 2 == 0:
                recipe = ConstructionRecipe("alpha0:b2-outside-B,even", sigma(alpha), d)
                n_single = cap - 1 + d
            else:
                recipe = ConstructionRecipe("alpha0:b2-outside-B,odd", sigma(alpha), d)
                n_single = cap - d
    else:
        if r == 0:
            recipe = ConstructionRecipe("alpha0:r=0", sigma(alpha), d)
            n_single = 0
        else:
            cap = 2**m - 2 ** (m - r)
            if alpha <= cap:
                recipe = ConstructionRecipe("alpha0:r>0,small", sigma(alpha), d)
                n_single = alpha
            elif alpha % 2 == 0:
                recipe = ConstructionRecipe("alpha0:r>0,even", sigma(alpha), d)
                n_single = cap - d
            else:
                recipe = ConstructionRecipe("alpha0:r>0,odd", sigma(alpha), d)
                n_single = cap - 1 + d
    rest = alpha - n_single
    if rest % 2:
        raise ConstructionError(f"{recipe.case_id}: {rest} elements left for inverse pairs")
    S: set[GroupElement] = set()
    for x in _take(singles_pool, n_single, "{a'}", recipe):
        S.add(GroupElement(x, 0))
        recipe.add("singleton", [GroupElement(x, 0)])
    for x, y in _take(pair_pool, rest // 2, "{a, a^-1}", recipe):
        piece = {GroupElement(x, 0), GroupElement(y, 0)}
        S |= piece
        recipe.add("inverse-pair", piece)
    return _finish(G, S, recipe)


# --- (0, beta) for H -------------------------------------------------------------


def _ab_slice(G: DicyclicGroup, basis, l_subset: tuple[int, ...]) -> set[GroupElement]:
    """Union over T' of B a_{L'} a_{T'} b."""
    A = G.spec
    a_l = basis.a_L(A, l_subset)
    out = set()
    for t_subset in basis.t_subsets():
        base = A.mul(a_l, basis.a_T(A, t_subset))
        out |= {GroupElement(A.mul(c, base), 1) for c in G.B.elements}
    return out


def _j_pairs(G: DicyclicGroup, coset: tuple[Element, ...], count: int, recipe: ConstructionRecipe) -> set[GroupElement]:
    squares = {g.a for g in G.squares}
    pool = _inverse_pairs(G, [x for x in coset if x not in squares])
    out = set()
    for x, y in _take(pool, count, "J-coset pair", recipe):
        out |= {GroupElement(x, 0), GroupElement(y, 0)}
    return out


def construct_0beta_H(G: DicyclicGroup, H: SubgroupA, beta: int) -> ConnectionSet:
    """S disjoint from H for which H is (0, beta)-regular."""
    if beta not in beta_only_set_H(G, H):
        raise InfeasibleRequest(f"beta={beta} is not attainable with alpha=0 for this H")
    iv = subgroup_invariants(G, subgroup_A(G, H))
    A = G.spec
    l, u = iv.l, iv.h_unit
    t = beta // u
    recipe = ConstructionRecipe(f"0beta:{SQUARE_PLACEMENT[iv.beta_clause]},t={t}")
    if t == 0:
        return _finish(G, set(), recipe)
    if t == 2**l:
        S = {g for g in G.elements if g not in G.squares and not (g.flag == 0 and g.a in H)}
        recipe.add("complement-of-H", S)
        return _finish(G, S, recipe)
    I = build_transversal(G, H)
    basis = parity_basis(G, H)
    blocks = [s for s in basis.l_subsets() if s]
    if iv.beta_clause == 3:
        b2 = G.b_squared
        blocks = [s for s in blocks if A.mul(basis.a_L(A, s), b2) not in G.B]
    chosen = _take(blocks, t, "a_{L'} block", recipe)
    S: set[GroupElement] = set()
    for coset in iv.J.cosets:
        if (t * u) % 2:
            raise ConstructionError(f"{recipe.case_id}: t*|H|/2^l={t * u} is odd but J is nonempty")
        piece = _j_pairs(G, coset, t * u // 2, recipe)
        S |= piece
        recipe.add("J-pairs", piece)
    outside = I.outside_J(A.identity)
    for s in chosen:
        target = A.parity(basis.a_L(A, s))
        xs = [h for h in H.elements if A.parity(h) == target]
        piece = set()
        for x in xs:
            piece |= _translate(G, outside, x)
        S |= piece
        recipe.add("translated-transversals", piece)
        ab = _ab_slice(G, basis, s)
        S |= ab
        recipe.add("Ab-slice", ab)
    return _finish(G, S, recipe)


# --- <H, zb>: the part inside Ab ------------------------------------------------


def construct_zb_ab(G: DicyclicGroup, H: SubgroupA, z: Element, t_prime: int, t: int) -> ConnectionSet:
    """S inside Ab giving <H, zb> the profile (t'|H|/2^l, t|H|/2^l)."""
    A = G.spec
    iv = subgroup_invariants(G, subgroup_A(G, H))
    u = iv.h_unit
    if (t_prime * u, t * u) not in zb_ab_pairs(G, H):
        raise InfeasibleRequest(f"(t', t)=({t_prime}, {t}) is not attainable inside Ab")
    basis = parity_basis(G, H)
    recipe = ConstructionRecipe(f"zb-ab:{'B-in-H' if iv.B_in_H else 'B-not-in-H'}")
    S: set[GroupElement] = set()
    if not iv.B_in_H:
        for s in basis.l_subsets()[:t]:
            piece = _ab_slice(G, basis, s)
            S |= piece
            recipe.add("Ab-slice", piece)
        return _finish(G, S, recipe)
    # B <= H: H-cosets are unions of B-cosets B a_{L''} a_{T''}; pick t' of
    # them on the coset of z and t on every other coset.
    t_of_z = next(
        ts for ts in basis.t_subsets() if A.mul(z, A.inv(basis.a_T(A, ts))) in H
    )
    for ts in basis.t_subsets():
        count = t_prime if ts == t_of_z else t
        for ls in basis.l_subsets()[:count]:
            base = A.mul(basis.a_L(A, ls), basis.a_T(A, ts))
            piece = {GroupElement(A.mul(c, base), 1) for c in G.B.elements}
            S |= piece
            recipe.add("B-coset-b", piece)
    return _finish(G, S, recipe)


# --- <H, zb>: the part inside A \ H ---------------------------------------------


def construct_zb_0beta_inA(G: DicyclicGroup, H: SubgroupA, z: Element, zeta: int) -> ConnectionSet:
    """S inside A \\ H for which <H, zb> is (0, zeta)-regular."""
    A = G.spec
    if G.b_squared not in H:
        raise InfeasibleRequest("b^2 must lie in H")
    if H.order == A.order:
        if zeta:
            raise InfeasibleRequest("H = A leaves no coset of A outside H")
        return _finish(G, set(), ConstructionRecipe("zb-inA:H=A"))
    if zeta not in zb_beta_inA(G, H):
        raise InfeasibleRequest(f"zeta={zeta} is not attainable inside A")
    if zeta == 0:
        return _finish(G, set(), ConstructionRecipe("zb-inA:empty"))
    iv = subgroup_invariants(G, subgroup_A(G, H))
    l, m, r = iv.l, iv.m, iv.r
    d = delta(m, r)
    I = build_transversal(G, H)
    e = A.identity
    with_J = m > l
    reps = I.outside_J(e) if with_J else I.without_identity(e)
    invols = [x for x in H.elements if x in G.A_prime]
    invols_nonB = [x for x in invols if x not in G.B]
    pairs_all = _inverse_pairs(G, [x for x in H.elements if x not in G.A_prime])
    pairs_nonB = _inverse_pairs(G, [x for x in H.elements if x not in G.A_prime and x not in G.B])
    if iv.B_in_H:
        threshold, singles, pairs = 2**m, invols, pairs_all
    else:
        threshold, singles, pairs = 2**m - 2 ** (m - r), invols_nonB, pairs_nonB
    tag = ",".join(
        [
            "B-in-H" if iv.B_in_H else "B-not-in-H",
            "small" if zeta <= threshold else "large",
            "J" if with_J else "no-J",
        ]
    )
    recipe = ConstructionRecipe(f"zb-inA:{tag}", sigma(zeta), d)
    if zeta <= threshold:
        n_single = zeta
    elif with_J:
        n_single = threshold
    elif iv.B_in_H:
        n_single = 2**m - sigma(zeta)
    else:
        n_single = threshold - sigma(zeta) + (-1) ** (zeta + 1) * d
    rest = zeta - n_single
    if rest % 2:
        raise ConstructionError(f"{recipe.case_id}: {rest} translates left for inverse pairs")
    S: set[GroupElement] = set()
    for x in _take(singles, n_single, "(I\\{e})a'", recipe):
        piece = _translate(G, reps, x)
        S |= piece
        recipe.add("translate", piece)
    for x, y in _take(pairs, rest // 2, "(I\\{e})a u (I\\{e})a^-1", recipe):
        piece = _translate(G, reps, x) | _translate(G, reps, y)
        S |= piece
        recipe.add("translate-pair", piece)
    if with_J:
        if zeta % 2:
            raise ConstructionError(f"{recipe.case_id}: odd zeta={zeta} with J nonempty")
        for coset in iv.J.cosets:
            piece = _j_pairs(G, coset, zeta // 2, recipe)
            S |= piece
            recipe.add("J-pairs", piece)
    return _finish(G, S, recipe)


# --- top level -----------------------------------------------------------------


def _verify(G: DicyclicGroup, K: Subgroup, S: ConnectionSet, alpha: int, beta: int) -> None:
    fast = subgroup_profile_fast(G, S, K)
    slow = regular_profile(build_caysum(G, S), K.elements)
    if not fast or tuple(fast) != (alpha, beta):
        raise ConstructionError(f"fast profile {fast} differs from requested {(alpha, beta)}")
    if not slow or tuple(slow) != (alpha, beta):
        raise ConstructionError(f"graph profile {slow} differs from requested {(alpha, beta)}")


def _union(G: DicyclicGroup, parts: list[ConnectionSet]) -> ConnectionSet:
    elements: set[GroupElement] = set()
    for p in parts:
        if elements & p.elements:
            raise ConstructionError("component supports overlap")
        elements |= p.elements
    S = validate_connection_set(G, elements)
    recipes = tuple(r for p in parts for r in p.recipes)
    return ConnectionSet(S.elements, S.normal, S.square_free, S.missing_conjugates, S.squares_present, recipes)


def construct_S(G: DicyclicGroup, K: Subgroup, alpha: int, beta: int) -> Witness:
    """A verified connection set for which K is (alpha, beta)-regular."""
    if (alpha, beta) == (0, 0):
        raise InfeasibleRequest("(0, 0) is excluded; the empty set is the only witness")
    region = region_for(G, K)
    if (alpha, beta) not in region.pairs:
        raise InfeasibleRequest(f"{(alpha, beta)} is outside the predicted region {region.case_label}")
    if K.kind == "A":
        S = _union(G, [construct_alpha0(G, K.H, alpha), construct_0beta_H(G, K.H, beta)])
        _verify(G, K, S, alpha, beta)
        return Witness(K, alpha, beta, S, {"alpha": alpha, "beta": beta}, S.recipes)
    failures = []
    for plan in decomposition_plans(G, K, alpha, beta):
        try:
            S = _build_zb(G, K, plan)
        except ConstructionError as exc:
            failures.append(f"{plan.as_dict()}: {exc}")
            continue
        _verify(G, K, S, alpha, beta)
        info = plan.as_dict()
        if failures:
            info["skipped"] = failures
        return Witness(K, alpha, beta, S, info, S.recipes)
    raise ConstructionError(
        f"no decomposition of {(alpha, beta)} could be built: " + " | ".join(failures)
    )


def _build_zb(G: DicyclicGroup, K: Subgroup, plan: DecompositionPlan) -> ConnectionSet:
    H, z = K.H, K.z
    parts = [
        construct_alpha0(G, H, plan.eta),
        construct_zb_0beta_inA(G, H, z, plan.zeta),
        construct_zb_ab(G, H, z, plan.t_prime, plan.t),
    ]
    return _union(G, parts)
