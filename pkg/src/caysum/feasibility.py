"""Predicted (alpha, beta) regions for every subgroup.

Each region is computed twice:

* ``theorem_pairs`` evaluates the closed-form classification statements
  literally, clause by clause;
* ``pairs`` composes the component results: the (alpha, 0) set of H, the
  (0, beta) sets realisable inside A and inside Ab, glued by the splitting
  S = (S n H) u (S \\ H).

The two are expected to coincide. Where they do not, the discrepancy is
carried on the region (``consistent`` is False) and ``region_for`` raises
``RegionDiscrepancy`` in strict mode.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .abelian import SubgroupA
from .dicyclic import DicyclicGroup
from .subgroups import Subgroup, SubgroupInvariants, subgroup_A, subgroup_invariants

Pair = tuple[int, int]


class RegionDiscrepancy(RuntimeError):
    def __init__(self, region: "FeasibleRegion") -> None:
        self.region = region
        only_thm = sorted(region.theorem_pairs - region.pairs)
        only_comp = sorted(region.pairs - region.theorem_pairs)
        super().__init__(
            f"{region.case_label}: closed form and composition disagree; "
            f"closed form only {only_thm}, composition only {only_comp}"
        )


@dataclass(frozen=True)
class FeasibleRegion:
    kind: str
    case_label: str
    pairs: frozenset[Pair]
    theorem_pairs: frozenset[Pair]
    parameters: dict = field(default_factory=dict, compare=False)
    whole_group: bool = False

    @property
    def consistent(self) -> bool:
        return self.pairs == self.theorem_pairs

    def sorted_pairs(self) -> list[Pair]:
        return sorted(self.pairs)


@dataclass(frozen=True)
class DecompositionPlan:
    eta: int
    zeta: int
    t_prime: int
    t: int

    def as_dict(self) -> dict:
        return {"eta": self.eta, "zeta": self.zeta, "t_prime": self.t_prime, "t": self.t}


def _inv(G: DicyclicGroup, H: SubgroupA) -> SubgroupInvariants:
    return subgroup_invariants(G, subgroup_A(G, H))


# --- component sets -------------------------------------------------------------


def alpha_only_set(G: DicyclicGroup, H: SubgroupA) -> frozenset[int]:
    """All alpha for which H is (alpha, 0)-regular for some S (then S lies in H)."""
    iv = _inv(G, H)
    full = (2**iv.l - 1) * iv.h_unit
    if iv.b2_in_H_minus_B:
        top, even_only = full - 1, iv.m == iv.l == 1
    else:
        top, even_only = full, iv.r == 0
    step = 2 if even_only else 1
    return frozenset(range(0, top + 1, step))


def alpha_case(iv: SubgroupInvariants) -> int:
    if iv.b2_in_H_minus_B:
        return 1 if iv.m == iv.l == 1 else 2
    return 3 if iv.r == 0 else 4


def beta_only_set_H(G: DicyclicGroup, H: SubgroupA) -> frozenset[int]:
    """All beta for which H is (0, beta)-regular: multiples t*|H|/2^l."""
    iv = _inv(G, H)
    return frozenset(t * iv.h_unit for t in range(0, 2**iv.l - iv.eps_bar + 1))


def zb_ab_pairs(G: DicyclicGroup, H: SubgroupA) -> frozenset[Pair]:
    """Profiles of <H, zb> realisable with S inside Ab."""
    if G.b_squared not in H:
        raise ValueError("b^2 must lie in H")
    iv = _inv(G, H)
    u, top = iv.h_unit, 2**iv.l
    if iv.B_in_H:
        return frozenset((tp * u, t * u) for tp in range(top + 1) for t in range(top + 1))
    return frozenset((t * u, t * u) for t in range(top + 1))


def zb_beta_inA(G: DicyclicGroup, H: SubgroupA) -> frozenset[int]:
    """beta values of <H, zb> realisable with S inside A \\ H."""
    if G.b_squared not in H:
        raise ValueError("b^2 must lie in H")
    iv = _inv(G, H)
    top = H.order if iv.B_in_H else (2**iv.l - 1) * iv.h_unit
    step = 2 if iv.m > iv.l else 1
    return frozenset(range(0, top + 1, step))


# --- literal closed forms ----------------------------------------------------


def theorem_pairs_A(G: DicyclicGroup, H: SubgroupA) -> frozenset[Pair]:
    """Closed-form region of a subgroup H of A, read clause by clause."""
    iv = _inv(G, H)
    l, u = iv.l, iv.h_unit
    eps, eps_bar = iv.eps, iv.eps_bar
    clause = iv.case_label
    alpha_even = clause in ("A:b2-outside-B,m=l=1", "A:r=0")
    out = set()
    for alpha in range(0, (2**l - 1) * u - eps + 1):
        if alpha_even and alpha % 2:
            continue
        for t in range(0, 2**l - eps_bar + 1):
            out.add((alpha, t * u))
    out.discard((0, 0))
    return frozenset(out)


def theorem_pairs_zb(G: DicyclicGroup, K: Subgroup) -> frozenset[Pair]:
    """Closed-form region of K = <H, zb>, read clause by clause."""
    iv = subgroup_invariants(G, K)
    l, u = iv.l, iv.h_unit
    eps = iv.eps
    eps_bar = 0 if iv.B_in_H else 1
    clause = iv.case_label
    alpha_even = clause == "zb:m>l,r=0"
    beta_even = clause in ("zb:b2-outside-B,m>l", "zb:m>l,r=0", "zb:m>l,r>0")
    out = set()
    top = 2**l
    for eta in range(0, (top - 1) * u - eps + 1):
        for zeta in range(0, (top - eps_bar) * u + 1):
            for t in range(top + 1):
                tps = range(top + 1) if iv.B_in_H else (t,)
                for tp in tps:
                    alpha, beta = eta + tp * u, zeta + t * u
                    if alpha_even and alpha % 2:
                        continue
                    if beta_even and beta % 2:
                        continue
                    out.add((alpha, beta))
    if iv.whole_group:
        out = {(a, 0) for a, _ in out}
    out.discard((0, 0))
    return frozenset(out)


# --- composition ----------------------------------------------------------------


def composed_pairs_A(G: DicyclicGroup, H: SubgroupA) -> frozenset[Pair]:
    out = {(a, b) for a in alpha_only_set(G, H) for b in beta_only_set_H(G, H)}
    out.discard((0, 0))
    return frozenset(out)


def composed_pairs_zb(G: DicyclicGroup, K: Subgroup) -> frozenset[Pair]:
    H = K.H
    etas = alpha_only_set(G, H)
    zetas = zb_beta_inA(G, H)
    ab = zb_ab_pairs(G, H)
    out = {(e + a1, z + b1) for e in etas for z in zetas for a1, b1 in ab}
    if K.order == G.order:
        out = {(e + a1, 0) for e in etas for a1, _ in ab}
    out.discard((0, 0))
    return frozenset(out)


def decomposition_plans(G: DicyclicGroup, K: Subgroup, alpha: int, beta: int) -> list[DecompositionPlan]:
    """Every (eta, zeta, t', t) whose components are individually feasible,
    in lexicographic order."""
    H = K.H
    iv = subgroup_invariants(G, K)
    u = iv.h_unit
    etas = alpha_only_set(G, H)
    zetas = zb_beta_inA(G, H)
    ab = zb_ab_pairs(G, H)
    whole = iv.whole_group
    plans = []
    for eta in sorted(etas):
        for zeta in sorted(zetas) if not whole else [0]:
            for a1, b1 in sorted(ab):
                if whole and b1:
                    continue
                if eta + a1 == alpha and (whole or zeta + b1 == beta):
                    plans.append(DecompositionPlan(eta, zeta, a1 // u, b1 // u))
    return sorted(plans, key=lambda p: (p.eta, p.zeta, p.t_prime, p.t))


# --- public entry points -------------------------------------------------------


def feasible_pairs_H(G: DicyclicGroup, H: SubgroupA) -> FeasibleRegion:
    iv = _inv(G, H)
    return FeasibleRegion(
        kind="A",
        case_label=iv.case_label,
        pairs=composed_pairs_A(G, H),
        theorem_pairs=theorem_pairs_A(G, H),
        parameters={
            "eps": iv.eps,
            "eps_bar": iv.eps_bar,
            "l": iv.l,
            "m": iv.m,
            "r": iv.r,
            "unit": iv.h_unit,
            "alpha_case": alpha_case(iv),
            "beta_clause": iv.beta_clause,
            "t_range": [0, 2**iv.l - iv.eps_bar],
            "alpha_values": sorted(alpha_only_set(G, H)),
        },
    )


def feasible_pairs_Hzb(G: DicyclicGroup, K: Subgroup, strict: bool = True) -> FeasibleRegion:
    if K.kind != "zb":
        raise ValueError("expected a subgroup of the form <H, zb>")
    iv = subgroup_invariants(G, K)
    H = K.H
    top = 2**iv.l
    region = FeasibleRegion(
        kind="zb",
        case_label=iv.case_label,
        pairs=composed_pairs_zb(G, K),
        theorem_pairs=theorem_pairs_zb(G, K),
        parameters={
            "eps": iv.eps,
            "eps_bar": 0 if iv.B_in_H else 1,
            "l": iv.l,
            "m": iv.m,
            "r": iv.r,
            "unit": iv.h_unit,
            "t_range": [0, top],
            "t_prime_tied_to_t": not iv.B_in_H,
            "eta_values": sorted(alpha_only_set(G, H)),
            "zeta_values": sorted(zb_beta_inA(G, H)),
        },
        whole_group=iv.whole_group,
    )
    if strict and not region.consistent:
        raise RegionDiscrepancy(region)
    return region


def region_for(G: DicyclicGroup, K: Subgroup, strict: bool = False) -> FeasibleRegion:
    if K.kind == "A":
        region = feasible_pairs_H(G, K.H)
        if strict and not region.consistent:
            raise RegionDiscrepancy(region)
        return region
    return feasible_pairs_Hzb(G, K, strict=strict)
