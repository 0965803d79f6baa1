import pytest

from caysum.abelian import subgroup_closure
from caysum.catalog import catalog_group
from caysum.feasibility import (
    RegionDiscrepancy,
    alpha_only_set,
    beta_only_set_H,
    composed_pairs_A,
    decomposition_plans,
    feasible_pairs_H,
    feasible_pairs_Hzb,
    region_for,
    theorem_pairs_A,
    zb_ab_pairs,
    zb_beta_inA,
)
from caysum.subgroups import enumerate_all_subgroups, subgroup_from_gens


def _H(G, *gens):
    return subgroup_closure(G.spec, gens)


def _grid(xs, ys):
    return {(x, y) for x in xs for y in ys} - {(0, 0)}


def test_q8_component_sets(q8):
    assert alpha_only_set(q8, _H(q8, (1,))) == {0, 2}
    assert alpha_only_set(q8, _H(q8, (2,))) == {0}
    assert alpha_only_set(q8, _H(q8)) == {0}
    assert beta_only_set_H(q8, _H(q8, (1,))) == {0, 2, 4}
    assert beta_only_set_H(q8, _H(q8, (2,))) == {0, 2}
    assert beta_only_set_H(q8, _H(q8)) == {0}


def test_q8_typeA_regions(q8):
    assert feasible_pairs_H(q8, _H(q8, (1,))).pairs == _grid({0, 2}, {0, 2, 4})
    assert feasible_pairs_H(q8, _H(q8, (2,))).pairs == {(0, 2)}
    assert feasible_pairs_H(q8, _H(q8)).pairs == set()


def test_q8_zb_components(q8):
    a2, a = _H(q8, (2,)), _H(q8, (1,))
    assert zb_ab_pairs(q8, a2) == {(0, 0), (0, 2), (2, 0), (2, 2)}
    assert zb_ab_pairs(q8, a) == {(x, y) for x in (0, 2, 4) for y in (0, 2, 4)}
    assert zb_beta_inA(q8, a2) == {0, 2}
    assert zb_beta_inA(q8, a) == {0, 1, 2, 3, 4}
    with pytest.raises(ValueError):
        zb_ab_pairs(q8, _H(q8))


def test_zb_without_B_is_diagonal():
    G = catalog_group("Z2xZ4_b2_not_in_B")
    for K in enumerate_all_subgroups(G):
        if K.kind == "zb" and not G.B.issubset(K.H):
            assert all(a == b for a, b in zb_ab_pairs(G, K.H))


def test_q8_b_region(q8):
    K = subgroup_from_gens(q8, [(2,)], (0,))
    region = feasible_pairs_Hzb(q8, K)
    assert region.case_label == "zb:m>l,r=0"
    assert region.pairs == region.theorem_pairs == _grid({0, 2}, {0, 2, 4})


def test_whole_group_beta_is_zero(q8):
    K = subgroup_from_gens(q8, [(1,)], (0,))
    region = region_for(q8, K)
    assert region.whole_group
    assert all(b == 0 for _, b in region.pairs)
    assert all(b == 0 for _, b in region.theorem_pairs)


def test_typeA_closed_form_equals_composition(catalog_entry):
    _, G = catalog_entry
    for K in enumerate_all_subgroups(G):
        if K.kind == "A":
            assert theorem_pairs_A(G, K.H) == composed_pairs_A(G, K.H)


def test_strict_mode_raises_on_disagreement():
    # Literal case (5) of the <H, zb> statement allows odd alpha here, which
    # the (alpha, 0) component forbids.
    G = catalog_group("Dic16")
    K = subgroup_from_gens(G, [(1,)], (0,))
    region = region_for(G, K)
    assert not region.consistent
    with pytest.raises(RegionDiscrepancy):
        region_for(G, K, strict=True)


def test_plans_reassemble_pair(catalog_entry):
    _, G = catalog_entry
    for K in enumerate_all_subgroups(G):
        region = region_for(G, K)
        u = region.parameters["unit"]
        for alpha, beta in sorted(region.pairs)[:6]:
            plans = decomposition_plans(G, K, alpha, beta) if K.kind == "zb" else None
            if plans is None:
                continue
            assert plans and plans == sorted(plans, key=lambda p: (p.eta, p.zeta, p.t_prime, p.t))
            for p in plans:
                assert p.eta + p.t_prime * u == alpha
                if not region.whole_group:
                    assert p.zeta + p.t * u == beta
