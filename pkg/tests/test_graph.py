import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from caysum.catalog import catalog_group
from caysum.dicyclic import GroupElement as E
from caysum.graph import NotRegular, WholeSetPair, build_caysum, regular_profile, subgroup_profile_fast
from caysum.subgroups import enumerate_all_subgroups, subgroup_from_gens

A1, A3, A2 = E((1,), 0), E((3,), 0), E((2,), 0)
B0, B2 = E((0,), 1), E((2,), 1)


def test_degrees(q8):
    g = build_caysum(q8, [A1, A3])
    assert all(g.degree(x) == 2 for x in q8.elements)
    empty = build_caysum(q8, [])
    assert all(empty.degree(x) == 0 for x in q8.elements)
    full = build_caysum(q8, q8.nonsquares())
    assert all(full.degree(x) == 6 for x in q8.elements)


def test_rejects_invalid_set(q8):
    with pytest.raises(ValueError):
        build_caysum(q8, [A1])
    with pytest.raises(ValueError):
        build_caysum(q8, [A2])


def test_adjacency_symmetric_without_loops(catalog_entry):
    _, G = catalog_entry
    S = G.nonsquares()
    g = build_caysum(G, S)
    for x in G.elements:
        assert x not in g.neighbours(x)
        for y in g.neighbours(x):
            assert x in g.neighbours(y)
            assert G.mul(x, y) in set(S)


def test_profile_examples(q8):
    full = build_caysum(q8, q8.nonsquares())
    a2 = subgroup_from_gens(q8, [(2,)])
    assert regular_profile(full, a2.elements) == (0, 2)
    assert subgroup_profile_fast(q8, q8.nonsquares(), a2) == (0, 2)
    assert regular_profile(full, []) == (0, 0)
    broken = regular_profile(build_caysum(q8, [A1, A3]), [q8.identity, A1])
    assert isinstance(broken, NotRegular) and not broken
    b_sub = subgroup_from_gens(q8, [(2,)], (0,))
    assert subgroup_profile_fast(q8, [B0, B2], b_sub) == (2, 0)
    assert subgroup_profile_fast(q8, [A1, A3], b_sub) == (0, 2)


def test_whole_group_pair(q8):
    G_sub = subgroup_from_gens(q8, [(1,)], (0,))
    p = regular_profile(build_caysum(q8, [A1, A3]), G_sub.elements)
    assert isinstance(p, WholeSetPair) and p.vacuous_beta and p == (2, 0)
    assert isinstance(subgroup_profile_fast(q8, [A1, A3], G_sub), WholeSetPair)


def test_to_json_shape(q8):
    doc = build_caysum(q8, [A1, A3]).to_json()
    assert len(doc["vertices"]) == 8 and all(len(n) == 2 for n in doc["adjacency"])


NAMES = ["Q8", "Dic16", "Z2xZ4_b2_in_B", "Z12", "Z2xZ2xZ2"]


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(NAMES), st.data())
def test_fast_profile_matches_definition(name, data):
    G = catalog_group(name)
    classes = G.nonsquare_classes()
    picks = data.draw(st.lists(st.booleans(), min_size=len(classes), max_size=len(classes)))
    S = [g for c, keep in zip(classes, picks) if keep for g in c]
    K = data.draw(st.sampled_from(enumerate_all_subgroups(G)))
    fast = subgroup_profile_fast(G, S, K)
    slow = regular_profile(build_caysum(G, S), K.elements)
    assert bool(fast) == bool(slow)
    if slow:
        assert tuple(fast) == tuple(slow)
