import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from caysum.abelian import (
    CapExceeded,
    cosets,
    enumerate_subgroups_A,
    is_subgroup,
    normalize_spec,
    subgroup_closure,
    subset_product,
)


def test_normalize_examples():
    z4 = normalize_spec([4])
    assert z4.factors == ((2, 2),) and (z4.lam, z4.mu, z4.k) == (1, 0, 0)
    z12 = normalize_spec([12])
    assert z12.factors == ((2, 2), (3, 1)) and (z12.lam, z12.mu, z12.k) == (1, 1, 0)
    z2z4 = normalize_spec([2, 4])
    assert z2z4.factors == ((2, 1), (2, 2)) and (z2z4.lam, z2z4.mu, z2z4.k) == (2, 0, 1)


def test_normalize_reorders_and_translates_user_coordinates():
    spec = normalize_spec([3, 8, 2])
    assert spec.moduli == (2, 8, 3)
    assert spec.from_user([1, 5, 1]) == (1, 5, 1)
    assert spec.from_user([2, 3, 0]) == (0, 3, 2)
    assert spec.to_user((0, 3, 2)) == [2, 3, 0]
    z12 = normalize_spec([12, 6])
    for u in [[0, 0], [7, 5], [11, 3]]:
        assert z12.to_user(z12.from_user(u)) == u


@pytest.mark.parametrize("bad", [[], [1], [0, 4]])
def test_normalize_rejects(bad):
    with pytest.raises(ValueError):
        normalize_spec(bad)


def test_arithmetic_examples():
    z4 = normalize_spec([4])
    assert z4.mul((1,), (3,)) == (0,)
    assert z4.inv((1,)) == (3,)
    assert z4.pow((1,), 2) == (2,)


def test_projection_examples():
    A = normalize_spec([2, 4])
    assert A.projection(0, (1, 3)) == (1, 0)
    assert A.projection(1, (1, 3)) == (0, 3)
    assert A.projection(1, (1, 0)) == (0, 0)
    with pytest.raises(IndexError):
        A.projection(2, (1, 0))


def test_closure_examples():
    z4 = normalize_spec([4])
    assert subgroup_closure(z4, [(2,)]).elements == ((0,), (2,))
    assert subgroup_closure(z4, []).elements == ((0,),)
    assert subgroup_closure(z4, [(1,)]).order == 4


def _brute_subgroup_count(A):
    els = A.elements()
    found = set()
    for mask in range(1 << len(els)):
        s = [els[i] for i in range(len(els)) if mask >> i & 1]
        if is_subgroup(A, s):
            found.add(frozenset(s))
    return len(found)


@pytest.mark.parametrize("orders,count", [([4], 3), ([2, 2], 5), ([2], 2), ([2, 4], 8), ([8], 4)])
def test_subgroup_counts(orders, count):
    A = normalize_spec(orders)
    subs = enumerate_subgroups_A(A)
    assert len(subs) == count == _brute_subgroup_count(A)
    assert len(set(subs)) == len(subs)


def test_subgroup_cap():
    with pytest.raises(CapExceeded):
        enumerate_subgroups_A(normalize_spec([4, 4, 4]), cap=32)


def test_cosets_examples():
    z4 = normalize_spec([4])
    H = subgroup_closure(z4, [(2,)])
    assert cosets(z4, H) == [((0,), (2,)), ((1,), (3,))]
    assert len(cosets(z4, subgroup_closure(z4, []))) == 4
    assert cosets(z4, subgroup_closure(z4, [(1,)])) == [((0,), (1,), (2,), (3,))]


def test_subset_product_examples():
    A = normalize_spec([2, 4])
    assert subset_product(A, []) == (0, 0)
    assert subset_product(A, [(1, 0)]) == (1, 0)
    assert subset_product(A, [(1, 0), (0, 1)]) == (1, 1)


orders_st = st.lists(st.sampled_from([2, 3, 4, 6, 8, 9]), min_size=1, max_size=3).filter(
    lambda o: __import__("math").prod(o) <= 64
)


@settings(max_examples=40, deadline=None)
@given(orders_st, st.data())
def test_group_axioms(orders, data):
    A = normalize_spec(orders)
    els = A.elements()
    x, y, z = (data.draw(st.sampled_from(els)) for _ in range(3))
    assert A.mul(A.mul(x, y), z) == A.mul(x, A.mul(y, z))
    assert A.mul(x, y) == A.mul(y, x)
    assert A.mul(x, A.inv(x)) == A.identity
    assert A.pow(x, A.element_order(x)) == A.identity


@settings(max_examples=25, deadline=None)
@given(orders_st, st.data())
def test_cosets_partition(orders, data):
    A = normalize_spec(orders)
    gens = data.draw(st.lists(st.sampled_from(A.elements()), max_size=2))
    H = subgroup_closure(A, gens)
    assert is_subgroup(A, H.elements)
    blocks = cosets(A, H)
    assert blocks[0] == H.elements
    flat = [x for b in blocks for x in b]
    assert sorted(flat) == sorted(A.elements())
    assert all(len(b) == H.order for b in blocks)
    assert H.order * len(blocks) == A.order
