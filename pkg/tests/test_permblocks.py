import random

import pytest
from hypothesis import given, settings, strategies as st

from subfieldlattice.groups import (
    a5_regular,
    a5_times_c2,
    alternating_group,
    catalogue,
    cyclic_group,
    dihedral_group,
    regular_representation,
    symmetric_group,
)
from subfieldlattice.permblocks import (
    BlockSystem,
    PermGroup,
    all_block_systems,
    blocks_from_values,
    identity,
    index2_subgroups,
    index2_transitive_subgroups,
    intersect_with_alternating,
    inv,
    join_block_systems,
    mul,
    perm_from_cycles,
    principal_block_system,
    sign,
)


def B(*blocks):
    return BlockSystem(tuple(tuple(x - 1 for x in b) for b in blocks))


def closure(elements, n):
    """Subgroup generated by a set of permutations, as a frozenset."""
    out = {identity(n)}
    frontier = list(out)
    gens = list(elements)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mul(x, g)
                if y not in out:
                    out.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(out)


def all_subgroups(G):
    """Every subgroup is a join of cyclic subgroups; grow from those."""
    n = G.degree
    elems = list(G.elements())
    subs = {closure([g], n) for g in elems}
    frontier = set(subs)
    while frontier:
        new = set()
        for H in frontier:
            for g in elems:
                if g not in H:
                    K = closure(list(H) + [g], n)
                    if K not in subs:
                        new.add(K)
        subs |= new
        frontier = new
    return subs


# --- basics


def test_mul_applies_left_first():
    p = perm_from_cycles(3, [(1, 2)])
    q = perm_from_cycles(3, [(2, 3)])
    assert mul(p, q)[0] == q[p[0]]
    assert mul(p, inv(p)) == identity(3)


def test_orders():
    assert cyclic_group(4).order() == 4
    S5 = PermGroup(5, [perm_from_cycles(5, [(1, 2)]), perm_from_cycles(5, [(1, 2, 3, 4, 5)])])
    assert S5.order() == 120
    assert a5_regular().order() == 60


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_membership_of_random_products(seed):
    rng = random.Random(seed)
    G = catalogue()[rng.choice(sorted(catalogue()))]
    g = G.random_element(rng)
    assert G.contains(g)
    assert G.contains(mul(g, G.generators[0]))
    # a transposition lies in an even group only if the group is not even
    t = perm_from_cycles(G.degree, [(1, 2)])
    if G.is_even():
        assert not G.contains(t)


# --- block systems


def test_principal_examples():
    C4 = cyclic_group(4)
    assert principal_block_system(C4, 2) == B((1, 3), (2, 4))
    assert principal_block_system(C4, 1).num_blocks == 1
    assert principal_block_system(symmetric_group(4), 1).num_blocks == 1


def test_join_examples():
    a, b = B((1, 2), (3, 4)), B((1, 3), (2, 4))
    assert join_block_systems([a, b]).num_blocks == 1
    assert join_block_systems([a, a]) == a
    c = B((1, 2), (3, 4), (5, 6))
    d = B((1, 2), (3, 5), (4, 6))
    assert join_block_systems([c, d]) == B((1, 2), (3, 4, 5, 6))


partitions = st.lists(st.integers(0, 3), min_size=6, max_size=6).map(BlockSystem.from_labels)


@settings(max_examples=60, deadline=None)
@given(partitions, partitions, partitions)
def test_join_algebra(a, b, c):
    j = join_block_systems
    assert j([a, b]) == j([b, a])
    assert j([j([a, b]), c]) == j([a, j([b, c])])
    assert j([a, a]) == a
    assert a.refines(j([a, b])) and b.refines(j([a, b]))


def test_all_block_systems_examples():
    V4 = regular_representation(PermGroup(4, [(1, 0, 3, 2), (2, 3, 0, 1)]))
    systems = all_block_systems(V4)
    assert len(systems) == 3 and all(s.block_size == 2 for s in systems)
    assert all_block_systems(symmetric_group(5)) == []


@pytest.mark.parametrize("name", sorted(catalogue()))
def test_systems_are_invariant(name):
    G = catalogue()[name]
    for S in all_block_systems(G):
        assert not S.is_trivial()
        assert all(S.is_invariant(g) for g in G.generators)


@pytest.mark.parametrize("name,G", [
    ("C6", cyclic_group(6)),
    ("S3", symmetric_group(3)),
    ("D8", dihedral_group(4)),
    ("C2^3", catalogue()["C2^3"]),
    ("Q8", catalogue()["Q8"]),
    ("A4", alternating_group(4)),
    ("D10", dihedral_group(5)),
    ("C12", cyclic_group(12)),
    ("S4", symmetric_group(4)),
])
def test_regular_block_systems_match_subgroups(name, G):
    R = G if G.degree == G.order() else regular_representation(G)
    assert len(all_block_systems(R)) == len(all_subgroups(G)) - 2


def test_a5_regular_subgroup_count():
    assert len(all_subgroups(alternating_group(5))) - 2 == 57 == len(all_block_systems(a5_regular()))


def test_blocks_from_values():
    assert blocks_from_values([4, 13, 13, 4], 2) == B((1, 4), (2, 3))
    assert blocks_from_values([7, 7, 7], 1).num_blocks == 1
    assert blocks_from_values([1, 1, 2], 3) is None


# --- subgroups


def test_intersect_with_alternating():
    assert intersect_with_alternating(symmetric_group(4)).order() == 12
    A4 = alternating_group(4)
    assert intersect_with_alternating(A4).order() == 12
    H = intersect_with_alternating(cyclic_group(4))
    assert H.order() == 2 and H.contains(perm_from_cycles(4, [(1, 3), (2, 4)]))


def test_index2_examples():
    subs = index2_transitive_subgroups(symmetric_group(3))
    assert len(subs) == 1 and subs[0].order() == 3
    assert index2_transitive_subgroups(cyclic_group(4)) == []
    assert len(index2_subgroups(cyclic_group(4))) == 1


@pytest.mark.parametrize("name", ["S4", "D16", "C2^3", "S2wrS3", "C2xA4", "S3xS3", "Q8"])
def test_index2_outputs(name):
    G = catalogue()[name]
    for H in index2_subgroups(G):
        assert H.order() * 2 == G.order()
        assert all(G.contains(g) for g in H.generators)
    for H in index2_transitive_subgroups(G):
        assert H.is_transitive()
    # brute force count: index-2 subgroups of G among all subgroups
    subs = [S for S in all_subgroups(G) if 2 * len(S) == G.order()]
    assert len(subs) == len(index2_subgroups(G))


def test_index2_of_a5_times_c2():
    G = a5_times_c2()
    assert G.order() == 120
    subs = index2_transitive_subgroups(G)
    assert len(subs) == 1 and subs[0].order() == 60


def test_sign():
    assert sign(perm_from_cycles(4, [(1, 2)])) == -1
    assert sign(perm_from_cycles(4, [(1, 2, 3)])) == 1
