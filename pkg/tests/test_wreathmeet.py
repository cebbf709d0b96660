import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from subfieldlattice.groups import wreath_product, symmetric_group
from subfieldlattice.permblocks import BlockSystem, PermGroup, all_block_systems
from subfieldlattice.wreathmeet import (
    ColoredGraph,
    SearchBudgetExceeded,
    build_incidence_graph,
    colored_graph_automorphisms,
    preserving_permutations,
    wreath_intersection,
)


def B(*blocks):
    return BlockSystem(tuple(tuple(x - 1 for x in b) for b in blocks))


def f18_like_systems():
    # points (a, b, c) in Z2 x Z3 x Z3; quadratic blocks by a, cubic by b, sextic by (a, b)
    pts = list(itertools.product(range(2), range(3), range(3)))
    by = lambda key: BlockSystem.from_labels([key(p) for p in pts])
    return [by(lambda p: p[0]), by(lambda p: p[1]), by(lambda p: (p[0], p[1]))]


def graph_group_order(g: ColoredGraph) -> int:
    return PermGroup(g.n_vertices, colored_graph_automorphisms(g) or [tuple(range(g.n_vertices))]).order()


def test_incidence_graph_sizes():
    g = build_incidence_graph([B((1, 2), (3, 4))])
    assert g.n_vertices == 7 and len(g.edges) == 6
    g = build_incidence_graph([B((1, 2), (3, 4)), B((1, 3), (2, 4))])
    assert g.n_vertices == 10
    g = build_incidence_graph(f18_like_systems())
    assert g.n_vertices == 32


def test_small_graph_automorphisms():
    assert graph_group_order(ColoredGraph(3, frozenset(), (0, 0, 0))) == 6
    path = ColoredGraph(3, frozenset({frozenset({0, 1}), frozenset({1, 2})}), (0, 1, 0))
    assert graph_group_order(path) == 2


def test_single_system_gives_wreath_product():
    G = wreath_intersection([B((1, 2), (3, 4))])
    assert G.order() == 8
    assert G.order() == len(preserving_permutations([B((1, 2), (3, 4))]))


def test_two_systems_give_klein_group():
    G = wreath_intersection([B((1, 2), (3, 4)), B((1, 3), (2, 4))])
    assert sorted(G.elements()) == sorted([(0, 1, 2, 3), (1, 0, 3, 2), (2, 3, 0, 1), (3, 2, 1, 0)])


def test_f18_shaped_intersection():
    systems = f18_like_systems()
    assert sorted(S.shape() for S in systems) == [(2, 9), (3, 6), (6, 3)]
    assert wreath_intersection(systems).order() == 559872


def test_budget():
    with pytest.raises(SearchBudgetExceeded):
        wreath_intersection([B((1, 2), (3, 4), (5, 6), (7, 8))], budget=2)


def test_rejects_bad_input():
    with pytest.raises(ValueError):
        wreath_intersection([])
    with pytest.raises(ValueError):
        wreath_intersection([B((1, 2), (3, 4)), B((1, 2, 3), (4, 5, 6))])


def random_uniform_partition(n, k, rng):
    pts = list(range(n))
    rng.shuffle(pts)
    return BlockSystem(tuple(tuple(pts[i:i + k]) for i in range(0, n, k)))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([4, 6, 8]), st.integers(1, 3), st.integers(0, 10**6))
def test_random_partitions_against_brute_force(n, count, seed):
    rng = random.Random(seed)
    divs = [k for k in range(2, n) if n % k == 0]
    systems = [random_uniform_partition(n, rng.choice(divs), rng) for _ in range(count)]
    G = wreath_intersection(systems)
    assert set(G.elements()) == set(preserving_permutations(systems))
    for g in G.generators:
        assert all(S.is_invariant(g) for S in systems)


@pytest.mark.parametrize("k,m", [(2, 2), (2, 3), (3, 2), (2, 4)])
def test_contains_generating_group(k, m):
    G = wreath_product(symmetric_group(k), symmetric_group(m))
    rng = random.Random(k * 10 + m)
    perm = list(range(G.degree))
    rng.shuffle(perm)
    conj = PermGroup(G.degree, [tuple(perm[g[perm.index(x)]] for x in range(G.degree)) for g in G.generators])
    systems = all_block_systems(conj)
    W = wreath_intersection(systems)
    assert all(W.contains(g) for g in conj.generators)
    assert W.order() % conj.order() == 0
