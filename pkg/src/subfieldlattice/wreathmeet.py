"""Intersection of wreath products through automorphisms of a colored graph.

Each block system contributes a vertex, one vertex per block and edges to
the points it contains.  Color-preserving automorphisms of that graph,
restricted to the point vertices, are exactly the permutations that map
every system's blocks onto blocks of the same system.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .permblocks import BlockSystem, PermGroup, identity


class SearchBudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class ColoredGraph:
    n_vertices: int
    edges: frozenset          # of frozenset({u, v})
    color: tuple[int, ...]

    def __post_init__(self):
        for e in self.edges:
            if not all(0 <= v < self.n_vertices for v in e):
                raise ValueError("edge references a missing vertex")
        if len(self.color) != self.n_vertices:
            raise ValueError("one color per vertex")

    def adjacency(self) -> list[list[int]]:
        adj = [[] for _ in range(self.n_vertices)]
        for e in self.edges:
            u, v = tuple(e)
            adj[u].append(v)
            adj[v].append(u)
        return adj


def build_incidence_graph(systems: Sequence[BlockSystem]) -> ColoredGraph:
    """Vertices: systems first, then blocks, then the n points."""
    if not systems:
        raise ValueError("need at least one block system")
    n = systems[0].degree
    if any(B.degree != n for B in systems):
        raise ValueError("mismatched degree")
    s = len(systems)
    nb = sum(B.num_blocks for B in systems)
    point0 = s + nb
    edges = set()
    colors = list(range(s)) + [s] * nb + [s + 1] * n
    v = s
    for k, B in enumerate(systems):
        for blk in B.blocks:
            edges.add(frozenset((k, v)))
            for x in blk:
                edges.add(frozenset((v, point0 + x)))
            v += 1
    return ColoredGraph(point0 + n, frozenset(edges), tuple(colors))


# ---------------------------------------------------------------------------
# individualization / refinement


def _refine(cells: list[tuple[int, ...]], adj) -> list[tuple[int, ...]]:
    """Iterated color refinement; output cell order depends only on structure."""
    while True:
        where = {}
        for i, c in enumerate(cells):
            for v in c:
                where[v] = i
        out = []
        for i, c in enumerate(cells):
            if len(c) == 1:
                out.append(c)
                continue
            sig = {}
            for v in c:
                counts = {}
                for u in adj[v]:
                    counts[where[u]] = counts.get(where[u], 0) + 1
                sig.setdefault(tuple(sorted(counts.items())), []).append(v)
            for key in sorted(sig):
                out.append(tuple(sig[key]))
        if len(out) == len(cells):
            return out
        cells = out


def _individualize(cells, v, adj):
    out = []
    for c in cells:
        if v in c:
            out.append((v,))
            out.append(tuple(x for x in c if x != v))
        else:
            out.append(c)
    return _refine(out, adj)


def _target(cells) -> int | None:
    for i, c in enumerate(cells):
        if len(c) > 1:
            return i
    return None


def _shape(cells):
    return tuple(len(c) for c in cells)


class _Search:
    def __init__(self, g: ColoredGraph, budget: int):
        self.g = g
        self.adj = g.adjacency()
        self.adjset = [set(a) for a in self.adj]
        self.budget = budget
        self.nodes = 0

    def initial(self):
        by = {}
        for v, c in enumerate(self.g.color):
            by.setdefault(c, []).append(v)
        return _refine([tuple(by[c]) for c in sorted(by)], self.adj)

    def tick(self):
        self.nodes += 1
        if self.nodes > self.budget:
            raise SearchBudgetExceeded("automorphism search exceeded its node budget")

    def is_automorphism(self, m) -> bool:
        col = self.g.color
        for v in range(self.g.n_vertices):
            if col[m[v]] != col[v]:
                return False
            if {m[u] for u in self.adj[v]} != self.adjset[m[v]]:
                return False
        return True

    def find(self, cells, first_path, level, leaf0):
        """A leaf below ``cells`` giving an automorphism relative to leaf0."""
        self.tick()
        if _shape(cells) != _shape(first_path[level]):
            return None
        t = _target(cells)
        if t is None:
            m = [0] * self.g.n_vertices
            for a, b in zip(leaf0, cells):
                m[a[0]] = b[0]
            m = tuple(m)
            return m if self.is_automorphism(m) else None
        for w in cells[t]:
            r = self.find(_individualize(cells, w, self.adj), first_path, level + 1, leaf0)
            if r is not None:
                return r
        return None


def _orbit(x, gens):
    seen = {x}
    queue = [x]
    for y in queue:
        for g in gens:
            z = g[y]
            if z not in seen:
                seen.add(z)
                queue.append(z)
    return seen


def colored_graph_automorphisms(g: ColoredGraph, budget: int = 10**6) -> list[tuple[int, ...]]:
    """Generators of the color-preserving automorphism group (on all vertices)."""
    S = _Search(g, budget)
    path = [S.initial()]
    chosen = []
    while (t := _target(path[-1])) is not None:
        v = path[-1][t][0]
        chosen.append((t, v))
        path.append(_individualize(path[-1], v, S.adj))
    leaf0 = path[-1]
    gens: list[tuple[int, ...]] = []
    for level in range(len(chosen) - 1, -1, -1):
        t, v = chosen[level]
        cells = path[level]
        orb = _orbit(v, gens)
        for w in cells[t]:
            if w in orb:
                continue
            r = S.find(_individualize(cells, w, S.adj), path, level + 1, leaf0)
            if r is not None:
                gens.append(r)
                orb = _orbit(v, gens)
    return gens


def wreath_intersection(systems: Sequence[BlockSystem], method: str = "graph", budget: int = 10**6) -> PermGroup:
    """Permutations of the points mapping every system's blocks to its blocks."""
    if not systems:
        raise ValueError("need at least one block system")
    n = systems[0].degree
    if method == "backtrack":
        return _group_from_elements(n, preserving_permutations(systems))
    if method != "graph":
        raise ValueError(f"unknown method {method!r}")
    g = build_incidence_graph(systems)
    p0 = g.n_vertices - n
    gens = []
    for a in colored_graph_automorphisms(g, budget):
        gens.append(tuple(a[p0 + x] - p0 for x in range(n)))
    return PermGroup(n, gens)


# ---------------------------------------------------------------------------
# direct fallback


def preserving_permutations(systems: Sequence[BlockSystem]) -> list[tuple[int, ...]]:
    """All permutations preserving every system, by backtracking over point images."""
    n = systems[0].degree
    bos = [B.block_of for B in systems]
    out = []
    img = [-1] * n
    used = [False] * n
    maps = [dict() for _ in systems]
    rmaps = [dict() for _ in systems]

    def rec(x):
        if x == n:
            out.append(tuple(img))
            return
        for y in range(n):
            if used[y]:
                continue
            added = []
            ok = True
            for k, bo in enumerate(bos):
                a, b = bo[x], bo[y]
                if a in maps[k]:
                    if maps[k][a] != b:
                        ok = False
                        break
                elif b in rmaps[k]:
                    ok = False
                    break
                else:
                    maps[k][a] = b
                    rmaps[k][b] = a
                    added.append(k)
            if ok:
                img[x] = y
                used[y] = True
                rec(x + 1)
                used[y] = False
            for k in added:
                b = maps[k].pop(bos[k][x])
                del rmaps[k][b]

    rec(0)
    return out


def _group_from_elements(n: int, elements) -> PermGroup:
    G = PermGroup(n, [])
    for e in elements:
        if not G.contains(e):
            G = PermGroup(n, G.generators + [e])
    return G
