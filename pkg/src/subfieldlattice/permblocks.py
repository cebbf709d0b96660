"""Permutation groups (base and strong generating set) and block systems.

Points are 0-based internally; permutations are tuples of images.  The
product ``mul(p, q)`` applies p first, then q.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Sequence

Perm = tuple


def identity(n: int) -> Perm:
    return tuple(range(n))


def is_identity(p: Perm) -> bool:
    return all(i == x for i, x in enumerate(p))


def mul(p: Perm, q: Perm) -> Perm:
    return tuple(q[x] for x in p)


def inv(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def perm_from_cycles(n: int, cycles: Iterable[Sequence[int]], one_based: bool = True) -> Perm:
    img = list(range(n))
    off = 1 if one_based else 0
    for cyc in cycles:
        c = [x - off for x in cyc]
        for i, x in enumerate(c):
            img[x] = c[(i + 1) % len(c)]
    if sorted(img) != list(range(n)):
        raise ValueError("cycles do not define a permutation")
    return tuple(img)


def cycles(p: Perm) -> list[list[int]]:
    seen = [False] * len(p)
    out = []
    for i in range(len(p)):
        if not seen[i]:
            cyc = []
            j = i
            while not seen[j]:
                seen[j] = True
                cyc.append(j)
                j = p[j]
            out.append(cyc)
    return out


def cycle_type(p: Perm) -> tuple[int, ...]:
    return tuple(sorted(len(c) for c in cycles(p)))


def sign(p: Perm) -> int:
    return -1 if (len(p) - len(cycles(p))) % 2 else 1


def format_perm(p: Perm) -> str:
    parts = ["(" + " ".join(str(x + 1) for x in c) + ")" for c in cycles(p) if len(c) > 1]
    return "".join(parts) or "()"


def perm_order(p: Perm) -> int:
    from math import lcm

    return lcm(*cycle_type(p)) if p else 1


# ---------------------------------------------------------------------------


class PermGroup:
    """A permutation group of degree n given by generators.

    The base and strong generating set is computed lazily by the
    deterministic incremental Schreier-Sims algorithm.
    """

    def __init__(self, degree: int, generators: Iterable[Perm] = ()):
        self.degree = degree
        gens = []
        seen = set()
        for g in generators:
            g = tuple(g)
            if len(g) != degree:
                raise ValueError("generator of wrong degree")
            if not is_identity(g) and g not in seen:
                seen.add(g)
                gens.append(g)
        self.generators = gens
        self._base: list[int] | None = None
        self._levels: list[dict] = []
        self._strong: list[list[Perm]] = []

    def __repr__(self):
        return f"PermGroup(degree={self.degree}, order={self.order()})"

    # -- Schreier-Sims ------------------------------------------------------

    def _transversal(self, b: int, gens: list[Perm]) -> dict:
        trans = {b: identity(self.degree)}
        queue = [b]
        for x in queue:
            u = trans[x]
            for g in gens:
                y = g[x]
                if y not in trans:
                    trans[y] = mul(u, g)
                    queue.append(y)
        return trans

    def _strip(self, h: Perm, base, levels) -> tuple[Perm, int]:
        for lvl, b in enumerate(base):
            x = h[b]
            if x == b:
                continue
            u = levels[lvl].get(x)
            if u is None:
                return h, lvl
            h = mul(h, inv(u))
        return h, len(base)

    def _ensure_bsgs(self):
        if self._base is not None:
            return
        n = self.degree
        base: list[int] = []
        gens = list(self.generators)
        for g in gens:
            if all(g[b] == b for b in base):
                base.append(next(x for x in range(n) if g[x] != x))
        strong = [[g for g in gens if all(g[b] == b for b in base[:i])] for i in range(len(base))]
        levels = [self._transversal(base[i], strong[i]) for i in range(len(base))]
        i = len(base) - 1
        while i >= 0:
            restart = False
            for beta, u_beta in list(levels[i].items()):
                for g in strong[i]:
                    u1 = levels[i][g[beta]]
                    g1 = mul(u_beta, g)
                    if g1 == u1:
                        continue
                    h, j = self._strip(mul(g1, inv(u1)), base, levels)
                    if j == len(base) and is_identity(h):
                        continue
                    if j == len(base):
                        base.append(next(x for x in range(n) if h[x] != x))
                        strong.append([])
                        levels.append({base[-1]: identity(n)})
                    for l in range(i + 1, j + 1):
                        strong[l].append(h)
                        levels[l] = self._transversal(base[l], strong[l])
                    i = j
                    restart = True
                    break
                if restart:
                    break
            if not restart:
                i -= 1
        self._base = base
        self._levels = levels
        self._strong = strong

    @property
    def base(self) -> list[int]:
        self._ensure_bsgs()
        return list(self._base)

    def transversals(self) -> list[dict]:
        self._ensure_bsgs()
        return self._levels

    def order(self) -> int:
        self._ensure_bsgs()
        o = 1
        for t in self._levels:
            o *= len(t)
        return o

    def contains(self, g: Perm) -> bool:
        self._ensure_bsgs()
        h, j = self._strip(tuple(g), self._base, self._levels)
        return j == len(self._base) and is_identity(h)

    __contains__ = contains

    def random_element(self, rng: random.Random) -> Perm:
        self._ensure_bsgs()
        g = identity(self.degree)
        for t in reversed(self._levels):
            g = mul(g, rng.choice(list(t.values())))
        return g

    def elements(self) -> Iterator[Perm]:
        self._ensure_bsgs()
        levels = [list(t.values()) for t in self._levels]
        if not levels:
            yield identity(self.degree)
            return
        for combo in itertools.product(*reversed(levels)):
            g = identity(self.degree)
            for u in combo:
                g = mul(g, u)
            yield g

    # -- orbits -------------------------------------------------------------

    def orbit(self, x: int) -> list[int]:
        seen = {x}
        queue = [x]
        for y in queue:
            for g in self.generators:
                z = g[y]
                if z not in seen:
                    seen.add(z)
                    queue.append(z)
        return sorted(seen)

    def is_transitive(self) -> bool:
        return len(self.orbit(0)) == self.degree

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return all(other.contains(g) for g in self.generators)

    def is_even(self) -> bool:
        return all(sign(g) == 1 for g in self.generators)


def symmetric_group(n: int) -> PermGroup:
    if n <= 1:
        return PermGroup(max(n, 1), [])
    gens = [perm_from_cycles(n, [(1, 2)])]
    if n > 2:
        gens.append(perm_from_cycles(n, [tuple(range(1, n + 1))]))
    return PermGroup(n, gens)


def alternating_group(n: int) -> PermGroup:
    if n <= 2:
        return PermGroup(max(n, 1), [])
    return PermGroup(n, [perm_from_cycles(n, [(1, 2, k)]) for k in range(3, n + 1)])


# ---------------------------------------------------------------------------
# block systems


@dataclass(frozen=True)
class BlockSystem:
    """A partition of {0..n-1}, canonically ordered.

    Block systems of transitive groups have equal-sized blocks; joins of
    arbitrary partitions need not, so uniformity is checked on demand.
    """

    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        canon = tuple(sorted(tuple(sorted(b)) for b in self.blocks))
        object.__setattr__(self, "blocks", canon)
        pts = [x for b in canon for x in b]
        if not canon or not all(canon) or sorted(pts) != list(range(len(pts))):
            raise ValueError("not a partition of 0..n-1")

    @property
    def is_uniform(self) -> bool:
        return len({len(b) for b in self.blocks}) == 1

    @classmethod
    def from_labels(cls, labels: Sequence) -> "BlockSystem":
        groups: dict = {}
        for i, lab in enumerate(labels):
            groups.setdefault(lab, []).append(i)
        return cls(tuple(tuple(g) for g in groups.values()))

    @property
    def degree(self) -> int:
        return sum(len(b) for b in self.blocks)

    @property
    def block_size(self) -> int:
        if not self.is_uniform:
            raise ValueError("blocks have different sizes")
        return len(self.blocks[0])

    @property
    def num_blocks(self) -> int:
        return len(self.blocks)

    @property
    def block_of(self) -> tuple[int, ...]:
        out = [0] * self.degree
        for k, b in enumerate(self.blocks):
            for x in b:
                out[x] = k
        return tuple(out)

    def first_block(self) -> tuple[int, ...]:
        return self.blocks[0]

    def is_trivial(self) -> bool:
        return self.num_blocks in (1, self.degree)

    def is_invariant(self, g: Perm) -> bool:
        bo = self.block_of
        for b in self.blocks:
            k = bo[g[b[0]]]
            if any(bo[g[x]] != k for x in b):
                return False
        return True

    def refines(self, other: "BlockSystem") -> bool:
        bo = other.block_of
        return all(len({bo[x] for x in b}) == 1 for b in self.blocks)

    def action(self, g: Perm) -> Perm:
        """Permutation induced by g on the blocks."""
        bo = self.block_of
        return tuple(bo[g[b[0]]] for b in self.blocks)

    def one_based(self) -> list[list[int]]:
        return [[x + 1 for x in b] for b in self.blocks]

    def shape(self) -> tuple[int, int]:
        return (self.num_blocks, self.block_size)


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        return True

    def labels(self):
        return [self.find(x) for x in range(len(self.parent))]


def minimal_block_system(n: int, generators: Sequence[Perm], pairs: Iterable[tuple[int, int]]) -> BlockSystem:
    """Finest partition invariant under the generators that joins every given pair."""
    uf = _UnionFind(n)
    queue = []
    for a, b in pairs:
        if uf.union(a, b):
            queue.append((a, b))
    while queue:
        a, b = queue.pop()
        for g in generators:
            x, y = g[a], g[b]
            if uf.union(x, y):
                queue.append((x, y))
    return BlockSystem.from_labels(uf.labels())


def principal_block_system(G: PermGroup, j: int, i: int = 0) -> BlockSystem:
    """The block system generated by the pair (i, j) (0-based points)."""
    if not G.is_transitive():
        raise ValueError("principal block systems need a transitive group")
    return minimal_block_system(G.degree, G.generators, [(i, j)])


def principal_block_systems(G: PermGroup) -> list[BlockSystem]:
    """All nontrivial principal block systems of a transitive group."""
    out = []
    seen = set()
    for j in range(1, G.degree):
        B = principal_block_system(G, j)
        if not B.is_trivial() and B not in seen:
            seen.add(B)
            out.append(B)
    return out


def join_block_systems(systems: Sequence[BlockSystem]) -> BlockSystem:
    """Finest common coarsening: connected components of the union graph."""
    if not systems:
        raise ValueError("nothing to join")
    n = systems[0].degree
    if any(B.degree != n for B in systems):
        raise ValueError("mismatched degree")
    uf = _UnionFind(n)
    for B in systems:
        for b in B.blocks:
            for x in b[1:]:
                uf.union(b[0], x)
    return BlockSystem.from_labels(uf.labels())


def all_block_systems(G: PermGroup) -> list[BlockSystem]:
    """All nontrivial block systems of a transitive group."""
    found = principal_block_systems(G)
    known = set(found)
    work = list(found)
    while work:
        B = work.pop()
        for C in list(found):
            J = join_block_systems([B, C])
            if not J.is_trivial() and J not in known:
                known.add(J)
                found.append(J)
                work.append(J)
    return sorted(found, key=lambda B: (B.block_size, B.blocks))


def blocks_from_values(values: Sequence, m: int) -> BlockSystem | None:
    """Group indices by equal value; None unless exactly m classes of equal size."""
    groups: dict = {}
    for i, v in enumerate(values):
        groups.setdefault(v, []).append(i)
    n = len(values)
    if len(groups) != m or n % m or any(len(g) != n // m for g in groups.values()):
        return None
    return BlockSystem(tuple(tuple(g) for g in groups.values()))


# ---------------------------------------------------------------------------
# subgroups of index at most two


def kernel_of_character(G: PermGroup, chi: Callable[[Perm], int]) -> PermGroup:
    """Kernel of a homomorphism G -> {+1, -1} given on elements.

    Schreier generators for the transversal {1, t} with chi(t) = -1.
    """
    odd = [g for g in G.generators if chi(g) == -1]
    if not odd:
        return G
    t = odd[0]
    ti = inv(t)
    gens = []
    for s in G.generators:
        if chi(s) == 1:
            gens.append(s)
            gens.append(mul(mul(t, s), ti))
        else:
            gens.append(mul(s, ti))
            gens.append(mul(t, s))
    return PermGroup(G.degree, gens)


def intersect_with_alternating(G: PermGroup) -> PermGroup:
    return kernel_of_character(G, sign)


def normal_closure(G: PermGroup, elements: Iterable[Perm]) -> PermGroup:
    gens = [e for e in elements if not is_identity(e)]
    N = PermGroup(G.degree, gens)
    queue = list(gens)
    while queue:
        x = queue.pop()
        for g in G.generators:
            y = mul(mul(inv(g), x), g)
            if not N.contains(y):
                gens.append(y)
                N = PermGroup(G.degree, gens)
                queue.append(y)
    return N


class BudgetExceeded(RuntimeError):
    pass


def index2_subgroups(G: PermGroup, budget: int = 10**6) -> list[PermGroup]:
    """All subgroups of index 2 (kernels of the surjections G -> C_2)."""
    if G.order() > budget:
        raise BudgetExceeded("group order exceeds the enumeration budget")
    gens = G.generators
    seeds = [mul(g, g) for g in gens]
    for a, b in itertools.combinations(gens, 2):
        seeds.append(mul(mul(inv(a), inv(b)), mul(a, b)))
    K = normal_closure(G, seeds)
    basis: list[Perm] = []
    span = K
    for g in gens:
        if not span.contains(g):
            basis.append(g)
            span = PermGroup(G.degree, span.generators + [g])
    r = len(basis)
    # coordinates of every generator in G/K = F_2^r
    coords = {}
    for g in gens:
        for vec in itertools.product((0, 1), repeat=r):
            h = g
            for v, b in zip(vec, basis):
                if v:
                    h = mul(h, b)
            if K.contains(h):
                coords[g] = vec
                break
    out = []
    for chi in itertools.product((0, 1), repeat=r):
        if not any(chi):
            continue

        def character(g, chi=chi):
            return -1 if sum(c * v for c, v in zip(chi, coords[g])) % 2 else 1

        H = kernel_of_character(G, character)
        H = PermGroup(G.degree, H.generators + K.generators)
        out.append(H)
    return out


def index2_transitive_subgroups(G: PermGroup, budget: int = 10**6) -> list[PermGroup]:
    return [H for H in index2_subgroups(G, budget) if H.is_transitive()]
