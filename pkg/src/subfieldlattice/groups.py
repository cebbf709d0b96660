"""Small catalogue of transitive permutation groups built from generators.

Used by the tests, by the simulation harness and by ``--group-spec``.
"""

from __future__ import annotations

import re

from .permblocks import (
    PermGroup,
    alternating_group,
    identity,
    mul,
    perm_from_cycles,
    symmetric_group,
)


def cyclic_group(n: int) -> PermGroup:
    return PermGroup(n, [tuple((i + 1) % n for i in range(n))])


def dihedral_group(n: int) -> PermGroup:
    """Symmetries of the n-gon, order 2n, acting on n vertices."""
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((-i) % n for i in range(n))
    return PermGroup(n, [rot, ref])


def affine_group(p: int) -> PermGroup:
    """AGL(1, p) acting on F_p."""
    g = next(a for a in range(2, p) if all(pow(a, (p - 1) // q, p) != 1 for q in _prime_factors(p - 1))) if p > 2 else 1
    return PermGroup(p, [tuple((x + 1) % p for x in range(p)), tuple(g * x % p for x in range(p))])


def frobenius_group(p: int, k: int) -> PermGroup:
    """x -> a x + b with a in the order-k subgroup of F_p^*."""
    if (p - 1) % k:
        raise ValueError("k must divide p - 1")
    g = next(a for a in range(2, p) if all(pow(a, (p - 1) // q, p) != 1 for q in _prime_factors(p - 1)))
    a = pow(g, (p - 1) // k, p)
    return PermGroup(p, [tuple((x + 1) % p for x in range(p)), tuple(a * x % p for x in range(p))])


def _prime_factors(m: int) -> list[int]:
    out, q = [], 2
    while q * q <= m:
        if m % q == 0:
            out.append(q)
            while m % q == 0:
                m //= q
        q += 1
    if m > 1:
        out.append(m)
    return out


def regular_representation(G: PermGroup, extra_left=()) -> PermGroup:
    """Right-regular action of G on its own elements.

    ``extra_left`` elements act by left multiplication, which commutes with
    the right-regular action.
    """
    elems = sorted(G.elements())
    index = {g: i for i, g in enumerate(elems)}
    gens = [tuple(index[mul(x, s)] for x in elems) for s in G.generators]
    gens += [tuple(index[mul(z, x)] for x in elems) for z in extra_left]
    return PermGroup(len(elems), gens)


def a5_regular() -> PermGroup:
    return regular_representation(alternating_group(5))


def a5_times_c2() -> PermGroup:
    """A5 x C2 acting transitively on 60 points."""
    return regular_representation(alternating_group(5), [perm_from_cycles(5, [(1, 2), (3, 4)])])


def direct_product(G: PermGroup, H: PermGroup) -> PermGroup:
    """Product action on pairs (x, y) encoded as x * deg(H) + y."""
    k, l = G.degree, H.degree
    gens = []
    for g in G.generators:
        gens.append(tuple(g[x] * l + y for x in range(k) for y in range(l)))
    for h in H.generators:
        gens.append(tuple(x * l + h[y] for x in range(k) for y in range(l)))
    return PermGroup(k * l, gens)


def wreath_product(G: PermGroup, H: PermGroup) -> PermGroup:
    """Imprimitive wreath product G wr H: H permutes deg(H) blocks of deg(G) points."""
    k, l = G.degree, H.degree
    n = k * l
    gens = []
    for g in G.generators:
        gens.append(tuple(g[i] if b == 0 else b * k + i for b in range(l) for i in range(k)))
    for h in H.generators:
        gens.append(tuple(h[b] * k + i for b in range(l) for i in range(k)))
    if not gens:
        gens = [identity(n)]
    return PermGroup(n, gens)


def psl2_5_on_6() -> PermGroup:
    """PSL(2,5) acting on the projective line over F_5."""
    # points 0..4 and infinity = 5
    inf = 5

    def moebius(a, b, c, d):
        img = []
        for x in range(6):
            if x == inf:
                img.append(a * pow(c, -1, 5) % 5 if c % 5 else inf)
                continue
            den = (c * x + d) % 5
            img.append(inf if den == 0 else (a * x + b) * pow(den, -1, 5) % 5)
        return tuple(img)

    return PermGroup(6, [moebius(1, 1, 0, 1), moebius(0, 4, 1, 0), moebius(4, 0, 0, 4 * 4 % 5)])


def elementary_abelian_2_regular(r: int) -> PermGroup:
    """C2^r in its regular representation on 2^r points (xor action)."""
    n = 1 << r
    return PermGroup(n, [tuple(x ^ (1 << i) for x in range(n)) for i in range(r)])


_ALIASES = {
    "c2^3-regular": lambda: elementary_abelian_2_regular(3),
    "v4-regular": lambda: elementary_abelian_2_regular(2),
    "c7:c3-regular": lambda: regular_representation(frobenius_group(7, 3)),
    "f21-regular": lambda: regular_representation(frobenius_group(7, 3)),
    "q8-regular": lambda: catalogue()["Q8"],
    "a5-regular": a5_regular,
}

_SPEC = re.compile(r"^([A-Za-z]+)(\d+)$")


def parse_group_spec(spec: str) -> PermGroup:
    """Build a group from a short description.

    Accepted forms: ``S5``, ``A5``, ``C6``, ``D8`` (order 8, on 4 points),
    ``AGL7``, ``F21`` (Frobenius group of order 21), ``A5reg``, ``A5xC2``,
    ``wr:S2,S3``, ``x:C2,C3``, the aliases ``c2^3-regular``, ``c7:c3-regular``,
    ``v4-regular``, ``q8-regular`` and explicit generators
    ``gens:8:(1,2,3)(4,5);(1,8)`` (degree first, cycles 1-based).
    """
    spec = spec.strip()
    if spec.startswith("gens:"):
        _, deg, rest = spec.split(":", 2)
        n = int(deg)
        gens = []
        for part in rest.split(";"):
            cyc = [tuple(int(x) for x in c.replace(" ", ",").split(",") if x)
                   for c in re.findall(r"\(([^)]*)\)", part)]
            gens.append(perm_from_cycles(n, cyc))
        return PermGroup(n, gens)
    if spec.startswith("wr:") or spec.startswith("x:"):
        kind, rest = spec.split(":", 1)
        a, b = rest.split(",")
        G, H = parse_group_spec(a), parse_group_spec(b)
        return wreath_product(G, H) if kind == "wr" else direct_product(G, H)
    low = spec.lower()
    if low in _ALIASES:
        return _ALIASES[low]()
    if spec == "A5reg":
        return a5_regular()
    if spec == "A5xC2":
        return a5_times_c2()
    if spec == "PSL25":
        return psl2_5_on_6()
    m = _SPEC.match(spec)
    if not m:
        raise ValueError(f"unrecognised group spec {spec!r}")
    kind, k = m.group(1), int(m.group(2))
    if kind == "S":
        return symmetric_group(k)
    if kind == "A":
        return alternating_group(k)
    if kind == "C":
        return cyclic_group(k)
    if kind == "D":
        if k % 2:
            raise ValueError("dihedral groups are named by their (even) order")
        return dihedral_group(k // 2)
    if kind == "AGL":
        return affine_group(k)
    if kind == "F":
        for p in range(3, k + 1):
            if k % p == 0 and (p - 1) % (k // p) == 0:
                return frobenius_group(p, k // p)
        raise ValueError(f"no Frobenius group of order {k}")
    raise ValueError(f"unrecognised group spec {spec!r}")


def catalogue() -> dict[str, PermGroup]:
    """Transitive groups of degree at most 12 used for exhaustive checks."""
    c = {}
    for n in range(2, 13):
        c[f"C{n}"] = cyclic_group(n)
    for n in range(3, 13):
        c[f"D{2 * n}"] = dihedral_group(n)
    for n in range(3, 8):
        c[f"S{n}"] = symmetric_group(n)
        c[f"A{n}"] = alternating_group(n)
    for p in (5, 7, 11):
        c[f"AGL{p}"] = affine_group(p)
    c["F21"] = frobenius_group(7, 3)
    c["F55"] = frobenius_group(11, 5)
    c["PSL25"] = psl2_5_on_6()
    c["V4"] = regular_representation(PermGroup(4, [(1, 0, 3, 2), (2, 3, 0, 1)]))
    c["C2^3"] = regular_representation(PermGroup(6, [(1, 0, 2, 3, 4, 5), (0, 1, 3, 2, 4, 5), (0, 1, 2, 3, 5, 4)]))
    c["Q8"] = regular_representation(PermGroup(8, [perm_from_cycles(8, [(1, 2, 3, 4), (5, 6, 7, 8)]),
                                                   perm_from_cycles(8, [(1, 5, 3, 7), (2, 8, 4, 6)])]))
    c["C2wrC2"] = wreath_product(cyclic_group(2), cyclic_group(2))
    c["S2wrS3"] = wreath_product(symmetric_group(2), symmetric_group(3))
    c["S3wrS2"] = wreath_product(symmetric_group(3), symmetric_group(2))
    c["C3wrC3"] = wreath_product(cyclic_group(3), cyclic_group(3))
    c["S2wrS4"] = wreath_product(symmetric_group(2), symmetric_group(4))
    c["S4wrS2"] = wreath_product(symmetric_group(4), symmetric_group(2))
    c["C2wrC5"] = wreath_product(cyclic_group(2), cyclic_group(5))
    c["S3wrS3"] = wreath_product(symmetric_group(3), symmetric_group(3))
    c["C2wrC2wrC2"] = wreath_product(cyclic_group(2), wreath_product(cyclic_group(2), cyclic_group(2)))
    c["C3xS3"] = direct_product(cyclic_group(3), symmetric_group(3))
    c["S3xS3"] = direct_product(symmetric_group(3), symmetric_group(3))
    c["C2xA4"] = direct_product(cyclic_group(2), alternating_group(4))
    c["A4xC3"] = direct_product(alternating_group(4), cyclic_group(3))
    c["S4xC2"] = direct_product(symmetric_group(4), cyclic_group(2))
    c["C2wrS3"] = wreath_product(cyclic_group(2), symmetric_group(3))
    c["S2wrA4"] = wreath_product(symmetric_group(2), alternating_group(4))
    c["S2wrS5"] = wreath_product(symmetric_group(2), symmetric_group(5))
    c["S4wrS3"] = wreath_product(symmetric_group(4), symmetric_group(3))
    c["C12reg"] = cyclic_group(12)
    return c
