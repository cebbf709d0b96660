"""Block systems <-> explicit subfields.

A subfield K of L = Q[x]/(f) is given by a defining polynomial g and an
embedding h with g(h(x)) = 0 mod f.  Both are computed from p-adic root
approximations and a product block invariant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .padic import SplittingContext, UnramifiedRing, build_splitting_context, raise_precision
from .permblocks import BlockSystem, blocks_from_values, minimal_block_system
from .polyarith import (
    IntPoly,
    _trim,
    discriminant,
    divmod_q,
    factor_over_Z,
    fujiwara_bound,
    gcd_z,
    pinv_mod,
    pmul,
    prem_mod,
    psub,
    poly_exact_sqrt,
    resultant,
    symmetric,
)


class DegenerateInvariant(RuntimeError):
    pass


class EmbeddingFailed(RuntimeError):
    pass


@dataclass
class SubfieldRecord:
    g: IntPoly
    h: tuple                       # Fractions, constant term first
    blocks: BlockSystem
    principal_proven: bool = False
    invariant_shift: int = 0
    notes: dict = field(default_factory=dict)

    @property
    def degree(self) -> int:
        return self.g.degree

    def is_rational(self) -> bool:
        return self.g.degree <= 1


# ---------------------------------------------------------------------------
# rational polynomial arithmetic modulo a monic integer f


def qmul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def qrem(a, f: IntPoly):
    return divmod_q(a, f.coeffs)[1]


def qcompose_mod(g: Sequence, h: Sequence, f: IntPoly):
    """g(h(x)) mod f over Q."""
    acc: list = []
    for c in reversed(list(g)):
        acc = qrem(qmul(acc, h), f)
        acc = list(acc) or [Fraction(0)]
        acc[0] += c
        acc = _trim(acc)
    return acc


@lru_cache(maxsize=64)
def _inverse_mod_f(a: tuple, fcoeffs: tuple) -> tuple:
    """Inverse of a modulo f over Q (extended Euclid)."""
    r0, r1 = [Fraction(c) for c in fcoeffs], [Fraction(c) for c in a]
    s0, s1 = [], [Fraction(1)]
    _trim(r1)
    while len(r1) > 1:
        q, r = divmod_q(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _qsub(s0, qmul(q, s1))
    if not r1:
        raise ZeroDivisionError("not invertible modulo f")
    c = r1[0]
    return tuple(x / c for x in qrem(s1, IntPoly(fcoeffs)))


def _qsub(a, b):
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def is_embedding(f: IntPoly, g: IntPoly, h: Sequence) -> bool:
    return not qcompose_mod(g.coeffs, list(h), f)


def squarefree_kernel(z: int) -> int:
    """Squarefree part of a nonzero integer, sign kept."""
    if z == 0:
        raise ValueError("zero has no square class")
    sgn = -1 if z < 0 else 1
    z = abs(z)
    out = 1
    d = 2
    while d * d <= z:
        e = 0
        while z % d == 0:
            z //= d
            e += 1
        if e % 2:
            out *= d
        d += 1
    return sgn * out * z


def square_class(g: IntPoly) -> int:
    return squarefree_kernel(discriminant(g))


# ---------------------------------------------------------------------------
# block invariants and the defining polynomial


def _block_products(R: UnramifiedRing, roots, blocks: BlockSystem, s: int) -> list:
    out = []
    for b in blocks.blocks:
        v = R.one()
        for i in b:
            v = R.mul(v, R.sub(R.reduce(roots[i]), R.from_int(s)))
        out.append(v)
    return out


def choose_block_invariant(ctx: SplittingContext, blocks: BlockSystem, trial_cap: int = 64) -> int:
    """Smallest s >= 0 making the block products prod(r_i - s) pairwise distinct."""
    n = ctx.n
    limit = n * n * trial_cap
    full = ctx.prime <= n * n
    R = ctx.ring() if full else ctx.ring(1)
    for s in range(limit + 1):
        vals = _block_products(R, ctx.roots, blocks, s)
        if len(set(vals)) == len(vals):
            return s
    raise DegenerateInvariant("no non-degenerate block invariant found")


def invariant_bounds(f: IntPoly, blocks: BlockSystem, s: int) -> tuple[Fraction, Fraction, Fraction]:
    """Root bound C, block value bound C' and coefficient bound C'' for g."""
    C = fujiwara_bound(f)
    C1 = (C + abs(s)) ** blocks.block_size
    C2 = (C1 + 1) ** blocks.num_blocks
    return C, C1, C2


def precision_for(bound, p: int) -> int:
    """Smallest a with p^a > 2 * bound."""
    a, m = 1, p
    while m <= 2 * bound:
        a += 1
        m *= p
    return a


def subfield_poly_from_blocks(ctx: SplittingContext, blocks: BlockSystem, s: int) -> IntPoly:
    """Integer polynomial prod_k (X - I_k) of the block invariant values."""
    if not ctx.f.lc == 1:
        raise ValueError("subfield reconstruction needs a monic f")
    _, _, C2 = invariant_bounds(ctx.f, blocks, s)
    a = precision_for(C2, ctx.prime)
    if a > ctx.precision:
        ctx = raise_precision(ctx, a)
    R = ctx.ring()
    vals = _block_products(R, ctx.roots, blocks, s)
    if len(set(R.residue_key(v) for v in vals)) != len(vals) and len(set(vals)) != len(vals):
        raise DegenerateInvariant("block values coincide")
    g = [R.one()]
    for v in vals:
        nxt = [R.zero()] * (len(g) + 1)
        for i, c in enumerate(g):
            nxt[i + 1] = R.add(nxt[i + 1], c)
            nxt[i] = R.sub(nxt[i], R.mul(c, v))
        g = nxt
    coeffs = []
    for c in g:
        if not R.is_rational(c):
            raise DegenerateInvariant("block values are not Galois-stable")
        coeffs.append(symmetric(c[0], R.m))
    return IntPoly(coeffs)


# ---------------------------------------------------------------------------
# embedding


def _residue_interpolation(ctx: SplittingContext, values) -> list[int]:
    """h0 over F_p with h0(r_i) = values[i] in the residue field."""
    R = ctx.ring(1)
    p = ctx.prime
    roots = [R.reduce(r) for r in ctx.roots]
    n = len(roots)
    fp = [R.from_int(c) for c in ctx.f.coeffs]
    df = ctx.f.derivative().coeffs
    acc = [R.zero()] * n
    for r, y in zip(roots, values):
        # synthetic division f / (x - r)
        q = [R.zero()] * n
        carry = R.zero()
        for k in range(n, 0, -1):
            carry = R.add(R.mul(carry, r), fp[k])
            q[k - 1] = carry
        w = R.mul(R.reduce(y), R.inv(R.eval_poly(df, r)))
        for k in range(n):
            acc[k] = R.add(acc[k], R.mul(q[k], w))
    out = []
    for c in acc:
        if not R.is_rational(c):
            raise EmbeddingFailed("interpolation is not defined over F_p")
        out.append(c[0] % p)
    return out


def _compose_mod(g: Sequence[int], h, f, m):
    acc: list = []
    for c in reversed(list(g)):
        acc = prem_mod(pmul(acc, h, m), f, m) if acc else []
        acc = list(acc) or [0]
        acc[0] = (acc[0] + c) % m
        acc = _trim(acc)
    return acc


def embedding_bound(f: IntPoly, blocks: BlockSystem, s: int) -> Fraction:
    """Bound on the integer coefficients of h * f' mod f."""
    C, C1, _ = invariant_bounds(f, blocks, s)
    n = f.degree
    return n * C1 * f.norm1() * max(Fraction(1), C) ** (n - 1)


def embedding_newton(ctx: SplittingContext, g: IntPoly, blocks: BlockSystem, s: int,
                     precision_cap: int = 1 << 14, headroom: int = 10**6,
                     history: list | None = None) -> tuple:
    """Embedding h with h(r_i) = I_k for i in B_k, by quadratic Newton lifting."""
    f = ctx.f
    p = ctx.prime
    R1 = ctx.ring(1)
    bo = blocks.block_of
    vals = _block_products(R1, ctx.roots, blocks, s)
    h = _residue_interpolation(ctx, [vals[bo[i]] for i in range(ctx.n)])
    fc = list(f.coeffs)
    dg = g.derivative().coeffs
    v = pinv_mod(_compose_mod(dg, h, fc, p), [c % p for c in fc], p)
    df = list(f.derivative().coeffs)
    finv = _inverse_mod_f(tuple(df), tuple(fc))
    prec = 1
    while True:
        prec *= 2
        if prec > precision_cap:
            raise EmbeddingFailed(f"precision cap {precision_cap} reached without a valid embedding")
        m = p**prec
        gh = _compose_mod(g.coeffs, h, fc, m)
        h = psub(h, prem_mod(pmul(gh, v, m), fc, m), m)
        # refresh the inverse against the new h; keeps both iterations quadratic
        dgh = _compose_mod(dg, h, fc, m)
        t = psub(prem_mod(pmul(dgh, v, m), fc, m), [1], m)
        v = psub(v, prem_mod(pmul(t, v, m), fc, m), m)
        P = [symmetric(c, m) for c in prem_mod(pmul(h, df, m), fc, m)]
        if history is not None:
            history.append(prec)
        if all(abs(c) * headroom < m for c in P):
            guess = qrem(qmul([Fraction(c) for c in P], list(finv)), f)
            if not qcompose_mod(g.coeffs, guess, f):
                return tuple(guess)


def _frac_mod(c: Fraction, m: int) -> int:
    return c.numerator * pow(c.denominator, -1, m) % m


def values_at_roots(ctx: SplittingContext, h: Sequence) -> list:
    R = ctx.ring()
    hc = [_frac_mod(Fraction(c), R.m) for c in h]
    return [R.eval_poly(hc, r) for r in ctx.roots]


def verify_and_confirm(f: IntPoly, g: IntPoly, h: Sequence, blocks: BlockSystem,
                       ctx: SplittingContext, s: int = 0, principal: bool = False) -> SubfieldRecord | None:
    """Exact checks on a candidate subfield; None means fail."""
    h = tuple(Fraction(c) for c in h)
    if g.degree != blocks.num_blocks or g.degree * blocks.block_size != f.degree:
        return None
    if qcompose_mod(g.coeffs, list(h), f):
        return None
    _, _, C2 = invariant_bounds(f, blocks, s)
    if any(abs(c) > C2 for c in g.coeffs):
        return None
    P = qrem(qmul(list(h), [Fraction(c) for c in f.derivative().coeffs]), f)
    E = embedding_bound(f, blocks, s)
    if any(c.denominator != 1 or abs(c) > E for c in P):
        return None
    try:
        vals = values_at_roots(ctx, h)
    except ValueError:
        return None
    if blocks_from_values(vals, blocks.num_blocks) != blocks:
        return None
    return SubfieldRecord(g, h, blocks, principal, s)


def subfield_from_blocks(ctx: SplittingContext, blocks: BlockSystem, principal: bool = False,
                         precision_cap: int = 1 << 14) -> SubfieldRecord | None:
    """The subfield of a block system, or None when the candidate fails."""
    f = ctx.f
    if blocks.num_blocks == 1:
        return SubfieldRecord(IntPoly([0, 1]), (Fraction(0),), blocks, principal, 0)
    if blocks.block_size == 1:
        return SubfieldRecord(f, (Fraction(0), Fraction(1)), blocks, principal, 0)
    try:
        s = choose_block_invariant(ctx, blocks)
        g = subfield_poly_from_blocks(ctx, blocks, s)
        h = embedding_newton(ctx, g, blocks, s, precision_cap)
    except (DegenerateInvariant, EmbeddingFailed, ZeroDivisionError):
        return None
    return verify_and_confirm(f, g, h, blocks, ctx, s, principal)


# ---------------------------------------------------------------------------
# Res2: polynomial of the pairwise products of the shifted roots


def _graeffe(f: IntPoly) -> IntPoly:
    """prod (X - b_i^2) for f monic with roots b_i."""
    n = f.degree
    fm = IntPoly([c if k % 2 == 0 else -c for k, c in enumerate(f.coeffs)])
    prod = (f * fm).coeffs
    out = IntPoly([prod[2 * k] for k in range(n + 1)])
    return out if n % 2 == 0 else -out


def res2(f: IntPoly, s: int = 0) -> IntPoly:
    """prod_{i<j} (X - (b_i + s)(b_j + s)) via a bivariate resultant."""
    if f.lc != 1:
        raise ValueError("Res2 needs a monic f")
    fs = f.shift(-s)
    n = fs.degree
    N = n * n
    xs = list(range(1, N + 2))
    ys = []
    for x0 in xs:
        G = IntPoly([fs.coeffs[n - k] * x0 ** (n - k) for k in range(n + 1)])
        ys.append(resultant(fs, G))
    T = _interpolate(xs, ys)
    Q = _graeffe(fs)
    sq = T.exact_div(Q)
    r = poly_exact_sqrt(sq)
    if r is None:
        raise ArithmeticError("Res2 square root failed")
    return r if r.lc > 0 else -r


def _interpolate(xs, ys) -> IntPoly:
    """Newton interpolation with exact integer result."""
    n = len(xs)
    coef = [Fraction(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = [Fraction(0)]
    for i in range(n - 1, -1, -1):
        poly = qmul(poly, [Fraction(-xs[i]), Fraction(1)]) if any(poly) else []
        poly = list(poly) or [Fraction(0)]
        poly[0] += coef[i]
    out = []
    for c in poly:
        if c.denominator != 1:
            raise ArithmeticError("non-integral interpolation")
        out.append(int(c))
    return IntPoly(out)


def res2_power_sums(f: IntPoly, s: int = 0) -> IntPoly:
    """Same polynomial as res2, from Newton identities (test oracle)."""
    fs = f.shift(-s)
    n = fs.degree
    N = n * (n - 1) // 2
    a = [Fraction(c) for c in fs.coeffs]
    # power sums of the roots of fs up to 2N
    e = [(-1) ** k * a[n - k] for k in range(n + 1)]   # elementary symmetric
    P = [Fraction(n)]
    for k in range(1, 2 * N + 1):
        t = Fraction(0)
        for i in range(1, min(k, n) + 1):
            t += (-1) ** (i - 1) * e[i] * (P[k - i] if k - i > 0 else 0)
        if k <= n:
            t += (-1) ** (k - 1) * k * e[k]
        P.append(t)
    S = [Fraction(N)] + [(P[k] ** 2 - P[2 * k]) / 2 for k in range(1, N + 1)]
    E = [Fraction(1)]
    for k in range(1, N + 1):
        E.append(sum((-1) ** (i - 1) * E[k - i] * S[i] for i in range(1, k + 1)) / k)
    coeffs = [(-1) ** k * E[k] for k in range(N, -1, -1)]
    return IntPoly([int(c) for c in coeffs])


def res2_shift(f: IntPoly, limit: int | None = None) -> tuple[int, IntPoly]:
    """Smallest s >= 0 (by absolute value, then sign) with Res2 squarefree."""
    n = f.degree
    limit = n * n if limit is None else limit
    for t in range(0, limit + 1):
        for s in ((0,) if t == 0 else (t, -t)):
            R = res2(f, s)
            if gcd_z(R, R.derivative()).degree == 0:
                return s, R
    raise ArithmeticError("no squarefree Res2 shift found")


def choose_splitting_prime(f: IntPoly, candidates: int = 30) -> int:
    """Odd prime above n^2, not dividing disc * lc, with small splitting degree."""
    from .cyclescan import cycle_type_at, _primes_from

    n = f.degree
    d = discriminant(f)
    best = None
    seen = 0
    for p in _primes_from(n * n + 1):
        if d % p == 0 or f.lc % p == 0:
            continue
        ct = cycle_type_at(f, p)
        key = (math.lcm(*ct.cycle_type), p)
        if best is None or key < best:
            best = key
        seen += 1
        if seen >= candidates or best[0] == 1:
            break
    return best[1]


def res2_principal_congruences(f: IntPoly, ctx: SplittingContext | None = None,
                               include_trivial: bool = False) -> list[BlockSystem]:
    """Principal block systems from the factorization of Res2."""
    if ctx is None:
        ctx = build_splitting_context(f, choose_splitting_prime(f))
    n = f.degree
    s, R2 = res2_shift(f)
    factors = []
    for F in factor_over_Z(R2):
        if F not in factors:
            factors.append(F)
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    owner = None
    cur = ctx
    for _ in range(8):
        R = cur.ring()
        gam = [R.add(R.reduce(r), R.from_int(s)) for r in cur.roots]
        owner = {}
        ok = True
        for i, j in pairs:
            x = R.mul(gam[i], gam[j])
            hits = [k for k, F in enumerate(factors) if R.eval_poly(F.coeffs, x) == R.zero()]
            if len(hits) != 1:
                ok = False
                break
            owner[(i, j)] = hits[0]
        if ok:
            break
        cur = raise_precision(cur, 2 * cur.precision)
    else:
        raise ArithmeticError("could not attribute root pairs to Res2 factors")
    out = []
    for k in range(len(factors)):
        rel = [pr for pr, o in owner.items() if o == k]
        B = minimal_block_system(n, [], rel)
        if (include_trivial or not B.is_trivial()) and B not in out:
            out.append(B)
    return out
