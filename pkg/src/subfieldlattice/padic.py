"""p-adic splitting fields: all roots of f in an unramified extension of Q_p.

The extension of degree d is the ring (Z/p^a)[t]/(F) where F is the first
monic polynomial of degree d, in lexicographic order of its coefficient
vector, that is irreducible modulo p.  Elements are tuples of d residues.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import reduce

from .polyarith import (
    BadPrime,
    IntPoly,
    is_irreducible_fp,
    mod_factor,
)

Elem = tuple


class UnramifiedRing:
    """Arithmetic in (Z/p^a)[t]/(F) for F monic and irreducible mod p."""

    def __init__(self, p: int, F: tuple[int, ...], a: int):
        self.p = p
        self.F = tuple(F)
        self.d = len(F) - 1
        self.a = a
        self.m = p**a

    def at(self, a: int) -> "UnramifiedRing":
        return UnramifiedRing(self.p, self.F, a)

    def zero(self) -> Elem:
        return (0,) * self.d

    def one(self) -> Elem:
        return self.from_int(1)

    def from_int(self, c: int) -> Elem:
        return (c % self.m,) + (0,) * (self.d - 1)

    def gen(self) -> Elem:
        if self.d == 1:
            return self.from_int(-self.F[0])
        return (0, 1) + (0,) * (self.d - 2)

    def reduce(self, x) -> Elem:
        m = self.m
        return tuple(c % m for c in x)

    def add(self, x, y) -> Elem:
        m = self.m
        return tuple((u + v) % m for u, v in zip(x, y))

    def sub(self, x, y) -> Elem:
        m = self.m
        return tuple((u - v) % m for u, v in zip(x, y))

    def neg(self, x) -> Elem:
        m = self.m
        return tuple(-u % m for u in x)

    def scale(self, x, c: int) -> Elem:
        m = self.m
        return tuple(u * c % m for u in x)

    def mul(self, x, y) -> Elem:
        d, m = self.d, self.m
        if d == 1:
            return ((x[0] * y[0]) % m,)
        prod = [0] * (2 * d - 1)
        for i, u in enumerate(x):
            if u:
                for j, v in enumerate(y):
                    prod[i + j] += u * v
        F = self.F
        for k in range(2 * d - 2, d - 1, -1):
            c = prod[k]
            if c:
                base = k - d
                for i in range(d):
                    prod[base + i] -= c * F[i]
        return tuple(c % m for c in prod[:d])

    def pow(self, x, e: int) -> Elem:
        r = self.one()
        while e:
            if e & 1:
                r = self.mul(r, x)
            x = self.mul(x, x)
            e >>= 1
        return r

    def is_unit(self, x) -> bool:
        return any(c % self.p for c in x)

    def inv(self, x) -> Elem:
        """Inverse via the residue field, then Newton iteration."""
        p = self.p
        y = self._inv_residue(tuple(c % p for c in x))
        prec = 1
        while prec < self.a:
            prec = min(2 * prec, self.a)
            R = self.at(prec)
            xy = R.mul(R.reduce(x), y)
            y = R.mul(y, R.sub(R.from_int(2), xy))
        return self.reduce(y)

    def _inv_residue(self, x) -> Elem:
        from .polyarith import pinv_mod, _trim

        p, d = self.p, self.d
        if d == 1:
            if x[0] % p == 0:
                raise ZeroDivisionError("not a unit")
            return (pow(x[0], -1, p),)
        s = pinv_mod(_trim(list(x)), list(self.F), p)
        s = list(s) + [0] * (d - len(s))
        return tuple(s[:d])

    def eval_poly(self, coeffs, x) -> Elem:
        """Evaluate an integer-coefficient polynomial at x."""
        acc = self.zero()
        for c in reversed(coeffs):
            acc = self.add(self.mul(acc, x), self.from_int(c))
        return acc

    def is_rational(self, x) -> bool:
        return all(c == 0 for c in x[1:])

    def residue_key(self, x) -> tuple:
        p = self.p
        return tuple(c % p for c in x)


def find_irreducible(p: int, d: int) -> tuple[int, ...]:
    """First monic degree-d polynomial irreducible mod p (lexicographic search)."""
    if d == 1:
        return (0, 1)
    for N in range(p**d):
        coeffs = []
        x = N
        for _ in range(d):
            coeffs.append(x % p)
            x //= p
        if coeffs[0] == 0:
            continue
        if is_irreducible_fp(coeffs + [1], p):
            return tuple(coeffs + [1])
    raise RuntimeError("no irreducible polynomial found")


# ---------------------------------------------------------------------------
# polynomials over the residue field F_q, q = p^d


def _fq_trim(R: UnramifiedRing, a: list) -> list:
    z = R.zero()
    while a and a[-1] == z:
        a.pop()
    return a


def _fq_divmod(R, a, b):
    a = list(a)
    db = len(b) - 1
    inv = R.inv(b[-1])
    if len(a) - 1 < db:
        return [], a
    q = [R.zero()] * (len(a) - db)
    for k in range(len(a) - 1 - db, -1, -1):
        c = R.mul(a[k + db], inv)
        q[k] = c
        for i in range(db + 1):
            a[k + i] = R.sub(a[k + i], R.mul(c, b[i]))
    return q, _fq_trim(R, a[:db])


def _fq_mulmod(R, a, b, mod):
    if not a or not b:
        return []
    out = [R.zero()] * (len(a) + len(b) - 1)
    for i, u in enumerate(a):
        for j, v in enumerate(b):
            out[i + j] = R.add(out[i + j], R.mul(u, v))
    return _fq_divmod(R, _fq_trim(R, out), mod)[1]


def _fq_powmod(R, a, e, mod):
    result = [R.one()]
    while e:
        if e & 1:
            result = _fq_mulmod(R, result, a, mod)
        a = _fq_mulmod(R, a, a, mod)
        e >>= 1
    return result


def _fq_gcd(R, a, b):
    a, b = _fq_trim(R, list(a)), _fq_trim(R, list(b))
    while b:
        a, b = b, _fq_divmod(R, a, b)[1]
    inv = R.inv(a[-1])
    return [R.mul(c, inv) for c in a]


def _fq_find_root(R: UnramifiedRing, phi: list[int], rng: random.Random) -> Elem:
    """One root in F_q of phi (F_p coefficients, all roots in F_q); q odd."""
    poly = [R.from_int(c) for c in phi]
    q = R.p**R.d
    while len(poly) > 2:
        for _ in range(64):
            delta = tuple(rng.randrange(R.p) for _ in range(R.d))
            b = _fq_powmod(R, [delta, R.one()], (q - 1) // 2, poly)
            b = list(b) if b else [R.zero()]
            b[0] = R.sub(b[0], R.one())
            b = _fq_trim(R, b)
            if not b:
                continue
            g = _fq_gcd(R, poly, b)
            if 1 < len(g) < len(poly):
                other = _fq_divmod(R, poly, g)[0]
                poly = g if len(g) <= len(other) else other
                break
        else:
            raise RuntimeError("root splitting failed within the retry cap")
    inv = R.inv(poly[1])
    return R.neg(R.mul(poly[0], inv))


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SplittingContext:
    f: IntPoly
    prime: int
    ext_poly: tuple[int, ...]
    precision: int
    roots: tuple[Elem, ...]
    frobenius: tuple[int, ...]
    factor_degrees: tuple[int, ...]

    @property
    def ext_degree(self) -> int:
        return len(self.ext_poly) - 1

    @property
    def n(self) -> int:
        return len(self.roots)

    @property
    def modulus(self) -> int:
        return self.prime**self.precision

    def ring(self, a: int | None = None) -> UnramifiedRing:
        return UnramifiedRing(self.prime, self.ext_poly, self.precision if a is None else a)


def default_precision(f: IntPoly, p: int) -> int:
    c = math.ceil(math.log(max(f.max_norm(), 2), p))
    return 20 + 2 * c


def _newton_lift_root(R_full: UnramifiedRing, f: IntPoly, r: Elem, start: int) -> Elem:
    df = f.derivative().coeffs
    prec = start
    while prec < R_full.a:
        prec = min(2 * prec, R_full.a)
        R = R_full.at(prec)
        r = R.reduce(r)
        num = R.eval_poly(f.coeffs, r)
        den = R.eval_poly(df, r)
        r = R.sub(r, R.mul(num, R.inv(den)))
    return R_full.reduce(r)


def build_splitting_context(f: IntPoly, p: int, a: int | None = None, seed: int = 0) -> SplittingContext:
    """Approximate every root of f modulo p^a in the splitting field over Q_p."""
    if p == 2:
        raise BadPrime("splitting contexts use odd primes")
    fac = mod_factor(f, p, seed)
    if not fac.squarefree:
        raise BadPrime(f"bad prime {p}: f is not squarefree modulo p")
    if a is None:
        a = default_precision(f, p)
    degrees = [len(g) - 1 for g in fac.factors]
    d = reduce(lambda x, y: x * y // math.gcd(x, y), degrees, 1)
    F = find_irreducible(p, d)
    R1 = UnramifiedRing(p, F, 1)
    rng = random.Random(seed)
    roots: list[Elem] = []
    for phi in fac.factors:
        rho = _fq_find_root(R1, list(phi), rng)
        orbit = [rho]
        for _ in range(len(phi) - 2):
            orbit.append(R1.pow(orbit[-1], p))
        roots.extend(orbit)
    # canonical order: residues sorted by their coordinate tuples
    roots.sort()
    index = {r: i for i, r in enumerate(roots)}
    frob = tuple(index[R1.pow(r, p)] for r in roots)
    R = UnramifiedRing(p, F, a)
    lifted = tuple(_newton_lift_root(R, f, r, 1) for r in roots)
    return SplittingContext(f, p, F, a, lifted, frob, tuple(degrees))


def raise_precision(ctx: SplittingContext, a: int) -> SplittingContext:
    if a <= ctx.precision:
        return ctx
    R = ctx.ring(a)
    roots = tuple(_newton_lift_root(R, ctx.f, r, ctx.precision) for r in ctx.roots)
    return SplittingContext(ctx.f, ctx.prime, ctx.ext_poly, a, roots, ctx.frobenius, ctx.factor_degrees)


def reduce_context(ctx: SplittingContext, a: int) -> SplittingContext:
    if a >= ctx.precision:
        return ctx
    R = ctx.ring(a)
    return SplittingContext(ctx.f, ctx.prime, ctx.ext_poly, a, tuple(R.reduce(r) for r in ctx.roots),
                            ctx.frobenius, ctx.factor_degrees)


def frobenius_permutation(ctx: SplittingContext) -> tuple[int, ...]:
    return ctx.frobenius


def frobenius_map(ctx: SplittingContext):
    """The lifted Frobenius automorphism of the extension ring, as a function."""
    R = ctx.ring()
    t = R.gen()
    if ctx.ext_degree == 1:
        return lambda x: R.reduce(x)
    # image of t: the root of F congruent to t^p
    F = ctx.ext_poly
    tau = _newton_lift_root(R, IntPoly(F), R.at(1).pow(R.at(1).reduce(t), ctx.prime), 1)
    powers = [R.one()]
    for _ in range(ctx.ext_degree - 1):
        powers.append(R.mul(powers[-1], tau))

    def apply(x):
        acc = R.zero()
        for c, pw in zip(x, powers):
            acc = R.add(acc, R.scale(pw, c))
        return acc

    return apply


def cycle_type(perm) -> list[int]:
    seen = [False] * len(perm)
    out = []
    for i in range(len(perm)):
        if not seen[i]:
            k = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                k += 1
            out.append(k)
    return sorted(out)
