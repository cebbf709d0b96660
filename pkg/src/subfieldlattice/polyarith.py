"""Exact polynomial arithmetic over Z, Z/p^a and F_p.

Coefficient sequences are stored low degree first.  ``IntPoly`` is the
public integer polynomial type; the modular routines work on plain lists of
residues in the canonical range ``[0, m)``.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence


class BadPrime(ValueError):
    """The prime divides the leading coefficient or the discriminant."""


class NotSquarefree(ValueError):
    pass


class RecombinationBudgetExceeded(RuntimeError):
    pass


def _trim(c: list) -> list:
    while c and c[-1] == 0:
        c.pop()
    return c


# ---------------------------------------------------------------------------
# integer polynomials


class IntPoly:
    """Immutable univariate polynomial with integer coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = _trim([int(a) for a in coeffs])
        object.__setattr__(self, "coeffs", tuple(c))

    def __setattr__(self, name, value):
        raise AttributeError("IntPoly is immutable")

    @classmethod
    def x(cls) -> "IntPoly":
        return cls([0, 1])

    @classmethod
    def const(cls, a: int) -> "IntPoly":
        return cls([a])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPoly([other])
        return isinstance(other, IntPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"IntPoly({list(self.coeffs)})"

    def __str__(self):
        return format_poly(self.coeffs)

    def __neg__(self):
        return IntPoly([-a for a in self.coeffs])

    def __add__(self, other):
        other = _as_intpoly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPoly([self[i] + other[i] for i in range(n)])

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-_as_intpoly(other))

    def __rsub__(self, other):
        return _as_intpoly(other) - self

    def __mul__(self, other):
        other = _as_intpoly(other)
        return IntPoly(mul_z(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        r = IntPoly([1])
        b = self
        while e:
            if e & 1:
                r = r * b
            b = b * b
            e >>= 1
        return r

    def __call__(self, x):
        acc = 0
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return acc

    def derivative(self) -> "IntPoly":
        return IntPoly([i * a for i, a in enumerate(self.coeffs)][1:])

    def content(self) -> int:
        g = 0
        for a in self.coeffs:
            g = math.gcd(g, a)
        return g

    def primitive_part(self) -> "IntPoly":
        g = self.content()
        if g == 0:
            return self
        if self.lc < 0:
            g = -g
        return IntPoly([a // g for a in self.coeffs])

    def exact_div(self, other: "IntPoly") -> "IntPoly":
        q, r = divmod_q(self.coeffs, other.coeffs)
        if any(r) or any(x.denominator != 1 for x in q):
            raise ArithmeticError("inexact polynomial division")
        return IntPoly([int(x) for x in q])

    def norm2(self) -> float:
        return math.sqrt(sum(a * a for a in self.coeffs))

    def norm1(self) -> int:
        return sum(abs(a) for a in self.coeffs)

    def max_norm(self) -> int:
        return max((abs(a) for a in self.coeffs), default=0)

    def shift(self, s: int) -> "IntPoly":
        """Return f(x + s)."""
        c = list(self.coeffs)
        n = len(c)
        for i in range(n):
            for k in range(n - 2, i - 1, -1):
                c[k] += s * c[k + 1]
        return IntPoly(c)

    def mod(self, m: int) -> list[int]:
        return [a % m for a in self.coeffs]


def _as_intpoly(p) -> IntPoly:
    if isinstance(p, IntPoly):
        return p
    if isinstance(p, int):
        return IntPoly([p])
    return IntPoly(p)


def format_poly(coeffs: Sequence, var: str = "x") -> str:
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        a = coeffs[i]
        if a == 0:
            continue
        sign = "-" if a < 0 else "+"
        mag = -a if a < 0 else a
        if i == 0:
            body = str(mag)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        terms.append((sign, body))
    if not terms:
        return "0"
    out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def mul_z(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def divmod_q(a: Sequence, b: Sequence) -> tuple[list[Fraction], list[Fraction]]:
    """Division with remainder over Q."""
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = [Fraction(x) for x in a]
    _trim(r)
    db = len(b) - 1
    if len(r) - 1 < db:
        return [], r
    q = [Fraction(0)] * (len(r) - db)
    lb = Fraction(b[-1])
    for k in range(len(r) - 1 - db, -1, -1):
        c = r[k + db] / lb
        q[k] = c
        if c:
            for i in range(db + 1):
                r[k + i] -= c * b[i]
    return q, _trim(r[:db])


def pseudo_rem(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """prem(a, b) = lc(b)^(deg a - deg b + 1) a mod b, computed over Z."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    e = len(r) - 1 - db + 1
    while len(r) - 1 >= db and r:
        c = r[-1]
        shift = len(r) - 1 - db
        r = [lb * x for x in r]
        for i in range(db + 1):
            r[shift + i] -= c * b[i]
        r.pop()
        _trim(r)
        e -= 1
    if e > 0:
        r = [x * lb**e for x in r]
    return r


def resultant(f: IntPoly, g: IntPoly) -> int:
    """Exact resultant by the subresultant PRS."""
    if f.is_zero() or g.is_zero():
        raise ValueError("resultant of the zero polynomial")
    A, B = list(f.coeffs), list(g.coeffs)
    s = 1
    if len(A) < len(B):
        A, B = B, A
        if (len(A) - 1) * (len(B) - 1) % 2:
            s = -1
    dA, dB = len(A) - 1, len(B) - 1
    if dB == 0:
        return s * B[0] ** dA
    a = IntPoly(A).content()
    b = IntPoly(B).content()
    A = [x // a for x in A]
    B = [x // b for x in B]
    t = a**dB * b**dA
    gg = hh = 1
    while True:
        dA, dB = len(A) - 1, len(B) - 1
        d = dA - dB
        if dA % 2 and dB % 2:
            s = -s
        R = pseudo_rem(A, B)
        if not R:
            return 0
        A = B
        div = gg * hh**d
        B = [x // div for x in R]
        gg = A[-1]
        if d == 0:
            pass
        else:
            hh = gg**d // hh ** (d - 1)
        if len(B) - 1 == 0:
            break
    dA = len(A) - 1
    h = B[0] ** dA
    if dA >= 1:
        h = h // hh ** (dA - 1)
    else:
        h = h * hh
    return s * t * h


def discriminant(f: IntPoly) -> int:
    n = f.degree
    if n < 1:
        raise ValueError("discriminant needs degree >= 1")
    r = resultant(f, f.derivative())
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    q, rem = divmod(sign * r, f.lc)
    assert rem == 0
    return q


def gcd_z(f: IntPoly, g: IntPoly) -> IntPoly:
    """Primitive gcd over Z via the primitive PRS."""
    A, B = f.primitive_part(), g.primitive_part()
    if A.is_zero():
        return B
    if B.is_zero():
        return A
    a, b = list(A.coeffs), list(B.coeffs)
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = pseudo_rem(a, b)
        a, b = b, list(IntPoly(r).primitive_part().coeffs) if r else []
    return IntPoly(a).primitive_part()


def squarefree_decomposition_z(f: IntPoly) -> list[tuple[IntPoly, int]]:
    """Yun's algorithm over Z; returns (part, multiplicity) pairs of f's primitive part."""
    f = f.primitive_part()
    if f.degree < 1:
        return []
    df = f.derivative()
    a = gcd_z(f, df)
    b = f.exact_div(a)
    c = df.exact_div(a)
    d = c - b.derivative()
    out = []
    i = 1
    while b.degree > 0:
        a = gcd_z(b, d)
        b = b.exact_div(a)
        c = d.exact_div(a)
        d = c - b.derivative()
        if a.degree > 0:
            out.append((a.primitive_part(), i))
        i += 1
    return out


def fujiwara_bound(f: IntPoly) -> Fraction:
    """Upper bound for the absolute values of all complex roots of f.

    Returns 2 * max_i |a_{n-i}/a_n|^(1/i), rounded up to a multiple of 1/100.
    A polynomial whose roots are all zero gets the safe minimum 1.
    """
    n = f.degree
    if n < 1:
        raise ValueError("fujiwara bound needs degree >= 1")
    an = abs(f.lc)
    best = 0
    for i in range(1, n + 1):
        a = abs(f[n - i])
        if a == 0:
            continue
        # smallest t with (t/100)^i >= 2^i * a / an
        target_num = (200**i) * a
        t = _iroot_ceil(Fraction(target_num, an), i)
        best = max(best, t)
    if best == 0:
        return Fraction(1)
    return Fraction(best, 100)


def _iroot_ceil(x: Fraction, k: int) -> int:
    """Smallest integer t >= 0 with t^k >= x."""
    if x <= 0:
        return 0
    lo, hi = 0, 1
    while Fraction(hi**k) < x:
        hi *= 2
    while lo < hi:
        mid = (lo + hi) // 2
        if mid**k >= x:
            hi = mid
        else:
            lo = mid + 1
    return lo


def poly_exact_sqrt(f: IntPoly) -> IntPoly | None:
    """Return g with g*g == f (positive leading coefficient), or None."""
    if f.is_zero():
        return IntPoly()
    n = f.degree
    if n % 2 or f.lc < 0:
        return None
    r = math.isqrt(f.lc)
    if r * r != f.lc:
        return None
    m = n // 2
    g = [Fraction(0)] * (m + 1)
    g[m] = Fraction(r)
    # coefficient of x^(m + k) in g^2, solved top-down for g[k]
    for k in range(m - 1, -1, -1):
        s = Fraction(f[m + k])
        for i in range(k + 1, m):
            j = m + k - i
            if k < j <= m:
                s -= g[i] * g[j]
        g[k] = s / (2 * g[m])
    if any(x.denominator != 1 for x in g):
        return None
    cand = IntPoly([int(x) for x in g])
    return cand if cand * cand == f else None


# ---------------------------------------------------------------------------
# polynomials over Z/m (canonical residues)


def pmod_reduce(a: Iterable[int], m: int) -> list[int]:
    return _trim([x % m for x in a])


def padd(a, b, m):
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % m for i in range(n)])


def psub(a, b, m):
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % m for i in range(n)])


def pmul(a, b, m):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([x % m for x in out])


def pscale(a, c, m):
    return _trim([x * c % m for x in a])


def pdivmod(a, b, m):
    """Division by b whose leading coefficient is a unit mod m."""
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = [x % m for x in a]
    _trim(r)
    db = len(b) - 1
    if len(r) - 1 < db:
        return [], r
    inv = pow(b[-1], -1, m)
    q = [0] * (len(r) - db)
    for k in range(len(r) - 1 - db, -1, -1):
        c = r[k + db] * inv % m
        q[k] = c
        if c:
            for i in range(db + 1):
                r[k + i] = (r[k + i] - c * b[i]) % m
    return _trim(q), _trim(r[:db])


def prem_mod(a, b, m):
    return pdivmod(a, b, m)[1]


def ppowmod(base, e, mod, m):
    result = [1]
    base = prem_mod(base, mod, m)
    while e:
        if e & 1:
            result = prem_mod(pmul(result, base, m), mod, m)
        base = prem_mod(pmul(base, base, m), mod, m)
        e >>= 1
    return result


def pmonic(a, m):
    if not a:
        return []
    inv = pow(a[-1], -1, m)
    return [x * inv % m for x in a]


def pderiv(a, m):
    return _trim([i * a[i] % m for i in range(1, len(a))])


def pgcd(a, b, p):
    """Monic gcd over F_p."""
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, prem_mod(a, b, p)
    return pmonic(a, p)


def pegcd(a, b, p):
    """Return (g, s, t) with s*a + t*b = g monic over F_p."""
    r0, r1 = _trim([x % p for x in a]), _trim([x % p for x in b])
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = pdivmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, psub(s0, pmul(q, s1, p), p)
        t0, t1 = t1, psub(t0, pmul(q, t1, p), p)
    if not r0:
        return [], s0, t0
    inv = pow(r0[-1], -1, p)
    return pscale(r0, inv, p), pscale(s0, inv, p), pscale(t0, inv, p)


def pinv_mod(a, mod, p):
    g, s, _ = pegcd(a, mod, p)
    if g != [1]:
        raise ZeroDivisionError("not invertible modulo the polynomial")
    return s


def eval_mod(a, x, m):
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % m
    return acc


# ---------------------------------------------------------------------------
# factorization over F_p


def _pth_root(a, p):
    return _trim([a[i] for i in range(0, len(a), p)])


def squarefree_fp(f, p) -> list[tuple[list[int], int]]:
    """Squarefree decomposition of a monic polynomial over F_p."""
    out = []
    f = pmonic(f, p)
    if len(f) <= 1:
        return out
    df = pderiv(f, p)
    if not df:
        return [(g, e * p) for g, e in squarefree_fp(_pth_root(f, p), p)]
    c = pgcd(f, df, p)
    w = pdivmod(f, c, p)[0]
    i = 1
    while len(w) > 1:
        y = pgcd(w, c, p)
        z = pdivmod(w, y, p)[0]
        if len(z) > 1:
            out.append((z, i))
        i += 1
        w = y
        c = pdivmod(c, y, p)[0]
    if len(c) > 1:
        out.extend((g, e * p) for g, e in squarefree_fp(_pth_root(c, p), p))
    return out


def distinct_degree_fp(f, p) -> list[tuple[list[int], int]]:
    """Split a squarefree monic f into products of equal-degree irreducibles."""
    out = []
    h = [0, 1]
    d = 0
    f = list(f)
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        h = ppowmod(h, p, f, p)
        g = pgcd(f, psub(h, [0, 1], p), p)
        if len(g) > 1:
            out.append((g, d))
            f = pdivmod(f, g, p)[0]
            h = prem_mod(h, f, p)
    if len(f) > 1:
        out.append((f, len(f) - 1))
    return out


def equal_degree_fp(f, d, p, rng: random.Random, retries: int = 64) -> list[list[int]]:
    """Cantor-Zassenhaus splitting of f into its irreducible factors of degree d."""
    n = len(f) - 1
    if n == d:
        return [f]
    if n == 0:
        return []
    for _ in range(retries):
        a = _trim([rng.randrange(p) for _ in range(n)])
        if len(a) <= 1:
            continue
        if p == 2:
            t = list(a)
            cur = list(a)
            for _ in range(d - 1):
                cur = prem_mod(pmul(cur, cur, p), f, p)
                t = padd(t, cur, p)
            b = t
        else:
            b = psub(ppowmod(a, (p**d - 1) // 2, f, p), [1], p)
        g = pgcd(f, b, p)
        if 1 < len(g) < len(f):
            h = pdivmod(f, g, p)[0]
            return equal_degree_fp(g, d, p, rng, retries) + equal_degree_fp(h, d, p, rng, retries)
    raise RuntimeError("equal-degree splitting failed within the retry cap")


def factor_squarefree_fp(f, p, seed: int = 0) -> list[list[int]]:
    rng = random.Random(seed)
    out = []
    for g, d in distinct_degree_fp(pmonic(f, p), p):
        out.extend(equal_degree_fp(g, d, p, rng))
    return sorted(out, key=lambda g: (len(g), g))


def is_irreducible_fp(f, p) -> bool:
    f = pmonic(pmod_reduce(f, p), p)
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    h = [0, 1]
    for d in range(1, n // 2 + 1):
        h = ppowmod(h, p, f, p)
        if len(pgcd(f, psub(h, [0, 1], p), p)) > 1:
            return False
    return True


@dataclass(frozen=True)
class ModPoly:
    coeffs: tuple[int, ...]
    modulus: int

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(pmod_reduce(self.coeffs, self.modulus)))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1


@dataclass(frozen=True)
class ModFactorization:
    """f = unit * prod(factor_i ^ mult_i) modulo prime^precision."""

    prime: int
    precision: int
    factors: tuple[tuple[int, ...], ...]
    multiplicities: tuple[int, ...]
    unit: int
    poly: IntPoly = field(compare=False)

    @property
    def modulus(self) -> int:
        return self.prime**self.precision

    @property
    def squarefree(self) -> bool:
        return all(e == 1 for e in self.multiplicities)

    @property
    def degrees(self) -> list[int]:
        out = []
        for g, e in zip(self.factors, self.multiplicities):
            out.extend([len(g) - 1] * e)
        return out

    def mod_polys(self) -> list[ModPoly]:
        return [ModPoly(g, self.modulus) for g in self.factors]


def mod_factor(f: IntPoly, p: int, seed: int = 0) -> ModFactorization:
    """Irreducible monic factors of f modulo the prime p, with multiplicities."""
    if f.lc % p == 0:
        raise BadPrime(f"bad prime {p}: divides the leading coefficient")
    unit = f.lc % p
    fm = pmonic(f.mod(p), p)
    parts: list[tuple[list[int], int]] = []
    for g, e in squarefree_fp(fm, p):
        for h in factor_squarefree_fp(g, p, seed):
            parts.append((h, e))
    parts.sort(key=lambda t: (len(t[0]), t[0], t[1]))
    return ModFactorization(
        prime=p,
        precision=1,
        factors=tuple(tuple(g) for g, _ in parts),
        multiplicities=tuple(e for _, e in parts),
        unit=unit,
        poly=f,
    )


# ---------------------------------------------------------------------------
# Hensel lifting


def _hensel_step(f, g, h, s, t, m):
    """One quadratic step (von zur Gathen-Gerhard 15.10); f, g, h monic.

    Input congruences hold modulo m; output ones modulo m^2.
    """
    M = m * m
    e = psub(f, pmul(g, h, M), M)
    q, r = pdivmod(pmul(s, e, M), h, M)
    g2 = padd(padd(g, pmul(t, e, M), M), pmul(q, g, M), M)
    h2 = padd(h, r, M)
    b = psub(padd(pmul(s, g2, M), pmul(t, h2, M), M), [1], M)
    c, d = pdivmod(pmul(s, b, M), h2, M)
    s2 = psub(s, d, M)
    t2 = psub(psub(t, pmul(t, b, M), M), pmul(c, g2, M), M)
    return g2, h2, s2, t2


def hensel_lift_pair(f, g, h, p, a):
    """Lift f = g*h (monic, coprime mod p) to f = G*H modulo p^a."""
    one, s, t = pegcd(g, h, p)
    if one != [1]:
        raise NotSquarefree("factors are not coprime modulo p")
    m = p
    g, h = list(g), list(h)
    target = p**a
    while m < target:
        g, h, s, t = _hensel_step(pmod_reduce(f, m * m), g, h, s, t, m)
        m = m * m
    return pmod_reduce(g, target), pmod_reduce(h, target)


def multi_lift(f_monic, factors, p, a) -> list[list[int]]:
    """Lift a coprime factorization of monic f mod p to precision a."""
    target = p**a
    if len(factors) == 1:
        return [pmod_reduce(f_monic, target)]
    k = len(factors) // 2
    left, right = factors[:k], factors[k:]
    g = [1]
    for u in left:
        g = pmul(g, u, p)
    h = [1]
    for u in right:
        h = pmul(h, u, p)
    G, H = hensel_lift_pair(pmod_reduce(f_monic, target), g, h, p, a)
    return multi_lift(G, left, p, a) + multi_lift(H, right, p, a)


def hensel_lift(fac: ModFactorization, target_precision: int) -> ModFactorization:
    """Lift a squarefree factorization modulo p to modulo p^a."""
    if not fac.squarefree:
        raise NotSquarefree("Hensel lifting needs a squarefree factorization")
    p = fac.prime
    if target_precision <= fac.precision:
        m = p**target_precision
        return ModFactorization(p, target_precision,
                                tuple(tuple(pmod_reduce(g, m)) for g in fac.factors),
                                fac.multiplicities, fac.unit % m, fac.poly)
    M = p**target_precision
    f = fac.poly
    fm = pmonic(f.mod(M), M)
    base = [pmod_reduce(g, p) for g in fac.factors]
    lifted = multi_lift(fm, base, p, target_precision)
    return ModFactorization(p, target_precision, tuple(tuple(g) for g in lifted),
                            fac.multiplicities, f.lc % M, f)


# ---------------------------------------------------------------------------
# factorization over Z (Zassenhaus)


def _small_primes():
    p = 3
    while True:
        if all(p % q for q in range(3, math.isqrt(p) + 1, 2)):
            yield p
        p += 2


def symmetric(x: int, m: int) -> int:
    x %= m
    return x - m if x > m // 2 else x


def _mignotte_bound(f: IntPoly) -> int:
    # Any factor g of f in Z[x] satisfies |g_i| <= C(deg g, i) * M(f) * |lc g / lc f|
    # <= 2^deg(f) * ||f||_2 (Landau-Mignotte); times |lc f| for the scaled candidate.
    n = f.degree
    norm2_ceil = math.isqrt(sum(a * a for a in f.coeffs)) + 1
    return (1 << n) * norm2_ceil * abs(f.lc)


def _zassenhaus(f: IntPoly, subset_cap: int, seed: int) -> list[IntPoly]:
    """Factor a primitive squarefree polynomial of positive degree."""
    n = f.degree
    if n <= 1:
        return [f]
    best = None
    tried = 0
    for p in _small_primes():
        if f.lc % p == 0:
            continue
        fp = pmonic(f.mod(p), p)
        if len(pgcd(fp, pderiv(fp, p), p)) > 1:
            continue
        facs = factor_squarefree_fp(fp, p, seed)
        if best is None or len(facs) < len(best[1]):
            best = (p, facs)
        tried += 1
        if len(facs) == 1 or tried >= 5:
            break
    p, facs = best
    if len(facs) == 1:
        return [f]
    bound = _mignotte_bound(f)
    a = 1
    while p**a <= 2 * bound:
        a += 1
    M = p**a
    lifted = multi_lift(pmonic(f.mod(M), M), facs, p, a)
    found = []
    remaining = list(range(len(lifted)))
    g = f
    size = 1
    tested = 0
    while 2 * size <= len(remaining):
        hit = False
        for S in combinations(remaining, size):
            tested += 1
            if tested > subset_cap:
                raise RecombinationBudgetExceeded("recombination budget exceeded")
            lc = g.lc
            # constant-term screen before the full product
            c0 = lc % M
            for i in S:
                c0 = c0 * lifted[i][0] % M
            c0 = symmetric(c0, M)
            if c0 and (g[0] * lc) % c0:
                continue
            cand = [lc % M]
            for i in S:
                cand = pmul(cand, lifted[i], M)
            cand = IntPoly([symmetric(x, M) for x in cand]).primitive_part()
            q, r = divmod_q(g.coeffs, cand.coeffs)
            if r or any(x.denominator != 1 for x in q):
                continue
            found.append(cand)
            g = IntPoly([int(x) for x in q])
            remaining = [i for i in remaining if i not in S]
            hit = True
            break
        if not hit:
            size += 1
    found.append(g.primitive_part())
    return found


def factor_over_Z(f: IntPoly, subset_cap: int = 1 << 20, seed: int = 0) -> list[IntPoly]:
    """Irreducible factors of f over Z, repeated by multiplicity.

    The product of the output equals f up to sign and content.
    """
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    g = f.primitive_part()
    out: list[IntPoly] = []
    if g.degree < 1:
        return out
    for part, e in squarefree_decomposition_z(g):
        for q in _zassenhaus(part, subset_cap, seed):
            if q.degree >= 1:
                out.extend([q] * e)
    out.sort(key=lambda q: (q.degree, q.coeffs))
    return out


def is_irreducible_z(f: IntPoly) -> bool:
    return f.degree >= 1 and len(factor_over_Z(f)) == 1


def make_monic_integral(f: IntPoly) -> tuple[IntPoly, int]:
    """Return (F, c) with F(x) = c^(n-1) f(x / c) monic, c = lc(f).

    F defines the same field; its root is c * (root of f).
    """
    c = f.lc
    n = f.degree
    if c == 1:
        return f, 1
    coeffs = [f[i] * c ** (n - 1 - i) for i in range(n)] + [1]
    return IntPoly(coeffs), c


def parse_poly(text: str) -> IntPoly:
    """Parse '3*x^2 - x + 1', 'x^18+9x^9+27' or a coefficient list '[1, 0, 1]'."""
    s = text.strip()
    if s.startswith("[") or "," in s:
        body = s.strip("[]() ")
        return IntPoly([int(t) for t in body.split(",") if t.strip()])
    s = s.replace(" ", "").replace("**", "^").replace("−", "-")
    if not s:
        raise ValueError("empty polynomial")
    coeffs: dict[int, int] = {}
    terms = []
    cur = ""
    for ch in s:
        if ch in "+-" and cur and cur[-1] not in "^":
            terms.append(cur)
            cur = ch
        else:
            cur += ch
    terms.append(cur)
    for term in terms:
        if term in ("", "+", "-"):
            raise ValueError(f"malformed polynomial: {text!r}")
        sign = -1 if term[0] == "-" else 1
        term = term.lstrip("+-")
        if "x" in term:
            pre, _, post = term.partition("x")
            pre = pre.rstrip("*")
            coef = int(pre) if pre else 1
            if post == "":
                exp = 1
            elif post.startswith("^"):
                exp = int(post[1:])
            else:
                raise ValueError(f"malformed term {term!r}")
        else:
            coef, exp = int(term), 0
        coeffs[exp] = coeffs.get(exp, 0) + sign * coef
    n = max(coeffs)
    return IntPoly([coeffs.get(i, 0) for i in range(n + 1)])
