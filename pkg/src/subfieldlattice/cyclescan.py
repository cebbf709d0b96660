"""Information from factoring f modulo many primes.

Cycle types of Frobenius elements give divisors of the Galois group order,
exclude block sizes, and pick the primes the subfield search works with.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache, reduce

from .polyarith import BadPrime, IntPoly, discriminant, mod_factor


@dataclass(frozen=True)
class CycleTypeReport:
    prime: int
    cycle_type: tuple[int, ...]
    linear_factors: int = 0

    def __post_init__(self):
        object.__setattr__(self, "cycle_type", tuple(sorted(self.cycle_type)))
        object.__setattr__(self, "linear_factors", self.cycle_type.count(1))

    @property
    def n(self) -> int:
        return sum(self.cycle_type)

    @property
    def parity(self) -> int:
        return -1 if (self.n - len(self.cycle_type)) % 2 else 1

    @property
    def split_degree(self) -> int:
        return math.lcm(*self.cycle_type)


@dataclass
class InspectionResult:
    possible_block_sizes: frozenset
    lll_prime: int
    splitting_prime: int
    order_divisor: int
    group_is_even: bool | None
    reports: list = field(default_factory=list)

    @property
    def no_subfields(self) -> bool:
        return not self.possible_block_sizes


@dataclass
class InspectionConfig:
    min_primes: int | None = None      # default max(25, 2n)
    max_primes: int | None = None      # default 4n, at least min_primes
    prime_start: int | None = None     # default n^2, at least 3
    prime_limit: int = 1 << 16
    max_split_degree: int | None = None  # a "reasonable" p_s degree; default n
    use_pgroup_rule: bool = True
    seed: int = 0


class PrimeBudgetExceeded(RuntimeError):
    pass


def cycle_type_at(f: IntPoly, p: int) -> CycleTypeReport:
    fac = mod_factor(f, p)
    if not fac.squarefree or len(fac.factors) != len(set(fac.factors)):
        raise BadPrime(f"bad prime {p}: f is not squarefree modulo p")
    degrees = []
    for g, e in zip(fac.factors, fac.multiplicities):
        degrees.extend([len(g) - 1] * e)
    return CycleTypeReport(p, tuple(degrees))


def order_divisor(ct, n: int | None = None) -> int:
    t = ct.cycle_type if isinstance(ct, CycleTypeReport) else tuple(ct)
    if n is None:
        n = sum(t)
    return n * math.lcm(*t) // math.gcd(*t)


def _prime_power(m: int):
    """(p, e) when m = p^e with e >= 1, else None."""
    if m < 2:
        return None
    p = next(q for q in range(2, m + 1) if m % q == 0)
    e = 0
    while m % p == 0:
        m //= p
        e += 1
    return (p, e) if m == 1 else None


def pgroup_divisor(reports, n: int, require_fixed_point: bool = True) -> int:
    """Divisor of the group order from pairs of prime-power cycle types.

    Two types of orders p^e and p^f, both with a fixed point, whose numbers of
    points in full-length orbits differ contribute n * p^(e+f).
    """
    if not require_fixed_point:
        return 1
    cands = []
    for r in reports:
        t = r.cycle_type if isinstance(r, CycleTypeReport) else tuple(sorted(r))
        if 1 not in t:
            continue
        pe = _prime_power(math.lcm(*t))
        if pe is None:
            continue
        full = t.count(math.lcm(*t)) * math.lcm(*t)
        cands.append((pe[0], pe[1], full))
    best = 1
    for i in range(len(cands)):
        for j in range(i + 1, len(cands)):
            p1, e, c1 = cands[i]
            p2, f, c2 = cands[j]
            if p1 == p2 and c1 != c2:
                best = math.lcm(best, n * p1 ** (e + f))
    return best


def proper_divisors(n: int) -> list[int]:
    return [k for k in range(2, n) if n % k == 0]


@lru_cache(maxsize=None)
def _admits(ct: tuple[int, ...], k: int, n: int) -> bool:
    """Does every orbit of a permutation of this type have a block witness?"""
    ell = n // k
    for m, nm in enumerate(ct):
        ok = False
        for e in range(1, min(nm, ell) + 1):
            if nm % e:
                continue
            target = e * k - nm
            if target < 0:
                continue
            others = [x for i, x in enumerate(ct) if i != m and x % e == 0]
            if _subset_sum(tuple(sorted(others)), target):
                ok = True
                break
        if not ok:
            return False
    return True


@lru_cache(maxsize=None)
def _subset_sum(items: tuple[int, ...], target: int) -> bool:
    reach = 1
    for x in items:
        reach |= reach << x
    return bool((reach >> target) & 1)


def sieve_block_sizes(reports, n: int) -> set[int]:
    sizes = set(proper_divisors(n))
    for r in reports:
        t = r.cycle_type if isinstance(r, CycleTypeReport) else tuple(sorted(r))
        sizes = {k for k in sizes if _admits(t, k, n)}
        if not sizes:
            break
    return sizes


def _is_square(z: int) -> bool:
    return z >= 0 and math.isqrt(z) ** 2 == z


def _primes_from(start: int):
    p = max(start, 3)
    while True:
        if p > 2 and all(p % q for q in range(2, math.isqrt(p) + 1)):
            yield p
        p += 1


def prime_inspection(f: IntPoly, config: InspectionConfig | None = None) -> InspectionResult:
    """Sample primes, sieve block sizes and choose the LLL and splitting primes.

    The result has an empty ``possible_block_sizes`` when the field has no
    proper subfields.
    """
    cfg = config or InspectionConfig()
    n = f.degree
    disc = discriminant(f)
    if disc == 0:
        raise ValueError("f is not squarefree")
    min_primes = cfg.min_primes or max(25, 2 * n)
    max_primes = max(cfg.max_primes or 4 * n, min_primes)
    max_d = cfg.max_split_degree or n
    start = cfg.prime_start or n * n
    sizes = set(proper_divisors(n))
    reports: list[CycleTypeReport] = []
    for p in _primes_from(start):
        if p > cfg.prime_limit or len(reports) >= max_primes:
            break
        if disc % p == 0 or f.lc % p == 0:
            continue
        r = cycle_type_at(f, p)
        reports.append(r)
        sizes = {k for k in sizes if _admits(r.cycle_type, k, n)}
        if not sizes:
            return InspectionResult(frozenset(), 0, 0, _order_divisor(reports, n, cfg), None, reports)
        have_linear = any(x.linear_factors for x in reports)
        have_split = any(x.split_degree <= max_d for x in reports)
        if len(reports) >= min_primes and have_linear and have_split:
            break
    if not any(x.linear_factors for x in reports):
        raise PrimeBudgetExceeded("no linear-factor prime found within budget")
    even = None
    if all(r.parity == 1 for r in reports) and _is_square(disc):
        even = True
    largest = max(sizes)
    lin = [r for r in reports if r.linear_factors]
    lll = min(lin, key=lambda r: (sum(1 for x in r.cycle_type if x < largest), r.prime))
    ps = min(reports, key=lambda r: (r.split_degree, r.prime))
    return InspectionResult(frozenset(sizes), lll.prime, ps.prime, _order_divisor(reports, n, cfg), even, reports)


def _order_divisor(reports, n, cfg) -> int:
    D = reduce(math.lcm, (order_divisor(r, n) for r in reports), n)
    if cfg.use_pgroup_rule:
        D = math.lcm(D, pgroup_divisor(reports, n))
    return D
