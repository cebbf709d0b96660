"""Field search: subfields and a Galois starting group with few LLL calls.

The search is a state machine over a table of known first blocks.  It talks
to a backend that produces principal block systems; the real backend uses
lattice reduction, the simulated one reads them off a known group.
"""

from __future__ import annotations

import itertools
import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from .cyclescan import (
    CycleTypeReport,
    InspectionConfig,
    InspectionResult,
    _admits,
    order_divisor,
    pgroup_divisor,
    prime_inspection,
    proper_divisors,
)
from .lllcore import (
    PrincipalConfig,
    PrincipalTrace,
    initial_lll_precision,
    principal_subfield,
    same_block_factors,
)
from .padic import build_splitting_context
from .permblocks import (
    BlockSystem,
    PermGroup,
    all_block_systems,
    alternating_group,
    cycles,
    identity,
    index2_transitive_subgroups,
    intersect_with_alternating,
    kernel_of_character,
    principal_block_system,
    principal_block_systems,
    sign,
    symmetric_group,
)
from .polyarith import IntPoly, discriminant, hensel_lift, is_irreducible_z, make_monic_integral, mod_factor
from .subfieldkit import SubfieldRecord, squarefree_kernel, subfield_from_blocks
from .wreathmeet import wreath_intersection

DO = "do factor"
SKIP = "skip factor"


class ReducibleInput(ValueError):
    pass


def _is_prime(q: int) -> bool:
    return q > 1 and all(q % d for d in range(2, math.isqrt(q) + 1))


def _prime_pair(n0: int):
    """(p, q) with n0 = p*q, primes p < q, else None."""
    for p in range(2, math.isqrt(n0) + 1):
        if n0 % p == 0:
            q = n0 // p
            return (p, q) if _is_prime(p) and _is_prime(q) and p < q else None
    return None


# ---------------------------------------------------------------------------


@dataclass
class KnownSubfieldTable:
    factor_degrees: list
    first: int
    possible_block_sizes: frozenset
    order_divisor: int = 1
    first_blocks: list = field(default_factory=list)
    principal_flags: list = field(default_factory=list)

    def __post_init__(self):
        if self.factor_degrees[self.first] != 1:
            raise ValueError("the first factor must be linear")

    @property
    def m(self) -> int:
        return len(self.factor_degrees)

    @property
    def n(self) -> int:
        return sum(self.factor_degrees)

    def size(self, delta) -> int:
        return sum(self.factor_degrees[i] for i in delta)

    def add(self, delta: Iterable[int], principal: bool = False) -> int:
        delta = frozenset(delta)
        if self.first not in delta:
            raise ValueError("first blocks contain the linear factor")
        if delta in self.first_blocks:
            k = self.first_blocks.index(delta)
            self.principal_flags[k] = self.principal_flags[k] or principal
            return k
        self.first_blocks.append(delta)
        self.principal_flags.append(principal)
        return len(self.first_blocks) - 1

    def is_principal(self, delta) -> bool:
        delta = frozenset(delta)
        return delta in self.first_blocks and self.principal_flags[self.first_blocks.index(delta)]


def pq_rule_engaged(table: KnownSubfieldTable, j: int) -> bool:
    """True when the block to refine has size p*q and a size-p refinement is known."""
    containing = [d for d in table.first_blocks if j in d]
    delta = min(containing, key=lambda d: (table.size(d), sorted(d))) if containing else frozenset(range(table.m))
    pq = _prime_pair(table.size(delta))
    return bool(pq) and any(table.size(d) == pq[0] for d in table.first_blocks if d < delta)


def lattice_test_explain(table: KnownSubfieldTable, j: int) -> tuple[str, str]:
    """Verdict for factor j together with the rule that decided it."""
    if not 0 <= j < table.m or j == table.first:
        raise ValueError("malformed factor index")
    deg = table.factor_degrees
    one = table.first
    everything = frozenset(range(table.m))
    containing = [d for d in table.first_blocks if j in d]
    delta = min(containing, key=lambda d: (table.size(d), sorted(d))) if containing else everything
    n0 = table.size(delta)
    principal = table.is_principal(delta)
    N = [d for d in table.first_blocks if d < delta]
    Nsizes = [table.size(d) for d in N]
    if n0 == 4 and principal and len(N) == 1:
        return SKIP, "degree 4 with principal block and one refinement"
    if n0 == 8 and principal and 2 in Nsizes and any(
            table.size(d) == 4 and table.is_principal(d) for d in N):
        return SKIP, "degree 8 with principal blocks of sizes 2 and 4"
    S = {d for d in table.possible_block_sizes if d < n0 and n0 % d == 0}
    others = [deg[i] for i in delta if i not in (one, j)]
    reach = 1
    for x in others:
        reach |= reach << x
    base = 1 + deg[j]
    S = {d for d in S if d >= base and (reach >> (d - base)) & 1}
    for k in Nsizes:
        S = {d for d in S if not (d - deg[j]) * (n0 // k) < d}
    for k in set(Nsizes):
        q = n0 // k
        if n0 % k == 0 and q > k and _is_prime(q) and q in Nsizes:
            S.discard(q)
    r = math.isqrt(n0)
    if r * r == n0 and r % 2 and _is_prime(r):
        if len(N) == 2 and principal:
            return SKIP, "odd prime square with two refinements, principal"
        if len(N) == 2 and len({deg[i] for i in delta if i != one}) > 1:
            return SKIP, "odd prime square with two refinements, mixed degrees"
    pq = _prime_pair(n0)
    if pq:
        p, q = pq
        if q % p != 1 and p in Nsizes:
            S.discard(p)
        if n0 not in (21, 55) and p in Nsizes:
            if principal or any(deg[i] > 1 for i in delta):
                S.discard(p)
        if n0 in (21, 55) and len(N) == 2 and principal:
            return SKIP, "exceptional pq degree with two refinements, principal"
    if not S:
        return SKIP, "no admissible block size"
    return DO, "sizes " + ",".join(map(str, sorted(S)))


def lattice_test(table: KnownSubfieldTable, j: int) -> str:
    return lattice_test_explain(table, j)[0]


# ---------------------------------------------------------------------------
# backends


class SearchBackend:
    """Interface used by the search state machine."""

    n: int
    factor_degrees: list
    first: int

    def principal(self, j: int):
        """(BlockSystem or None for Q, record, info) for the pair (r_1, f_j)."""
        raise NotImplementedError

    def delta(self, blocks: BlockSystem, record) -> frozenset:
        raise NotImplementedError

    def explicit(self, blocks: BlockSystem):
        """Record for a block system known to be genuine."""
        raise NotImplementedError

    def confirm(self, blocks: BlockSystem):
        """Record if the candidate is a genuine block system, else None."""
        raise NotImplementedError


class NumberFieldBackend(SearchBackend):
    def __init__(self, f: IntPoly, inspection: InspectionResult, seed: int = 0,
                 principal_config: PrincipalConfig | None = None, precision_cap: int | None = None):
        self.f = f
        self.n = f.degree
        self.ctx = build_splitting_context(f, inspection.splitting_prime, seed=seed)
        self.fac = mod_factor(f, inspection.lll_prime, seed)
        self.factor_degrees = self.fac.degrees
        self.first = next(i for i, d in enumerate(self.factor_degrees) if d == 1)
        self.cfg = principal_config or PrincipalConfig()
        if precision_cap is not None:
            self.cfg.precision_cap = precision_cap
        self.delta_prec = initial_lll_precision(f, inspection.lll_prime)
        self._lifted = hensel_lift(self.fac, self.delta_prec).factors
        m = inspection.lll_prime ** self.delta_prec
        self._r1 = -self._lifted[self.first][0] % m
        self.traces: list[PrincipalTrace] = []

    def principal(self, j):
        tr = PrincipalTrace(j)
        self.traces.append(tr)
        rec = principal_subfield(self.f, self.ctx, self.fac, j, self.cfg, tr, self.first)
        if rec.blocks.num_blocks == 1:
            return None, rec, tr
        return rec.blocks, rec, tr

    def delta(self, blocks, record):
        return frozenset(same_block_factors(record.h, self.fac, self._lifted, self._r1, self.delta_prec))

    def explicit(self, blocks):
        rec = subfield_from_blocks(self.ctx, blocks)
        if rec is None:
            raise ArithmeticError("a block system of the starting group did not give a subfield")
        return rec

    def confirm(self, blocks):
        return subfield_from_blocks(self.ctx, blocks, principal=True)


class GroupBackend(SearchBackend):
    """Simulated backend: roots are points, Frobenius is a chosen element of G."""

    def __init__(self, G: PermGroup, frob: tuple):
        self.G = G
        self.n = G.degree
        self.frob = frob
        self.cycles = sorted(cycles(frob), key=lambda c: (len(c), c[0]))
        self.factor_degrees = [len(c) for c in self.cycles]
        self.first = 0
        self.r1 = self.cycles[0][0]
        self.true_systems = set(all_block_systems(G))
        self.oracle_calls = 0

    def principal(self, j):
        self.oracle_calls += 1
        B = principal_block_system(self.G, self.cycles[j][0], self.r1)
        if B.num_blocks == 1:
            return None, None, None
        return B, B, None

    def delta(self, blocks, record):
        blk = set(blocks.blocks[blocks.block_of[self.r1]])
        return frozenset(i for i, c in enumerate(self.cycles) if c[0] in blk)

    def explicit(self, blocks):
        return blocks

    def confirm(self, blocks):
        return blocks if blocks in self.true_systems else None


# ---------------------------------------------------------------------------


@dataclass
class SearchState:
    table: KnownSubfieldTable
    known: dict                         # BlockSystem -> record
    group: PermGroup
    even: bool | None
    lll_calls: int = 0
    trace: list = field(default_factory=list)
    deltas: dict = field(default_factory=dict)  # BlockSystem -> first block of factors

    def proven(self) -> list:
        return [B for B, d in self.deltas.items() if self.table.is_principal(d)]


def _recompute_group(state: SearchState, n: int) -> PermGroup:
    systems = list(state.known)
    G = wreath_intersection(systems)
    if state.even:
        G = intersect_with_alternating(G)
    state.group = G
    return G


def _add_known(state: SearchState, backend: SearchBackend, B: BlockSystem, record, principal: bool):
    state.known[B] = record
    d = backend.delta(B, record)
    state.deltas[B] = d
    state.table.add(d, principal)


def run_search(backend: SearchBackend, possible_sizes, D: int, even: bool | None,
               adjust_budget: int = 10**6) -> SearchState:
    n = backend.n
    table = KnownSubfieldTable(list(backend.factor_degrees), backend.first, frozenset(possible_sizes), D)
    G0 = alternating_group(n) if even else symmetric_group(n)
    state = SearchState(table, {}, G0, even)
    order = sorted((j for j in range(table.m) if j != table.first), key=lambda j: (table.factor_degrees[j], j))
    for j in order:
        verdict, why = lattice_test_explain(table, j)
        entry = {"factor": j, "degree": table.factor_degrees[j], "verdict": verdict, "reason": why}
        if pq_rule_engaged(table, j):
            entry["pq_rule"] = True
        state.trace.append(entry)
        if verdict == SKIP:
            continue
        state.lll_calls += 1
        B, rec, info = backend.principal(j)
        if info is not None:
            entry["lll_precisions"] = list(info.lll_precisions)
            entry["block_precisions"] = list(info.block_precisions)
            entry["dims"] = list(info.dims)
        if B is None:
            entry["result"] = "rational"
            table.add(range(table.m), True)
            continue
        entry["result"] = f"{B.num_blocks}x{B.block_size}"
        if B in state.known:
            table.add(state.deltas[B], True)
            continue
        _add_known(state, backend, B, rec, True)
        G = _recompute_group(state, n)
        for P in principal_block_systems(G):
            if P not in state.known:
                _add_known(state, backend, P, backend.explicit(P), False)
        entry["group_order"] = G.order()
        if G.order() == D:
            entry["stop"] = "order equals divisor"
            break
        if G.order() == 2 * D:
            res = final_adjust(G, backend.confirm, state.proven(), budget=adjust_budget)
            entry["final_adjust"] = "none" if res is None else "found"
            if res is not None:
                P, prec = res
                _add_known(state, backend, P, prec, True)
                G = _recompute_group(state, n)
                entry["group_order"] = G.order()
            entry["stop"] = "order equals twice the divisor"
            break
    return state


def final_adjust(G: PermGroup, confirm: Callable, proven=(), budget: int = 10**6):
    """Descend to an index-2 subgroup if a missing subfield can be confirmed.

    Candidates are transitive index-2 subgroups whose principal systems keep
    every proven one and add something new.  Returns (BlockSystem, record)
    or None.
    """
    G_princ = set(principal_block_systems(G))
    G_all = set(all_block_systems(G))
    for H in index2_transitive_subgroups(G, budget):
        H_princ = set(principal_block_systems(H))
        if H_princ == G_princ or any(B not in H_princ for B in proven):
            continue
        new = sorted((B for B in H_princ if B not in G_all), key=lambda B: (B.block_size, B.blocks))
        for B in new:
            rec = confirm(B)
            if rec is not None:
                return B, rec
    return None


# ---------------------------------------------------------------------------
# number field driver


@dataclass
class FieldSearchResult:
    f: IntPoly
    subfields: list
    group: PermGroup
    inspection: InspectionResult | None
    lll_calls: int
    trace: list
    table: KnownSubfieldTable | None
    timings: dict
    scale: int = 1
    backend: NumberFieldBackend | None = None

    @property
    def no_subfields(self) -> bool:
        return not self.subfields


@dataclass
class SearchConfig:
    inspection: InspectionConfig = field(default_factory=InspectionConfig)
    principal: PrincipalConfig = field(default_factory=PrincipalConfig)
    precision_cap: int | None = None
    seed: int = 0
    check_irreducible: bool = True
    all_subfields: bool = True


def _rescale(rec: SubfieldRecord, c: int) -> SubfieldRecord:
    """Express h in the root of f instead of c times that root."""
    if c == 1:
        return rec
    h = tuple(Fraction(x) * c**k for k, x in enumerate(rec.h))
    return SubfieldRecord(rec.g, h, rec.blocks, rec.principal_proven, rec.invariant_shift, rec.notes)


def field_search(f: IntPoly, config: SearchConfig | None = None) -> FieldSearchResult:
    cfg = config or SearchConfig()
    timings = {}
    t0 = time.perf_counter()
    if f.degree < 2:
        raise ValueError("degree at least 2 expected")
    if cfg.check_irreducible and not is_irreducible_z(f):
        raise ReducibleInput("polynomial is reducible over Q")
    fm, c = make_monic_integral(f.primitive_part() if f.lc > 0 else -f.primitive_part())
    n = fm.degree
    timings["irreducibility"] = time.perf_counter() - t0
    t = time.perf_counter()
    cfg.inspection.seed = cfg.seed
    ins = prime_inspection(fm, cfg.inspection)
    timings["inspection"] = time.perf_counter() - t
    if ins.no_subfields:
        G = alternating_group(n) if _disc_square(fm) else symmetric_group(n)
        return FieldSearchResult(fm, [], G, ins, 0, [], None, timings, c)
    t = time.perf_counter()
    backend = NumberFieldBackend(fm, ins, cfg.seed, cfg.principal, cfg.precision_cap)
    timings["splitting_field"] = time.perf_counter() - t
    t = time.perf_counter()
    state = run_search(backend, ins.possible_block_sizes, ins.order_divisor, ins.group_is_even)
    timings["search"] = time.perf_counter() - t
    t = time.perf_counter()
    G = state.group
    systems = all_block_systems(G) if cfg.all_subfields else principal_block_systems(G)
    subs = []
    for B in systems:
        rec = state.known.get(B)
        if rec is None:
            rec = backend.explicit(B)
        subs.append(_rescale(rec, c))
    subs.sort(key=lambda r: (r.degree, r.blocks.blocks))
    timings["subfields"] = time.perf_counter() - t
    return FieldSearchResult(fm, subs, G, ins, state.lll_calls, state.trace, state.table, timings, c, backend)


def all_subfields(f: IntPoly, config: SearchConfig | None = None) -> list[SubfieldRecord]:
    return field_search(f, config).subfields


def _disc_square(f: IntPoly) -> bool:
    d = discriminant(f)
    return d > 0 and math.isqrt(d) ** 2 == d


# ---------------------------------------------------------------------------
# starting group


def _block_sign(B: BlockSystem):
    def chi(g):
        return sign(B.action(g))
    return chi


def _square_class_vectors(discs: list[int]):
    """F_2 exponent vectors of the square classes (sign first)."""
    primes = set()
    kernels = [squarefree_kernel(d) for d in discs]
    for k in kernels:
        a = abs(k)
        q = 2
        while q * q <= a:
            while a % q == 0:
                primes.add(q)
                a //= q
            q += 1
        if a > 1:
            primes.add(a)
    plist = sorted(primes)
    vecs = []
    for k in kernels:
        v = [1 if k < 0 else 0] + [1 if abs(k) % q == 0 else 0 for q in plist]
        vecs.append(v)
    return vecs


def _f2_kernel(vecs) -> list[list[int]]:
    """Basis of {s in F_2^r : sum s_i vecs_i = 0}."""
    r = len(vecs)
    if r == 0:
        return []
    cols = len(vecs[0])
    # augmented rows [vec | e_i]
    rows = [list(v) + [1 if j == i else 0 for j in range(r)] for i, v in enumerate(vecs)]
    piv_row = 0
    for c in range(cols):
        pr = next((i for i in range(piv_row, r) if rows[i][c]), None)
        if pr is None:
            continue
        rows[piv_row], rows[pr] = rows[pr], rows[piv_row]
        for i in range(r):
            if i != piv_row and rows[i][c]:
                rows[i] = [a ^ b for a, b in zip(rows[i], rows[piv_row])]
        piv_row += 1
    return [row[cols:] for row in rows[piv_row:]]


@dataclass
class StartingGroupResult:
    group: PermGroup
    wreath_order: int
    refinements: list
    search: FieldSearchResult
    descent_plan: list


def starting_group(f: IntPoly, config: SearchConfig | None = None) -> StartingGroupResult:
    """Wreath intersection of Galois-generating subfields refined by square classes."""
    res = field_search(f, config)
    fm = res.f
    n = fm.degree
    G = res.group
    worder = G.order()
    fields = [(BlockSystem(tuple((i,) for i in range(n))), discriminant(fm))]
    for rec in res.subfields:
        if rec.degree >= 2:
            fields.append((rec.blocks, discriminant(rec.g)))
    vecs = _square_class_vectors([d for _, d in fields])
    refinements = []
    for S in _f2_kernel(vecs):
        members = [fields[i][0] for i, s in enumerate(S) if s]
        chis = [_block_sign(B) for B in members]

        def chi(g, chis=chis):
            v = 1
            for c in chis:
                v *= c(g)
            return v

        H = kernel_of_character(G, chi)
        if H.order() < G.order():
            refinements.append({"subfield_degrees": [B.num_blocks for B in members],
                                "order_before": G.order(), "order_after": H.order()})
            G = H
    plan = descent_plan(G, res)
    return StartingGroupResult(G, worder, refinements, res, plan)


def block_action_group(G: PermGroup, B: BlockSystem) -> PermGroup:
    return PermGroup(B.num_blocks, [B.action(g) for g in G.generators])


def descent_plan(G: PermGroup, res: FieldSearchResult) -> list[dict]:
    """Which subfields would still need a descent, smallest degree first."""
    plan = []
    subs = sorted((r for r in res.subfields if r.degree >= 2), key=lambda r: r.degree)
    for rec in subs:
        proj = block_action_group(G, rec.blocks).order()
        low = rec.degree
        if rec.degree > 2:
            try:
                low = prime_inspection(rec.g).order_divisor
            except Exception:
                pass
        plan.append({"degree": rec.degree, "projection_order": proj, "lower_bound": low,
                     "needs_descent": proj != low})
    # maximal proper subfields have the finest blocks
    maximal = [r for r in subs if not any(o is not r and o.blocks.refines(r.blocks) for o in subs)]
    if len(maximal) == 1 and res.f.degree // maximal[0].degree > 2:
        plan.append({"relative_discriminant_field": True, "over_degree": maximal[0].degree})
    return plan


# ---------------------------------------------------------------------------
# short cosets


def _partitions_into_blocks(points: list[int], k: int):
    if not points:
        yield []
        return
    a = points[0]
    rest = points[1:]
    for comb in itertools.combinations(rest, k - 1):
        block = (a,) + comb
        remaining = [x for x in rest if x not in comb]
        for tail in _partitions_into_blocks(remaining, k):
            yield [block] + tail


def count_short_cosets(sigma: tuple, k: int) -> int:
    """Number of partitions into blocks of size k that sigma permutes."""
    n = len(sigma)
    if n % k:
        raise ValueError("k must divide n")
    count = 0
    for part in _partitions_into_blocks(list(range(n)), k):
        blocks = {frozenset(b) for b in part}
        if all(frozenset(sigma[x] for x in b) in blocks for b in part):
            count += 1
    return count


def short_coset_formula_identity(n: int, k: int) -> Fraction:
    """n! / (n (n-k) (n-2k) ... (2k) k): the closed form for the identity row."""
    den = 1
    t = n
    while t >= k:
        den *= t
        t -= k
    return Fraction(math.factorial(n), den)


# ---------------------------------------------------------------------------
# simulation


@dataclass
class SimulationResult:
    oracle_calls: int
    systems: list
    group: PermGroup
    frobenius: tuple
    possible_block_sizes: frozenset
    order_divisor: int
    trace: list

    @property
    def calls_after_pq_rule(self) -> int | None:
        """Oracle calls issued from the first test where the p*q rule engaged."""
        for i, e in enumerate(self.trace):
            if e.get("pq_rule"):
                return sum(1 for x in self.trace[i:] if x["verdict"] == DO)
        return None


def simulate_from_group(G: PermGroup, seed: int = 0, samples: int | None = None,
                        frob: tuple | None = None) -> SimulationResult:
    """Run the search control flow with Frobenius elements drawn from G."""
    if not G.is_transitive():
        raise ValueError("simulation needs a transitive group")
    n = G.degree
    rng = random.Random(seed)
    samples = samples or max(25, 2 * n)
    reports = []
    sizes = set(proper_divisors(n))
    fixed = [] if frob is None else [frob]
    budget = 200 * n
    while len(reports) < samples or not fixed:
        g = G.random_element(rng)
        ct = tuple(sorted(len(c) for c in cycles(g)))
        reports.append(CycleTypeReport(0, ct))
        sizes = {k for k in sizes if _admits(ct, k, n)}
        if 1 in ct:
            fixed.append(g)
        budget -= 1
        if budget <= 0 and not fixed:
            fixed.append(identity(n))
    D = n
    for r in reports:
        D = math.lcm(D, order_divisor(r, n))
    D = math.lcm(D, pgroup_divisor(reports, n))
    even = True if G.is_even() else None
    if not sizes:
        G0 = alternating_group(n) if even else symmetric_group(n)
        return SimulationResult(0, [], G0, fixed[0], frozenset(), D, [])
    if frob is None:
        largest = max(sizes)
        frob = min(fixed, key=lambda g: (sum(1 for c in cycles(g) if len(c) < largest), fixed.index(g)))
    backend = GroupBackend(G, frob)
    state = run_search(backend, sizes, D, even)
    return SimulationResult(backend.oracle_calls, all_block_systems(state.group), state.group, frob,
                            frozenset(sizes), D, state.trace)
