"""Exact integral LLL with removals and the principal subfield algorithm."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .padic import SplittingContext, raise_precision
from .permblocks import BlockSystem
from .polyarith import (
    IntPoly,
    ModFactorization,
    _trim,
    hensel_lift,
    pmul,
    prem_mod,
    pinv_mod,
    eval_mod,
)
from .subfieldkit import (
    SubfieldRecord,
    _frac_mod,
    _inverse_mod_f,
    qmul,
    qrem,
    subfield_from_blocks,
)


class PrecisionCeiling(RuntimeError):
    def __init__(self, msg, diagnostics=None):
        super().__init__(msg)
        self.diagnostics = diagnostics or {}


@dataclass
class LatticeBasis:
    rows: list
    removal_bound: int | None = None

    @property
    def dimension(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    @property
    def rank(self) -> int:
        return len(self.rows)


def _dot(u, v) -> int:
    return sum(a * b for a, b in zip(u, v))


def lll_reduce(rows, delta: Fraction = Fraction(99, 100), removal_bound_sq=None):
    """Integral LLL (fraction-free Gram-Schmidt data).

    With ``removal_bound_sq`` the trailing vectors whose Gram-Schmidt length
    squared exceeds it are discarded at the end.  Returns (rows, d) where
    d[i+1]/d[i] is the squared Gram-Schmidt length of row i.
    """
    b = [list(r) for r in rows]
    n = len(b)
    if n == 0:
        return [], [1]
    a_num, a_den = delta.numerator, delta.denominator
    d = [1] + [0] * n
    lam = [[0] * n for _ in range(n)]
    d[1] = _dot(b[0], b[0])
    if d[1] == 0:
        raise ValueError("dependent rows")
    k, kmax = 1, 0

    def red(k, l):
        dl = d[l + 1]
        if 2 * abs(lam[k][l]) > dl:
            q = (2 * lam[k][l] + dl) // (2 * dl)
            bk, bl = b[k], b[l]
            for t in range(len(bk)):
                if bl[t]:
                    bk[t] -= q * bl[t]
            lam[k][l] -= q * dl
            lk, ll = lam[k], lam[l]
            for i in range(l):
                lk[i] -= q * ll[i]

    while k < n:
        if k > kmax:
            kmax = k
            for j in range(k + 1):
                u = _dot(b[k], b[j])
                for i in range(j):
                    u = (d[i + 1] * u - lam[k][i] * lam[j][i]) // d[i]
                if j < k:
                    lam[k][j] = u
                else:
                    if u == 0:
                        raise ValueError("dependent rows")
                    d[k + 1] = u
        red(k, k - 1)
        lk = lam[k][k - 1]
        if a_den * d[k + 1] * d[k - 1] < a_num * d[k] * d[k] - a_den * lk * lk:
            b[k], b[k - 1] = b[k - 1], b[k]
            for j in range(k - 1):
                lam[k][j], lam[k - 1][j] = lam[k - 1][j], lam[k][j]
            B = (d[k - 1] * d[k + 1] + lk * lk) // d[k]
            for i in range(k + 1, kmax + 1):
                t = lam[i][k]
                lam[i][k] = (d[k + 1] * lam[i][k - 1] - lk * t) // d[k]
                lam[i][k - 1] = (B * t + lk * lam[i][k]) // d[k + 1]
            d[k] = B
            k = max(1, k - 1)
        else:
            for l in range(k - 2, -1, -1):
                red(k, l)
            k += 1
    if removal_bound_sq is not None:
        while b and d[len(b)] > removal_bound_sq * d[len(b) - 1]:
            b.pop()
    return b, d[: len(b) + 1]


def lll_with_removals(basis: LatticeBasis, bound=None) -> list:
    bound = basis.removal_bound if bound is None else bound
    rows, _ = lll_reduce(basis.rows, removal_bound_sq=None if bound is None else bound * bound)
    return rows


def removal_bound(f: IntPoly) -> int:
    """n^2 * ||f||_2, rounded up."""
    n = f.degree
    return math.isqrt(n**4 * sum(c * c for c in f.coeffs)) + 1


def initial_lll_precision(f: IntPoly, p: int) -> int:
    n = f.degree
    return math.ceil((2 * n + math.log(max(f.norm1(), 2), p)) * 1.5)


# ---------------------------------------------------------------------------
# lattices for the principal subfield of (f_1, f_j)


def _linear_root(f1, m: int) -> int:
    """Root of the monic linear factor x + c."""
    return -f1[0] % m


def build_principal_lattice(f: IntPoly, f1, fj, r1: int, p: int, prec: int) -> LatticeBasis:
    """Rows (e_k | x^k mod f_j - r1^k) and (0 | p^prec e_t)."""
    if len(f1) != 2:
        raise ValueError("f_1 must be linear")
    m = p**prec
    n, dj = f.degree, len(fj) - 1
    rows = []
    xk = [1]
    for k in range(n):
        red = prem_mod(xk, fj, m)
        right = [(red[t] if t < len(red) else 0) for t in range(dj)]
        right[0] = (right[0] - pow(r1, k, m)) % m
        rows.append([1 if i == k else 0 for i in range(n)] + right)
        xk = [0] + xk
    for t in range(dj):
        rows.append([0] * n + [m if i == t else 0 for i in range(dj)])
    return LatticeBasis(rows, removal_bound(f))


def _kernel_basis(M: list[list[int]], m: int, p: int) -> list[list[int]]:
    """Basis of {v in Z^n : v M = 0 mod m} for M of rank = #columns over Z_p."""
    n = len(M)
    cols = len(M[0]) if M else 0
    A = [row[:] for row in M]
    order = list(range(n))
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, n) if A[i][c] % p), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        order[r], order[piv] = order[piv], order[r]
        inv = pow(A[r][c], -1, m)
        A[r] = [x * inv % m for x in A[r]]
        for i in range(n):
            if i != r and A[i][c] % m:
                fac = A[i][c]
                A[i] = [(x - fac * y) % m for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    if r != cols:
        raise ArithmeticError("degenerate kernel map")
    # rows order[0..r-1] are pivots; v = e_free - sum coef e_pivot
    basis = []
    for i in range(r, n):
        if any(x % m for x in A[i]):
            raise ArithmeticError("kernel map not reduced")
    # recover kernel vectors: express non-pivot rows of M through the pivot rows
    # by solving on the pivot columns
    P = [M[order[i]] for i in range(r)]
    Pinv = _mat_inv_mod([[P[i][pivots[j]] for j in range(r)] for i in range(r)], m)
    for i in range(r, n):
        row = M[order[i]]
        coef = [sum(row[pivots[j]] * Pinv[j][t] for j in range(r)) % m for t in range(r)]
        v = [0] * n
        v[order[i]] = 1
        for t in range(r):
            v[order[t]] = -coef[t] % m
            if 2 * v[order[t]] > m:
                v[order[t]] -= m
        basis.append(v)
    for t in range(r):
        v = [0] * n
        v[order[t]] = m
        basis.append(v)
    return basis


def _mat_inv_mod(A, m):
    n = len(A)
    M = [row[:] + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(A)]
    for c in range(n):
        piv = next(i for i in range(c, n) if math.gcd(M[i][c], m) == 1)
        M[c], M[piv] = M[piv], M[c]
        inv = pow(M[c][c], -1, m)
        M[c] = [x * inv % m for x in M[c]]
        for i in range(n):
            if i != c and M[i][c]:
                fac = M[i][c]
                M[i] = [(x - fac * y) % m for x, y in zip(M[i], M[c])]
    return [row[n:] for row in M]


def kernel_lattice(f: IntPoly, fj, r1: int, p: int, prec: int, scaling: str = "fprime") -> list[list[int]]:
    """Rank-n lattice of coefficient vectors whose element lies in the principal subfield.

    ``scaling="power"``: vectors are coefficients of h with h(x) = h(r1) mod f_j.
    ``scaling="fprime"``: vectors are coefficients of P = h f' mod f; such P
    are integral for every algebraic integer h of the subfield.
    """
    m = p**prec
    n, dj = f.degree, len(fj) - 1
    if scaling == "power":
        w, w1 = [1], 1
    elif scaling == "fprime":
        df = [c % m for c in f.derivative().coeffs]
        w = pinv_mod_pk(prem_mod(df, fj, m), fj, p, prec)
        w1 = pow(eval_mod(df, r1, m), -1, m)
    else:
        raise ValueError(f"unknown scaling {scaling!r}")
    M = []
    xk = [1]
    for k in range(n):
        red = prem_mod(pmul(xk, w, m), fj, m)
        row = [(red[t] if t < len(red) else 0) for t in range(dj)]
        row[0] = (row[0] - pow(r1, k, m) * w1) % m
        M.append(row)
        xk = [0] + xk
    if dj == 0:
        return [[1 if i == k else 0 for i in range(n)] for k in range(n)]
    return _kernel_basis(M, m, p)


def pinv_mod_pk(a, mod, p, k):
    """Inverse of a modulo (mod, p^k) by Newton lifting from p."""
    m = p**k
    inv = pinv_mod([x % p for x in a], [x % p for x in mod], p)
    prec = 1
    while prec < k:
        prec = min(2 * prec, k)
        mm = p**prec
        t = prem_mod(pmul(a, inv, mm), mod, mm)
        t = [(-x) % mm for x in t] or [0]
        t[0] = (t[0] + 2) % mm
        inv = prem_mod(pmul(inv, _trim(t), mm), mod, mm)
    return [x % m for x in inv]


# ---------------------------------------------------------------------------


@dataclass
class PrincipalConfig:
    scaling: str = "fprime"
    precision_cap: int = 4096
    block_precision_cap: int = 1 << 12
    bound_factor: int = 1


@dataclass
class PrincipalTrace:
    factor_index: int
    lll_precisions: list = field(default_factory=list)
    block_precisions: list = field(default_factory=list)
    dims: list = field(default_factory=list)
    outcome: str = ""


def vector_to_poly(v, f: IntPoly, scaling: str) -> tuple:
    """Rational polynomial h (mod f) represented by a lattice vector."""
    if scaling == "power":
        return tuple(Fraction(c) for c in _trim(list(v))) or (Fraction(0),)
    finv = _inverse_mod_f(tuple(f.derivative().coeffs), tuple(f.coeffs))
    h = qrem(qmul([Fraction(c) for c in v], list(finv)), f)
    return tuple(h) or (Fraction(0),)


def same_block_factors(h, fac: ModFactorization, lifted, r1: int, prec: int) -> set:
    """Indices i of p-adic factors f_i with h(x) = h(r1) mod f_i."""
    p = fac.prime
    m = p**prec
    hc = [_frac_mod(Fraction(c), m) for c in h]
    hr = eval_mod(hc, r1, m)
    out = set()
    for i, fi in enumerate(lifted):
        red = prem_mod(hc, fi, m)
        red = list(red) or [0]
        red[0] = (red[0] - hr) % m
        if not _trim(red):
            out.add(i)
    return out


def principal_subfield(f: IntPoly, ctx: SplittingContext, fac: ModFactorization, j: int,
                       config: PrincipalConfig | None = None, trace: PrincipalTrace | None = None,
                       first: int | None = None) -> SubfieldRecord:
    """The principal subfield for the root of the linear factor and the factor f_j."""
    cfg = config or PrincipalConfig()
    trace = trace if trace is not None else PrincipalTrace(j)
    p = fac.prime
    n = f.degree
    if first is None:
        first = next(i for i, g in enumerate(fac.factors) if len(g) == 2)
    if j == first:
        raise ValueError("f_j must differ from the linear factor")
    bound = removal_bound(f) * cfg.bound_factor
    prL = initial_lll_precision(f, p)
    while True:
        if prL > cfg.precision_cap:
            raise PrecisionCeiling("LLL precision ceiling exceeded",
                                   {"factor": j, "lll_precisions": trace.lll_precisions})
        trace.lll_precisions.append(prL)
        lifted = hensel_lift(fac, prL).factors
        r1 = _linear_root(lifted[first], p**prL)
        rows = kernel_lattice(f, lifted[j], r1, p, prL, cfg.scaling)
        U, _ = lll_reduce(rows, removal_bound_sq=bound * bound)
        k = len(U)
        trace.dims.append(k)
        if k == 0:
            prL *= 2
            continue
        if k == 1:
            trace.outcome = "rational"
            blocks = BlockSystem((tuple(range(n)),))
            return SubfieldRecord(IntPoly([0, 1]), (Fraction(0),), blocks, True, 0)
        hs = [vector_to_poly(v, f, cfg.scaling) for v in U]
        blocks = _identify_blocks(ctx, hs, k, trace, cfg)
        if blocks is None:
            prL *= 2
            continue
        rec = subfield_from_blocks(ctx, blocks, principal=True)
        if rec is None:
            prL *= 2
            continue
        if j not in same_block_factors(rec.h, fac, lifted, r1, prL):
            prL *= 2
            continue
        trace.outcome = "subfield"
        return rec


def _identify_blocks(ctx: SplittingContext, hs, k: int, trace, cfg) -> BlockSystem | None:
    n = ctx.n
    prB = 1
    while True:
        if prB > ctx.precision:
            ctx = raise_precision(ctx, prB)
        R = ctx.ring(prB)
        m = R.m
        try:
            coeffs = [[_frac_mod(c, m) for c in h] for h in hs]
        except ValueError:
            return None
        tuples = []
        for r in ctx.roots:
            rr = R.reduce(r)
            tuples.append(tuple(R.eval_poly(hc, rr) for hc in coeffs))
        trace.block_precisions.append(prB)
        V = {}
        for i, t in enumerate(tuples):
            V.setdefault(t, []).append(i)
        if len(V) < k:
            if prB >= cfg.block_precision_cap:
                return None
            prB *= 2
            continue
        if len(V) > k or any(len(c) != n // k for c in V.values()) or n % k:
            return None
        return BlockSystem(tuple(tuple(c) for c in V.values()))
