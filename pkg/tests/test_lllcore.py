from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from subfieldlattice.cyclescan import cycle_type_at, prime_inspection
from subfieldlattice.lllcore import (
    PrincipalConfig,
    PrincipalTrace,
    build_principal_lattice,
    lll_reduce,
    principal_subfield,
    removal_bound,
)
from subfieldlattice.padic import build_splitting_context
from subfieldlattice.polyarith import discriminant, hensel_lift, mod_factor, parse_poly
from subfieldlattice.subfieldkit import choose_splitting_prime, is_embedding, square_class


def gram_schmidt_sq(rows):
    """Exact squared Gram-Schmidt lengths and mu coefficients."""
    bstar, mu = [], []
    for i, b in enumerate(rows):
        v = [Fraction(x) for x in b]
        mu.append([])
        for j in range(i):
            bj = bstar[j]
            m = sum(Fraction(x) * y for x, y in zip(b, bj)) / sum(y * y for y in bj)
            mu[i].append(m)
            v = [a - m * c for a, c in zip(v, bj)]
        bstar.append(v)
    return [sum(x * x for x in v) for v in bstar], mu


def assert_reduced(rows, delta=Fraction(99, 100)):
    norms, mu = gram_schmidt_sq(rows)
    for i in range(len(rows)):
        for j in range(i):
            assert abs(mu[i][j]) <= Fraction(1, 2)
        if i:
            assert norms[i] >= (delta - mu[i][i - 1] ** 2) * norms[i - 1]


def same_lattice(a, b):
    A, B = sympy.Matrix(a), sympy.Matrix(b)
    if abs(A.det()) != abs(B.det()):
        return False
    T = B * A.inv()
    return all(x.is_integer for x in T)


def test_identity_is_fixed():
    rows, d = lll_reduce([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert rows == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    assert d == [1, 1, 1, 1]


def test_two_dimensional_example():
    rows, _ = lll_reduce([[1, 0], [4, 1]])
    assert max(max(abs(x) for x in r) for r in rows) == 1
    assert same_lattice(rows, [[1, 0], [4, 1]])


def test_removal_keeps_planted_vector():
    big = 10**6
    basis = [[1, 0, 0, 3], [0, 1, 0, big], [0, 0, 1, 7 * big + 12345]]
    basis.append([0, 0, 0, big * big])
    rows, _ = lll_reduce(basis, removal_bound_sq=100)
    assert rows in ([[1, 0, 0, 3]], [[-1, 0, 0, -3]])


def test_dependent_rows_rejected():
    with pytest.raises(ValueError):
        lll_reduce([[1, 2], [2, 4]])


square_bases = st.integers(2, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-30, 30), min_size=n, max_size=n), min_size=n, max_size=n)
).filter(lambda m: sympy.Matrix(m).det() != 0)


@settings(max_examples=40, deadline=None)
@given(square_bases)
def test_output_is_reduced_and_same_lattice(m):
    rows, d = lll_reduce(m)
    assert_reduced(rows)
    assert same_lattice(rows, m)
    norms, _ = gram_schmidt_sq(rows)
    for i, ns in enumerate(norms):
        assert Fraction(d[i + 1], d[i]) == ns


def test_lattice_dimensions():
    f = parse_poly("x^18+9*x^9+27")
    ins = prime_inspection(f)
    fac = mod_factor(f, ins.lll_prime)
    lifted = hensel_lift(fac, 10).factors
    first = next(i for i, g in enumerate(lifted) if len(g) == 2)
    m = ins.lll_prime**10
    r1 = -lifted[first][0] % m
    for j, fj in enumerate(lifted):
        if j == first:
            continue
        L = build_principal_lattice(f, lifted[first], fj, r1, ins.lll_prime, 10)
        assert L.dimension == 18 + len(fj) - 1
        assert L.rank == 18 + len(fj) - 1
        assert L.removal_bound == removal_bound(f)


def principal_records(poly):
    f = parse_poly(poly)
    ins = prime_inspection(f)
    ctx = build_splitting_context(f, ins.splitting_prime or choose_splitting_prime(f))
    lp = ins.lll_prime or next(q for q in sympy.primerange(f.degree**2, 10**4)
                               if discriminant(f) % q and 1 in cycle_type_at(f, q).cycle_type)
    fac = mod_factor(f, lp)
    first = next(i for i, g in enumerate(fac.factors) if len(g) == 2)
    out = []
    for j in range(len(fac.factors)):
        if j != first:
            tr = PrincipalTrace(j)
            out.append((principal_subfield(f, ctx, fac, j, PrincipalConfig(), tr, first), tr))
    return f, out


def test_x4_plus_1_principal_subfields():
    f, recs = principal_records("x^4+1")
    assert len(recs) == 3
    classes = sorted(square_class(r.g) for r, _ in recs)
    assert classes == [-2, -1, 2]
    for r, tr in recs:
        assert r.degree == 2 and is_embedding(f, r.g, r.h)
        assert tr.outcome == "subfield" and tr.lll_precisions


def test_f18_has_quadratic_principal_subfield():
    f, recs = principal_records("x^18+9*x^9+27")
    quads = [r for r, _ in recs if r.degree == 2]
    assert quads and all(square_class(r.g) == -3 for r in quads)
    assert all(is_embedding(f, r.g, r.h) for r, _ in recs if r.degree > 1)


def test_primitive_field_gives_rational_subfield():
    # S4 quartic: no proper subfields, so every principal subfield is Q
    f, recs = principal_records("x^4+x+1")
    assert recs
    for r, tr in recs:
        assert r.degree == 1 and tr.outcome == "rational"
