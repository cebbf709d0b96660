import pytest
from hypothesis import given, settings, strategies as st

from subfieldlattice.padic import (
    UnramifiedRing,
    build_splitting_context,
    cycle_type,
    find_irreducible,
    frobenius_map,
    frobenius_permutation,
    raise_precision,
    reduce_context,
)
from subfieldlattice.polyarith import BadPrime, IntPoly, is_irreducible_fp, mod_factor


def rational_roots(ctx):
    return sorted(r[0] for r in ctx.roots)


def test_split_quadratic():
    ctx = build_splitting_context(IntPoly([1, 0, 1]), 5, a=1)
    assert ctx.ext_degree == 1
    assert rational_roots(ctx) == [2, 3]
    assert frobenius_permutation(ctx) == (0, 1)


def test_inert_quadratic():
    ctx = build_splitting_context(IntPoly([1, 0, 1]), 3, a=1)
    assert ctx.ext_degree == 2
    assert cycle_type(frobenius_permutation(ctx)) == [2]


def test_cubic_mod_seven_is_irreducible():
    # x^3 - 2 has no cube root of 2 modulo 7, so Frobenius is a 3-cycle
    ctx = build_splitting_context(IntPoly([-2, 0, 0, 1]), 7)
    assert sorted(cycle_type(ctx.frobenius)) == [3]
    ctx = build_splitting_context(IntPoly([-2, 0, 0, 1]), 5)
    assert sorted(cycle_type(ctx.frobenius)) == [1, 2]
    assert ctx.ext_degree == 2


def test_raise_precision_examples():
    ctx = build_splitting_context(IntPoly([-2, 0, 1]), 7, a=1)
    up = raise_precision(ctx, 2)
    assert 10 in rational_roots(up)
    assert raise_precision(up, 2) is up
    ctx = build_splitting_context(IntPoly([1, 0, 1]), 5, a=1)
    assert 57 in rational_roots(raise_precision(ctx, 3))


def test_bad_prime():
    with pytest.raises(BadPrime):
        build_splitting_context(IntPoly([1, 0, 0, 0, 1]), 2)
    with pytest.raises(BadPrime):
        build_splitting_context(IntPoly([3, 0, 1]), 3)


def test_find_irreducible():
    for p, d in [(3, 2), (5, 3), (7, 4), (11, 1)]:
        F = find_irreducible(p, d)
        assert len(F) == d + 1 and F[-1] == 1
        assert is_irreducible_fp(list(F), p)


def test_ring_inverse():
    R = UnramifiedRing(5, find_irreducible(5, 3), 4)
    x = R.reduce([2, 1, 3])
    assert R.mul(x, R.inv(x)) == R.one()


polys = st.lists(st.integers(-9, 9), min_size=3, max_size=6).map(lambda c: c + [1])


@settings(max_examples=25, deadline=None)
@given(polys, st.sampled_from([5, 7, 11, 13, 17]), st.integers(2, 12))
def test_context_invariants(c, p, a):
    f = IntPoly(c)
    if not mod_factor(f, p).squarefree:
        return
    ctx = build_splitting_context(f, p, a=3)
    up = raise_precision(ctx, a + 3)
    R = up.ring()
    for r in up.roots:
        assert R.eval_poly(f.coeffs, r) == R.zero()
    assert sorted(cycle_type(up.frobenius)) == sorted(mod_factor(f, p).degrees)
    assert reduce_context(up, 3) == ctx
    # Frobenius map permutes the roots exactly as the stored permutation says
    phi = frobenius_map(up)
    for i, r in enumerate(up.roots):
        assert phi(r) == up.roots[up.frobenius[i]]
