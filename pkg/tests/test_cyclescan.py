import math
import random

import pytest

from subfieldlattice.cyclescan import (
    CycleTypeReport,
    InspectionConfig,
    cycle_type_at,
    order_divisor,
    pgroup_divisor,
    prime_inspection,
    sieve_block_sizes,
)
from subfieldlattice.groups import catalogue, cyclic_group, dihedral_group, wreath_product
from subfieldlattice.permblocks import all_block_systems, cycle_type
from subfieldlattice.polyarith import BadPrime, IntPoly, parse_poly


def rep(*t):
    return CycleTypeReport(0, tuple(t))


def test_cycle_types_at_primes():
    assert cycle_type_at(IntPoly([1, 0, 1]), 5).cycle_type == (1, 1)
    assert cycle_type_at(IntPoly([1, 0, 1]), 3).cycle_type == (2,)
    # 2 is not a cube modulo 7, so x^3 - 2 stays irreducible there
    assert cycle_type_at(IntPoly([-2, 0, 0, 1]), 7).cycle_type == (3,)
    assert cycle_type_at(IntPoly([-2, 0, 0, 1]), 5).cycle_type == (1, 2)
    with pytest.raises(BadPrime):
        cycle_type_at(IntPoly([-2, 0, 0, 1]), 3)


def test_order_divisor_formula():
    assert order_divisor(rep(1, 2, 2), 5) == 10
    assert order_divisor(rep(6), 6) == 6
    assert order_divisor(rep(1, 1, 4), 6) == 24


def test_pgroup_trivial_cases():
    assert pgroup_divisor([rep(1, 1, 2)], 4) == 1
    assert pgroup_divisor([rep(1, 1, 2), rep(1, 1, 2)], 4) == 1


def test_pgroup_needs_fixed_points():
    # the 8-cycle of D16 has no fixed point, so no pair qualifies and the divisor stays sound
    G = dihedral_group(8)
    d = pgroup_divisor([rep(8), rep(1, 1, 2, 2, 2)], 8)
    assert d == 1 and G.order() % d == 0


def test_pgroup_positive_case():
    G = wreath_product(cyclic_group(3), cyclic_group(3))
    d = pgroup_divisor([rep(1, 1, 1, 1, 1, 1, 3), rep(1, 1, 1, 3, 3)], 9)
    assert d == 81 == G.order()
    assert pgroup_divisor([rep(1, 1, 1, 1, 1, 1, 3), rep(1, 1, 1, 3, 3)], 9, require_fixed_point=False) == 1


def test_sieve_examples():
    assert sieve_block_sizes([rep(1, 5)], 6) == set()
    assert sieve_block_sizes([rep(6)], 6) == {2, 3}
    assert sieve_block_sizes([rep(1, 1, 1, 1, 1, 1, 1)], 7) == set()
    assert sieve_block_sizes([rep(1, 1, 1, 1)], 4) == {2}


@pytest.mark.parametrize("name", sorted(catalogue()))
def test_sieve_and_divisors_sound_on_catalogue(name):
    G = catalogue()[name]
    n = G.degree
    order = G.order()
    if order <= 50000:
        elements = G.elements()
    else:
        rng = random.Random(0)
        elements = (G.random_element(rng) for _ in range(3000))
    types = {cycle_type(g) for g in elements}
    reports = [CycleTypeReport(0, t) for t in types]
    true_sizes = {B.block_size for B in all_block_systems(G)}
    assert true_sizes <= sieve_block_sizes(reports, n)
    D = n
    for r in reports:
        assert order % order_divisor(r, n) == 0
        D = math.lcm(D, order_divisor(r, n))
    assert order % math.lcm(D, pgroup_divisor(reports, n)) == 0


def test_inspection_prime_degree():
    res = prime_inspection(parse_poly("x^3-2"))
    assert res.no_subfields


def test_inspection_x4_plus_1():
    res = prime_inspection(parse_poly("x^4+1"))
    assert res.possible_block_sizes == {2}
    assert res.group_is_even
    assert res.order_divisor == 4


def test_inspection_f18_keeps_true_sizes():
    res = prime_inspection(parse_poly("x^18+9*x^9+27"))
    assert {3, 6, 9} <= res.possible_block_sizes
    assert 559872 % res.order_divisor == 0
    assert res.reports and all(sum(r.cycle_type) == 18 for r in res.reports)
    assert any(r.cycle_type.count(1) >= 1 and r.prime == res.lll_prime for r in res.reports)


@pytest.mark.parametrize("poly", ["x^5-x-1", "x^4+x+1", "x^7-7*x+3", "x^6+x+1"])
def test_primitive_groups_have_no_sizes(poly):
    # these Galois groups are primitive (S5, S4, PSL(2,7), S6)
    assert prime_inspection(parse_poly(poly)).no_subfields


def test_inspection_is_deterministic():
    f = parse_poly("x^8+1")
    a = prime_inspection(f, InspectionConfig(seed=3))
    b = prime_inspection(f, InspectionConfig(seed=3))
    assert a == b
