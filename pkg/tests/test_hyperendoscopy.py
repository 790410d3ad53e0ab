"""Refinement chains, formal distributions, and the inversion identity."""

from fractions import Fraction

import pytest

from endoscopylab.guards import GuardError
from endoscopylab.hyperendoscopy import (
    FormalDist,
    GroupSymbol,
    _plan_count,
    chain_expansion,
    chain_iota,
    dominant_contribution,
    enumerate_chains,
    expand_stable,
    verify_inversion,
)
from endoscopylab.params import ArthurShape, Summand, from_cohomological


def shapes_of(*parts_list):
    return [from_cohomological(parts) for parts in parts_list]


def test_group_symbol_normalizes():
    g = GroupSymbol((1, 2, 2))
    assert g.ranks == (2, 2, 1)
    assert g.dim == 9
    assert g.total_rank == 5
    assert str(g) == "U(2)^2xU(1)"
    with pytest.raises(ValueError):
        GroupSymbol(())
    with pytest.raises(ValueError):
        GroupSymbol((0, 1))


def test_formal_dist_algebra():
    (x,) = shapes_of((2,))
    (y,) = shapes_of((1, 1))
    a = FormalDist.unit((x,))
    b = FormalDist.unit((y,))
    assert (a + b) - a == b
    assert (a - a).is_zero
    assert 2 * a == a + a
    assert 0 * a == FormalDist()
    assert a.tensor(b).coefficient((x, y)) == 1
    assert a.tensor(b) == b.tensor(a)  # canonical factor order


def test_formal_dist_drops_zeros():
    (x,) = shapes_of((2,))
    d = FormalDist({(x,): Fraction(1)}) + FormalDist({(x,): Fraction(-1)})
    assert len(d) == 0
    assert d.coefficient((x,)) == 0


# forest counts per number of blocks
PLAN_COUNTS = {1: 1, 2: 2, 3: 7, 4: 41, 5: 346, 6: 3797, 7: 51157, 8: 816356}


@pytest.mark.parametrize("r,count", sorted(PLAN_COUNTS.items()))
def test_plan_counts(r, count):
    assert _plan_count(r) == count


@pytest.mark.parametrize("r", [1, 2, 3, 4, 5])
def test_chain_enumeration_matches_plan_count(r):
    shape = from_cohomological((1,) * r)
    assert len(enumerate_chains(shape=shape)) == PLAN_COUNTS[r]


def test_u2_chains():
    shape = from_cohomological((1, 1))
    chains = enumerate_chains(shape=shape)
    assert sorted(c.depth for c in chains) == [0, 1]
    deep = next(c for c in chains if c.depth == 1)
    assert chain_iota(deep) == Fraction(-1, 4)
    assert str(deep.terminal) == "U(1)^2"


def test_u3_depth_distribution():
    shape = from_cohomological((1, 1, 1))
    chains = enumerate_chains(shape=shape)
    by_depth = {}
    for c in chains:
        by_depth[c.depth] = by_depth.get(c.depth, 0) + 1
    assert by_depth == {0: 1, 1: 3, 2: 3}
    assert {chain_iota(c) for c in chains if c.depth == 2} == {Fraction(1, 8)}


def test_u3_expansion_coefficients():
    shape = from_cohomological((1, 1, 1))
    dist = chain_expansion(shape=shape)
    assert dist.coefficient((shape,)) == 1
    # three U(2)xU(1) terms at -1/2, one U(1)^3 term at 3/8
    values = sorted(coeff for key, coeff in dist.items() if len(key) == 2)
    assert values == [Fraction(-1, 2)] * 3
    triple = [coeff for key, coeff in dist.items() if len(key) == 3]
    assert triple == [Fraction(3, 8)]


def test_recursion_equals_chain_sum():
    for parts in [(2,), (1, 1), (2, 1), (2, 2), (1, 1, 1), (3, 2, 1)]:
        shape = from_cohomological(parts)
        assert expand_stable(shape=shape) == chain_expansion(shape=shape)


@pytest.mark.parametrize("parts", [(1,), (2, 1), (1, 1, 1), (2, 2, 1), (3, 1)])
def test_verify_inversion(parts):
    assert verify_inversion(shape=from_cohomological(parts))


def test_product_start_factorizes():
    a = ArthurShape((Summand("a1", 1, 1), Summand("a2", 1, 1)))
    b = ArthurShape((Summand("b1", 1, 2), Summand("b2", 1, 1)))
    chains = enumerate_chains(assignment=(a, b))
    assert len(chains) == 2 * 2
    product = chain_expansion(assignment=(a,)).tensor(chain_expansion(assignment=(b,)))
    assert chain_expansion(assignment=(a, b)) == product
    assert verify_inversion(assignment=(a, b))


def test_start_symbol_needs_assignment():
    with pytest.raises(ValueError):
        enumerate_chains(start=GroupSymbol((2, 1)))


def test_assignment_must_match_start():
    a = from_cohomological((1, 1))
    with pytest.raises(ValueError):
        enumerate_chains(start=GroupSymbol((3,)), assignment=(a,))


def test_chain_guard_trips():
    shape = from_cohomological((1, 1, 1))
    with pytest.raises(GuardError):
        enumerate_chains(shape=shape, guard=5)


def test_default_guard_blocks_eight_blocks():
    shape = from_cohomological((1,) * 8)
    with pytest.raises(GuardError):
        enumerate_chains(shape=shape)


def test_dominant_contribution_proper():
    shape = from_cohomological((2, 1))
    dist = dominant_contribution(shape)
    items = dist.items()
    assert len(items) == 1
    key, coeff = items[0]
    assert coeff == Fraction(1, 2)
    assert str(GroupSymbol.of_factors(key)) == "U(2)xU(1)"


def test_dominant_contribution_identity_sign():
    shape = from_cohomological((1, 1))
    assert dominant_contribution(shape) == expand_stable(shape=shape)


def test_terminal_factors_replay():
    shape = from_cohomological((1, 1, 1))
    chains = enumerate_chains(shape=shape)
    deepest = next(c for c in chains if c.depth == 2)
    terminals = deepest.terminal_factors()
    assert sorted(f.N for f in terminals) == [1, 1, 1]
    assert deepest.start == GroupSymbol((3,))
