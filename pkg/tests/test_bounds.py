"""Stable coefficients, the dominance inequality, and the exponent derivation."""

from fractions import Fraction

import pytest

from endoscopylab.bounds import (
    PacketModel,
    derive_exponent,
    dominance_check,
    i_disc_model,
    savin_exponent,
    stable_coefficient,
)
from endoscopylab.hyperendoscopy import GroupSymbol
from endoscopylab.params import (
    BlockSignVector,
    centralizer_group,
    from_cohomological,
    s_psi,
)


def trivial_packet(shape):
    group = centralizer_group(shape)
    chars = group.characters()
    members = tuple((chi, Fraction(1)) for chi in chars)
    trivial = next(chi for chi in chars if chi.mask == 0)
    return PacketModel(group.rank, members, trivial)


def test_stable_coefficient_values():
    single = from_cohomological((3,))
    assert stable_coefficient(single, s_psi(single)) == 1
    pair = from_cohomological((2, 1))
    assert stable_coefficient(pair, s_psi(pair)) == Fraction(1, 2)
    triple = from_cohomological((1, 1, 1))
    assert stable_coefficient(triple, s_psi(triple)) == Fraction(1, 4)


def test_stable_coefficients_bounded():
    for parts in [(2, 1), (1, 1, 1), (4, 2, 1), (3, 2, 1, 1), (2, 2, 1, 1, 1)]:
        shape = from_cohomological(parts)
        group = centralizer_group(shape)
        total = Fraction(0)
        for e in group.elements:
            value = stable_coefficient(shape, group.to_sign_vector(e))
            assert 0 < value <= 1
            total += value
        assert total <= 2 ** (shape.r - 1)


def test_packet_model_validation():
    shape = from_cohomological((2, 1))
    group = centralizer_group(shape)
    chi = group.characters()[0]
    with pytest.raises(ValueError):
        PacketModel(group.rank, ((chi, Fraction(-1)),), chi)
    wrong_rank = centralizer_group(from_cohomological((1, 1, 1))).characters()[0]
    with pytest.raises(ValueError):
        PacketModel(group.rank, ((wrong_rank, Fraction(1)),), chi)


def test_i_disc_trivial_packet():
    shape = from_cohomological((2, 1))
    assert i_disc_model(shape, trivial_packet(shape)) == 1


def test_dominance_trivial_packet():
    shape = from_cohomological((2, 1))
    result = dominance_check(shape, trivial_packet(shape))
    assert result.holds
    assert result.i_value == 1
    assert result.c_psi == 2
    assert result.c_psi * result.s_dominant >= result.i_value


def test_dominance_single_block():
    shape = from_cohomological((4,))
    result = dominance_check(shape, trivial_packet(shape))
    assert result.holds
    assert result.c_psi == 1


def test_savin_exponent():
    assert savin_exponent(GroupSymbol((1,))) == 0
    assert savin_exponent(GroupSymbol((3,))) == 8
    assert savin_exponent(GroupSymbol((2, 1))) == 4


def test_derive_exponent_n5():
    d = derive_exponent(5, 1, 2)
    assert d.final == 5
    assert d.max_matches_dominant
    assert [(str(sym), e) for sym, e in d.chain_exponents] == [("U(4)xU(1)", 5)]
    assert d.steps[0].name == "packet"
    assert any(step.name == "exponent" for step in d.steps)


def test_derive_exponent_n7_chain_table():
    d = derive_exponent(7, 3, 2)
    assert d.final == 21
    table = {str(sym): e for sym, e in d.chain_exponents}
    assert table == {"U(4)xU(3)": 21, "U(4)xU(2)xU(1)": 19, "U(4)xU(1)^3": 18}
    # table sorted with the dominant term first
    assert d.chain_exponents[0][1] == 21


def test_derive_exponent_half_rank():
    d = derive_exponent(6, 2, 3)
    assert d.final == 0
    assert d.max_matches_dominant
    assert [str(sym) for sym, _ in d.chain_exponents] == ["U(6)"]


def test_derive_exponent_odd_top_k():
    # N odd with the largest k gives exponent N
    for N in (3, 5, 7, 9):
        assert derive_exponent(N, 1, (N - 1) // 2).final == N


def test_derive_validation():
    with pytest.raises(ValueError):
        derive_exponent(5, 1, 0)
    with pytest.raises(ValueError):
        derive_exponent(5, 1, 3)
    with pytest.raises(ValueError):
        derive_exponent(5, 3, 2)  # a beyond half rank


def test_derivation_json_shape():
    data = derive_exponent(5, 1, 2).to_json()
    assert data["input"] == {"N": 5, "a": 1, "k": 2}
    assert data["final"] == 5
    assert data["max_matches_dominant"] is True
    names = [step["name"] for step in data["steps"]]
    assert names[:3] == ["packet", "spectral", "dominance"]
    for step in data["steps"]:
        assert isinstance(step["value"], (int, str))
    assert data["chain_exponents"][0]["ranks"] == [4, 1]


def test_dominance_respects_epsilon_twist():
    shape = from_cohomological((2, 1))
    group = centralizer_group(shape)
    chars = group.characters()
    sign_char = next(chi for chi in chars if chi.mask != 0)
    members = tuple((chi, Fraction(1, 3)) for chi in chars)
    packet = PacketModel(group.rank, members, sign_char)
    result = dominance_check(shape, packet)
    assert result.holds
