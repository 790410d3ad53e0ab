"""Shapes, sign vectors, and the character group."""

import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from endoscopylab.params import (
    ArthurShape,
    BlockSignVector,
    GroupChar,
    Summand,
    TwoGroup,
    centralizer_group,
    from_cohomological,
    is_elliptic,
    s_psi,
    shape_from_json,
    shape_to_json,
)


def test_summand_basics():
    s = Summand("c1", 2, 3)
    assert s.block_dim == 6
    assert s.key == ("c1", 3)
    assert str(s) == "c1[2]*nu(3)"
    assert str(Summand("c2", 1, 4)) == "c2*nu(4)"


@pytest.mark.parametrize("n,m", [(0, 1), (1, 0), (-1, 2), (2, -3)])
def test_summand_rejects_nonpositive(n, m):
    with pytest.raises(ValueError):
        Summand("x", n, m)


def test_shape_totals():
    shape = ArthurShape((Summand("a", 2, 2), Summand("b", 1, 3)))
    assert shape.N == 7
    assert shape.r == 2
    assert str(shape) == "a[2]*nu(2) + b*nu(3)"


def test_shape_needs_summands():
    with pytest.raises(ValueError):
        ArthurShape(())


def test_canonical_is_order_independent():
    x, y = Summand("a", 1, 2), Summand("b", 1, 1)
    assert ArthurShape((x, y)).canonical() == ArthurShape((y, x)).canonical()


def test_ellipticity():
    assert is_elliptic(from_cohomological((2, 1)))
    twice = ArthurShape((Summand("a", 1, 2), Summand("a", 1, 2)))
    assert not is_elliptic(twice)
    unstable = ArthurShape((Summand("a", 1, 2, self_dual=False),))
    assert not is_elliptic(unstable)


def test_sign_vector_canonical_negation():
    v = BlockSignVector((-1, 1, 1))
    assert v.signs == (1, -1, -1)
    assert v == BlockSignVector((1, -1, -1))
    assert str(v) == "+--"
    assert v.minus_indices == (1, 2)


def test_sign_vector_identity():
    assert BlockSignVector((1, 1)).is_identity
    assert not BlockSignVector((1, -1)).is_identity
    with pytest.raises(ValueError):
        BlockSignVector(())
    with pytest.raises(ValueError):
        BlockSignVector((1, 0))


def test_two_group_roundtrip():
    group = TwoGroup(3)
    assert group.order == 8
    assert list(group.elements) == list(range(8))
    for e in group.elements:
        assert group.from_sign_vector(group.to_sign_vector(e)) == e
    assert group.to_sign_vector(group.identity).is_identity


def test_characters_count_and_orthogonality():
    group = TwoGroup(3)
    chars = group.characters()
    assert len(chars) == 8
    for chi in chars:
        total = sum(chi(e) for e in group.elements)
        assert total == (group.order if chi.mask == 0 else 0)


@given(st.integers(0, 15), st.integers(0, 15), st.integers(0, 15))
def test_character_multiplicativity(mask, x, y):
    chi = GroupChar(4, mask)
    assert chi(x ^ y) == chi(x) * chi(y)


def test_centralizer_group_rank():
    assert centralizer_group(from_cohomological((1, 1, 1))).rank == 2
    assert centralizer_group(from_cohomological((3,))).rank == 0
    twice = ArthurShape((Summand("a", 1, 2), Summand("a", 1, 2)))
    with pytest.raises(ValueError):
        centralizer_group(twice)


def test_s_psi_sign_by_parity():
    # minus exactly on even SL(2) dimension
    assert str(s_psi(from_cohomological((2, 1)))) == "+-"
    assert s_psi(from_cohomological((1, 1, 1))).is_identity
    assert str(s_psi(from_cohomological((4, 2, 1)))) == "++-"


def test_from_cohomological_labels():
    shape = from_cohomological((3, 2, 1))
    assert [s.label for s in shape.summands] == ["c1", "c2", "c3"]
    assert [s.m for s in shape.summands] == [3, 2, 1]
    assert all(s.n == 1 for s in shape.summands)


def test_from_cohomological_rejects_bad_parts():
    with pytest.raises(ValueError):
        from_cohomological(())
    with pytest.raises(ValueError):
        from_cohomological((2, 0))


labels = st.text(alphabet="abcxyz", min_size=1, max_size=3)
summands = st.builds(
    Summand, label=labels, n=st.integers(1, 3), m=st.integers(1, 4)
)
shapes = st.lists(summands, min_size=1, max_size=4).map(
    lambda xs: ArthurShape(tuple(xs))
)


@given(shapes)
def test_shape_json_roundtrip(shape):
    assert shape_from_json(shape_to_json(shape)) == shape
    assert shape_from_json(json.dumps(shape_to_json(shape))) == shape


def test_shape_json_rejects_garbage():
    with pytest.raises(ValueError):
        shape_from_json({"blocks": []})
    with pytest.raises(ValueError):
        shape_from_json({"summands": [{"label": "a", "n": 0, "m": 1}]})
