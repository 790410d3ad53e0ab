"""Elliptic endoscopic data of U(N), splits of parameters, and local signs.

An elliptic endoscopic group of U(N) is a product U(n1) x U(n2) with
n1 + n2 = N, determined by the unordered pair {n1, n2}; the transfer factor
normalization attaches the character pair kappa = ((-1)^(N-n1), (-1)^(N-n2)).
Elements of a shape's sign group correspond bijectively to such data together
with a two-way split of the blocks.  The module also carries the real and
p-adic Kottwitz signs and the parity bookkeeping that decides which
collections of local unitary groups glue to a global inner form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .params import (
    ArthurShape,
    BlockSignVector,
    Summand,
    centralizer_group,
    s_psi,
)

__all__ = [
    "EndoscopicDatum",
    "ParameterSplit",
    "InnerFormSpec",
    "elliptic_data",
    "iota",
    "make_split",
    "bijection",
    "dominant_group",
    "kottwitz_sign_real",
    "kottwitz_sign_padic",
    "global_kottwitz_product",
    "check_inner_form",
    "datum_to_json",
    "split_to_json",
]


@dataclass(frozen=True, order=True)
class EndoscopicDatum:
    """Unordered pair {n1, n2} with n1 >= n2, standing for U(n1) x U(n2)."""

    n1: int
    n2: int

    def __post_init__(self) -> None:
        if self.n2 < 0 or self.n1 < self.n2:
            raise ValueError(f"need n1 >= n2 >= 0, got ({self.n1}, {self.n2})")
        if self.n1 + self.n2 < 1:
            raise ValueError("total rank must be positive")

    @property
    def N(self) -> int:
        return self.n1 + self.n2

    @property
    def proper(self) -> bool:
        """False exactly for the datum (N, 0), i.e. the group itself."""
        return self.n2 > 0

    @property
    def kappa(self) -> tuple[int, int]:
        return ((-1) ** (self.N - self.n1), (-1) ** (self.N - self.n2))

    def __str__(self) -> str:
        return f"U({self.n1})xU({self.n2})" if self.proper else f"U({self.n1})"


def elliptic_data(N: int) -> list[EndoscopicDatum]:
    """All elliptic data of U(N), improper (N, 0) first, n1 descending."""
    if N < 1:
        raise ValueError(f"rank must be positive, got {N}")
    return [EndoscopicDatum(n1, N - n1) for n1 in range(N, (N - 1) // 2, -1)]


def iota(datum: EndoscopicDatum) -> Fraction:
    """The factor iota(G, H): 1 improper, 1/4 for the equal split, else 1/2."""
    if not datum.proper:
        return Fraction(1)
    if datum.n1 == datum.n2:
        return Fraction(1, 4)
    return Fraction(1, 2)


def _rank(part: Sequence[Summand]) -> int:
    return sum(s.block_dim for s in part)


@dataclass(frozen=True)
class ParameterSplit:
    """Two-way split of a shape's blocks; larger-rank part first.

    ``part2`` may be empty (the trivial split belonging to the improper
    datum).  On a rank tie the part containing the shape's leading block
    comes first; construction sites go through :func:`make_split` which
    enforces that convention.
    """

    part1: tuple[Summand, ...]
    part2: tuple[Summand, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "part1", tuple(self.part1))
        object.__setattr__(self, "part2", tuple(self.part2))
        if not self.part1:
            raise ValueError("first part of a split may not be empty")
        if _rank(self.part1) < _rank(self.part2):
            raise ValueError("parts out of order: part1 must carry rank n1 >= n2")
        keys = [s.key for s in self.part1 + self.part2]
        if len(set(keys)) != len(keys):
            raise ValueError("split parts share a block")

    @property
    def n1(self) -> int:
        return _rank(self.part1)

    @property
    def n2(self) -> int:
        return _rank(self.part2)

    @property
    def is_trivial(self) -> bool:
        return not self.part2

    @property
    def datum(self) -> EndoscopicDatum:
        return EndoscopicDatum(self.n1, self.n2)

    @property
    def shape1(self) -> ArthurShape:
        return ArthurShape(self.part1)

    @property
    def shape2(self) -> ArthurShape | None:
        return ArthurShape(self.part2) if self.part2 else None

    def __str__(self) -> str:
        left = ", ".join(str(s) for s in self.part1)
        right = ", ".join(str(s) for s in self.part2)
        return f"{{{left}}} | {{{right}}}"


def make_split(
    leading: Iterable[Summand], other: Iterable[Summand]
) -> ParameterSplit:
    """Split with canonical part order; ``leading`` holds the parent's first block."""
    a, b = tuple(leading), tuple(other)
    if _rank(b) > _rank(a):
        a, b = b, a
    return ParameterSplit(a, b)


def bijection(
    shape: ArthurShape,
) -> dict[BlockSignVector, tuple[EndoscopicDatum, ParameterSplit]]:
    """Sign-group elements <-> (endoscopic datum, block split).

    An element's minus-blocks (in the canonical representative) land on one
    factor and the plus-blocks on the other; the datum records the two ranks
    with n1 >= n2.  The identity maps to the improper datum with the trivial
    split.  The image has exactly 2^(r-1) entries.
    """
    group = centralizer_group(shape)
    out: dict[BlockSignVector, tuple[EndoscopicDatum, ParameterSplit]] = {}
    for element in group.elements:
        vector = group.to_sign_vector(element)
        minus = set(vector.minus_indices)
        plus_part = tuple(s for i, s in enumerate(shape.summands) if i not in minus)
        minus_part = tuple(s for i, s in enumerate(shape.summands) if i in minus)
        split = make_split(plus_part, minus_part)
        out[vector] = (split.datum, split)
    return out


def dominant_group(shape: ArthurShape) -> tuple[EndoscopicDatum, ParameterSplit]:
    """The datum and split sitting under the distinguished central sign.

    Blocks with even SL(2) dimension form one factor and those with odd
    dimension the other; for a shape with all dimensions of equal parity this
    is the improper datum with the trivial split.
    """
    return bijection(shape)[s_psi(shape)]


def kottwitz_sign_real(p: int, q: int) -> int:
    """Sign (-1)^(q(G) - q(G*)) of U(p, q): q(U(p, q)) = pq, quasisplit ceil*floor."""
    if p < 0 or q < 0 or p + q < 1:
        raise ValueError(f"invalid signature ({p}, {q})")
    N = p + q
    return -1 if (p * q - (N // 2) * ((N + 1) // 2)) % 2 else 1


def kottwitz_sign_padic(rank_drop: int) -> int:
    """Sign (-1)^(rank drop) against the quasisplit inner form."""
    if rank_drop < 0:
        raise ValueError(f"rank drop must be nonnegative, got {rank_drop}")
    return -1 if rank_drop % 2 else 1


@dataclass(frozen=True)
class InnerFormSpec:
    """Local data of a would-be global inner form.

    ``signatures`` lists (p_v, q_v) at the archimedean places;
    ``finite_flips`` names the finite places carrying the nontrivial local
    invariant, meaningful only in even total rank.
    """

    signatures: tuple[tuple[int, int], ...]
    finite_flips: frozenset[str] = frozenset()

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "signatures", tuple((int(p), int(q)) for p, q in self.signatures)
        )
        object.__setattr__(self, "finite_flips", frozenset(self.finite_flips))


def _validate_spec(spec: InnerFormSpec, N: int) -> None:
    if N < 1:
        raise ValueError(f"rank must be positive, got {N}")
    if not spec.signatures:
        raise ValueError("an inner form needs at least one archimedean signature")
    for p, q in spec.signatures:
        if p < 0 or q < 0 or p + q != N:
            raise ValueError(f"malformed signature ({p}, {q}) for rank {N}")
    if N % 2 == 1 and spec.finite_flips:
        raise ValueError("no finite invariant flips exist in odd rank")


def global_kottwitz_product(spec: InnerFormSpec, N: int) -> int:
    """Product of the local Kottwitz signs over all places of the spec.

    A flipped finite place is the non-quasisplit even-rank form, whose rank
    drops by one; unflipped finite places contribute +1.
    """
    _validate_spec(spec, N)
    sign = 1
    for p, q in spec.signatures:
        sign *= kottwitz_sign_real(p, q)
    for _ in spec.finite_flips:
        sign *= kottwitz_sign_padic(1)
    return sign


def check_inner_form(spec: InnerFormSpec, N: int) -> bool:
    """Whether the local collection glues to a global inner form of U(N).

    Odd rank: always.  Even rank: the local invariants (N/2 + q_v at the
    archimedean places, 1 at flipped finite places) must sum to 0 mod 2.
    Equivalently the global Kottwitz product is +1; both are computed and
    cross-checked.
    """
    _validate_spec(spec, N)
    product = global_kottwitz_product(spec, N)
    if N % 2 == 1:
        assert product == 1
        return True
    parity = (sum(N // 2 + q for _, q in spec.signatures) + len(spec.finite_flips)) % 2
    ok = parity == 0
    assert (product == 1) == ok
    return ok


def datum_to_json(datum: EndoscopicDatum) -> dict:
    return {
        "n1": datum.n1,
        "n2": datum.n2,
        "proper": datum.proper,
        "kappa": list(datum.kappa),
    }


def split_to_json(split: ParameterSplit) -> dict:
    def part(summands: tuple[Summand, ...]) -> list[dict]:
        return [{"label": s.label, "n": s.n, "m": s.m} for s in summands]

    return {"part1": part(split.part1), "part2": part(split.part2)}
