"""Stable coefficients, the trace dominance inequality, and exponent derivations.

The discrete trace of a parameter is an exact double sum over the sign group:
stable coefficients C(psi, s) = iota(s) / |sign group of the split parameter|
against character-twisted packet traces.  For nonnegative traces every
twisted term is dominated by the term at the distinguished central sign,
giving I <= C(psi) * S_dominant with C(psi) the ratio of summed coefficients
to the dominant one.  The derivation engine composes that inequality with the
refinement-chain expansion, congruence transfer scaling, character counting,
and limit multiplicity growth into the closed exponent N(N - 2k).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from .cohomology import lowest_degree
from .endoscopy import bijection, dominant_group, iota
from .hyperendoscopy import GroupSymbol
from .params import (
    ArthurShape,
    BlockSignVector,
    GroupChar,
    centralizer_group,
    from_cohomological,
    s_psi,
)

__all__ = [
    "PacketModel",
    "DerivationStep",
    "Derivation",
    "DominanceResult",
    "stable_coefficient",
    "i_disc_model",
    "dominance_check",
    "derive_exponent",
    "savin_exponent",
]


@dataclass(frozen=True)
class PacketModel:
    """Abstract packet: members (character, nonnegative trace) plus a sign
    character epsilon, all on a sign group of the given rank."""

    rank: int
    members: tuple[tuple[GroupChar, Fraction], ...]
    epsilon: GroupChar

    def __post_init__(self) -> None:
        members = tuple((chi, Fraction(t)) for chi, t in self.members)
        object.__setattr__(self, "members", members)
        if self.epsilon.rank != self.rank:
            raise ValueError("epsilon character has mismatched group rank")
        for chi, trace in members:
            if chi.rank != self.rank:
                raise ValueError("member character has mismatched group rank")
            if trace < 0:
                raise ValueError(f"negative trace {trace} in packet")

    @property
    def trace_total(self) -> Fraction:
        return sum((t for _, t in self.members), Fraction(0))


def _split_group_order(part1_len: int, part2_len: int) -> int:
    """|sign group| of a split parameter: 2^(r1-1) * 2^(r2-1), one factor if trivial."""
    if part2_len == 0:
        return 1 << (part1_len - 1)
    return 1 << ((part1_len - 1) + (part2_len - 1))


def stable_coefficient(shape: ArthurShape, s: BlockSignVector) -> Fraction:
    """C(psi, s) = iota of the datum under s divided by the split sign-group order."""
    table = bijection(shape)
    if s not in table:
        raise ValueError(f"sign vector {s} does not belong to the group of {shape}")
    datum, split = table[s]
    return iota(datum) / _split_group_order(len(split.part1), len(split.part2))


def i_disc_model(shape: ArthurShape, packet: PacketModel) -> Fraction:
    """Exact double sum: coefficients against character values at s_psi * s."""
    group = centralizer_group(shape)
    if packet.rank != group.rank:
        raise ValueError(
            f"packet rank {packet.rank} does not match group rank {group.rank}"
        )
    sp = group.from_sign_vector(s_psi(shape))
    total = Fraction(0)
    for element in group.elements:
        coeff = stable_coefficient(shape, group.to_sign_vector(element))
        shifted = sp ^ element
        inner = sum(
            (packet.epsilon(shifted) * chi(shifted) * trace
             for chi, trace in packet.members),
            Fraction(0),
        )
        total += coeff * inner
    return total


class DominanceResult(NamedTuple):
    i_value: Fraction
    s_dominant: Fraction
    c_psi: Fraction
    holds: bool


def dominance_check(shape: ArthurShape, packet: PacketModel) -> DominanceResult:
    """I against C(psi) times the dominant stable term; exact comparison.

    At s = s_psi the twist is trivial (all signs +1), so the dominant term
    is the plain trace sum; every other term is bounded by it when traces
    are nonnegative.
    """
    group = centralizer_group(shape)
    i_value = i_disc_model(shape, packet)
    c_dom = stable_coefficient(shape, s_psi(shape))
    s_dominant = c_dom * packet.trace_total
    c_sum = sum(
        (stable_coefficient(shape, group.to_sign_vector(e)) for e in group.elements),
        Fraction(0),
    )
    c_psi = c_sum / c_dom
    return DominanceResult(i_value, s_dominant, c_psi, i_value <= c_psi * s_dominant)


@dataclass(frozen=True)
class DerivationStep:
    name: str
    claim: str
    justification: str
    value: Fraction | int


@dataclass(frozen=True)
class Derivation:
    """Step-by-step exponent derivation; every value is recomputed."""

    N: int
    a: int
    k: int
    steps: tuple[DerivationStep, ...]
    chain_exponents: tuple[tuple[GroupSymbol, int], ...]
    final: int
    max_matches_dominant: bool

    def to_json(self) -> dict:
        def value_json(v: Fraction | int):
            if isinstance(v, Fraction) and v.denominator != 1:
                return f"{v.numerator}/{v.denominator}"
            return int(v)

        return {
            "input": {"N": self.N, "a": self.a, "k": self.k},
            "steps": [
                {
                    "name": s.name,
                    "claim": s.claim,
                    "justification": s.justification,
                    "value": value_json(s.value),
                }
                for s in self.steps
            ],
            "chain_exponents": [
                {"terminal": str(sym), "ranks": list(sym.ranks), "exponent": e}
                for sym, e in self.chain_exponents
            ],
            "final": self.final,
            "max_matches_dominant": self.max_matches_dominant,
        }


def _partitions(n: int, max_part: int | None = None):
    if n == 0:
        yield ()
        return
    top = min(n, max_part) if max_part is not None else n
    for p in range(top, 0, -1):
        for rest in _partitions(n - p, p):
            yield (p,) + rest


def savin_exponent(group: GroupSymbol) -> int:
    """Volume growth exponent dim(group) - 1 = sum of squared ranks minus one."""
    return group.dim - 1


def derive_exponent(N: int, a: int, k: int) -> Derivation:
    """Exponent derivation for level growth on U(a, b), b = N - a.

    The parameter family has SL(2) shape nu(2k) + nu(1)^(N-2k); the dominant
    endoscopic product is U(2k) x U(N-2k) with the even block on the first
    factor.  Each refinement chain of the second factor with terminal ranks
    lambda contributes exponent (N^2 - (2k)^2 + sum(lambda_j^2))/2, maximal
    at the unrefined dominant group where it equals N(N - 2k).
    """
    if not 1 <= k <= N // 2:
        raise ValueError(f"need 1 <= k <= {N // 2}, got k={k}")
    if not 0 <= a <= N // 2:
        raise ValueError(f"need 0 <= a <= {N // 2}, got a={a}")
    b = N - a
    i0 = lowest_degree(a, b, k)
    rank_even_block = 2 * k
    rank_odd_block = N - rank_even_block
    shape = from_cohomological((rank_even_block,) + (1,) * rank_odd_block)
    group = centralizer_group(shape)
    c_dom = stable_coefficient(shape, s_psi(shape))
    c_sum = sum(
        (stable_coefficient(shape, group.to_sign_vector(e)) for e in group.elements),
        Fraction(0),
    )
    c_psi = c_sum / c_dom

    steps = [
        DerivationStep(
            "packet",
            f"count cohomological forms on U({a},{b}) with SL(2) shape "
            f"nu({rank_even_block}) + nu(1)^{rank_odd_block}; first nonzero "
            f"cohomology degree {i0}",
            "minimum of ab - sum(a_i*b_i) over the packet of the reordered "
            "partition; closed form a(N-2k) for a <= k, a(N-a) - k^2 above",
            i0,
        ),
        DerivationStep(
            "spectral",
            "the family's discrete trace equals its full spectral contribution",
            "a regular infinitesimal character at infinity kills every proper "
            "Levi term of the discrete trace expansion",
            0,
        ),
        DerivationStep(
            "dominance",
            f"trace sum <= C * dominant stable term with C = {c_psi}",
            "with nonnegative traces each character-twisted term is bounded by "
            "the untwisted one; C is the ratio of summed stable coefficients "
            "to the dominant coefficient",
            c_psi,
        ),
    ]

    if rank_odd_block == 0:
        # single-block parameter: the group is its own dominant term
        table = [(GroupSymbol((N,)), 0)]
        steps.append(
            DerivationStep(
                "bounded",
                f"the nu({N}) family transfers to one-dimensional data with "
                "level-independent multiplicity",
                "a single block admits no proper refinement and its members "
                "are characters, so the count is bounded in the level",
                0,
            )
        )
        final = 0
        max_matches = True
    else:
        datum, split = dominant_group(shape)
        iota_val = iota(datum)
        d_gap = (
            N * N - rank_even_block**2 - rank_odd_block**2
        ) // 2
        savin = savin_exponent(GroupSymbol((rank_odd_block,)))
        table = []
        for lam in _partitions(rank_odd_block):
            dim2 = sum(x * x for x in lam)
            assert dim2 <= rank_odd_block**2
            exponent = (N * N - rank_even_block**2 + dim2) // 2
            table.append((GroupSymbol((rank_even_block,) + lam), exponent))
        max_exponent = max(e for _, e in table)
        dominant_exponent = d_gap + 1 + savin
        # composition identity 2k(N-2k) + 1 + ((N-2k)^2 - 1) = N(N-2k)
        assert dominant_exponent == N * (N - 2 * k)
        max_matches = max_exponent == dominant_exponent
        final = max_exponent
        steps.extend(
            [
                DerivationStep(
                    "dominant_group",
                    f"the dominant stable term lives on U({rank_even_block})x"
                    f"U({rank_odd_block}) with leading factor {iota_val}",
                    "the distinguished central sign separates blocks by SL(2) "
                    "parity: the even-dimensional block on one factor, the "
                    "odd units on the other",
                    iota_val,
                ),
                DerivationStep(
                    "chains",
                    f"the stable term expands over {len(table)} terminal rank "
                    f"patterns; the nu({rank_even_block}) factor never refines",
                    "a refinement step separates whole blocks and a single "
                    "block cannot split",
                    len(table),
                ),
                DerivationStep(
                    "transfer",
                    f"congruence transfer to the dominant group rescales the "
                    f"count by the level to the power d = {d_gap}",
                    "half the dimension gap between the group and its "
                    "endoscopic product governs the index of the transferred "
                    "congruence subgroup",
                    d_gap,
                ),
                DerivationStep(
                    "characters",
                    "central character families at the level grow with exponent 1",
                    "characters of the norm-one torus with conductor dividing "
                    "the level form a family of linear size",
                    1,
                ),
                DerivationStep(
                    "growth",
                    f"discrete-series multiplicities on the U({rank_odd_block}) "
                    f"side grow with exponent dim - 1 = {savin}",
                    "limit multiplicity of discrete series is proportional to "
                    "the congruence covolume",
                    savin,
                ),
                DerivationStep(
                    "bounded",
                    "all remaining factors are level-independent",
                    "one-dimensional members on the even-block side, finitely "
                    "many chain terms, and uniform transfer constants",
                    0,
                ),
                DerivationStep(
                    "maximum",
                    f"each chain term has exponent (N^2 - {rank_even_block**2} "
                    f"+ sum of squared terminal ranks)/2; largest value "
                    f"{final}, dominant-group term {dominant_exponent}",
                    "refining the odd-block factor strictly decreases the sum "
                    "of squared ranks",
                    final,
                ),
                DerivationStep(
                    "exponent",
                    f"total exponent {final}; the dominant composition "
                    f"{d_gap} + 1 + {savin} equals N(N - 2k) = "
                    f"{N}*{N - 2 * k}",
                    "transfer gap plus character count plus multiplicity "
                    "growth; the chain maximum is the reported exponent",
                    final,
                ),
            ]
        )

    table.sort(key=lambda te: (-te[1], te[0].ranks))
    return Derivation(
        N=N,
        a=a,
        k=k,
        steps=tuple(steps),
        chain_exponents=tuple(table),
        final=final,
        max_matches_dominant=max_matches,
    )
