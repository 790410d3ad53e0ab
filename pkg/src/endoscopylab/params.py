"""Formal parameter shapes and their two-torsion centralizer algebra.

A shape is an ordered list of blocks, each pairing an opaque cuspidal label of
rank ``n`` with the ``m``-dimensional irreducible representation ``nu(m)`` of
SL(2); the total rank is ``N = sum(n_i * m_i)``.  For an elliptic shape (all
blocks distinct and conjugate self-dual) the centralizer of the image in the
dual group has component group ``(Z/2Z)^(r-1)``: one sign per block, modulo
negating all of them at once.  This module models that group concretely:
elements as sign vectors, characters as parity functionals on bit masks.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

__all__ = [
    "Summand",
    "ArthurShape",
    "BlockSignVector",
    "TwoGroup",
    "GroupChar",
    "centralizer_group",
    "s_psi",
    "from_cohomological",
    "is_elliptic",
    "shape_to_json",
    "shape_from_json",
]


@dataclass(frozen=True, order=True)
class Summand:
    """One block ``label (x) nu(m)`` of rank ``n * m``."""

    label: str
    n: int
    m: int
    self_dual: bool = True

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"block rank must be positive, got n={self.n}")
        if self.m < 1:
            raise ValueError(f"SL(2) dimension must be positive, got m={self.m}")

    @property
    def block_dim(self) -> int:
        return self.n * self.m

    @property
    def key(self) -> tuple[str, int]:
        """Identity used for distinctness: the pair (label, m)."""
        return (self.label, self.m)

    def __str__(self) -> str:
        core = self.label if self.n == 1 else f"{self.label}[{self.n}]"
        return f"{core}*nu({self.m})"


@dataclass(frozen=True)
class ArthurShape:
    """Formal sum of blocks; the restriction of a parameter to its SL(2) shape."""

    summands: tuple[Summand, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "summands", tuple(self.summands))
        if not self.summands:
            raise ValueError("a shape needs at least one summand")

    @property
    def N(self) -> int:
        return sum(s.block_dim for s in self.summands)

    @property
    def r(self) -> int:
        return len(self.summands)

    def canonical(self) -> "ArthurShape":
        """Same shape with summands in sorted order (for use as a dict key)."""
        return ArthurShape(tuple(sorted(self.summands)))

    def __str__(self) -> str:
        return " + ".join(str(s) for s in self.summands)


def is_elliptic(shape: ArthurShape) -> bool:
    """True when all blocks are pairwise distinct and conjugate self-dual."""
    keys = [s.key for s in shape.summands]
    return len(set(keys)) == len(keys) and all(s.self_dual for s in shape.summands)


def _require_elliptic(shape: ArthurShape) -> None:
    if not is_elliptic(shape):
        raise ValueError(f"shape is not elliptic: {shape}")


@dataclass(frozen=True)
class BlockSignVector:
    """Per-block signs modulo global negation.

    The canonical representative leads with +1, so two vectors are equal
    exactly when they agree componentwise or are componentwise opposite.
    """

    signs: tuple[int, ...]

    def __post_init__(self) -> None:
        signs = tuple(self.signs)
        if not signs:
            raise ValueError("empty sign vector")
        if any(x not in (1, -1) for x in signs):
            raise ValueError(f"signs must be +1 or -1, got {signs}")
        if signs[0] == -1:
            signs = tuple(-x for x in signs)
        object.__setattr__(self, "signs", signs)

    def __len__(self) -> int:
        return len(self.signs)

    @property
    def is_identity(self) -> bool:
        return all(x == 1 for x in self.signs)

    @property
    def minus_indices(self) -> tuple[int, ...]:
        return tuple(i for i, x in enumerate(self.signs) if x == -1)

    def __str__(self) -> str:
        return "".join("+" if x == 1 else "-" for x in self.signs)


@dataclass(frozen=True)
class TwoGroup:
    """Elementary abelian 2-group of the given rank.

    Elements are integers 0 .. 2**rank - 1 composed by XOR.  For the
    centralizer of a shape with r blocks the rank is r - 1 and bit i of an
    element toggles the sign of block i + 1 relative to block 0.
    """

    rank: int

    def __post_init__(self) -> None:
        if self.rank < 0:
            raise ValueError(f"rank must be nonnegative, got {self.rank}")

    @property
    def order(self) -> int:
        return 1 << self.rank

    @property
    def elements(self) -> range:
        return range(self.order)

    @property
    def identity(self) -> int:
        return 0

    def to_sign_vector(self, element: int) -> BlockSignVector:
        if not 0 <= element < self.order:
            raise ValueError(f"element {element} outside group of rank {self.rank}")
        return BlockSignVector(
            (1,) + tuple(-1 if element >> i & 1 else 1 for i in range(self.rank))
        )

    def from_sign_vector(self, vector: BlockSignVector) -> int:
        if len(vector) != self.rank + 1:
            raise ValueError(
                f"sign vector of length {len(vector)} does not match rank {self.rank}"
            )
        # canonical form leads with +1, so the minus positions determine the bits
        element = 0
        for i in vector.minus_indices:
            element |= 1 << (i - 1)
        return element

    def characters(self) -> list["GroupChar"]:
        return [GroupChar(self.rank, mask) for mask in self.elements]


@dataclass(frozen=True)
class GroupChar:
    """Character s -> (-1)^<mask, s> of a TwoGroup of the given rank."""

    rank: int
    mask: int

    def __post_init__(self) -> None:
        if not 0 <= self.mask < 1 << self.rank:
            raise ValueError(f"mask {self.mask} outside group of rank {self.rank}")

    def __call__(self, element: int) -> int:
        if not 0 <= element < 1 << self.rank:
            raise ValueError(f"element {element} outside group of rank {self.rank}")
        return -1 if (self.mask & element).bit_count() % 2 else 1

    @property
    def bits(self) -> tuple[int, ...]:
        return tuple(self.mask >> i & 1 for i in range(self.rank))

    @classmethod
    def trivial(cls, rank: int) -> "GroupChar":
        return cls(rank, 0)


def centralizer_group(shape: ArthurShape) -> TwoGroup:
    """Component group of the centralizer of an elliptic shape: rank r - 1."""
    _require_elliptic(shape)
    return TwoGroup(shape.r - 1)


def s_psi(shape: ArthurShape) -> BlockSignVector:
    """Image of the distinguished central element under the shape.

    nu(m) sends -I to (-1)^(m+1) times the identity, so the sign on a block
    is +1 for odd m and -1 for even m, taken modulo global negation.
    """
    return BlockSignVector(tuple(1 if s.m % 2 else -1 for s in shape.summands))


def from_cohomological(parts: Iterable[int] | Sequence[int]) -> ArthurShape:
    """Shape attached to an ordered partition (N_1, ..., N_r) of N.

    Each part becomes a block of rank one paired with nu(N_i); labels are
    fresh and pairwise distinct, so the result is elliptic.
    """
    if hasattr(parts, "parts"):
        parts = parts.parts  # type: ignore[union-attr]
    parts = tuple(parts)
    if not parts:
        raise ValueError("empty partition")
    if any(not isinstance(p, int) or p < 1 for p in parts):
        raise ValueError(f"partition parts must be positive integers, got {parts}")
    return ArthurShape(
        tuple(Summand(f"c{i + 1}", 1, p) for i, p in enumerate(parts))
    )


def shape_to_json(shape: ArthurShape) -> dict:
    summands = []
    for s in shape.summands:
        entry: dict = {"label": s.label, "n": s.n, "m": s.m}
        if not s.self_dual:
            entry["self_dual"] = False
        summands.append(entry)
    return {"summands": summands}


def shape_from_json(data: dict | str) -> ArthurShape:
    if isinstance(data, str):
        data = json.loads(data)
    if not isinstance(data, dict) or "summands" not in data:
        raise ValueError('shape JSON must be an object with a "summands" list')
    summands = []
    for entry in data["summands"]:
        try:
            summands.append(
                Summand(
                    str(entry["label"]),
                    int(entry["n"]),
                    int(entry["m"]),
                    bool(entry.get("self_dual", True)),
                )
            )
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed summand entry: {entry!r}") from exc
    return ArthurShape(tuple(summands))
