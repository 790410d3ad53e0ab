"""Bipartitions, packets, and Poincare polynomials of (g, K)-cohomology.

A bipartition B = ((a_1, b_1), ..., (a_r, b_r)) with sum a_i = a, sum b_i = b
indexes a cohomological representation of U(a, b).  Its cohomology starts in
degree R = ab - sum(a_i b_i) and the Poincare polynomial is t^R times the
product of Gaussian binomials [a_i + b_i choose a_i] evaluated at t^2, i.e.
the cohomology of a product of complex Grassmannians shifted by R.  The brute
oracle recomputes each factor by counting partitions in an a_i x b_i box by
area instead of using the recurrence.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .guards import DEFAULT_BRUTE_GUARD, GuardError, guard_limit

__all__ = [
    "OrderedPartition",
    "Bipartition",
    "PoincarePoly",
    "enumerate_bipartitions",
    "degree_R",
    "lowest_degree",
    "gaussian_binomial",
    "poincare_poly",
    "brute_poincare",
    "packet_of",
    "duplicate_of",
    "bipartition_to_json",
    "bipartition_from_json",
]


@dataclass(frozen=True)
class OrderedPartition:
    """Ordered tuple of positive parts."""

    parts: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "parts", tuple(self.parts))
        if not self.parts:
            raise ValueError("empty partition")
        if any(not isinstance(p, int) or p < 1 for p in self.parts):
            raise ValueError(f"parts must be positive integers, got {self.parts}")

    @property
    def N(self) -> int:
        return sum(self.parts)

    def __str__(self) -> str:
        return "(" + ",".join(str(p) for p in self.parts) + ")"


@dataclass(frozen=True)
class Bipartition:
    """Ordered pairs (a_i, b_i), none equal to (0, 0)."""

    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        pairs = tuple((int(x), int(y)) for x, y in self.pairs)
        object.__setattr__(self, "pairs", pairs)
        if not pairs:
            raise ValueError("a bipartition needs at least one pair")
        for x, y in pairs:
            if x < 0 or y < 0:
                raise ValueError(f"negative entry in pair ({x}, {y})")
            if x == 0 and y == 0:
                raise ValueError("(0, 0) pairs are not allowed")

    @property
    def a(self) -> int:
        return sum(x for x, _ in self.pairs)

    @property
    def b(self) -> int:
        return sum(y for _, y in self.pairs)

    @property
    def N(self) -> int:
        return self.a + self.b

    @property
    def partition(self) -> OrderedPartition:
        """The underlying ordered partition (a_i + b_i)."""
        return OrderedPartition(tuple(x + y for x, y in self.pairs))

    @property
    def is_reduced(self) -> bool:
        """Every one-sided pair is a unit (1,0) or (0,1)."""
        return all(x + y == 1 for x, y in self.pairs if x == 0 or y == 0)

    def reduced(self) -> "Bipartition":
        """Break every one-sided pair into units; mixed pairs stay put."""
        out: list[tuple[int, int]] = []
        for x, y in self.pairs:
            if x and y:
                out.append((x, y))
            elif x:
                out.extend([(1, 0)] * x)
            else:
                out.extend([(0, 1)] * y)
        return Bipartition(tuple(out))

    def __str__(self) -> str:
        return "".join(f"({x},{y})" for x, y in self.pairs)


@dataclass(frozen=True)
class PoincarePoly:
    """Polynomial with integer coefficients; index = degree in t."""

    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        coeffs = tuple(int(c) for c in self.coeffs)
        while coeffs and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def zero(cls) -> "PoincarePoly":
        return cls(())

    @classmethod
    def one(cls) -> "PoincarePoly":
        return cls((1,))

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> "PoincarePoly":
        if degree < 0:
            raise ValueError("degree must be nonnegative")
        return cls((0,) * degree + (coeff,))

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Degree of the top term; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def low_degree(self) -> int:
        """Degree of the bottom nonzero term; -1 for the zero polynomial."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return -1

    def __add__(self, other: "PoincarePoly") -> "PoincarePoly":
        if not isinstance(other, PoincarePoly):
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return PoincarePoly(tuple(x + y for x, y in zip(a, b)))

    def __mul__(self, other: "PoincarePoly") -> "PoincarePoly":
        if not isinstance(other, PoincarePoly):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return PoincarePoly.zero()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if not x:
                continue
            for j, y in enumerate(other.coeffs):
                out[i + j] += x * y
        return PoincarePoly(tuple(out))

    def shift(self, k: int) -> "PoincarePoly":
        """Multiply by t^k."""
        if k < 0:
            raise ValueError("shift must be nonnegative")
        if self.is_zero:
            return self
        return PoincarePoly((0,) * k + self.coeffs)

    def stretch(self, k: int) -> "PoincarePoly":
        """Substitute t -> t^k."""
        if k < 1:
            raise ValueError("stretch factor must be positive")
        if self.is_zero or k == 1:
            return self
        out = [0] * (k * (len(self.coeffs) - 1) + 1)
        for i, c in enumerate(self.coeffs):
            out[k * i] = c
        return PoincarePoly(tuple(out))

    def __call__(self, x):
        value = 0
        for c in reversed(self.coeffs):
            value = value * x + c
        return value

    def is_palindromic(self) -> bool:
        """Coefficients symmetric about the midpoint of the nonzero support."""
        if self.is_zero:
            return True
        lo, hi = self.low_degree, self.degree
        body = self.coeffs[lo : hi + 1]
        return body == body[::-1]

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append("t" if c == 1 else f"{c}*t")
            else:
                terms.append(f"t^{i}" if c == 1 else f"{c}*t^{i}")
        return " + ".join(terms)


def _coerce_partition(P: OrderedPartition | Sequence[int]) -> tuple[int, ...]:
    if isinstance(P, OrderedPartition):
        return P.parts
    return OrderedPartition(tuple(P)).parts


def enumerate_bipartitions(
    a: int, b: int, P: OrderedPartition | Sequence[int] | None = None
) -> list[Bipartition]:
    """Bipartitions of (a, b): all compatible with P, or all reduced ones.

    With P given, members have a_i + b_i = N_i in order and sum a_i = a; the
    first coordinates run in decreasing lexicographic order.  Without P the
    result is every reduced bipartition of (a, b).
    """
    if a < 0 or b < 0:
        raise ValueError(f"signature entries must be nonnegative, got ({a}, {b})")
    if a + b < 1:
        raise ValueError("a + b must be positive")
    if P is None:
        return [Bipartition(p) for p in _reduced_sequences(a, b)]
    parts = _coerce_partition(P)
    if sum(parts) != a + b:
        raise ValueError(
            f"partition {parts} has size {sum(parts)}, cannot fill ({a}, {b})"
        )
    suffix_totals = [0] * (len(parts) + 1)
    for i in range(len(parts) - 1, -1, -1):
        suffix_totals[i] = suffix_totals[i + 1] + parts[i]

    out: list[Bipartition] = []

    def assign(i: int, a_rem: int, chosen: list[tuple[int, int]]) -> None:
        if i == len(parts):
            if a_rem == 0:
                out.append(Bipartition(tuple(chosen)))
            return
        hi = min(parts[i], a_rem)
        lo = max(0, a_rem - (suffix_totals[i + 1]))
        for a_i in range(hi, lo - 1, -1):
            chosen.append((a_i, parts[i] - a_i))
            assign(i + 1, a_rem - a_i, chosen)
            chosen.pop()

    assign(0, a, [])
    return out


def _reduced_sequences(a: int, b: int) -> Iterator[tuple[tuple[int, int], ...]]:
    if a == 0 and b == 0:
        yield ()
        return
    options: list[tuple[int, int]] = []
    if a >= 1:
        options.append((1, 0))
    if b >= 1:
        options.append((0, 1))
    for x in range(1, a + 1):
        for y in range(1, b + 1):
            options.append((x, y))
    for x, y in options:
        for rest in _reduced_sequences(a - x, b - y):
            yield ((x, y),) + rest


def degree_R(B: Bipartition) -> int:
    """Lowest cohomological degree of the representation indexed by B."""
    return B.a * B.b - sum(x * y for x, y in B.pairs)


def lowest_degree(a: int, b: int, k: int) -> int:
    """Minimal positive-split degree over the packet of (2k, 1, ..., 1).

    Closed form: a(N - 2k) when a <= k, else a(N - a) - k^2, for N = a + b,
    a <= b, and 1 <= k <= floor(N / 2).
    """
    if a < 0 or b < a:
        raise ValueError(f"need 0 <= a <= b, got ({a}, {b})")
    N = a + b
    if not 1 <= k <= N // 2:
        raise ValueError(f"need 1 <= k <= {N // 2}, got k={k}")
    if a <= k:
        return a * (N - 2 * k)
    return a * (N - a) - k * k


@lru_cache(maxsize=None)
def gaussian_binomial(n: int, k: int) -> PoincarePoly:
    """Gaussian binomial [n choose k]_q via the Pascal recurrence."""
    if k < 0 or n < 0 or k > n:
        raise ValueError(f"need 0 <= k <= n, got n={n}, k={k}")
    if k == 0 or k == n:
        return PoincarePoly.one()
    return gaussian_binomial(n - 1, k - 1) + gaussian_binomial(n - 1, k).shift(k)


def poincare_poly(B: Bipartition) -> PoincarePoly:
    """t^R times the product over pairs of [a_i + b_i choose a_i] at t^2."""
    poly = PoincarePoly.one()
    for x, y in B.pairs:
        poly = poly * gaussian_binomial(x + y, x).stretch(2)
    return poly.shift(degree_R(B))


def _box_partition_counts(rows: int, cols: int) -> list[int]:
    """Number of partitions inside a rows x cols box, indexed by area."""
    counts = [0] * (rows * cols + 1)

    def walk(row: int, limit: int, area: int) -> None:
        if row == rows:
            counts[area] += 1
            return
        for part in range(limit, -1, -1):
            walk(row + 1, part, area + part)

    walk(0, cols, 0)
    return counts


def brute_poincare(B: Bipartition, *, guard: int | None = None) -> PoincarePoly:
    """Oracle for :func:`poincare_poly`: each factor counted cell by cell.

    Enumerates the partitions in each a_i x b_i box directly (the Schubert
    cells of the Grassmannian) instead of using the Gaussian recurrence.
    Refuses when the total specialization product exceeds the guard cap.
    """
    cap = guard_limit(guard, DEFAULT_BRUTE_GUARD)
    size = 1
    for x, y in B.pairs:
        size *= math.comb(x + y, x)
    if size > cap:
        raise GuardError(f"brute enumeration of {size} cells exceeds the cap {cap}")
    poly = PoincarePoly.one()
    for x, y in B.pairs:
        poly = poly * PoincarePoly(tuple(_box_partition_counts(x, y))).stretch(2)
    return poly.shift(degree_R(B))


def packet_of(
    P: OrderedPartition | Sequence[int], a: int, b: int
) -> list[Bipartition]:
    """All members of the packet attached to P on U(a, b)."""
    return enumerate_bipartitions(a, b, P)


def duplicate_of(B: Bipartition) -> Bipartition | None:
    """Reduced form when B is itself non-reduced, else None."""
    return None if B.is_reduced else B.reduced()


def bipartition_to_json(B: Bipartition) -> dict:
    return {"pairs": [[x, y] for x, y in B.pairs]}


def bipartition_from_json(data: dict | str | Sequence) -> Bipartition:
    if isinstance(data, str):
        data = json.loads(data)
    if isinstance(data, dict):
        if "pairs" not in data:
            raise ValueError('bipartition JSON must carry a "pairs" list')
        data = data["pairs"]
    try:
        pairs = tuple((int(x), int(y)) for x, y in data)
    except (TypeError, ValueError) as exc:
        raise ValueError(f"malformed bipartition data: {data!r}") from exc
    return Bipartition(pairs)
