"""Fixed-length 0/1 assignments stored as integer bitmasks.

Variable ``i`` (0-based) lives at bit position ``n - 1 - i``, so comparing
masks numerically is the same as comparing the bit strings lexicographically
with ``x_1`` leftmost.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable, Iterator, Sequence


def bit(n: int, i: int) -> int:
    """Mask with only variable ``i`` set."""
    return 1 << (n - 1 - i)


@dataclass(frozen=True, order=True, slots=True)
class Assignment:
    n: int
    mask: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("dimension must be nonnegative")
        if not 0 <= self.mask < (1 << self.n):
            raise ValueError(f"mask {self.mask} does not fit in {self.n} bits")

    @classmethod
    def from_bits(cls, bits: Sequence[int]) -> Assignment:
        mask = 0
        for b in bits:
            if b not in (0, 1):
                raise ValueError(f"not a bit: {b!r}")
            mask = (mask << 1) | b
        return cls(len(bits), mask)

    @classmethod
    def from_str(cls, s: str) -> Assignment:
        if any(c not in "01" for c in s):
            raise ValueError(f"not a bit string: {s!r}")
        return cls(len(s), int(s, 2) if s else 0)

    @classmethod
    def zeros(cls, n: int) -> Assignment:
        return cls(n, 0)

    @classmethod
    def ones(cls, n: int) -> Assignment:
        return cls(n, (1 << n) - 1)

    @property
    def bits(self) -> tuple[int, ...]:
        return tuple(self)

    def __len__(self) -> int:
        return self.n

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.n:
            raise IndexError(i)
        return (self.mask >> (self.n - 1 - i)) & 1

    def __iter__(self) -> Iterator[int]:
        for p in range(self.n - 1, -1, -1):
            yield (self.mask >> p) & 1

    def __str__(self) -> str:
        return format(self.mask, f"0{self.n}b") if self.n else ""

    def weight(self) -> int:
        return self.mask.bit_count()

    def distance(self, other: Assignment) -> int:
        if other.n != self.n:
            raise ValueError("dimension mismatch")
        return (self.mask ^ other.mask).bit_count()

    def flip(self, i: int) -> Assignment:
        return Assignment(self.n, self.mask ^ bit(self.n, i))

    def restrict(self, values: dict[int, int]) -> Assignment:
        """The assignment with each listed variable overwritten (a|_{x_i=v})."""
        mask = self.mask
        for i, v in values.items():
            b = bit(self.n, i)
            mask = (mask | b) if v else (mask & ~b)
        return Assignment(self.n, mask)

    def fill(self, indices: Iterable[int], value: int) -> Assignment:
        return self.restrict({i: value for i in indices})

    def ones_indices(self) -> list[int]:
        return [i for i, b in enumerate(self) if b]


def ball_masks(center: int, n: int, d: int) -> Iterator[int]:
    """Masks at Hamming distance at most ``d`` from ``center`` (unordered)."""
    positions = [1 << p for p in range(n)]
    for r in range(min(d, n) + 1):
        for flips in combinations(positions, r):
            yield center ^ sum(flips)


def ball_size(n: int, d: int) -> int:
    return sum(comb(n, i) for i in range(min(d, n) + 1))


def hamming_ball(a: Assignment, d: int) -> list[Assignment]:
    """All assignments within distance ``d`` of ``a``, in lexicographic order."""
    if d < 0:
        raise ValueError("radius must be nonnegative")
    return [Assignment(a.n, m) for m in sorted(ball_masks(a.mask, a.n, d))]


def all_assignments(n: int) -> list[Assignment]:
    return [Assignment(n, m) for m in range(1 << n)]
