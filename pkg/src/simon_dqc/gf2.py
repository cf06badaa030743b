"""Bit strings over GF(2) and incremental Gaussian elimination.

Bit order is big-endian throughout: index 0 is the leftmost character of the
text form and the most significant bit of the integer value.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator


class Indeterminate(Exception):
    """Raised when the collected rows do not pin down a hidden string."""


@dataclass(frozen=True, slots=True)
class BitVec:
    """Immutable fixed-length bit string, packed into a Python int."""

    value: int
    length: int

    def __post_init__(self):
        if self.length < 0:
            raise ValueError("length must be nonnegative")
        if self.value < 0 or self.value >> self.length:
            raise ValueError(f"value {self.value} does not fit in {self.length} bits")

    @classmethod
    def from_str(cls, text: str) -> BitVec:
        text = text.strip()
        if any(c not in "01" for c in text):
            raise ValueError(f"not a bit string: {text!r}")
        return cls(int(text, 2) if text else 0, len(text))

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> BitVec:
        value, length = 0, 0
        for b in bits:
            if b not in (0, 1):
                raise ValueError(f"bit must be 0 or 1, got {b!r}")
            value = (value << 1) | b
            length += 1
        return cls(value, length)

    @classmethod
    def zeros(cls, length: int) -> BitVec:
        return cls(0, length)

    def __str__(self) -> str:
        return format(self.value, f"0{self.length}b") if self.length else ""

    def __repr__(self) -> str:
        return f"BitVec('{self}')"

    def __len__(self) -> int:
        return self.length

    def __iter__(self) -> Iterator[int]:
        for i in range(self.length):
            yield self[i]

    def __getitem__(self, index):
        if isinstance(index, slice):
            start, stop, step = index.indices(self.length)
            if step != 1:
                raise ValueError("BitVec slices must be contiguous")
            width = max(0, stop - start)
            return BitVec((self.value >> (self.length - start - width)) & ((1 << width) - 1), width)
        if index < 0:
            index += self.length
        if not 0 <= index < self.length:
            raise IndexError(index)
        return (self.value >> (self.length - 1 - index)) & 1

    def _check(self, other: BitVec) -> None:
        if not isinstance(other, BitVec):
            raise TypeError(f"expected BitVec, got {type(other).__name__}")
        if other.length != self.length:
            raise ValueError(f"length mismatch: {self.length} vs {other.length}")

    def __xor__(self, other: BitVec) -> BitVec:
        self._check(other)
        return BitVec(self.value ^ other.value, self.length)

    def __add__(self, other: BitVec) -> BitVec:
        """Concatenation, ``u + w`` is the string ``uw``."""
        if not isinstance(other, BitVec):
            return NotImplemented
        return BitVec((self.value << other.length) | other.value, self.length + other.length)

    def dot(self, other: BitVec) -> int:
        self._check(other)
        return (self.value & other.value).bit_count() & 1

    def to_int(self) -> int:
        return self.value

    def is_zero(self) -> bool:
        return self.value == 0


def xor(a: BitVec, b: BitVec) -> BitVec:
    return a ^ b


def dot(a: BitVec, b: BitVec) -> int:
    return a.dot(b)


def to_int(a: BitVec) -> int:
    return a.value


def orthogonal_complement(s: BitVec) -> list[BitVec]:
    """All z with ``s . z = 0``, in increasing integer order."""
    n = s.length
    return [BitVec(z, n) for z in range(1 << n) if not (z & s.value).bit_count() & 1]


class Gf2Basis:
    """Row-reduced basis over GF(2), grown one vector at a time.

    Rows are kept in reduced row-echelon form: each row owns a pivot (its most
    significant set bit) and no other row has that bit set.
    """

    def __init__(self, n: int):
        self.n = n
        self._pivots: dict[int, int] = {}  # pivot bit position -> row value

    @property
    def rank(self) -> int:
        return len(self._pivots)

    @property
    def rows(self) -> list[BitVec]:
        return [BitVec(self._pivots[p], self.n) for p in sorted(self._pivots, reverse=True)]

    def _reduce(self, v: int) -> int:
        for p, row in self._pivots.items():
            if (v >> p) & 1:
                v ^= row
        return v

    def contains(self, z: BitVec) -> bool:
        if z.length != self.n:
            raise ValueError(f"expected length {self.n}, got {z.length}")
        return self._reduce(z.value) == 0

    def insert(self, z: BitVec) -> bool:
        """Add ``z``; return True iff it was independent of the current rows."""
        if z.length != self.n:
            raise ValueError(f"expected length {self.n}, got {z.length}")
        v = self._reduce(z.value)
        if v == 0:
            return False
        p = v.bit_length() - 1
        for q, row in self._pivots.items():
            if (row >> p) & 1:
                self._pivots[q] = row ^ v
        self._pivots[p] = v
        return True

    def nonzero_solution(self) -> BitVec:
        """The unique nonzero s orthogonal to every row; requires rank n-1."""
        if self.rank != self.n - 1:
            raise Indeterminate(f"rank {self.rank} does not determine a unique nonzero solution (n={self.n})")
        (free,) = set(range(self.n)) - set(self._pivots)
        s = 1 << free
        for p, row in self._pivots.items():
            if (row >> free) & 1:
                s |= 1 << p
        return BitVec(s, self.n)


def solve_hidden(basis: Gf2Basis, n: int) -> BitVec:
    """Hidden string implied by ``basis``.

    Rank n-1 gives the unique nonzero annihilator, rank n gives ``0^n``;
    anything lower raises :class:`Indeterminate`.
    """
    if basis.n != n:
        raise ValueError(f"basis has width {basis.n}, expected {n}")
    if basis.rank == n:
        return BitVec.zeros(n)
    return basis.nonzero_solution()
