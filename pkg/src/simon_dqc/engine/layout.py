"""Named qubit segments laid out left to right in one register."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

CONTROL = "control"
INDEX = "index"
TARGET = "target"
SORT_TARGET = "sort_target"


def value_name(w: int) -> str:
    return f"value{w}"


class LayoutError(KeyError):
    """Unknown segment or a layout lacking a segment an operator needs."""

    def __str__(self):
        return str(self.args[0]) if self.args else ""


@dataclass(frozen=True)
class RegisterLayout:
    """Ordered ``(name, width)`` segments; qubit 0 is the leftmost.

    Basis states are integers whose most significant bit is qubit 0, so a
    segment's content is ``(x >> shift(name)) & mask(name)``.
    """

    segments: tuple[tuple[str, int], ...]

    def __post_init__(self):
        names = [name for name, _ in self.segments]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate segment names in {names}")
        if any(width < 0 for _, width in self.segments):
            raise ValueError("segment widths must be nonnegative")

    @cached_property
    def _offsets(self) -> dict[str, tuple[int, int]]:
        out, pos = {}, 0
        for name, width in self.segments:
            out[name] = (pos, width)
            pos += width
        return out

    @property
    def width(self) -> int:
        return sum(width for _, width in self.segments)

    @property
    def names(self) -> list[str]:
        return [name for name, _ in self.segments]

    def __contains__(self, name: str) -> bool:
        return name in self._offsets

    def _lookup(self, name: str) -> tuple[int, int]:
        try:
            return self._offsets[name]
        except KeyError:
            raise LayoutError(f"layout has no segment {name!r} (segments: {self.names})") from None

    def offset(self, name: str) -> int:
        return self._lookup(name)[0]

    def segment_width(self, name: str) -> int:
        return self._lookup(name)[1]

    def shift(self, name: str) -> int:
        offset, width = self._lookup(name)
        return self.width - offset - width

    def mask(self, name: str) -> int:
        return (1 << self.segment_width(name)) - 1

    def extract(self, x: int, name: str) -> int:
        return (x >> self.shift(name)) & self.mask(name)

    def qubit_shifts(self, names) -> list[int]:
        """Bit positions (from the least significant end) of every qubit in ``names``."""
        out = []
        for name in names:
            shift, width = self.shift(name), self.segment_width(name)
            out.extend(range(shift + width - 1, shift - 1, -1))
        return out

    def value_blocks(self) -> list[str]:
        blocks, w = [], 0
        while value_name(w) in self:
            blocks.append(value_name(w))
            w += 1
        return blocks


def classic_layout(n: int, m: int) -> RegisterLayout:
    """``n`` input qubits followed by an ``m``-qubit target."""
    return RegisterLayout(((CONTROL, n), (TARGET, m)))


def improved_layout(n: int, m: int, t: int) -> RegisterLayout:
    """Control ``n - t``, index ``t``, ``2^t`` value blocks of ``m``, target ``m``."""
    blocks = tuple((value_name(w), m) for w in range(1 << t))
    return RegisterLayout(((CONTROL, n - t), (INDEX, t)) + blocks + ((TARGET, m),))


def baseline_layout(n: int, m: int, t: int) -> RegisterLayout:
    """Control ``n - t``, ``2^t`` value blocks of ``m``, sort target ``2^t m``."""
    blocks = tuple((value_name(w), m) for w in range(1 << t))
    return RegisterLayout(((CONTROL, n - t),) + blocks + ((SORT_TARGET, (1 << t) * m),))
