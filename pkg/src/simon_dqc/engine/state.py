"""Exact state vectors in two interchangeable representations.

``DenseState`` holds all ``2^W`` amplitudes in a numpy array and runs its
operators through the kernels in :mod:`._kernels`. ``SparseState`` maps basis
integers to amplitudes and is the only option for the wide registers of the
distributed circuits: just the first ``n`` qubits are ever put into
superposition, so it never holds more than ``2^n`` entries.

Every operator here is a basis permutation or a layer of Hadamards; a state
is never mutated, each call returns a new one.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from ..gf2 import BitVec
from . import _kernels
from .layout import CONTROL, INDEX, SORT_TARGET, TARGET, LayoutError, RegisterLayout

MAX_DENSE_WIDTH = 24
SPARSE_ABOVE = 16
PRUNE_ATOL = 1e-13


class EngineError(ValueError):
    """Operator applied to a layout it does not fit."""


# --------------------------------------------------------------------------
# basis maps


class _XorOracle:
    def __init__(self, layout: RegisterLayout, control: str, table, target: str, m: int):
        if layout.segment_width(target) != m:
            raise EngineError(f"target {target!r} has width {layout.segment_width(target)}, expected {m}")
        table = np.ascontiguousarray(table, dtype=np.int64)
        if table.size != 1 << layout.segment_width(control):
            raise EngineError(f"oracle table has {table.size} entries; control {control!r} needs {1 << layout.segment_width(control)}")
        self.table = table
        self.table_list = table.tolist()
        self.cs, self.cm = layout.shift(control), layout.mask(control)
        self.ts = layout.shift(target)

    def sparse(self, x: int) -> int:
        return x ^ (self.table_list[(x >> self.cs) & self.cm] << self.ts)

    def dense(self, vec, k):
        return k.xor_oracle(vec, self.cs, self.cm, self.table, self.ts)


class _Multiplexer:
    def __init__(self, layout: RegisterLayout):
        if INDEX not in layout or TARGET not in layout:
            raise EngineError("V needs an index segment and an m-bit target")
        t = layout.segment_width(INDEX)
        blocks = layout.value_blocks()
        if len(blocks) != 1 << t:
            raise EngineError(f"V needs 2^t = {1 << t} value blocks, layout has {len(blocks)}")
        m = layout.segment_width(TARGET)
        if any(layout.segment_width(b) != m for b in blocks):
            raise EngineError("value blocks and target must share width m")
        self.ishift, self.imask = layout.shift(INDEX), layout.mask(INDEX)
        self.vshifts = np.array([layout.shift(b) for b in blocks], dtype=np.int64)
        self.vshift_list = self.vshifts.tolist()
        self.vmask = (1 << m) - 1
        self.ts = layout.shift(TARGET)

    def sparse(self, x: int) -> int:
        i = (x >> self.ishift) & self.imask
        return x ^ (((x >> self.vshift_list[i]) & self.vmask) << self.ts)

    def dense(self, vec, k):
        return k.multiplex_xor(vec, self.ishift, self.imask, self.vshifts, self.vmask, self.ts)


class _Sorter:
    def __init__(self, layout: RegisterLayout):
        blocks = layout.value_blocks()
        if SORT_TARGET not in layout or not blocks:
            raise EngineError("U_Sort needs value blocks and a sort-target segment")
        m = layout.segment_width(blocks[0])
        if any(layout.segment_width(b) != m for b in blocks):
            raise EngineError("value blocks must share width m")
        if layout.segment_width(SORT_TARGET) != len(blocks) * m:
            raise EngineError("sort target must be 2^t * m qubits wide")
        self.m = m
        self.vshifts = np.array([layout.shift(b) for b in blocks], dtype=np.int64)
        self.vshift_list = self.vshifts.tolist()
        self.vmask = (1 << m) - 1
        self.ts = layout.shift(SORT_TARGET)

    def sparse(self, x: int) -> int:
        word = 0
        for v in sorted((x >> sh) & self.vmask for sh in self.vshift_list):
            word = (word << self.m) | v
        return x ^ (word << self.ts)

    def dense(self, vec, k):
        return k.sort_xor(vec, self.vshifts, self.vmask, self.m, self.ts)


# --------------------------------------------------------------------------
# states


@dataclass(frozen=True)
class MeasurementOutcome:
    bits: BitVec
    probability: float


class QuantumState:
    layout: RegisterLayout
    representation: str

    @property
    def width(self) -> int:
        return self.layout.width

    def amplitudes(self) -> dict[int, complex]:
        """Nonzero amplitudes keyed by basis integer."""
        raise NotImplementedError

    def norm(self) -> float:
        return float(np.sqrt(sum(abs(a) ** 2 for a in self.amplitudes().values())))

    def __len__(self) -> int:
        return len(self.amplitudes())


class DenseState(QuantumState):
    representation = "dense"

    def __init__(self, layout: RegisterLayout, vec: np.ndarray, kernels=None):
        if layout.width > MAX_DENSE_WIDTH:
            raise EngineError(f"dense states are capped at {MAX_DENSE_WIDTH} qubits, layout has {layout.width}")
        self.layout = layout
        self.vec = vec
        self.kernels = kernels or _kernels.active()

    @classmethod
    def zero(cls, layout: RegisterLayout, kernels=None) -> DenseState:
        if layout.width > MAX_DENSE_WIDTH:
            raise EngineError(f"dense states are capped at {MAX_DENSE_WIDTH} qubits, layout has {layout.width}")
        vec = np.zeros(1 << layout.width, dtype=np.complex128)
        vec[0] = 1.0
        return cls(layout, vec, kernels)

    def amplitudes(self) -> dict[int, complex]:
        idx = np.flatnonzero(self.vec)
        return dict(zip(idx.tolist(), self.vec[idx].tolist()))

    def norm(self) -> float:
        return float(np.linalg.norm(self.vec))

    def permute(self, op) -> DenseState:
        return DenseState(self.layout, op.dense(self.vec, self.kernels), self.kernels)

    def hadamard(self, shifts: Sequence[int]) -> DenseState:
        vec = self.vec.copy()
        for sh in shifts:
            self.kernels.hadamard_qubit(vec, sh)
        return DenseState(self.layout, vec, self.kernels)

    def probabilities(self, segments: Sequence[str]) -> dict[int, float]:
        probs = np.abs(self.vec) ** 2
        idx = np.flatnonzero(probs)
        keys = np.zeros(idx.size, dtype=np.int64)
        for name in segments:
            w = self.layout.segment_width(name)
            keys = (keys << w) | ((idx >> self.layout.shift(name)) & self.layout.mask(name))
        uniq, inv = np.unique(keys, return_inverse=True)
        totals = np.bincount(inv, weights=probs[idx], minlength=uniq.size)
        return dict(zip(uniq.tolist(), totals.tolist()))


class SparseState(QuantumState):
    representation = "sparse"

    def __init__(self, layout: RegisterLayout, amps: dict[int, complex], kernels=None):
        self.layout = layout
        self.amps = amps
        self.kernels = kernels or _kernels.active()

    @classmethod
    def zero(cls, layout: RegisterLayout, kernels=None) -> SparseState:
        return cls(layout, {0: 1.0 + 0j}, kernels)

    def amplitudes(self) -> dict[int, complex]:
        return dict(self.amps)

    def permute(self, op) -> SparseState:
        f = op.sparse
        return SparseState(self.layout, {f(x): a for x, a in self.amps.items()}, self.kernels)

    def hadamard(self, shifts: Sequence[int]) -> SparseState:
        k = len(shifts)
        if k == 0:
            return SparseState(self.layout, dict(self.amps), self.kernels)
        hmask = 0
        for sh in shifts:
            hmask |= 1 << sh
        spread = [0] * (1 << k)
        for j in range(1 << k):
            word = 0
            for bit, sh in enumerate(shifts):
                if (j >> bit) & 1:
                    word |= 1 << sh
            spread[j] = word
        groups: dict[int, int] = {}
        rows, cols, vals = [], [], []
        for x, a in self.amps.items():
            rest = x & ~hmask
            row = groups.setdefault(rest, len(groups))
            j = 0
            for bit, sh in enumerate(shifts):
                j |= ((x >> sh) & 1) << bit
            rows.append(row)
            cols.append(j)
            vals.append(a)
        mat = np.zeros((len(groups), 1 << k), dtype=np.complex128)
        mat[rows, cols] = vals
        self.kernels.fwht_rows(mat)
        mat *= 2.0 ** (-k / 2)
        out: dict[int, complex] = {}
        rests = list(groups)
        nz_r, nz_c = np.nonzero(np.abs(mat) > PRUNE_ATOL)
        for r, c, a in zip(nz_r.tolist(), nz_c.tolist(), mat[nz_r, nz_c].tolist()):
            out[rests[r] | spread[c]] = a
        return SparseState(self.layout, out, self.kernels)

    def probabilities(self, segments: Sequence[str]) -> dict[int, float]:
        parts = [(self.layout.shift(s), self.layout.mask(s), self.layout.segment_width(s)) for s in segments]
        out: dict[int, float] = {}
        for x, a in self.amps.items():
            key = 0
            for sh, mask, w in parts:
                key = (key << w) | ((x >> sh) & mask)
            out[key] = out.get(key, 0.0) + abs(a) ** 2
        return out


# --------------------------------------------------------------------------
# operations


def choose_representation(layout: RegisterLayout, representation: str = "auto") -> str:
    if representation == "auto":
        return "sparse" if layout.width > SPARSE_ABOVE else "dense"
    if representation not in ("dense", "sparse"):
        raise ValueError(f"unknown representation {representation!r}")
    return representation


def init(layout: RegisterLayout, representation: str = "auto", kernels=None) -> QuantumState:
    """All-zeros basis state over ``layout``."""
    if choose_representation(layout, representation) == "dense":
        return DenseState.zero(layout, kernels)
    return SparseState.zero(layout, kernels)


def hadamard_layer(state: QuantumState, segment_names: Iterable[str]) -> QuantumState:
    return state.hadamard(state.layout.qubit_shifts(list(segment_names)))


def apply_oracle(state: QuantumState, table, control: str = CONTROL, target: str = TARGET) -> QuantumState:
    """``|x>|c> -> |x>|c ^ table[x]>`` with ``x`` read from ``control``."""
    m = state.layout.segment_width(target)
    return state.permute(_XorOracle(state.layout, control, table, target, m))


def apply_suboracle(state: QuantumState, fam, w, target: str) -> QuantumState:
    """Query ``f_w`` on the control segment, XOR-ing the answer into ``target``."""
    w = w.value if isinstance(w, BitVec) else int(w)
    return state.permute(_XorOracle(state.layout, CONTROL, fam.sub_table(w), target, fam.m))


def apply_V(state: QuantumState) -> QuantumState:
    """XOR the value block selected by the index segment into the target."""
    return state.permute(_Multiplexer(state.layout))


def apply_usort(state: QuantumState) -> QuantumState:
    """XOR the ascending-sorted concatenation of the value blocks into the sort target."""
    return state.permute(_Sorter(state.layout))


def measure_distribution(state: QuantumState, segment_names: Sequence[str]) -> list[MeasurementOutcome]:
    """Exact marginal over ``segment_names`` (concatenated in the given order)."""
    segment_names = list(segment_names)
    for name in segment_names:
        state.layout.segment_width(name)
    width = sum(state.layout.segment_width(s) for s in segment_names)
    probs = state.probabilities(segment_names)
    return [MeasurementOutcome(BitVec(k, width), p) for k, p in sorted(probs.items())]


def distribution(state: QuantumState, segment_names: Sequence[str]) -> dict[str, float]:
    """:func:`measure_distribution` keyed by bit string."""
    return {str(o.bits): o.probability for o in measure_distribution(state, segment_names)}


def sample(state: QuantumState, segment_names: Sequence[str], seed=None, size: int | None = None):
    """Draw from the exact marginal; returns a BitVec, or a list when ``size`` is given."""
    outcomes = measure_distribution(state, segment_names)
    p = np.array([o.probability for o in outcomes])
    rng = np.random.default_rng(seed)
    picks = rng.choice(len(outcomes), size=1 if size is None else size, p=p / p.sum())
    if size is None:
        return outcomes[int(picks[0])].bits
    return [outcomes[int(i)].bits for i in picks]


def to_sparse(state: QuantumState) -> SparseState:
    if isinstance(state, SparseState):
        return state
    return SparseState(state.layout, state.amplitudes(), state.kernels)


def max_abs_difference(a: QuantumState, b: QuantumState) -> float:
    """Largest entrywise amplitude difference; layouts must match."""
    if a.layout != b.layout:
        raise EngineError("states have different layouts")
    da, db = a.amplitudes(), b.amplitudes()
    return max((abs(da.get(x, 0) - db.get(x, 0)) for x in da.keys() | db.keys()), default=0.0)


def dump(state: QuantumState, atol: float = 1e-12) -> str:
    """``bitstring re im`` per amplitude above ``atol``, sorted by bitstring."""
    w = state.width
    lines = []
    for x, a in sorted(state.amplitudes().items()):
        if abs(a) > atol:
            lines.append(f"{x:0{w}b} {a.real + 0.0:.17g} {a.imag + 0.0:.17g}")
    return "\n".join(lines) + ("\n" if lines else "")


__all__ = [
    "DenseState",
    "EngineError",
    "LayoutError",
    "MAX_DENSE_WIDTH",
    "MeasurementOutcome",
    "QuantumState",
    "SparseState",
    "apply_V",
    "apply_oracle",
    "apply_suboracle",
    "apply_usort",
    "distribution",
    "dump",
    "hadamard_layer",
    "init",
    "max_abs_difference",
    "measure_distribution",
    "sample",
    "to_sparse",
]
