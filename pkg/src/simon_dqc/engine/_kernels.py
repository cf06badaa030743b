"""Inner loops of the dense engine.

Every kernel has a pure-numpy implementation and a numba ``@njit`` twin with
the same signature. The numba versions are used unless numba is missing or
the environment variable ``SIMON_DQC_DISABLE_NUMBA`` is set to a true value;
:data:`NUMPY` and :data:`NUMBA` expose both sets for benchmarking.

Register indices are int64, so dense vectors are limited to widths below 63
(the engine caps them far lower).
"""

from __future__ import annotations

import os
from types import SimpleNamespace

import numpy as np

_INV_SQRT2 = 1.0 / np.sqrt(2.0)


def _env_disabled() -> bool:
    return os.environ.get("SIMON_DQC_DISABLE_NUMBA", "").strip().lower() in {"1", "true", "yes", "on"}


try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

HAVE_NUMBA = numba is not None
USE_NUMBA = HAVE_NUMBA and not _env_disabled()


# --------------------------------------------------------------------------
# numpy implementations


def hadamard_qubit_np(vec, shift):
    """Apply H in place to the qubit at bit position ``shift``."""
    view = vec.reshape(-1, 2, 1 << shift)
    a = view[:, 0, :].copy()
    b = view[:, 1, :]
    view[:, 0, :] = (a + b) * _INV_SQRT2
    view[:, 1, :] = (a - b) * _INV_SQRT2
    return vec


def xor_oracle_np(vec, ctrl_shift, ctrl_mask, table, tgt_shift):
    """``|x> -> |x ^ (table[ctrl(x)] << tgt_shift)>``."""
    x = np.arange(vec.size, dtype=np.int64)
    dest = x ^ (table[(x >> ctrl_shift) & ctrl_mask] << tgt_shift)
    out = np.empty_like(vec)
    out[dest] = vec
    return out


def multiplex_xor_np(vec, idx_shift, idx_mask, value_shifts, value_mask, tgt_shift):
    """``|x> -> |x ^ (block[idx(x)](x) << tgt_shift)>``."""
    x = np.arange(vec.size, dtype=np.int64)
    sel = value_shifts[(x >> idx_shift) & idx_mask]
    dest = x ^ (((x >> sel) & value_mask) << tgt_shift)
    out = np.empty_like(vec)
    out[dest] = vec
    return out


def sort_xor_np(vec, value_shifts, value_mask, m, tgt_shift, chunk=1 << 18):
    """``|x> -> |x ^ (sorted concatenation of the blocks << tgt_shift)>``."""
    k = value_shifts.size
    place = m * np.arange(k - 1, -1, -1, dtype=np.int64)
    out = np.empty_like(vec)
    for start in range(0, vec.size, chunk):
        x = np.arange(start, min(start + chunk, vec.size), dtype=np.int64)
        blocks = (x[:, None] >> value_shifts[None, :]) & value_mask
        blocks.sort(axis=1)
        word = np.bitwise_or.reduce(blocks << place[None, :], axis=1)
        out[x ^ (word << tgt_shift)] = vec[x]
    return out


def fwht_rows_np(mat):
    """Unnormalized Walsh-Hadamard transform of every row, in place."""
    rows, size = mat.shape
    h = 1
    while h < size:
        view = mat.reshape(rows, -1, 2, h)
        a = view[:, :, 0, :].copy()
        b = view[:, :, 1, :]
        view[:, :, 0, :] = a + b
        view[:, :, 1, :] = a - b
        h *= 2
    return mat


NUMPY = SimpleNamespace(
    hadamard_qubit=hadamard_qubit_np,
    xor_oracle=xor_oracle_np,
    multiplex_xor=multiplex_xor_np,
    sort_xor=sort_xor_np,
    fwht_rows=fwht_rows_np,
)


# --------------------------------------------------------------------------
# numba implementations

if HAVE_NUMBA:

    @numba.njit(cache=True)
    def hadamard_qubit_nb(vec, shift):
        step = np.int64(1) << shift
        n = vec.size
        for base in range(0, n, 2 * step):
            for i in range(base, base + step):
                a = vec[i]
                b = vec[i + step]
                vec[i] = (a + b) * _INV_SQRT2
                vec[i + step] = (a - b) * _INV_SQRT2
        return vec

    @numba.njit(cache=True)
    def xor_oracle_nb(vec, ctrl_shift, ctrl_mask, table, tgt_shift):
        out = np.empty_like(vec)
        for x in range(vec.size):
            out[x ^ (table[(x >> ctrl_shift) & ctrl_mask] << tgt_shift)] = vec[x]
        return out

    @numba.njit(cache=True)
    def multiplex_xor_nb(vec, idx_shift, idx_mask, value_shifts, value_mask, tgt_shift):
        out = np.empty_like(vec)
        for x in range(vec.size):
            sel = value_shifts[(x >> idx_shift) & idx_mask]
            out[x ^ (((x >> sel) & value_mask) << tgt_shift)] = vec[x]
        return out

    @numba.njit(cache=True)
    def sort_xor_nb(vec, value_shifts, value_mask, m, tgt_shift):
        k = value_shifts.size
        blocks = np.empty(k, dtype=np.int64)
        out = np.empty_like(vec)
        for x in range(vec.size):
            for j in range(k):
                v = (x >> value_shifts[j]) & value_mask
                i = j
                while i > 0 and blocks[i - 1] > v:
                    blocks[i] = blocks[i - 1]
                    i -= 1
                blocks[i] = v
            word = np.int64(0)
            for j in range(k):
                word = (word << m) | blocks[j]
            out[x ^ (word << tgt_shift)] = vec[x]
        return out

    @numba.njit(cache=True)
    def fwht_rows_nb(mat):
        rows, size = mat.shape
        for r in range(rows):
            h = 1
            while h < size:
                for base in range(0, size, 2 * h):
                    for i in range(base, base + h):
                        a = mat[r, i]
                        b = mat[r, i + h]
                        mat[r, i] = a + b
                        mat[r, i + h] = a - b
                h *= 2
        return mat

    NUMBA = SimpleNamespace(
        hadamard_qubit=hadamard_qubit_nb,
        xor_oracle=xor_oracle_nb,
        multiplex_xor=multiplex_xor_nb,
        sort_xor=sort_xor_nb,
        fwht_rows=fwht_rows_nb,
    )
else:  # pragma: no cover
    NUMBA = None


def active():
    """The kernel set selected at import time."""
    return NUMBA if USE_NUMBA else NUMPY
