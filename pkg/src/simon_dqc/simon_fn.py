"""Simon-promise functions: generation, validation, splitting, file I/O."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .gf2 import BitVec

MAX_N = 14
MAX_M = 62


class ParameterError(ValueError):
    """Invalid problem parameters (n, m, t, s)."""


class PromiseViolation(RuntimeError):
    """The function does not satisfy the Simon promise."""


@dataclass(frozen=True, eq=False)
class SimonFunction:
    """Truth table of ``f: {0,1}^n -> {0,1}^m`` with declared hidden string ``s``.

    ``table[x]`` is the integer value of ``f(x)`` where ``x`` is read
    big-endian.
    """

    n: int
    m: int
    s: BitVec
    table: np.ndarray

    def __post_init__(self):
        if self.s.length != self.n:
            raise ParameterError(f"s has length {self.s.length}, expected n={self.n}")
        if self.table.shape != (1 << self.n,):
            raise ParameterError(f"table must have 2^n = {1 << self.n} entries")
        self.table.setflags(write=False)

    def __call__(self, x: BitVec) -> BitVec:
        if x.length != self.n:
            raise ValueError(f"input has length {x.length}, expected {self.n}")
        return BitVec(int(self.table[x.value]), self.m)

    def value(self, x: int) -> int:
        return int(self.table[x])

    def with_table(self, table) -> SimonFunction:
        return SimonFunction(self.n, self.m, self.s, np.asarray(table, dtype=np.int64).copy())


def _check_params(n: int, m: int) -> None:
    if not 1 <= n <= MAX_N:
        raise ParameterError(f"n must be in [1, {MAX_N}], got {n}")
    if m < max(1, n - 1):
        raise ParameterError(f"m must satisfy m >= max(1, n-1) (n={n}, m={m})")
    if m > MAX_M:
        raise ParameterError(f"m must be at most {MAX_M}, got {m}")


def random_nonzero_s(n: int, rng: np.random.Generator) -> BitVec:
    return BitVec(int(rng.integers(1, 1 << n)), n)


def generate(n: int, m: int, s: BitVec | str | None = None, seed=None) -> SimonFunction:
    """Uniformly random table satisfying the promise for hidden string ``s``.

    Each coset ``{x, x^s}`` gets its own value, drawn without replacement from
    ``{0,1}^m``. With ``s`` omitted a random nonzero string is planted.
    """
    _check_params(n, m)
    rng = np.random.default_rng(seed)
    if s is None:
        s = random_nonzero_s(n, rng)
    elif isinstance(s, str):
        s = BitVec.from_str(s)
    if s.length != n:
        raise ParameterError(f"s has length {s.length}, expected n={n}")
    sv = s.value
    xs = np.arange(1 << n, dtype=np.int64)
    if sv == 0:
        if m < n:
            raise ParameterError(f"s = 0^n needs an injective table, so m >= n (n={n}, m={m})")
        n_cosets = 1 << n
        coset = xs
    else:
        n_cosets = 1 << (n - 1)
        # coset representative: the member with the leading bit of s cleared
        lead = sv.bit_length() - 1
        rep = np.where((xs >> lead) & 1, xs ^ sv, xs)
        # rank representatives densely: drop the leading bit of s
        low = rep & ((1 << lead) - 1)
        coset = ((rep >> (lead + 1)) << lead) | low
    values = rng.choice(1 << m, size=n_cosets, replace=False).astype(np.int64)
    return SimonFunction(n, m, s, values[coset])


def verify_promise(f: SimonFunction) -> bool:
    """True iff ``f(x) == f(y)`` exactly when ``x ^ y`` is ``0`` or ``s``.

    Equivalent to the all-pairs check: every coset is constant and no value is
    shared by two cosets.
    """
    if f.n > MAX_N:
        raise ParameterError(f"verify_promise supports n <= {MAX_N}")
    table = np.asarray(f.table)
    xs = np.arange(1 << f.n, dtype=np.int64)
    if not np.array_equal(table, table[xs ^ f.s.value]):
        return False
    expected = 1 << f.n if f.s.is_zero() else 1 << (f.n - 1)
    return len(np.unique(table)) == expected


@dataclass(frozen=True, eq=False)
class SubfunctionFamily:
    """The ``2^t`` restrictions ``f_w(u) = f(u w)`` of one function."""

    f: SimonFunction
    t: int

    def __post_init__(self):
        if not 1 <= self.t < self.f.n:
            raise ParameterError(f"t must satisfy 1 <= t < n (n={self.f.n}, t={self.t})")

    @property
    def n(self) -> int:
        return self.f.n

    @property
    def m(self) -> int:
        return self.f.m

    @property
    def k(self) -> int:
        """Width of each subfunction's input, ``n - t``."""
        return self.f.n - self.t

    def __len__(self) -> int:
        return 1 << self.t

    def value(self, w: int, u: int) -> int:
        return int(self.f.table[(u << self.t) | w])

    def __call__(self, w: BitVec, u: BitVec) -> BitVec:
        if w.length != self.t or u.length != self.k:
            raise ValueError("subfunction index or input has the wrong width")
        return BitVec(self.value(w.value, u.value), self.m)

    def sub_table(self, w: int) -> np.ndarray:
        """Read-only view with ``sub_table(w)[u] == f_w(u)``."""
        return self.f.table[w :: 1 << self.t]


def split(f: SimonFunction, t: int) -> SubfunctionFamily:
    return SubfunctionFamily(f, t)


def classical_solve(f: SimonFunction) -> BitVec:
    """Ground truth by collision search over the full table."""
    seen: dict[int, int] = {}
    for x, y in enumerate(f.table.tolist()):
        if y in seen:
            return BitVec(seen[y] ^ x, f.n)
        seen[y] = x
    return BitVec.zeros(f.n)


def find_s2(fam: SubfunctionFamily, s1: BitVec) -> BitVec:
    """Recover the last ``t`` bits of ``s`` given its first ``n - t`` bits.

    Queries ``f(0^{n-t} w)`` for every ``w`` and ``f(s1 0^t)`` once, then
    picks ``v`` with matching values. When ``s1`` is zero, ``v = 0^t`` always
    matches trivially, so a nonzero match is preferred.
    """
    if s1.length != fam.k:
        raise ValueError(f"s1 must have length n-t = {fam.k}")
    base = [fam.value(w, 0) for w in range(len(fam))]
    target = fam.value(0, s1.value)
    order = range(len(fam))
    if s1.is_zero():
        order = list(range(1, len(fam))) + [0]
    for v in order:
        if base[v] == target:
            return BitVec(v, fam.t)
    raise PromiseViolation(f"no v with f(0^(n-t) v) = f({s1} 0^t)")


def write_table(f: SimonFunction, path) -> None:
    lines = [f"simon {f.n} {f.m} {f.s}"]
    lines += [format(int(y), f"0{f.m}b") for y in f.table]
    Path(path).write_text("\n".join(lines) + "\n")


def read_table(path) -> SimonFunction:
    lines = Path(path).read_text().split()
    if len(lines) < 4 or lines[0] != "simon":
        raise ParameterError(f"{path}: missing 'simon <n> <m> <s>' header")
    try:
        n, m = int(lines[1]), int(lines[2])
    except ValueError:
        raise ParameterError(f"{path}: malformed header") from None
    _check_params(n, m)
    s = BitVec.from_str(lines[3])
    body = lines[4:]
    if len(body) != 1 << n:
        raise ParameterError(f"{path}: expected {1 << n} table lines, found {len(body)}")
    if any(len(row) != m for row in body):
        raise ParameterError(f"{path}: every table line must have {m} bits")
    table = np.array([int(row, 2) for row in body], dtype=np.int64)
    return SimonFunction(n, m, s, table)
