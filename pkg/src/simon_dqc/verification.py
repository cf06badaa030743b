"""Exact-distribution checks on one instance, shared by the CLI and tests."""

from __future__ import annotations

from dataclasses import asdict, dataclass

from .algorithms import (
    BASELINE_MEASURED,
    CLASSIC_MEASURED,
    IMPROVED_MEASURED,
    baseline_circuit,
    classic_circuit,
    improved_circuit,
)
from .engine import distribution, value_name
from .gf2 import BitVec
from .simon_fn import SimonFunction, split, verify_promise

PROB_ZERO_ATOL = 1e-12
PROB_ATOL = 1e-10


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""

    def to_dict(self) -> dict:
        return asdict(self)


def _orthogonal(s: BitVec, z: str) -> bool:
    return s.dot(BitVec.from_str(z)) == 0


def _support_check(name, dist, s: BitVec) -> Check:
    leaked = {z: p for z, p in dist.items() if not _orthogonal(s, z) and p > PROB_ZERO_ATOL}
    if leaked:
        return Check(name, False, f"mass outside s-perp: {dict(list(leaked.items())[:4])}")
    return Check(name, True)


def _uniform_check(name, dist, s: BitVec) -> Check:
    n = s.length
    expected = 2.0 ** (1 - n) if not s.is_zero() else 2.0 ** (-n)
    bad = []
    for z in range(1 << n):
        zb = BitVec(z, n)
        if s.dot(zb) == 0:
            p = dist.get(str(zb), 0.0)
            if abs(p - expected) > PROB_ATOL:
                bad.append((str(zb), p))
    if bad:
        return Check(name, False, f"expected {expected} on s-perp, got {bad[:4]}")
    return Check(name, True, f"p = {expected}")


def _equal_check(name, a: dict, b: dict) -> Check:
    worst = max((abs(a.get(k, 0.0) - b.get(k, 0.0)) for k in a.keys() | b.keys()), default=0.0)
    return Check(name, worst <= PROB_ATOL, f"max |diff| = {worst:.3g}")


def verify_instance(f: SimonFunction, t: int, representation: str = "auto") -> list[Check]:
    """Every exact check for ``f`` split at ``t``; nothing is skipped."""
    tag = f"n={f.n} m={f.m} t={t} s={f.s}"
    fam = split(f, t)
    checks = [Check(f"promise [{tag}]", verify_promise(f))]

    final = improved_circuit(fam, representation)
    dist = distribution(final, IMPROVED_MEASURED)
    checks.append(_support_check(f"improved support in s-perp [{tag}]", dist, f.s))
    checks.append(_uniform_check(f"improved uniform on s-perp [{tag}]", dist, f.s))

    after_uncompute = improved_circuit(fam, representation, stop_after=5)
    blocks = [value_name(w) for w in range(1 << t)]
    work = distribution(after_uncompute, blocks)
    zero = "0" * ((1 << t) * f.m)
    ok = abs(work.get(zero, 0.0) - 1.0) <= PROB_ATOL
    checks.append(Check(f"work register disentangled [{tag}]", ok, f"P(value blocks = 0) = {work.get(zero, 0.0)}"))

    classic = distribution(classic_circuit(f, representation), CLASSIC_MEASURED)
    checks.append(_equal_check(f"improved equals classic [{tag}]", dist, classic))

    s1 = f.s[: f.n - t]
    base = distribution(baseline_circuit(fam, representation), BASELINE_MEASURED)
    checks.append(_support_check(f"baseline support in s1-perp [{tag}]", base, s1))
    return checks
