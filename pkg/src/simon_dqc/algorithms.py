"""Drivers for classic Simon, the sorting-based distributed baseline, and the
improved distributed circuit, each wrapped in a sample-and-eliminate loop."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import costmodel
from .costmodel import BASELINE, CLASSIC, IMPROVED, CostReport, Trace
from .engine import (
    CONTROL,
    INDEX,
    QuantumState,
    apply_oracle,
    apply_suboracle,
    apply_usort,
    apply_V,
    baseline_layout,
    classic_layout,
    distribution,
    hadamard_layer,
    improved_layout,
    init,
    sample,
    value_name,
)
from .gf2 import BitVec, Gf2Basis
from .simon_fn import (
    ParameterError,
    PromiseViolation,
    SimonFunction,
    SubfunctionFamily,
    find_s2,
    generate,
    split,
)

ALGORITHMS = (CLASSIC, BASELINE, IMPROVED)


class ConvergenceError(RuntimeError):
    """The repetition budget ran out before the hidden string was determined."""

    def __init__(self, message: str, result: RunResult):
        super().__init__(message)
        self.result = result


@dataclass
class RunConfig:
    n: int
    m: int
    t: int = 1
    s: BitVec | None = None
    seed: int | None = None
    max_repetitions: int | None = None
    algorithm: str = IMPROVED
    representation: str = "auto"
    keep_distributions: bool = False

    def __post_init__(self):
        self.algorithm = costmodel._canon(self.algorithm)
        if isinstance(self.s, str):
            self.s = BitVec.from_str(self.s)
        if self.m < self.n - 1:
            raise ParameterError(f"m must satisfy m >= n-1 (n={self.n}, m={self.m})")
        if self.algorithm != CLASSIC and not 1 <= self.t < self.n:
            raise ParameterError(f"t must satisfy 1 <= t < n (n={self.n}, t={self.t})")
        if self.max_repetitions is None:
            self.max_repetitions = 10 * (self.n + 1)

    def seeds(self) -> tuple[np.random.SeedSequence, np.random.SeedSequence]:
        """Independent streams for instance generation and for sampling."""
        gen, samp = np.random.SeedSequence(self.seed).spawn(2)
        return gen, samp


@dataclass
class RunResult:
    algorithm: str
    recovered_s: BitVec
    samples: list[BitVec]
    repetitions_used: int
    cost: CostReport
    planted_s: BitVec | None = None
    per_sample_distributions: list[dict[str, float]] | None = None
    converged: bool = True

    @property
    def correct(self) -> bool | None:
        return None if self.planted_s is None else self.recovered_s == self.planted_s


# --------------------------------------------------------------------------
# circuits


def classic_circuit(f: SimonFunction, representation: str = "auto") -> QuantumState:
    """H on the input register, one query of ``f``, H again."""
    state = init(classic_layout(f.n, f.m), representation)
    state = hadamard_layer(state, [CONTROL])
    state = apply_oracle(state, f.table)
    return hadamard_layer(state, [CONTROL])


def improved_circuit(
    fam: SubfunctionFamily,
    representation: str = "auto",
    trace: Trace | None = None,
    stop_after: int = 6,
) -> QuantumState:
    """State of the improved distributed circuit after step ``stop_after`` (1-6).

    Steps: 1 init, 2 H on control and index, 3 forward sweep of the
    sub-oracles, 4 V, 5 backward sweep, 6 H on control and index.
    """
    n, m, t = fam.n, fam.m, fam.t
    k = 1 << t
    plan = trace.plan if trace else None
    if trace:
        trace.begin_run()
    state = init(improved_layout(n, m, t), representation)
    if stop_after >= 2:
        state = hadamard_layer(state, [CONTROL, INDEX])
    if stop_after >= 3:
        prev = plan.source if plan else None
        for w in range(k):
            if trace:
                trace.hop("chain", prev, plan.oracle(w), n - t, "control")
                prev = plan.oracle(w)
            state = apply_suboracle(state, fam, w, value_name(w))
    if stop_after >= 4:
        if trace:
            trace.hop("gather", plan.index, plan.combiner, t, "index")
            for w in range(k):
                trace.hop("gather", plan.oracle(w), plan.combiner, m, f"value{w}")
        state = apply_V(state)
    if stop_after >= 5:
        if trace:
            for w in range(k):
                trace.hop("uncompute", plan.combiner, plan.oracle(w), m, f"value{w}")
        for w in reversed(range(k)):
            if trace and w < k - 1:
                trace.hop("uncompute", plan.oracle(w + 1), plan.oracle(w), n - t, "control")
            state = apply_suboracle(state, fam, w, value_name(w))
        if trace:
            trace.hop("uncompute", plan.oracle(0), plan.source, n - t, "control")
            trace.hop("uncompute", plan.combiner, plan.index, t, "index")
    if stop_after >= 6:
        state = hadamard_layer(state, [CONTROL, INDEX])
    return state


def baseline_circuit(
    fam: SubfunctionFamily,
    representation: str = "auto",
    trace: Trace | None = None,
    stop_after: int = 6,
) -> QuantumState:
    """State of the sorting-based circuit after step ``stop_after`` (1-6)."""
    n, m, t = fam.n, fam.m, fam.t
    k = 1 << t
    plan = trace.plan if trace else None
    if trace:
        trace.begin_run()
    state = init(baseline_layout(n, m, t), representation)
    if stop_after >= 2:
        state = hadamard_layer(state, [CONTROL])
    if stop_after >= 3:
        prev = plan.source if plan else None
        for w in range(k):
            if trace:
                trace.hop("chain", prev, plan.oracle(w), n - t, "control")
                prev = plan.oracle(w)
            state = apply_suboracle(state, fam, w, value_name(w))
    if stop_after >= 4:
        if trace:
            for w in range(k):
                trace.hop("gather", plan.oracle(w), plan.combiner, m, f"value{w}")
        state = apply_usort(state)
    if stop_after >= 5:
        if trace:
            for w in range(k):
                trace.hop("uncompute", plan.combiner, plan.oracle(w), m, f"value{w}")
        for w in reversed(range(k)):
            if trace and w < k - 1:
                trace.hop("uncompute", plan.oracle(w + 1), plan.oracle(w), n - t, "control")
            state = apply_suboracle(state, fam, w, value_name(w))
        if trace:
            trace.hop("uncompute", plan.oracle(0), plan.source, n - t, "control")
    if stop_after >= 6:
        state = hadamard_layer(state, [CONTROL])
    return state


IMPROVED_MEASURED = [CONTROL, INDEX]
BASELINE_MEASURED = [CONTROL]
CLASSIC_MEASURED = [CONTROL]


def run_classic_once(f: SimonFunction, seed=None, representation: str = "auto") -> BitVec:
    return sample(classic_circuit(f, representation), CLASSIC_MEASURED, seed)


def run_improved_once(fam: SubfunctionFamily, seed=None, representation: str = "auto", trace: Trace | None = None) -> BitVec:
    """One pass of the improved circuit; the ``n``-bit measurement of control and index."""
    return sample(improved_circuit(fam, representation, trace), IMPROVED_MEASURED, seed)


def run_baseline_once(fam: SubfunctionFamily, seed=None, representation: str = "auto", trace: Trace | None = None) -> BitVec:
    """One pass of the sorting-based circuit; an ``(n-t)``-bit sample orthogonal to ``s1``."""
    return sample(baseline_circuit(fam, representation, trace), BASELINE_MEASURED, seed)


# --------------------------------------------------------------------------
# drivers


def _instance(config: RunConfig, f: SimonFunction | None) -> SimonFunction:
    if f is not None:
        if (f.n, f.m) != (config.n, config.m):
            raise ParameterError(f"function is n={f.n}, m={f.m}; config says n={config.n}, m={config.m}")
        return f
    gen_seed, _ = config.seeds()
    return generate(config.n, config.m, config.s, seed=gen_seed)


def _eliminate(width, draw, check, max_repetitions):
    """Sample until rank ``width`` or a verified rank ``width - 1`` candidate.

    ``draw()`` returns one sample; ``check(c)`` returns the answer implied by
    the nonzero candidate ``c`` or None when ``c`` is refuted (the hidden
    string is then zero, and sampling continues to full rank). Always draws at
    least once. Returns ``(answer, samples, converged)`` where ``answer`` is
    None when full rank was reached.
    """
    basis = Gf2Basis(width)
    samples = []
    refuted = None
    while len(samples) < max_repetitions:
        z = draw()
        samples.append(z)
        basis.insert(z)
        if basis.rank == width:
            return None, samples, True
        if basis.rank == width - 1:
            c = basis.nonzero_solution()
            if c != refuted:
                answer = check(c)
                if answer is not None:
                    return answer, samples, True
                refuted = c
    return None, samples, False


def _result(config, f, recovered, samples, converged, trace, queries, dists):
    if trace is None:
        cost = CostReport(
            algorithm=CLASSIC,
            active_qubits_per_oracle=costmodel.active_qubits(CLASSIC, f.n, f.m),
            max_node_qubits=costmodel.max_node_qubits(CLASSIC, f.n, f.m),
            transmissions_per_run=0,
            runs=len(samples),
            total_transmissions=0,
            classical_queries=queries,
            formula_values=costmodel._formulas(CLASSIC, f.n, f.m, 0),
        )
    else:
        cost = costmodel.count_transmissions(trace, classical_queries=queries)
    result = RunResult(
        algorithm=config.algorithm,
        recovered_s=recovered,
        samples=samples,
        repetitions_used=len(samples),
        cost=cost,
        planted_s=f.s,
        per_sample_distributions=dists if config.keep_distributions else None,
        converged=converged,
    )
    if not converged:
        raise ConvergenceError(f"{config.algorithm}: no answer after {len(samples)} repetitions", result)
    return result


def run_improved(config: RunConfig, f: SimonFunction | None = None) -> RunResult:
    """Repeat the improved circuit, eliminating until ``s`` is determined.

    A rank ``n-1`` candidate is confirmed with two classical queries
    (``f(0^n)`` against ``f(c)``), which separates it from the ``s = 0^n``
    case where sampling continues to rank ``n``.
    """
    f = _instance(config, f)
    fam = split(f, config.t)
    n = f.n
    plan = costmodel.node_plan(IMPROVED, n, f.m, config.t)
    trace = Trace(plan)
    _, samp_seed = config.seeds()
    rng = np.random.default_rng(samp_seed)
    dists = []
    queries = 0

    def draw():
        state = improved_circuit(fam, config.representation, trace)
        if config.keep_distributions:
            dists.append(distribution(state, IMPROVED_MEASURED))
        return sample(state, IMPROVED_MEASURED, rng)

    def check(c):
        nonlocal queries
        queries += 2
        return c if fam.value(0, 0) == fam.value(c[n - config.t :].value, c[: n - config.t].value) else None

    answer, samples, converged = _eliminate(n, draw, check, config.max_repetitions)
    recovered = answer if answer is not None else BitVec.zeros(n)
    return _result(config, f, recovered, samples, converged, trace, queries, dists)


def run_baseline(config: RunConfig, f: SimonFunction | None = None) -> RunResult:
    """Sorting-based circuit for ``s1``, then the classical search for ``s2``.

    The classical step makes ``2^t + 1`` queries each time it is invoked; it
    also serves to confirm a rank ``n-t-1`` candidate for ``s1``.
    """
    f = _instance(config, f)
    t = config.t
    fam = split(f, t)
    k = f.n - t
    plan = costmodel.node_plan(BASELINE, f.n, f.m, t)
    trace = Trace(plan)
    _, samp_seed = config.seeds()
    rng = np.random.default_rng(samp_seed)
    dists = []
    queries = 0

    def draw():
        state = baseline_circuit(fam, config.representation, trace)
        if config.keep_distributions:
            dists.append(distribution(state, BASELINE_MEASURED))
        return sample(state, BASELINE_MEASURED, rng)

    def search(s1):
        nonlocal queries
        queries += (1 << t) + 1
        try:
            return s1 + find_s2(fam, s1)
        except PromiseViolation:
            return None

    answer, samples, converged = _eliminate(k, draw, search, config.max_repetitions)
    if converged and answer is None:
        answer = search(BitVec.zeros(k))
        if answer is None:
            raise PromiseViolation("no s2 matches s1 = 0^(n-t)")
    recovered = answer if answer is not None else BitVec.zeros(f.n)
    return _result(config, f, recovered, samples, converged, trace, queries, dists)


def run_classic(config: RunConfig, f: SimonFunction | None = None) -> RunResult:
    f = _instance(config, f)
    n = f.n
    _, samp_seed = config.seeds()
    rng = np.random.default_rng(samp_seed)
    dists = []
    queries = 0

    def draw():
        state = classic_circuit(f, config.representation)
        if config.keep_distributions:
            dists.append(distribution(state, CLASSIC_MEASURED))
        return sample(state, CLASSIC_MEASURED, rng)

    def check(c):
        nonlocal queries
        queries += 2
        return c if f.value(0) == f.value(c.value) else None

    answer, samples, converged = _eliminate(n, draw, check, config.max_repetitions)
    recovered = answer if answer is not None else BitVec.zeros(n)
    return _result(config, f, recovered, samples, converged, None, queries, dists)


DRIVERS = {CLASSIC: run_classic, BASELINE: run_baseline, IMPROVED: run_improved}


def run(config: RunConfig, f: SimonFunction | None = None) -> RunResult:
    return DRIVERS[config.algorithm](config, f)
