"""Node plans, hop traces and closed-form qubit/communication counts.

A run of a distributed circuit moves qubits between computing nodes. The
drivers in :mod:`simon_dqc.algorithms` report every move to a :class:`Trace`;
:func:`count_transmissions` folds the trace into a :class:`CostReport` and
checks each run against the closed forms below.

Hops fall into three phases:

``chain``
    control qubits travelling source -> oracle ``0^t`` -> ... -> oracle ``1^t``.
``gather``
    oracle outputs (and, for the improved circuit, the index register) moving
    to the combiner node that applies V or U_Sort.
``uncompute``
    the return trip for the second oracle sweep. Reported as an extended
    counter only; the closed forms cover ``chain`` and ``gather``.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import asdict, dataclass, field

CLASSIC = "classic"
BASELINE = "baseline"
IMPROVED = "improved"

PROOF_PHASES = ("chain", "gather")


class AccountingError(AssertionError):
    """Instrumented hop counts disagree with the closed form."""


def _canon(algorithm: str) -> str:
    aliases = {
        "classic": CLASSIC,
        "baseline": BASELINE,
        "baseline_distributed": BASELINE,
        "improved": IMPROVED,
        "improved_distributed": IMPROVED,
    }
    try:
        return aliases[algorithm]
    except KeyError:
        raise ValueError(f"unknown algorithm {algorithm!r}") from None


# --------------------------------------------------------------------------
# closed forms


def active_qubits(algorithm: str, n: int, m: int, t: int = 0) -> int:
    """Control plus target qubits touched by one oracle call."""
    if _canon(algorithm) == CLASSIC:
        return n + m
    return n + m - t


def combiner_qubits(algorithm: str, m: int, t: int) -> int:
    algorithm = _canon(algorithm)
    if algorithm == BASELINE:
        return (1 << (t + 1)) * m
    if algorithm == IMPROVED:
        return ((1 << t) + 1) * m + t
    raise ValueError("the classic circuit has no combiner node")


def max_node_qubits(algorithm: str, n: int, m: int, t: int = 0) -> int:
    """Largest qubit count held by a single node of the plan."""
    return max(node.capacity for node in node_plan(algorithm, n, m, t).nodes)


def per_run_transmissions(algorithm: str, n: int, m: int, t: int) -> int:
    """Qubits moved in the chain and gather phases of one circuit run."""
    algorithm = _canon(algorithm)
    if algorithm == CLASSIC:
        return 0
    chain = (1 << t) * (n - t)
    gather = (1 << t) * m + (t if algorithm == IMPROVED else 0)
    return chain + gather


def uncompute_transmissions(algorithm: str, n: int, m: int, t: int) -> int:
    """Qubits moved back for the second oracle sweep and the final layer of H."""
    algorithm = _canon(algorithm)
    if algorithm == CLASSIC:
        return 0
    return (1 << t) * (n - t) + (1 << t) * m + (t if algorithm == IMPROVED else 0)


def asymptotic_transmissions(algorithm: str, n: int, m: int, t: int) -> int:
    """Value of the communication O-form with unit constant."""
    algorithm = _canon(algorithm)
    if algorithm == BASELINE:
        return (n - t) * ((1 << t) * (n + m - t))
    if algorithm == IMPROVED:
        return n * ((1 << t) * (n + m - t) + t)
    return 0


COMPLEXITY_FORMULAS = {
    BASELINE: ("2^(t+1)m", "O((n-t)(2^t(n+m-t)))"),
    IMPROVED: ("(2^t+1)m+t", "O(n(2^t(n+m-t)+t))"),
}
QUBIT_FORMULAS = {CLASSIC: "n+m", IMPROVED: "n+m-t"}


# --------------------------------------------------------------------------
# node plans


@dataclass(frozen=True)
class Node:
    id: int
    role: str  # source | index | oracle | combiner
    capacity: int
    w: int | None = None


@dataclass(frozen=True)
class NodePlan:
    """Computing nodes of one circuit variant.

    Numbering: node 1 is the source of the control register; the improved
    circuit puts the index register on node 2; then one node per oracle in
    ``w`` order; the combiner comes last.
    """

    algorithm: str
    n: int
    m: int
    t: int
    nodes: tuple[Node, ...]

    def _only(self, role: str) -> Node:
        (node,) = (x for x in self.nodes if x.role == role)
        return node

    @property
    def source(self) -> int:
        return self._only("source").id

    @property
    def index(self) -> int:
        return self._only("index").id

    @property
    def combiner(self) -> int:
        return self._only("combiner").id

    def oracle(self, w: int) -> int:
        return next(x.id for x in self.nodes if x.role == "oracle" and x.w == w)


def node_plan(algorithm: str, n: int, m: int, t: int = 0) -> NodePlan:
    algorithm = _canon(algorithm)
    if algorithm == CLASSIC:
        return NodePlan(CLASSIC, n, m, 0, (Node(1, "oracle", n + m, 0),))
    nodes = [Node(1, "source", n - t)]
    if algorithm == IMPROVED:
        nodes.append(Node(2, "index", t))
    first = len(nodes) + 1
    nodes += [Node(first + w, "oracle", n - t + m, w) for w in range(1 << t)]
    nodes.append(Node(first + (1 << t), "combiner", combiner_qubits(algorithm, m, t)))
    return NodePlan(algorithm, n, m, t, tuple(nodes))


# --------------------------------------------------------------------------
# traces


@dataclass(frozen=True)
class Hop:
    run: int
    phase: str
    src: int
    dst: int
    qubits: int
    what: str = ""


class Trace:
    """Append-only log of qubit moves, grouped into runs."""

    def __init__(self, plan: NodePlan):
        self.plan = plan
        self.hops: list[Hop] = []
        self.runs = 0

    def begin_run(self) -> None:
        self.runs += 1

    def hop(self, phase: str, src: int, dst: int, qubits: int, what: str = "") -> None:
        if self.runs == 0:
            raise RuntimeError("begin_run() must be called before recording hops")
        self.hops.append(Hop(self.runs, phase, src, dst, qubits, what))

    def per_run(self, phases=PROOF_PHASES) -> list[int]:
        totals = defaultdict(int)
        for h in self.hops:
            if h.phase in phases:
                totals[h.run] += h.qubits
        return [totals[r] for r in range(1, self.runs + 1)]


@dataclass
class CostReport:
    algorithm: str
    active_qubits_per_oracle: int
    max_node_qubits: int
    transmissions_per_run: int
    runs: int
    total_transmissions: int
    extended_per_run: int = 0
    extended_total: int = 0
    classical_queries: int = 0
    formula_values: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> CostReport:
        return cls(**data)


def _formulas(algorithm: str, n: int, m: int, t: int) -> dict:
    out = {
        "active_qubits": active_qubits(algorithm, n, m, t),
        "active_qubits_formula": QUBIT_FORMULAS.get(algorithm, QUBIT_FORMULAS[IMPROVED]),
    }
    if algorithm != CLASSIC:
        node_formula, comm_formula = COMPLEXITY_FORMULAS[algorithm]
        out.update(
            max_node_qubits=combiner_qubits(algorithm, m, t),
            max_node_qubits_formula=node_formula,
            per_run_transmissions=per_run_transmissions(algorithm, n, m, t),
            communication=asymptotic_transmissions(algorithm, n, m, t),
            communication_formula=comm_formula,
        )
    return out


def count_transmissions(trace: Trace, classical_queries: int = 0) -> CostReport:
    """Fold ``trace`` into a report; every run must match the closed form exactly."""
    plan = trace.plan
    algorithm, n, m, t = plan.algorithm, plan.n, plan.m, plan.t
    expected = per_run_transmissions(algorithm, n, m, t)
    counted = trace.per_run()
    bad = [(run, c) for run, c in enumerate(counted, 1) if c != expected]
    if bad:
        raise AccountingError(f"{algorithm}: per-run transmissions {bad} differ from closed form {expected}")
    extended_expected = expected + uncompute_transmissions(algorithm, n, m, t)
    extended = trace.per_run(PROOF_PHASES + ("uncompute",))
    if any(c != extended_expected for c in extended):
        raise AccountingError(f"{algorithm}: extended per-run transmissions {extended} differ from {extended_expected}")
    return CostReport(
        algorithm=algorithm,
        active_qubits_per_oracle=active_qubits(algorithm, n, m, t),
        max_node_qubits=max(node.capacity for node in plan.nodes),
        transmissions_per_run=expected,
        runs=trace.runs,
        total_transmissions=sum(counted),
        extended_per_run=extended_expected,
        extended_total=sum(extended),
        classical_queries=classical_queries,
        formula_values=_formulas(algorithm, n, m, t),
    )


# --------------------------------------------------------------------------
# comparison tables


@dataclass
class ComparisonTable:
    n: int
    m: int
    t: int
    qubit_rows: list[dict]
    distributed_rows: list[dict]
    mismatches: list[str]

    def to_dict(self) -> dict:
        return asdict(self)

    def render(self) -> str:
        lines = [f"n={self.n} m={self.m} t={self.t}", "", "Active qubits per oracle"]
        for row in self.qubit_rows:
            lines.append(f"  {row['algorithm']:<10} formula {row['formula']:<8} = {row['formula_value']:<4} measured {row['measured']}")
        c, i = (row["formula_value"] for row in self.qubit_rows)
        lines.append(f"  classic / improved: {c} / {i}")
        lines += ["", "Maximum qubits per node and communication"]
        for row in self.distributed_rows:
            lines.append(
                f"  {row['algorithm']:<10} max-node {row['max_node_formula']:<11} = {row['max_node_value']:<4} "
                f"measured {row['max_node_measured']:<4} per-run {row['per_run_measured']:<5} "
                f"runs {row['runs']:<3} total {row['total_measured']:<6} "
                f"{row['communication_formula']} = {row['communication_value']}"
            )
        b, i = (row["max_node_value"] for row in self.distributed_rows)
        lines.append(f"  baseline / improved max-node: {b} / {i}")
        if self.mismatches:
            lines += ["", "MISMATCHES:"] + [f"  {x}" for x in self.mismatches]
        return "\n".join(lines) + "\n"


def comparison_table(n: int, m: int, t: int, measured: dict[str, CostReport] | None = None) -> ComparisonTable:
    """Both tables with formula values beside the counters in ``measured``.

    ``measured`` maps ``classic``/``improved``/``baseline`` to the cost
    report of a driver run; any disagreement with a formula is collected in
    ``mismatches``.
    """
    measured = measured or {}
    mismatches = []
    qubit_rows = []
    for alg in (CLASSIC, IMPROVED):
        value = active_qubits(alg, n, m, t)
        got = measured[alg].active_qubits_per_oracle if alg in measured else None
        if got is not None and got != value:
            mismatches.append(f"{alg} active qubits: measured {got}, formula {value}")
        qubit_rows.append({"algorithm": alg, "formula": QUBIT_FORMULAS[alg], "formula_value": value, "measured": got})
    distributed_rows = []
    for alg in (BASELINE, IMPROVED):
        node_formula, comm_formula = COMPLEXITY_FORMULAS[alg]
        value = combiner_qubits(alg, m, t)
        rep = measured.get(alg)
        row = {
            "algorithm": alg,
            "max_node_formula": node_formula,
            "max_node_value": value,
            "max_node_measured": rep.max_node_qubits if rep else None,
            "per_run_formula": per_run_transmissions(alg, n, m, t),
            "per_run_measured": rep.transmissions_per_run if rep else None,
            "runs": rep.runs if rep else None,
            "total_measured": rep.total_transmissions if rep else None,
            "communication_formula": comm_formula,
            "communication_value": asymptotic_transmissions(alg, n, m, t),
        }
        if rep:
            if rep.max_node_qubits != value:
                mismatches.append(f"{alg} max node qubits: measured {rep.max_node_qubits}, formula {value}")
            if rep.transmissions_per_run != row["per_run_formula"]:
                mismatches.append(f"{alg} per-run transmissions: measured {rep.transmissions_per_run}, formula {row['per_run_formula']}")
            if rep.total_transmissions != rep.transmissions_per_run * rep.runs:
                mismatches.append(f"{alg} total transmissions {rep.total_transmissions} != per-run x runs")
        distributed_rows.append(row)
    return ComparisonTable(n, m, t, qubit_rows, distributed_rows, mismatches)
