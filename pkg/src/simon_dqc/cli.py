"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or parameter error,
3 convergence failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import costmodel
from .algorithms import ConvergenceError, RunConfig, RunResult, run
from .engine import LayoutError
from .gf2 import BitVec
from .simon_fn import ParameterError, PromiseViolation, generate, read_table, write_table
from .verification import verify_instance

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_CONVERGENCE = 0, 1, 2, 3
ALG_NAMES = {"classic": "classic", "baseline": "baseline", "improved": "improved"}


@dataclass
class ReportDocument:
    """Everything a command reports, serialized as JSON with fixed key order."""

    command: str
    config: dict
    trials: list[dict] = field(default_factory=list)
    summary: dict = field(default_factory=dict)
    checks: list[dict] = field(default_factory=list)
    tables: dict = field(default_factory=dict)

    def to_text(self) -> str:
        data = {
            "command": self.command,
            "config": self.config,
            "trials": self.trials,
            "summary": self.summary,
            "checks": self.checks,
            "tables": self.tables,
        }
        return json.dumps(data, indent=2) + "\n"

    @classmethod
    def from_text(cls, text: str) -> ReportDocument:
        return cls(**json.loads(text))


def _trial_dict(index: int, result: RunResult) -> dict:
    out = {
        "trial": index,
        "planted_s": None if result.planted_s is None else str(result.planted_s),
        "recovered_s": str(result.recovered_s),
        "correct": result.correct,
        "converged": result.converged,
        "repetitions_used": result.repetitions_used,
        "samples": [str(z) for z in result.samples],
        "cost": result.cost.to_dict(),
    }
    if result.per_sample_distributions is not None:
        out["distributions"] = result.per_sample_distributions
    return out


def _default_seed() -> int:
    raw = os.environ.get("SIMON_DQC_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise ParameterError(f"SIMON_DQC_SEED must be an integer, got {raw!r}") from None


def _instance_args(args):
    """Resolve ``--table`` versus inline ``-n/-m/-s``; returns (function or None, n, m, s)."""
    if args.table:
        if args.n is not None or args.m is not None or args.s is not None:
            raise ParameterError("--table and inline -n/-m/-s are mutually exclusive")
        f = read_table(args.table)
        return f, f.n, f.m, f.s
    if args.n is None or args.m is None:
        raise ParameterError("give either --table or both -n and -m")
    s = BitVec.from_str(args.s) if args.s is not None else None
    return None, args.n, args.m, s


def _run_trial(job):
    config, f, index = job
    try:
        return index, run(config, f), None
    except ConvergenceError as exc:
        return index, exc.result, str(exc)


def _human_run(doc: ReportDocument) -> str:
    cfg = doc.config
    lines = [f"algorithm {cfg['algorithm']}  n={cfg['n']} m={cfg['m']} t={cfg['t']} seed={cfg['seed']}"]
    for tr in doc.trials:
        status = "ok" if tr["correct"] else ("FAILED" if tr["converged"] else "NOT CONVERGED")
        cost = tr["cost"]
        lines.append(
            f"  trial {tr['trial']}: planted {tr['planted_s']} recovered {tr['recovered_s']} "
            f"[{status}] reps {tr['repetitions_used']} per-run qubits moved {cost['transmissions_per_run']} "
            f"total {cost['total_transmissions']} classical queries {cost['classical_queries']}"
        )
    sm = doc.summary
    lines.append(f"successes {sm['successes']}/{sm['trials']}  mean repetitions {sm['mean_repetitions']:.3f}")
    return "\n".join(lines) + "\n"


def _emit(doc: ReportDocument, args, human: str) -> None:
    text = doc.to_text() if args.format == "machine" else human
    sys.stdout.write(text)
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(doc.to_text())


# --------------------------------------------------------------------------
# commands


def cmd_generate(args) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    f = generate(args.n, args.m, args.s, seed=seed)
    if args.output:
        write_table(f, args.output)
        print(f"wrote {args.output}: n={f.n} m={f.m} s={f.s}")
    else:
        lines = [f"simon {f.n} {f.m} {f.s}"] + [format(int(y), f"0{f.m}b") for y in f.table]
        sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_run(args) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    f, n, m, s = _instance_args(args)
    t = args.t if args.t is not None else 1
    if args.alg == "classic":
        t = 0
    elif not 1 <= t < n:
        raise ParameterError(f"t must satisfy 1 <= t < n (n={n}, t={t})")
    jobs = []
    for i in range(args.trials):
        trial_seed = seed if args.trials == 1 else [seed, i]
        cfg = RunConfig(
            n, m, t if t else 1, s, seed=trial_seed, max_repetitions=args.max_reps,
            algorithm=args.alg, keep_distributions=args.distributions,
        )
        jobs.append((cfg, f, i))
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            outcomes = list(pool.map(_run_trial, jobs))
    else:
        outcomes = [_run_trial(job) for job in jobs]
    trials = [_trial_dict(i, result) for i, result, _ in outcomes]
    failures = [err for _, _, err in outcomes if err]
    reps = [tr["repetitions_used"] for tr in trials]
    doc = ReportDocument(
        command="run",
        config={
            "algorithm": args.alg, "n": n, "m": m, "t": t, "s": None if s is None else str(s),
            "table": args.table, "seed": seed, "trials": args.trials,
            "max_repetitions": jobs[0][0].max_repetitions,
        },
        trials=trials,
        summary={
            "trials": len(trials),
            "successes": sum(1 for tr in trials if tr["correct"]),
            "mean_repetitions": float(np.mean(reps)),
            "convergence_failures": len(failures),
        },
    )
    _emit(doc, args, _human_run(doc))
    if failures:
        print("\n".join(failures), file=sys.stderr)
        return EXIT_CONVERGENCE
    return EXIT_OK


def _verify_sweep(args, seed):
    """(function, t) pairs to verify."""
    if args.table:
        f, *_ = _instance_args(args)
        ts = [args.t] if args.t is not None else list(range(1, f.n))
        return [(f, t) for t in ts]
    if args.n is not None:
        if args.m is None:
            raise ParameterError("-n needs -m")
        f = generate(args.n, args.m, args.s, seed=seed)
        ts = [args.t] if args.t is not None else list(range(1, f.n))
        return [(f, t) for t in ts]
    rng = np.random.default_rng(seed)
    out = []
    for n in args.sweep:
        for t in range(1, n):
            out.append((generate(n, n - 1, None, seed=rng), t))
    return out


def cmd_verify(args) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    checks = []
    for f, t in _verify_sweep(args, seed):
        checks += verify_instance(f, t)
    failed = [c for c in checks if not c.passed]
    doc = ReportDocument(
        command="verify",
        config={"table": args.table, "n": args.n, "m": args.m, "t": args.t, "seed": seed, "sweep": args.sweep},
        summary={"checks": len(checks), "failed": len(failed)},
        checks=[c.to_dict() for c in checks],
    )
    lines = [f"{'PASS' if c.passed else 'FAIL'}  {c.name}  {c.detail}".rstrip() for c in checks]
    lines.append(f"{len(checks) - len(failed)}/{len(checks)} checks passed")
    _emit(doc, args, "\n".join(lines) + "\n")
    return EXIT_VERIFY if failed else EXIT_OK


def cmd_compare(args) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    n, m, t = args.n, args.m, args.t
    if not 1 <= t < n:
        raise ParameterError(f"t must satisfy 1 <= t < n (n={n}, t={t})")
    f = generate(n, m, args.s, seed=seed)
    measured = {}
    for alg in ("classic", "baseline", "improved"):
        measured[alg] = run(RunConfig(n, m, t, seed=seed, algorithm=alg, max_repetitions=args.max_reps), f).cost
    table = costmodel.comparison_table(n, m, t, measured)
    doc = ReportDocument(
        command="compare",
        config={"n": n, "m": m, "t": t, "seed": seed, "s": str(f.s)},
        summary={"mismatches": len(table.mismatches)},
        tables=table.to_dict(),
    )
    _emit(doc, args, table.render())
    return EXIT_VERIFY if table.mismatches else EXIT_OK


# --------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="simon-dqc", description="Exact simulation of distributed Simon algorithms.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--seed", type=int, default=None, help="RNG seed (default: $SIMON_DQC_SEED or 0)")
        p.add_argument("--format", choices=["human", "machine"], default="human")
        p.add_argument("-o", "--output", default=None)

    def instance(p):
        p.add_argument("--table", default=None, help="function-table file")
        p.add_argument("-n", type=int, default=None)
        p.add_argument("-m", type=int, default=None)
        p.add_argument("-s", default=None, help="hidden string, e.g. 1011")
        p.add_argument("-t", type=int, default=None)

    g = sub.add_parser("generate", help="write a random Simon-promise table")
    g.add_argument("-n", type=int, required=True)
    g.add_argument("-m", type=int, required=True)
    g.add_argument("-s", default=None)
    g.add_argument("--seed", type=int, default=None)
    g.add_argument("-o", "--output", default=None)
    g.set_defaults(func=cmd_generate)

    r = sub.add_parser("run", help="run one algorithm end to end")
    r.add_argument("--alg", choices=sorted(ALG_NAMES), default="improved")
    instance(r)
    common(r)
    r.add_argument("--trials", type=int, default=1)
    r.add_argument("--max-reps", type=int, default=None)
    r.add_argument("--jobs", type=int, default=1)
    r.add_argument("--distributions", action="store_true", help="include exact distributions in the report")
    r.set_defaults(func=cmd_run)

    v = sub.add_parser("verify", help="exact-distribution checks")
    instance(v)
    common(v)
    v.add_argument("--sweep", type=int, nargs="+", default=[2, 3, 4], help="n values for the default sweep (m = n-1)")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("compare", help="qubit and communication tables")
    c.add_argument("-n", type=int, required=True)
    c.add_argument("-m", type=int, required=True)
    c.add_argument("-t", type=int, required=True)
    c.add_argument("-s", default=None)
    c.add_argument("--max-reps", type=int, default=None)
    common(c)
    c.set_defaults(func=cmd_compare)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "trials", 1) < 1 or getattr(args, "jobs", 1) < 1:
            raise ParameterError("--trials and --jobs must be positive")
        return args.func(args)
    except PromiseViolation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (ParameterError, LayoutError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
