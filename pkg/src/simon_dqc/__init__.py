"""Exact simulation of Simon's problem in the distributed setting.

Submodules: :mod:`.gf2` (bit strings, elimination), :mod:`.simon_fn`
(promise functions), :mod:`.engine` (state vectors and operators),
:mod:`.algorithms` (drivers), :mod:`.costmodel` (qubit and communication
counts), :mod:`.cli`.
"""

from .algorithms import ConvergenceError, RunConfig, RunResult, run, run_baseline, run_classic, run_improved
from .gf2 import BitVec, Gf2Basis, Indeterminate, solve_hidden
from .simon_fn import SimonFunction, classical_solve, generate, split, verify_promise

__version__ = "0.1.0"

__all__ = [
    "BitVec",
    "ConvergenceError",
    "Gf2Basis",
    "Indeterminate",
    "RunConfig",
    "RunResult",
    "SimonFunction",
    "classical_solve",
    "generate",
    "run",
    "run_baseline",
    "run_classic",
    "run_improved",
    "solve_hidden",
    "split",
    "verify_promise",
]
