"""Exact quantum-state engine for the Simon circuits."""

from .layout import (
    CONTROL,
    INDEX,
    SORT_TARGET,
    TARGET,
    LayoutError,
    RegisterLayout,
    baseline_layout,
    classic_layout,
    improved_layout,
    value_name,
)
from .state import *  # noqa: F401,F403
from .state import __all__ as _state_all

__all__ = [
    "CONTROL",
    "INDEX",
    "SORT_TARGET",
    "TARGET",
    "RegisterLayout",
    "baseline_layout",
    "classic_layout",
    "improved_layout",
    "value_name",
    *_state_all,
]
