"""Sweeping-type Helmholtz preconditioner lab."""
from ._core import (
    default_config,
    reproduce_table,
    run_experiment,
    solve_field,
    verify_suite,
    __version__,
)

__all__ = [
    "default_config",
    "reproduce_table",
    "run_experiment",
    "solve_field",
    "verify_suite",
    "__version__",
]
