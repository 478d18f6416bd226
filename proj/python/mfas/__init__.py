"""Precedence-constrained minimum feedback arc set with hemimetric weights."""

from ._mfas import (
    ENGINE,
    Instance,
    MfasError,
    bound,
    check,
    cover,
    exact,
    exact_cover,
    repair,
    run_cli,
    solve,
)

__all__ = [
    "ENGINE",
    "Instance",
    "MfasError",
    "bound",
    "check",
    "cover",
    "exact",
    "exact_cover",
    "repair",
    "run_cli",
    "solve",
]
__version__ = "0.1.0"
