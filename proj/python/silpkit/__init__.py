"""Python bindings for the silp toolkit: SILP instances go in and out as text."""

from ._silpkit import (
    SilpError,
    check,
    compose,
    has_k_clique,
    kernelize,
    normalize,
    run_cli,
    solve,
)

__all__ = [
    "SilpError",
    "check",
    "compose",
    "has_k_clique",
    "kernelize",
    "normalize",
    "run_cli",
    "solve",
]
