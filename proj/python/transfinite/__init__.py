"""Transfinite register and Turing machines with exact ordinal time."""

from ._core import (
    DialectMismatch,
    Ordinal,
    OrdinalParseError,
    Program,
    ProgramError,
    census,
    enumerate_program,
    pair,
    run,
    sample,
    sub_left,
    unpair,
)

omega = Ordinal.omega()

__all__ = [
    "DialectMismatch",
    "Ordinal",
    "OrdinalParseError",
    "Program",
    "ProgramError",
    "census",
    "enumerate_program",
    "omega",
    "pair",
    "run",
    "sample",
    "sub_left",
    "unpair",
]
