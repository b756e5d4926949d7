"""Runtime monitoring of data minimality for programs in a small imperative language."""

from ._core import (
    Characterization,
    ConfigError,
    ContractError,
    DomainError,
    EvalError,
    FormatError,
    HypermonError,
    InconsistentTrace,
    Monitor,
    Oracle,
    ParseError,
    Program,
    SolverError,
    classify,
    gen_traces,
    is_ddm,
    load_program,
    parse_program,
    position_kernel,
    symexec,
)

__all__ = [
    "Characterization",
    "ConfigError",
    "ContractError",
    "DomainError",
    "EvalError",
    "FormatError",
    "HypermonError",
    "InconsistentTrace",
    "Monitor",
    "Oracle",
    "ParseError",
    "Program",
    "SolverError",
    "classify",
    "gen_traces",
    "is_ddm",
    "load_program",
    "parse_program",
    "position_kernel",
    "symexec",
]
