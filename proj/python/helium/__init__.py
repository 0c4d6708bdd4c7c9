"""HEDSL compiler and mock-ciphertext runtime."""

from ._helium import (  # noqa: F401
    CompileError,
    compile,
    dump_heir,
    format,
    oracle,
    run,
    sweep,
    tumor_source,
)

__all__ = [
    "CompileError",
    "compile",
    "dump_heir",
    "format",
    "oracle",
    "run",
    "sweep",
    "tumor_source",
]
