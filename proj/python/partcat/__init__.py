"""Colored set partition categories, tensor realizations, and Weingarten calculus."""

from partcat._core import (
    Partition,
    ParseError,
    PartcatError,
    compose,
    format,
    involute,
    parse,
    signature,
    tensor,
)

__all__ = [
    "Partition",
    "ParseError",
    "PartcatError",
    "compose",
    "format",
    "involute",
    "parse",
    "signature",
    "tensor",
]

__version__ = "0.1.0"
