"""Concrete syntax: .msl documents, algebra expressions and multi-language formulas."""

from ..algebra import render
from .compiler import compile_logic_formula
from .parser import (
    SpecDocument,
    parse_expression,
    parse_literals,
    parse_spec,
    parse_structure,
)

__all__ = [
    "SpecDocument",
    "compile_logic_formula",
    "parse_expression",
    "parse_literals",
    "parse_spec",
    "parse_structure",
    "render",
]
