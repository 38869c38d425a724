"""Intersection subtyping with modus ponens: a checker and interpreter for a
calculus with disjoint intersection types and the merge operator, in which
subtyping performs implicit resolution."""

from .checker import check, elaborate, elaborate_program, infer
from .disjoint import alg_disjoint
from .oracle import SearchBudget, decl_subtype, enumerate_types, spec_disjoint
from .parser import ParseError, parse_expr, parse_program, parse_type
from .subtyping import alg_subtype, alg_subtype_trace, derive, is_subtype
from .syntax import BOOL, INT, TOP, And, Arrow, erase_type, pretty_print, toplike, type_eq, type_size
from .target import eval_term, observe, target_typecheck

__all__ = [
    "And", "Arrow", "BOOL", "INT", "TOP", "ParseError", "SearchBudget",
    "alg_disjoint", "alg_subtype", "alg_subtype_trace", "check", "decl_subtype",
    "derive", "elaborate", "elaborate_program", "enumerate_types", "erase_type",
    "eval_term", "infer", "is_subtype", "observe", "parse_expr", "parse_program",
    "parse_type", "pretty_print", "spec_disjoint", "target_typecheck", "toplike",
    "type_eq", "type_size",
]
