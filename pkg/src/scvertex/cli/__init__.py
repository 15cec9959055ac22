"""Script language, evaluator and command-line interface."""
from .evaluator import EngineError, Evaluator, Result, ScriptError, evaluate, run_text
from .parser import ParseError, parse, parse_expr, parse_lambda_value, unparse

__all__ = [
    "EngineError",
    "Evaluator",
    "ParseError",
    "Result",
    "ScriptError",
    "evaluate",
    "parse",
    "parse_expr",
    "parse_lambda_value",
    "run_text",
    "unparse",
]
