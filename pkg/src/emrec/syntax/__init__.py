"""Lexer, parser, type resolver and pretty-printer for the JX language."""

from .nodes import *  # noqa: F401,F403
from .parser import ParseError, parse
from .printer import format_expr, format_method, pretty_print
from .resolve import ResolveError, resolve_types
from .tokens import LexError, Token, tokenize


def load(text: str) -> SourceUnit:  # noqa: F405
    """Parse and resolve in one step."""
    return resolve_types(parse(text))
