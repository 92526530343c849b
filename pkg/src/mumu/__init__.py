"""Symbolic workbench for the lambda-mu and lambda-bar-mu-mu-tilde calculi."""

from . import lm, lmm
from .syntax import parse, parse_lm, parse_lmm, show
from .translate import circ, dag

__all__ = ["lm", "lmm", "parse", "parse_lm", "parse_lmm", "show", "dag", "circ"]
__version__ = "0.1.0"
