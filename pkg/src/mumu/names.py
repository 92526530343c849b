"""Name management shared by both calculi.

Variables and covariables are plain strings living in separate fields of the
syntax trees, so the two namespaces never collide.  Covariables named
``k<digits>`` are reserved for the phantom covariable introduced by the
backward translation of a tilde-mu context.
"""

from __future__ import annotations

import re
from typing import Iterable

_TRAILING_DIGITS = re.compile(r"\d+$")
_RESERVED = re.compile(r"k\d+$")


def is_reserved(covar: str) -> bool:
    return _RESERVED.match(covar) is not None


def stem(name: str) -> str:
    base = _TRAILING_DIGITS.sub("", name)
    return base or "v"


def fresh_name(base: str, avoid: Iterable[str] | set[str] | frozenset[str]) -> str:
    """Smallest ``stem(base) + i`` not in *avoid* (i >= 1)."""
    avoid = avoid if isinstance(avoid, (set, frozenset)) else set(avoid)
    root = stem(base)
    i = 1
    while f"{root}{i}" in avoid:
        i += 1
    return f"{root}{i}"


def fresh_covar(base: str, avoid) -> str:
    # never mint a name inside the reserved namespace
    if stem(base) == "k":
        base = "c"
    return fresh_name(base, avoid)


class Fresh:
    """Explicit fresh-name supply threaded through a translation.

    Every issued name is avoided afterwards, so names stay distinct across the
    whole enclosing subject.
    """

    def __init__(self, avoid_vars=(), avoid_covars=()):
        self.vars = set(avoid_vars)
        self.covars = set(avoid_covars)
        self._reserved = 0

    def var(self, base: str = "y") -> str:
        name = fresh_name(base, self.vars)
        self.vars.add(name)
        return name

    def covar(self, base: str = "b") -> str:
        name = fresh_covar(base, self.covars)
        self.covars.add(name)
        return name

    def reserved(self) -> str:
        while f"k{self._reserved}" in self.covars:
            self._reserved += 1
        name = f"k{self._reserved}"
        self.covars.add(name)
        return name
