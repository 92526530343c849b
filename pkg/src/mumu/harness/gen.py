"""Seeded random generators for subjects of both calculi."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .. import lm, lmm
from ..simple_types import typable

VAR_BINDERS = ("x", "y", "z", "w")
VAR_FREE = ("x", "y", "z")
COVAR_BINDERS = ("a", "b", "c", "d")
COVAR_FREE = ("a", "b", "c")
PURE_WEIGHT = 0.25
MAX_TRIES = 400


class GenerationExhausted(RuntimeError):
    """No subject satisfying the configuration was found within the retry bound."""


@dataclass(frozen=True)
class GenConfig:
    seed: int
    max_size: int = 12
    calc: str = "lm"
    sort: str = "term"
    fragment: str = "any"  # any, T or Q (lmm only)
    typable_only: bool = False


_MIN_SIZE = {
    ("lm", "term"): 1, ("lm", "command"): 2, ("lm", "context"): 1,
    ("lmm", "term"): 1, ("lmm", "command"): 3, ("lmm", "context"): 1,
}


class _Builder:
    def __init__(self, rng: random.Random, pure: bool, fragment: str = "any"):
        self.rng = rng
        self.pure = pure
        self.fragment = fragment

    def var(self, scope: list[str]) -> str:
        if scope and self.rng.random() < 0.75:
            return self.rng.choice(scope)
        return self.rng.choice(VAR_FREE)

    def covar(self, scope: list[str]) -> str:
        if scope and self.rng.random() < 0.75:
            return self.rng.choice(scope)
        return self.rng.choice(COVAR_FREE)

    def split(self, n: int, lo: int, rest_lo: int) -> int:
        """Size of a first child out of *n*, leaving at least *rest_lo* for the rest."""
        return self.rng.randint(lo, max(lo, n - rest_lo))

    # lambda-mu ------------------------------------------------------------

    def lm_term(self, n, vs, cs):
        options = ["var"]
        if n >= 2:
            options.append("lam")
        if n >= 3:
            options.append("app")
            if not self.pure:
                options.append("mu")
        if len(options) > 1:
            options.remove("var")
        kind = self.rng.choice(options)
        if kind == "var":
            return lm.Var(self.var(vs))
        if kind == "lam":
            x = self.rng.choice(VAR_BINDERS)
            return lm.Lam(x, self.lm_term(n - 1, vs + [x], cs))
        if kind == "app":
            k = self.split(n - 1, 1, 1)
            return lm.App(self.lm_term(k, vs, cs), self.lm_term(n - 1 - k, vs, cs))
        a = self.rng.choice(COVAR_BINDERS)
        return lm.Mu(a, self.lm_command(n - 1, vs, cs + [a]))

    def lm_command(self, n, vs, cs):
        return lm.Named(self.covar(cs), self.lm_term(max(1, n - 1), vs, cs))

    def lm_context(self, n, vs, cs):
        options = ["covar"]
        if n >= 2:
            options = ["appto"]
        if n >= 3:
            options.append("stack")
        kind = self.rng.choice(options)
        if kind == "covar":
            return lm.CoVar(self.covar(cs))
        if kind == "appto":
            return lm.AppTo(self.lm_term(n - 1, vs, cs), self.covar(cs))
        k = self.split(n - 1, 1, 1)
        return lm.ArgStack(self.lm_context(k, vs, cs), self.lm_term(n - 1 - k, vs, cs))

    # lambda-bar-mu-mu-tilde -------------------------------------------------

    def lmm_term(self, n, vs, cs):
        options = ["var"]
        if n >= 2:
            options = ["lam"]
        if n >= 4 and not self.pure:
            options.append("mu")
        kind = self.rng.choice(options)
        if kind == "var":
            return lmm.Var(self.var(vs))
        if kind == "lam":
            x = self.rng.choice(VAR_BINDERS)
            return lmm.Lam(x, self.lmm_term(n - 1, vs + [x], cs))
        a = self.rng.choice(COVAR_BINDERS)
        return lmm.Mu(a, self.lmm_command(n - 1, vs, cs + [a]))

    def lmm_value(self, n, vs, cs):
        if n >= 2 and self.rng.random() < 0.6:
            x = self.rng.choice(VAR_BINDERS)
            return lmm.Lam(x, self.lmm_term(n - 1, vs + [x], cs))
        return lmm.Var(self.var(vs))

    def lmm_command(self, n, vs, cs):
        n = max(n, 3)
        k = self.split(n - 1, 1, 1)
        return lmm.Cut(self.lmm_term(k, vs, cs), self.lmm_context(n - 1 - k, vs, cs))

    def lmm_context(self, n, vs, cs, stack: bool = False):
        options = ["covar"]
        if n >= 3:
            options = ["cons"]
        if n >= 4 and not stack:
            options.append("mutilde")
        kind = self.rng.choice(options)
        if kind == "covar":
            return lmm.CoVar(self.covar(cs))
        if kind == "cons":
            k = self.split(n - 1, 1, 1)
            head = (self.lmm_value if self.fragment == "Q" else self.lmm_term)(k, vs, cs)
            return lmm.Cons(head, self.lmm_context(n - 1 - k, vs, cs, stack=self.fragment == "T"))
        x = self.rng.choice(VAR_BINDERS)
        return lmm.MuTilde(x, self.lmm_command(n - 1, vs + [x], cs))


def gen(config: GenConfig):
    """A subject for *config*; the same config always yields the same subject."""
    key = (config.calc, config.sort)
    if key not in _MIN_SIZE:
        raise ValueError(f"unknown calculus/sort {key}")
    if config.fragment != "any" and config.calc != "lmm":
        raise ValueError("fragments apply to lambda-bar-mu-mu-tilde only")
    lo = _MIN_SIZE[key]
    if config.max_size < lo:
        raise ValueError(f"max_size must be at least {lo} for {config.calc} {config.sort}")
    rng = random.Random(f"{config.seed}/{config.calc}/{config.sort}/{config.fragment}/"
                        f"{config.max_size}/{config.typable_only}")
    for _ in range(MAX_TRIES):
        size = rng.randint(lo, config.max_size)
        pure = config.sort == "term" and rng.random() < PURE_WEIGHT
        b = _Builder(rng, pure, config.fragment)
        x = getattr(b, f"{config.calc}_{config.sort}")(size, [], [])
        if config.fragment == "T" and not lmm.in_T(x):
            continue
        if config.fragment == "Q" and not lmm.in_Q(x):
            continue
        if config.typable_only and not typable(x):
            continue
        return x
    raise GenerationExhausted(f"no subject for {config} after {MAX_TRIES} tries")


def gen_many(count: int, seed: int, **kw) -> list:
    """*count* subjects from consecutive derived seeds."""
    return [gen(GenConfig(seed=seed * 100003 + i, **kw)) for i in range(count)]
