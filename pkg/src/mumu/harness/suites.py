"""Seeded batches of checks, shared by the command line and the acceptance tests."""

from __future__ import annotations

import random

from .. import lm, lmm
from ..simple_types import CutRuleError, cut_sequent
from .checks import (
    check_cut_rule,
    check_lemma2,
    check_lemma3,
    check_lemma4,
    check_lemma5,
    check_lemma6,
    check_nonconfluence,
    check_subject_reduction,
    check_subst_lemmas,
    check_thm1,
    check_thm2,
    check_thm4,
    check_thm5,
)
from .gen import GenConfig, gen
from .report import FALSIFIED, HOLDS, CheckReport

SUITES = ("thm1", "thm2", "thm4", "thm5", "lemma1", "lemma2", "lemma5", "lemma6", "subst", "types",
          "nonconfluence")
STRATEGY_SUITES = ("thm4", "thm5", "lemma2")
SIM_STRATEGIES = ("free", "cbn", "cbv")
FRAGMENT_OF = {"free": "any", "cbn": "T", "cbv": "Q"}
LM_SORTS = ("term", "command", "context")


def instance_seed(seed: int, i: int) -> int:
    return seed * 100003 + i


def _tag(report: CheckReport, label: str, seed: int) -> CheckReport:
    report.name = f"{label}[seed={seed}]"
    return report


def _free_or(names, default: str) -> str:
    return sorted(names)[0] if names else default


def _thm1(count, size, seed, strategy):
    for i in range(count):
        s = instance_seed(seed, i)
        t = gen(GenConfig(s, size, "lm", "command" if i % 4 == 3 else "term"))
        yield _tag(check_thm1(t), "thm1", s)


def _thm2(count, size, seed, strategy):
    for i in range(count):
        s = instance_seed(seed, i)
        t = gen(GenConfig(s, size, "lmm", LM_SORTS[i % 3]))
        yield _tag(check_thm2(t), "thm2", s)


def _thm4(count, size, seed, strategy):
    for st in [strategy] if strategy else SIM_STRATEGIES:
        for i in range(count):
            s = instance_seed(seed, i)
            t = gen(GenConfig(s, size, "lm", "command" if i % 2 else "term"))
            yield _tag(check_thm4(t, st), f"thm4-{st}", s)


def _thm5(count, size, seed, strategy):
    for st in [strategy] if strategy else SIM_STRATEGIES:
        for i in range(count):
            s = instance_seed(seed, i)
            t = gen(GenConfig(s, max(size, 3), "lmm", "command" if i % 2 else "term", FRAGMENT_OF[st]))
            yield _tag(check_thm5(t, st), f"thm5-{st}", s)


def cut_pair(seed: int, size: int):
    """A typable term and context whose cut types unify."""
    for j in range(200):
        s = f"{seed}/{j}"
        t = gen(GenConfig(hash_seed(s, 0), size, "lm", "term", typable_only=True))
        e = gen(GenConfig(hash_seed(s, 1), size, "lm", "context", typable_only=True))
        try:
            cut_sequent(t, e)
        except CutRuleError:
            continue
        return t, e
    raise RuntimeError(f"no cut pair for seed {seed}")


def hash_seed(text: str, salt: int) -> int:
    return random.Random(f"{text}/{salt}").getrandbits(48)


def _lemma1(count, size, seed, strategy):
    for i in range(count):
        s = instance_seed(seed, i)
        t, e = cut_pair(s, max(1, size // 2))
        yield _tag(check_cut_rule(t, e), "lemma1", s)


def _args_are_values(e) -> bool:
    while isinstance(e, lm.ArgStack):
        if not lm.is_value(e.arg):
            return False
        e = e.ctx
    return True


def lemma2_instance(seed: int, size: int, values_only: bool = False):
    rng = random.Random(f"lemma2/{seed}")
    for j in range(400):
        e = gen(GenConfig(hash_seed(f"{seed}/{j}", 0), max(1, size // 2), "lm", "context"))
        if values_only and not _args_are_values(e):
            continue
        c = gen(GenConfig(hash_seed(f"{seed}/{j}", 1), max(2, size // 2), "lm", "command"))
        alpha = _free_or(lm.free(c)[1], rng.choice("abcd"))
        return e, alpha, c
    raise RuntimeError(f"no lemma2 instance for seed {seed}")


# the covariable also occurs under a nested mu, which rules out the theta shortcut
CBN_COUNTEREXAMPLE = (
    lm.AppTo(lm.Var("y"), "b"),
    "a",
    lm.Named("a", lm.App(lm.Var("x"), lm.Mu("d", lm.Named("a", lm.Var("z"))))),
)


def lemma2_cbn_counterexample(depth: int = 10) -> CheckReport:
    """The call-by-name failure on an application context, as an expected failure."""
    inner = check_lemma2(*CBN_COUNTEREXAMPLE, strategy="cbn", depth=depth)
    status = HOLDS if inner.status == FALSIFIED else FALSIFIED
    return CheckReport("lemma2-cbn-fails", status, inner.subject, [], inner.bound_used,
                       {"inner_status": inner.status})


def _lemma2(count, size, seed, strategy):
    if strategy in (None, "free"):
        for i in range(count):
            s = instance_seed(seed, i)
            e, a, c = lemma2_instance(s, size)
            yield _tag(check_lemma2(e, a, c, "free"), "lemma2-free", s)
    if strategy in (None, "cbn"):
        yield lemma2_cbn_counterexample()
    if strategy in (None, "cbv"):
        for i in range(max(1, count // 3) if strategy is None else count):
            s = instance_seed(seed, i)
            e, a, c = lemma2_instance(s, size, values_only=True)
            yield _tag(check_lemma2(e, a, c, "cbv"), "lemma2-cbv", s)


def _lemma5(count, size, seed, strategy):
    part = max(1, size // 3)
    for i in range(count):
        s = instance_seed(seed, i)
        ts = [gen(GenConfig(hash_seed(str(s), j), part, "lm", "term")) for j in range(i % 4 + 1)]
        e = gen(GenConfig(hash_seed(str(s), 9), part, "lmm", "context"))
        yield _tag(check_lemma5(ts, e), "lemma5", s)


def _lemma6(count, size, seed, strategy):
    for i in range(count):
        s = instance_seed(seed, i)
        e = gen(GenConfig(hash_seed(str(s), 0), max(1, size // 2), "lm", "context"))
        t = gen(GenConfig(hash_seed(str(s), 1), max(1, size // 2), "lm", "term"))
        yield _tag(check_lemma6(e, t), "lemma6", s)


def subst_instance(kind: int, seed: int, size: int) -> tuple:
    rng = random.Random(f"subst/{kind}/{seed}")
    half = max(3, size // 2)
    if kind in (7, 8, 9, 10):
        t = gen(GenConfig(hash_seed(str(seed), 0), half, "lm", rng.choice(("term", "command"))))
        fv, fcv = lm.free(t)
        if kind == 7:
            return t, _free_or(fv, "x"), gen(GenConfig(hash_seed(str(seed), 1), half, "lm", "term"))
        alpha = _free_or(fcv, "a")
        if kind == 10:
            return t, alpha, rng.choice("abcd")
        return t, alpha, gen(GenConfig(hash_seed(str(seed), 1), half, "lm", "term"))
    t = gen(GenConfig(hash_seed(str(seed), 0), half, "lmm", rng.choice(LM_SORTS)))
    fv, fcv = lmm.free(t)
    if kind == 11:
        return t, _free_or(fv, "x"), gen(GenConfig(hash_seed(str(seed), 1), half, "lmm", "term"))
    if kind == 12:
        return t, _free_or(fcv, "a"), gen(GenConfig(hash_seed(str(seed), 1), half, "lmm", "context"))
    raise ValueError(f"no substitution lemma {kind}")


def _subst(count, size, seed, strategy, kinds=(7, 8, 9, 10, 11, 12)):
    for kind in kinds:
        for i in range(count):
            s = instance_seed(seed, i)
            yield _tag(check_subst_lemmas(kind, subst_instance(kind, s, size)), f"lemma{kind}", s)


def _types(count, size, seed, strategy):
    for i in range(count):
        s = instance_seed(seed, i)
        t = gen(GenConfig(s, size, "lm", LM_SORTS[i % 3], typable_only=True))
        yield _tag(check_lemma3(t), "lemma3", s)
    for i in range(count):
        s = instance_seed(seed, i)
        t = gen(GenConfig(s, size, "lmm", LM_SORTS[i % 3], typable_only=True))
        yield _tag(check_lemma4(t), "lemma4", s)
    for calc in ("lm", "lmm"):
        for i in range(count):
            s = instance_seed(seed, i)
            t = gen(GenConfig(s, size, calc, LM_SORTS[i % 3], typable_only=True))
            yield _tag(check_subject_reduction(t, 5, s), f"subject-reduction-{calc}", s)


def _nonconfluence(count, size, seed, strategy):
    yield check_nonconfluence()


_RUNNERS = {
    "thm1": _thm1, "thm2": _thm2, "thm4": _thm4, "thm5": _thm5, "lemma1": _lemma1, "lemma2": _lemma2,
    "lemma5": _lemma5, "lemma6": _lemma6, "subst": _subst, "types": _types, "nonconfluence": _nonconfluence,
}


def run_suite(name: str, count: int = 100, size: int = 12, seed: int = 0,
              strategy: str | None = None) -> list[CheckReport]:
    """Reports for suite *name* (or every suite for ``all``), in a fixed order."""
    if name == "all":
        out = []
        for n in SUITES:
            out.extend(run_suite(n, count, size, seed, strategy if n in STRATEGY_SUITES else None))
        return out
    if name not in _RUNNERS:
        raise ValueError(f"unknown check {name!r}; expected one of {SUITES + ('all',)}")
    if strategy is not None and name not in STRATEGY_SUITES:
        raise ValueError(f"check {name} takes no strategy")
    if strategy is not None and strategy not in SIM_STRATEGIES:
        raise ValueError(f"strategy must be one of {SIM_STRATEGIES}")
    return list(_RUNNERS[name](count, size, seed, strategy))
