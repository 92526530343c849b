"""Redex records, traces and the linear-step size monitor shared by both kernels."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Any

STRATEGIES_LM = ("free", "cbn", "cbv", "cbv-os")
STRATEGIES_LMM = ("free", "cbn", "cbv")
ORDERS = ("leftmost-outermost", "all-paths-bfs")


class StaleRedexError(ValueError):
    """The redex does not match the subject it is fired on."""


@dataclass(frozen=True)
class RedexInfo:
    rule: str
    position: tuple[int, ...]
    linear: bool
    result: Any


@dataclass
class Trace:
    """A reduction sequence ``start -> steps[0][1] -> steps[1][1] ...``."""

    start: Any
    steps: list[tuple[RedexInfo, Any]] = field(default_factory=list)
    normal_form: bool = False
    exhausted: bool = False

    @property
    def end(self):
        return self.steps[-1][1] if self.steps else self.start

    def __len__(self) -> int:
        return len(self.steps)


class LinearMeasureError(AssertionError):
    """A linear redex failed to decrease the termination measure."""


# (calc, rule) -> Counter of "decrease" / "equal" / "increase" node-count deltas
LINEAR_LOG: dict[tuple[str, str], Counter] = {}


def record_linear(calc: str, rule: str, before: tuple[int, int], after: tuple[int, int]) -> None:
    """Record a linear contraction and assert that its measure decreases.

    The measure is ``(node count, lambda count)`` ordered lexicographically;
    the tilde-mu calculus beta rule keeps the node count and only removes a
    lambda.  Node-count deltas are logged separately.
    """
    if not after < before:
        raise LinearMeasureError(f"{calc} {rule}: measure {before} -> {after}")
    delta = after[0] - before[0]
    kind = "decrease" if delta < 0 else ("equal" if delta == 0 else "increase")
    LINEAR_LOG.setdefault((calc, rule), Counter())[kind] += 1


def reset_linear_log() -> None:
    LINEAR_LOG.clear()


def reduce_generic(subject, redexes_of, key, max_steps: int, order: str) -> Trace:
    """Iterate one-step reduction until a normal form or the step bound."""
    if max_steps < 0:
        raise ValueError("max_steps must be >= 0")
    if order == "leftmost-outermost":
        trace = Trace(subject)
        current = subject
        while True:
            rs = redexes_of(current)
            if not rs:
                trace.normal_form = True
                return trace
            if len(trace.steps) >= max_steps:
                trace.exhausted = True
                return trace
            current = rs[0].result
            trace.steps.append((rs[0], current))
    if order == "all-paths-bfs":
        # shortest path to the first normal form met in breadth-first order
        parents: dict[str, tuple[str | None, RedexInfo | None, Any]] = {key(subject): (None, None, subject)}
        frontier = [key(subject)]
        for depth in range(max_steps + 1):
            nxt = []
            for k in frontier:
                node = parents[k][2]
                rs = redexes_of(node)
                if not rs:
                    return _path(parents, k, normal=True)
                if depth == max_steps:
                    continue
                for r in rs:
                    rk = key(r.result)
                    if rk not in parents:
                        parents[rk] = (k, r, r.result)
                        nxt.append(rk)
            if not nxt:
                break
            frontier = nxt
        return Trace(subject, exhausted=True)
    raise ValueError(f"unknown order {order!r}; expected one of {ORDERS}")


def _path(parents, k, normal: bool) -> Trace:
    steps = []
    while True:
        parent, redex, node = parents[k]
        if parent is None:
            break
        steps.append((redex, node))
        k = parent
    steps.reverse()
    return Trace(node, steps, normal_form=normal)
