"""Breadth-first exploration of reduction graphs.

States are keyed by their alpha-canonical string with reserved covariables
discounted, so two subjects that differ only in bound names or in the phantom
covariables of the backward translation are one state.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .. import lm, lmm
from ..steps import RedexInfo, StaleRedexError, Trace
from ..syntax import calc_of

DEFAULT_MAX_STATES = 20000
# staged redex depths for linear path search; None is the unrestricted search
POSITION_LEVELS = (2, 6, None)


def key(x) -> str:
    return (lm if calc_of(x) == "lm" else lmm).canon(x, discount_reserved=True)


def successors(
    subject,
    relation: str = "full",
    strategy: str = "free",
    beta_prime: bool = False,
    within: tuple[int, ...] = (),
    max_position_depth: int | None = None,
) -> list[RedexInfo]:
    """Redexes of *subject* under *relation* (``full`` or ``linear``) below *within*.

    *max_position_depth* drops redexes lying deeper than that many steps below
    *within*.
    """
    if calc_of(subject) == "lm":
        rs = lm.redexes(subject, strategy)
    else:
        rs = lmm.redexes(subject, strategy, beta_prime)
    if relation == "linear":
        rs = [r for r in rs if r.linear]
    elif relation != "full":
        raise ValueError(f"unknown relation {relation!r}")
    if within:
        n = len(within)
        rs = [r for r in rs if r.position[:n] == within]
    if max_position_depth is not None:
        limit = len(within) + max_position_depth
        rs = [r for r in rs if len(r.position) <= limit]
    return rs


@dataclass
class Reach:
    """Result of a bounded breadth-first search."""

    start: object
    nodes: dict[str, tuple[str | None, RedexInfo | None, object, int]] = field(default_factory=dict)
    truncated: bool = False
    depth: int = 0
    normal_forms: list[str] = field(default_factory=list)

    def __contains__(self, k: str) -> bool:
        return k in self.nodes

    def __len__(self) -> int:
        return len(self.nodes)

    def keys(self):
        return self.nodes.keys()

    def subject(self, k: str):
        return self.nodes[k][2]

    def subjects(self) -> list:
        return [v[2] for v in self.nodes.values()]

    def trace_to(self, k: str) -> Trace:
        steps = []
        while True:
            parent, redex, node, _ = self.nodes[k]
            if parent is None:
                break
            steps.append((redex, node))
            k = parent
        steps.reverse()
        return Trace(self.start, steps)


def reachable(
    subject,
    relation: str = "full",
    max_depth: int | None = None,
    strategy: str = "free",
    beta_prime: bool = False,
    within: tuple[int, ...] = (),
    max_states: int = DEFAULT_MAX_STATES,
    goal: Callable[[str, object], bool] | None = None,
    max_position_depth: int | None = None,
) -> tuple[Reach, str | None]:
    """Explore from *subject*; stops early at the first state satisfying *goal*.

    Returns the explored region and the key of the goal state (or None).
    ``truncated`` is set when the depth or state bound cut the search short.
    """
    reach = Reach(subject)
    k0 = key(subject)
    reach.nodes[k0] = (None, None, subject, 0)
    if goal is not None and goal(k0, subject):
        return reach, k0
    frontier = [k0]
    depth = 0
    while frontier:
        if max_depth is not None and depth >= max_depth:
            # anything left unexpanded means the search was cut
            for k in frontier:
                if successors(reach.subject(k), relation, strategy, beta_prime, within, max_position_depth):
                    reach.truncated = True
                    break
            break
        nxt = []
        for k in frontier:
            rs = successors(reach.subject(k), relation, strategy, beta_prime, within, max_position_depth)
            if not rs:
                reach.normal_forms.append(k)
            for r in rs:
                rk = key(r.result)
                if rk in reach.nodes:
                    continue
                if len(reach.nodes) >= max_states:
                    reach.truncated = True
                    reach.depth = depth + 1
                    return reach, None
                reach.nodes[rk] = (k, r, r.result, depth + 1)
                if goal is not None and goal(rk, r.result):
                    reach.depth = depth + 1
                    return reach, rk
                nxt.append(rk)
        depth += 1
        frontier = nxt
    reach.depth = depth
    return reach, None


def greedy_linear(subject, strategy: str = "free", beta_prime: bool = False,
                  within: tuple[int, ...] = (), limit: int = 10000) -> Trace:
    """Leftmost-outermost linear reduction to a linear normal form."""
    trace = Trace(subject)
    current = subject
    for _ in range(limit):
        rs = successors(current, "linear", strategy, beta_prime, within)
        if not rs:
            trace.normal_form = True
            return trace
        current = rs[0].result
        trace.steps.append((rs[0], current))
    trace.exhausted = True
    return trace


def linear_path(source, target_key: str, strategy: str = "free", beta_prime: bool = False,
                within: tuple[int, ...] = (), max_states: int = DEFAULT_MAX_STATES):
    """A linear trace from *source* to the state *target_key*.

    Returns ``(trace or None, exhaustive)``.  The greedy normalising path is
    tried first, then breadth-first searches that admit redexes at growing
    depths below *within*, and finally an unrestricted search.
    """
    greedy = greedy_linear(source, strategy, beta_prime, within)
    for i in range(len(greedy.steps) + 1):
        node = greedy.start if i == 0 else greedy.steps[i - 1][1]
        if key(node) == target_key:
            return Trace(source, greedy.steps[:i]), True
    for level in POSITION_LEVELS:
        reach, hit = reachable(source, "linear", None, strategy, beta_prime, within, max_states,
                               goal=lambda k, _: k == target_key, max_position_depth=level)
        if hit is not None:
            return reach.trace_to(hit), True
    return None, not reach.truncated


def replay(trace: Trace) -> bool:
    """Re-fire every recorded step through the kernels and compare results."""
    current = trace.start
    for redex, recorded in trace.steps:
        kernel = lm if calc_of(current) == "lm" else lmm
        try:
            fired = kernel.step(current, redex)
        except StaleRedexError:
            return False
        if key(fired) != key(recorded) or key(redex.result) != key(recorded):
            return False
        current = recorded
    return True


def linear_convertible(a, b, strategy: str = "free", beta_prime: bool = False,
                       max_states: int = DEFAULT_MAX_STATES):
    """Decide the sufficient condition for linear convertibility: a common linear reduct.

    ``holds`` carries the two linear traces meeting at the join; when the
    linear reachable sets are disjoint the answer is ``inconclusive``, since
    convertibility may need expansions.
    """
    from .report import HOLDS, INCONCLUSIVE, CheckReport
    from ..syntax import show

    ra, _ = reachable(a, "linear", None, strategy, beta_prime, max_states=max_states)
    rb, hit = reachable(b, "linear", None, strategy, beta_prime, max_states=max_states,
                        goal=lambda k, _: k in ra)
    bound = {"states": len(ra) + len(rb), "max_states": max_states}
    subject = f"{show(a)} ~ {show(b)}"
    if hit is None:
        return CheckReport("linear-convertible", INCONCLUSIVE, subject, [], bound)
    return CheckReport("linear-convertible", HOLDS, subject, [ra.trace_to(hit), rb.trace_to(hit)], bound)
