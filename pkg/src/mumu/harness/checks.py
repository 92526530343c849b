"""Executable checks for the lemmas and theorems relating the two calculi.

Every check returns a CheckReport.  ``holds`` always comes with witness traces
that replay through the kernels; ``falsified`` is only reported when the
relevant search space was explored completely.
"""

from __future__ import annotations

import random

from .. import lm, lmm
from ..names import is_reserved
from ..simple_types import CutRuleError, Sequent, TVar, check_sequent, cut_sequent, infer
from ..steps import Trace
from ..syntax import calc_of, parse_lmm, show
from ..translate import circ, dag
from .report import FALSIFIED, HOLDS, INCONCLUSIVE, CheckReport, combine
from .search import DEFAULT_MAX_STATES, key, linear_path, reachable

JOIN_LIMIT = 200


def _size(x) -> int:
    return (lm if calc_of(x) == "lm" else lmm).node_count(x)


def default_depth(x) -> int:
    return 2 * _size(x) + 8


def _verdict(name, subject, trace, exhaustive, bound_used, notes=None) -> CheckReport:
    if trace is not None:
        return CheckReport(name, HOLDS, subject, [trace], bound_used, notes or {})
    status = FALSIFIED if exhaustive else INCONCLUSIVE
    return CheckReport(name, status, subject, [], bound_used, notes or {})


def _exact(name, subject, lhs, rhs, discount: bool) -> CheckReport:
    kernel = lm if calc_of(lhs) == "lm" else lmm
    same = kernel.alpha_eq(lhs, rhs, discount_reserved=discount)
    notes = {} if same else {"lhs": show(lhs), "rhs": show(rhs)}
    return CheckReport(name, HOLDS if same else FALSIFIED, subject, [Trace(lhs)] if same else [], {}, notes)


def _linear(name, subject, lhs, rhs, max_states=DEFAULT_MAX_STATES) -> CheckReport:
    trace, exhaustive = linear_path(lhs, key(rhs), max_states=max_states)
    notes = {} if trace else {"lhs": show(lhs), "rhs": show(rhs)}
    return _verdict(name, subject, trace, exhaustive, {"max_states": max_states}, notes)


# ---------------------------------------------------------------------------
# round trips


def check_thm1(t, max_states: int = DEFAULT_MAX_STATES) -> CheckReport:
    """circ(dag(t)) reduces linearly to t (lambda-mu terms and commands)."""
    return _linear("thm1", show(t), circ(dag(t)), t, max_states)


def check_thm2(t, max_states: int = DEFAULT_MAX_STATES) -> CheckReport:
    """dag(circ(t)) reduces linearly to t (any lambda-bar-mu-mu-tilde sort)."""
    return _linear("thm2", show(t), dag(circ(t)), t, max_states)


# ---------------------------------------------------------------------------
# plugging a mu-abstraction


def check_lemma2(e, alpha: str, c, strategy: str = "free", depth: int | None = None,
                 max_states: int = DEFAULT_MAX_STATES) -> CheckReport:
    """e<mu alpha.c> reduces to c[alpha:=e] under *strategy*."""
    source = lm.plug(e, lm.Mu(alpha, c))
    target = key(lm.subst_covar(c, alpha, e))
    depth = lm.node_count(e) + 2 if depth is None else depth
    reach, hit = reachable(source, "full", depth, strategy, max_states=max_states,
                           goal=lambda k, _: k == target)
    bound = {"max_depth": depth, "states": len(reach)}
    subject = f"{show(e)} ; '{alpha} ; {show(c)} ; {strategy}"
    trace = reach.trace_to(hit) if hit is not None else None
    return _verdict("lemma2", subject, trace, not reach.truncated, bound)


# ---------------------------------------------------------------------------
# linear lemmas about dag


def _app_chain(ts):
    out = ts[0]
    for t in ts[1:]:
        out = lm.App(out, t)
    return out


def check_lemma5(ts: list, e) -> CheckReport:
    """<(t0 t1 ... tn)dag | e> reduces linearly to <t0 dag | t1 dag * ... * tn dag * e>."""
    lhs = lmm.Cut(dag(_app_chain(ts)), e)
    ctx = e
    for t in reversed(ts[1:]):
        ctx = lmm.Cons(dag(t), ctx)
    rhs = lmm.Cut(dag(ts[0]), ctx)
    return _linear("lemma5", " ; ".join(show(t) for t in ts) + " ; " + show(e), lhs, rhs)


def check_lemma6(e, t) -> CheckReport:
    """dag(e<t>) reduces linearly to <dag(t) | dag(e)>."""
    lhs = dag(lm.plug(e, t))
    rhs = lmm.Cut(dag(t), dag(e))
    return _linear("lemma6", f"{show(e)} ; {show(t)}", lhs, rhs)


# ---------------------------------------------------------------------------
# substitution lemmas


def check_subst_lemmas(kind: int, inputs: tuple) -> CheckReport:
    """Commutation of the translations with substitution.

    kind 7:  (t, x, u)      dag(t[x:=u]) = dag(t)[x:=dag(u)]
    kind 8:  (t, alpha, u)  dag(t[alpha:=alpha@u]) reduces linearly to dag(t)[alpha:=dag(u)*alpha]
    kind 9:  (t, alpha, u)  dag(t[alpha:=[alpha](u #)]) reduces linearly to dag(t)[alpha:=dag([alpha](u #))]
    kind 10: (t, alpha, b)  dag(t[alpha:=b]) = dag(t)[alpha:=b]
    kind 11: (t, x, u)      circ(t[x:=u]) = circ(t)[x:=circ(u)]
    kind 12: (t, alpha, h)  circ(t[alpha:=h]) = circ(t)[alpha:=circ(h)]
    """
    name = f"lemma{kind}"
    t, n, u = inputs
    subject = f"{show(t)} ; {n if kind in (7, 11) else repr(n)} ; {u if isinstance(u, str) else show(u)}"
    if kind == 7:
        return _exact(name, subject, dag(lm.subst_var(t, n, u)), lmm.subst_var(dag(t), n, dag(u)), False)
    if kind == 8:
        lhs = dag(lm.subst_covar(t, n, lm.ArgStack(lm.CoVar(n), u)))
        rhs = lmm.subst_covar(dag(t), n, lmm.Cons(dag(u), lmm.CoVar(n)))
        return _linear(name, subject, lhs, rhs)
    if kind == 9:
        ctx = lm.AppTo(u, n)
        lhs = dag(lm.subst_covar(t, n, ctx))
        rhs = lmm.subst_covar(dag(t), n, dag(ctx))
        return _linear(name, subject, lhs, rhs)
    if kind == 10:
        lhs = dag(lm.subst_covar(t, n, lm.CoVar(u)))
        return _exact(name, subject, lhs, lmm.subst_covar(dag(t), n, lmm.CoVar(u)), False)
    if kind == 11:
        return _exact(name, subject, circ(lmm.subst_var(t, n, u)), lm.subst_var(circ(t), n, circ(u)), True)
    if kind == 12:
        return _exact(name, subject, circ(lmm.subst_covar(t, n, u)), lm.subst_covar(circ(t), n, circ(u)), True)
    raise ValueError(f"no substitution lemma {kind}")


# ---------------------------------------------------------------------------
# simulations


def dag_position(t, path: tuple[int, ...]) -> tuple[int, ...]:
    """Position in dag(t) of the image of the node of *t* at *path*."""
    out: tuple[int, ...] = ()
    node = t
    for i in path:
        if isinstance(node, lm.App):
            out += (0, 1, 0, 0) if i == 0 else (0, 0)
        elif isinstance(node, lm.AppTo):
            out += (0, 0)
        elif isinstance(node, lm.ArgStack):
            out += (1,) if i == 0 else (0,)
        else:
            out += (0,)
        node = lm.children(node)[i]
    return out


def circ_position(x, path: tuple[int, ...]) -> tuple[int, ...]:
    """Position in circ(x) of the image of the term or command of *x* at *path*.

    Contexts are spread over the command they occur in and have no image
    position of their own; asking for one raises ValueError.
    """
    out: tuple[int, ...] = ()
    node = x
    i = 0
    while i < len(path):
        if isinstance(node, (lmm.Lam, lmm.Mu)):
            out += (0,)
            node = lmm.children(node)[0]
            i += 1
            continue
        if not isinstance(node, lmm.Cut):
            raise ValueError(f"no image position for {path}")
        base, n = node.ctx, 0
        while isinstance(base, lmm.Cons):
            base, n = base.tail, n + 1
        prefix = (0, 1) if isinstance(base, lmm.MuTilde) else (0,)
        if path[i] == 0:
            out += prefix + (0,) * n
            node = node.term
            i += 1
            continue
        cur, j = node.ctx, 0
        i += 1
        while True:
            if i >= len(path):
                raise ValueError(f"no image position for context at {path}")
            if isinstance(cur, lmm.Cons):
                j += 1
                if path[i] == 0:
                    out += prefix + (0,) * (n - j) + (1,)
                    node = cur.head
                    i += 1
                    break
                cur = cur.tail
                i += 1
                continue
            if isinstance(cur, lmm.MuTilde):
                out += (0, 0, 0, 0)
                node = cur.cmd
                i += 1
                break
            raise ValueError(f"no image position for {path}")
    return out


def _concat(a: Trace, b: Trace) -> Trace:
    return Trace(a.start, a.steps + b.steps)


def _thm4_search(src, tgt, within, strategy, depth, max_states):
    lin, _ = reachable(tgt, "linear", None, strategy, within=within, max_states=max_states)
    full, hit = reachable(src, "full", depth, strategy, within=within, max_states=max_states,
                          goal=lambda k, _: k in lin)
    if hit is not None:
        return "direct", [full.trace_to(hit), lin.trace_to(hit)], full
    for k in list(full.keys())[:JOIN_LIMIT]:
        down, _ = reachable(full.subject(k), "linear", None, strategy, within=within, max_states=max_states)
        for w in down.keys():
            if w in lin:
                return "join", [_concat(full.trace_to(k), down.trace_to(w)), lin.trace_to(w)], full
    return None, [], full


def simulate_lm_step(t, redex, strategy: str = "free", depth: int | None = None,
                     max_states: int = DEFAULT_MAX_STATES) -> CheckReport:
    """One lambda-mu step t -> v against dag(t) ->* u with u and dag(v) linearly joinable."""
    src, tgt = dag(t), dag(redex.result)
    focus = dag_position(t, redex.position)
    depth = default_depth(t) if depth is None else depth
    subject = f"{show(t)} --{redex.rule}--> {show(redex.result)}"
    attempts = []
    for d in (depth, 2 * depth):
        for within in dict.fromkeys((focus, ())):
            form, witness, full = _thm4_search(src, tgt, within, strategy, d, max_states)
            attempts.append({"max_depth": d, "focused": bool(within), "states": len(full)})
            if form is not None:
                bound = {"max_depth": d, "states": len(full)}
                return CheckReport("thm4", HOLDS, subject, witness, bound,
                                   {"form": form, "rule": redex.rule, "attempts": attempts})
    # joinability is only sufficient for the convertibility in the statement,
    # so a miss is never a counterexample
    return CheckReport("thm4", INCONCLUSIVE, subject, [], {"max_depth": 2 * depth},
                       {"rule": redex.rule, "attempts": attempts})


def check_thm4(t, strategy: str = "free", depth: int | None = None,
               max_states: int = DEFAULT_MAX_STATES) -> CheckReport:
    """Every one-step reduct of *t* is simulated through dag."""
    parts = []
    for r in lm.redexes(t, strategy):
        if strategy == "cbn" and r.rule == "mu-prime":
            continue
        parts.append(simulate_lm_step(t, r, strategy, depth, max_states))
    return combine("thm4", f"{show(t)} ; {strategy}", parts)


def simulate_lmm_step(t, redex, strategy: str = "free", depth: int | None = None,
                      max_states: int = DEFAULT_MAX_STATES) -> CheckReport:
    """One step t -> v against circ(t) ->* u with u reducing linearly to circ(v)."""
    src = circ(t)
    target = key(circ(redex.result))
    focus = circ_position(t, redex.position)
    depth = default_depth(t) if depth is None else depth
    subject = f"{show(t)} --{redex.rule}--> {show(redex.result)}"
    attempts = []
    for d in (depth, 2 * depth):
        for within in dict.fromkeys((focus, ())):
            cache: dict[str, tuple] = {}
            complete = [True]

            def goal(k, node, within=within, cache=cache, complete=complete):
                if k not in cache:
                    cache[k] = linear_path(node, target, strategy, within=within, max_states=max_states)
                    complete[0] = complete[0] and cache[k][1]
                return cache[k][0] is not None

            full, hit = reachable(src, "full", d, strategy, within=within, max_states=max_states, goal=goal)
            attempts.append({"max_depth": d, "focused": bool(within), "states": len(full)})
            if hit is not None:
                witness = [full.trace_to(hit), cache[hit][0]]
                return CheckReport("thm5", HOLDS, subject, witness, {"max_depth": d, "states": len(full)},
                                   {"rule": redex.rule, "attempts": attempts})
            if not within and not full.truncated and complete[0]:
                return CheckReport("thm5", FALSIFIED, subject, [], {"max_depth": d, "states": len(full)},
                                   {"rule": redex.rule, "attempts": attempts})
    return CheckReport("thm5", INCONCLUSIVE, subject, [], {"max_depth": 2 * depth},
                       {"rule": redex.rule, "attempts": attempts})


def check_thm5(t, strategy: str = "free", depth: int | None = None,
               max_states: int = DEFAULT_MAX_STATES) -> CheckReport:
    """Every beta-prime, mu, mu-tilde and theta step of *t* is simulated through circ."""
    parts = []
    for r in lmm.redexes(t, strategy, beta_prime=True):
        if r.rule == "beta":
            continue
        parts.append(simulate_lmm_step(t, r, strategy, depth, max_states))
    return combine("thm5", f"{show(t)} ; {strategy}", parts)


# ---------------------------------------------------------------------------
# typing


def check_cut_rule(t, e) -> CheckReport:
    """The derived cut rule: e<t> has the sequent built from the premises."""
    claimed = cut_sequent(t, e)
    cmd = lm.plug(e, t)
    ok = check_sequent(cmd, claimed)
    return CheckReport("lemma1", HOLDS if ok else FALSIFIED, f"{show(t)} ; {show(e)}",
                       [Trace(cmd)] if ok else [], {}, {"sequent": claimed.render(show(cmd))})


def check_lemma3(t) -> CheckReport:
    """dag(t) has the principal sequent of t."""
    principal = infer(t)
    ok = check_sequent(dag(t), principal)
    return CheckReport("lemma3", HOLDS if ok else FALSIFIED, show(t), [Trace(t)] if ok else [], {},
                       {"sequent": principal.render(show(t))})


def check_lemma4(t) -> CheckReport:
    """circ(t) has the principal sequent of t, extended by the invented covariables."""
    principal = infer(t)
    image = circ(t)
    extra = sorted(a for a in lm.free(image)[1] if is_reserved(a))
    delta = dict(principal.delta)
    for i, a in enumerate(extra):
        delta[a] = TVar(f"K{i}")
    claimed = Sequent(principal.form, dict(principal.gamma), delta, principal.type)
    ok = check_sequent(image, claimed)
    return CheckReport("lemma4", HOLDS if ok else FALSIFIED, show(t), [Trace(t)] if ok else [], {},
                       {"sequent": claimed.render(show(image))})


def check_subject_reduction(s, steps: int = 5, seed: int = 0, strategy: str = "free") -> CheckReport:
    """The principal sequent of *s* survives *steps* randomly chosen reductions."""
    principal = infer(s)
    rng = random.Random(f"sr/{seed}")
    kernel = lm if calc_of(s) == "lm" else lmm
    trace = Trace(s)
    current = s
    for _ in range(steps):
        rs = kernel.redexes(current, strategy)
        if not rs:
            trace.normal_form = True
            break
        r = rng.choice(rs)
        current = r.result
        trace.steps.append((r, current))
        if not check_sequent(current, principal):
            return CheckReport("subject-reduction", FALSIFIED, show(s), [trace], {"steps": steps},
                               {"sequent": principal.render(show(s)), "failed_at": show(current)})
    return CheckReport("subject-reduction", HOLDS, show(s), [trace], {"steps": steps})


# ---------------------------------------------------------------------------
# the critical pair

CRITICAL_PAIR = "<mu 'a.<x|y*'a> | mt x.<z|x*'b>>"
CRITICAL_NORMAL_FORMS = ("<x | y*mt x.<z|x*'b>>", "<z | mu 'a.<x|y*'a>*'b>")


def check_nonconfluence(max_states: int = 1000) -> CheckReport:
    """Exhaustive free reduction of the critical pair reaches exactly two normal forms."""
    subject = parse_lmm(CRITICAL_PAIR, "command")
    reach, _ = reachable(subject, "full", None, "free", max_states=max_states)
    expected = {key(parse_lmm(s, "command")) for s in CRITICAL_NORMAL_FORMS}
    found = set(reach.normal_forms)
    ok = found == expected and not reach.truncated
    status = HOLDS if ok else (INCONCLUSIVE if reach.truncated else FALSIFIED)
    witness = [reach.trace_to(k) for k in reach.normal_forms]
    return CheckReport("nonconfluence", status, CRITICAL_PAIR, witness,
                       {"states": len(reach), "max_states": max_states},
                       {"normal_forms": [show(reach.subject(k)) for k in reach.normal_forms]})
