"""Parigot's lambda-mu calculus with first-class contexts.

Terms, commands and contexts are immutable trees.  Contexts are commands with
a hole: ``CoVar(a)`` fills to ``[a]t``, ``AppTo(u, b)`` to ``[b](u t)`` and
``ArgStack(h, u)`` to ``h<t u>``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .names import fresh_covar, fresh_name, is_reserved
from .steps import (
    STRATEGIES_LM,
    RedexInfo,
    StaleRedexError,
    Trace,
    record_linear,
    reduce_generic,
)


@dataclass(frozen=True, slots=True)
class Var:
    name: str

    def __str__(self):
        return show(self)


@dataclass(frozen=True, slots=True)
class Lam:
    var: str
    body: "Term"

    def __str__(self):
        return show(self)


@dataclass(frozen=True, slots=True)
class App:
    fun: "Term"
    arg: "Term"

    def __str__(self):
        return show(self)


@dataclass(frozen=True, slots=True)
class Mu:
    covar: str
    cmd: "Named"

    def __str__(self):
        return show(self)


@dataclass(frozen=True, slots=True)
class Named:
    covar: str
    term: "Term"

    def __str__(self):
        return show(self)


@dataclass(frozen=True, slots=True)
class CoVar:
    covar: str

    def __str__(self):
        return show(self)


@dataclass(frozen=True, slots=True)
class AppTo:
    """The context ``[covar](fun #)``."""

    fun: "Term"
    covar: str

    def __str__(self):
        return show(self)


@dataclass(frozen=True, slots=True)
class ArgStack:
    """The context ``ctx @ arg``: push ``arg`` then fill ``ctx``."""

    ctx: "Context"
    arg: "Term"

    def __str__(self):
        return show(self)


Term = Union[Var, Lam, App, Mu]
Command = Named
Context = Union[CoVar, AppTo, ArgStack]
Node = Union[Var, Lam, App, Mu, Named, CoVar, AppTo, ArgStack]

TERM_TYPES = (Var, Lam, App, Mu)
CONTEXT_TYPES = (CoVar, AppTo, ArgStack)


def show(x) -> str:
    from .syntax import print_lm

    return print_lm(x)


def sort_of(x) -> str:
    if isinstance(x, TERM_TYPES):
        return "term"
    if isinstance(x, Named):
        return "command"
    if isinstance(x, CONTEXT_TYPES):
        return "context"
    raise TypeError(f"not a lambda-mu node: {x!r}")


# ---------------------------------------------------------------------------
# structure


def children(n) -> tuple:
    if isinstance(n, (Var, CoVar)):
        return ()
    if isinstance(n, Lam):
        return (n.body,)
    if isinstance(n, App):
        return (n.fun, n.arg)
    if isinstance(n, Mu):
        return (n.cmd,)
    if isinstance(n, Named):
        return (n.term,)
    if isinstance(n, AppTo):
        return (n.fun,)
    if isinstance(n, ArgStack):
        return (n.ctx, n.arg)
    raise TypeError(f"not a lambda-mu node: {n!r}")


def with_children(n, kids):
    if isinstance(n, Lam):
        return Lam(n.var, kids[0])
    if isinstance(n, App):
        return App(kids[0], kids[1])
    if isinstance(n, Mu):
        return Mu(n.covar, kids[0])
    if isinstance(n, Named):
        return Named(n.covar, kids[0])
    if isinstance(n, AppTo):
        return AppTo(kids[0], n.covar)
    if isinstance(n, ArgStack):
        return ArgStack(kids[0], kids[1])
    return n


def subterm_at(root, position):
    node = root
    for i in position:
        kids = children(node)
        if i >= len(kids):
            raise StaleRedexError(f"no child {i} at {position}")
        node = kids[i]
    return node


def replace_at(root, position, new):
    if not position:
        return new
    kids = list(children(root))
    i = position[0]
    kids[i] = replace_at(kids[i], position[1:], new)
    return with_children(root, kids)


def node_count(x) -> int:
    return 1 + sum(node_count(k) for k in children(x))


def lambda_count(x) -> int:
    return (1 if isinstance(x, Lam) else 0) + sum(lambda_count(k) for k in children(x))


def is_value(t) -> bool:
    return isinstance(t, (Var, Lam))


# ---------------------------------------------------------------------------
# free variables and alpha-equivalence


def free(x) -> tuple[frozenset, frozenset]:
    """Free lambda-variables and free mu-variables of any node."""
    fv: set[str] = set()
    fcv: set[str] = set()
    _free(x, frozenset(), frozenset(), fv, fcv)
    return frozenset(fv), frozenset(fcv)


def _free(x, bv, bcv, fv, fcv):
    if isinstance(x, Var):
        if x.name not in bv:
            fv.add(x.name)
    elif isinstance(x, Lam):
        _free(x.body, bv | {x.var}, bcv, fv, fcv)
    elif isinstance(x, App):
        _free(x.fun, bv, bcv, fv, fcv)
        _free(x.arg, bv, bcv, fv, fcv)
    elif isinstance(x, Mu):
        _free(x.cmd, bv, bcv | {x.covar}, fv, fcv)
    elif isinstance(x, Named):
        if x.covar not in bcv:
            fcv.add(x.covar)
        _free(x.term, bv, bcv, fv, fcv)
    elif isinstance(x, CoVar):
        if x.covar not in bcv:
            fcv.add(x.covar)
    elif isinstance(x, AppTo):
        if x.covar not in bcv:
            fcv.add(x.covar)
        _free(x.fun, bv, bcv, fv, fcv)
    elif isinstance(x, ArgStack):
        _free(x.ctx, bv, bcv, fv, fcv)
        _free(x.arg, bv, bcv, fv, fcv)
    else:
        raise TypeError(f"not a lambda-mu node: {x!r}")


def all_names(x) -> tuple[set, set]:
    """Every variable and covariable name occurring anywhere, bound or free."""
    vs: set[str] = set()
    cs: set[str] = set()
    stack = [x]
    while stack:
        n = stack.pop()
        if isinstance(n, (Var,)):
            vs.add(n.name)
        elif isinstance(n, Lam):
            vs.add(n.var)
        elif isinstance(n, (Mu, Named, CoVar, AppTo)):
            cs.add(n.covar)
        stack.extend(children(n))
    return vs, cs


def count_var(x, name: str) -> int:
    if isinstance(x, Var):
        return int(x.name == name)
    if isinstance(x, Lam) and x.var == name:
        return 0
    return sum(count_var(k, name) for k in children(x))


def count_covar(x, name: str) -> int:
    if isinstance(x, Mu) and x.covar == name:
        return 0
    own = int(isinstance(x, (Named, CoVar, AppTo)) and x.covar == name)
    return own + sum(count_covar(k, name) for k in children(x))


def canon(x, discount_reserved: bool = False) -> str:
    """Canonical string with bound names replaced by binder depth.

    Two nodes are alpha-equivalent iff their canonical strings are equal.  With
    *discount_reserved* every free reserved covariable prints as ``'?``.
    """
    out: list[str] = []
    venv: dict[str, list[int]] = {}
    cenv: dict[str, list[int]] = {}
    depth = [0, 0]

    def cov(name):
        levels = cenv.get(name)
        if levels:
            return f"^{levels[-1]}"
        if discount_reserved and is_reserved(name):
            return "'?"
        return "'" + name

    def bind(env, name, slot):
        env.setdefault(name, []).append(depth[slot])
        depth[slot] += 1

    def unbind(env, name, slot):
        env[name].pop()
        depth[slot] -= 1

    def go(n):
        if isinstance(n, Var):
            levels = venv.get(n.name)
            out.append(f"#{levels[-1]}" if levels else n.name)
        elif isinstance(n, Lam):
            out.append("(L")
            bind(venv, n.var, 0)
            go(n.body)
            unbind(venv, n.var, 0)
            out.append(")")
        elif isinstance(n, App):
            out.append("(A")
            go(n.fun)
            go(n.arg)
            out.append(")")
        elif isinstance(n, Mu):
            out.append("(M")
            bind(cenv, n.covar, 1)
            go(n.cmd)
            unbind(cenv, n.covar, 1)
            out.append(")")
        elif isinstance(n, Named):
            out.append("(N" + cov(n.covar))
            go(n.term)
            out.append(")")
        elif isinstance(n, CoVar):
            out.append("(K" + cov(n.covar) + ")")
        elif isinstance(n, AppTo):
            out.append("(P" + cov(n.covar))
            go(n.fun)
            out.append(")")
        elif isinstance(n, ArgStack):
            out.append("(S")
            go(n.ctx)
            go(n.arg)
            out.append(")")
        else:
            raise TypeError(f"not a lambda-mu node: {n!r}")
        out.append(" ")

    go(x)
    return "".join(out)


def alpha_eq(a, b, discount_reserved: bool = False) -> bool:
    return canon(a, discount_reserved) == canon(b, discount_reserved)


# ---------------------------------------------------------------------------
# substitution and plugging


def plug(e, t) -> Named:
    """Fill the hole of context *e* with term *t*."""
    while isinstance(e, ArgStack):
        t = App(t, e.arg)
        e = e.ctx
    if isinstance(e, CoVar):
        return Named(e.covar, t)
    if isinstance(e, AppTo):
        return Named(e.covar, App(e.fun, t))
    raise TypeError(f"not a lambda-mu context: {e!r}")


def rename_var(x, old: str, new: str):
    return subst_var(x, old, Var(new))


def rename_covar(x, old: str, new: str):
    return subst_covar(x, old, CoVar(new))


def subst_var(x, name: str, u):
    """Capture-avoiding ``x[name := u]``."""
    fv_u, fcv_u = free(u)
    return _sv(x, name, u, fv_u, fcv_u)


def _sv(x, name, u, fv_u, fcv_u):
    if isinstance(x, Var):
        return u if x.name == name else x
    if isinstance(x, Lam):
        if x.var == name:
            return x
        if x.var in fv_u:
            fv_b, _ = free(x.body)
            if name not in fv_b:
                return x
            y = fresh_name(x.var, fv_u | fv_b | {name})
            x = Lam(y, rename_var(x.body, x.var, y))
        return Lam(x.var, _sv(x.body, name, u, fv_u, fcv_u))
    if isinstance(x, Mu):
        if x.covar in fcv_u:
            fv_c, fcv_c = free(x.cmd)
            if name not in fv_c:
                return x
            b = fresh_covar(x.covar, fcv_u | fcv_c)
            x = Mu(b, rename_covar(x.cmd, x.covar, b))
        return Mu(x.covar, _sv(x.cmd, name, u, fv_u, fcv_u))
    return with_children(x, [_sv(k, name, u, fv_u, fcv_u) for k in children(x)])


def subst_covar(x, covar: str, e):
    """Capture-avoiding structural substitution ``x[covar := e]``.

    Every named subcommand ``[covar]w`` becomes ``e<w[covar := e]>`` and a bare
    ``CoVar(covar)`` context becomes *e*.  ``AppTo(w, covar)`` can only be
    renamed, so *e* must then be a ``CoVar``.
    """
    fv_e, fcv_e = free(e)
    return _sc(x, covar, e, fv_e, fcv_e)


def _sc(x, covar, e, fv_e, fcv_e):
    if isinstance(x, Var):
        return x
    if isinstance(x, Lam):
        if x.var in fv_e:
            _, fcv_b = free(x.body)
            if covar not in fcv_b:
                return x
            fv_b, _ = free(x.body)
            y = fresh_name(x.var, fv_e | fv_b)
            x = Lam(y, rename_var(x.body, x.var, y))
        return Lam(x.var, _sc(x.body, covar, e, fv_e, fcv_e))
    if isinstance(x, Mu):
        if x.covar == covar:
            return x
        if x.covar in fcv_e:
            _, fcv_c = free(x.cmd)
            if covar not in fcv_c:
                return x
            b = fresh_covar(x.covar, fcv_e | fcv_c | {covar})
            x = Mu(b, rename_covar(x.cmd, x.covar, b))
        return Mu(x.covar, _sc(x.cmd, covar, e, fv_e, fcv_e))
    if isinstance(x, Named):
        w = _sc(x.term, covar, e, fv_e, fcv_e)
        return plug(e, w) if x.covar == covar else Named(x.covar, w)
    if isinstance(x, CoVar):
        return e if x.covar == covar else x
    if isinstance(x, AppTo):
        w = _sc(x.fun, covar, e, fv_e, fcv_e)
        if x.covar != covar:
            return AppTo(w, x.covar)
        if not isinstance(e, CoVar):
            raise ValueError(f"cannot substitute {show(e)} for the target covariable of an AppTo context")
        return AppTo(w, e.covar)
    if isinstance(x, (App, ArgStack)):
        return with_children(x, [_sc(k, covar, e, fv_e, fcv_e) for k in children(x)])
    raise TypeError(f"not a lambda-mu node: {x!r}")


# ---------------------------------------------------------------------------
# one-step reduction

RULES = ("beta", "mu", "mu-prime", "rho", "theta")


def _allowed(rule: str, node, strategy: str) -> bool:
    if strategy == "free":
        return True
    if strategy == "cbn":
        return rule != "mu-prime"
    if strategy == "cbv":
        if rule in ("beta", "mu"):
            return is_value(node.arg)
        return True
    if strategy == "cbv-os":
        if rule == "beta":
            return is_value(node.arg)
        if rule == "mu-prime":
            return is_value(node.fun)
        return True
    raise ValueError(f"unknown strategy {strategy!r}; expected one of {STRATEGIES_LM}")


def _unclash(m: Mu, avoid: frozenset) -> Mu:
    if m.covar not in avoid:
        return m
    _, fcv = free(m.cmd)
    b = fresh_covar(m.covar, avoid | fcv)
    return Mu(b, rename_covar(m.cmd, m.covar, b))


def contractions(node, strategy: str = "free"):
    """``(rule, contractum, linear)`` for every redex rooted at *node*."""
    out = []
    if isinstance(node, App):
        f, a = node.fun, node.arg
        if isinstance(f, Lam) and _allowed("beta", node, strategy):
            linear = isinstance(a, Var) or count_var(f.body, f.var) <= 1
            out.append(("beta", subst_var(f.body, f.var, a), linear))
        if isinstance(f, Mu) and _allowed("mu", node, strategy):
            m = _unclash(f, free(a)[1])
            body = subst_covar(m.cmd, m.covar, ArgStack(CoVar(m.covar), a))
            out.append(("mu", Mu(m.covar, body), count_covar(m.cmd, m.covar) == 0))
        if isinstance(a, Mu) and _allowed("mu-prime", node, strategy):
            m = _unclash(a, free(f)[1])
            body = subst_covar(m.cmd, m.covar, AppTo(f, m.covar))
            out.append(("mu-prime", Mu(m.covar, body), count_covar(m.cmd, m.covar) == 0))
    elif isinstance(node, Named) and isinstance(node.term, Mu):
        m = node.term
        out.append(("rho", subst_covar(m.cmd, m.covar, CoVar(node.covar)), True))
    elif isinstance(node, Mu) and node.cmd.covar == node.covar:
        t = node.cmd.term
        if node.covar not in free(t)[1]:
            out.append(("theta", t, True))
    if strategy not in STRATEGIES_LM:
        raise ValueError(f"unknown strategy {strategy!r}; expected one of {STRATEGIES_LM}")
    for rule, res, linear in out:
        if linear:
            record_linear(
                "lm", rule, (node_count(node), lambda_count(node)), (node_count(res), lambda_count(res))
            )
    return out


def redexes(subject, strategy: str = "free") -> list[RedexInfo]:
    """All one-step redexes permitted by *strategy*, leftmost-outermost first."""
    if strategy not in STRATEGIES_LM:
        raise ValueError(f"unknown strategy {strategy!r}; expected one of {STRATEGIES_LM}")
    found: list[RedexInfo] = []

    def walk(node, path):
        for rule, res, linear in contractions(node, strategy):
            found.append(RedexInfo(rule, path, linear, replace_at(subject, path, res)))
        for i, k in enumerate(children(node)):
            walk(k, path + (i,))

    walk(subject, ())
    return found


def step(subject, redex: RedexInfo):
    """Fire *redex* on *subject*; raises StaleRedexError when it does not match."""
    node = subterm_at(subject, redex.position)
    for rule, res, _ in contractions(node, "free"):
        if rule == redex.rule:
            return replace_at(subject, redex.position, res)
    raise StaleRedexError(f"no {redex.rule} redex at {redex.position}")


def reduce(subject, strategy: str = "free", max_steps: int = 100, order: str = "leftmost-outermost") -> Trace:
    return reduce_generic(subject, lambda s: redexes(s, strategy), canon, max_steps, order)
