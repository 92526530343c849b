"""Curien-Herbelin's lambda-bar-mu-mu-tilde calculus.

Commands ``<t|e>`` cut a term against a context.  Contexts are covariables,
cons cells ``t*e`` and tilde-mu binders ``mt x.c``.  Call-by-name works on
the T fragment (cons tails are stacks), call-by-value on the Q fragment (cons
heads are values).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .names import fresh_covar, fresh_name, is_reserved
from .steps import (
    STRATEGIES_LMM,
    RedexInfo,
    StaleRedexError,
    Trace,
    record_linear,
    reduce_generic,
)


class FragmentError(ValueError):
    """A strategy was asked to reduce a subject outside its grammar fragment."""


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
class Mu:
    covar: str
    cmd: "Cut"

    def __str__(self):
        return show(self)


@dataclass(frozen=True, slots=True)
class Cut:
    term: "Term"
    ctx: "Context"

    def __str__(self):
        return show(self)


@dataclass(frozen=True, slots=True)
class CoVar:
    covar: str

    def __str__(self):
        return show(self)


@dataclass(frozen=True, slots=True)
class Cons:
    head: "Term"
    tail: "Context"

    def __str__(self):
        return show(self)


@dataclass(frozen=True, slots=True)
class MuTilde:
    var: str
    cmd: Cut

    def __str__(self):
        return show(self)


Term = Union[Var, Lam, Mu]
Command = Cut
Context = Union[CoVar, Cons, MuTilde]

TERM_TYPES = (Var, Lam, Mu)
CONTEXT_TYPES = (CoVar, Cons, MuTilde)


def show(x) -> str:
    from .syntax import print_lmm

    return print_lmm(x)


def sort_of(x) -> str:
    if isinstance(x, TERM_TYPES):
        return "term"
    if isinstance(x, Cut):
        return "command"
    if isinstance(x, CONTEXT_TYPES):
        return "context"
    raise TypeError(f"not a lambda-bar-mu-mu-tilde node: {x!r}")


def children(n) -> tuple:
    if isinstance(n, (Var, CoVar)):
        return ()
    if isinstance(n, Lam):
        return (n.body,)
    if isinstance(n, (Mu, MuTilde)):
        return (n.cmd,)
    if isinstance(n, Cut):
        return (n.term, n.ctx)
    if isinstance(n, Cons):
        return (n.head, n.tail)
    raise TypeError(f"not a lambda-bar-mu-mu-tilde node: {n!r}")


def with_children(n, kids):
    if isinstance(n, Lam):
        return Lam(n.var, kids[0])
    if isinstance(n, Mu):
        return Mu(n.covar, kids[0])
    if isinstance(n, MuTilde):
        return MuTilde(n.var, kids[0])
    if isinstance(n, Cut):
        return Cut(kids[0], kids[1])
    if isinstance(n, Cons):
        return Cons(kids[0], kids[1])
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


def is_stack(e) -> bool:
    while isinstance(e, Cons):
        e = e.tail
    return isinstance(e, CoVar)


def in_T(x) -> bool:
    """Membership in the call-by-name grammar: every cons tail is a stack."""
    if isinstance(x, Cons) and isinstance(x.tail, MuTilde):
        return False
    return all(in_T(k) for k in children(x))


def in_Q(x) -> bool:
    """Membership in the call-by-value grammar: every cons head is a value."""
    if isinstance(x, Cons) and not is_value(x.head):
        return False
    return all(in_Q(k) for k in children(x))


# ---------------------------------------------------------------------------
# free variables and alpha-equivalence


def free(x) -> tuple[frozenset, frozenset]:
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
    elif isinstance(x, Mu):
        _free(x.cmd, bv, bcv | {x.covar}, fv, fcv)
    elif isinstance(x, MuTilde):
        _free(x.cmd, bv | {x.var}, bcv, fv, fcv)
    elif isinstance(x, CoVar):
        if x.covar not in bcv:
            fcv.add(x.covar)
    elif isinstance(x, (Cut, Cons)):
        for k in children(x):
            _free(k, bv, bcv, fv, fcv)
    else:
        raise TypeError(f"not a lambda-bar-mu-mu-tilde node: {x!r}")


def all_names(x) -> tuple[set, set]:
    vs: set[str] = set()
    cs: set[str] = set()
    stack = [x]
    while stack:
        n = stack.pop()
        if isinstance(n, Var):
            vs.add(n.name)
        elif isinstance(n, (Lam, MuTilde)):
            vs.add(n.var)
        elif isinstance(n, (Mu, CoVar)):
            cs.add(n.covar)
        stack.extend(children(n))
    return vs, cs


def count_var(x, name: str) -> int:
    if isinstance(x, Var):
        return int(x.name == name)
    if isinstance(x, (Lam, MuTilde)) and x.var == name:
        return 0
    return sum(count_var(k, name) for k in children(x))


def count_covar(x, name: str) -> int:
    if isinstance(x, CoVar):
        return int(x.covar == name)
    if isinstance(x, Mu) and x.covar == name:
        return 0
    return sum(count_covar(k, name) for k in children(x))


def canon(x, discount_reserved: bool = False) -> str:
    """Canonical string; equal iff alpha-equivalent (see ``lm.canon``)."""
    out: list[str] = []
    venv: dict[str, list[int]] = {}
    cenv: dict[str, list[int]] = {}
    depth = [0, 0]

    def go(n):
        if isinstance(n, Var):
            levels = venv.get(n.name)
            out.append(f"#{levels[-1]}" if levels else n.name)
        elif isinstance(n, (Lam, MuTilde)):
            out.append("(L" if isinstance(n, Lam) else "(T")
            venv.setdefault(n.var, []).append(depth[0])
            depth[0] += 1
            go(n.body if isinstance(n, Lam) else n.cmd)
            venv[n.var].pop()
            depth[0] -= 1
            out.append(")")
        elif isinstance(n, Mu):
            out.append("(M")
            cenv.setdefault(n.covar, []).append(depth[1])
            depth[1] += 1
            go(n.cmd)
            cenv[n.covar].pop()
            depth[1] -= 1
            out.append(")")
        elif isinstance(n, CoVar):
            levels = cenv.get(n.covar)
            if levels:
                out.append(f"^{levels[-1]}")
            elif discount_reserved and is_reserved(n.covar):
                out.append("'?")
            else:
                out.append("'" + n.covar)
        elif isinstance(n, Cut):
            out.append("(C")
            go(n.term)
            go(n.ctx)
            out.append(")")
        elif isinstance(n, Cons):
            out.append("(S")
            go(n.head)
            go(n.tail)
            out.append(")")
        else:
            raise TypeError(f"not a lambda-bar-mu-mu-tilde node: {n!r}")
        out.append(" ")

    go(x)
    return "".join(out)


def alpha_eq(a, b, discount_reserved: bool = False) -> bool:
    return canon(a, discount_reserved) == canon(b, discount_reserved)


# ---------------------------------------------------------------------------
# substitution


def rename_var(x, old: str, new: str):
    return subst_var(x, old, Var(new))


def rename_covar(x, old: str, new: str):
    return subst_covar(x, old, CoVar(new))


def subst_var(x, name: str, u):
    """Capture-avoiding ``x[name := u]`` for a term *u*."""
    fv_u, fcv_u = free(u)
    return _sv(x, name, u, fv_u, fcv_u)


def _sv(x, name, u, fv_u, fcv_u):
    if isinstance(x, Var):
        return u if x.name == name else x
    if isinstance(x, (Lam, MuTilde)):
        if x.var == name:
            return x
        inner = x.body if isinstance(x, Lam) else x.cmd
        if x.var in fv_u:
            fv_b, _ = free(inner)
            if name not in fv_b:
                return x
            y = fresh_name(x.var, fv_u | fv_b | {name})
            inner = rename_var(inner, x.var, y)
            x = type(x)(y, inner)
        return type(x)(x.var, _sv(inner, name, u, fv_u, fcv_u))
    if isinstance(x, Mu):
        if x.covar in fcv_u:
            fv_c, fcv_c = free(x.cmd)
            if name not in fv_c:
                return x
            b = fresh_covar(x.covar, fcv_u | fcv_c)
            x = Mu(b, rename_covar(x.cmd, x.covar, b))
        return Mu(x.covar, _sv(x.cmd, name, u, fv_u, fcv_u))
    if isinstance(x, CoVar):
        return x
    return with_children(x, [_sv(k, name, u, fv_u, fcv_u) for k in children(x)])


def subst_covar(x, covar: str, e):
    """Capture-avoiding ``x[covar := e]`` for a context *e*."""
    fv_e, fcv_e = free(e)
    return _sc(x, covar, e, fv_e, fcv_e)


def _sc(x, covar, e, fv_e, fcv_e):
    if isinstance(x, CoVar):
        return e if x.covar == covar else x
    if isinstance(x, Var):
        return x
    if isinstance(x, (Lam, MuTilde)):
        inner = x.body if isinstance(x, Lam) else x.cmd
        if x.var in fv_e:
            fv_b, fcv_b = free(inner)
            if covar not in fcv_b:
                return x
            y = fresh_name(x.var, fv_e | fv_b)
            inner = rename_var(inner, x.var, y)
            x = type(x)(y, inner)
        return type(x)(x.var, _sc(inner, covar, e, fv_e, fcv_e))
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
    return with_children(x, [_sc(k, covar, e, fv_e, fcv_e) for k in children(x)])


# ---------------------------------------------------------------------------
# one-step reduction

RULES = ("beta", "beta-prime", "mu", "mu-tilde", "theta")


def check_fragment(subject, strategy: str) -> None:
    if strategy not in STRATEGIES_LMM:
        raise ValueError(f"unknown strategy {strategy!r}; expected one of {STRATEGIES_LMM}")
    if strategy == "cbn" and not in_T(subject):
        raise FragmentError(f"call-by-name needs a T-fragment subject: {show(subject)}")
    if strategy == "cbv" and not in_Q(subject):
        raise FragmentError(f"call-by-value needs a Q-fragment subject: {show(subject)}")


def contractions(node, strategy: str = "free", beta_prime: bool = False):
    """``(rule, contractum, linear)`` for every redex rooted at *node*."""
    out = []
    if isinstance(node, Cut):
        t, e = node.term, node.ctx
        if isinstance(t, Lam) and isinstance(e, Cons):
            x, body, tail = t.var, t.body, e.tail
            if x in free(tail)[0]:
                y = fresh_name(x, free(tail)[0] | free(body)[0])
                x, body = y, rename_var(body, t.var, y)
            out.append(("beta", Cut(e.head, MuTilde(x, Cut(body, tail))), True))
            if beta_prime:
                linear = isinstance(e.head, Var) or count_var(t.body, t.var) <= 1
                out.append(("beta-prime", Cut(subst_var(t.body, t.var, e.head), tail), linear))
        if isinstance(t, Mu) and (strategy != "cbn" or is_stack(e)):
            linear = isinstance(e, CoVar) or count_covar(t.cmd, t.covar) <= 1
            out.append(("mu", subst_covar(t.cmd, t.covar, e), linear))
        if isinstance(e, MuTilde) and (strategy != "cbv" or is_value(t)):
            linear = isinstance(t, Var) or count_var(e.cmd, e.var) <= 1
            out.append(("mu-tilde", subst_var(e.cmd, e.var, t), linear))
    elif isinstance(node, Mu) and isinstance(node.cmd.ctx, CoVar) and node.cmd.ctx.covar == node.covar:
        t = node.cmd.term
        if node.covar not in free(t)[1]:
            out.append(("theta", t, True))
    for rule, res, linear in out:
        if linear:
            record_linear(
                "lmm", rule, (node_count(node), lambda_count(node)), (node_count(res), lambda_count(res))
            )
    return out


def redexes(subject, strategy: str = "free", beta_prime: bool = False) -> list[RedexInfo]:
    """All one-step redexes under *strategy*, leftmost-outermost first.

    ``cbn`` and ``cbv`` reject subjects outside the T and Q fragments.
    """
    check_fragment(subject, strategy)
    found: list[RedexInfo] = []

    def walk(node, path):
        for rule, res, linear in contractions(node, strategy, beta_prime):
            found.append(RedexInfo(rule, path, linear, replace_at(subject, path, res)))
        for i, k in enumerate(children(node)):
            walk(k, path + (i,))

    walk(subject, ())
    return found


def step(subject, redex: RedexInfo):
    node = subterm_at(subject, redex.position)
    for rule, res, _ in contractions(node, "free", beta_prime=True):
        if rule == redex.rule:
            return replace_at(subject, redex.position, res)
    raise StaleRedexError(f"no {redex.rule} redex at {redex.position}")


def reduce(
    subject,
    strategy: str = "free",
    max_steps: int = 100,
    order: str = "leftmost-outermost",
    beta_prime: bool = False,
) -> Trace:
    return reduce_generic(subject, lambda s: redexes(s, strategy, beta_prime), canon, max_steps, order)
