"""Translations between the two calculi.

``dag`` maps lambda-mu into lambda-bar-mu-mu-tilde, ``circ`` maps back.  Both
draw binder names from one ``Fresh`` supply seeded with every name of the
enclosing subject.  The covariable ``circ`` invents for a tilde-mu context is
taken from the reserved ``k<digits>`` namespace.
"""

from __future__ import annotations

from . import lm, lmm
from .names import Fresh


def _supply(x, names_of) -> Fresh:
    vs, cs = names_of(x)
    return Fresh(vs, cs)


def dag(x, fresh: Fresh | None = None):
    """lambda-mu term, command or context to its lambda-bar-mu-mu-tilde image."""
    if fresh is None:
        fresh = _supply(x, lm.all_names)
    return _dag(x, fresh)


def _dag(x, fresh):
    if isinstance(x, lm.Var):
        return lmm.Var(x.name)
    if isinstance(x, lm.Lam):
        return lmm.Lam(x.var, _dag(x.body, fresh))
    if isinstance(x, lm.App):
        u, v = _dag(x.fun, fresh), _dag(x.arg, fresh)
        y, b = fresh.var("y"), fresh.covar("b")
        inner = lmm.Cut(u, lmm.Cons(lmm.Var(y), lmm.CoVar(b)))
        return lmm.Mu(b, lmm.Cut(v, lmm.MuTilde(y, inner)))
    if isinstance(x, lm.Mu):
        return lmm.Mu(x.covar, _dag(x.cmd, fresh))
    if isinstance(x, lm.Named):
        return lmm.Cut(_dag(x.term, fresh), lmm.CoVar(x.covar))
    if isinstance(x, lm.CoVar):
        return lmm.CoVar(x.covar)
    if isinstance(x, lm.AppTo):
        t = _dag(x.fun, fresh)
        y = fresh.var("y")
        return lmm.MuTilde(y, lmm.Cut(t, lmm.Cons(lmm.Var(y), lmm.CoVar(x.covar))))
    if isinstance(x, lm.ArgStack):
        return lmm.Cons(_dag(x.arg, fresh), _dag(x.ctx, fresh))
    raise TypeError(f"not a lambda-mu node: {x!r}")


def circ(x, fresh: Fresh | None = None):
    """lambda-bar-mu-mu-tilde term, command or context back to lambda-mu."""
    if fresh is None:
        fresh = _supply(x, lmm.all_names)
    return _circ(x, fresh)


def _circ(x, fresh):
    if isinstance(x, lmm.Var):
        return lm.Var(x.name)
    if isinstance(x, lmm.Lam):
        return lm.Lam(x.var, _circ(x.body, fresh))
    if isinstance(x, lmm.Mu):
        return lm.Mu(x.covar, _circ(x.cmd, fresh))
    if isinstance(x, lmm.Cut):
        return lm.plug(_circ(x.ctx, fresh), _circ(x.term, fresh))
    if isinstance(x, lmm.CoVar):
        return lm.CoVar(x.covar)
    if isinstance(x, lmm.Cons):
        return lm.ArgStack(_circ(x.tail, fresh), _circ(x.head, fresh))
    if isinstance(x, lmm.MuTilde):
        c = _circ(x.cmd, fresh)
        d = fresh.covar("d")
        k = fresh.reserved()
        return lm.AppTo(lm.Lam(x.var, lm.Mu(d, c)), k)
    raise TypeError(f"not a lambda-bar-mu-mu-tilde node: {x!r}")
