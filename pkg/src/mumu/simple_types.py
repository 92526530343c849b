"""Simple types, principal sequents and the derived cut rule.

Inference reads the typing rules syntax-directedly with one global
environment per run; unification makes the shared-domain side condition of
the binary rules automatic.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from . import lm, lmm
from .syntax import calc_of, show


@dataclass(frozen=True, slots=True)
class TVar:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True, slots=True)
class Arrow:
    dom: "SimpleType"
    cod: "SimpleType"

    def __str__(self):
        d = f"({self.dom})" if isinstance(self.dom, Arrow) else str(self.dom)
        return f"{d}->{self.cod}"


SimpleType = TVar | Arrow


class TypeClash(ValueError):
    """Unification failed: constructor clash or occurs-check."""


class Untypable(ValueError):
    pass


@dataclass(frozen=True)
class Sequent:
    """``Γ |- t : T | Δ``, ``c : (Γ |- Δ)`` or ``Γ | e : T |- Δ``."""

    form: str  # term, command, context
    gamma: dict = field(default_factory=dict)
    delta: dict = field(default_factory=dict)
    type: SimpleType | None = None

    def render(self, subject="_") -> str:
        s = subject if isinstance(subject, str) else show(subject)
        g = ", ".join(f"{x}:{t}" for x, t in sorted(self.gamma.items()))
        d = ", ".join(f"'{a}:{t}" for a, t in sorted(self.delta.items()))
        if self.form == "term":
            return f"{g} |- {s} : {self.type} | {d}".strip()
        if self.form == "command":
            inner = " ".join(p for p in (g, "|-", d) if p)
            return f"{s} : ({inner})"
        return f"{g} | {s} : {self.type} |- {d}".strip()

    def __str__(self):
        return self.render()


# ---------------------------------------------------------------------------
# unification


class Subst:
    """Triangular substitution on type variables with occurs-check."""

    def __init__(self):
        self.map: dict[str, SimpleType] = {}

    def resolve(self, t: SimpleType) -> SimpleType:
        while isinstance(t, TVar) and t.name in self.map:
            t = self.map[t.name]
        return t

    def apply(self, t: SimpleType) -> SimpleType:
        t = self.resolve(t)
        if isinstance(t, Arrow):
            return Arrow(self.apply(t.dom), self.apply(t.cod))
        return t

    def occurs(self, name: str, t: SimpleType) -> bool:
        t = self.resolve(t)
        if isinstance(t, TVar):
            return t.name == name
        return self.occurs(name, t.dom) or self.occurs(name, t.cod)

    def unify(self, a: SimpleType, b: SimpleType) -> None:
        a, b = self.resolve(a), self.resolve(b)
        if isinstance(a, TVar) and isinstance(b, TVar) and a.name == b.name:
            return
        if isinstance(a, TVar):
            if self.occurs(a.name, b):
                raise TypeClash(f"occurs check: {a} in {self.apply(b)}")
            self.map[a.name] = b
        elif isinstance(b, TVar):
            self.unify(b, a)
        else:
            self.unify(a.dom, b.dom)
            self.unify(a.cod, b.cod)


def match(pattern: SimpleType, target: SimpleType, binding: dict) -> bool:
    """One-way matching: extend *binding* so that pattern maps onto target."""
    if isinstance(pattern, TVar):
        bound = binding.get(pattern.name)
        if bound is None:
            binding[pattern.name] = target
            return True
        return bound == target
    if isinstance(target, Arrow):
        return match(pattern.dom, target.dom, binding) and match(pattern.cod, target.cod, binding)
    return False


# ---------------------------------------------------------------------------
# inference


class _Infer:
    def __init__(self):
        self.s = Subst()
        self.n = 0
        self.gamma: dict[str, SimpleType] = {}
        self.delta: dict[str, SimpleType] = {}

    def fresh(self) -> TVar:
        self.n += 1
        return TVar(f"_{self.n}")

    def var(self, name, scope):
        if name in scope:
            return scope[name]
        if name not in self.gamma:
            self.gamma[name] = self.fresh()
        return self.gamma[name]

    def covar(self, name, coscope):
        if name in coscope:
            return coscope[name]
        if name not in self.delta:
            self.delta[name] = self.fresh()
        return self.delta[name]

    # lambda-mu
    def lm(self, x, scope, coscope):
        if isinstance(x, lm.Var):
            return self.var(x.name, scope)
        if isinstance(x, lm.Lam):
            a = self.fresh()
            b = self.lm(x.body, {**scope, x.var: a}, coscope)
            return Arrow(a, b)
        if isinstance(x, lm.App):
            f = self.lm(x.fun, scope, coscope)
            a = self.lm(x.arg, scope, coscope)
            b = self.fresh()
            self.s.unify(f, Arrow(a, b))
            return b
        if isinstance(x, lm.Mu):
            a = self.fresh()
            self.lm(x.cmd, scope, {**coscope, x.covar: a})
            return a
        if isinstance(x, lm.Named):
            self.s.unify(self.covar(x.covar, coscope), self.lm(x.term, scope, coscope))
            return None
        if isinstance(x, lm.CoVar):
            return self.covar(x.covar, coscope)
        if isinstance(x, lm.AppTo):
            a, b = self.fresh(), self.fresh()
            self.s.unify(self.lm(x.fun, scope, coscope), Arrow(a, b))
            self.s.unify(self.covar(x.covar, coscope), b)
            return a
        if isinstance(x, lm.ArgStack):
            a = self.lm(x.arg, scope, coscope)
            b = self.lm(x.ctx, scope, coscope)
            return Arrow(a, b)
        raise TypeError(f"not a lambda-mu node: {x!r}")

    # lambda-bar-mu-mu-tilde
    def lmm(self, x, scope, coscope):
        if isinstance(x, lmm.Var):
            return self.var(x.name, scope)
        if isinstance(x, lmm.Lam):
            a = self.fresh()
            return Arrow(a, self.lmm(x.body, {**scope, x.var: a}, coscope))
        if isinstance(x, lmm.Mu):
            a = self.fresh()
            self.lmm(x.cmd, scope, {**coscope, x.covar: a})
            return a
        if isinstance(x, lmm.MuTilde):
            a = self.fresh()
            self.lmm(x.cmd, {**scope, x.var: a}, coscope)
            return a
        if isinstance(x, lmm.Cut):
            self.s.unify(self.lmm(x.term, scope, coscope), self.lmm(x.ctx, scope, coscope))
            return None
        if isinstance(x, lmm.CoVar):
            return self.covar(x.covar, coscope)
        if isinstance(x, lmm.Cons):
            return Arrow(self.lmm(x.head, scope, coscope), self.lmm(x.tail, scope, coscope))
        raise TypeError(f"not a lambda-bar-mu-mu-tilde node: {x!r}")

    def sequent(self, form, ty) -> Sequent:
        """Apply the substitution and rename variables X0, X1, ... in print order."""
        names: dict[str, TVar] = {}

        def norm(t):
            t = self.s.apply(t)
            if isinstance(t, TVar):
                if t.name not in names:
                    names[t.name] = TVar(f"X{len(names)}")
                return names[t.name]
            return Arrow(norm(t.dom), norm(t.cod))

        gamma = {x: norm(self.gamma[x]) for x in sorted(self.gamma)}
        ty = norm(ty) if ty is not None else None
        delta = {a: norm(self.delta[a]) for a in sorted(self.delta)}
        return Sequent(form, gamma, delta, ty)


def _form(x) -> str:
    return lm.sort_of(x) if calc_of(x) == "lm" else lmm.sort_of(x)


def infer(x) -> Sequent:
    """Principal sequent of a subject of either calculus; raises Untypable."""
    inf = _Infer()
    try:
        ty = inf.lm(x, {}, {}) if calc_of(x) == "lm" else inf.lmm(x, {}, {})
    except TypeClash as exc:
        raise Untypable(f"{show(x)}: {exc}") from exc
    return inf.sequent(_form(x), ty)


def infer_lm(x) -> Sequent:
    if calc_of(x) != "lm":
        raise TypeError("infer_lm expects a lambda-mu subject")
    return infer(x)


def infer_lmm(x) -> Sequent:
    if calc_of(x) != "lmm":
        raise TypeError("infer_lmm expects a lambda-bar-mu-mu-tilde subject")
    return infer(x)


def typable(x) -> bool:
    try:
        infer(x)
    except Untypable:
        return False
    return True


def subsumes(principal: Sequent, claimed: Sequent) -> bool:
    """Is *claimed* an instance of *principal* up to weakening?"""
    if principal.form != claimed.form:
        return False
    binding: dict = {}
    for env, target in ((principal.gamma, claimed.gamma), (principal.delta, claimed.delta)):
        for name, ty in env.items():
            if name not in target or not match(ty, target[name], binding):
                return False
    if principal.form != "command":
        if claimed.type is None or not match(principal.type, claimed.type, binding):
            return False
    return True


def check_sequent(subject, claimed: Sequent) -> bool:
    """True iff *claimed* is derivable for *subject* (calculus read off the subject)."""
    try:
        principal = infer(subject)
    except Untypable:
        return False
    return subsumes(principal, claimed)


# ---------------------------------------------------------------------------
# text format

_ARROW = "->"


def parse_type(text: str) -> SimpleType:
    tokens = re.findall(r"->|[()]|[A-Za-z_][A-Za-z0-9_]*|\S", text)
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def arrow():
        nonlocal pos
        left = atom()
        if peek() == _ARROW:
            pos += 1
            return Arrow(left, arrow())
        return left

    def atom():
        nonlocal pos
        tok = peek()
        if tok == "(":
            pos += 1
            t = arrow()
            if peek() != ")":
                raise ValueError(f"unbalanced parentheses in type {text!r}")
            pos += 1
            return t
        if tok is None or not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", tok):
            raise ValueError(f"bad type {text!r}")
        pos += 1
        return TVar(tok)

    t = arrow()
    if pos != len(tokens):
        raise ValueError(f"trailing input in type {text!r}")
    return t


def _env(text: str, covariables: bool) -> dict:
    env = {}
    text = text.strip()
    if not text:
        return env
    for item in text.split(","):
        name, sep, ty = item.partition(":")
        name = name.strip()
        if not sep:
            raise ValueError(f"bad binding {item!r}")
        if covariables:
            if not name.startswith("'"):
                raise ValueError(f"covariable binding needs a quote: {item!r}")
            name = name[1:]
        if name in env:
            raise ValueError(f"duplicate binding for {name!r}")
        env[name] = parse_type(ty)
    return env


def parse_sequent(text: str, form: str) -> Sequent:
    """Read the sequent format written by ``Sequent.render``.

    The subject slot is skipped; only environments and the type are kept.
    """
    text = text.strip()
    if form == "term":
        left, sep, right = text.partition("|-")
        if not sep:
            raise ValueError("term sequent needs '|-'")
        body, bar, d = right.rpartition("|")
        if not bar:
            raise ValueError("term sequent needs '| Δ'")
        _, colon, ty = body.rpartition(" : ")
        if not colon:
            raise ValueError("term sequent needs ' : T'")
        return Sequent("term", _env(left, False), _env(d, True), parse_type(ty))
    if form == "command":
        _, sep, rest = text.rpartition(" : (")
        if not sep or not rest.endswith(")"):
            raise ValueError("command sequent needs ' : (Γ |- Δ)'")
        g, turn, d = rest[:-1].partition("|-")
        if not turn:
            raise ValueError("command sequent needs '|-'")
        return Sequent("command", _env(g, False), _env(d, True))
    if form == "context":
        g, bar, rest = text.partition("|")
        if not bar:
            raise ValueError("context sequent needs 'Γ |'")
        body, turn, d = rest.rpartition("|-")
        if not turn:
            raise ValueError("context sequent needs '|-'")
        _, colon, ty = body.rpartition(" : ")
        if not colon:
            raise ValueError("context sequent needs ' : T'")
        return Sequent("context", _env(g, False), _env(d, True), parse_type(ty))
    raise ValueError(f"unknown sequent form {form!r}")


# ---------------------------------------------------------------------------
# derived cut rule


class CutRuleError(ValueError):
    pass


def cut_sequent(t, e) -> Sequent:
    """Conclusion ``e<t> : (Γ, Γ' |- Δ, Δ')`` built from the premises of a cut.

    Both premises are inferred separately, then their active types and shared
    bindings are unified.
    """
    try:
        st = infer_lm(t)
        se = infer_lm(e)
    except Untypable as exc:
        raise CutRuleError(f"premise untypable: {exc}") from exc
    # keep the two premises' type variables apart
    st = _tag(st, "l")
    se = _tag(se, "r")
    inf = _Infer()
    try:
        inf.s.unify(st.type, se.type)
        for env_a, env_b in ((st.gamma, se.gamma), (st.delta, se.delta)):
            for name in env_a.keys() & env_b.keys():
                inf.s.unify(env_a[name], env_b[name])
    except TypeClash as exc:
        raise CutRuleError(f"cut-type clash: {exc}") from exc
    inf.gamma = {**se.gamma, **st.gamma}
    inf.delta = {**se.delta, **st.delta}
    return inf.sequent("command", None)


def _tag(seq: Sequent, tag: str) -> Sequent:
    def go(t):
        if isinstance(t, TVar):
            return TVar(f"{tag}{t.name}")
        return Arrow(go(t.dom), go(t.cod))

    return Sequent(
        seq.form,
        {k: go(v) for k, v in seq.gamma.items()},
        {k: go(v) for k, v in seq.delta.items()},
        go(seq.type) if seq.type is not None else None,
    )
