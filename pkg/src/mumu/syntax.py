"""Concrete syntax for both calculi.

lambda-mu::

    term    ::= atom+                        (application, left-assoc)
    atom    ::= ident | "\\" ident "." term | "mu" coident "." command | "(" term ")"
    command ::= "[" coident "]" term
    context ::= "[" coident "]" "#" | "[" coident "]" "(" term "#" ")" | context "@" term

lambda-bar-mu-mu-tilde::

    term    ::= ident | "\\" ident "." term | "mu" coident "." command | "(" term ")"
    command ::= "<" term "|" context ">"
    context ::= coident | term "*" context | "mt" ident "." command | "(" context ")"

Identifiers are lowercase alphanumeric; covariables carry a leading quote.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from . import lm, lmm

KEYWORDS = {"mu", "mt"}
SORTS = ("term", "command", "context")

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<coident>'[a-z][a-z0-9]*)
  | (?P<ident>[a-z][a-z0-9]*)
  | (?P<sym>[\\.()\[\]#@<>|*])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class SourceSpan:
    begin: int
    end: int
    line: int
    column: int


class ParseError(ValueError):
    def __init__(self, message: str, span: SourceSpan | None = None):
        self.span = span
        where = f"{span.line}:{span.column}: " if span else ""
        super().__init__(where + message)


@dataclass(frozen=True)
class Token:
    kind: str  # ident, coident, kw, sym, eof
    text: str
    span: SourceSpan


def _span(source: str, begin: int, end: int) -> SourceSpan:
    line = source.count("\n", 0, begin) + 1
    column = begin - (source.rfind("\n", 0, begin) + 1) + 1
    return SourceSpan(begin, end, line, column)


def tokenize(source: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(source):
        m = _TOKEN.match(source, pos)
        if m is None:
            raise ParseError(f"unexpected character {source[pos]!r}", _span(source, pos, pos + 1))
        kind = m.lastgroup
        if kind != "ws":
            text = m.group()
            if kind == "ident" and text in KEYWORDS:
                kind = "kw"
            tokens.append(Token(kind, text, _span(source, m.start(), m.end())))
        pos = m.end()
    tokens.append(Token("eof", "", _span(source, len(source), len(source))))
    return tokens


class _Parser:
    def __init__(self, source: str):
        self.source = source
        self.tokens = tokenize(source)
        self.i = 0
        self.spans: dict[int, SourceSpan] = {}

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def at(self, text: str) -> bool:
        return self.tok.text == text and self.tok.kind in ("sym", "kw")

    def expect(self, text: str) -> Token:
        if not self.at(text):
            raise ParseError(f"expected {text!r}, found {self.tok.text or 'end of input'!r}", self.tok.span)
        return self.advance()

    def advance(self) -> Token:
        t = self.tok
        self.i += 1
        return t

    def ident(self) -> str:
        if self.tok.kind != "ident":
            raise ParseError(f"expected identifier, found {self.tok.text or 'end of input'!r}", self.tok.span)
        return self.advance().text

    def coident(self) -> str:
        if self.tok.kind != "coident":
            raise ParseError(f"expected covariable, found {self.tok.text or 'end of input'!r}", self.tok.span)
        return self.advance().text[1:]

    def mark(self, node, start: Token):
        end = self.tokens[self.i - 1].span.end
        self.spans[id(node)] = _span(self.source, start.span.begin, end)
        return node

    def finish(self, node):
        if self.tok.kind != "eof":
            raise ParseError(f"unexpected {self.tok.text!r} after complete input", self.tok.span)
        return node


class _LmParser(_Parser):
    def atom_start(self) -> bool:
        t = self.tok
        return t.kind == "ident" or (t.kind == "kw" and t.text == "mu") or t.text in ("\\", "(") and t.kind == "sym"

    def term(self):
        start = self.tok
        if not self.atom_start():
            raise ParseError(f"expected a term, found {self.tok.text or 'end of input'!r}", self.tok.span)
        t = self.atom()
        while self.atom_start():
            t = self.mark(lm.App(t, self.atom()), start)
        return t

    def atom(self):
        start = self.tok
        if start.kind == "ident":
            return self.mark(lm.Var(self.advance().text), start)
        if self.at("\\"):
            self.advance()
            x = self.ident()
            self.expect(".")
            return self.mark(lm.Lam(x, self.term()), start)
        if self.at("mu"):
            self.advance()
            a = self.coident()
            self.expect(".")
            return self.mark(lm.Mu(a, self.command()), start)
        self.expect("(")
        t = self.term()
        self.expect(")")
        return t

    def command(self):
        start = self.tok
        if self.at("(") and self.tokens[self.i + 1].text == "[":
            self.advance()
            c = self.command()
            self.expect(")")
            return c
        self.expect("[")
        a = self.coident()
        self.expect("]")
        return self.mark(lm.Named(a, self.term()), start)

    def context(self):
        start = self.tok
        self.expect("[")
        a = self.coident()
        self.expect("]")
        if self.at("#"):
            self.advance()
            e = self.mark(lm.CoVar(a), start)
        else:
            self.expect("(")
            u = self.term()
            self.expect("#")
            self.expect(")")
            e = self.mark(lm.AppTo(u, a), start)
        while self.at("@"):
            self.advance()
            e = self.mark(lm.ArgStack(e, self.term()), start)
        return e


class _LmmParser(_Parser):
    def term(self):
        start = self.tok
        if start.kind == "ident":
            return self.mark(lmm.Var(self.advance().text), start)
        if self.at("\\"):
            self.advance()
            x = self.ident()
            self.expect(".")
            return self.mark(lmm.Lam(x, self.term()), start)
        if self.at("mu"):
            self.advance()
            a = self.coident()
            self.expect(".")
            return self.mark(lmm.Mu(a, self.command()), start)
        if self.at("("):
            self.advance()
            t = self.term()
            self.expect(")")
            return t
        raise ParseError(f"expected a term, found {self.tok.text or 'end of input'!r}", self.tok.span)

    def command(self):
        start = self.tok
        self.expect("<")
        t = self.term()
        self.expect("|")
        e = self.context()
        self.expect(">")
        return self.mark(lmm.Cut(t, e), start)

    def context(self):
        start = self.tok
        if self.tok.kind == "coident":
            return self.mark(lmm.CoVar(self.coident()), start)
        if self.at("mt"):
            self.advance()
            x = self.ident()
            self.expect(".")
            return self.mark(lmm.MuTilde(x, self.command()), start)
        if self.at("("):
            # "(" context ")" or a parenthesised cons head
            saved = self.i
            try:
                self.advance()
                e = self.context()
                self.expect(")")
                return e
            except ParseError:
                self.i = saved
        t = self.term()
        self.expect("*")
        return self.mark(lmm.Cons(t, self.context()), start)


def parse_with_spans(source: str, calc: str, sort: str):
    """Parse *source*; returns ``(subject, spans)`` with spans keyed by node id."""
    if sort not in SORTS:
        raise ValueError(f"unknown sort {sort!r}")
    if calc == "lm":
        p = _LmParser(source)
    elif calc == "lmm":
        p = _LmmParser(source)
    else:
        raise ValueError(f"unknown calculus {calc!r}")
    node = p.finish(getattr(p, sort)())
    return node, p.spans


def parse(source: str, calc: str, sort: str = "term"):
    return parse_with_spans(source, calc, sort)[0]


def parse_lm(source: str, sort: str = "term"):
    return parse(source, "lm", sort)


def parse_lmm(source: str, sort: str = "term"):
    return parse(source, "lmm", sort)


# ---------------------------------------------------------------------------
# printing

# term positions: free (nothing follows), function (arguments follow),
# argument (more follows), last argument
_FREE, _FUN, _ARG, _LAST = range(4)


def _lm_term(t, pos: int) -> str:
    if isinstance(t, lm.Var):
        return t.name
    if isinstance(t, lm.App):
        if pos in (_ARG, _LAST):
            return "(" + _lm_term(t, _FREE) + ")"
        arg_pos = _LAST if pos == _FREE else _ARG
        return _lm_term(t.fun, _FUN) + " " + _lm_term(t.arg, arg_pos)
    if isinstance(t, lm.Lam):
        s = f"\\{t.var}.{_lm_term(t.body, _FREE)}"
    elif isinstance(t, lm.Mu):
        s = f"mu '{t.covar}.{_lm_cmd(t.cmd)}"
    else:
        raise TypeError(f"not a lambda-mu term: {t!r}")
    return "(" + s + ")" if pos in (_FUN, _ARG) else s


def _lm_cmd(c) -> str:
    return f"['{c.covar}]{_lm_term(c.term, _FREE)}"


def _lm_ctx(e) -> str:
    if isinstance(e, lm.CoVar):
        return f"['{e.covar}]#"
    if isinstance(e, lm.AppTo):
        return f"['{e.covar}]({_lm_term(e.fun, _FREE)} #)"
    if isinstance(e, lm.ArgStack):
        return f"{_lm_ctx(e.ctx)} @ {_lm_term(e.arg, _FREE)}"
    raise TypeError(f"not a lambda-mu context: {e!r}")


def print_lm(x) -> str:
    if isinstance(x, lm.Named):
        return _lm_cmd(x)
    if isinstance(x, lm.CONTEXT_TYPES):
        return _lm_ctx(x)
    return _lm_term(x, _FREE)


def _lmm_term(t) -> str:
    if isinstance(t, lmm.Var):
        return t.name
    if isinstance(t, lmm.Lam):
        return f"\\{t.var}.{_lmm_term(t.body)}"
    if isinstance(t, lmm.Mu):
        return f"mu '{t.covar}.{_lmm_cmd(t.cmd)}"
    raise TypeError(f"not a lambda-bar-mu-mu-tilde term: {t!r}")


def _lmm_cmd(c) -> str:
    t, e = _lmm_term(c.term), _lmm_ctx(c.ctx)
    bar = " | " if " " in t or " " in e else "|"
    return f"<{t}{bar}{e}>"


def _lmm_ctx(e) -> str:
    if isinstance(e, lmm.CoVar):
        return "'" + e.covar
    if isinstance(e, lmm.Cons):
        return f"{_lmm_term(e.head)}*{_lmm_ctx(e.tail)}"
    if isinstance(e, lmm.MuTilde):
        return f"mt {e.var}.{_lmm_cmd(e.cmd)}"
    raise TypeError(f"not a lambda-bar-mu-mu-tilde context: {e!r}")


def print_lmm(x) -> str:
    if isinstance(x, lmm.Cut):
        return _lmm_cmd(x)
    if isinstance(x, lmm.CONTEXT_TYPES):
        return _lmm_ctx(x)
    return _lmm_term(x)


def show(x) -> str:
    """Print a node of either calculus."""
    if isinstance(x, (lm.Var, lm.Lam, lm.App, lm.Mu, lm.Named, *lm.CONTEXT_TYPES)):
        return print_lm(x)
    return print_lmm(x)


def calc_of(x) -> str:
    if isinstance(x, (lm.Var, lm.Lam, lm.App, lm.Mu, lm.Named, *lm.CONTEXT_TYPES)):
        return "lm"
    if isinstance(x, (*lmm.TERM_TYPES, lmm.Cut, *lmm.CONTEXT_TYPES)):
        return "lmm"
    raise TypeError(f"not a syntax node: {x!r}")
