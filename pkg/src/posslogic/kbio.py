"""The ``.pkb`` text format.

::

    # comment
    Elected(Peter) | Elected(Mary) [N 1].
    Supports(John, Mary)           [Pi 0.8].
    p & q                          [Pi 0.4].

Connectives by increasing binding strength: ``->`` (right associative),
``|``, ``&``, ``!``.  ``True`` and ``False`` are constants.  Inside an
atom's argument list an identifier starting with a lowercase letter is a
variable and one starting with an uppercase letter is a constant.  Note
that this is the reverse of the Prolog convention.  Variables may only
occur in statements that are a disjunction of literals.

Degrees are exact: a decimal with at most nine fractional digits, or a
``p/q`` fraction.  ``P`` is accepted as an alias of ``Pi``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional

from .errors import ParseError
from .syntax import (
    And, Atom, Bottom, Clause, Formula, Implies, KnowledgeBase, Not, Or, PossFormula,
    Term, Top, as_clause, atoms_of, conj, disj,
)
from .valuation import Mode, Valuation, format_degree

MAX_FRACTION_DIGITS = 9

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r\f\v]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<number>\d+(?:\.\d+|/\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*(?:-[A-Za-z0-9_]+)*)
  | (?P<op>->|[!&|()\[\],.])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(text: str) -> List[Token]:
    out = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        col = pos - line_start + 1
        if m is None:
            raise ParseError(line, col, "unexpected character", text[pos])
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind not in ("ws", "comment"):
            out.append(Token(kind, m.group(), line, col))
        pos = m.end()
    out.append(Token("eof", "", line, pos - line_start + 1))
    return out


def parse_degree(text: str) -> Fraction:
    if "." in text and len(text.split(".", 1)[1]) > MAX_FRACTION_DIGITS:
        raise ValueError(f"at most {MAX_FRACTION_DIGITS} fractional digits")
    if "/" in text and int(text.split("/", 1)[1]) == 0:
        raise ValueError("zero denominator")
    return Fraction(text)


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0
        self.arity: Dict[str, int] = {}

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def error(self, message: str, tok: Optional[Token] = None) -> ParseError:
        tok = tok or self.tok
        return ParseError(tok.line, tok.column, message, tok.text)

    def take(self, kind: str, text: Optional[str] = None) -> Token:
        tok = self.tok
        if tok.kind != kind or (text is not None and tok.text != text):
            want = repr(text) if text is not None else kind
            got = "end of input" if tok.kind == "eof" else repr(tok.text)
            raise self.error(f"expected {want}, found {got}")
        self.pos += 1
        return tok

    def at(self, text: str) -> bool:
        return self.tok.kind == "op" and self.tok.text == text

    def statement(self) -> PossFormula:
        start = self.tok
        body = self.formula()
        self.take("op", "[")
        weight = self.weight()
        self.take("op", "]")
        self.take("op", ".")
        if as_clause(body) is None and any(not a.is_ground for a in atoms_of(body)):
            raise self.error("variables are only allowed in clauses", start)
        return PossFormula(body, weight)

    def weight(self) -> Valuation:
        mode_tok = self.tok
        if mode_tok.kind != "ident" or mode_tok.text not in ("N", "Pi", "P"):
            raise self.error("expected a weight mode N or Pi")
        self.pos += 1
        num = self.tok
        if num.kind != "number":
            raise self.error("expected a degree")
        self.pos += 1
        try:
            degree = parse_degree(num.text)
        except ValueError as exc:
            raise self.error(str(exc), num) from None
        mode = Mode.N if mode_tok.text == "N" else Mode.PI
        if degree > 1:
            raise self.error("degree must not exceed 1", num)
        if mode is Mode.N and degree == 0:
            raise self.error("necessity degree must be strictly positive", num)
        return Valuation(mode, degree)

    def formula(self) -> Formula:
        left = self.disjunction()
        if self.at("->"):
            self.pos += 1
            return Implies(left, self.formula())
        return left

    def disjunction(self) -> Formula:
        parts = [self.conjunction()]
        while self.at("|"):
            self.pos += 1
            parts.append(self.conjunction())
        return disj(*parts)

    def conjunction(self) -> Formula:
        parts = [self.unary()]
        while self.at("&"):
            self.pos += 1
            parts.append(self.unary())
        return conj(*parts)

    def unary(self) -> Formula:
        if self.at("!"):
            self.pos += 1
            return Not(self.unary())
        return self.primary()

    def primary(self) -> Formula:
        if self.at("("):
            self.pos += 1
            inner = self.formula()
            self.take("op", ")")
            return inner
        tok = self.tok
        if tok.kind != "ident":
            got = "end of input" if tok.kind == "eof" else repr(tok.text)
            raise self.error(f"expected a formula, found {got}")
        self.pos += 1
        if tok.text in ("True", "False"):
            if self.at("("):
                raise self.error(f"{tok.text} is a constant, not a predicate", tok)
            return Top() if tok.text == "True" else Bottom()
        args: List[Term] = []
        if self.at("("):
            self.pos += 1
            args.append(self.term())
            while self.at(","):
                self.pos += 1
                args.append(self.term())
            self.take("op", ")")
        known = self.arity.setdefault(tok.text, len(args))
        if known != len(args):
            raise self.error(f"{tok.text} used with arity {len(args)}, earlier with {known}", tok)
        return Atom(tok.text, tuple(args))

    def term(self) -> Term:
        tok = self.tok
        if tok.kind != "ident":
            raise self.error("expected a term")
        self.pos += 1
        head = tok.text[0]
        return Term(tok.text, head.islower() or head == "_")


def parse_kb(text: str) -> KnowledgeBase:
    parser = _Parser(text)
    entries = []
    while parser.tok.kind != "eof":
        entries.append(parser.statement())
    return KnowledgeBase(entries)


def parse_formula(text: str) -> Formula:
    parser = _Parser(text)
    f = parser.formula()
    if parser.tok.kind != "eof":
        raise parser.error(f"unexpected {parser.tok.text!r} after formula")
    return f


def read_kb(path) -> KnowledgeBase:
    with open(path, encoding="utf-8") as fh:
        return parse_kb(fh.read())


# -- printing ----------------------------------------------------------------

_PREC = {Implies: 1, Or: 2, And: 3, Not: 4}


def _prec(f: Formula) -> int:
    return _PREC.get(type(f), 5)


def format_formula(f: Formula) -> str:
    return _fmt(f)


def _wrap(f: Formula, need: bool) -> str:
    s = _fmt(f)
    return f"({s})" if need else s


def _fmt(f: Formula) -> str:
    if isinstance(f, Clause):
        return str(f)
    if isinstance(f, Atom):
        return str(f)
    if isinstance(f, Top):
        return "True"
    if isinstance(f, Bottom):
        return "False"
    if isinstance(f, Not):
        return "!" + _wrap(f.arg, _prec(f.arg) < 4)
    if isinstance(f, And):
        return " & ".join(_wrap(a, _prec(a) <= 3) for a in f.args)
    if isinstance(f, Or):
        return " | ".join(_wrap(a, _prec(a) <= 2 or isinstance(a, Clause)) for a in f.args)
    if isinstance(f, Implies):
        return f"{_wrap(f.left, _prec(f.left) <= 1)} -> {_fmt(f.right)}"
    raise TypeError(f"not a formula: {f!r}")


def format_weight(w: Valuation) -> str:
    return f"{w.mode} {format_degree(w.degree)}"


def format_entry(e: PossFormula) -> str:
    return f"{format_formula(e.body)} [{format_weight(e.weight)}]."


def print_kb(kb: KnowledgeBase) -> str:
    return "".join(format_entry(e) + "\n" for e in kb)
