"""Textual format for annotated knowledge bases and queries.

One axiom per line, optionally prefixed with a probability::

    0.2 :: Nihilist <= GreatMan
    exists killed. Top <= Nihilist
    0.6 :: (raskolnikov, alyona) : killed
    # comments run to end of line

Concepts use the keywords ``Top``, ``Bottom``, ``not``, ``and``, ``or``,
``exists`` and ``forall``; ``not`` binds tighter than ``and``, which binds
tighter than ``or``, and a quantifier's filler extends only to the next
binary operator.  Chains of one operator parse right-nested.  Serialized
output round-trips to a structurally identical knowledge base, including
the axiom order and therefore the axiom indices.
"""

from __future__ import annotations

import re
from typing import NamedTuple

from .kb import (
    And,
    AnnotatedAxiom,
    Atomic,
    Axiom,
    BOTTOM,
    Bottom,
    Concept,
    ConceptAssertion,
    Exists,
    Forall,
    InstanceQuery,
    KnowledgeBase,
    Not,
    Or,
    Query,
    RoleAssertion,
    SubClassOf,
    SubsumptionQuery,
    TOP,
    Top,
)


class ParseError(ValueError):
    """Syntax error with a 1-based line and column pointing into the input."""

    def __init__(self, line: int, column: int, message: str):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column
        self.message = message


class Token(NamedTuple):
    kind: str
    value: str
    line: int
    column: int


_KEYWORDS = frozenset({"not", "and", "or", "exists", "forall", "Top", "Bottom"})

_TOKEN_RE = re.compile(
    r"""
      (?P<ws>\s+)
    | (?P<number>\d+(?:\.\d+)?(?:[eE][+-]?\d+)?)
    | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
    | (?P<dcolon>::)
    | (?P<subsume><=)
    | (?P<colon>:)
    | (?P<lparen>\()
    | (?P<rparen>\))
    | (?P<comma>,)
    | (?P<dot>\.)
    """,
    re.VERBOSE,
)


def _tokenize(text: str, line_no: int) -> list[Token]:
    tokens: list[Token] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(line_no, pos + 1, f"unexpected character {text[pos]!r}")
        kind = m.lastgroup
        value = m.group()
        if kind != "ws":
            if kind == "name" and value in _KEYWORDS:
                kind = value
            tokens.append(Token(kind, value, line_no, pos + 1))
        pos = m.end()
    end_col = len(text.rstrip()) + 1
    tokens.append(Token("end", "", line_no, end_col))
    return tokens


class _LineParser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self, ahead: int = 0) -> Token:
        i = min(self.pos + ahead, len(self.tokens) - 1)
        return self.tokens[i]

    def take(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "end":
            self.pos += 1
        return tok

    def expect(self, kind: str, what: str) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ParseError(tok.line, tok.column, f"expected {what}")
        return self.take()

    def fail(self, what: str):
        tok = self.peek()
        raise ParseError(tok.line, tok.column, f"expected {what}")

    # -- concepts ----------------------------------------------------------

    def concept(self) -> Concept:
        parts = [self.conjunction()]
        while self.peek().kind == "or":
            self.take()
            parts.append(self.conjunction())
        return _fold_right(Or, parts)

    def conjunction(self) -> Concept:
        parts = [self.unary()]
        while self.peek().kind == "and":
            self.take()
            parts.append(self.unary())
        return _fold_right(And, parts)

    def unary(self) -> Concept:
        tok = self.peek()
        if tok.kind == "not":
            self.take()
            return Not(self.unary())
        if tok.kind in ("exists", "forall"):
            self.take()
            role = self.expect("name", "role name").value
            self.expect("dot", "'.' after role name")
            filler = self.unary()
            return Exists(role, filler) if tok.kind == "exists" else Forall(role, filler)
        if tok.kind == "Top":
            self.take()
            return TOP
        if tok.kind == "Bottom":
            self.take()
            return BOTTOM
        if tok.kind == "name":
            return Atomic(self.take().value)
        if tok.kind == "lparen":
            self.take()
            inner = self.concept()
            self.expect("rparen", "')'")
            return inner
        self.fail("a concept")

    # -- axioms ------------------------------------------------------------

    def axiom(self) -> Axiom:
        if (
            self.peek().kind == "lparen"
            and self.peek(1).kind == "name"
            and self.peek(2).kind == "comma"
        ):
            self.take()
            subject = self.take().value
            self.take()
            obj = self.expect("name", "individual name").value
            self.expect("rparen", "')'")
            self.expect("colon", "':'")
            role = self.expect("name", "role name").value
            return RoleAssertion(subject, obj, role)
        if self.peek().kind == "name" and self.peek(1).kind == "colon":
            individual = self.take().value
            self.take()
            return ConceptAssertion(individual, self.concept())
        left = self.concept()
        self.expect("subsume", "'<='")
        right = self.concept()
        return SubClassOf(left, right)

    def end(self) -> None:
        tok = self.peek()
        if tok.kind != "end":
            raise ParseError(tok.line, tok.column, "unexpected trailing input")


def _fold_right(ctor, parts: list[Concept]) -> Concept:
    result = parts[-1]
    for part in reversed(parts[:-1]):
        result = ctor(part, result)
    return result


def _line_body(raw: str) -> str:
    return raw.split("#", 1)[0]


def parse_kb(text: str) -> KnowledgeBase:
    """Parse a knowledge base; axiom indices follow file order.

    Duplicate axiom lines are kept as distinct indices.
    """
    entries: list[AnnotatedAxiom] = []
    for line_no, raw in enumerate(text.splitlines(), 1):
        body = _line_body(raw)
        if not body.strip():
            continue
        parser = _LineParser(_tokenize(body, line_no))
        probability = None
        first = parser.peek()
        if parser.peek(1).kind == "dcolon":
            if first.kind != "number":
                raise ParseError(first.line, first.column, "probability must be a number")
            parser.take()
            parser.take()
            probability = float(first.value)
            if not (0.0 <= probability <= 1.0):
                raise ParseError(first.line, first.column, f"probability {first.value} outside [0, 1]")
        elif first.kind == "number":
            tok = parser.peek(1)
            raise ParseError(tok.line, tok.column, "expected '::' after probability")
        axiom = parser.axiom()
        parser.end()
        entries.append(AnnotatedAxiom(axiom, probability))
    return KnowledgeBase(tuple(entries))


def parse_query(text: str) -> Query:
    """Parse ``individual : Concept`` or ``Concept <= Concept``."""
    stripped = _line_body(text)
    if not stripped.strip():
        raise ParseError(1, 1, "empty query")
    parser = _LineParser(_tokenize(stripped, 1))
    if parser.peek().kind == "name" and parser.peek(1).kind == "colon":
        individual = parser.take().value
        parser.take()
        concept = parser.concept()
        parser.end()
        return InstanceQuery(individual, concept)
    left = parser.concept()
    parser.expect("subsume", "'<='")
    right = parser.concept()
    parser.end()
    return SubsumptionQuery(left, right)


# ---------------------------------------------------------------------------
# Serialization

# Precedence levels used to decide parenthesization: a child is wrapped
# whenever its level is below what its context requires.  Right operands of
# a binary operator accept the operator's own level (chains re-parse
# right-nested), left operands require one level more.
_UNARY = 3


def _prec(c: Concept) -> int:
    t = type(c)
    if t is Or:
        return 1
    if t is And:
        return 2
    if t is Not or t is Exists or t is Forall:
        return _UNARY
    return 4


def render_concept(c: Concept, require: int = 0) -> str:
    t = type(c)
    if t is Atomic:
        text = c.name
    elif t is Top:
        text = "Top"
    elif t is Bottom:
        text = "Bottom"
    elif t is Not:
        text = f"not {render_concept(c.arg, _UNARY)}"
    elif t is And:
        text = f"{render_concept(c.left, _UNARY)} and {render_concept(c.right, 2)}"
    elif t is Or:
        text = f"{render_concept(c.left, 2)} or {render_concept(c.right, 1)}"
    elif t is Exists:
        text = f"exists {c.role}. {render_concept(c.filler, _UNARY)}"
    elif t is Forall:
        text = f"forall {c.role}. {render_concept(c.filler, _UNARY)}"
    else:
        raise TypeError(f"not a concept: {c!r}")
    if _prec(c) < require:
        return f"({text})"
    return text


def render_axiom(axiom: Axiom) -> str:
    if isinstance(axiom, SubClassOf):
        return f"{render_concept(axiom.sub)} <= {render_concept(axiom.sup)}"
    if isinstance(axiom, ConceptAssertion):
        return f"{axiom.individual} : {render_concept(axiom.concept)}"
    if isinstance(axiom, RoleAssertion):
        return f"({axiom.subject}, {axiom.object}) : {axiom.role}"
    raise TypeError(f"not an axiom: {axiom!r}")


def render_annotated(entry: AnnotatedAxiom) -> str:
    body = render_axiom(entry.axiom)
    if entry.certain:
        return body
    # repr() of a float is the shortest decimal that round-trips.
    return f"{entry.probability!r} :: {body}"


def render_query(q: Query) -> str:
    if isinstance(q, InstanceQuery):
        return f"{q.individual} : {render_concept(q.concept)}"
    if isinstance(q, SubsumptionQuery):
        return f"{render_concept(q.sub)} <= {render_concept(q.sup)}"
    raise TypeError(f"not a query: {q!r}")


def serialize_kb(kb: KnowledgeBase) -> str:
    """Render one axiom per line; parse_kb(serialize_kb(kb)) == kb."""
    if not kb.axioms:
        return ""
    return "\n".join(render_annotated(a) for a in kb.axioms) + "\n"
