"""Formula AST, parser, printer, and positive-normal-form conversion.

The logic is LTL interpreted over finite state sequences, including the
empty sequence.  Next (X) requires a successor state; weak next (W) is its
dual and is satisfied by the empty sequence.  Until/Release may discharge
their right argument on the empty suffix at the end of a sequence.

Concrete grammar (ASCII, loosest to tightest precedence):

    phi    ::= phi "<->" phi | phi "->" phi | phi "|" phi | phi "&" phi | unary
    unary  ::= ("!" | "X" | "W" | "F" | "G") unary | temporal
    temporal ::= atom ("U" | "R") unary | atom
    atom   ::= "true" | "false" | ident | "(" phi ")"

U and R are right-associative.  F, G, -> and <-> are syntactic sugar and
desugar at parse time; the AST contains only the ten primitive variants.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator


class Formula:
    """Base class for formula AST nodes.  Instances are immutable."""

    __slots__ = ()


@dataclass(frozen=True)
class Atom(Formula):
    name: str


@dataclass(frozen=True)
class TrueConst(Formula):
    pass


@dataclass(frozen=True)
class FalseConst(Formula):
    pass


@dataclass(frozen=True)
class Not(Formula):
    operand: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Next(Formula):
    operand: Formula


@dataclass(frozen=True)
class WeakNext(Formula):
    operand: Formula


@dataclass(frozen=True)
class Until(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Release(Formula):
    left: Formula
    right: Formula


TRUE = TrueConst()
FALSE = FalseConst()


def eventually(phi: Formula) -> Formula:
    """F phi, desugared: true U phi."""
    return Until(TRUE, phi)


def always(phi: Formula) -> Formula:
    """G phi, desugared: !(true U !phi)."""
    return Not(Until(TRUE, Not(phi)))


def children(phi: Formula) -> tuple[Formula, ...]:
    match phi:
        case Not(p) | Next(p) | WeakNext(p):
            return (p,)
        case And(l, r) | Or(l, r) | Until(l, r) | Release(l, r):
            return (l, r)
        case _:
            return ()


# ---------------------------------------------------------------------------
# Printing

# Precedence levels used by both printer and parser; larger binds tighter.
_LEVEL_OR = 2
_LEVEL_AND = 3
_LEVEL_TEMPORAL = 4
_LEVEL_UNARY = 5
_LEVEL_ATOM = 6


def _level(phi: Formula) -> int:
    match phi:
        case Atom() | TrueConst() | FalseConst():
            return _LEVEL_ATOM
        case Not() | Next() | WeakNext():
            return _LEVEL_UNARY
        case Until() | Release():
            return _LEVEL_TEMPORAL
        case And():
            return _LEVEL_AND
        case Or():
            return _LEVEL_OR
    raise TypeError(f"not a formula: {phi!r}")


def _fmt(phi: Formula, required: int) -> str:
    match phi:
        case Atom(name):
            text = name
        case TrueConst():
            text = "true"
        case FalseConst():
            text = "false"
        case Not(p):
            text = "!" + _fmt(p, _LEVEL_ATOM)
        case Next(p):
            text = "X " + _fmt(p, _LEVEL_ATOM)
        case WeakNext(p):
            text = "W " + _fmt(p, _LEVEL_ATOM)
        case Until(l, r):
            text = _fmt(l, _LEVEL_ATOM) + " U " + _fmt(r, _LEVEL_UNARY)
        case Release(l, r):
            text = _fmt(l, _LEVEL_ATOM) + " R " + _fmt(r, _LEVEL_UNARY)
        case And(l, r):
            text = _fmt(l, _LEVEL_AND) + " & " + _fmt(r, _LEVEL_TEMPORAL)
        case Or(l, r):
            text = _fmt(l, _LEVEL_OR) + " | " + _fmt(r, _LEVEL_AND)
        case _:
            raise TypeError(f"not a formula: {phi!r}")
    if _level(phi) < required:
        return "(" + text + ")"
    return text


def format_formula(phi: Formula) -> str:
    """Render phi in the concrete grammar; parse(format_formula(phi)) == phi."""
    return _fmt(phi, _LEVEL_OR)


def formula_key(phi: Formula) -> str:
    """Total order key for formulas (the printed form is injective)."""
    return format_formula(phi)


# ---------------------------------------------------------------------------
# Parsing

class ParseError(ValueError):
    """Raised on malformed input; carries the character offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


_KEYWORDS = frozenset({"true", "false", "X", "W", "F", "G", "U", "R"})
_TOKEN_RE = re.compile(r"<->|->|[!&|()]|[A-Za-z][A-Za-z0-9_]*")


def _tokenize(text: str) -> list[tuple[str, int]]:
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unknown token {text[pos]!r}", pos)
        tokens.append((m.group(), pos))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.index = 0

    def peek(self) -> str | None:
        if self.index < len(self.tokens):
            return self.tokens[self.index][0]
        return None

    def next_pos(self) -> int:
        if self.index < len(self.tokens):
            return self.tokens[self.index][1]
        return len(self.text)

    def take(self) -> str:
        token = self.peek()
        if token is None:
            raise ParseError("unexpected end of input", self.next_pos())
        self.index += 1
        return token

    def expect(self, token: str) -> None:
        if self.peek() != token:
            raise ParseError(f"expected {token!r}", self.next_pos())
        self.index += 1

    def formula(self) -> Formula:
        left = self.implication()
        if self.peek() == "<->":
            self.take()
            right = self.formula()
            return And(Or(Not(left), right), Or(Not(right), left))
        return left

    def implication(self) -> Formula:
        left = self.disjunction()
        if self.peek() == "->":
            self.take()
            right = self.implication()
            return Or(Not(left), right)
        return left

    def disjunction(self) -> Formula:
        result = self.conjunction()
        while self.peek() == "|":
            self.take()
            result = Or(result, self.conjunction())
        return result

    def conjunction(self) -> Formula:
        result = self.unary()
        while self.peek() == "&":
            self.take()
            result = And(result, self.unary())
        return result

    def unary(self) -> Formula:
        token = self.peek()
        if token == "!":
            self.take()
            return Not(self.unary())
        if token == "X":
            self.take()
            return Next(self.unary())
        if token == "W":
            self.take()
            return WeakNext(self.unary())
        if token == "F":
            self.take()
            return eventually(self.unary())
        if token == "G":
            self.take()
            return always(self.unary())
        return self.temporal()

    def temporal(self) -> Formula:
        left = self.atom()
        token = self.peek()
        if token in ("U", "R"):
            self.take()
            right = self.unary()
            return Until(left, right) if token == "U" else Release(left, right)
        return left

    def atom(self) -> Formula:
        pos = self.next_pos()
        token = self.take()
        if token == "(":
            inner = self.formula()
            self.expect(")")
            return inner
        if token == "true":
            return TRUE
        if token == "false":
            return FALSE
        if token in _KEYWORDS or not token[0].isalpha():
            raise ParseError(f"unexpected token {token!r}", pos)
        return Atom(token)


def parse(text: str) -> Formula:
    """Parse a formula in the concrete grammar; raises ParseError."""
    parser = _Parser(text)
    result = parser.formula()
    if parser.peek() is not None:
        raise ParseError(f"trailing input {parser.peek()!r}", parser.next_pos())
    return result


# ---------------------------------------------------------------------------
# Structural queries

def atoms(phi: Formula) -> frozenset[str]:
    """Atomic proposition names occurring in phi."""
    match phi:
        case Atom(name):
            return frozenset({name})
        case _:
            result: frozenset[str] = frozenset()
            for child in children(phi):
                result |= atoms(child)
            return result


def subformulas(phi: Formula) -> frozenset[Formula]:
    """phi together with all subformulas, deduplicated structurally."""
    result = {phi}
    for child in children(phi):
        result |= subformulas(child)
    return frozenset(result)


def formula_size(phi: Formula) -> int:
    """Number of distinct subformulas (repeated subterms count once)."""
    return len(subformulas(phi))


def is_propositional(phi: Formula) -> bool:
    """True iff phi contains no X, W, U or R."""
    match phi:
        case Next() | WeakNext() | Until() | Release():
            return False
        case _:
            return all(is_propositional(c) for c in children(phi))


def is_literal(phi: Formula) -> bool:
    """True for a, !a, true and false."""
    match phi:
        case Atom() | TrueConst() | FalseConst() | Not(Atom()):
            return True
        case _:
            return False


def is_pnf(phi: Formula) -> bool:
    """True iff every negation in phi applies directly to an atom."""
    match phi:
        case Not(Atom()):
            return True
        case Not():
            return False
        case _:
            return all(is_pnf(c) for c in children(phi))


@lru_cache(maxsize=None)
def to_pnf(phi: Formula) -> Formula:
    """Push negations down to atoms using operator dualities.

    !X p becomes W !p (and vice versa), !(p U q) becomes !p R !q (and vice
    versa), De Morgan handles & and |, double negations cancel, and negated
    constants fold.  The result is logically equivalent on every trace.
    """
    match phi:
        case Atom() | TrueConst() | FalseConst() | Not(Atom()):
            return phi
        case Not(TrueConst()):
            return FALSE
        case Not(FalseConst()):
            return TRUE
        case Not(Not(p)):
            return to_pnf(p)
        case Not(And(l, r)):
            return Or(to_pnf(Not(l)), to_pnf(Not(r)))
        case Not(Or(l, r)):
            return And(to_pnf(Not(l)), to_pnf(Not(r)))
        case Not(Next(p)):
            return WeakNext(to_pnf(Not(p)))
        case Not(WeakNext(p)):
            return Next(to_pnf(Not(p)))
        case Not(Until(l, r)):
            return Release(to_pnf(Not(l)), to_pnf(Not(r)))
        case Not(Release(l, r)):
            return Until(to_pnf(Not(l)), to_pnf(Not(r)))
        case And(l, r):
            return And(to_pnf(l), to_pnf(r))
        case Or(l, r):
            return Or(to_pnf(l), to_pnf(r))
        case Next(p):
            return Next(to_pnf(p))
        case WeakNext(p):
            return WeakNext(to_pnf(p))
        case Until(l, r):
            return Until(to_pnf(l), to_pnf(r))
        case Release(l, r):
            return Release(to_pnf(l), to_pnf(r))
    raise TypeError(f"not a formula: {phi!r}")


def _sorted_unique(formulas: Iterable[Formula]) -> list[Formula]:
    return sorted(set(formulas), key=formula_key)


def conj_all(formulas: Iterable[Formula]) -> Formula:
    """Conjunction of a set of formulas; the empty conjunction is true.

    Members are ordered by formula_key so the result is deterministic.
    """
    members = _sorted_unique(formulas)
    if not members:
        return TRUE
    result = members[0]
    for phi in members[1:]:
        result = And(result, phi)
    return result


def disj_all(formulas: Iterable[Formula]) -> Formula:
    """Disjunction of a set of formulas; the empty disjunction is false."""
    members = _sorted_unique(formulas)
    if not members:
        return FALSE
    result = members[0]
    for phi in members[1:]:
        result = Or(result, phi)
    return result


def iter_subterms(phi: Formula) -> Iterator[Formula]:
    """Yield every node occurrence in preorder (duplicates included)."""
    yield phi
    for child in children(phi):
        yield from iter_subterms(child)
