"""Reference evaluators for all satisfaction relations, plus the bridge
from the strict-finite-trace dialect that excludes the empty sequence.

These are deliberately naive structural recursions (the until/release
clauses enumerate suffixes), trusted for clarity rather than speed; every
other module is tested against them.

A trace is a finite, possibly empty tuple of symbols; a symbol is the set
of atomic propositions that hold in one state.

Text format (one trace per line): states separated by ";", each state a
whitespace-separated list of atom names, the empty state written as zero
atoms, and the empty trace written as the literal token "<eps>".  The line
"a b; ; a" is the three-state trace [{a,b}, {}, {a}].
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, product
from typing import Iterable

from .syntax import (
    FALSE,
    TRUE,
    And,
    Atom,
    FalseConst,
    Formula,
    Next,
    Not,
    Or,
    Release,
    TrueConst,
    Until,
    WeakNext,
)

Symbol = frozenset[str]
Trace = tuple[Symbol, ...]

EMPTY_TRACE: Trace = ()
EPSILON_TOKEN = "<eps>"


def make_symbol(names: Iterable[str] = ()) -> Symbol:
    return frozenset(names)


def parse_trace(line: str) -> Trace:
    if line.strip() == EPSILON_TOKEN:
        return EMPTY_TRACE
    return tuple(frozenset(part.split()) for part in line.split(";"))


def format_trace(trace: Trace) -> str:
    if not trace:
        return EPSILON_TOKEN
    return "; ".join(" ".join(sorted(symbol)) for symbol in trace)


def parse_trace_file(text: str) -> list[Trace]:
    """One trace per line.  A blank line is a one-state trace with no atoms."""
    return [parse_trace(line) for line in text.splitlines()]


def all_symbols(alphabet: Iterable[str]) -> list[Symbol]:
    """All subsets of the alphabet, smallest first, then lexicographic."""
    names = sorted(alphabet)
    result: list[Symbol] = []
    for k in range(len(names) + 1):
        result.extend(frozenset(c) for c in combinations(names, k))
    return result


def all_traces(alphabet: Iterable[str], max_len: int) -> list[Trace]:
    """Every trace over the alphabet up to max_len, shortest first."""
    symbols = all_symbols(alphabet)
    result: list[Trace] = []
    for length in range(max_len + 1):
        result.extend(product(symbols, repeat=length))
    return result


# ---------------------------------------------------------------------------
# Satisfaction over finite traces (empty trace admitted)

def sat(trace: Trace, phi: Formula) -> bool:
    """Does the trace satisfy phi?

    An atom needs a nonempty trace with the atom in the first state, so the
    empty trace satisfies !a for every a.  X needs a successor state; W is
    satisfied by the empty trace.  Until may discharge its right argument
    on any suffix including the empty one at the end.  Release is evaluated
    through its duality with until.
    """
    match phi:
        case Atom(name):
            return len(trace) >= 1 and name in trace[0]
        case TrueConst():
            return True
        case FalseConst():
            return False
        case Not(p):
            return not sat(trace, p)
        case And(l, r):
            return sat(trace, l) and sat(trace, r)
        case Or(l, r):
            return sat(trace, l) or sat(trace, r)
        case Next(p):
            return len(trace) >= 1 and sat(trace[1:], p)
        case WeakNext(p):
            return len(trace) == 0 or sat(trace[1:], p)
        case Until(l, r):
            for j in range(len(trace) + 1):
                if sat(trace[j:], r) and all(sat(trace[k:], l) for k in range(j)):
                    return True
            return False
        case Release(l, r):
            return not sat(trace, Until(Not(l), Not(r)))
    raise TypeError(f"not a formula: {phi!r}")


def sat_prop(symbol: Symbol, gamma: Formula) -> bool:
    """Classical propositional satisfaction of gamma in a single state."""
    match gamma:
        case Atom(name):
            return name in symbol
        case TrueConst():
            return True
        case FalseConst():
            return False
        case Not(p):
            return not sat_prop(symbol, p)
        case And(l, r):
            return sat_prop(symbol, l) and sat_prop(symbol, r)
        case Or(l, r):
            return sat_prop(symbol, l) or sat_prop(symbol, r)
    raise ValueError(f"not a propositional formula: {gamma!r}")


# ---------------------------------------------------------------------------
# The strict dialect: positions within nonempty traces, empty trace excluded

def _check_ltlf(phi: Formula) -> None:
    match phi:
        case WeakNext() | Release():
            raise ValueError(
                f"W/R are not part of the strict finite-trace dialect: {phi!r}"
            )
        case Not(p) | Next(p):
            _check_ltlf(p)
        case And(l, r) | Or(l, r) | Until(l, r):
            _check_ltlf(l)
            _check_ltlf(r)


def _sat_ltlf_at(trace: Trace, i: int, phi: Formula) -> bool:
    last = len(trace) - 1
    match phi:
        case Atom(name):
            return name in trace[i]
        case TrueConst():
            return True
        case FalseConst():
            return False
        case Not(p):
            return not _sat_ltlf_at(trace, i, p)
        case And(l, r):
            return _sat_ltlf_at(trace, i, l) and _sat_ltlf_at(trace, i, r)
        case Or(l, r):
            return _sat_ltlf_at(trace, i, l) or _sat_ltlf_at(trace, i, r)
        case Next(p):
            return i < last and _sat_ltlf_at(trace, i + 1, p)
        case Until(l, r):
            for j in range(i, last + 1):
                if _sat_ltlf_at(trace, j, r) and all(
                    _sat_ltlf_at(trace, k, l) for k in range(i, j)
                ):
                    return True
            return False
    raise ValueError(f"not a strict-dialect formula: {phi!r}")


def sat_ltlf(trace: Trace, phi: Formula) -> bool:
    """Strict-dialect satisfaction at position 0.

    Positions only exist inside a nonempty trace, so the empty trace
    satisfies nothing, including negations.  Here X requires a position
    strictly before the last, and until must discharge its right argument
    at an actual position.
    """
    _check_ltlf(phi)
    if not trace:
        return False
    return _sat_ltlf_at(trace, 0, phi)


def translate_ltlf(phi: Formula) -> Formula:
    """Embed a strict-dialect formula so that both semantics agree.

    Negation is guarded with "X true" to keep the empty trace out of the
    result's models; the other operators map through unchanged.  Accepts
    the strict dialect (no W/R); | maps through like &.
    """
    _check_ltlf(phi)
    return _translate(phi)


def _translate(phi: Formula) -> Formula:
    match phi:
        case Atom():
            return phi
        case TrueConst():
            return Next(TRUE)
        case FalseConst():
            return FALSE
        case Not(p):
            return And(Not(_translate(p)), Next(TRUE))
        case And(l, r):
            return And(_translate(l), _translate(r))
        case Or(l, r):
            return Or(_translate(l), _translate(r))
        case Next(p):
            return Next(_translate(p))
        case Until(l, r):
            return Until(_translate(l), _translate(r))
    raise ValueError(f"not a strict-dialect formula: {phi!r}")


# ---------------------------------------------------------------------------
# Syntactic empty-trace check

@lru_cache(maxsize=None)
def epsilon_sat(phi: Formula) -> bool:
    """Decide sat((), phi) for PNF phi by structural recursion alone.

    The empty trace satisfies true, every negated atom, every weak-next,
    conjunctions/disjunctions componentwise, and an until or release
    exactly when it satisfies the right argument.
    """
    match phi:
        case TrueConst():
            return True
        case FalseConst() | Atom() | Next():
            return False
        case Not(Atom()):
            return True
        case WeakNext():
            return True
        case And(l, r):
            return epsilon_sat(l) and epsilon_sat(r)
        case Or(l, r):
            return epsilon_sat(l) or epsilon_sat(r)
        case Until(_, r) | Release(_, r):
            return epsilon_sat(r)
    raise ValueError(f"not in positive normal form: {phi!r}")
