"""Rewriting of PNF formulas into a disjunction of clauses of the shape

    (literal conjunction) and N(formula conjunction),   N in {X, W}

which is the form the automaton construction consumes: the literals
constrain the first state of a trace, the next-operator part constrains
the rest.  The pipeline is guard -> distribute -> collapse:

  * gt unrolls every top-level until/release one step so all U/R end up
    beneath an X or W,
  * pa distributes & over | like a DNF transformation, treating X/W
    subformulas as opaque literals,
  * ct merges the next-parts of each clause into a single next operator
    (a strong X wins over weak W when both are present).

anf_relaxed produces the cheaper variant whose propositional part is an
arbitrary guard formula instead of a literal conjunction, skipping the
DNF expansion entirely.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

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
    conj_all,
    disj_all,
    formula_key,
    is_propositional,
)

STRONG = "X"
WEAK = "W"


@dataclass(frozen=True)
class AnfClause:
    """(and of lits) & op(and of nf); empty sets mean true."""

    lits: frozenset[Formula]
    op: str
    nf: frozenset[Formula]


@dataclass(frozen=True)
class RelaxedClause:
    """guard & op(and of nf) with an arbitrary propositional guard."""

    guard: Formula
    op: str
    nf: frozenset[Formula]


PseudoClause = frozenset[Formula]


def clause_formula(clause: AnfClause) -> Formula:
    """Denotation of a clause as a plain formula (for oracle checks)."""
    next_part = conj_all(clause.nf)
    wrapped = Next(next_part) if clause.op == STRONG else WeakNext(next_part)
    return And(conj_all(clause.lits), wrapped)


def relaxed_formula(clause: RelaxedClause) -> Formula:
    next_part = conj_all(clause.nf)
    wrapped = Next(next_part) if clause.op == STRONG else WeakNext(next_part)
    return And(clause.guard, wrapped)


def anf_formula(clauses: frozenset[AnfClause]) -> Formula:
    return disj_all(clause_formula(c) for c in clauses)


def anf_relaxed_formula(clauses: frozenset[RelaxedClause]) -> Formula:
    return disj_all(relaxed_formula(c) for c in clauses)


def is_guarded(phi: Formula) -> bool:
    """True iff no until/release occurs outside every X/W operand."""
    match phi:
        case Until() | Release():
            return False
        case Next() | WeakNext():
            return True
        case Not(p):
            return is_guarded(p)
        case And(l, r) | Or(l, r):
            return is_guarded(l) and is_guarded(r)
        case _:
            return True


@lru_cache(maxsize=None)
def gt(phi: Formula) -> Formula:
    """One-step unrolling until the formula is guarded.

    a U b  ->  b | (a & X(a U b))        (the X keeps the original term)
    a R b  ->  b & (a | W(a R b))

    Input must be in PNF; X/W subterms are left untouched, so every
    formula that ends up beneath a next operator is a subterm of phi.
    """
    match phi:
        case Atom() | TrueConst() | FalseConst():
            return phi
        case Not(Atom()):
            return phi
        case Not():
            raise ValueError(f"not in positive normal form: {phi!r}")
        case And(l, r):
            return And(gt(l), gt(r))
        case Or(l, r):
            return Or(gt(l), gt(r))
        case Next() | WeakNext():
            return phi
        case Until(l, r):
            return Or(gt(r), And(gt(l), Next(phi)))
        case Release(l, r):
            return And(gt(r), Or(gt(l), WeakNext(phi)))
    raise TypeError(f"not a formula: {phi!r}")


def pa(phi: Formula) -> frozenset[PseudoClause]:
    """DNF distribution over a guarded PNF formula.

    Pseudo-literals are ordinary literals plus whole X/W subformulas; the
    result is a set of clauses, each a set of pseudo-literals, whose
    disjunction is equivalent to phi.
    """
    match phi:
        case Atom() | TrueConst() | FalseConst() | Not(Atom()):
            return frozenset({frozenset({phi})})
        case Next() | WeakNext():
            return frozenset({frozenset({phi})})
        case Or(l, r):
            return pa(l) | pa(r)
        case And(l, r):
            return frozenset(cl | cr for cl in pa(l) for cr in pa(r))
        case Until() | Release():
            raise ValueError(f"not guarded: {phi!r}")
    raise ValueError(f"not in positive normal form: {phi!r}")


def ct(pseudo: PseudoClause) -> AnfClause:
    """Collapse the next-parts of one pseudo-clause.

    All X/W pseudo-literals merge into a single next operator over the
    collected operands; the operator is strong if any of them was strong.
    A clause without next-parts becomes weak with an empty operand set
    (weak next of true), which every trace satisfies vacuously.
    """
    lits = []
    nf = []
    strong = False
    for item in pseudo:
        match item:
            case Next(p):
                strong = True
                nf.append(p)
            case WeakNext(p):
                nf.append(p)
            case _:
                lits.append(item)
    return AnfClause(
        lits=frozenset(lits),
        op=STRONG if strong else WEAK,
        nf=frozenset(nf),
    )


def _clean_clause(clause: AnfClause) -> AnfClause | None:
    """Drop redundant true literals; discard contradictory clauses."""
    lits = set(clause.lits)
    if FALSE in lits:
        return None
    lits.discard(TRUE)
    positive = {l.name for l in lits if isinstance(l, Atom)}
    negative = {l.operand.name for l in lits if isinstance(l, Not)}
    if positive & negative:
        return None
    return AnfClause(lits=frozenset(lits), op=clause.op, nf=clause.nf)


def anf(phi: Formula) -> frozenset[AnfClause]:
    """Full clause form of a PNF formula: collapse each distributed clause.

    Contradictory clauses are pruned and duplicates collapse; the empty
    set therefore denotes an unsatisfiable disjunction (e.g. for false).
    """
    clauses = set()
    for pseudo in pa(gt(phi)):
        cleaned = _clean_clause(ct(pseudo))
        if cleaned is not None:
            clauses.add(cleaned)
    return frozenset(clauses)


def _and_guard(left: Formula, right: Formula) -> Formula:
    if left == TRUE:
        return right
    if right == TRUE:
        return left
    if left == FALSE or right == FALSE:
        return FALSE
    return And(left, right)


def _combine(left: RelaxedClause, right: RelaxedClause) -> RelaxedClause | None:
    guard = _and_guard(left.guard, right.guard)
    if guard == FALSE:
        return None
    op = STRONG if STRONG in (left.op, right.op) else WEAK
    return RelaxedClause(guard=guard, op=op, nf=left.nf | right.nf)


def _product(
    lefts: frozenset[RelaxedClause], rights: frozenset[RelaxedClause]
) -> frozenset[RelaxedClause]:
    out = set()
    for cl in lefts:
        for cr in rights:
            combined = _combine(cl, cr)
            if combined is not None:
                out.add(combined)
    return frozenset(out)


@lru_cache(maxsize=None)
def anf_relaxed(phi: Formula) -> frozenset[RelaxedClause]:
    """Clause form with whole propositional guards, no DNF expansion.

    Propositional subtrees become single-clause guards as-is; only the
    temporal structure is split.  Until/release unroll one step exactly as
    in gt, so nf members remain subterms of phi.
    """
    if is_propositional(phi):
        _check_relaxed_pnf(phi)
        if phi == FALSE:
            return frozenset()
        return frozenset({RelaxedClause(guard=phi, op=WEAK, nf=frozenset())})
    match phi:
        case Next(p):
            return frozenset({RelaxedClause(guard=TRUE, op=STRONG, nf=frozenset({p}))})
        case WeakNext(p):
            return frozenset({RelaxedClause(guard=TRUE, op=WEAK, nf=frozenset({p}))})
        case Or(l, r):
            return anf_relaxed(l) | anf_relaxed(r)
        case And(l, r):
            return _product(anf_relaxed(l), anf_relaxed(r))
        case Until(l, r):
            step = frozenset(
                {RelaxedClause(guard=TRUE, op=STRONG, nf=frozenset({phi}))}
            )
            return anf_relaxed(r) | _product(anf_relaxed(l), step)
        case Release(l, r):
            step = frozenset(
                {RelaxedClause(guard=TRUE, op=WEAK, nf=frozenset({phi}))}
            )
            return _product(anf_relaxed(r), anf_relaxed(l) | step)
    raise ValueError(f"not in positive normal form: {phi!r}")


def _check_relaxed_pnf(gamma: Formula) -> None:
    match gamma:
        case Not(Atom()):
            return
        case Not():
            raise ValueError(f"not in positive normal form: {gamma!r}")
        case And(l, r) | Or(l, r):
            _check_relaxed_pnf(l)
            _check_relaxed_pnf(r)
        case _:
            return


def clause_sort_key(clause: AnfClause | RelaxedClause) -> str:
    """Deterministic ordering for clause sets."""
    if isinstance(clause, AnfClause):
        return formula_key(clause_formula(clause))
    return formula_key(relaxed_formula(clause))
