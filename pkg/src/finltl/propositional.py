"""Propositional guard utilities: satisfiability over mentioned atoms,
canonical minimization of edge labels, and witness symbol selection.

Guards mentioning at most EXACT_MINIMIZE_LIMIT atoms are minimized
exactly: enumerate the truth table, compute prime implicants, and cover
the on-set (essential implicants first, then greedy by coverage with a
deterministic tie-break).  Larger guards only get rule-based cleanup
(negation normal form, constant folding, flattening with deduplication,
and absorption), which preserves equivalence but not minimality.
"""

from __future__ import annotations

from itertools import combinations

from .syntax import (
    FALSE,
    TRUE,
    And,
    Atom,
    Formula,
    Not,
    Or,
    atoms,
    to_pnf,
)
from .semantics import Symbol, sat_prop

EXACT_MINIMIZE_LIMIT = 6
UNSAT_CHECK_LIMIT = 16


def mentioned_atoms(gamma: Formula) -> tuple[str, ...]:
    return tuple(sorted(atoms(gamma)))


def assignments(names: tuple[str, ...]) -> list[Symbol]:
    """All subsets of names, fewest atoms first, lexicographic within size."""
    result: list[Symbol] = []
    for k in range(len(names) + 1):
        result.extend(frozenset(c) for c in combinations(sorted(names), k))
    return result


def prop_equivalent(gamma1: Formula, gamma2: Formula) -> bool:
    """Truth-table equivalence over the union of mentioned atoms."""
    names = tuple(sorted(set(mentioned_atoms(gamma1)) | set(mentioned_atoms(gamma2))))
    return all(
        sat_prop(a, gamma1) == sat_prop(a, gamma2) for a in assignments(names)
    )


def is_prop_unsat(gamma: Formula, limit: int = UNSAT_CHECK_LIMIT) -> bool:
    """True if no assignment over the mentioned atoms satisfies gamma.

    Guards mentioning more than `limit` atoms are conservatively reported
    satisfiable rather than enumerated.
    """
    names = mentioned_atoms(gamma)
    if len(names) > limit:
        return False
    return not any(sat_prop(a, gamma) for a in assignments(names))


def min_symbol(gamma: Formula) -> Symbol | None:
    """Smallest satisfying assignment, ties broken lexicographically.

    Only atoms mentioned in the guard may appear; returns None when the
    guard is unsatisfiable.
    """
    for candidate in assignments(mentioned_atoms(gamma)):
        if sat_prop(candidate, gamma):
            return candidate
    return None


# ---------------------------------------------------------------------------
# Exact minimization (truth table -> irredundant sum of products)

def _implicant_covers(implicant: tuple[int, int], minterm: int) -> bool:
    mask, bits = implicant
    return (minterm & mask) == bits


def _prime_implicants(minterms: list[int], nvars: int) -> list[tuple[int, int]]:
    """Combine adjacent implicants until fixpoint; implicants are
    (mask, bits) pairs where mask selects the cared-about variables."""
    full_mask = (1 << nvars) - 1
    current = {(full_mask, m) for m in minterms}
    primes: set[tuple[int, int]] = set()
    while current:
        merged: set[tuple[int, int]] = set()
        used: set[tuple[int, int]] = set()
        group = sorted(current)
        indexed = set(group)
        for mask, bits in group:
            for var in range(nvars):
                bit = 1 << var
                if not mask & bit:
                    continue
                partner = (mask, bits ^ bit)
                if partner in indexed:
                    merged.add((mask & ~bit, bits & ~bit))
                    used.add((mask, bits))
                    used.add(partner)
        primes |= current - used
        current = merged
    return sorted(primes)


def _cover(minterms: list[int], primes: list[tuple[int, int]]) -> list[tuple[int, int]]:
    remaining = set(minterms)
    chosen: list[tuple[int, int]] = []

    cover_map = {
        p: frozenset(m for m in minterms if _implicant_covers(p, m)) for p in primes
    }
    # Essential primes: sole cover of some minterm.
    for m in minterms:
        covering = [p for p in primes if _implicant_covers(p, m)]
        if len(covering) == 1 and covering[0] not in chosen:
            chosen.append(covering[0])
    for p in chosen:
        remaining -= cover_map[p]
    # Greedy completion, deterministic tie-break on the implicant itself.
    while remaining:
        best = max(
            (p for p in primes if p not in chosen),
            key=lambda p: (len(cover_map[p] & remaining), [-x for x in p]),
        )
        if not cover_map[best] & remaining:
            break
        chosen.append(best)
        remaining -= cover_map[best]
    # Drop terms made redundant by the rest of the selection.
    kept = list(chosen)
    needed = set(minterms)
    for p in sorted(chosen):
        rest = [q for q in kept if q != p]
        covered = set()
        for q in rest:
            covered |= cover_map[q]
        if needed <= covered:
            kept = rest
    return sorted(kept)


def _term_formula(implicant: tuple[int, int], names: tuple[str, ...]) -> Formula:
    mask, bits = implicant
    term: Formula | None = None
    for var, name in enumerate(names):
        bit = 1 << var
        if not mask & bit:
            continue
        literal: Formula = Atom(name) if bits & bit else Not(Atom(name))
        term = literal if term is None else And(term, literal)
    return TRUE if term is None else term


def minimize(gamma: Formula) -> Formula:
    """Canonical equivalent guard.

    Exact sum-of-products up to EXACT_MINIMIZE_LIMIT mentioned atoms;
    rule-based cleanup beyond that.  Constants come back as true/false.
    """
    names = mentioned_atoms(gamma)
    if len(names) > EXACT_MINIMIZE_LIMIT:
        return simplify_rules(gamma)
    nvars = len(names)
    minterms = []
    for index in range(1 << nvars):
        assignment = frozenset(
            name for var, name in enumerate(names) if index & (1 << var)
        )
        if sat_prop(assignment, gamma):
            minterms.append(index)
    if not minterms:
        return FALSE
    if len(minterms) == 1 << nvars:
        return TRUE
    primes = _prime_implicants(minterms, nvars)
    terms = [_term_formula(p, names) for p in _cover(minterms, primes)]
    result = terms[0]
    for term in terms[1:]:
        result = Or(result, term)
    return result


# ---------------------------------------------------------------------------
# Rule-based cleanup (used when exact minimization is too wide)

def _flatten(gamma: Formula, op: type) -> list[Formula]:
    if isinstance(gamma, op):
        return _flatten(gamma.left, op) + _flatten(gamma.right, op)
    return [gamma]


def _rebuild(parts: list[Formula], op: type, unit: Formula) -> Formula:
    if not parts:
        return unit
    from .syntax import formula_key

    parts = sorted(set(parts), key=formula_key)
    result = parts[0]
    for part in parts[1:]:
        result = op(result, part)
    return result


def _negated(gamma: Formula) -> Formula:
    return gamma.operand if isinstance(gamma, Not) else Not(gamma)


def simplify_rules(gamma: Formula) -> Formula:
    """NNF + constant folding + flatten/dedupe + complement and absorption."""
    gamma = to_pnf(gamma)
    return _simplify_nnf(gamma)


def _simplify_nnf(gamma: Formula) -> Formula:
    match gamma:
        case And(_, _):
            parts = []
            for item in _flatten(gamma, And):
                simplified = _simplify_nnf(item)
                if simplified == FALSE:
                    return FALSE
                if simplified == TRUE:
                    continue
                parts.extend(_flatten(simplified, And))
            unique = set(parts)
            if any(_negated(p) in unique for p in unique):
                return FALSE
            # a & (a | b) == a
            kept = [
                p
                for p in unique
                if not (
                    isinstance(p, Or)
                    and any(q in unique for q in _flatten(p, Or) if q != p)
                )
            ]
            return _rebuild(kept, And, TRUE)
        case Or(_, _):
            parts = []
            for item in _flatten(gamma, Or):
                simplified = _simplify_nnf(item)
                if simplified == TRUE:
                    return TRUE
                if simplified == FALSE:
                    continue
                parts.extend(_flatten(simplified, Or))
            unique = set(parts)
            if any(_negated(p) in unique for p in unique):
                return TRUE
            # a | (a & b) == a
            kept = [
                p
                for p in unique
                if not (
                    isinstance(p, And)
                    and any(q in unique for q in _flatten(p, And) if q != p)
                )
            ]
            return _rebuild(kept, Or, FALSE)
        case _:
            return gamma
