"""Monotone covering formulas over the probabilistic axiom variables.

The covering set of a query compiles into a negation-free DNF: one
disjunct per justification, one variable per annotated axiom appearing in
it.  Variables are the ordinals of the knowledge base's probabilistic
view, so variable i always talks about the i-th annotated axiom.  Certain
axioms hold in every world and are dropped; a justification made of
certain axioms only therefore makes the whole formula True.  No other
simplification is performed, the diagram construction downstream handles
sharing and redundancy.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Collection, Iterable

from .kb import KnowledgeBase


class Formula:
    """Base class for monotone Boolean formulas."""

    __slots__ = ()


@dataclass(frozen=True)
class Var(Formula):
    ordinal: int


@dataclass(frozen=True)
class Conj(Formula):
    parts: tuple[Formula, ...]


@dataclass(frozen=True)
class Disj(Formula):
    parts: tuple[Formula, ...]


@dataclass(frozen=True)
class TrueFormula(Formula):
    pass


@dataclass(frozen=True)
class FalseFormula(Formula):
    pass


TRUE = TrueFormula()
FALSE = FalseFormula()

# A valuation picks the ordinals whose axioms are included in a world.
Valuation = Collection[int]


def formula_from_justifications(
    covering, kb: KnowledgeBase
) -> Formula:
    """DNF with one disjunct per justification, certain axioms dropped.

    ``covering`` may be a CoveringSet or any iterable of index sets.
    Disjuncts are emitted in ascending index-tuple order and conjuncts in
    ascending ordinal order, so equal inputs give the identical formula.
    """
    justifications = getattr(covering, "justifications", covering)
    ordinal_of = kb.ordinal_of
    terms: list[Formula] = []
    for just in sorted(justifications, key=lambda j: tuple(sorted(j))):
        ordinals = sorted(ordinal_of[i] for i in just if i in ordinal_of)
        if not ordinals:
            # Certain axioms alone entail the query: true in every world.
            return TRUE
        if len(ordinals) == 1:
            terms.append(Var(ordinals[0]))
        else:
            terms.append(Conj(tuple(Var(o) for o in ordinals)))
    if not terms:
        return FALSE
    if len(terms) == 1:
        return terms[0]
    return Disj(tuple(terms))


def satisfies(formula: Formula, valuation: Valuation) -> bool:
    """Evaluate under the valuation that makes exactly these ordinals true."""
    chosen = valuation if isinstance(valuation, (set, frozenset)) else frozenset(valuation)
    return _eval(formula, chosen)


def _eval(formula: Formula, chosen) -> bool:
    t = type(formula)
    if t is Var:
        return formula.ordinal in chosen
    if t is Conj:
        return all(_eval(p, chosen) for p in formula.parts)
    if t is Disj:
        return any(_eval(p, chosen) for p in formula.parts)
    if t is TrueFormula:
        return True
    if t is FalseFormula:
        return False
    raise TypeError(f"not a formula: {formula!r}")


def variables(formula: Formula) -> frozenset[int]:
    """Ordinals occurring in the formula."""
    out: set[int] = set()
    _collect_vars(formula, out)
    return frozenset(out)


def _collect_vars(formula: Formula, out: set[int]) -> None:
    t = type(formula)
    if t is Var:
        out.add(formula.ordinal)
    elif t is Conj or t is Disj:
        for p in formula.parts:
            _collect_vars(p, out)


def render_formula(formula: Formula) -> str:
    """Text form like ``(x1 & x2) | (x1 & x3)``; variables print 1-based."""
    t = type(formula)
    if t is TrueFormula:
        return "true"
    if t is FalseFormula:
        return "false"
    return _render(formula, top=True)


def _render(formula: Formula, top: bool = False) -> str:
    t = type(formula)
    if t is Var:
        return f"x{formula.ordinal + 1}"
    if t is Conj:
        text = " & ".join(_render(p) for p in formula.parts)
        return text if top else f"({text})"
    if t is Disj:
        text = " | ".join(_render(p) for p in formula.parts)
        return text if top else f"({text})"
    if t is TrueFormula:
        return "true"
    if t is FalseFormula:
        return "false"
    raise TypeError(f"not a formula: {formula!r}")
