"""Core model for annotated ALC knowledge bases.

Concept expressions, axioms, probability annotations and queries are
immutable tagged unions built from frozen dataclasses.  A knowledge base
is an ordered list of annotated axioms; the 0-based list position of an
axiom is its identity everywhere downstream (justifications, formula
variables, diagram levels), so the order is never shuffled.  The
probabilistic view preserves list order as well: the i-th annotated axiom
in list order is "ordinal" i, which doubles as the diagram variable order.

Everything here is immutable after construction and safe to share across
concurrent readers.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Union


# ---------------------------------------------------------------------------
# Concept expressions


class Concept:
    """Base class for ALC concept expressions."""

    __slots__ = ()


@dataclass(frozen=True)
class Atomic(Concept):
    name: str


@dataclass(frozen=True)
class Top(Concept):
    pass


@dataclass(frozen=True)
class Bottom(Concept):
    pass


@dataclass(frozen=True)
class Not(Concept):
    arg: Concept


@dataclass(frozen=True)
class And(Concept):
    left: Concept
    right: Concept


@dataclass(frozen=True)
class Or(Concept):
    left: Concept
    right: Concept


@dataclass(frozen=True)
class Exists(Concept):
    role: str
    filler: Concept


@dataclass(frozen=True)
class Forall(Concept):
    role: str
    filler: Concept


TOP = Top()
BOTTOM = Bottom()


# ---------------------------------------------------------------------------
# Axioms


class Axiom:
    """Base class for axioms: concept inclusions and ABox assertions."""

    __slots__ = ()


@dataclass(frozen=True)
class SubClassOf(Axiom):
    sub: Concept
    sup: Concept


@dataclass(frozen=True)
class ConceptAssertion(Axiom):
    individual: str
    concept: Concept

    def __post_init__(self) -> None:
        if not self.individual:
            raise ValueError("individual name must be non-empty")


@dataclass(frozen=True)
class RoleAssertion(Axiom):
    subject: str
    object: str
    role: str

    def __post_init__(self) -> None:
        if not (self.subject and self.object and self.role):
            raise ValueError("individual and role names must be non-empty")


@dataclass(frozen=True)
class AnnotatedAxiom:
    """An axiom plus an optional probability annotation.

    ``probability is None`` means the axiom is certain (present in every
    world).  A probability of exactly 1.0 is kept as an annotation: the
    axiom still owns a Boolean variable, so variable indexing stays stable
    no matter the annotated value.
    """

    axiom: Axiom
    probability: float | None = None

    def __post_init__(self) -> None:
        p = self.probability
        if p is not None and not (0.0 <= p <= 1.0):
            raise ValueError(f"probability {p!r} outside [0, 1]")

    @property
    def certain(self) -> bool:
        return self.probability is None


# ---------------------------------------------------------------------------
# Queries


@dataclass(frozen=True)
class InstanceQuery:
    """Is the individual a member of the concept?"""

    individual: str
    concept: Concept


@dataclass(frozen=True)
class SubsumptionQuery:
    """Is every member of ``sub`` a member of ``sup``?"""

    sub: Concept
    sup: Concept


Query = Union[InstanceQuery, SubsumptionQuery]

# Reserved individual used to reduce subsumption to unsatisfiability.  The
# leading "@" cannot appear in a name produced by the textual format, so it
# can never collide with an individual of a parsed knowledge base.
FRESH_INDIVIDUAL = "@query"


# ---------------------------------------------------------------------------
# Knowledge base


@dataclass(frozen=True)
class KnowledgeBase:
    axioms: tuple[AnnotatedAxiom, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "axioms", tuple(self.axioms))

    def __len__(self) -> int:
        return len(self.axioms)

    def __iter__(self):
        return iter(self.axioms)

    @cached_property
    def certain_indices(self) -> tuple[int, ...]:
        return tuple(i for i, a in enumerate(self.axioms) if a.certain)

    @cached_property
    def prob_indices(self) -> tuple[int, ...]:
        """Axiom indices of the annotated axioms, in list order (= ordinal order)."""
        return tuple(i for i, a in enumerate(self.axioms) if not a.certain)

    @cached_property
    def probabilities(self) -> tuple[float, ...]:
        """Annotation values by ordinal."""
        return tuple(self.axioms[i].probability for i in self.prob_indices)

    @cached_property
    def ordinal_of(self) -> dict[int, int]:
        """Map from axiom index to ordinal in the probabilistic view."""
        return {idx: ordinal for ordinal, idx in enumerate(self.prob_indices)}

    def axiom(self, index: int) -> Axiom:
        return self.axioms[index].axiom

    def axioms_at(self, indices: Iterable[int]) -> list[Axiom]:
        return [self.axioms[i].axiom for i in sorted(indices)]

    def indexed(self, indices: Iterable[int] | None = None) -> list[tuple[int, Axiom]]:
        """(index, axiom) pairs in ascending index order."""
        if indices is None:
            return [(i, a.axiom) for i, a in enumerate(self.axioms)]
        return [(i, self.axioms[i].axiom) for i in sorted(indices)]

    @cached_property
    def vocabulary(self) -> tuple[frozenset[str], frozenset[str], frozenset[str]]:
        """(concept names, role names, individuals) over the whole KB."""
        concepts: set[str] = set()
        roles: set[str] = set()
        individuals: set[str] = set()
        for a in self.axioms:
            c, r, i = vocabulary(a.axiom)
            concepts |= c
            roles |= r
            individuals |= i
        return frozenset(concepts), frozenset(roles), frozenset(individuals)


# ---------------------------------------------------------------------------
# Negation normal form


@lru_cache(maxsize=None)
def nnf(c: Concept) -> Concept:
    """Equivalent concept with negation only directly above atomic names.

    Duals of Top and Bottom are resolved; no other normalization happens
    (conjunct order, nesting and duplicates are preserved), so structural
    equality of normal forms stays meaningful for clash detection.
    """
    t = type(c)
    if t is Atomic or t is Top or t is Bottom:
        return c
    if t is Not:
        return _nnf_not(c.arg)
    if t is And:
        return And(nnf(c.left), nnf(c.right))
    if t is Or:
        return Or(nnf(c.left), nnf(c.right))
    if t is Exists:
        return Exists(c.role, nnf(c.filler))
    if t is Forall:
        return Forall(c.role, nnf(c.filler))
    raise TypeError(f"not a concept: {c!r}")


def _nnf_not(c: Concept) -> Concept:
    """Normal form of the complement of ``c``."""
    t = type(c)
    if t is Atomic:
        return Not(c)
    if t is Top:
        return BOTTOM
    if t is Bottom:
        return TOP
    if t is Not:
        return nnf(c.arg)
    if t is And:
        return Or(_nnf_not(c.left), _nnf_not(c.right))
    if t is Or:
        return And(_nnf_not(c.left), _nnf_not(c.right))
    if t is Exists:
        return Forall(c.role, _nnf_not(c.filler))
    if t is Forall:
        return Exists(c.role, _nnf_not(c.filler))
    raise TypeError(f"not a concept: {c!r}")


# ---------------------------------------------------------------------------
# Entailment by refutation


def refutation_assertions(q: Query) -> tuple[list[Axiom], list[str]]:
    """Assertions whose addition makes the KB inconsistent iff it entails ``q``.

    Instance queries negate the asserted concept; subsumption queries
    assert a fresh individual inside ``sub and not sup``.  Returns the
    assertions together with the fresh individuals they introduce.
    """
    if isinstance(q, InstanceQuery):
        return [ConceptAssertion(q.individual, nnf(Not(q.concept)))], []
    if isinstance(q, SubsumptionQuery):
        witness = ConceptAssertion(FRESH_INDIVIDUAL, nnf(And(q.sub, Not(q.sup))))
        return [witness], [FRESH_INDIVIDUAL]
    raise TypeError(f"not a query: {q!r}")


# ---------------------------------------------------------------------------
# Syntactic signatures


def vocabulary(axiom: Axiom) -> tuple[frozenset[str], frozenset[str], frozenset[str]]:
    """(concept names, role names, individuals) occurring in the axiom."""
    concepts: set[str] = set()
    roles: set[str] = set()
    individuals: set[str] = set()
    if isinstance(axiom, SubClassOf):
        _collect(axiom.sub, concepts, roles)
        _collect(axiom.sup, concepts, roles)
    elif isinstance(axiom, ConceptAssertion):
        individuals.add(axiom.individual)
        _collect(axiom.concept, concepts, roles)
    elif isinstance(axiom, RoleAssertion):
        individuals.update((axiom.subject, axiom.object))
        roles.add(axiom.role)
    else:
        raise TypeError(f"not an axiom: {axiom!r}")
    return frozenset(concepts), frozenset(roles), frozenset(individuals)


def signature(axiom: Axiom) -> frozenset[str]:
    """All names syntactically occurring in the axiom, kinds merged."""
    concepts, roles, individuals = vocabulary(axiom)
    return concepts | roles | individuals


def _collect(c: Concept, concepts: set[str], roles: set[str]) -> None:
    t = type(c)
    if t is Atomic:
        concepts.add(c.name)
    elif t is Not:
        _collect(c.arg, concepts, roles)
    elif t is And or t is Or:
        _collect(c.left, concepts, roles)
        _collect(c.right, concepts, roles)
    elif t is Exists or t is Forall:
        roles.add(c.role)
        _collect(c.filler, concepts, roles)
    # Top and Bottom contribute nothing
