"""Knowledge base generators for experiments and fuzzing.

``generate_synthetic`` builds the layered chain family used by the
scaling experiment: layer i forwards B_{i-1} into P_i and Q_i and each of
those back into B_i, all three axioms annotated with 0.6.  The query
``B0 <= Bn`` then has exactly 2**n justifications (one branch choice per
layer) and probability 0.504**n.

``random_kb`` draws small arbitrary KBs from a seeded generator; every
annotation is an independent uniform draw from [0, 1].  The fuzz corpus
for the cross-checking suites comes from here.
"""

from __future__ import annotations

import random
from typing import Iterable

from .kb import (
    And,
    AnnotatedAxiom,
    Atomic,
    BOTTOM,
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
)

CHAIN_PROBABILITY = 0.6


def generate_synthetic(n: int) -> KnowledgeBase:
    """Layered chain KB with 3n annotated axioms, all at probability 0.6."""
    if n < 1:
        raise ValueError(f"chain length must be >= 1, got {n}")
    entries = []
    for i in range(1, n + 1):
        below = Atomic(f"B{i - 1}")
        left = Atomic(f"P{i}")
        right = Atomic(f"Q{i}")
        above = Atomic(f"B{i}")
        entries.append(AnnotatedAxiom(SubClassOf(below, And(left, right)), CHAIN_PROBABILITY))
        entries.append(AnnotatedAxiom(SubClassOf(left, above), CHAIN_PROBABILITY))
        entries.append(AnnotatedAxiom(SubClassOf(right, above), CHAIN_PROBABILITY))
    return KnowledgeBase(tuple(entries))


def chain_query(n: int) -> Query:
    """The subsumption the chain KB is built for: B0 <= Bn."""
    return SubsumptionQuery(Atomic("B0"), Atomic(f"B{n}"))


_CONCEPT_NAMES = ("A", "B", "C", "D")
_ROLE_NAMES = ("r", "s")
_INDIVIDUALS = ("a", "b", "c")


def random_concept(
    rng: random.Random,
    depth: int = 2,
    *,
    names: tuple[str, ...] = _CONCEPT_NAMES,
    roles: tuple[str, ...] = _ROLE_NAMES,
    quantifiers: bool = True,
) -> Concept:
    if depth <= 0 or rng.random() < 0.4:
        roll = rng.random()
        if roll < 0.06:
            return TOP
        if roll < 0.12:
            return BOTTOM
        return Atomic(rng.choice(names))
    kinds = ["not", "and", "or"]
    if quantifiers:
        kinds += ["exists", "forall"]
    kind = rng.choice(kinds)
    if kind == "not":
        return Not(random_concept(rng, depth - 1, names=names, roles=roles, quantifiers=quantifiers))
    if kind == "and":
        return And(
            random_concept(rng, depth - 1, names=names, roles=roles, quantifiers=quantifiers),
            random_concept(rng, depth - 1, names=names, roles=roles, quantifiers=quantifiers),
        )
    if kind == "or":
        return Or(
            random_concept(rng, depth - 1, names=names, roles=roles, quantifiers=quantifiers),
            random_concept(rng, depth - 1, names=names, roles=roles, quantifiers=quantifiers),
        )
    filler = random_concept(rng, depth - 1, names=names, roles=roles, quantifiers=quantifiers)
    role = rng.choice(roles)
    return Exists(role, filler) if kind == "exists" else Forall(role, filler)


def random_kb(
    seed: int | random.Random,
    *,
    max_axioms: int = 10,
    max_annotated: int = 8,
    depth: int = 2,
    quantifiers: bool = True,
    role_assertions: bool = True,
) -> KnowledgeBase:
    """Small arbitrary KB; annotations are independent uniform draws."""
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    count = rng.randint(3, max_axioms)
    axioms = []
    for _ in range(count):
        roll = rng.random()
        if role_assertions and roll < 0.2:
            axioms.append(
                RoleAssertion(
                    rng.choice(_INDIVIDUALS), rng.choice(_INDIVIDUALS), rng.choice(_ROLE_NAMES)
                )
            )
        elif roll < 0.55:
            axioms.append(
                ConceptAssertion(
                    rng.choice(_INDIVIDUALS),
                    random_concept(rng, depth, quantifiers=quantifiers),
                )
            )
        else:
            axioms.append(
                SubClassOf(
                    random_concept(rng, depth - 1, quantifiers=quantifiers),
                    random_concept(rng, depth, quantifiers=quantifiers),
                )
            )
    annotated_count = rng.randint(0, min(max_annotated, count))
    annotated = set(rng.sample(range(count), annotated_count))
    entries = tuple(
        AnnotatedAxiom(axiom, rng.random() if i in annotated else None)
        for i, axiom in enumerate(axioms)
    )
    return KnowledgeBase(entries)


def random_query(seed: int | random.Random, kb: KnowledgeBase) -> Query:
    """A query over the KB's own vocabulary, instance or subsumption."""
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    concepts, _, individuals = kb.vocabulary
    names = tuple(sorted(concepts)) or _CONCEPT_NAMES
    if rng.random() < 0.5 and individuals:
        individual = rng.choice(tuple(sorted(individuals)))
        return InstanceQuery(individual, random_concept(rng, 1, names=names, quantifiers=False))
    return SubsumptionQuery(
        random_concept(rng, 1, names=names, quantifiers=False),
        random_concept(rng, 1, names=names, quantifiers=False),
    )


def fuzz_corpus(
    base_seed: int, count: int, **kb_options
) -> Iterable[tuple[KnowledgeBase, Query]]:
    """Deterministic (KB, query) pairs for the agreement suites."""
    for i in range(count):
        rng = random.Random(base_seed * 1_000_003 + i)
        kb = random_kb(rng, **kb_options)
        yield kb, random_query(rng, kb)
