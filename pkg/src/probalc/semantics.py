"""Distribution semantics over annotated knowledge bases.

Each annotated axiom is an independent Boolean choice.  A world fixes
every choice; its axiom set is the certain axioms plus the chosen ones,
and its probability is the product of the chosen annotations and the
complements of the dropped ones.  The probability of a query is the total
weight of the worlds entailing it.

Two engines compute that number.  The reference engine enumerates every
world and asks the tableau; it is exponential in the number of annotated
axioms and refuses more than a configurable cap.  The pipeline engine
compiles the covering set of justifications into a monotone DNF, builds
its decision diagram and reads the probability off the diagram in one
pass.
"""

from __future__ import annotations

import math
import time
from dataclasses import asdict, dataclass, field
from typing import Iterable, Iterator

from .bdd import BddManager
from .justify import CoveringSet, all_justifications, DEFAULT_HST_BUDGET
from .kb import KnowledgeBase, Query
from .pinpoint import Formula, formula_from_justifications
from .tableau import DEFAULT_NODE_BUDGET, Deadline, ResourceLimitError, entails

DEFAULT_WORLD_LIMIT = 20


class WorldLimitError(Exception):
    """Too many annotated axioms for exhaustive world enumeration."""


@dataclass(frozen=True)
class AtomicChoice:
    """Include (1) or exclude (0) the annotated axiom with this ordinal."""

    ordinal: int
    include: int

    def __post_init__(self) -> None:
        if self.include not in (0, 1):
            raise ValueError(f"include must be 0 or 1, got {self.include!r}")


# A composite choice fixes some of the ordinals; a world fixes all of them.
CompositeChoice = frozenset


@dataclass(frozen=True)
class World:
    """A total choice; bits[i] tells whether ordinal i's axiom is included."""

    bits: tuple[int, ...]

    def selection(self) -> frozenset[AtomicChoice]:
        return frozenset(AtomicChoice(i, k) for i, k in enumerate(self.bits))

    def axiom_indices(self, kb: KnowledgeBase) -> tuple[int, ...]:
        chosen = {
            idx for idx, bit in zip(kb.prob_indices, self.bits) if bit
        }
        return tuple(
            i for i in range(len(kb)) if i in chosen or kb.axioms[i].certain
        )


def choice_probability(choice: Iterable[AtomicChoice], kb: KnowledgeBase) -> float:
    """Product of the chosen annotations and the dropped complements.

    The empty choice has probability 1.  Raises ValueError for conflicting
    or out-of-range atomic choices.
    """
    probs = kb.probabilities
    seen: dict[int, int] = {}
    for atom in choice:
        if not 0 <= atom.ordinal < len(probs):
            raise ValueError(f"ordinal {atom.ordinal} outside the probabilistic view")
        previous = seen.get(atom.ordinal)
        if previous is not None and previous != atom.include:
            raise ValueError(f"conflicting choices for ordinal {atom.ordinal}")
        seen[atom.ordinal] = atom.include
    return math.prod(
        probs[ordinal] if include else 1.0 - probs[ordinal]
        for ordinal, include in seen.items()
    )


def enumerate_worlds(
    kb: KnowledgeBase, limit: int = DEFAULT_WORLD_LIMIT
) -> Iterator[tuple[World, float]]:
    """All 2**m worlds with their probabilities; weights sum to 1.

    Raises WorldLimitError when the KB has more than ``limit`` annotated
    axioms.
    """
    probs = kb.probabilities
    m = len(probs)
    if m > limit:
        raise WorldLimitError(f"{m} annotated axioms exceed the enumeration cap of {limit}")
    for mask in range(1 << m):
        bits = tuple((mask >> i) & 1 for i in range(m))
        weight = math.prod(
            probs[i] if bit else 1.0 - probs[i] for i, bit in enumerate(bits)
        )
        yield World(bits), weight


def probability_bruteforce(
    kb: KnowledgeBase,
    query: Query,
    *,
    limit: int = DEFAULT_WORLD_LIMIT,
    node_budget: int = DEFAULT_NODE_BUDGET,
    deadline: Deadline | None = None,
) -> float:
    """Reference answer: sum the weights of the worlds entailing the query."""
    total = 0.0
    for world, weight in enumerate_worlds(kb, limit):
        if deadline is not None:
            deadline.check()
        axioms = kb.axioms_at(world.axiom_indices(kb))
        if entails(axioms, query, node_budget=node_budget, deadline=deadline):
            total += weight
    return total


@dataclass(frozen=True)
class RunConfig:
    """Knobs for one query run; defaults match the documented budgets."""

    method: str = "glassbox"
    engine: str = "bdd"
    timeout_s: float = 600.0
    tableau_node_budget: int = DEFAULT_NODE_BUDGET
    hst_node_budget: int = DEFAULT_HST_BUDGET
    world_limit: int = DEFAULT_WORLD_LIMIT
    output: str = "human"

    def __post_init__(self) -> None:
        if self.method not in ("glassbox", "blackbox"):
            raise ValueError(f"unknown method {self.method!r}")
        if self.engine not in ("bdd", "bruteforce"):
            raise ValueError(f"unknown engine {self.engine!r}")
        if self.timeout_s <= 0:
            raise ValueError("timeout_s must be positive")
        if self.output not in ("human", "json"):
            raise ValueError(f"unknown output format {self.output!r}")

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class QueryResult:
    probability: float
    covering: CoveringSet
    formula: Formula
    bdd_nodes: int
    time_ms: float
    method: str
    engine: str


def probability_query(
    kb: KnowledgeBase, query: Query, config: RunConfig | None = None
) -> QueryResult:
    """Full pipeline: justifications, covering formula, diagram, probability.

    With ``engine="bruteforce"`` the probability comes from world
    enumeration instead of the diagram; the covering set and formula are
    still reported.  A query entailed in no world yields probability 0
    with an empty covering set.
    """
    if config is None:
        config = RunConfig()
    started = time.monotonic()
    deadline = Deadline.after(config.timeout_s)
    covering = all_justifications(
        kb,
        query,
        config.method,
        node_budget=config.tableau_node_budget,
        hst_node_budget=config.hst_node_budget,
        deadline=deadline,
    )
    formula = formula_from_justifications(covering, kb)
    bdd_nodes = 0
    if config.engine == "bdd":
        manager = BddManager(len(kb.prob_indices))
        root = manager.build(formula)
        probs = dict(enumerate(kb.probabilities))
        probability = manager.probability(root, probs)
        bdd_nodes = manager.node_count(root)
    else:
        probability = probability_bruteforce(
            kb,
            query,
            limit=config.world_limit,
            node_budget=config.tableau_node_budget,
            deadline=deadline,
        )
    elapsed_ms = (time.monotonic() - started) * 1000.0
    return QueryResult(
        probability=probability,
        covering=covering,
        formula=formula,
        bdd_nodes=bdd_nodes,
        time_ms=elapsed_ms,
        method=config.method,
        engine=config.engine,
    )
