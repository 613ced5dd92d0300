"""Finding all justifications of an entailment.

A justification is a subset-minimal set of axiom indices that entails the
query.  Two routes produce a single justification: the glass-box route
minimizes the axiom trace reported by the tableau, the black-box route
grows a candidate set by signature connectivity and then minimizes it.
Both minimize with the same single-pass deletion sweep in ascending index
order, so each route is deterministic.

The complete set of justifications comes from a hitting set tree: every
tree edge removes one axiom of its parent's justification, and each child
recomputes a justification over the reduced knowledge base.  Paths that
repeat an already-visited removal set are pruned, and a node whose removal
path misses some known justification reuses it without calling the
reasoner.  The traversal terminates with exactly the set of all
justifications.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator

from .kb import KnowledgeBase, Query, signature, refutation_assertions
from .tableau import (
    DEFAULT_NODE_BUDGET,
    Deadline,
    NotEntailedError,
    ResourceLimitError,
    entails,
    trace_entailment,
)

DEFAULT_HST_BUDGET = 100_000

Justification = frozenset[int]


@dataclass(frozen=True)
class CoveringSet:
    """All justifications of a query plus search statistics."""

    justifications: frozenset[Justification]
    tableau_calls: int
    hst_nodes: int

    def __len__(self) -> int:
        return len(self.justifications)

    def __iter__(self) -> Iterator[Justification]:
        return iter(self.ordered())

    def __contains__(self, item) -> bool:
        return frozenset(item) in self.justifications

    def ordered(self) -> list[Justification]:
        """Justifications sorted by their ascending index tuples."""
        return sorted(self.justifications, key=lambda j: tuple(sorted(j)))


class _Session:
    """Per-query reasoning context: budgets, deadline and call counting."""

    __slots__ = ("kb", "query", "node_budget", "deadline", "tableau_calls")

    def __init__(self, kb, query, node_budget, deadline):
        self.kb = kb
        self.query = query
        self.node_budget = node_budget
        self.deadline = deadline
        self.tableau_calls = 0

    def entails(self, indices: Iterable[int]) -> bool:
        self.tableau_calls += 1
        return entails(
            self.kb.axioms_at(indices),
            self.query,
            node_budget=self.node_budget,
            deadline=self.deadline,
        )

    def trace(self, indices: Iterable[int]) -> frozenset[int]:
        self.tableau_calls += 1
        return trace_entailment(
            self.kb.indexed(indices),
            self.query,
            node_budget=self.node_budget,
            deadline=self.deadline,
        )


def minimize(
    candidate: Iterable[int],
    kb: KnowledgeBase,
    query: Query,
    *,
    node_budget: int = DEFAULT_NODE_BUDGET,
    deadline: Deadline | None = None,
) -> Justification:
    """Shrink an entailing axiom set to a subset-minimal one.

    One linear sweep in ascending index order: drop each axiom whose
    removal preserves the entailment.  Raises NotEntailedError when the
    candidate does not entail the query in the first place.
    """
    session = _Session(kb, query, node_budget, deadline)
    return _minimize(session, candidate)


def _minimize(session: _Session, candidate: Iterable[int]) -> Justification:
    current = set(candidate)
    if not session.entails(current):
        raise NotEntailedError("candidate does not entail the query")
    for index in sorted(current):
        reduced = current - {index}
        if session.entails(reduced):
            current = reduced
    return frozenset(current)


def single_justification(
    kb: KnowledgeBase,
    query: Query,
    method: str = "glassbox",
    *,
    subset: Iterable[int] | None = None,
    node_budget: int = DEFAULT_NODE_BUDGET,
    deadline: Deadline | None = None,
) -> Justification:
    """One justification drawn from ``subset`` (default: the whole KB).

    Raises NotEntailedError when the selected axioms do not entail the
    query, and ValueError for an unknown method name.
    """
    session = _Session(kb, query, node_budget, deadline)
    indices = sorted(subset) if subset is not None else list(range(len(kb)))
    return _single(session, indices, method)


def _single(session: _Session, indices: list[int], method: str) -> Justification:
    if method == "glassbox":
        return _minimize(session, session.trace(indices))
    if method == "blackbox":
        return _minimize(session, _expand(session, indices))
    raise ValueError(f"unknown justification method {method!r}")


def _expand(session: _Session, indices: list[int]) -> list[int]:
    """Black-box expansion: pull in axioms wave by wave along shared names.

    Starts from the query's signature and stops at the first wave whose
    working set entails the query.  When the waves stall without reaching
    entailment (the entailment may rest on an inconsistency sharing no
    names with the query), one final wave adds everything left.
    """
    assertions, _ = refutation_assertions(session.query)
    reached: set[str] = set()
    for axiom in assertions:
        reached |= signature(axiom)
    working: list[int] = []
    remaining = list(indices)
    while True:
        wave = [i for i in remaining if signature(session.kb.axiom(i)) & reached]
        if not wave:
            wave = remaining
        working.extend(wave)
        remaining = [i for i in remaining if i not in set(wave)]
        for i in wave:
            reached |= signature(session.kb.axiom(i))
        if session.entails(working):
            return working
        if not remaining:
            raise NotEntailedError("axioms do not entail the query")


def all_justifications(
    kb: KnowledgeBase,
    query: Query,
    method: str = "glassbox",
    *,
    node_budget: int = DEFAULT_NODE_BUDGET,
    hst_node_budget: int = DEFAULT_HST_BUDGET,
    deadline: Deadline | None = None,
) -> CoveringSet:
    """Every justification of the query, via a hitting set tree.

    Returns an empty covering set when the query is not entailed at all.
    Raises ResourceLimitError when the tree budget or deadline runs out.
    """
    session = _Session(kb, query, node_budget, deadline)
    all_indices = list(range(len(kb)))
    if not session.entails(all_indices):
        return CoveringSet(frozenset(), session.tableau_calls, 0)

    root = _single(session, all_indices, method)
    # Discovery order makes node reuse deterministic.
    found: list[Justification] = [root]
    visited_paths: set[frozenset[int]] = {frozenset()}
    hst_nodes = 1
    queue: deque[tuple[frozenset[int], Justification]] = deque([(frozenset(), root)])
    while queue:
        if deadline is not None:
            deadline.check()
        path, label = queue.popleft()
        for removed in sorted(label):
            new_path = path | {removed}
            if new_path in visited_paths:
                continue
            visited_paths.add(new_path)
            hst_nodes += 1
            if hst_nodes > hst_node_budget:
                raise ResourceLimitError(
                    f"hitting set tree budget of {hst_node_budget} exhausted",
                    {
                        "justifications": frozenset(found),
                        "hst_nodes": hst_nodes,
                        "tableau_calls": session.tableau_calls,
                    },
                )
            reused = next((j for j in found if j.isdisjoint(new_path)), None)
            if reused is not None:
                queue.append((new_path, reused))
                continue
            reduced = [i for i in all_indices if i not in new_path]
            if session.entails(reduced):
                label_for_child = _single(session, reduced, method)
                found.append(label_for_child)
                queue.append((new_path, label_for_child))
            # Otherwise the path hits every justification: a closed leaf.
    return CoveringSet(frozenset(found), session.tableau_calls, hst_nodes)
