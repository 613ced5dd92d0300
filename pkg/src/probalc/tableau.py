"""Tableau decision procedure for ALC with axiom tracing.

Entailment is decided by refutation: the query's counter-assertions are
added and the procedure searches for a clash-free completion graph.  Rule
priority is fixed (clash detection, then conjunction, then value
restriction, then inclusion axioms, then disjunction, then existential
generation) with nodes visited in creation order, so runs are fully
deterministic.  Deferring branching and node generation this way also
keeps traces small.

Every labeled concept carries a trace: the set of axiom indices its
derivation used.  Rule applications take the union of their premises'
traces; applying an inclusion axiom adds that axiom's own index; a clash
reports the union of the traces of the two clashing concepts.  When the
refutation closes, the union of one clash trace per explored branch is an
axiom set that still entails the query (usually a non-minimal one).

Roles have no inverses, so the subtree below a fresh existential witness
never constrains the rest of the graph.  Each witness is therefore solved
in isolation by a recursive call instead of being woven into the global
branch tree, which keeps memory and branching linear in the depth.
Termination relies on ancestor subset-blocking: an existential is never
expanded on a node whose label is included in an ancestor's label.  A
node budget and an optional cooperative deadline bound runaway inputs.
"""

from __future__ import annotations

import time
from typing import Iterable

from .kb import (
    And,
    Atomic,
    Axiom,
    Bottom,
    Concept,
    ConceptAssertion,
    Exists,
    Forall,
    Not,
    Or,
    Query,
    RoleAssertion,
    SubClassOf,
    Top,
    nnf,
    refutation_assertions,
)

DEFAULT_NODE_BUDGET = 100_000

_EMPTY: frozenset[int] = frozenset()


class ResourceLimitError(Exception):
    """A node budget or a deadline was exhausted before an answer was found."""

    def __init__(self, message: str, partial: dict | None = None):
        super().__init__(message)
        self.partial = partial or {}


class NotEntailedError(Exception):
    """Raised when an operation requires an entailment that does not hold."""


class Deadline:
    """Absolute point in monotonic time checked cooperatively by the loops."""

    __slots__ = ("at",)

    def __init__(self, at: float):
        self.at = at

    @classmethod
    def after(cls, seconds: float) -> "Deadline":
        return cls(time.monotonic() + seconds)

    def check(self) -> None:
        if time.monotonic() > self.at:
            raise ResourceLimitError("deadline exceeded")


class _Run:
    """Mutable per-call bookkeeping shared by all branches."""

    __slots__ = ("gcis", "node_budget", "deadline", "nodes_created")

    def __init__(self, gcis, node_budget: int, deadline: Deadline | None):
        self.gcis = gcis
        self.node_budget = node_budget
        self.deadline = deadline
        self.nodes_created = 0

    def charge_node(self) -> None:
        self.nodes_created += 1
        if self.nodes_created > self.node_budget:
            raise ResourceLimitError(
                f"node budget of {self.node_budget} exhausted",
                {"nodes_created": self.nodes_created},
            )


class _Graph:
    """One branch of the completion graph.

    ``labels[n]`` maps each concept in node n's label to its trace;
    insertion order doubles as the deterministic scan order.  Branching
    copies the graph, so rule applications never need undoing.
    """

    __slots__ = ("run", "labels", "succ", "clash")

    def __init__(self, run: _Run):
        self.run = run
        self.labels: list[dict[Concept, frozenset[int]]] = []
        self.succ: list[dict[str, dict[int, frozenset[int]]]] = []
        self.clash: frozenset[int] | None = None

    def copy(self) -> "_Graph":
        g = _Graph.__new__(_Graph)
        g.run = self.run
        g.labels = [dict(d) for d in self.labels]
        g.succ = [{role: dict(m) for role, m in s.items()} for s in self.succ]
        g.clash = self.clash
        return g

    def new_node(self) -> int:
        self.run.charge_node()
        node = len(self.labels)
        self.labels.append({})
        self.succ.append({})
        for trace, constraint in self.run.gcis:
            self.add(node, constraint, trace)
            if self.clash is not None:
                break
        return node

    def add(self, node: int, concept: Concept, trace: frozenset[int]) -> None:
        if self.clash is not None:
            return
        label = self.labels[node]
        if concept in label:
            return
        label[concept] = trace
        t = type(concept)
        if t is Bottom:
            self.clash = trace
        elif t is Atomic:
            other = label.get(Not(concept))
            if other is not None:
                self.clash = trace | other
        elif t is Not:
            other = label.get(concept.arg)
            if other is not None:
                self.clash = trace | other
        elif t is And:
            self.add(node, concept.left, trace)
            self.add(node, concept.right, trace)
        elif t is Forall:
            edges = self.succ[node].get(concept.role)
            if edges:
                for succ, edge_trace in list(edges.items()):
                    self.add(succ, concept.filler, trace | edge_trace)
                    if self.clash is not None:
                        return
        # Or and Exists wait for their turn in the search loop; Top is inert.

    def add_edge(self, node: int, role: str, succ: int, trace: frozenset[int]) -> None:
        if self.clash is not None:
            return
        edges = self.succ[node].setdefault(role, {})
        if succ in edges:
            return
        edges[succ] = trace
        for concept, concept_trace in list(self.labels[node].items()):
            if type(concept) is Forall and concept.role == role:
                self.add(succ, concept.filler, concept_trace | trace)
                if self.clash is not None:
                    return

    def next_disjunction(self) -> tuple[int, Or] | None:
        for node in range(len(self.labels)):
            label = self.labels[node]
            for concept in label:
                if (
                    type(concept) is Or
                    and concept.left not in label
                    and concept.right not in label
                ):
                    return node, concept
        return None


def _solve(graph: _Graph, ancestors: tuple[frozenset, ...]) -> frozenset[int] | None:
    """Search this branch; None means a clash-free completion exists.

    ``ancestors`` holds the label key sets on the witness chain above this
    graph, for blocking.  A closed search returns the union of one clash
    trace per explored branch, the traced entailment certificate.
    """
    run = graph.run
    if graph.clash is not None:
        return graph.clash
    if run.deadline is not None:
        run.deadline.check()
    pick = graph.next_disjunction()
    if pick is not None:
        node, disjunction = pick
        trace = graph.labels[node][disjunction]
        if disjunction.left == disjunction.right:
            sides: tuple[Concept, ...] = (disjunction.left,)
        else:
            sides = (disjunction.left, disjunction.right)
        closed = _EMPTY
        for side in sides:
            branch = graph.copy()
            branch.add(node, side, trace)
            result = _solve(branch, ancestors)
            if result is None:
                return None
            closed |= result
        return closed
    # No disjunction is pending, so every label is final: generate the
    # witnesses, each existential solved in its own subtree.
    for node in range(len(graph.labels)):
        label = graph.labels[node]
        blocked: bool | None = None
        for concept in label:
            if type(concept) is not Exists:
                continue
            edges = graph.succ[node].get(concept.role)
            if edges and any(concept.filler in graph.labels[s] for s in edges):
                continue
            if blocked is None:
                blocked = any(label.keys() <= keys for keys in ancestors)
            if blocked:
                break
            trace = label[concept]
            seed = [(trace, concept.filler)]
            for other, other_trace in label.items():
                if type(other) is Forall and other.role == concept.role:
                    seed.append((other_trace | trace, other.filler))
            result = _solve_subtree(run, seed, ancestors + (frozenset(label.keys()),))
            if result is not None:
                return result
    return None


def _solve_subtree(
    run: _Run,
    seed: list[tuple[frozenset[int], Concept]],
    ancestors: tuple[frozenset, ...],
) -> frozenset[int] | None:
    """Satisfiability of one fresh witness node below the current graph."""
    graph = _Graph(run)
    root = graph.new_node()
    for trace, concept in seed:
        graph.add(root, concept, trace)
    return _solve(graph, ancestors)


def _gci_constraint(axiom: SubClassOf) -> Concept:
    return _constraint_cached(axiom.sub, axiom.sup)


_constraint_cache: dict[tuple[Concept, Concept], Concept] = {}


def _constraint_cached(sub: Concept, sup: Concept) -> Concept:
    key = (sub, sup)
    cached = _constraint_cache.get(key)
    if cached is None:
        cached = nnf(Or(Not(sub), sup))
        _constraint_cache[key] = cached
    return cached


def _refute(
    seeded: list[tuple[frozenset[int], Axiom]],
    node_budget: int,
    deadline: Deadline | None,
) -> frozenset[int] | None:
    """Run the tableau on the given axioms; each axiom carries its trace seed.

    Returns None when a clash-free completion graph exists (the axiom set
    is consistent) and the union of branch clash traces otherwise.
    """
    gcis = [
        (trace, _gci_constraint(axiom))
        for trace, axiom in seeded
        if type(axiom) is SubClassOf
    ]
    run = _Run(tuple(gcis), node_budget, deadline)
    graph = _Graph(run)
    nodes: dict[str, int] = {}

    def node_for(name: str) -> int:
        node = nodes.get(name)
        if node is None:
            node = graph.new_node()
            nodes[name] = node
        return node

    for trace, axiom in seeded:
        t = type(axiom)
        if t is ConceptAssertion:
            graph.add(node_for(axiom.individual), nnf(axiom.concept), trace)
        elif t is RoleAssertion:
            subject = node_for(axiom.subject)
            obj = node_for(axiom.object)
            graph.add_edge(subject, axiom.role, obj, trace)
        if graph.clash is not None:
            return graph.clash
    if not nodes:
        # The domain is never empty: a single anonymous element must satisfy
        # every inclusion axiom.
        graph.new_node()
    return _solve(graph, ())


def is_consistent(
    axioms: Iterable[Axiom],
    *,
    node_budget: int = DEFAULT_NODE_BUDGET,
    deadline: Deadline | None = None,
) -> bool:
    """Does the axiom set have a model?"""
    seeded = [(_EMPTY, axiom) for axiom in axioms]
    return _refute(seeded, node_budget, deadline) is None


def entails(
    axioms: Iterable[Axiom],
    query: Query,
    *,
    node_budget: int = DEFAULT_NODE_BUDGET,
    deadline: Deadline | None = None,
) -> bool:
    """Does the axiom set entail the query?  Inconsistent sets entail everything."""
    seeded = [(_EMPTY, axiom) for axiom in axioms]
    extra, _ = refutation_assertions(query)
    seeded.extend((_EMPTY, axiom) for axiom in extra)
    return _refute(seeded, node_budget, deadline) is not None


def trace_entailment(
    indexed_axioms: Iterable[tuple[int, Axiom]],
    query: Query,
    *,
    node_budget: int = DEFAULT_NODE_BUDGET,
    deadline: Deadline | None = None,
) -> frozenset[int]:
    """Axiom indices collected while refuting the negated query.

    The returned set always entails the query; it is not necessarily
    minimal.  Raises NotEntailedError when the query is not entailed.
    """
    seeded: list[tuple[frozenset[int], Axiom]] = [
        (frozenset((index,)), axiom) for index, axiom in indexed_axioms
    ]
    extra, _ = refutation_assertions(query)
    seeded.extend((_EMPTY, axiom) for axiom in extra)
    result = _refute(seeded, node_budget, deadline)
    if result is None:
        raise NotEntailedError("query is not entailed by the given axioms")
    return result
