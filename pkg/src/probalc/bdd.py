"""Reduced ordered binary decision diagrams with hash-consing.

One manager owns all nodes of a diagram family.  References are plain
ints: 0 and 1 are the terminals, higher values index into the node table.
The unique table guarantees that structurally equal subdiagrams share one
reference and that no node has equal branches, so two functions over the
same manager are equivalent exactly when their references are equal.
There are no complement edges.

Variables are the ordinals of a knowledge base's probabilistic view and
the variable order is fixed to ordinal order.  The probability of the
function is computed by one bottom-up pass: at a node for variable i with
annotation p_i, the value is p_i times the high branch's value plus
(1 - p_i) times the low branch's value.  Sharing makes the pass linear in
the diagram size.
"""

from __future__ import annotations

from typing import Callable, Iterator, Mapping

from .pinpoint import Conj, Disj, FalseFormula, Formula, TrueFormula, Var

FALSE_REF = 0
TRUE_REF = 1


class MissingProbabilityError(KeyError):
    """A reachable variable has no annotation value."""


class BddManager:
    def __init__(self, var_count: int):
        if var_count < 0:
            raise ValueError("var_count must be >= 0")
        self.var_count = var_count
        # Terminals carry a sentinel level below every real variable.
        self._entries: list[tuple[int, int, int]] = [
            (var_count, FALSE_REF, FALSE_REF),
            (var_count, TRUE_REF, TRUE_REF),
        ]
        self._unique: dict[tuple[int, int, int], int] = {}
        self._apply_cache: dict[tuple[str, int, int], int] = {}

    # -- structure ---------------------------------------------------------

    def level(self, ref: int) -> int:
        return self._entries[ref][0]

    def low(self, ref: int) -> int:
        return self._entries[ref][1]

    def high(self, ref: int) -> int:
        return self._entries[ref][2]

    def is_terminal(self, ref: int) -> bool:
        return ref <= TRUE_REF

    def _node(self, level: int, low: int, high: int) -> int:
        if low == high:
            return low
        key = (level, low, high)
        ref = self._unique.get(key)
        if ref is None:
            ref = len(self._entries)
            self._entries.append(key)
            self._unique[key] = ref
        return ref

    def var(self, ordinal: int) -> int:
        """The diagram of the bare variable: (ordinal, low=0, high=1)."""
        if not 0 <= ordinal < self.var_count:
            raise ValueError(f"variable ordinal {ordinal} outside 0..{self.var_count - 1}")
        return self._node(ordinal, FALSE_REF, TRUE_REF)

    # -- boolean operations ------------------------------------------------

    def apply_and(self, a: int, b: int) -> int:
        if a == FALSE_REF or b == FALSE_REF:
            return FALSE_REF
        if a == TRUE_REF:
            return b
        if b == TRUE_REF or a == b:
            return a
        return self._apply("and", self.apply_and, a, b)

    def apply_or(self, a: int, b: int) -> int:
        if a == TRUE_REF or b == TRUE_REF:
            return TRUE_REF
        if a == FALSE_REF:
            return b
        if b == FALSE_REF or a == b:
            return a
        return self._apply("or", self.apply_or, a, b)

    def _apply(self, op: str, rec: Callable[[int, int], int], a: int, b: int) -> int:
        # Both operations are commutative: normalize the cache key.
        key = (op, a, b) if a <= b else (op, b, a)
        cached = self._apply_cache.get(key)
        if cached is not None:
            return cached
        la, lb = self._entries[a][0], self._entries[b][0]
        top = la if la <= lb else lb
        a_low, a_high = (self.low(a), self.high(a)) if la == top else (a, a)
        b_low, b_high = (self.low(b), self.high(b)) if lb == top else (b, b)
        result = self._node(top, rec(a_low, b_low), rec(a_high, b_high))
        self._apply_cache[key] = result
        return result

    def build(self, formula: Formula) -> int:
        """Compile a monotone formula bottom-up into a canonical diagram."""
        t = type(formula)
        if t is Var:
            return self.var(formula.ordinal)
        if t is Conj:
            ref = TRUE_REF
            for part in formula.parts:
                ref = self.apply_and(ref, self.build(part))
            return ref
        if t is Disj:
            ref = FALSE_REF
            for part in formula.parts:
                ref = self.apply_or(ref, self.build(part))
            return ref
        if t is TrueFormula:
            return TRUE_REF
        if t is FalseFormula:
            return FALSE_REF
        raise TypeError(f"not a formula: {formula!r}")

    def equivalent(self, a: int, b: int) -> bool:
        """Canonicity makes equivalence a reference comparison."""
        return a == b

    # -- analysis ----------------------------------------------------------

    def probability(
        self,
        ref: int,
        probs: Mapping[int, float],
        memo: dict[int, float] | None = None,
    ) -> float:
        """Probability that the function is true under independent variables.

        ``probs`` maps each reachable variable ordinal to its annotation.
        Pass a dict as ``memo`` to observe the per-node values of the
        traversal afterwards.
        """
        if memo is None:
            memo = {}

        def walk(r: int) -> float:
            if r == TRUE_REF:
                return 1.0
            if r == FALSE_REF:
                return 0.0
            known = memo.get(r)
            if known is not None:
                return known
            level, low, high = self._entries[r]
            try:
                p = probs[level]
            except KeyError:
                raise MissingProbabilityError(
                    f"no probability for variable ordinal {level}"
                ) from None
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"probability {p!r} outside [0, 1]")
            value = p * walk(high) + (1.0 - p) * walk(low)
            memo[r] = value
            return value

        return walk(ref)

    def node_count(self, ref: int) -> int:
        """Number of distinct internal nodes reachable from ``ref``."""
        seen: set[int] = set()
        stack = [ref]
        while stack:
            r = stack.pop()
            if r <= TRUE_REF or r in seen:
                continue
            seen.add(r)
            stack.append(self.low(r))
            stack.append(self.high(r))
        return len(seen)

    def complement(self, ref: int) -> int:
        """The diagram of the negated function (terminals swapped)."""
        memo: dict[int, int] = {FALSE_REF: TRUE_REF, TRUE_REF: FALSE_REF}

        def walk(r: int) -> int:
            known = memo.get(r)
            if known is not None:
                return known
            level, low, high = self._entries[r]
            result = self._node(level, walk(low), walk(high))
            memo[r] = result
            return result

        return walk(ref)

    def one_paths(self, ref: int) -> Iterator[dict[int, int]]:
        """Root-to-1 paths as {ordinal: decision} dicts over visited levels.

        The paths describe pairwise incompatible partial choices whose
        union of worlds is exactly where the function is true.
        """
        def walk(r: int, path: dict[int, int]) -> Iterator[dict[int, int]]:
            if r == TRUE_REF:
                yield dict(path)
                return
            if r == FALSE_REF:
                return
            level, low, high = self._entries[r]
            path[level] = 0
            yield from walk(low, path)
            path[level] = 1
            yield from walk(high, path)
            del path[level]

        yield from walk(ref, {})

    def to_dot(self, ref: int) -> str:
        """GraphViz text; the 0-branch is drawn dashed."""
        lines = [
            "digraph bdd {",
            '  f [shape=box, label="0"];',
            '  t [shape=box, label="1"];',
        ]
        name = {FALSE_REF: "f", TRUE_REF: "t"}
        order: list[int] = []
        seen: set[int] = set()

        def walk(r: int) -> None:
            if r <= TRUE_REF or r in seen:
                return
            seen.add(r)
            order.append(r)
            walk(self.low(r))
            walk(self.high(r))

        walk(ref)
        for r in order:
            name[r] = f"n{r}"
            lines.append(f'  n{r} [label="x{self.level(r) + 1}"];')
        for r in order:
            lines.append(f"  n{r} -> {name[self.high(r)]};")
            lines.append(f"  n{r} -> {name[self.low(r)]} [style=dashed];")
        lines.append("}")
        return "\n".join(lines) + "\n"
