"""Finite posets given by cover relations, marked posets, star elements and
regularity."""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Iterable, Mapping

from .errors import CycleError, InvalidMarking, NotRegularizable, UnknownElement

Element = Hashable


class Poset:
    """A finite poset stored as its Hasse diagram.

    ``covers`` holds pairs ``(q, p)`` meaning *p covers q*.  Instances are
    built by :func:`validate_poset`, which guarantees acyclicity and
    transitive irreducibility; the constructor itself trusts its input.
    """

    def __init__(self, elements: Iterable[Element], covers: Iterable[tuple[Element, Element]]):
        self.elements = tuple(elements)
        self.covers = frozenset((q, p) for q, p in covers)
        self._index = {e: i for i, e in enumerate(self.elements)}
        up: dict = {e: [] for e in self.elements}
        down: dict = {e: [] for e in self.elements}
        for q, p in sorted(self.covers, key=lambda c: (self._index[c[0]], self._index[c[1]])):
            up[q].append(p)
            down[p].append(q)
        self._up = {e: tuple(v) for e, v in up.items()}
        self._down = {e: tuple(v) for e, v in down.items()}

    def __repr__(self):
        return f"Poset({len(self.elements)} elements, {len(self.covers)} covers)"

    def __eq__(self, other):
        return (
            isinstance(other, Poset)
            and set(self.elements) == set(other.elements)
            and self.covers == other.covers
        )

    def __hash__(self):
        return hash((frozenset(self.elements), self.covers))

    def __contains__(self, element):
        return element in self._index

    def __len__(self):
        return len(self.elements)

    def _check(self, *elements):
        for e in elements:
            if e not in self._index:
                raise UnknownElement(e)

    def index(self, element) -> int:
        self._check(element)
        return self._index[element]

    @cached_property
    def topological_order(self) -> tuple:
        """Bottom-up linear extension; ties broken by position in ``elements``."""
        indeg = {e: len(self._down[e]) for e in self.elements}
        heap = [(self._index[e], e) for e in self.elements if indeg[e] == 0]
        heapq.heapify(heap)
        order = []
        while heap:
            _, e = heapq.heappop(heap)
            order.append(e)
            for p in self._up[e]:
                indeg[p] -= 1
                if indeg[p] == 0:
                    heapq.heappush(heap, (self._index[p], p))
        return tuple(order)

    @cached_property
    def _strict_upsets(self) -> dict:
        ups: dict = {}
        for e in reversed(self.topological_order):
            acc = set()
            for p in self._up[e]:
                acc.add(p)
                acc |= ups[p]
            ups[e] = frozenset(acc)
        return ups

    @cached_property
    def _strict_downsets(self) -> dict:
        downs: dict = {}
        for e in self.topological_order:
            acc = set()
            for q in self._down[e]:
                acc.add(q)
                acc |= downs[q]
            downs[e] = frozenset(acc)
        return downs

    def upset(self, p) -> frozenset:
        """Elements strictly above ``p``."""
        self._check(p)
        return self._strict_upsets[p]

    def downset(self, p) -> frozenset:
        """Elements strictly below ``p``."""
        self._check(p)
        return self._strict_downsets[p]

    def lt(self, p, q) -> bool:
        self._check(p, q)
        return q in self._strict_upsets[p]

    def leq(self, p, q) -> bool:
        return p == q or self.lt(p, q)

    def comparable(self, p, q) -> bool:
        return self.leq(p, q) or self.leq(q, p)

    def covering_elements(self, p) -> tuple:
        """Elements covering ``p`` (written ``p ->`` in the literature)."""
        self._check(p)
        return self._up[p]

    def covered_elements(self, p) -> tuple:
        """Elements covered by ``p``."""
        self._check(p)
        return self._down[p]

    @cached_property
    def minimal_elements(self) -> tuple:
        return tuple(e for e in self.elements if not self._down[e])

    @cached_property
    def maximal_elements(self) -> tuple:
        return tuple(e for e in self.elements if not self._up[e])

    def maximal_chains_ending(self, p) -> list[tuple]:
        """All saturated chains from a minimal element of the poset up to ``p``.

        Chains are listed bottom element first.
        """
        self._check(p)
        out: list[tuple] = []

        def walk(e, suffix):
            lower = self._down[e]
            if not lower:
                out.append((e,) + suffix)
                return
            for q in lower:
                walk(q, (e,) + suffix)

        walk(p, ())
        return out

    def maximal_chains_starting(self, p) -> list[tuple]:
        """All saturated chains from ``p`` up to a maximal element."""
        self._check(p)
        out: list[tuple] = []

        def walk(e, prefix):
            upper = self._up[e]
            if not upper:
                out.append(prefix + (e,))
                return
            for q in upper:
                walk(q, prefix + (e,))

        walk(p, ())
        return out

    @cached_property
    def _chains_ending_counts(self) -> dict:
        counts: dict = {}
        for e in self.topological_order:
            lower = self._down[e]
            counts[e] = 1 if not lower else sum(counts[q] for q in lower)
        return counts

    def count_maximal_chains_ending(self, p) -> int:
        self._check(p)
        return self._chains_ending_counts[p]

    def induced(self, subset: Iterable[Element]) -> "Poset":
        """Induced subposet on ``subset`` (order restricted, then reduced)."""
        keep = set(subset)
        self._check(*keep)
        elems = [e for e in self.elements if e in keep]
        rel = [(q, p) for q in elems for p in self._strict_upsets[q] if p in keep]
        return validate_poset(elems, rel)


def _find_cycle(elements, succ) -> list | None:
    color = {e: 0 for e in elements}
    parent: dict = {}
    for root in elements:
        if color[root]:
            continue
        stack = [(root, iter(succ[root]))]
        color[root] = 1
        while stack:
            node, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                color[node] = 2
                stack.pop()
                continue
            if color[nxt] == 1:
                cycle = [nxt]
                cur = node
                while cur != nxt:
                    cycle.append(cur)
                    cur = parent[cur]
                cycle.append(nxt)
                return list(reversed(cycle))
            if color[nxt] == 0:
                color[nxt] = 1
                parent[nxt] = node
                stack.append((nxt, iter(succ[nxt])))
    return None


def validate_poset(elements: Iterable[Element], raw_relations: Iterable[tuple[Element, Element]]) -> Poset:
    """Build a :class:`Poset` from an arbitrary relation.

    ``(q, p)`` in ``raw_relations`` means ``q < p``.  The cover set of the
    result is the transitive reduction of the transitive closure.
    """
    elements = list(dict.fromkeys(elements))
    known = set(elements)
    succ: dict = {e: [] for e in elements}
    for q, p in raw_relations:
        for e in (q, p):
            if e not in known:
                raise UnknownElement(e)
        if q == p:
            raise CycleError([q, q])
        if p not in succ[q]:
            succ[q].append(p)
    cycle = _find_cycle(elements, succ)
    if cycle is not None:
        raise CycleError(cycle)

    closure: dict = {}

    def reach(e):
        if e not in closure:
            acc = set()
            for p in succ[e]:
                acc.add(p)
                acc |= reach(p)
            closure[e] = acc
        return closure[e]

    for e in elements:
        reach(e)
    covers = set()
    for q in elements:
        above = closure[q]
        for p in above:
            if not any(p in closure[r] for r in above if r != p):
                covers.add((q, p))
    return Poset(elements, covers)


class MarkedPoset:
    """A poset together with a marked subset and a nonnegative integer marking.

    The marked subset is the key set of ``marking``; it must contain every
    minimal and every maximal element.
    """

    def __init__(self, poset: Poset, marking: Mapping[Element, int]):
        self.poset = poset
        marking = dict(marking)
        for a, v in marking.items():
            if a not in poset:
                raise UnknownElement(a)
            if isinstance(v, bool) or not isinstance(v, int) or v < 0:
                raise InvalidMarking(f"marking of {a!r} must be a nonnegative integer, got {v!r}")
        missing = [e for e in poset.minimal_elements + poset.maximal_elements if e not in marking]
        if missing:
            raise InvalidMarking(f"extremal elements must be marked: {sorted(map(str, set(missing)))}")
        self.marking = {e: marking[e] for e in poset.elements if e in marking}

    def __repr__(self):
        return f"MarkedPoset({self.poset!r}, marking={self.marking})"

    def __eq__(self, other):
        return isinstance(other, MarkedPoset) and self.poset == other.poset and self.marking == other.marking

    def __hash__(self):
        return hash((self.poset, frozenset(self.marking.items())))

    @cached_property
    def marked(self) -> frozenset:
        return frozenset(self.marking)

    @cached_property
    def marked_order(self) -> tuple:
        """Marked elements in the order of ``poset.elements``."""
        return tuple(self.marking)

    @cached_property
    def unmarked(self) -> tuple:
        """Unmarked elements in bottom-up topological order (the coordinate order)."""
        return tuple(e for e in self.poset.topological_order if e not in self.marking)

    def is_marked(self, e) -> bool:
        return e in self.marking

    def with_marking(self, marking: Mapping[Element, int]) -> "MarkedPoset":
        if set(marking) != set(self.marking):
            raise InvalidMarking("new marking must be defined on the same marked subset")
        return MarkedPoset(self.poset, marking)

    def scaled(self, n: int) -> "MarkedPoset":
        return MarkedPoset(self.poset, {a: n * v for a, v in self.marking.items()})

    def extended(self, values: Mapping[Element, int]) -> "MarkedPoset":
        """Same poset with the elements of ``values`` additionally marked."""
        marking = dict(self.marking)
        for e, v in values.items():
            if e in marking:
                raise InvalidMarking(f"{e!r} is already marked")
            marking[e] = v
        return MarkedPoset(self.poset, marking)

    def is_linearly_ordered_marking(self) -> bool:
        marked = sorted(self.marked, key=self.poset.index)
        return all(self.poset.comparable(a, b) for i, a in enumerate(marked) for b in marked[i + 1:])

    @cached_property
    def _rooted_counts(self) -> dict:
        counts: dict = {}
        for e in self.poset.topological_order:
            counts[e] = sum(1 if self.is_marked(q) else counts[q] for q in self.poset.covered_elements(e))
        return counts

    def count_marked_chains_ending(self, p) -> int:
        """Saturated chains that end in ``p``, start at a marked element and
        pass only through unmarked elements in between."""
        self.poset._check(p)
        return self._rooted_counts[p]


def star_elements(m: MarkedPoset) -> frozenset:
    """Unmarked elements with at least two covering elements and at least two
    maximal chains ending in them."""
    P = m.poset
    return frozenset(
        p
        for p in m.unmarked
        if len(P.covering_elements(p)) >= 2 and P.count_maximal_chains_ending(p) >= 2
    )


@dataclass(frozen=True)
class RegularityReport:
    regular: bool
    violations: list = field(default_factory=list)  # (condition, witness tuple)


def check_regular(m: MarkedPoset) -> RegularityReport:
    P, lam = m.poset, m.marking
    marked = [e for e in P.elements if e in lam]
    violations = []
    for a in marked:
        for b in P.covering_elements(a):
            if b in lam:
                violations.append((1, (a, b)))
    for i, a in enumerate(marked):
        for b in marked[i + 1:]:
            if lam[a] == lam[b]:
                violations.append((2, (a, b)))
    for a in marked:
        for x in P.covering_elements(a):
            if x in lam:
                continue
            for b in marked:
                if P.lt(b, x) and lam[a] < lam[b]:
                    violations.append((3, (a, x, b)))
        for x in P.covered_elements(a):
            if x in lam:
                continue
            for b in marked:
                if P.lt(x, b) and lam[b] < lam[a]:
                    violations.append((4, (x, a, b)))
    return RegularityReport(not violations, violations)


def _merge(m: MarkedPoset, group: set, target, value: int, cmap: dict) -> MarkedPoset:
    P = m.poset
    rename = {e: (target if e in group else e) for e in P.elements}
    elems = [e for e in P.elements if e not in group or e == target]
    rel = {(rename[q], rename[p]) for q, p in P.covers if rename[q] != rename[p]}
    marking = {rename[a]: v for a, v in m.marking.items() if rename[a] not in group}
    marking[target] = value
    for old, new in cmap.items():
        cmap[old] = rename[new]
    return MarkedPoset(validate_poset(elems, rel), marking)


def _drop_cover(m: MarkedPoset, cover) -> MarkedPoset:
    P = m.poset
    return MarkedPoset(Poset(P.elements, P.covers - {cover}), m.marking)


def regularize(m: MarkedPoset) -> tuple[MarkedPoset, dict]:
    """Apply chain/vertex retractions until the marked poset is regular.

    Returns the retracted marked poset and a map sending every original
    unmarked element to the element it became (possibly a marked one, when
    its coordinate was forced to a constant).  Raises
    :class:`NotRegularizable` when violations remain and no retraction
    applies.
    """
    cmap = {e: e for e in m.unmarked}
    while True:
        report = check_regular(m)
        if report.regular:
            return m, cmap
        P, lam = m.poset, m.marking
        marked = [e for e in P.elements if e in lam]
        step = None
        # equal markings on comparable elements force the whole interval
        for a in marked:
            for b in marked:
                if a != b and lam[a] == lam[b] and P.lt(a, b):
                    interval = {e for e in P.upset(a) if P.leq(e, b)} | {a}
                    step = _merge(m, interval, a, lam[a], cmap)
                    break
            if step:
                break
        if step is None:
            for i, a in enumerate(marked):
                for b in marked[i + 1:]:
                    if lam[a] == lam[b]:
                        step = _merge(m, {a, b}, a, lam[a], cmap)
                        break
                if step:
                    break
        if step is None:
            for cond, wit in report.violations:
                if cond == 1:
                    a, b = wit
                    if lam[a] < lam[b]:
                        step = _drop_cover(m, (a, b))
                        break
                elif cond == 3:
                    step = _drop_cover(m, (wit[0], wit[1]))
                    break
                elif cond == 4:
                    step = _drop_cover(m, (wit[0], wit[1]))
                    break
        if step is None:
            raise NotRegularizable(report.violations)
        m = step
