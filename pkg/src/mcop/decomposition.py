"""Admissible decompositions, U2-chains and star signatures."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import NotAPartition
from .poset import MarkedPoset, star_elements


@dataclass(frozen=True)
class Decomposition:
    u1: frozenset
    u2: frozenset

    @classmethod
    def of(
        cls,
        m: MarkedPoset,
        u1: Iterable | None = None,
        u2: Iterable | None = None,
        ignore_marked: bool = False,
    ) -> "Decomposition":
        """Build a decomposition of ``m`` from one side, inferring the complement.

        With ``ignore_marked`` any marked elements listed in ``u1``/``u2`` are
        dropped first (some texts list A ∩ U1 alongside U1).
        """
        rest = set(m.unmarked)
        if ignore_marked:
            u1 = None if u1 is None else [e for e in u1 if not m.is_marked(e)]
            u2 = None if u2 is None else [e for e in u2 if not m.is_marked(e)]
        if (u1 is None) == (u2 is None):
            if u1 is None:
                raise NotAPartition("give exactly one of u1, u2")
            d = cls(frozenset(u1), frozenset(u2))
        elif u1 is not None:
            d = cls(frozenset(u1), frozenset(rest - set(u1)))
        else:
            d = cls(frozenset(rest - set(u2)), frozenset(u2))
        check_partition(m, d)
        return d

    @classmethod
    def order(cls, m: MarkedPoset) -> "Decomposition":
        return cls(frozenset(m.unmarked), frozenset())

    @classmethod
    def chain(cls, m: MarkedPoset) -> "Decomposition":
        return cls(frozenset(), frozenset(m.unmarked))

    def label(self, m: MarkedPoset | None = None) -> str:
        key = (lambda e: m.unmarked.index(e)) if m is not None else str
        return "U1={" + ",".join(map(str, sorted(self.u1, key=key))) + "}"


@dataclass(frozen=True)
class U2Chain:
    """Saturated chain ``bottom < middle[-1] < ... < middle[0] < top``."""

    top: object
    bottom: object
    middle: tuple


def check_partition(m: MarkedPoset, d: Decomposition) -> None:
    rest = set(m.unmarked)
    if d.u1 & d.u2:
        raise NotAPartition(f"U1 and U2 overlap in {sorted(map(str, d.u1 & d.u2))}")
    if d.u1 | d.u2 != rest:
        missing = rest - (d.u1 | d.u2)
        extra = (d.u1 | d.u2) - rest
        raise NotAPartition(f"not a partition of the unmarked elements (missing {sorted(map(str, missing))}, extra {sorted(map(str, extra))})")


def admissibility_witness(m: MarkedPoset, d: Decomposition):
    """A pair ``(u1, u2)`` with ``u1 < u2``, or None when admissible."""
    check_partition(m, d)
    P = m.poset
    for u in m.unmarked:
        if u in d.u1:
            for v in P.upset(u):
                if v in d.u2:
                    return (u, v)
    return None


def is_admissible(m: MarkedPoset, d: Decomposition) -> bool:
    return admissibility_witness(m, d) is None


def enumerate_admissible(m: MarkedPoset) -> list[Decomposition]:
    """Every admissible decomposition, i.e. every order ideal U2 of the
    unmarked subposet, in deterministic DFS order."""
    P = m.poset
    order = m.unmarked
    lower_unmarked = {p: [q for q in P.downset(p) if not m.is_marked(q)] for p in order}
    out = []

    def walk(i, u2):
        if i == len(order):
            out.append(Decomposition(frozenset(order) - u2, u2))
            return
        p = order[i]
        if all(q in u2 for q in lower_unmarked[p]):
            walk(i + 1, u2 | {p})
        walk(i + 1, u2)

    walk(0, frozenset())
    return out


def u2_chains(m: MarkedPoset, d: Decomposition) -> list[U2Chain]:
    """Cover-saturated chains whose interior lies in U2 and whose endpoints
    lie in A or U1."""
    P = m.poset
    out = []

    def is_end(e):
        return e not in d.u2

    for b in P.topological_order:
        if not is_end(b):
            continue
        # extend upwards through U2 elements
        stack = [(p, (p,)) for p in P.covering_elements(b) if p in d.u2]
        while stack:
            p, path = stack.pop()
            for top in P.covering_elements(p):
                if is_end(top):
                    out.append(U2Chain(top, b, tuple(reversed(path))))
                else:
                    stack.append((top, path + (top,)))
    key = {e: i for i, e in enumerate(P.topological_order)}
    out.sort(key=lambda c: (key[c.bottom], [key[x] for x in reversed(c.middle)], key[c.top]))
    return out


def star_signature(m: MarkedPoset, d: Decomposition) -> frozenset:
    return frozenset(d.u2 & star_elements(m))


def equivalence_classes(m: MarkedPoset) -> dict[frozenset, list[Decomposition]]:
    """Admissible decompositions grouped by star signature."""
    classes: dict = {}
    for d in enumerate_admissible(m):
        classes.setdefault(star_signature(m, d), []).append(d)
    return classes
