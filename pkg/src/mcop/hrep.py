"""Integer H-representations of cones and marked chain-order polytopes."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .decomposition import Decomposition, admissibility_witness, u2_chains
from .errors import DimensionMismatch, EmptyMarking, NotAdmissible
from .poset import MarkedPoset

ORDER_COVER = "order-cover"
CHAIN = "chain"
NONNEGATIVITY = "nonnegativity"
MARKING_BOUND = "marking-bound"


@dataclass(frozen=True)
class LinearInequality:
    """``sum(coeffs[i] * x[i]) <= bound`` with coefficients aligned to the
    coordinate list of the owning :class:`HRepresentation`."""

    coeffs: tuple
    bound: int
    tag: str

    def __post_init__(self):
        assert all(type(c) is int for c in self.coeffs), self.coeffs
        assert type(self.bound) is int, self.bound

    def lhs(self, x: Sequence) -> object:
        return sum(c * v for c, v in zip(self.coeffs, x) if c)

    def holds(self, x: Sequence) -> bool:
        return self.lhs(x) <= self.bound

    def support(self) -> tuple:
        return tuple(i for i, c in enumerate(self.coeffs) if c)


@dataclass(frozen=True)
class HRepresentation:
    coordinates: tuple
    inequalities: tuple

    def __len__(self):
        return len(self.inequalities)

    @property
    def dim(self) -> int:
        return len(self.coordinates)

    def vector(self, x) -> tuple:
        if isinstance(x, Mapping):
            if set(x) != set(self.coordinates):
                raise DimensionMismatch(f"point keys {sorted(map(str, x))} != coordinates {list(map(str, self.coordinates))}")
            return tuple(x[c] for c in self.coordinates)
        x = tuple(x)
        if len(x) != len(self.coordinates):
            raise DimensionMismatch(f"point has {len(x)} entries, system has {len(self.coordinates)} coordinates")
        return x

    def contains(self, x) -> bool:
        x = self.vector(x)
        return all(ineq.holds(x) for ineq in self.inequalities)

    def as_dict(self) -> dict:
        return {
            "coordinates": [str(c) for c in self.coordinates],
            "inequalities": [
                {
                    "coeffs": {str(c): a for c, a in zip(self.coordinates, ineq.coeffs) if a},
                    "bound": ineq.bound,
                    "tag": ineq.tag,
                }
                for ineq in self.inequalities
            ],
        }

    def format(self) -> list[str]:
        """Human-readable lines such as ``x2 + x3 - x1 <= 0``."""
        lines = []
        for ineq in self.inequalities:
            terms = []
            for c, a in zip(self.coordinates, ineq.coeffs):
                if not a:
                    continue
                sign = "-" if a < 0 else "+"
                mag = "" if abs(a) == 1 else f"{abs(a)}*"
                terms.append(f"{sign} {mag}{c}")
            lhs = " ".join(terms).lstrip("+ ") if terms else "0"
            if lhs.startswith("- "):
                lhs = "-" + lhs[2:]
            lines.append(f"{lhs} <= {ineq.bound}    [{ineq.tag}]")
        return lines


class _Builder:
    def __init__(self, coordinates):
        self.coordinates = tuple(coordinates)
        self.pos = {c: i for i, c in enumerate(self.coordinates)}
        self.rows: dict = {}

    def add(self, terms: Mapping, bound: int, tag: str):
        coeffs = [0] * len(self.coordinates)
        for c, a in terms.items():
            coeffs[self.pos[c]] += a
        key = (tuple(coeffs), bound)
        self.rows.setdefault(key, tag)

    def build(self) -> HRepresentation:
        rows = sorted(((tag, key[0], key[1]) for key, tag in self.rows.items()))
        return HRepresentation(self.coordinates, tuple(LinearInequality(c, b, t) for t, c, b in rows))


def _require_admissible(m: MarkedPoset, d: Decomposition):
    witness = admissibility_witness(m, d)
    if witness is not None:
        raise NotAdmissible(f"decomposition is not admissible: {witness[0]} < {witness[1]} with {witness[0]} in U1, {witness[1]} in U2")


def build_cone(m: MarkedPoset, d: Decomposition) -> HRepresentation:
    """Homogeneous cone: nonnegativity on U2, order on U1, chain sums below U1."""
    _require_admissible(m, d)
    P = m.poset
    b = _Builder(m.unmarked)
    for p in m.unmarked:
        if p in d.u2:
            b.add({p: -1}, 0, NONNEGATIVITY)
        else:
            for q in P.covering_elements(p):
                if q in d.u1:
                    b.add({p: 1, q: -1}, 0, ORDER_COVER)
    for ch in u2_chains(m, d):
        if ch.top in d.u1:
            terms = {q: 1 for q in ch.middle}
            terms[ch.top] = -1
            b.add(terms, 0, CHAIN)
    return b.build()


def build_chain_order(m: MarkedPoset, d: Decomposition) -> HRepresentation:
    """H-representation of the marked chain-order polytope for ``d``."""
    if not m.marking:
        raise EmptyMarking("marked poset has no marked elements")
    _require_admissible(m, d)
    P, lam = m.poset, m.marking
    b = _Builder(m.unmarked)
    for p in m.unmarked:
        if p in d.u1:
            for a in P.covering_elements(p):
                if a in lam:
                    b.add({p: 1}, lam[a], MARKING_BOUND)
                elif a in d.u1:
                    b.add({p: 1, a: -1}, 0, ORDER_COVER)
            for a in P.covered_elements(p):
                if a in lam:
                    b.add({p: -1}, -lam[a], MARKING_BOUND)
        else:
            b.add({p: -1}, 0, NONNEGATIVITY)
    for ch in u2_chains(m, d):
        # admissibility forces the bottom of every U2-chain into A
        assert ch.bottom in lam, ch
        terms = {q: 1 for q in ch.middle}
        if ch.top in lam:
            bound = lam[ch.top] - lam[ch.bottom]
        else:
            terms[ch.top] = -1
            bound = -lam[ch.bottom]
        b.add(terms, bound, CHAIN)
    return b.build()


def build_marked_order(m: MarkedPoset) -> HRepresentation:
    return build_chain_order(m, Decomposition.order(m))


def build_marked_chain(m: MarkedPoset) -> HRepresentation:
    return build_chain_order(m, Decomposition.chain(m))


def dilate(h: HRepresentation, n: int) -> HRepresentation:
    """System of ``n`` times the polytope.

    Every bound of a chain-order system is linear in the marking, so scaling
    the bounds agrees with rebuilding from the marking ``n * lambda``.
    """
    if n < 1:
        raise ValueError("dilation factor must be a positive integer")
    return HRepresentation(
        h.coordinates,
        tuple(LinearInequality(i.coeffs, n * i.bound, i.tag) for i in h.inequalities),
    )


def contains(h: HRepresentation, x) -> bool:
    return h.contains(x)
