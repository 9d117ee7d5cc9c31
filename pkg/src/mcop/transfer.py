"""Transfer maps between chain-order polytopes of one marked poset.

``abs_transfer`` is the piecewise-linear bijection from the marked order
polytope to the marked chain polytope; ``chain_order_transfer`` applies it
fiberwise.  The single-element moves are affine unimodular maps that shift
one non-star element between U1 and U2.
"""

from __future__ import annotations

from dataclasses import dataclass

from ._exact import identity, integer_det, matmul, matvec
from .decomposition import Decomposition, is_admissible, star_signature
from .errors import (
    IsStarElement,
    NoPathFound,
    NotAdmissibleAfterMove,
    NotInDomain,
    PreconditionViolated,
    SignatureMismatch,
)
from .hrep import HRepresentation, _require_admissible, build_chain_order, build_marked_chain, build_marked_order
from .lattice import enumerate_lattice_points
from .poset import MarkedPoset, star_elements


@dataclass(frozen=True)
class PiecewiseLinearMap:
    """x -> (min over lower terms of x_p - term) per coordinate.

    ``terms[p]`` lists ``("x", q)`` for an unmarked lower element q and
    ``("c", value)`` for a marked one.
    """

    coordinates: tuple
    terms: dict
    domain: HRepresentation
    codomain: HRepresentation

    def __call__(self, x) -> tuple:
        x = self.domain.vector(x)
        val = dict(zip(self.coordinates, x))
        out = []
        for p in self.coordinates:
            opts = [val[p] - (val[t] if kind == "x" else t) for kind, t in self.terms[p]]
            out.append(min(opts))
        return tuple(out)


def transfer_map(m: MarkedPoset) -> PiecewiseLinearMap:
    P = m.poset
    terms = {}
    for p in m.unmarked:
        lower = sorted(P.downset(p), key=P.index)
        terms[p] = [("c", m.marking[q]) if m.is_marked(q) else ("x", q) for q in lower]
    return PiecewiseLinearMap(m.unmarked, terms, build_marked_order(m), build_marked_chain(m))


def abs_transfer(m: MarkedPoset, x) -> tuple:
    f = transfer_map(m)
    x = f.domain.vector(x)
    if not f.domain.contains(x):
        raise NotInDomain(f"{dict(zip(m.unmarked, x))} is not in the marked order polytope")
    return f(x)


def chain_order_transfer(m: MarkedPoset, d: Decomposition, x) -> tuple:
    """Keep the U1 coordinates, transfer the U2 coordinates inside the fiber."""
    dom = build_marked_order(m)
    x = dom.vector(x)
    if not dom.contains(x):
        raise NotInDomain(f"{dict(zip(m.unmarked, x))} is not in the marked order polytope")
    val = dict(zip(m.unmarked, x))
    if not d.u2:
        return x
    fiber = m.extended({p: val[p] for p in m.unmarked if p in d.u1})
    y = dict(zip(fiber.unmarked, abs_transfer(fiber, [val[p] for p in fiber.unmarked])))
    return tuple(y[p] if p in d.u2 else val[p] for p in m.unmarked)


@dataclass(frozen=True)
class AffineUnimodularMap:
    """x -> matrix @ x + translation over the unmarked coordinates."""

    coordinates: tuple
    matrix: tuple
    translation: tuple

    def __call__(self, x) -> tuple:
        return tuple(a + b for a, b in zip(matvec(self.matrix, x), self.translation))

    @classmethod
    def identity(cls, coordinates) -> "AffineUnimodularMap":
        n = len(coordinates)
        return cls(tuple(coordinates), identity(n), (0,) * n)

    def det(self) -> int:
        return integer_det(self.matrix)

    def then(self, other: "AffineUnimodularMap") -> "AffineUnimodularMap":
        """``other`` applied after ``self``."""
        return AffineUnimodularMap(
            self.coordinates,
            matmul(other.matrix, self.matrix),
            tuple(a + b for a, b in zip(matvec(other.matrix, self.translation), other.translation)),
        )

    def scaled_translation(self, n: int) -> "AffineUnimodularMap":
        """Same linear part; translation for the marking n * lambda."""
        return AffineUnimodularMap(self.coordinates, self.matrix, tuple(n * t for t in self.translation))

    def as_dict(self) -> dict:
        return {
            "coordinates": [str(c) for c in self.coordinates],
            "matrix": [list(r) for r in self.matrix],
            "translation": list(self.translation),
        }


def _row_map(m: MarkedPoset, p, row: dict, shift: int) -> AffineUnimodularMap:
    coords = m.unmarked
    idx = {c: i for i, c in enumerate(coords)}
    mat = [list(r) for r in identity(len(coords))]
    mat[idx[p]] = [0] * len(coords)
    for c, a in row.items():
        mat[idx[p]][idx[c]] += a
    trans = [0] * len(coords)
    trans[idx[p]] = shift
    f = AffineUnimodularMap(coords, tuple(map(tuple, mat)), tuple(trans))
    assert abs(f.det()) == 1
    return f


def _invert_row_map(f: AffineUnimodularMap, p) -> AffineUnimodularMap:
    i = f.coordinates.index(p)
    row = f.matrix[i]
    s = row[i]  # +1 or -1
    new_row = [(-s * a if j != i else s) for j, a in enumerate(row)]
    mat = list(f.matrix)
    mat[i] = tuple(new_row)
    trans = list(f.translation)
    trans[i] = -s * f.translation[i]
    return AffineUnimodularMap(f.coordinates, tuple(mat), tuple(trans))


def applicable_cases(m: MarkedPoset, p) -> list[str]:
    P = m.poset
    cases = []
    if P.count_maximal_chains_ending(p) == 1:
        cases.append("A")
    if len(P.covering_elements(p)) == 1:
        cases.append("B")
    return cases


def _val(m: MarkedPoset, e, row: dict) -> int:
    """Add ``val(e)`` to ``row`` (a coordinate) or return it as a constant."""
    if m.is_marked(e):
        return m.marking[e]
    row[e] = row.get(e, 0) + 1
    return 0


def move_to_order(m: MarkedPoset, d: Decomposition, p, case: str | None = None) -> tuple[AffineUnimodularMap, Decomposition]:
    """Map CO(U1, U2) onto CO(U1 + {p}, U2 - {p}) for a maximal element p of U2.

    Case A (single maximal chain ending in p) adds the chain below p;
    case B (single element r covering p) reflects x_p into val(r) - x_p.
    Case A wins when both apply, unless ``case`` says otherwise.
    """
    if p not in d.u2:
        raise PreconditionViolated(f"{p} is not in U2")
    if p in star_elements(m):
        raise IsStarElement(f"{p} is a star element")
    new = Decomposition(d.u1 | {p}, d.u2 - {p})
    if not is_admissible(m, d) or not is_admissible(m, new):
        raise NotAdmissibleAfterMove(f"moving {p} to U1 breaks admissibility")
    cases = applicable_cases(m, p)
    case = case or cases[0]
    if case not in cases:
        raise PreconditionViolated(f"case {case} does not apply to {p}")
    P = m.poset
    row: dict = {}
    if case == "A":
        row[p] = 1
        cur = p
        while True:
            (c,) = P.covered_elements(cur)
            if c not in d.u2:
                break
            row[c] = row.get(c, 0) + 1
            cur = c
        shift = _val(m, c, row)
    else:
        row[p] = -1
        (r,) = P.covering_elements(p)
        shift = _val(m, r, row)
    return _row_map(m, p, row, shift), new


def move_to_chain(m: MarkedPoset, d: Decomposition, p, case: str | None = None) -> tuple[AffineUnimodularMap, Decomposition]:
    """Inverse of :func:`move_to_order`: map CO(U1, U2) onto CO(U1 - {p}, U2 + {p})."""
    if p not in d.u1:
        raise PreconditionViolated(f"{p} is not in U1")
    if p in star_elements(m):
        raise IsStarElement(f"{p} is a star element")
    target = Decomposition(d.u1 - {p}, d.u2 | {p})
    if not is_admissible(m, d) or not is_admissible(m, target):
        raise NotAdmissibleAfterMove(f"moving {p} to U2 breaks admissibility")
    forward, _ = move_to_order(m, target, p, case)
    return _invert_row_map(forward, p), target


def compose_equivalence(m: MarkedPoset, d_from: Decomposition, d_to: Decomposition) -> AffineUnimodularMap:
    """Chain single-element moves from ``d_from`` to ``d_to``."""
    for d in (d_from, d_to):
        _require_admissible(m, d)
    if star_signature(m, d_from) != star_signature(m, d_to):
        raise SignatureMismatch("decompositions have different star signatures")
    P = m.poset
    order = m.unmarked
    total = AffineUnimodularMap.identity(order)
    cur = d_from
    while cur != d_to:
        step = None
        for p in reversed(order):
            if p in d_to.u1 and p in cur.u2 and not any(q in cur.u2 for q in P.upset(p)):
                step = move_to_order(m, cur, p)
                break
        if step is None:
            for p in order:
                if p in d_to.u2 and p in cur.u1 and not any(q in cur.u1 for q in P.downset(p)):
                    step = move_to_chain(m, cur, p)
                    break
        if step is None:
            raise NoPathFound(f"no single-element move from {cur} towards {d_to}")
        f, cur = step
        total = total.then(f)
    return total


def verify_unimodular_equivalence(m: MarkedPoset, d1: Decomposition, d2: Decomposition, f: AffineUnimodularMap) -> bool:
    """|det| = 1 and f maps lattice points of CO(d1) exactly onto those of
    CO(d2), at dilations 1 and 2."""
    if abs(f.det()) != 1:
        return False
    for n in (1, 2):
        g = f.scaled_translation(n)
        src = enumerate_lattice_points(build_chain_order(m.scaled(n), d1))
        dst = enumerate_lattice_points(build_chain_order(m.scaled(n), d2))
        image = {g(x) for x in src}
        if len(image) != len(src) or image != dst:
            return False
    return True
