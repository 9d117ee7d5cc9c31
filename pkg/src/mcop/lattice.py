"""Lattice points, fibers, Ehrhart polynomials, normality and Minkowski sums.

Lattice points are tuples of ints aligned with ``HRepresentation.coordinates``;
for systems built from a marked poset that is ``MarkedPoset.unmarked``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import partial
from itertools import product
from typing import Iterable, Iterator, Mapping, Sequence

from ._parallel import pmap
from .decomposition import Decomposition, check_partition, enumerate_admissible
from .errors import (
    InvalidOrderPoint,
    McopError,
    NotInPolytope,
    NotLinearlyOrdered,
    Unbounded,
)
from .hrep import HRepresentation, LinearInequality, build_chain_order, build_marked_chain, build_marked_order
from .poset import MarkedPoset

_INF = float("inf")


# --------------------------------------------------------------------------
# enumeration


def coordinate_box(h: HRepresentation, max_passes: int = 1000, integral: bool = True) -> list[tuple] | None:
    """Bounds per coordinate by interval propagation.

    With ``integral`` the bounds are rounded inward to integers and None means
    there is no integer point; otherwise the bounds are exact rationals and
    None means the system is infeasible.  Raises :class:`Unbounded` if some
    coordinate keeps an infinite bound.
    """
    if integral:
        def _div(a, b):
            return a // b
    else:
        def _div(a, b):
            return Fraction(a) / b

    n = h.dim
    lo = [-_INF] * n
    hi = [_INF] * n
    rows = [(ineq.support(), ineq.coeffs, ineq.bound) for ineq in h.inequalities]
    for support, _, bound in rows:
        if not support and bound < 0:
            return None
    for _ in range(max_passes):
        changed = False
        for support, a, bound in rows:
            mins = [min(a[j] * lo[j], a[j] * hi[j]) for j in support]
            ninf = sum(1 for v in mins if v == -_INF)
            if ninf > 1:
                continue
            finite = sum(v for v in mins if v != -_INF)
            for j, v in zip(support, mins):
                if v == -_INF:
                    rest = finite
                elif ninf:
                    continue
                else:
                    rest = finite - v
                r = bound - rest
                if a[j] > 0:
                    new = _div(r, a[j])
                    if new < hi[j]:
                        hi[j] = new
                        changed = True
                else:
                    new = -_div(r, -a[j])
                    if new > lo[j]:
                        lo[j] = new
                        changed = True
                if lo[j] > hi[j]:
                    return None
        if not changed:
            break
    for j in range(n):
        if lo[j] == -_INF or hi[j] == _INF:
            raise Unbounded(f"coordinate {h.coordinates[j]!r} has no finite integer bound")
    if integral:
        return [(int(lo[j]), int(hi[j])) for j in range(n)]
    return [(lo[j], hi[j]) for j in range(n)]


class _Plan:
    def __init__(self, h: HRepresentation):
        self.n = h.dim
        self.box = coordinate_box(h) if self.n else []
        self.empty = self.box is None or any(
            not ineq.support() and ineq.bound < 0 for ineq in h.inequalities
        )
        self.nrows = len(h.inequalities)
        self.per_coord: list[list] = [[] for _ in range(self.n)]
        self.touch: list[list] = [[] for _ in range(self.n)]
        if self.empty:
            return
        for i, ineq in enumerate(h.inequalities):
            support = ineq.support()
            a = ineq.coeffs
            for k in support:
                rest = sum(min(a[j] * self.box[j][0], a[j] * self.box[j][1]) for j in support if j > k)
                self.per_coord[k].append((i, a[k], ineq.bound - rest))
                self.touch[k].append((i, a[k]))

    def bounds(self, k, partial_sums):
        lo, hi = self.box[k]
        for i, a, c in self.per_coord[k]:
            r = c - partial_sums[i]
            if a > 0:
                v = r // a
                if v < hi:
                    hi = v
            else:
                v = -(r // -a)
                if v > lo:
                    lo = v
        return lo, hi


def iter_lattice_points(h: HRepresentation) -> Iterator[tuple]:
    """Depth-first enumeration of the integer points of ``h`` in lexicographic
    order of the coordinate tuple."""
    plan = _Plan(h)
    if plan.empty:
        return
    n = plan.n
    if n == 0:
        yield ()
        return
    sums = [0] * plan.nrows
    point = [0] * n

    def walk(k):
        lo, hi = plan.bounds(k, sums)
        touch = plan.touch[k]
        last = k == n - 1
        for v in range(lo, hi + 1):
            point[k] = v
            if last:
                yield tuple(point)
                continue
            for i, a in touch:
                sums[i] += a * v
            yield from walk(k + 1)
            for i, a in touch:
                sums[i] -= a * v

    yield from walk(0)


def enumerate_lattice_points(h: HRepresentation) -> set[tuple]:
    return set(iter_lattice_points(h))


def count_lattice_points(h: HRepresentation) -> int:
    plan = _Plan(h)
    if plan.empty:
        return 0
    n = plan.n
    if n == 0:
        return 1
    sums = [0] * plan.nrows

    def walk(k):
        lo, hi = plan.bounds(k, sums)
        if hi < lo:
            return 0
        if k == n - 1:
            return hi - lo + 1
        total = 0
        touch = plan.touch[k]
        for v in range(lo, hi + 1):
            for i, a in touch:
                sums[i] += a * v
            total += walk(k + 1)
            for i, a in touch:
                sums[i] -= a * v
        return total

    return walk(0)


def brute_force_lattice_points(h: HRepresentation) -> set[tuple]:
    """Bounding-box filtering; independent of the DFS pruning."""
    box = coordinate_box(h) if h.dim else []
    if box is None:
        return set()
    ranges = [range(lo, hi + 1) for lo, hi in box]
    return {x for x in product(*ranges) if h.contains(x)}


def point_dict(coordinates: Sequence, point: Sequence) -> dict:
    return dict(zip(coordinates, point))


def reindex(points: Iterable[Sequence], source: Sequence, target: Sequence) -> set[tuple]:
    pos = [list(source).index(c) for c in target]
    return {tuple(p[i] for i in pos) for p in points}


def minkowski_sum(a: Iterable[tuple], b: Iterable[tuple]) -> set[tuple]:
    b = list(b)
    return {tuple(x + y for x, y in zip(p, q)) for p in a for q in b}


def lattice_points(m: MarkedPoset, d: Decomposition, dilation: int = 1) -> set[tuple]:
    """S_{U1,U2}(dilation * lambda), as tuples over ``m.unmarked``."""
    return enumerate_lattice_points(build_chain_order(m.scaled(dilation), d))


# --------------------------------------------------------------------------
# projections and fibers


def u1_coordinates(m: MarkedPoset, d: Decomposition) -> tuple:
    return tuple(c for c in m.unmarked if c in d.u1)


def u2_coordinates(m: MarkedPoset, d: Decomposition) -> tuple:
    return tuple(c for c in m.unmarked if c in d.u2)


def order_part(m: MarkedPoset, d: Decomposition) -> MarkedPoset:
    """The marked poset (A ∪ U1, A, lambda) on the induced subposet."""
    keep = set(m.marked) | set(d.u1)
    return MarkedPoset(m.poset.induced(keep), m.marking)


def project_order_part(m: MarkedPoset, d: Decomposition, points: Iterable[Sequence]) -> set[tuple]:
    """Image under the projection onto the U1 coordinates."""
    check_partition(m, d)
    idx = [i for i, c in enumerate(m.unmarked) if c in d.u1]
    return {tuple(p[i] for i in idx) for p in points}


def _as_values(coords: Sequence, s) -> dict:
    if isinstance(s, Mapping):
        if set(s) != set(coords):
            raise InvalidOrderPoint(f"expected values for {list(map(str, coords))}")
        return {c: s[c] for c in coords}
    s = tuple(s)
    if len(s) != len(coords):
        raise InvalidOrderPoint(f"expected {len(coords)} values, got {len(s)}")
    return dict(zip(coords, s))


def fiber_polytope(m: MarkedPoset, d: Decomposition, s) -> HRepresentation:
    """Marked chain polytope of (P, A ∪ U1, lambda^s) over the U2 coordinates."""
    check_partition(m, d)
    values = _as_values(u1_coordinates(m, d), s)
    if any(isinstance(v, bool) or not isinstance(v, int) or v < 0 for v in values.values()):
        raise InvalidOrderPoint("order part must be a nonnegative integer point")
    op = order_part(m, d)
    if not build_marked_order(op).contains(values):
        raise InvalidOrderPoint(f"{values} is not in the order polytope of A ∪ U1")
    return build_marked_chain(m.extended(values))


@dataclass
class DecompositionPropertyResult:
    holds: bool
    fixed: str
    counterexample: dict | None = None
    source: dict | None = None
    violations: list = field(default_factory=list)  # (source, model point) outside S(Q)
    missing: list = field(default_factory=list)  # points of S(Q) no fiber model produces


def check_decomposition_property(
    m: MarkedPoset,
    polytope: Decomposition,
    d: Decomposition,
    fixed: str = "u1",
) -> DecompositionPropertyResult:
    """Brute-force test of the decomposition property of CO_polytope w.r.t. ``d``.

    For every lattice point p, the coordinates on the ``fixed`` side are
    turned into markings and the same kind of polytope is built over the other
    side; gluing those fiber points back to p's fixed values must reproduce
    exactly the lattice points of the polytope.
    """
    check_partition(m, d)
    if fixed not in ("u1", "u2"):
        raise ValueError("fixed must be 'u1' or 'u2'")
    coords = m.unmarked
    h = build_chain_order(m, polytope)
    points = sorted(iter_lattice_points(h))
    pset = set(points)
    side = d.u1 if fixed == "u1" else d.u2
    fixed_idx = [i for i, c in enumerate(coords) if c in side]
    free = tuple(c for c in coords if c not in side)
    free_dec = Decomposition(polytope.u1 - side, polytope.u2 - side)
    union = set()
    seen_fibers = {}
    result = DecompositionPropertyResult(True, fixed)
    for p in points:
        key = tuple(p[i] for i in fixed_idx)
        if key in seen_fibers:
            continue
        values = {coords[i]: p[i] for i in fixed_idx}
        model = m.extended(values)
        fiber = build_chain_order(model, free_dec)
        fiber_pts = reindex(iter_lattice_points(fiber), fiber.coordinates, free)
        seen_fibers[key] = fiber_pts
        for q in sorted(fiber_pts):
            full = dict(values)
            full.update(zip(free, q))
            pt = tuple(full[c] for c in coords)
            union.add(pt)
            if pt not in pset:
                result.violations.append((dict(zip(coords, p)), full))
    result.missing = [dict(zip(coords, p)) for p in points if p not in union]
    result.holds = not result.violations and not result.missing
    if result.violations:
        result.source, result.counterexample = result.violations[0]
    elif result.missing:
        result.counterexample = result.missing[0]
    return result


# --------------------------------------------------------------------------
# Ehrhart polynomials


@dataclass(frozen=True)
class EhrhartPolynomial:
    """Exact coefficients, constant term first; the zero polynomial is ()."""

    coefficients: tuple

    def __call__(self, t) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * t + c
        return acc

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def as_strings(self) -> list[str]:
        return [str(c) for c in self.coefficients]

    def __str__(self):
        if not self.coefficients:
            return "0"
        terms = []
        for k, c in enumerate(self.coefficients):
            if c:
                terms.append(f"{c}" if k == 0 else f"{c}*t" if k == 1 else f"{c}*t^{k}")
        return " + ".join(terms) or "0"


def interpolate(values: Sequence[int]) -> tuple:
    """Monomial coefficients of the polynomial through (k, values[k])."""
    n = len(values)
    diffs = [Fraction(v) for v in values]
    newton = [diffs[0]]
    for level in range(1, n):
        diffs = [(diffs[i + 1] - diffs[i]) / level for i in range(len(diffs) - 1)]
        newton.append(diffs[0])
    # sum newton[j] * t(t-1)...(t-j+1)
    coeffs = [Fraction(0)] * n
    basis = [Fraction(1)]
    for j in range(n):
        for i, b in enumerate(basis):
            coeffs[i] += newton[j] * b
        nxt = [Fraction(0)] * (len(basis) + 1)
        for i, b in enumerate(basis):
            nxt[i + 1] += b
            nxt[i] -= j * b
        basis = nxt
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


class InterpolationMismatch(McopError):
    pass


def ehrhart_counts(m: MarkedPoset, d: Decomposition, upto: int) -> list[int]:
    h = build_chain_order(m, d)
    counts = [1]
    for k in range(1, upto + 1):
        counts.append(count_lattice_points(_scale(h, k)))
    return counts


def _scale(h: HRepresentation, k: int) -> HRepresentation:
    return HRepresentation(h.coordinates, tuple(LinearInequality(i.coeffs, k * i.bound, i.tag) for i in h.inequalities))


def ehrhart_polynomial(m: MarkedPoset, d: Decomposition) -> EhrhartPolynomial:
    """Interpolate through the counts at dilations 0..d (d = number of
    unmarked elements) and confirm the fit at d + 1."""
    h = build_chain_order(m, d)
    if count_lattice_points(h) == 0:
        return EhrhartPolynomial(())
    dim = len(m.unmarked)
    counts = [1] + [count_lattice_points(_scale(h, k)) for k in range(1, dim + 2)]
    poly = EhrhartPolynomial(interpolate(counts[: dim + 1]))
    if poly(dim + 1) != counts[dim + 1]:
        raise InterpolationMismatch(f"interpolant gives {poly(dim + 1)} at {dim + 1}, count is {counts[dim + 1]}")
    return poly


@dataclass
class EhrhartEquivalenceReport:
    equivalent: bool
    polynomial: EhrhartPolynomial | None
    polynomials: list  # (Decomposition, EhrhartPolynomial)
    mismatch: tuple | None = None


def check_ehrhart_equivalence(m: MarkedPoset) -> EhrhartEquivalenceReport:
    decs = enumerate_admissible(m)
    polys = pmap(partial(ehrhart_polynomial, m), decs)
    pairs = list(zip(decs, polys))
    first = pairs[0]
    for d, p in pairs[1:]:
        if p != first[1]:
            return EhrhartEquivalenceReport(False, None, pairs, (first, (d, p)))
    return EhrhartEquivalenceReport(True, first[1], pairs)


# --------------------------------------------------------------------------
# normality and Minkowski sums


def _ceil_half(n):
    return (n + 1) // 2


def split_order_part(values: Mapping, n: int) -> tuple[dict, dict]:
    """Split an integer point of the n-th dilation of an order polytope."""
    up, down = _ceil_half(n), n // 2
    s1, s2 = {}, {}
    for x, sx in values.items():
        r, v = divmod(sx, n)
        s1[x] = up * r + min(v, up)
        s2[x] = down * r + max(0, v - up)
    return s1, s2


def split_dilated_point(m: MarkedPoset, d: Decomposition, s, n: int) -> tuple[tuple, tuple]:
    """Write a lattice point of CO(n * lambda) as a sum of lattice points of
    CO(ceil(n/2) * lambda) and CO(floor(n/2) * lambda)."""
    if n < 2:
        raise ValueError("n must be at least 2")
    coords = m.unmarked
    h = build_chain_order(m.scaled(n), d)
    s = h.vector(s)
    if not all(type(v) is int for v in s) or not h.contains(s):
        raise NotInPolytope(f"{dict(zip(coords, s))} is not a lattice point of the {n}-th dilation")
    up, down = _ceil_half(n), n // 2
    values = dict(zip(coords, s))
    s1, s2 = split_order_part({x: values[x] for x in coords if x in d.u1}, n)
    u2c = u2_coordinates(m, d)
    if not u2c:
        return tuple(s1[c] for c in coords), tuple(s2[c] for c in coords)
    t = tuple(values[c] for c in u2c)
    f1 = build_marked_chain(m.scaled(up).extended(s1))
    f2 = build_marked_chain(m.scaled(down).extended(s2))
    assert f1.coordinates == u2c and f2.coordinates == u2c
    # proportional candidate first, then the lexicographically first witness
    cand, _ = split_order_part(dict(zip(u2c, t)), n)
    t1 = tuple(cand[c] for c in u2c)
    t2 = tuple(a - b for a, b in zip(t, t1))
    if not (f1.contains(t1) and f2.contains(t2)):
        for t1 in iter_lattice_points(f1):
            t2 = tuple(a - b for a, b in zip(t, t1))
            if f2.contains(t2):
                break
        else:
            raise McopError(f"no fiber split exists for {values}")
    full1, full2 = dict(s1), dict(s2)
    full1.update(zip(u2c, t1))
    full2.update(zip(u2c, t2))
    return tuple(full1[c] for c in coords), tuple(full2[c] for c in coords)


def decompose_dilated_point(m: MarkedPoset, d: Decomposition, s, n: int) -> list[tuple]:
    """n lattice points of CO(lambda) summing to ``s`` (recursive halving)."""
    if n == 1:
        return [tuple(s)]
    a, b = split_dilated_point(m, d, s, n)
    return decompose_dilated_point(m, d, a, _ceil_half(n)) + decompose_dilated_point(m, d, b, n // 2)


@dataclass
class NormalityResult:
    holds: bool
    n: int
    size_base: int
    size_dilated: int
    minkowski_equal: bool
    witnesses: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)


def verify_normality(m: MarkedPoset, d: Decomposition, n: int) -> NormalityResult:
    if n < 2:
        raise ValueError("n must be at least 2")
    base = lattice_points(m, d)
    dilated = lattice_points(m, d, n)
    acc = set(base)
    for _ in range(n - 1):
        acc = minkowski_sum(acc, base)
    equal = acc == dilated
    witnesses, failures = {}, []
    for s in sorted(dilated):
        parts = decompose_dilated_point(m, d, s, n)
        total = tuple(map(sum, zip(*parts)))
        if total != s or any(p not in base for p in parts):
            failures.append(s)
        else:
            witnesses[s] = tuple(parts)
    return NormalityResult(equal and not failures, n, len(base), len(dilated), equal, witnesses, failures)


@dataclass
class MinkowskiResult:
    holds: bool
    linearly_ordered: bool
    size_lambda: int
    size_mu: int
    size_sum: int
    missing: list = field(default_factory=list)  # in S(lambda+mu) but not a sum
    extra: list = field(default_factory=list)  # sums outside S(lambda+mu)


def _marking(m: MarkedPoset, lam) -> dict:
    if isinstance(lam, Mapping):
        return dict(lam)
    lam = list(lam)
    if len(lam) != len(m.marked_order):
        raise ValueError(f"marking needs {len(m.marked_order)} values")
    return dict(zip(m.marked_order, lam))


def verify_minkowski(m: MarkedPoset, d: Decomposition, lam, mu) -> MinkowskiResult:
    """Compare S(lambda) + S(mu) with S(lambda + mu) exactly.

    When the marked elements are not linearly ordered the comparison still
    runs, but a :class:`NotLinearlyOrdered` warning is emitted and the result
    is informational only.
    """
    lam, mu = _marking(m, lam), _marking(m, mu)
    linear = m.is_linearly_ordered_marking()
    if not linear:
        warnings.warn(NotLinearlyOrdered.__name__ + ": marked elements are not a chain", stacklevel=2)
    ml, mm = m.with_marking(lam), m.with_marking(mu)
    ms = m.with_marking({a: lam[a] + mu[a] for a in lam})
    sl = enumerate_lattice_points(build_chain_order(ml, d))
    sm = enumerate_lattice_points(build_chain_order(mm, d))
    ss = enumerate_lattice_points(build_chain_order(ms, d))
    sums = minkowski_sum(sl, sm)
    missing = sorted(ss - sums)
    extra = sorted(sums - ss)
    return MinkowskiResult(not missing and not extra, linear, len(sl), len(sm), len(ss), missing, extra)
