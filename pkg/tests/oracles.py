"""Independent reference computations used by the tests.

Nothing here calls the DFS enumerator, the saturated-chain generator or the
interpolation code it is meant to check.
"""

from itertools import combinations, product

from mcop.decomposition import Decomposition


def all_u2_chain_inequalities(m, d):
    """Chain-sum inequalities over *all* chains (not only saturated ones).

    Returns (terms, top, bottom) with terms a tuple of U2 elements.
    """
    P = m.poset
    ends = [e for e in P.elements if e not in d.u2]
    out = []
    u2 = sorted(d.u2, key=P.index)
    for b in ends:
        for t in ends:
            if not P.lt(b, t):
                continue
            between = [q for q in u2 if P.lt(b, q) and P.lt(q, t)]
            for r in range(1, len(between) + 1):
                for sub in combinations(between, r):
                    if all(P.comparable(x, y) for x, y in combinations(sub, 2)):
                        out.append((sub, t, b))
    return out


def definition_contains(m, d, x):
    """Membership straight from the definition, quantifying over all
    comparabilities and all chains."""
    P, lam = m.poset, m.marking
    val = dict(zip(m.unmarked, x))
    for p in d.u1:
        for a in P.upset(p):
            if a in lam and val[p] > lam[a]:
                return False
            if a in d.u1 and val[p] > val[a]:
                return False
        for b in P.downset(p):
            if b in lam and val[p] < lam[b]:
                return False
    for p in d.u2:
        if val[p] < 0:
            return False
    for terms, top, bottom in all_u2_chain_inequalities(m, d):
        topv = lam[top] if top in lam else val[top]
        botv = lam[bottom] if bottom in lam else val[bottom]
        if sum(val[q] for q in terms) > topv - botv:
            return False
    return True


def order_ideals(m):
    """Every down-closed subset of the unmarked elements, by subset filtering."""
    P = m.poset
    rest = list(m.unmarked)
    out = []
    for r in range(len(rest) + 1):
        for sub in combinations(rest, r):
            s = set(sub)
            if all(q in s for p in s for q in P.downset(p) if q in rest):
                out.append(frozenset(s))
    return out


def gt_patterns(lam):
    """Count integer Gelfand-Tsetlin patterns with top row lam (interlacing)."""

    def rows(top):
        if len(top) == 1:
            return 1
        ranges = [range(top[i + 1], top[i] + 1) for i in range(len(top) - 1)]
        return sum(rows(list(r)) for r in product(*ranges))

    return rows(list(lam))


def box_points(m, d, bound):
    """Brute force over [0, bound]^n against the definition."""
    n = len(m.unmarked)
    return {x for x in product(range(bound + 1), repeat=n) if definition_contains(m, d, x)}


def decompositions_of(m):
    return [Decomposition(frozenset(m.unmarked) - s, s) for s in order_ideals(m)]


def lagrange_value(xs, ys, t):
    from fractions import Fraction

    total = Fraction(0)
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        term = Fraction(yi)
        for j, xj in enumerate(xs):
            if j != i:
                term *= Fraction(t - xj, xi - xj)
        total += term
    return total


def lattice_facet_count(h, points):
    """Facets of a full-dimensional lattice polytope: inequalities whose tight
    lattice points span an affine hyperplane, deduplicated by tight set."""
    from mcop._exact import rank

    d = len(h.coordinates)
    seen = set()
    for i in h.inequalities:
        tight = frozenset(x for x in points if i.lhs(x) == i.bound)
        if len(tight) < d or tight in seen:
            continue
        base = next(iter(tight))
        if rank([[a - b for a, b in zip(x, base)] for x in tight]) == d - 1:
            seen.add(tight)
    return len(seen)
