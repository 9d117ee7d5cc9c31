from fractions import Fraction

import pytest

from conftest import make_gt, make_l3
from mcop._exact import rank
from mcop.decomposition import Decomposition, enumerate_admissible, equivalence_classes, star_signature
from mcop.errors import EmptyPolytope, PreconditionViolated, RegularityRequired
from mcop.faces import (
    FVector,
    enumerate_vertices,
    f_vector,
    facet_count_formula,
    facet_difference,
    geometric_facet_count,
    test_f_conjecture as run_conjecture,
)
from mcop.hrep import build_chain_order, build_marked_order
from mcop.lattice import enumerate_lattice_points
from mcop.poset import MarkedPoset, validate_poset
from oracles import lattice_facet_count, order_ideals

GT3_F_EMPTY = (40, 132, 186, 139, 57, 12, 1)
GT3_F_P12 = (42, 141, 202, 153, 63, 13, 1)


def segment(lo=0, hi=1):
    P = validate_poset(["b", "x", "a"], {("b", "x"), ("x", "a")})
    return MarkedPoset(P, {"b": lo, "a": hi})


def test_l3_vertices(l3):
    d = Decomposition.of(l3, u1=["x1"])
    vs = enumerate_vertices(build_chain_order(l3, d))
    # stored over (x3, x2, x1)
    as_x123 = {tuple(v[::-1]) for v in vs.vertices}
    assert as_x123 == {(0, 0, 0), (6, 0, 0), (6, 6, 0), (6, 0, 6)}
    assert vs.dim == 3 and vs.is_integral()
    assert geometric_facet_count(build_chain_order(l3, d)) == 4


def test_segment():
    m = segment()
    h = build_marked_order(m)
    vs = enumerate_vertices(h)
    assert vs.vertices == [(Fraction(0),), (Fraction(1),)]
    assert f_vector(h).counts == (2, 1)


def test_point_polytope():
    m = segment(2, 2)
    vs = enumerate_vertices(build_marked_order(m))
    assert vs.dim == 0 and len(vs.vertices) == 1
    assert f_vector(build_marked_order(m)).counts == (1,)


def test_empty_polytope_signal():
    with pytest.raises(EmptyPolytope):
        enumerate_vertices(build_marked_order(segment(3, 1)))


def test_gt2_order_vertices_against_tight_rank(gt2):
    h = build_marked_order(gt2)
    vs = enumerate_vertices(h)
    expected = set()
    for x in enumerate_lattice_points(h):
        tight = [i.coeffs for i in h.inequalities if i.lhs(x) == i.bound]
        if rank(tight) == h.dim:
            expected.add(x)
    assert {tuple(int(c) for c in v) for v in vs.vertices} == expected
    assert len(expected) == 7


def test_l3_fvector(l3):
    f = f_vector(build_chain_order(l3, Decomposition.of(l3, u1=["x1"])))
    assert f.counts == (4, 6, 4, 1)
    assert f.euler_holds()


def test_euler_relation_form():
    assert FVector((4, 6, 4, 1)).euler_holds()
    assert FVector((5, 5, 1)).euler_holds()
    assert not FVector((4, 6, 5, 1)).euler_holds()


@pytest.mark.parametrize("m", [make_l3(), make_gt(2, 1, 0), make_gt(3, 2, 1, 0), make_gt(2, 1, 1)], ids=["L3", "GT2", "GT3", "GT2deg"])
def test_euler_and_integrality_everywhere(m):
    for d in enumerate_admissible(m):
        h = build_chain_order(m, d)
        vs = enumerate_vertices(h)
        assert vs.is_integral()
        assert f_vector(h, vs).euler_holds()


def test_degenerate_dimension_drop():
    m = make_gt(2, 1, 1)
    vs = enumerate_vertices(build_marked_order(m))
    assert vs.dim == 2
    assert vs.implicit_equalities


def test_facet_formula_l3(l3):
    assert facet_count_formula(l3, Decomposition.of(l3, u1=["x1"])) == 4
    assert facet_count_formula(l3, Decomposition.order(l3)) == 4


@pytest.mark.parametrize("m", [make_l3(), make_gt(2, 1, 0), make_gt(3, 2, 1, 0)], ids=["L3", "GT2", "GT3"])
def test_facet_formula_matches_geometry(m):
    for d in enumerate_admissible(m):
        assert facet_count_formula(m, d) == geometric_facet_count(build_chain_order(m, d))


def test_order_case_counts_covers(gt3):
    assert facet_count_formula(gt3, Decomposition.order(gt3)) == len(gt3.poset.covers)


def test_regularity_required():
    with pytest.raises(RegularityRequired):
        facet_count_formula(make_gt(2, 2, 0), Decomposition.order(make_gt(2, 2, 0)))


def test_facet_difference_gt3(gt3):
    u = Decomposition.of(gt3, u1=["p11", "p12", "p22"])
    v = Decomposition.of(gt3, u1=["p11"])
    assert gt3.poset.count_maximal_chains_ending("p12") == 2
    assert facet_difference(gt3, u, v, "p12") == (2 - 1) * (2 - 1)


def test_facet_difference_gt4(gt4):
    u = Decomposition.of(gt4, u2=["p14", "p24", "p34", "p44"])
    v = Decomposition.of(gt4, u2=["p14", "p24", "p34", "p44", "p13"])
    assert star_signature(gt4, v) == {"p13"}
    expected = (len(gt4.poset.covering_elements("p13")) - 1) * (gt4.poset.count_maximal_chains_ending("p13") - 1)
    assert facet_difference(gt4, u, v, "p13") == expected == 1


def test_facet_difference_preconditions(gt3, l3):
    u = Decomposition.of(gt3, u1=["p11", "p12", "p22"])
    with pytest.raises(PreconditionViolated):
        facet_difference(gt3, u, u, "p12")
    # a single covering element never makes a star element
    with pytest.raises(PreconditionViolated):
        facet_difference(l3, Decomposition.order(l3), Decomposition.of(l3, u1=["x1"]), "x2")


def test_gt4_facet_counts_strictly_increase_with_signature(gt4):
    by_sig = {}
    for sig, decs in equivalence_classes(gt4).items():
        counts = {facet_count_formula(gt4, d) for d in decs}
        assert len(counts) == 1
        by_sig[sig] = counts.pop()
    for s in by_sig:
        for t in by_sig:
            if s < t:
                assert by_sig[s] < by_sig[t]
    assert sorted(by_sig.values()) == [20, 21, 23, 26]


def test_gt3_fvectors_per_class(gt3):
    for d in enumerate_admissible(gt3):
        f = f_vector(build_chain_order(gt3, d)).counts
        assert f == (GT3_F_P12 if star_signature(gt3, d) else GT3_F_EMPTY)


def test_conjecture_gt2_and_l3(gt2, l3):
    for m in (gt2, l3):
        rep = run_conjecture(m)
        assert len({f.counts for _, f in rep.fvectors}) == 1
        assert not rep.violations and not rep.facet_violations


def test_conjecture_gt3(gt3):
    rep = run_conjecture(gt3)
    assert len(rep.fvectors) == 8
    ideals = order_ideals(gt3)
    # U1 strictly inside V1 means U2 strictly contains V2
    assert rep.pairs_compared == sum(1 for a in ideals for b in ideals if b < a) == 27
    assert not rep.facet_violations
    data = rep.as_dict(gt3)
    assert {tuple(e["f"]) for e in data["fvectors"]} == {GT3_F_EMPTY, GT3_F_P12}


def test_marked_rooted_chain_counts(gt3, gt4):
    assert gt3.count_marked_chains_ending("p12") == 2
    assert {q: gt4.count_marked_chains_ending(q) for q in ("p12", "p13", "p23")} == {"p12": 4, "p13": 2, "p23": 3}
    # chains from the minimal element overcount p12 once marked elements sit in between
    assert gt4.poset.count_maximal_chains_ending("p12") == 5


def test_facet_difference_gt4_p12(gt4):
    u = Decomposition.of(gt4, u2=["p14", "p24", "p34", "p44", "p13", "p23"])
    v = Decomposition.chain(gt4)
    assert star_signature(gt4, u) == {"p13", "p23"}
    assert facet_difference(gt4, u, v, "p12") == 3
    counts = []
    for d in (u, v):
        h = build_chain_order(gt4, d)
        counts.append(lattice_facet_count(h, enumerate_lattice_points(h)))
    assert counts == [23, 26]


@pytest.mark.parametrize("n", [3, 4, 5])
def test_facet_difference_every_signature_step(n):
    m = make_gt(*range(n, -1, -1))
    reps = {s: ds[0] for s, ds in equivalence_classes(m).items()}
    steps = 0
    for s, du in reps.items():
        for q in sorted(m.unmarked):
            t = s | {q}
            if t != s and t in reps:
                facet_difference(m, du, reps[t], q)
                steps += 1
    assert steps == {3: 1, 4: 3, 5: 8}[n]
