import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import EX9_COVERS, make_ex9, make_gt, make_l3
from mcop.errors import CycleError, InvalidMarking, NotRegularizable, UnknownElement
from mcop.gt import gt_star_elements
from mcop.hrep import build_marked_chain, build_marked_order
from mcop.lattice import count_lattice_points
from mcop.poset import MarkedPoset, check_regular, regularize, star_elements, validate_poset


def test_transitive_reduction_of_three_chain():
    P = validate_poset(["a", "b", "c"], {("c", "b"), ("b", "a"), ("c", "a")})
    assert P.covers == {("c", "b"), ("b", "a")}


def test_ex9_cover_list_is_already_reduced():
    P = validate_poset([str(i) for i in range(1, 10)], EX9_COVERS)
    assert P.covers == set(EX9_COVERS)


def test_two_cycle_rejected_and_named():
    with pytest.raises(CycleError) as info:
        validate_poset(["a", "b"], {("a", "b"), ("b", "a")})
    assert set(info.value.cycle) >= {"a", "b"}


def test_unknown_element_in_relation():
    with pytest.raises(UnknownElement):
        validate_poset(["a"], {("a", "z")})


def test_unknown_element_in_query(l3):
    with pytest.raises(UnknownElement):
        l3.poset.leq("x1", "nope")


def test_order_queries(l3, ex9):
    assert l3.poset.leq("x3", "x1")
    assert not ex9.poset.leq("5", "6")
    for e in ex9.poset.elements:
        assert ex9.poset.leq(e, e)


def test_covers_of_3_in_ex9(ex9):
    assert set(ex9.poset.covered_elements("3")) == {"1", "2"}
    assert set(ex9.poset.covering_elements("3")) == {"4"}


def test_covering_of_x2(l3):
    assert set(l3.poset.covering_elements("x2")) == {"x1"}


def test_gt3_covering_p12(gt3):
    assert set(gt3.poset.covering_elements("p12")) == {"p01", "p22"}


def test_maximal_chains(ex9, l3):
    starting = {tuple(c) for c in ex9.poset.maximal_chains_starting("3")}
    assert starting == {("3", "4", "5", "9"), ("3", "4", "6", "7"), ("3", "4", "6", "8")}
    ending = ex9.poset.maximal_chains_ending("4")
    assert len(ending) == 2 and {c[0] for c in ending} == {"1", "2"}
    assert ex9.poset.count_maximal_chains_ending("4") == 2
    assert len(l3.poset.maximal_chains_ending("x1")) == 1


def test_star_elements(l3, ex9, gt4):
    assert star_elements(l3) == frozenset()
    # the formal definition gives {4, 6}, not the {3} of the worked example
    assert star_elements(ex9) == {"4", "6"}
    assert star_elements(gt4) == {"p12", "p13", "p23"}


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_gt_star_elements_closed_form(n):
    lam = tuple(range(n, -1, -1))
    assert star_elements(make_gt(*lam)) == gt_star_elements(n)


def test_star_elements_ignore_marking_values():
    assert star_elements(make_ex9({"1": 0, "2": 0, "7": 0, "8": 0, "9": 0})) == {"4", "6"}


def test_unmarked_have_cover_and_chain(gt4, ex9):
    for m in (gt4, ex9):
        for p in m.unmarked:
            assert m.poset.covering_elements(p)
            assert m.poset.count_maximal_chains_ending(p) >= 1


def test_extremal_elements_must_be_marked():
    P = validate_poset(["a", "b"], {("a", "b")})
    with pytest.raises(InvalidMarking):
        MarkedPoset(P, {"a": 0})
    with pytest.raises(InvalidMarking):
        MarkedPoset(P, {"a": 0, "b": -1})


def test_regularity(gt4):
    assert check_regular(gt4).regular
    rep = check_regular(make_l3(0, 0))
    assert not rep.regular and any(c == 2 for c, _ in rep.violations)
    rep = check_regular(make_gt(2, 2, 0))
    assert (2, ("p00", "p01")) in rep.violations


def test_regular_report_consistent(l3):
    rep = check_regular(l3)
    assert rep.regular == (not rep.violations)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_strict_gt_markings_are_regular(n):
    assert check_regular(make_gt(*range(n, -1, -1))).regular


def test_regularize_identity_on_regular(l3):
    m2, cmap = regularize(l3)
    assert m2 == l3
    assert cmap == {e: e for e in l3.unmarked}


def test_regularize_collapses_equal_l3():
    m = make_l3(6, 6)
    m2, cmap = regularize(m)
    assert m2.unmarked == ()
    assert all(m2.is_marked(v) for v in cmap.values())
    assert count_lattice_points(build_marked_order(m)) == 1


@pytest.mark.parametrize("lam", [(2, 1, 1), (2, 2, 0), (1, 1, 1), (3, 3, 1, 0), (2, 1, 1, 0)])
def test_regularize_preserves_counts(lam):
    m = make_gt(*lam)
    m2, cmap = regularize(m)
    assert check_regular(m2).regular
    for build in (build_marked_order, build_marked_chain):
        assert count_lattice_points(build(m2)) == count_lattice_points(build(m))
    assert set(cmap) == set(m.unmarked)


def test_regularize_failure_is_loud():
    # an A-A cover with decreasing markings is an empty polytope; no retraction fixes it
    P = validate_poset(["b", "a", "x", "c"], {("b", "a"), ("a", "c"), ("b", "x"), ("x", "c")})
    m = MarkedPoset(P, {"b": 3, "a": 1, "c": 5})
    with pytest.raises(NotRegularizable):
        regularize(m)


@st.composite
def random_dags(draw):
    n = draw(st.integers(2, 7))
    edges = draw(st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda e: e[0] < e[1]), max_size=12))
    return [str(i) for i in range(n)], [(str(a), str(b)) for a, b in edges]


@settings(max_examples=60, deadline=None)
@given(random_dags())
def test_reduction_idempotent(dag):
    elements, rel = dag
    P = validate_poset(elements, rel)
    assert validate_poset(elements, P.covers).covers == P.covers
    for a, b in rel:
        assert P.lt(a, b)
    for q, p in P.covers:
        assert not any(P.lt(q, r) and P.lt(r, p) for r in elements)
