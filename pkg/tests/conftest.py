import pytest

from mcop.gt import GTSpec, build_gt_poset
from mcop.poset import MarkedPoset, validate_poset

L3_COVERS = [("b", "x3"), ("x3", "x2"), ("x2", "x1"), ("x1", "a")]
EX9_COVERS = [("1", "3"), ("2", "3"), ("3", "4"), ("4", "5"), ("5", "9"), ("4", "6"), ("6", "7"), ("6", "8")]
EX9_MARKING = {"1": 0, "2": 1, "7": 4, "8": 5, "9": 6}


def make_l3(a=6, b=0):
    P = validate_poset(["b", "x3", "x2", "x1", "a"], L3_COVERS)
    return MarkedPoset(P, {"a": a, "b": b})


def make_ex9(marking=EX9_MARKING):
    P = validate_poset([str(i) for i in range(1, 10)], EX9_COVERS)
    return MarkedPoset(P, marking)


def make_gt(*lam):
    return build_gt_poset(GTSpec(len(lam) - 1, tuple(lam)))


@pytest.fixture
def l3():
    return make_l3()


@pytest.fixture
def ex9():
    return make_ex9()


@pytest.fixture
def gt2():
    return make_gt(2, 1, 0)


@pytest.fixture
def gt3():
    return make_gt(3, 2, 1, 0)


@pytest.fixture
def gt4():
    return make_gt(4, 3, 2, 1, 0)


def pt(m, **values):
    """Point tuple over m.unmarked from keyword coordinates."""
    return tuple(values[c] for c in m.unmarked)
