"""Gelfand-Tsetlin posets and their partition markings."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .decomposition import enumerate_admissible, star_signature
from .errors import InvalidMarking
from .poset import MarkedPoset, validate_poset


def gt_label(i: int, j: int, n: int) -> str:
    return f"p{i}{j}" if n < 10 else f"p{i}_{j}"


@dataclass(frozen=True)
class GTSpec:
    n: int
    lam: tuple

    def __post_init__(self):
        lam = tuple(self.lam)
        object.__setattr__(self, "lam", lam)
        if self.n < 1:
            raise InvalidMarking("n must be at least 1")
        if len(lam) != self.n + 1:
            raise InvalidMarking(f"lambda needs n + 1 = {self.n + 1} entries, got {len(lam)}")
        if any(isinstance(v, bool) or not isinstance(v, int) or v < 0 for v in lam):
            raise InvalidMarking("lambda entries must be nonnegative integers")
        if any(a < b for a, b in zip(lam, lam[1:])):
            raise InvalidMarking("lambda must be weakly decreasing")

    def label(self, i: int, j: int) -> str:
        return gt_label(i, j, self.n)


def gt_poset(n: int):
    """Elements p_{i,j} (0 <= i <= j <= n) with covers p_{i-1,j} -> p_{i,j} -> p_{i-1,j-1}."""
    lab = lambda i, j: gt_label(i, j, n)  # noqa: E731
    elements = [lab(i, j) for i in range(n + 1) for j in range(i, n + 1)]
    covers = []
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            covers.append((lab(i - 1, j), lab(i, j)))
            covers.append((lab(i, j), lab(i - 1, j - 1)))
    return validate_poset(elements, covers)


def build_gt_poset(spec: GTSpec) -> MarkedPoset:
    marking = {spec.label(0, k): v for k, v in enumerate(spec.lam)}
    return MarkedPoset(gt_poset(spec.n), marking)


def gt_star_elements(n: int) -> frozenset:
    """Closed form of the star elements of P_n."""
    return frozenset(gt_label(i, j, n) for i in range(1, n) for j in range(i + 1, n))


def weyl_dimension(spec: GTSpec) -> int:
    """prod_{i<j} (lambda_i - lambda_j + j - i) / (j - i)."""
    lam = spec.lam
    acc = Fraction(1)
    for i in range(len(lam)):
        for j in range(i + 1, len(lam)):
            acc *= Fraction(lam[i] - lam[j] + j - i, j - i)
    assert acc.denominator == 1
    return int(acc)


def count_signature_classes(n: int) -> int:
    if n < 2:
        raise ValueError("n must be at least 2")
    # the marking does not affect the order structure; a strict one keeps it regular
    m = build_gt_poset(GTSpec(n, tuple(range(n, -1, -1))))
    return len({star_signature(m, d) for d in enumerate_admissible(m)})
