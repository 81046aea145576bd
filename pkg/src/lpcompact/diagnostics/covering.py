"""Covering numbers of finite point sets by closed epsilon-balls centred at the points."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from ..banach import Vector
from ..numeric import Real, as_exponent, as_rational, leq, power, root
from .family import FunctionFamily

EXHAUSTIVE_LIMIT = 15


@dataclass(frozen=True)
class CoveringResult:
    """Bracket ``lower <= exact <= upper`` on the number of epsilon-balls needed.

    ``upper`` is a greedy cover, ``lower`` a greedy 2*epsilon-separated packing
    (no closed epsilon-ball around a point can contain two of its members).
    ``exact`` is filled by exhaustive search on at most 15 distinct points, or
    when the bracket closes.
    """

    epsilon: Real
    upper: int
    lower: int
    exact: int | None = None
    centers: tuple[int, ...] = ()

    @property
    def value(self) -> int | None:
        return self.exact


def _bitmask_cover(masks: list[int], full: int, lo: int, hi: int) -> tuple[int, tuple[int, ...]] | None:
    m = len(masks)
    for k in range(max(lo, 1), hi):
        for combo in combinations(range(m), k):
            acc = 0
            for c in combo:
                acc |= masks[c]
            if acc == full:
                return k, combo
    return None


def cover_from_distances(dist: Sequence[Sequence[Real]], within: Real, separated: Real, epsilon: Real) -> CoveringResult:
    """Covering bracket from a symmetric matrix of (powered) distances.

    ``d <= within`` means covered by a ball, ``d > separated`` means the pair
    cannot share a ball. Points at distance zero are merged first.
    """
    n = len(dist)
    if n == 0:
        raise ValueError("need at least one point")
    reps: list[int] = []
    for i in range(n):
        if not any(dist[i][r] == 0 for r in reps):
            reps.append(i)
    m = len(reps)
    near = [[leq(dist[a][b], within) for b in reps] for a in reps]

    uncovered = set(range(m))
    centers: list[int] = []
    while uncovered:
        best = max(range(m), key=lambda c: (sum(1 for j in uncovered if near[c][j]), -c))
        centers.append(best)
        uncovered -= {j for j in uncovered if near[best][j]}
    upper = len(centers)

    packing: list[int] = []
    for i in range(m):
        if all(not leq(dist[reps[i]][reps[j]], separated) for j in packing):
            packing.append(i)
    lower = len(packing)

    exact = None
    chosen = tuple(centers)
    if lower == upper:
        exact = upper
    elif m <= EXHAUSTIVE_LIMIT:
        masks = [sum(1 << j for j in range(m) if near[c][j]) for c in range(m)]
        found = _bitmask_cover(masks, (1 << m) - 1, lower, upper)
        if found is None:
            exact = upper
        else:
            exact, chosen = found
    return CoveringResult(epsilon, upper, lower, exact, tuple(reps[c] for c in chosen))


def covering_number(points: Sequence[Vector], epsilon) -> CoveringResult:
    """Covering of vectors in their own norm; distances compared on squares."""
    eps = as_rational(epsilon)
    if eps <= 0:
        raise ValueError("epsilon must be positive")
    if not points:
        raise ValueError("need at least one point")
    first: dict[Vector, int] = {}
    for i, v in enumerate(points):
        first.setdefault(v, i)
    keep = list(first.values())
    pts = [points[i] for i in keep]
    dist = [[(a - b).squared_norm for b in pts] for a in pts]
    res = cover_from_distances(dist, eps * eps, 4 * eps * eps, eps)
    return CoveringResult(res.epsilon, res.upper, res.lower, res.exact, tuple(keep[c] for c in res.centers))


def family_covering(H: FunctionFamily, p, epsilon) -> CoveringResult:
    """Covering of the members in the L^p distance; compared on p-th powers."""
    p = as_exponent(p)
    eps = as_rational(epsilon)
    if eps <= 0:
        raise ValueError("epsilon must be positive")
    members = list(H)
    n = len(members)
    dist: list[list[Real]] = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            d = (members[i] - members[j]).lp_norm_power(p)
            dist[i][j] = dist[j][i] = d
    return cover_from_distances(dist, power(eps, p), power(2 * eps, p), eps)


def diameter(points: Sequence[Vector]) -> Real:
    if len(points) < 2:
        return Fraction(0)
    if points[0].norm_kind == "euclid":
        return root(max((a - b).squared_norm for a in points for b in points), Fraction(2))
    return max((a - b).norm() for a in points for b in points)
