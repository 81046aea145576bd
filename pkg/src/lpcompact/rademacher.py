"""Rademacher functions on dyadic [0, 1] paired with the canonical basis of l1.

The family {r_n e_n} has integrals that cancel on coarse dyadic sets while its
members and their values stay 2 apart, which separates integral tightness from
total boundedness of the values.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .banach import canonical_basis, scalar
from .diagnostics.covering import CoveringResult, covering_number, family_covering
from .diagnostics.family import FunctionFamily
from .diagnostics.integrability import UIProfile, ui_profile
from .measure_space import MeasurableSet, dyadic_partition, dyadic_space
from .numeric import Real, as_rational
from .stepfn import StepFunction

EXHAUSTIVE_PROBE_LEVEL = 4
RANDOM_PROBES = 512
DEFAULT_SEED = 1729


@dataclass(frozen=True)
class RademacherSpec:
    n: int
    resolution: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("Rademacher index starts at 1")
        if self.resolution < self.n:
            raise ValueError(f"resolution L={self.resolution} must be >= n={self.n}")


def _signs(n: int) -> list[int]:
    return [1 if j % 2 == 0 else -1 for j in range(2**n)]


def rademacher(spec: RademacherSpec) -> StepFunction:
    """r_n on the level-L dyadic space: +1 on the first level-n interval, then alternating."""
    space = dyadic_space(spec.resolution)
    part = dyadic_partition(space, spec.n)
    return StepFunction(part, tuple(scalar(s) for s in _signs(spec.n)))


def rademacher_l1(n: int, L: int) -> StepFunction:
    spec = RademacherSpec(n, L)
    e = canonical_basis(n)
    part = dyadic_partition(dyadic_space(L), n)
    return StepFunction(part, tuple(e.scale(s) for s in _signs(spec.n)))


def rademacher_l1_family(N: int, L: int) -> FunctionFamily:
    """{r_n e_n : 1 <= n <= N} on dyadic level L."""
    if N < 1:
        raise ValueError("N must be >= 1")
    if L < N:
        raise ValueError(f"resolution L={L} must be >= N={N}")
    return FunctionFamily(tuple(rademacher_l1(n, L) for n in range(1, N + 1)))


def dyadic_probe_sets(L: int, k: int, seed: int = DEFAULT_SEED) -> tuple[list[MeasurableSet], bool]:
    """Unions of level-k dyadic intervals: all of them for k <= 4, else 512 seeded random ones."""
    blocks = dyadic_partition(dyadic_space(L), k).blocks
    nb = len(blocks)
    if k <= EXHAUSTIVE_PROBE_LEVEL:
        masks = range(2**nb)
        exhaustive = True
    else:
        rng = random.Random(seed)
        masks = [rng.getrandbits(nb) for _ in range(RANDOM_PROBES)]
        exhaustive = False
    space = blocks[0].space
    sets = []
    for mask in masks:
        members: set[int] = set()
        for j in range(nb):
            if mask >> j & 1:
                members |= blocks[j].members
        sets.append(MeasurableSet(space, frozenset(members)))
    return sets, exhaustive


@dataclass
class ExampleReport:
    N: int
    L: int
    k: int
    epsilon: Fraction
    seed: int
    exhaustive_probes: bool
    probe_count: int
    max_integral_norm: dict[int, Real]
    norm_identity_holds: bool
    probe_max_covering: int
    family_covering: CoveringResult
    value_covering: CoveringResult
    ui: UIProfile
    predicted_family_covering: int
    predicted_value_covering: int
    notes: list[str] = field(default_factory=list)

    @property
    def integral_tight_indicators(self) -> bool:
        """Integrals of r_n e_n over every probed set vanish once n exceeds the probe level."""
        vanish = all(v == 0 for n, v in self.max_integral_norm.items() if n > self.k)
        tails = all(t == 0 for M, t in self.ui.tail.items() if M >= 1)
        return vanish and self.norm_identity_holds and tails

    @property
    def separation_matches(self) -> bool:
        """Non-total-boundedness witnesses: covering numbers equal their exact predictions."""
        return (
            self.family_covering.exact == self.predicted_family_covering
            and self.value_covering.exact == self.predicted_value_covering
        )

    @property
    def passed(self) -> bool:
        return self.integral_tight_indicators and self.separation_matches


def example_report(N: int, L: int, k: int, epsilon, seed: int = DEFAULT_SEED) -> ExampleReport:
    if not (1 <= N <= L):
        raise ValueError(f"need 1 <= N <= L, got N={N}, L={L}")
    if not (0 <= k <= L):
        raise ValueError(f"need 0 <= k <= L, got k={k}, L={L}")
    eps = as_rational(epsilon)
    if eps <= 0:
        raise ValueError("epsilon must be positive")
    H = rademacher_l1_family(N, L)
    radem = [rademacher(RademacherSpec(n, L)) for n in range(1, N + 1)]
    sets, exhaustive = dyadic_probe_sets(L, k, seed)

    # integrals over a union of level-k blocks are sums of the per-block integrals
    blocks = dyadic_partition(dyadic_space(L), k).blocks
    per_block = [[f.integral(b) for b in blocks] for f in H]
    per_block_r = [[r.integral(b).components[0] for b in blocks] for r in radem]
    block_index = {b.least: j for j, b in enumerate(blocks)}

    max_norm: dict[int, Real] = {n: Fraction(0) for n in range(1, N + 1)}
    identity = True
    probe_cover = 1
    for E in sets:
        chosen = sorted({block_index[b.least] for b in blocks if b.members <= E.members})
        pts = []
        for idx, f in enumerate(H):
            v = f.zero()
            for j in chosen:
                v = v + per_block[idx][j]
            pts.append(v)
            nv = v.norm()
            max_norm[idx + 1] = max(max_norm[idx + 1], nv)
            if nv != abs(sum((per_block_r[idx][j] for j in chosen), Fraction(0))):
                identity = False
        cov = covering_number(pts, eps)
        probe_cover = max(probe_cover, cov.exact if cov.exact is not None else cov.upper)

    values = [v for f in H for v in f.values]
    big = eps >= 2
    report = ExampleReport(
        N=N,
        L=L,
        k=k,
        epsilon=eps,
        seed=seed,
        exhaustive_probes=exhaustive,
        probe_count=len(sets),
        max_integral_norm=max_norm,
        norm_identity_holds=identity,
        probe_max_covering=probe_cover,
        family_covering=family_covering(H, 1, eps),
        value_covering=covering_number(values, eps),
        ui=ui_profile(H, 1, [Fraction(1, 2), 1, 2, 4], [Fraction(1, 8), Fraction(1, 4), Fraction(1, 2), 1]),
        predicted_family_covering=1 if big else N,
        predicted_value_covering=1 if big else 2 * N,
    )
    report.notes.append(
        "covering numbers are non-total-boundedness witnesses at one scale; "
        "they do not range over all compact sets and are not a non-tightness proof"
    )
    return report
