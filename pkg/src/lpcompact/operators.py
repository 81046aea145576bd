"""Conditional expectation over finite partitions and essential oscillation."""

from __future__ import annotations

from fractions import Fraction

from .banach import MAX, FiniteDimVector, Vector
from .measure_space import MeasurableSet, Partition, check_same_space
from .numeric import Real, as_number, root
from .stepfn import StepFunction


class OscOfEmptySet(ValueError):
    """Raised when the oscillation of a function over the empty set is requested."""


def cond_expect(f: StepFunction, partition: Partition) -> StepFunction:
    """Replace f on each block by its mean over that block."""
    check_same_space(f.space, partition.space)
    if partition == f.partition:
        return f
    return StepFunction(partition, tuple(f.mean(b) for b in partition.blocks))


def values_on(f: StepFunction, A: MeasurableSet) -> list[Vector]:
    """Distinct values f takes on A, in order of first atom."""
    check_same_space(f.space, A.space)
    own = f.partition.block_of
    ks = sorted({own[i] for i in A.members})
    return [f.values[k] for k in ks]


def _diameter_power(vals: list[Vector], p: int) -> Real:
    """max ||v - w|| ** p over pairs, with ``p`` 1 or 2 (2 keeps l2 exact)."""
    if len(vals) < 2:
        return Fraction(0)
    v0 = vals[0]
    if v0.norm_kind == MAX and isinstance(v0, FiniteDimVector):
        # coordinatewise spread is the exact l-inf diameter
        spread = max(max(col) - min(col) for col in zip(*(v.components for v in vals)))
        return spread if p == 1 else spread * spread
    norms = [v.norm() for v in vals]
    ceiling = 2 * max(norms)
    best: Real = Fraction(0)
    for i in range(len(vals)):
        for j in range(i + 1, len(vals)):
            d = vals[i] - vals[j]
            cand = d.squared_norm if p == 2 else d.norm()
            if cand > best:
                best = cand
                reached = best >= (ceiling * ceiling if p == 2 else ceiling)
                if reached:
                    return best
    return best


def ess_osc(f: StepFunction, A: MeasurableSet) -> Real:
    """Largest distance between two values of f on A.

    Every atom has positive mass, so no null set can be discarded and the
    essential oscillation is the plain diameter of ``f(A)``.
    """
    if not A.members:
        raise OscOfEmptySet("oscillation over the empty set")
    vals = values_on(f, A)
    if vals[0].norm_kind == "euclid":
        return root(_diameter_power(vals, 2), Fraction(2))
    return _diameter_power(vals, 1)


def ess_osc_squared(f: StepFunction, A: MeasurableSet) -> Real:
    """Square of :func:`ess_osc`, exact for every norm kind."""
    if not A.members:
        raise OscOfEmptySet("oscillation over the empty set")
    return _diameter_power(values_on(f, A), 2)


def mean_value_gap(f: StepFunction, A: MeasurableSet) -> Real:
    """max over atoms of A of ||f(omega) - m_A(f)||; never exceeds ess_osc(f, A)."""
    if f.values[0].norm_kind == "euclid":
        return root(mean_value_gap_squared(f, A), Fraction(2))
    m = f.mean(A)
    return max((v - m).norm() for v in values_on(f, A))


def mean_value_gap_squared(f: StepFunction, A: MeasurableSet) -> Real:
    m = f.mean(A)
    return max((v - m).squared_norm for v in values_on(f, A))


def superlevel_set(g: StepFunction, level) -> MeasurableSet:
    """Atoms where the scalar function g is strictly above ``level``."""
    level = as_number(level)
    return g.space.set(i for i, x in enumerate(g.scalar_atom_values()) if x > level)
