"""p-uniform integrability: tail integrals, small-set moduli and the choice of delta."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..measure_space import Partition
from ..numeric import Real, as_exponent, as_rational, leq
from ..operators import cond_expect
from ..stepfn import StepFunction
from .family import FunctionFamily


class NoFeasibleDelta(ValueError):
    """No grid value of delta keeps every controlled small-set integral below epsilon."""


def tail_integral(g: StepFunction, level) -> Real:
    """Integral of the scalar function g over the set where g > level."""
    level = as_rational(level)
    total: Real = Fraction(0)
    for v, m in zip(g.values, g.partition.measures):
        x = v.components[0]
        if x > level:
            total += x * m
    return total


def small_set_modulus(g: StepFunction, delta) -> Real:
    """Upper bound for sup of the integral of g >= 0 over sets of measure <= delta.

    Blocks are taken in decreasing order of g (ties by least atom) until the
    mass budget runs out, the last one fractionally. This is the exact value
    for a non-atomic refinement of the space and never below the atomic value.
    """
    delta = as_rational(delta)
    if delta < 0:
        raise ValueError("delta must be non-negative")
    order = sorted(
        range(len(g.values)),
        key=lambda k: (-g.values[k].components[0], g.partition.blocks[k].least),
    )
    budget = delta
    total: Real = Fraction(0)
    for k in order:
        if budget <= 0:
            break
        x = g.values[k].components[0]
        if x <= 0:
            break
        m = g.partition.measures[k]
        take = m if m <= budget else budget
        total += x * take
        budget -= take
    return total


@dataclass(frozen=True)
class UIProfile:
    p: Real
    tail: dict
    modulus: dict

    def tail_nonincreasing(self) -> bool:
        vals = [self.tail[m] for m in sorted(self.tail)]
        return all(b <= a for a, b in zip(vals, vals[1:]))

    def modulus_nondecreasing(self) -> bool:
        vals = [self.modulus[d] for d in sorted(self.modulus)]
        return all(a <= b for a, b in zip(vals, vals[1:]))


def _check_grid(grid: Sequence, name: str) -> list[Fraction]:
    vals = [as_rational(x) for x in grid]
    if any(x <= 0 for x in vals):
        raise ValueError(f"{name} values must be positive")
    if vals != sorted(vals):
        raise ValueError(f"{name} must be sorted ascending")
    return vals


def ui_profile(H: FunctionFamily, p, M_grid: Sequence, delta_grid: Sequence) -> UIProfile:
    p = as_exponent(p)
    Ms = _check_grid(M_grid, "M grid")
    deltas = _check_grid(delta_grid, "delta grid")
    powers = [f.norm_function(p) for f in H]
    tail = {M: max(tail_integral(g, M) for g in powers) for M in Ms}
    modulus = {d: max(small_set_modulus(g, d) for g in powers) for d in deltas}
    return UIProfile(p, tail, modulus)


def controlled_integrands(f: StepFunction, p, partitions: Sequence[Partition]) -> list[tuple[str, StepFunction]]:
    """The scalar functions whose small-set integrals the delta choice must control."""
    p = as_exponent(p)
    norm1 = f.norm_function(1)
    normp = f.norm_function(p)
    out = [("norm", norm1), ("norm^p", normp)]
    for j, pi in enumerate(partitions):
        out.append((f"E[norm]@{j}", cond_expect(norm1, pi)))
        out.append((f"E[norm^p]@{j}", cond_expect(normp, pi)))
        out.append((f"norm(E f)^p@{j}", cond_expect(f, pi).norm_function(p)))
    return out


def delta_controls(f: StepFunction, p, eps, delta, partitions: Sequence[Partition]) -> str | None:
    """Name of the first controlled integrand whose modulus at delta exceeds eps, or None."""
    for name, g in controlled_integrands(f, p, partitions):
        if not leq(small_set_modulus(g, delta), eps):
            return name
    return None


def select_delta(H: FunctionFamily, p, eps, delta_grid: Sequence, partitions: Sequence[Partition] = ()) -> Fraction:
    """Largest grid delta <= eps keeping every controlled integral below eps on sets of measure <= delta."""
    eps = as_rational(eps)
    if not 0 < eps <= 1:
        raise ValueError("epsilon must lie in (0, 1]")
    deltas = [d for d in _check_grid(delta_grid, "delta grid") if d <= eps]
    integrands = [g for f in H for _, g in controlled_integrands(f, p, partitions)]
    for d in reversed(deltas):
        if all(leq(small_set_modulus(g, d), eps) for g in integrands):
            return d
    raise NoFeasibleDelta(f"no delta in the grid below {eps} controls the small-set integrals")
