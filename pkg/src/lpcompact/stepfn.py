"""Vector-valued simple functions on a finite atomic measure space."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Callable, Sequence

from .banach import FiniteDimVector, Vector, scalar
from .measure_space import (
    MeasurableSet,
    MeasureSpace,
    Partition,
    check_same_space,
    common_refinement,
)
from .numeric import Real, as_exponent, as_number


class MeanOfNullSet(ValueError):
    """Raised when averaging over a set of measure zero."""


@dataclass(frozen=True, eq=False)
class StepFunction:
    """A function constant on each block of ``partition``.

    ``values[k]`` is the value on ``partition.blocks[k]``. Two step functions
    compare equal when they agree at every atom, whatever their partitions.
    """

    partition: Partition
    values: tuple[Vector, ...]

    def __post_init__(self):
        values = tuple(self.values)
        if len(values) != len(self.partition.blocks):
            raise ValueError("need exactly one value per partition block")
        vt = values[0].value_type
        if any(v.value_type != vt for v in values):
            raise ValueError("all values must share one value type")
        object.__setattr__(self, "values", values)

    @property
    def space(self) -> MeasureSpace:
        return self.partition.space

    @property
    def value_type(self) -> tuple:
        return self.values[0].value_type

    @classmethod
    def constant(cls, space: MeasureSpace, value: Vector) -> StepFunction:
        return cls(Partition.trivial(space), (value,))

    @classmethod
    def from_atom_values(cls, space: MeasureSpace, values: Sequence[Vector]) -> StepFunction:
        """Build from one value per atom; atoms with equal values are merged into blocks."""
        if len(values) != len(space):
            raise ValueError("need one value per atom")
        part = Partition.from_labels(space, list(values))
        return cls(part, tuple(values[b.least] for b in part.blocks))

    def eval(self, atom: int) -> Vector:
        if not 0 <= atom < len(self.space):
            raise KeyError(f"atom {atom} is not in the space")
        return self.values[self.partition.block_of[atom]]

    __call__ = eval

    def atom_values(self) -> list[Vector]:
        return [self.values[k] for k in self.partition.block_of]

    def zero(self) -> Vector:
        return self.values[0].zero()

    def __eq__(self, other) -> bool:
        if not isinstance(other, StepFunction):
            return NotImplemented
        if self.space != other.space or self.value_type != other.value_type:
            return False
        if self.partition == other.partition:
            return self.values == other.values
        return self.atom_values() == other.atom_values()

    __hash__ = None

    def restrict_to(self, partition: Partition) -> StepFunction:
        """The same function written on a finer partition."""
        check_same_space(self.space, partition.space)
        own = self.partition.block_of
        vals = []
        for b in partition.blocks:
            ks = {own[i] for i in b.members}
            if len(ks) != 1:
                raise ValueError("target partition does not refine the function's partition")
            vals.append(self.values[ks.pop()])
        return StepFunction(partition, tuple(vals))

    def map_values(self, fn: Callable[[Vector], Vector]) -> StepFunction:
        return StepFunction(self.partition, tuple(fn(v) for v in self.values))

    def integral(self, E: MeasurableSet | None = None) -> Vector:
        """Bochner integral over E (over the whole space when E is None)."""
        if E is None:
            pieces = zip(self.values, self.partition.measures)
        else:
            check_same_space(self.space, E.space)
            w = self.space.weights
            mass: dict[int, Fraction] = {}
            own = self.partition.block_of
            for i in E.members:
                mass[own[i]] = mass.get(own[i], 0) + w[i]
            pieces = ((self.values[k], m) for k, m in sorted(mass.items()))
        acc = self.zero()
        for v, m in pieces:
            acc = acc + v.scale(m)
        return acc

    def mean(self, A: MeasurableSet) -> Vector:
        mu = A.measure
        if mu == 0:
            raise MeanOfNullSet("mean over a set of measure zero")
        return self.integral(A).scale(1 / mu)

    def lp_norm_power(self, p) -> Real:
        """``||f||_p ** p``."""
        p = as_exponent(p)
        return sum((v.norm_power(p) * m for v, m in zip(self.values, self.partition.measures)), Fraction(0))

    def norm_function(self, p=1) -> StepFunction:
        """The scalar function ``omega -> ||f(omega)|| ** p``."""
        p = as_exponent(p)
        return self.map_values(lambda v: scalar(v.norm_power(p)))

    def combine(self, other: StepFunction, alpha=1, beta=1) -> StepFunction:
        """``alpha * self + beta * other`` on the common refinement."""
        check_same_space(self.space, other.space)
        if self.value_type != other.value_type:
            raise ValueError("incompatible value types")
        alpha, beta = as_number(alpha), as_number(beta)
        part = common_refinement(self.partition, other.partition)
        a, b = self.partition.block_of, other.partition.block_of
        vals = tuple(
            self.values[a[blk.least]].scale(alpha) + other.values[b[blk.least]].scale(beta)
            for blk in part.blocks
        )
        return StepFunction(part, vals)

    def __add__(self, other: StepFunction) -> StepFunction:
        return self.combine(other, 1, 1)

    def __sub__(self, other: StepFunction) -> StepFunction:
        return self.combine(other, 1, -1)

    def __neg__(self) -> StepFunction:
        return self.map_values(lambda v: -v)

    def scale(self, alpha) -> StepFunction:
        return self.map_values(lambda v: v.scale(alpha))

    def multiply(self, g: StepFunction) -> StepFunction:
        """Pointwise product with a scalar-valued step function ``g``."""
        check_same_space(self.space, g.space)
        if g.value_type != ("finite", 1, "sum"):
            raise ValueError("the multiplier must be scalar-valued")
        part = common_refinement(self.partition, g.partition)
        a, b = self.partition.block_of, g.partition.block_of
        vals = tuple(
            self.values[a[blk.least]].scale(g.values[b[blk.least]].components[0])
            for blk in part.blocks
        )
        return StepFunction(part, vals)

    def scalar_atom_values(self) -> list[Real]:
        """Atom values of a scalar function as plain numbers."""
        if self.value_type[:2] != ("finite", 1):
            raise ValueError("not a scalar function")
        return [v.components[0] for v in self.atom_values()]

    @cached_property
    def is_scalar(self) -> bool:
        return self.value_type[:2] == ("finite", 1)

    def __repr__(self) -> str:
        body = ", ".join(f"{sorted(b.members)}->{v.render()}" for b, v in zip(self.partition.blocks, self.values))
        return f"StepFunction({body})"


def scalar_function(space: MeasureSpace, atom_values: Sequence) -> StepFunction:
    return StepFunction.from_atom_values(space, [scalar(x) for x in atom_values])


def eval(f: StepFunction, atom: int) -> Vector:  # noqa: A001
    return f.eval(atom)


def integral(f: StepFunction, E: MeasurableSet | None = None) -> Vector:
    return f.integral(E)


def mean(f: StepFunction, A: MeasurableSet) -> Vector:
    return f.mean(A)


def lp_norm_power(f: StepFunction, p) -> Real:
    return f.lp_norm_power(p)


def norm_function(f: StepFunction, p=1) -> StepFunction:
    return f.norm_function(p)


def combine(f: StepFunction, g: StepFunction, alpha=1, beta=1) -> StepFunction:
    return f.combine(g, alpha, beta)


def is_scalar_value(v: Vector) -> bool:
    return isinstance(v, FiniteDimVector) and v.dim == 1 and v.norm_kind == "sum"
