"""Random instance generators shared by the property and acceptance tests."""

from __future__ import annotations

import random
from fractions import Fraction

from lpcompact.banach import FiniteDimVector, SparseSeqVector
from lpcompact.measure_space import MeasurableSet, MeasureSpace, Partition
from lpcompact.stepfn import StepFunction

VALUE_TYPES = [
    ("finite", 1, "sum"),
    ("finite", 2, "sum"),
    ("finite", 3, "max"),
    ("finite", 2, "euclid"),
    ("sparse", None, "sum"),
    ("sparse", None, "max"),
]


def rand_fraction(rng: random.Random, lo: int = -6, hi: int = 6) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, 4))


def random_space(rng: random.Random, max_atoms: int = 64, min_atoms: int = 1) -> MeasureSpace:
    n = rng.randint(min_atoms, max_atoms)
    return MeasureSpace(tuple(Fraction(rng.randint(1, 9), rng.randint(1, 8)) for _ in range(n)))


def random_partition(rng: random.Random, space: MeasureSpace, max_blocks: int | None = None) -> Partition:
    k = rng.randint(1, max_blocks or len(space))
    return Partition.from_labels(space, [rng.randrange(k) for _ in space.atoms])


def random_set(rng: random.Random, space: MeasureSpace, nonempty: bool = False) -> MeasurableSet:
    while True:
        members = frozenset(i for i in space.atoms if rng.random() < 0.5)
        if members or not nonempty:
            return MeasurableSet(space, members)


def random_vector(rng: random.Random, vtype):
    kind, dim, norm = vtype
    if kind == "finite":
        return FiniteDimVector(tuple(rand_fraction(rng) for _ in range(dim)), norm)
    return SparseSeqVector({i: rand_fraction(rng) for i in rng.sample(range(1, 6), rng.randint(0, 3))}, norm)


def random_step(rng: random.Random, space: MeasureSpace, vtype=None, max_blocks: int = 8) -> StepFunction:
    vtype = vtype or rng.choice(VALUE_TYPES)
    part = random_partition(rng, space, min(max_blocks, len(space)))
    return StepFunction(part, tuple(random_vector(rng, vtype) for _ in part.blocks))


def random_instance(rng: random.Random, max_atoms: int = 64):
    """(f, pi, p) with p in {1, 2, 3}."""
    space = random_space(rng, max_atoms)
    f = random_step(rng, space)
    pi = random_partition(rng, space, rng.randint(1, len(space)))
    return f, pi, rng.choice([1, 2, 3])


# one line per acceptance criterion, echoed in the terminal summary by conftest
ACCEPTANCE_LINES: list[str] = []
