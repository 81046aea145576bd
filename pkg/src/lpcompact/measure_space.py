"""Finite atomic measure spaces, their measurable sets and finite partitions.

Atoms are identified by their index ``0..n-1``; every iteration and every
tie-break in the package follows ascending atom index.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

from .numeric import as_rational

MAX_DYADIC_LEVEL = 20


class SpaceMismatch(ValueError):
    """Raised when objects living on different measure spaces are combined."""


@dataclass(frozen=True)
class MeasureSpace:
    weights: tuple[Fraction, ...]
    labels: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        ws = tuple(as_rational(w) for w in self.weights)
        if not ws:
            raise ValueError("a measure space needs at least one atom")
        if any(w <= 0 for w in ws):
            raise ValueError("atom weights must be strictly positive")
        object.__setattr__(self, "weights", ws)
        if not self.labels:
            object.__setattr__(self, "labels", tuple(str(i) for i in range(len(ws))))
        elif len(self.labels) != len(ws):
            raise ValueError("one label per atom required")

    def __len__(self) -> int:
        return len(self.weights)

    @cached_property
    def total_mass(self) -> Fraction:
        return sum(self.weights, Fraction(0))

    @cached_property
    def _hash(self) -> int:
        return hash(self.weights)

    def __hash__(self) -> int:
        return self._hash

    @property
    def atoms(self) -> range:
        return range(len(self.weights))

    def weight(self, atom: int) -> Fraction:
        return self.weights[atom]

    def set(self, members: Iterable[int]) -> MeasurableSet:
        return MeasurableSet(self, frozenset(members))

    @cached_property
    def omega(self) -> MeasurableSet:
        return MeasurableSet(self, frozenset(self.atoms))

    @cached_property
    def empty(self) -> MeasurableSet:
        return MeasurableSet(self, frozenset())


def check_same_space(a: MeasureSpace, b: MeasureSpace) -> None:
    if a is not b and a != b:
        raise SpaceMismatch("objects live on different measure spaces")


@lru_cache(maxsize=None)
def dyadic_space(level: int, max_level: int = MAX_DYADIC_LEVEL) -> MeasureSpace:
    """[0, 1] cut into 2**level dyadic intervals of equal mass, left to right."""
    if level < 0:
        raise ValueError("dyadic level must be non-negative")
    if level > max_level:
        raise ValueError(f"dyadic level {level} exceeds the maximum {max_level}")
    n = 2**level
    w = Fraction(1, n)
    labels = tuple(f"[{i}/{n},{i + 1}/{n})" for i in range(n))
    return MeasureSpace((w,) * n, labels)


@dataclass(frozen=True)
class MeasurableSet:
    space: MeasureSpace
    members: frozenset[int]

    def __post_init__(self):
        if not isinstance(self.members, frozenset):
            object.__setattr__(self, "members", frozenset(self.members))
        n = len(self.space)
        if any(not (0 <= i < n) for i in self.members):
            raise ValueError("set contains atoms outside the space")

    def __hash__(self) -> int:
        return hash(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(sorted(self.members))

    def __contains__(self, atom: int) -> bool:
        return atom in self.members

    @cached_property
    def measure(self) -> Fraction:
        w = self.space.weights
        return sum((w[i] for i in self.members), Fraction(0))

    @property
    def least(self) -> int:
        return min(self.members)

    def _other(self, other: MeasurableSet) -> frozenset[int]:
        check_same_space(self.space, other.space)
        return other.members

    def complement(self) -> MeasurableSet:
        return MeasurableSet(self.space, frozenset(self.space.atoms) - self.members)

    def union(self, other: MeasurableSet) -> MeasurableSet:
        return MeasurableSet(self.space, self.members | self._other(other))

    def intersect(self, other: MeasurableSet) -> MeasurableSet:
        return MeasurableSet(self.space, self.members & self._other(other))

    def difference(self, other: MeasurableSet) -> MeasurableSet:
        return MeasurableSet(self.space, self.members - self._other(other))

    def issubset(self, other: MeasurableSet) -> bool:
        return self.members <= self._other(other)

    __or__ = union
    __and__ = intersect
    __sub__ = difference

    def __repr__(self) -> str:
        return f"MeasurableSet({sorted(self.members)})"


def measure(E: MeasurableSet) -> Fraction:
    return E.measure


def complement(E: MeasurableSet) -> MeasurableSet:
    return E.complement()


def union(E: MeasurableSet, F: MeasurableSet) -> MeasurableSet:
    return E.union(F)


def intersect(E: MeasurableSet, F: MeasurableSet) -> MeasurableSet:
    return E.intersect(F)


@dataclass(frozen=True)
class Partition:
    """A finite partition of the space into sets of positive measure.

    Blocks are kept sorted by their least atom, so equal partitions compare equal.
    """

    space: MeasureSpace
    blocks: tuple[MeasurableSet, ...]

    def __post_init__(self):
        blocks = []
        for b in self.blocks:
            if not isinstance(b, MeasurableSet):
                b = MeasurableSet(self.space, frozenset(b))
            else:
                check_same_space(self.space, b.space)
            if not b.members:
                raise ValueError("partition blocks must be non-empty")
            blocks.append(b)
        seen: set[int] = set()
        for b in blocks:
            if seen & b.members:
                raise ValueError("partition blocks overlap")
            seen |= b.members
        if len(seen) != len(self.space):
            raise ValueError("partition blocks do not cover the space")
        blocks.sort(key=lambda b: b.least)
        object.__setattr__(self, "blocks", tuple(blocks))

    def __len__(self) -> int:
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)

    def __hash__(self) -> int:
        return hash(self.blocks)

    @cached_property
    def block_of(self) -> tuple[int, ...]:
        """Block index of every atom."""
        out = [0] * len(self.space)
        for k, b in enumerate(self.blocks):
            for i in b.members:
                out[i] = k
        return tuple(out)

    @cached_property
    def measures(self) -> tuple[Fraction, ...]:
        return tuple(b.measure for b in self.blocks)

    @classmethod
    def from_blocks(cls, space: MeasureSpace, blocks: Iterable[Iterable[int]]) -> Partition:
        return cls(space, tuple(MeasurableSet(space, frozenset(b)) for b in blocks))

    @classmethod
    def from_labels(cls, space: MeasureSpace, labels: Sequence) -> Partition:
        """Group atoms sharing the same label (``labels[i]`` for atom ``i``)."""
        groups: dict = {}
        for i, lab in enumerate(labels):
            groups.setdefault(lab, []).append(i)
        return cls.from_blocks(space, groups.values())

    @classmethod
    def trivial(cls, space: MeasureSpace) -> Partition:
        return cls(space, (space.omega,))

    @classmethod
    def atoms(cls, space: MeasureSpace) -> Partition:
        return cls.from_blocks(space, ([i] for i in space.atoms))

    def is_atomic(self) -> bool:
        return len(self.blocks) == len(self.space)


@lru_cache(maxsize=4096)
def dyadic_partition(space: MeasureSpace, level: int) -> Partition:
    """The 2**level consecutive equal-count blocks of a space with 2**L atoms."""
    n = len(space)
    if n & (n - 1):
        raise ValueError("dyadic partitions need a power-of-two number of atoms")
    if level < 0 or 2**level > n:
        raise ValueError(f"dyadic level {level} is finer than the atoms")
    run = n >> level
    return Partition.from_blocks(space, (range(j * run, (j + 1) * run) for j in range(2**level)))


def common_refinement(p1: Partition, p2: Partition) -> Partition:
    """All non-empty intersections of a block of ``p1`` with a block of ``p2``."""
    check_same_space(p1.space, p2.space)
    if p1 is p2:
        return p1
    return Partition.from_labels(p1.space, list(zip(p1.block_of, p2.block_of)))


def is_refinement(fine: Partition, coarse: Partition) -> bool:
    """True iff every block of ``fine`` lies inside a block of ``coarse``."""
    check_same_space(fine.space, coarse.space)
    owner = coarse.block_of
    return all(len({owner[i] for i in b.members}) == 1 for b in fine.blocks)


def refine_all(partitions: Iterable[Partition]) -> Partition:
    it = iter(partitions)
    acc = next(it)
    for p in it:
        acc = common_refinement(acc, p)
    return acc
