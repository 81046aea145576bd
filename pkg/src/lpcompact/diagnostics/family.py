from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from ..measure_space import MeasureSpace, Partition, check_same_space, is_refinement, refine_all
from ..numeric import Real, as_exponent, root
from ..operators import cond_expect
from ..stepfn import StepFunction


class ChainNotMonotone(ValueError):
    """Raised when a partition chain is not ordered by refinement."""


@dataclass(frozen=True, eq=False)
class FunctionFamily:
    """A finite indexed family of step functions on one space with one value type."""

    members: tuple[StepFunction, ...]

    def __post_init__(self):
        members = tuple(self.members)
        if not members:
            raise ValueError("a family needs at least one member")
        first = members[0]
        for f in members[1:]:
            check_same_space(first.space, f.space)
            if f.value_type != first.value_type:
                raise ValueError("family members must share a value type")
        object.__setattr__(self, "members", members)

    @classmethod
    def of(cls, members: Iterable[StepFunction]) -> FunctionFamily:
        return cls(tuple(members))

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __getitem__(self, i: int) -> StepFunction:
        return self.members[i]

    @property
    def space(self) -> MeasureSpace:
        return self.members[0].space

    def common_partition(self) -> Partition:
        """Coarsest partition on which every member is constant."""
        return refine_all(f.partition for f in self.members)


def riesz_gap_power(H: FunctionFamily, partition: Partition, p) -> Real:
    """max over members of ``||E_pi f - f||_p ** p`` (exact)."""
    p = as_exponent(p)
    check_same_space(H.space, partition.space)
    return max((cond_expect(f, partition) - f).lp_norm_power(p) for f in H)


def riesz_gap(H: FunctionFamily, partition: Partition, p) -> Real:
    """max over members of ``||E_pi f - f||_p``; rational whenever the root is."""
    p = as_exponent(p)
    return root(riesz_gap_power(H, partition, p), p)


def check_chain(chain: Sequence[Partition]) -> None:
    for coarse, fine in zip(chain, chain[1:]):
        if not is_refinement(fine, coarse):
            raise ChainNotMonotone("each partition in the chain must refine its predecessor")


def riesz_gap_curve(H: FunctionFamily, chain: Sequence[Partition], p) -> list[Real]:
    check_chain(chain)
    return [riesz_gap(H, pi, p) for pi in chain]
