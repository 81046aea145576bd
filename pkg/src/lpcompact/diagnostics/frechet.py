"""Frechet oscillation condition: witness checking and a greedy witness search.

A witness fixes one partition for the whole family and one trimmed set per
member; on each block the trimmed member must oscillate by at most epsilon,
and each trimmed set may discard at most epsilon of mass.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..measure_space import MeasurableSet, Partition, check_same_space, dyadic_partition
from ..numeric import Real, as_rational, leq, root
from ..operators import ess_osc_squared
from ..stepfn import StepFunction
from .family import FunctionFamily


@dataclass(frozen=True)
class FrechetWitness:
    epsilon: Fraction
    partition: Partition
    omega_f: tuple[MeasurableSet, ...]


@dataclass(frozen=True)
class Violation:
    member: int
    block: int | None
    kind: str  # "mass" or "oscillation"
    value: Real


@dataclass(frozen=True)
class FrechetCheck:
    ok: bool
    violation: Violation | None = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class MemberFailure:
    member: int
    residual_oscillation: Real
    mass_spent: Fraction
    mass_needed: Fraction


@dataclass(frozen=True)
class FrechetFailure:
    """Certificate that the greedy search found no witness within the block budget."""

    epsilon: Fraction
    block_budget: int
    partition: Partition
    failures: tuple[MemberFailure, ...]
    candidates_tried: int = 0

    @property
    def failed_members(self) -> tuple[int, ...]:
        return tuple(m.member for m in self.failures)

    def describe(self) -> str:
        lines = [f"no Frechet witness at epsilon={self.epsilon} with at most {self.block_budget} blocks"]
        for m in self.failures:
            lines.append(
                f"  member {m.member}: residual oscillation {m.residual_oscillation}, "
                f"mass spent {m.mass_spent}, mass needed {m.mass_needed}"
            )
        return "\n".join(lines)


class FrechetSearchFailed(RuntimeError):
    def __init__(self, certificate: FrechetFailure):
        super().__init__(certificate.describe())
        self.certificate = certificate


def frechet_verify(H: FunctionFamily, w: FrechetWitness) -> FrechetCheck:
    """Check both witness conditions, reporting the first violation in index order."""
    check_same_space(H.space, w.partition.space)
    if len(w.omega_f) != len(H):
        raise ValueError("witness needs one trimmed set per member")
    eps = w.epsilon
    for i, (f, good) in enumerate(zip(H, w.omega_f)):
        lost = good.complement().measure
        if lost > eps:
            return FrechetCheck(False, Violation(i, None, "mass", lost))
        for k, A in enumerate(w.partition.blocks):
            piece = good.intersect(A)
            if piece.measure == 0:
                continue
            osc2 = ess_osc_squared(f, piece)
            if not leq(osc2, eps * eps):
                return FrechetCheck(False, Violation(i, k, "oscillation", root(osc2, Fraction(2))))
    return FrechetCheck(True)


@dataclass
class _BlockTrim:
    block: int
    removed: frozenset[int] = frozenset()
    cost: Fraction = Fraction(0)
    oscillation: Real = Fraction(0)


def _trim_block(f: StepFunction, A: MeasurableSet, eps2: Fraction, k: int) -> _BlockTrim:
    # pieces: atoms of A on which f takes one value; removing part of a piece
    # never lowers the oscillation, so whole pieces are removed
    own = f.partition.block_of
    groups: dict[int, list[int]] = {}
    for i in sorted(A.members):
        groups.setdefault(own[i], []).append(i)
    pieces = [(f.values[b], frozenset(atoms)) for b, atoms in groups.items()]
    w = f.space.weights
    mass = [sum((w[i] for i in atoms), Fraction(0)) for _, atoms in pieces]
    alive = list(range(len(pieces)))
    d2 = [[(pieces[a][0] - pieces[b][0]).squared_norm for b in range(len(pieces))] for a in range(len(pieces))]
    osc2 = max((d2[a][b] for a in alive for b in alive), default=Fraction(0))
    trim = _BlockTrim(k, oscillation=root(osc2, Fraction(2)))
    removed: set[int] = set()
    while True:
        ecc = {a: max(d2[a][b] for b in alive) for a in alive}
        if leq(max(ecc.values()), eps2):
            break
        top = max(ecc.values())
        worst = min(
            (a for a in alive if ecc[a] == top),
            key=lambda a: (mass[a], min(pieces[a][1])),
        )
        alive.remove(worst)
        removed |= pieces[worst][1]
        trim.cost += mass[worst]
    trim.removed = frozenset(removed)
    return trim


def _trim_member(
    f: StepFunction, index: int, partition: Partition, eps: Fraction
) -> tuple[MeasurableSet | None, MemberFailure | None]:
    eps2 = eps * eps
    trims = [_trim_block(f, A, eps2, k) for k, A in enumerate(partition.blocks)]
    spent = Fraction(0)
    removed: set[int] = set()
    unfixed: list[_BlockTrim] = []
    for t in sorted(trims, key=lambda t: (t.cost, t.block)):
        if spent + t.cost <= eps:
            spent += t.cost
            removed |= t.removed
        else:
            unfixed.append(t)
    if not unfixed:
        return f.space.set(set(f.space.atoms) - removed), None
    needed = sum((t.cost for t in trims), Fraction(0))
    residual = max(t.oscillation for t in unfixed)
    return None, MemberFailure(index, residual, spent, needed)


def _merge_to_budget(partition: Partition, budget: int) -> Partition:
    blocks = [set(b.members) for b in partition.blocks]
    w = partition.space.weights
    mass = [sum((w[i] for i in b), Fraction(0)) for b in blocks]
    while len(blocks) > budget:
        j = min(range(len(blocks) - 1), key=lambda j: (mass[j] + mass[j + 1], j))
        blocks[j] |= blocks.pop(j + 1)
        mass[j] += mass.pop(j + 1)
    return Partition.from_blocks(partition.space, blocks)


def candidate_partitions(H: FunctionFamily, block_budget: int) -> list[Partition]:
    """Partitions tried by :func:`frechet_search`, most promising first."""
    full = H.common_partition()
    out: list[Partition] = []
    if len(full) <= block_budget:
        out.append(full)
    space = H.space
    n = len(space)
    if n & (n - 1) == 0 and len(set(space.weights)) == 1:
        level = 0
        while 2 ** (level + 1) <= min(block_budget, n):
            level += 1
        for k in range(level, -1, -1):
            out.append(dyadic_partition(space, k))
    if len(full) > block_budget:
        out.append(_merge_to_budget(full, block_budget))
    seen: list[Partition] = []
    for p in out:
        if p not in seen:
            seen.append(p)
    return seen


def frechet_search(H: FunctionFamily, epsilon, block_budget: int) -> FrechetWitness | FrechetFailure:
    """Greedy search for a witness using at most ``block_budget`` blocks.

    Each candidate partition is tried in turn; per member, the pieces of
    largest eccentricity (cheapest first on ties) are cut until every block
    oscillates by at most epsilon, and the block repairs are paid for cheapest
    first out of a mass budget of epsilon. The first candidate that works for
    every member gives the witness, re-verified before it is returned.
    Otherwise the certificate reports the candidate with fewest failing members.
    """
    if block_budget < 1:
        raise ValueError("block budget must be at least 1")
    eps = as_rational(epsilon)
    if eps <= 0:
        raise ValueError("epsilon must be positive")
    candidates = candidate_partitions(H, block_budget)
    best: FrechetFailure | None = None
    for pi in candidates:
        sets: list[MeasurableSet] = []
        failures: list[MemberFailure] = []
        for i, f in enumerate(H):
            good, failure = _trim_member(f, i, pi, eps)
            if failure is None:
                sets.append(good)
            else:
                failures.append(failure)
        if not failures:
            witness = FrechetWitness(eps, pi, tuple(sets))
            check = frechet_verify(H, witness)
            if not check.ok:
                raise AssertionError(f"search produced an invalid witness: {check.violation}")
            return witness
        if best is None or len(failures) < len(best.failures):
            best = FrechetFailure(eps, block_budget, pi, tuple(failures))
    return FrechetFailure(best.epsilon, block_budget, best.partition, best.failures, len(candidates))
