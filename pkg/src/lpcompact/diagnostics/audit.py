"""Line-by-line audit of the estimate ``||f - E_pi f||_p^p <= T * eps``.

Given a member f, a coarse partition pi0 with trimmed set G on which f
oscillates by at most delta on each block, and any refinement pi of pi0, the
estimate is reached through a chain of ten inequalities. Each chain value is
computed from its own closed-form expression, so an audit line compares two
independently evaluated numbers rather than restating a bound.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from ..measure_space import MeasurableSet, Partition, common_refinement, is_refinement
from ..numeric import Real, as_exponent, as_rational, leq, power
from ..operators import cond_expect, ess_osc_squared, mean_value_gap_squared
from ..stepfn import StepFunction
from .family import FunctionFamily
from .frechet import FrechetFailure, FrechetSearchFailed, FrechetWitness, frechet_search
from .integrability import delta_controls, select_delta

CHAIN_LABELS = (
    "split off the trimmed-away set",
    "recentre on trimmed block means",
    "oscillation bound on trimmed blocks",
    "separate the two block integrals",
    "Holder on both block parts",
    "bound by the larger mass ratio",
    "drop mass ratios below one",
    "enlarge trimmed block to the block",
    "rewrite as conditional expectation",
    "small-set integrals and eps <= 1",
)


class PreconditionViolated(ValueError):
    """A hypothesis of the estimate fails; ``hypothesis`` names which one."""

    def __init__(self, hypothesis: str, detail: str):
        super().__init__(f"{hypothesis}: {detail}")
        self.hypothesis = hypothesis
        self.detail = detail


@dataclass(frozen=True)
class AuditLine:
    label: str
    lhs: Real
    rhs: Real
    passed: bool


def _line(label: str, lhs: Real, rhs: Real) -> AuditLine:
    return AuditLine(label, lhs, rhs, leq(lhs, rhs))


@dataclass
class AuditReport:
    lines: list[AuditLine]
    constant_T: Real
    final_bound_pass: bool
    I_pi: Real
    bound: Real
    pi_f: tuple[int, ...]
    side_lines: list[AuditLine] = field(default_factory=list)
    member: int | None = None
    partition_index: int | None = None

    @property
    def all_pass(self) -> bool:
        return self.final_bound_pass and all(l.passed for l in self.lines) and all(l.passed for l in self.side_lines)

    @property
    def chain_values(self) -> list[Real]:
        return [self.lines[0].lhs] + [l.rhs for l in self.lines]


def constant_T(total_mass, p) -> Real:
    """``(mu(Omega) + 2^(p+1) + 2) * 2^p``."""
    p = as_exponent(p)
    two = Fraction(2)
    return (as_rational(total_mass) + power(two, p + 1) + 2) * power(two, p)


def _deviation_integral(f: StepFunction, S: MeasurableSet, centre, p) -> Real:
    """Integral over S of ``||f - centre|| ** p``."""
    own = f.partition.block_of
    w = f.space.weights
    mass: dict[int, Fraction] = {}
    for i in S.members:
        mass[own[i]] = mass.get(own[i], Fraction(0)) + w[i]
    return sum(((f.values[k] - centre).norm_power(p) * m for k, m in sorted(mass.items())), Fraction(0))


def _scalar_integral(g: StepFunction, S: MeasurableSet) -> Real:
    return g.integral(S).components[0]


def check_hypotheses(f: StepFunction, p, pi0: Partition, pi: Partition, good: MeasurableSet, eps, delta) -> None:
    if not 0 < eps <= 1:
        raise PreconditionViolated("epsilon_range", f"epsilon={eps} is not in (0, 1]")
    if not 0 < delta <= eps:
        raise PreconditionViolated("delta_range", f"delta={delta} is not in (0, epsilon]")
    if not is_refinement(pi, pi0):
        raise PreconditionViolated("refinement", "pi does not refine pi0")
    lost = good.complement().measure
    if lost > delta:
        raise PreconditionViolated("trimmed_mass", f"mu(Omega minus Omega_f)={lost} exceeds delta={delta}")
    for k, K in enumerate(pi0.blocks):
        piece = good.intersect(K)
        if piece.measure > 0 and not leq(ess_osc_squared(f, piece), delta * delta):
            raise PreconditionViolated("oscillation", f"oscillation on trimmed block {k} of pi0 exceeds delta={delta}")
    bad = delta_controls(f, p, eps, delta, [pi])
    if bad is not None:
        raise PreconditionViolated("small_set_integrals", f"{bad} exceeds epsilon on some set of measure <= delta")


def theorem_audit(
    f: StepFunction,
    p,
    pi0: Partition,
    pi: Partition,
    omega_f: MeasurableSet,
    eps,
    delta,
) -> AuditReport:
    """Evaluate every step of the estimate for one function and one refinement pi of pi0.

    Raises :class:`PreconditionViolated` naming the failed hypothesis, so the
    audit doubles as a checker for the hypotheses themselves.
    """
    p = as_exponent(p)
    eps = min(as_rational(eps), Fraction(1))
    delta = as_rational(delta)
    check_hypotheses(f, p, pi0, pi, omega_f, eps, delta)

    G = omega_f
    bad_set = G.complement()
    two_p = power(Fraction(2), p)
    four_p = two_p * two_p
    tail = 2 * two_p * eps

    Ef = cond_expect(f, pi)
    normp = f.norm_function(p)
    E_normp = cond_expect(normp, pi)
    ip = lambda S: _scalar_integral(normp, S)  # noqa: E731

    I_pi = (f - Ef).lp_norm_power(p)
    v1 = (f - Ef).norm_function(p).integral(G).components[0] + two_p * (
        ip(bad_set) + _scalar_integral(Ef.norm_function(p), bad_set)
    )

    # per-block sums, one per chain line that needs them
    recentre = mean_gap = split = holder_in = holder_out = larger = dropped = enlarged = Fraction(0)
    pi_f: list[int] = []
    side: list[AuditLine] = []
    for k, K in enumerate(pi.blocks):
        GK = G.intersect(K)
        muG = GK.measure
        if muG == 0:
            continue
        pi_f.append(k)
        BK = K.difference(G)
        muK, muB = K.measure, BK.measure
        m_GK, m_K = f.mean(GK), f.mean(K)
        int_G, int_B = f.integral(GK), f.integral(BK)
        ipG, ipB, ipK = ip(GK), ip(BK), ip(K)

        recentre += _deviation_integral(f, GK, m_GK, p)
        mean_gap += muG * (m_GK - m_K).norm_power(p)
        split += muG * (int_G.scale(1 / muG - 1 / muK) - int_B.scale(1 / muK)).norm_power(p)
        holder_in += (
            power(muB, p) * power(muG, 1 - p) / power(muK, p) * int_G.norm_power(p)
            + muG / power(muK, p) * int_B.norm_power(p)
        )
        if muB > 0:
            holder_out += power(muB, p) / power(muK, p) * ipG + muG * power(muB, p - 1) / power(muK, p) * ipB
            larger += power(muB / muK, p - 1) * (muB / muK) * ipG + power(max(muG, muB), p) / power(muK, p) * ipB
            side.append(_line(f"Holder, trimmed part of block {k}", power(muG, 1 - p) * int_G.norm_power(p), ipG))
            side.append(_line(f"Holder, removed part of block {k}", int_B.norm_power(p), power(muB, p - 1) * ipB))
        dropped += muB / muK * ipG + ipB
        enlarged += muB / muK * ipK + ipB
        osc2 = ess_osc_squared(f, GK)
        side.append(_line(f"mean value bound on block {k} (squared)", mean_value_gap_squared(f, GK), osc2))
        side.append(_line(f"oscillation on block {k} within delta (squared)", osc2, delta * delta))

    osc_term = two_p * G.measure * power(eps, p)
    T = constant_T(f.space.total_mass, p)
    values = [
        I_pi,
        v1,
        two_p * recentre + two_p * mean_gap + tail,
        osc_term + two_p * split + tail,
        osc_term + four_p * holder_in + tail,
        osc_term + four_p * holder_out + tail,
        osc_term + four_p * larger + tail,
        osc_term + four_p * dropped + tail,
        osc_term + four_p * enlarged + tail,
        osc_term + four_p * (_scalar_integral(E_normp, bad_set) + ip(bad_set)) + tail,
        T * eps,
    ]
    lines = [_line(label, a, b) for label, a, b in zip(CHAIN_LABELS, values, values[1:])]
    side.extend([
        _line("small-set integral of norm^p on the removed set", ip(bad_set), eps),
        _line("small-set integral of E(norm^p) on the removed set", _scalar_integral(E_normp, bad_set), eps),
        _line(
            "small-set integral of norm(E f)^p on the removed set",
            _scalar_integral(Ef.norm_function(p), bad_set),
            eps,
        ),
    ])
    return AuditReport(
        lines=lines,
        constant_T=T,
        final_bound_pass=leq(I_pi, T * eps),
        I_pi=I_pi,
        bound=T * eps,
        pi_f=tuple(pi_f),
        side_lines=side,
    )


@dataclass
class FamilyAudit:
    p: Real
    epsilon: Fraction
    delta: Fraction
    witness: FrechetWitness
    partitions: list[Partition]
    reports: list[AuditReport]

    @property
    def all_pass(self) -> bool:
        return all(r.all_pass for r in self.reports)

    @property
    def constant_T(self) -> Real:
        return self.reports[0].constant_T if self.reports else constant_T(self.witness.partition.space.total_mass, self.p)


def family_theorem_audit(
    H: FunctionFamily,
    p,
    eps,
    delta_grid: Sequence,
    chain: Sequence[Partition] = (),
    block_budget: int | None = None,
) -> FamilyAudit:
    """Choose delta, find a Frechet witness at delta, and audit every member on every tested partition.

    The tested partitions are the common refinements of the witness partition
    with each partition of ``chain`` (just the witness partition if the chain
    is empty). delta must also control the conditional expectations over the
    tested partitions, which are only known once the witness is found, so the
    two steps repeat until the tested partitions are all accounted for.
    Raises :class:`NoFeasibleDelta` or :class:`FrechetSearchFailed`.
    """
    p = as_exponent(p)
    eps = min(as_rational(eps), Fraction(1))
    if block_budget is None:
        block_budget = len(H.space)
    controlled = list(chain)
    while True:
        delta = select_delta(H, p, eps, delta_grid, controlled)
        found = frechet_search(H, delta, block_budget)
        if isinstance(found, FrechetFailure):
            raise FrechetSearchFailed(found)
        pi0 = found.partition
        tested: list[Partition] = []
        for pi in chain or [pi0]:
            r = common_refinement(pi0, pi)
            if r not in tested:
                tested.append(r)
        missing = [t for t in tested if t not in controlled]
        if not missing:
            break
        controlled.extend(missing)

    reports = []
    for i, f in enumerate(H):
        for j, pi in enumerate(tested):
            rep = theorem_audit(f, p, pi0, pi, found.omega_f[i], eps, delta)
            rep.member, rep.partition_index = i, j
            reports.append(rep)
    return FamilyAudit(p, eps, delta, found, tested, reports)
