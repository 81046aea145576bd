"""Run configuration: a strict JSON schema and its translation into library objects."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from .banach import NORM_KINDS, SUM, FiniteDimVector, SparseSeqVector, Vector
from .diagnostics.family import FunctionFamily
from .measure_space import MAX_DYADIC_LEVEL, MeasureSpace, Partition, dyadic_partition, dyadic_space
from .numeric import as_rational
from .rademacher import rademacher_l1_family
from .stepfn import StepFunction

Scalar = Union[int, str, float]


class ConfigError(ValueError):
    """The configuration is malformed or internally inconsistent."""


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


def _rational(x) -> Fraction:
    try:
        return as_rational(x)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {x!r}") from exc


class SpaceSpec(_Strict):
    dyadic_level: Optional[int] = Field(default=None, ge=0, le=MAX_DYADIC_LEVEL)
    weights: Optional[list[Scalar]] = None

    @model_validator(mode="after")
    def _one_of(self):
        if (self.dyadic_level is None) == (self.weights is None):
            raise ValueError("give exactly one of 'dyadic_level' or 'weights'")
        if self.weights is not None:
            if not self.weights:
                raise ValueError("'weights' must be non-empty")
            if any(_rational(w) <= 0 for w in self.weights):
                raise ValueError("atom weights must be positive")
        return self

    def build(self) -> MeasureSpace:
        if self.dyadic_level is not None:
            return dyadic_space(self.dyadic_level)
        return MeasureSpace(tuple(_rational(w) for w in self.weights))


class ValueSpec(_Strict):
    kind: Literal["finite", "sparse"] = "sparse"
    norm: str = SUM
    dim: Optional[int] = Field(default=None, ge=1)

    @model_validator(mode="after")
    def _check(self):
        if self.norm not in NORM_KINDS:
            raise ValueError(f"norm must be one of {NORM_KINDS}")
        if self.kind == "finite" and self.dim is None:
            raise ValueError("finite-dimensional values need 'dim'")
        if self.kind == "sparse" and self.norm == "euclid":
            raise ValueError("sparse sequences support only the 'sum' and 'max' norms")
        return self

    def vector(self, raw) -> Vector:
        if self.kind == "finite":
            comps = raw if isinstance(raw, list) else [raw]
            if len(comps) != self.dim:
                raise ValueError(f"expected {self.dim} components, got {len(comps)}")
            return FiniteDimVector(tuple(_rational(c) for c in comps), self.norm)
        if not isinstance(raw, dict):
            raise ValueError("sparse values are objects mapping index to value")
        return SparseSeqVector(tuple((int(i), _rational(v)) for i, v in raw.items()), self.norm)


class MemberSpec(_Strict):
    blocks: Optional[list[list[int]]] = None
    values: list[Union[Scalar, list[Scalar], dict[str, Scalar]]] = Field(min_length=1)


class FamilySpec(_Strict):
    generator: Optional[Literal["rademacher_l1"]] = None
    N: Optional[int] = Field(default=None, ge=1)
    L: Optional[int] = Field(default=None, ge=0)
    members: Optional[list[MemberSpec]] = None

    @model_validator(mode="after")
    def _check(self):
        if self.generator is not None:
            if self.members is not None:
                raise ValueError("give either a generator or explicit members, not both")
            if self.N is None or self.L is None:
                raise ValueError("the rademacher_l1 generator needs 'N' and 'L'")
            if self.L < self.N:
                raise ValueError(f"resolution L={self.L} must be >= N={self.N}")
        else:
            if self.N is not None or self.L is not None:
                raise ValueError("'N' and 'L' only apply to a generator")
            if not self.members:
                raise ValueError("the family needs at least one member")
        return self


class ChainSpec(_Strict):
    dyadic_levels: Optional[list[int]] = None
    partitions: Optional[list[list[list[int]]]] = None
    append_atoms: bool = False

    @model_validator(mode="after")
    def _check(self):
        if (self.dyadic_levels is None) == (self.partitions is None):
            raise ValueError("give exactly one of 'dyadic_levels' or 'partitions'")
        return self


class ProbeSpec(_Strict):
    level: int = Field(ge=0)
    seed: int = 1729


class OutputSpec(_Strict):
    report: Optional[str] = None


class RunConfig(_Strict):
    space: SpaceSpec
    values: ValueSpec = ValueSpec()
    family: FamilySpec
    p: Scalar = 1
    epsilon: Scalar = "1/4"
    delta_grid: list[Scalar] = Field(default_factory=list)
    M_grid: list[Scalar] = Field(default_factory=lambda: [1, 2, 4])
    chain: Optional[ChainSpec] = None
    probe: Optional[ProbeSpec] = None
    block_budget: Optional[int] = Field(default=None, ge=1)
    output: OutputSpec = OutputSpec()

    @field_validator("delta_grid", "M_grid")
    @classmethod
    def _grid(cls, v):
        vals = [_rational(x) for x in v]
        if any(x <= 0 for x in vals):
            raise ValueError("grid values must be positive")
        if vals != sorted(vals) or len(set(vals)) != len(vals):
            raise ValueError("grid must be strictly increasing")
        return v

    @field_validator("p")
    @classmethod
    def _p(cls, v):
        if _rational(v) < 1:
            raise ValueError("p must be >= 1")
        return v

    @field_validator("epsilon")
    @classmethod
    def _eps(cls, v):
        if _rational(v) <= 0:
            raise ValueError("epsilon must be positive")
        return v

    @model_validator(mode="after")
    def _consistent(self):
        fam = self.family
        if fam.generator == "rademacher_l1":
            if self.space.dyadic_level != fam.L:
                raise ValueError("rademacher_l1 needs space.dyadic_level equal to family.L")
            if self.values.kind != "sparse" or self.values.norm != SUM:
                raise ValueError("rademacher_l1 takes l1 sparse-sequence values")
        n_atoms = 2**self.space.dyadic_level if self.space.dyadic_level is not None else len(self.space.weights)
        for j, m in enumerate(fam.members or []):
            if m.blocks is None:
                if len(m.values) != n_atoms:
                    raise ValueError(f"member {j}: one value per atom required ({n_atoms})")
            elif len(m.blocks) != len(m.values):
                raise ValueError(f"member {j}: one value per block required")
        if self.chain is not None and self.chain.dyadic_levels is not None:
            if self.space.dyadic_level is None:
                raise ValueError("dyadic chains need a dyadic space")
            if any(not 0 <= k <= self.space.dyadic_level for k in self.chain.dyadic_levels):
                raise ValueError("chain levels must lie between 0 and the space's dyadic level")
        if self.probe is not None:
            if self.space.dyadic_level is None:
                raise ValueError("dyadic probes need a dyadic space")
            if self.probe.level > self.space.dyadic_level:
                raise ValueError("probe level exceeds the space's dyadic level")
        return self


@dataclass
class Run:
    """A validated configuration turned into library objects."""

    config: RunConfig
    digest: str
    space: MeasureSpace
    family: FunctionFamily
    chain: list[Partition]
    chain_labels: list[str]
    p: Fraction
    epsilon: Fraction
    delta_grid: list[Fraction]
    M_grid: list[Fraction]


def config_digest(raw: dict) -> str:
    canon = json.dumps(raw, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
    return hashlib.sha256(canon.encode("utf-8")).hexdigest()


def _build_member(space: MeasureSpace, vs: ValueSpec, m: MemberSpec) -> StepFunction:
    vals = [vs.vector(v) for v in m.values]
    if m.blocks is None:
        return StepFunction.from_atom_values(space, vals)
    return StepFunction(Partition.from_blocks(space, m.blocks), tuple(vals))


def build_run(raw: dict) -> Run:
    """Validate ``raw`` against the schema and construct every object; raises ConfigError."""
    try:
        cfg = RunConfig.model_validate(raw)
    except ValidationError as exc:
        raise ConfigError(str(exc)) from exc
    try:
        space = cfg.space.build()
        if cfg.family.generator == "rademacher_l1":
            family = rademacher_l1_family(cfg.family.N, cfg.family.L)
        else:
            family = FunctionFamily(tuple(_build_member(space, cfg.values, m) for m in cfg.family.members))
        chain: list[Partition] = []
        labels: list[str] = []
        if cfg.chain is not None:
            if cfg.chain.dyadic_levels is not None:
                for k in cfg.chain.dyadic_levels:
                    chain.append(dyadic_partition(space, k))
                    labels.append(f"dyadic-{k}")
            else:
                for j, blocks in enumerate(cfg.chain.partitions):
                    chain.append(Partition.from_blocks(space, blocks))
                    labels.append(f"P{j}")
            if cfg.chain.append_atoms:
                chain.append(Partition.atoms(space))
                labels.append("atoms")
    except (ValueError, TypeError, KeyError) as exc:
        raise ConfigError(str(exc)) from exc
    return Run(
        config=cfg,
        digest=config_digest(raw),
        space=space,
        family=family,
        chain=chain,
        chain_labels=labels,
        p=_rational(cfg.p),
        epsilon=_rational(cfg.epsilon),
        delta_grid=[_rational(x) for x in cfg.delta_grid],
        M_grid=[_rational(x) for x in cfg.M_grid],
    )


def load_run(path: str | Path) -> tuple[Run, dict]:
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("config must be a JSON object")
    return build_run(raw), raw
