from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..banach import Vector
from ..measure_space import MeasurableSet, check_same_space
from ..numeric import Real, as_rational
from .covering import CoveringResult, covering_number, diameter
from .family import FunctionFamily


@dataclass(frozen=True)
class SetProbe:
    """The integrals of every member over one set E."""

    set: MeasurableSet
    integrals: tuple[Vector, ...]
    norms: tuple[Real, ...]
    covering: CoveringResult
    diameter: Real


def integral_tightness_probe(H: FunctionFamily, sets: Sequence[MeasurableSet], epsilon) -> list[SetProbe]:
    """For each E, the point set {integral of f over E : f in H}, its covering at epsilon and its diameter."""
    eps = as_rational(epsilon)
    out = []
    for E in sets:
        check_same_space(H.space, E.space)
        pts = tuple(f.integral(E) for f in H)
        out.append(SetProbe(E, pts, tuple(v.norm() for v in pts), covering_number(pts, eps), diameter(pts)))
    return out
