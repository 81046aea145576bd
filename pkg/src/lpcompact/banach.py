"""Normed vector values for the codomain X.

Two concrete families are provided: ``FiniteDimVector`` (R^d with the l1, l2
or l-infinity norm) and ``SparseSeqVector`` (finitely supported sequences in
l1 or l-infinity). Arithmetic is exact on rational components; the Euclidean
norm is exact only when the sum of squares is a perfect rational square, so
comparisons should use :meth:`Vector.norm_power` with an even exponent or
:func:`norm_leq`.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .numeric import Real, as_exponent, as_number, is_integer_exponent, leq, power, root

SUM, EUCLID, MAX = "sum", "euclid", "max"
NORM_KINDS = (SUM, EUCLID, MAX)


class IncompatibleVectors(TypeError):
    """Raised when combining vectors of different types, dimensions or norms."""


class Vector(ABC):
    """Value contract: a vector space over the rationals carrying a norm."""

    norm_kind: str

    @abstractmethod
    def __add__(self, other: Vector) -> Vector: ...

    @abstractmethod
    def __neg__(self) -> Vector: ...

    @abstractmethod
    def scale(self, alpha) -> Vector: ...

    @abstractmethod
    def zero(self) -> Vector: ...

    @abstractmethod
    def is_zero(self) -> bool: ...

    @property
    @abstractmethod
    def value_type(self) -> tuple:
        """Hashable description of the space the vector lives in."""

    @abstractmethod
    def _norm_parts(self) -> tuple: ...

    @abstractmethod
    def render(self) -> str: ...

    def __sub__(self, other: Vector) -> Vector:
        return self + (-other)

    def __mul__(self, alpha) -> Vector:
        return self.scale(alpha)

    __rmul__ = __mul__

    def norm(self) -> Real:
        """The norm itself; exact except for non-square Euclidean cases."""
        if self.norm_kind == EUCLID:
            return root(self.squared_norm, Fraction(2))
        return self._rational_norm

    @cached_property
    def squared_norm(self) -> Real:
        if self.norm_kind == EUCLID:
            return sum((c * c for c in self._norm_parts()), Fraction(0))
        n = self._rational_norm
        return n * n

    @cached_property
    def _rational_norm(self) -> Real:
        parts = [abs(c) for c in self._norm_parts()]
        if self.norm_kind == SUM:
            return sum(parts, Fraction(0))
        return max(parts, default=Fraction(0))

    def norm_power(self, p) -> Real:
        """``norm(v) ** p``; exact for integer p on l1/l-inf, and for even p on l2."""
        p = as_exponent(p)
        if self.norm_kind == EUCLID:
            if is_integer_exponent(p) and int(p) % 2 == 0:
                return power(self.squared_norm, p / 2)
            return power(self.norm(), p)
        return power(self._rational_norm, p)

    def check_compatible(self, other: Vector) -> None:
        if self.value_type != other.value_type:
            raise IncompatibleVectors(f"{self.value_type} vs {other.value_type}")


def norm_power(v: Vector, p) -> Real:
    return v.norm_power(p)


def norm_leq(v: Vector, r: Real) -> bool:
    """``norm(v) <= r`` decided on squares, so exact even for the Euclidean norm."""
    if r < 0:
        return False
    return leq(v.squared_norm, as_number(r) * as_number(r))


def distance(v: Vector, w: Vector) -> Real:
    return (v - w).norm()


@dataclass(frozen=True, eq=False)
class FiniteDimVector(Vector):
    components: tuple
    norm_kind: str = SUM

    def __post_init__(self):
        comps = tuple(as_number(c) for c in self.components)
        if not comps:
            raise ValueError("dimension must be positive")
        if self.norm_kind not in NORM_KINDS:
            raise ValueError(f"unknown norm kind {self.norm_kind!r}")
        object.__setattr__(self, "components", comps)

    @property
    def dim(self) -> int:
        return len(self.components)

    @property
    def value_type(self) -> tuple:
        return ("finite", self.dim, self.norm_kind)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiniteDimVector):
            return NotImplemented
        return self.value_type == other.value_type and self.components == other.components

    def __hash__(self) -> int:
        return hash((self.value_type, self.components))

    def __add__(self, other: Vector) -> FiniteDimVector:
        self.check_compatible(other)
        return FiniteDimVector(tuple(a + b for a, b in zip(self.components, other.components)), self.norm_kind)

    def __neg__(self) -> FiniteDimVector:
        return FiniteDimVector(tuple(-a for a in self.components), self.norm_kind)

    def scale(self, alpha) -> FiniteDimVector:
        alpha = as_number(alpha)
        return FiniteDimVector(tuple(alpha * a for a in self.components), self.norm_kind)

    def zero(self) -> FiniteDimVector:
        return FiniteDimVector((Fraction(0),) * self.dim, self.norm_kind)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.components)

    def _norm_parts(self) -> tuple:
        return self.components

    def render(self) -> str:
        return "(" + ", ".join(str(c) for c in self.components) + ")"

    def __repr__(self) -> str:
        return f"FiniteDimVector({self.render()}, {self.norm_kind})"


def scalar(x) -> FiniteDimVector:
    """A real number as a one-dimensional l1 vector."""
    return FiniteDimVector((x,), SUM)


@dataclass(frozen=True, eq=False)
class SparseSeqVector(Vector):
    """Finitely supported sequence indexed from 1; zero entries are never stored."""

    entries: tuple = ()
    norm_kind: str = SUM

    def __post_init__(self):
        items = self.entries.items() if isinstance(self.entries, dict) else self.entries
        clean: dict[int, Real] = {}
        for idx, val in items:
            idx = int(idx)
            if idx < 1:
                raise ValueError("sequence indices start at 1")
            val = as_number(val)
            if idx in clean:
                raise ValueError(f"duplicate index {idx}")
            if val != 0:
                clean[idx] = val
        if self.norm_kind not in (SUM, MAX):
            raise ValueError("sparse sequences support the 'sum' and 'max' norms")
        object.__setattr__(self, "entries", tuple(sorted(clean.items())))

    @property
    def value_type(self) -> tuple:
        return ("sparse", self.norm_kind)

    def as_dict(self) -> dict[int, Real]:
        return dict(self.entries)

    def __getitem__(self, idx: int) -> Real:
        return self.as_dict().get(idx, Fraction(0))

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseSeqVector):
            return NotImplemented
        return self.norm_kind == other.norm_kind and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.value_type, self.entries))

    def __add__(self, other: Vector) -> SparseSeqVector:
        self.check_compatible(other)
        acc = self.as_dict()
        for i, v in other.entries:
            acc[i] = acc.get(i, 0) + v
        return SparseSeqVector(tuple(acc.items()), self.norm_kind)

    def __neg__(self) -> SparseSeqVector:
        return SparseSeqVector(tuple((i, -v) for i, v in self.entries), self.norm_kind)

    def scale(self, alpha) -> SparseSeqVector:
        alpha = as_number(alpha)
        return SparseSeqVector(tuple((i, alpha * v) for i, v in self.entries), self.norm_kind)

    def zero(self) -> SparseSeqVector:
        return SparseSeqVector((), self.norm_kind)

    def is_zero(self) -> bool:
        return not self.entries

    def _norm_parts(self) -> tuple:
        return tuple(v for _, v in self.entries)

    def render(self) -> str:
        return " ".join(f"{i}:{v}" for i, v in self.entries) or "0"

    def __repr__(self) -> str:
        return f"SparseSeqVector({self.render()}, {self.norm_kind})"


def canonical_basis(n: int, norm_kind: str = SUM) -> SparseSeqVector:
    """e_n: the sequence with a single 1 in position n."""
    if n < 1:
        raise ValueError("basis index must be >= 1")
    return SparseSeqVector(((n, 1),), norm_kind)
