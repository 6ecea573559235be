"""
Pydantic value types shared by the carpetcalc services.

All models are frozen: instances are immutable, hashable values and can be
passed freely between threads.
"""
from typing import Iterable, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, computed_field, field_validator, model_validator


# ============================================================================
# Bundles on the projective line
# ============================================================================

class SplitBundle(BaseModel):
    """Direct sum of line bundles O(d) on P^1, stored as a sorted multiset of degrees."""
    model_config = ConfigDict(frozen=True)

    degrees: Tuple[int, ...] = Field(default=(), description="Degrees d of the summands O(d), largest first")

    @field_validator("degrees", mode="before")
    @classmethod
    def _canonical_order(cls, value):
        return tuple(sorted((int(d) for d in value), reverse=True))

    @classmethod
    def of(cls, *degrees: int) -> "SplitBundle":
        return cls(degrees=degrees)

    @classmethod
    def from_iterable(cls, degrees: Iterable[int]) -> "SplitBundle":
        return cls(degrees=tuple(degrees))

    @property
    def rank(self) -> int:
        return len(self.degrees)

    @property
    def first_chern(self) -> int:
        return sum(self.degrees)

    @property
    def is_zero(self) -> bool:
        return not self.degrees

    def twist(self, k: int) -> "SplitBundle":
        return SplitBundle(degrees=tuple(d + k for d in self.degrees))

    def dual(self) -> "SplitBundle":
        return SplitBundle(degrees=tuple(-d for d in self.degrees))

    def __add__(self, other: "SplitBundle") -> "SplitBundle":
        return SplitBundle(degrees=self.degrees + other.degrees)

    def __str__(self) -> str:
        if not self.degrees:
            return "0"
        return " + ".join(f"O({d})" for d in self.degrees)


# ============================================================================
# Divisors on Hirzebruch surfaces
# ============================================================================

class HirzebruchDivisor(BaseModel):
    """Divisor class x*C0 + y*f on F_n, where C0^2 = -n, C0.f = 1, f^2 = 0."""
    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=0, description="Negative self-intersection of the minimal section C0")
    x: int = Field(..., description="Coefficient of the minimal section C0")
    y: int = Field(..., description="Coefficient of the fiber f")

    def _same_surface(self, other: "HirzebruchDivisor") -> None:
        if self.n != other.n:
            raise ValueError(f"divisors live on different surfaces: F_{self.n} and F_{other.n}")

    def __add__(self, other: "HirzebruchDivisor") -> "HirzebruchDivisor":
        self._same_surface(other)
        return HirzebruchDivisor(n=self.n, x=self.x + other.x, y=self.y + other.y)

    def __sub__(self, other: "HirzebruchDivisor") -> "HirzebruchDivisor":
        self._same_surface(other)
        return HirzebruchDivisor(n=self.n, x=self.x - other.x, y=self.y - other.y)

    def __neg__(self) -> "HirzebruchDivisor":
        return HirzebruchDivisor(n=self.n, x=-self.x, y=-self.y)

    def __rmul__(self, k: int) -> "HirzebruchDivisor":
        return HirzebruchDivisor(n=self.n, x=k * self.x, y=k * self.y)

    def __str__(self) -> str:
        return f"{self.x}*C0 + {self.y}*f on F_{self.n}"


class CohTriple(BaseModel):
    """Exact cohomology dimensions (h0, h1, h2) of a sheaf on a surface."""
    model_config = ConfigDict(frozen=True)

    h0: int = Field(..., ge=0)
    h1: int = Field(..., ge=0)
    h2: int = Field(..., ge=0)

    @computed_field
    @property
    def chi(self) -> int:
        return self.h0 - self.h1 + self.h2

    def as_tuple(self) -> Tuple[int, int, int]:
        return (self.h0, self.h1, self.h2)

    def reversed(self) -> "CohTriple":
        return CohTriple(h0=self.h2, h1=self.h1, h2=self.h0)


# ============================================================================
# Interval-valued cohomology
# ============================================================================

class Interval(BaseModel):
    """Closed integer interval [lo, hi] of nonnegative integers; hi=None means unbounded."""
    model_config = ConfigDict(frozen=True)

    lo: int = Field(default=0, ge=0)
    hi: Optional[int] = Field(default=None, ge=0)

    @model_validator(mode="after")
    def _ordered(self):
        if self.hi is not None and self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")
        return self

    @classmethod
    def point(cls, value: int) -> "Interval":
        return cls(lo=value, hi=value)

    @classmethod
    def unknown(cls) -> "Interval":
        return cls(lo=0, hi=None)

    @computed_field
    @property
    def exact(self) -> bool:
        return self.hi is not None and self.lo == self.hi

    @property
    def bounded(self) -> bool:
        return self.hi is not None

    @property
    def width(self) -> Optional[int]:
        return None if self.hi is None else self.hi - self.lo

    @property
    def value(self) -> int:
        if not self.exact:
            raise ValueError(f"interval [{self.lo}, {self.hi}] is not exact")
        return self.lo

    def __contains__(self, v: int) -> bool:
        return self.lo <= v and (self.hi is None or v <= self.hi)

    def within(self, other: "Interval") -> bool:
        """True when self is a subset of other."""
        if self.lo < other.lo:
            return False
        if other.hi is None:
            return True
        return self.hi is not None and self.hi <= other.hi

    def __str__(self) -> str:
        if self.exact:
            return str(self.lo)
        return f"[{self.lo}, {'inf' if self.hi is None else self.hi}]"


class CohInfo(BaseModel):
    """Cohomology of a sheaf on a surface, each degree an exact value or an interval."""
    model_config = ConfigDict(frozen=True)

    h0: Interval = Field(default_factory=Interval.unknown)
    h1: Interval = Field(default_factory=Interval.unknown)
    h2: Interval = Field(default_factory=Interval.unknown)
    chi: Optional[int] = Field(default=None, description="Euler characteristic; None while unknown")

    @model_validator(mode="after")
    def _chi_attainable(self):
        # h0 - h1 + h2 ranges over every integer between these ends; None is unbounded
        if self.chi is None:
            return self
        lowest = None if self.h1.hi is None else self.h0.lo - self.h1.hi + self.h2.lo
        highest = None if self.h0.hi is None or self.h2.hi is None else self.h0.hi - self.h1.lo + self.h2.hi
        if (lowest is not None and self.chi < lowest) or (highest is not None and self.chi > highest):
            raise ValueError(
                f"chi = {self.chi} is not attainable as h0 - h1 + h2 with h0={self.h0}, h1={self.h1}, h2={self.h2}"
            )
        return self

    @classmethod
    def unknown(cls) -> "CohInfo":
        return cls()

    @classmethod
    def exactly(cls, h0: int, h1: int, h2: int) -> "CohInfo":
        return cls(h0=Interval.point(h0), h1=Interval.point(h1), h2=Interval.point(h2), chi=h0 - h1 + h2)

    @classmethod
    def from_triple(cls, triple: CohTriple) -> "CohInfo":
        return cls.exactly(triple.h0, triple.h1, triple.h2)

    @property
    def degrees(self) -> Tuple[Interval, Interval, Interval]:
        return (self.h0, self.h1, self.h2)

    @property
    def is_exact(self) -> bool:
        return all(iv.exact for iv in self.degrees)

    def to_triple(self) -> CohTriple:
        if not self.is_exact:
            raise ValueError(f"cohomology is not exact: {self}")
        return CohTriple(h0=self.h0.lo, h1=self.h1.lo, h2=self.h2.lo)

    def contains(self, triple: CohTriple) -> bool:
        return all(v in iv for v, iv in zip(triple.as_tuple(), self.degrees))

    def __str__(self) -> str:
        return f"(h0={self.h0}, h1={self.h1}, h2={self.h2}, chi={self.chi})"


# ============================================================================
# Rational normal scrolls
# ============================================================================

class ScrollSpec(BaseModel):
    """Smooth rational normal scroll S(a, b) in P^N, N = a + b + 1, with a >= b >= 1."""
    model_config = ConfigDict(frozen=True)

    a: int = Field(..., ge=1, description="Larger degree of the splitting O(a) + O(b)")
    b: int = Field(..., ge=1, description="Smaller degree; b >= 1 keeps the scroll smooth")

    @model_validator(mode="after")
    def _ordered(self):
        if self.a < self.b:
            raise ValueError(f"scroll S({self.a},{self.b}) requires a >= b")
        return self

    @computed_field
    @property
    def n(self) -> int:
        return self.a - self.b

    @computed_field
    @property
    def N(self) -> int:
        return self.a + self.b + 1

    @computed_field
    @property
    def degree(self) -> int:
        return self.a + self.b

    @computed_field
    @property
    def g(self) -> int:
        # S(a,b) spans P^(a+b+1); the carpet on it is a numerical K3 of genus g = N.
        return self.a + self.b + 1

    def __str__(self) -> str:
        return f"S({self.a},{self.b})"
