"""
Rank-2 sublattices of K3 Picard lattices attached to hyperelliptic polarizations.

A K3 surface X mapping 2:1 onto a scroll of type F0, F1 or F4 carries a
rank-2 sublattice of Pic(X) containing the hyperelliptic polarization L:

    F0: elliptic pencils (E1, E2),            gram ((0, 2), (2, 0)),   L = E1 + n E2, n >= 1
    F1: elliptic pencil E, nodal curve R,     gram ((0, 2), (2, -2)),  L = R + n E,   n >= 2
    F4: elliptic pencil E, nodal curve R,     gram ((0, 1), (1, -2)),  L = 2R + n E,  n >= 5

Bases are ordered (E, R) for F1 and F4, so E^2 = 0 sits in the top-left
corner. Primitivity is checked inside the rank-2 sublattice; that the
sublattices themselves are primitive in Pic(X) is the standard fact this
module takes as given.
"""
import logging
from enum import Enum
from math import gcd
from typing import Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, computed_field, field_validator

from lib.errors import InvariantViolation, UsageError

logger = logging.getLogger(__name__)


# ============================================================================
# Lattice types
# ============================================================================

class Lattice2(BaseModel):
    """Rank-2 integral lattice given by a symmetric Gram matrix."""
    model_config = ConfigDict(frozen=True)

    gram: Tuple[Tuple[int, int], Tuple[int, int]]
    basis_labels: Tuple[str, str] = ("e1", "e2")

    @field_validator("gram")
    @classmethod
    def _symmetric(cls, gram):
        if gram[0][1] != gram[1][0]:
            raise ValueError(f"Gram matrix {gram} is not symmetric")
        return gram

    @property
    def matrix(self) -> np.ndarray:
        # object dtype keeps Python integers, so nothing can overflow
        return np.array(self.gram, dtype=object)

    @computed_field
    @property
    def determinant(self) -> int:
        (p, q), (r, s) = self.gram
        return p * s - q * r

    @computed_field
    @property
    def is_even(self) -> bool:
        return self.gram[0][0] % 2 == 0 and self.gram[1][1] % 2 == 0


class LatticeVector(BaseModel):
    """Integer coordinates (p, q) in the lattice basis."""
    model_config = ConfigDict(frozen=True)

    p: int
    q: int

    def as_array(self) -> np.ndarray:
        return np.array([self.p, self.q], dtype=object)

    @property
    def is_zero(self) -> bool:
        return self.p == 0 and self.q == 0


class HyperellipticModel(str, Enum):
    F0 = "F0"
    F1 = "F1"
    F4 = "F4"


MODEL_LATTICES = {
    HyperellipticModel.F0: Lattice2(gram=((0, 2), (2, 0)), basis_labels=("E1", "E2")),
    HyperellipticModel.F1: Lattice2(gram=((0, 2), (2, -2)), basis_labels=("E", "R")),
    HyperellipticModel.F4: Lattice2(gram=((0, 1), (1, -2)), basis_labels=("E", "R")),
}

MODEL_THRESHOLDS = {
    HyperellipticModel.F0: 1,
    HyperellipticModel.F1: 2,
    HyperellipticModel.F4: 5,
}


class HyperellipticRecord(BaseModel):
    """The polarization L_n of a hyperelliptic model with its genus and divisibility."""
    model_config = ConfigDict(frozen=True)

    model: HyperellipticModel
    parameter: int = Field(..., description="The n in L_n")
    lattice: Lattice2
    L: LatticeVector
    self_intersection: int
    g: int
    primitive: bool
    divisibility: int
    valid: bool = Field(..., description="All model consistency checks passed")


# ============================================================================
# Arithmetic
# ============================================================================

def inner(lat: Lattice2, v: LatticeVector, w: LatticeVector) -> int:
    """v^T G w."""
    return int(v.as_array() @ lat.matrix @ w.as_array())


def self_int(lat: Lattice2, v: LatticeVector) -> int:
    return inner(lat, v, v)


def divisibility(v: LatticeVector) -> int:
    if v.is_zero:
        raise UsageError("divisibility of the zero vector is undefined")
    return gcd(abs(v.p), abs(v.q))


def is_primitive(v: LatticeVector) -> bool:
    return divisibility(v) == 1


def genus_of(lat: Lattice2, v: LatticeVector) -> int:
    """Genus g of a polarization with L^2 = 2g - 2."""
    s = self_int(lat, v)
    if s % 2 or s < 2:
        raise UsageError(f"L^2 = {s} is not the square of a polarization (need even and >= 2)")
    return s // 2 + 1


def polarization_lattice(g: int) -> Lattice2:
    """Sublattice spanned by L and the elliptic pencil E of the double cover: ((2g-2, 2), (2, 0))."""
    if g < 2:
        raise UsageError(f"genus {g} is too small for a polarization")
    return Lattice2(gram=((2 * g - 2, 2), (2, 0)), basis_labels=("L", "E"))


def polarization_vector(model: HyperellipticModel, n: int) -> LatticeVector:
    if model is HyperellipticModel.F0:
        return LatticeVector(p=1, q=n)
    if model is HyperellipticModel.F1:
        return LatticeVector(p=n, q=1)
    return LatticeVector(p=n, q=2)


def model_parameter_for_genus(model: HyperellipticModel, g: int) -> int:
    """Invert the genus formula: F0 g = 2n + 1, F1 g = 2n, F4 g = 2n - 3."""
    model = HyperellipticModel(model)
    numerator = {HyperellipticModel.F0: g - 1, HyperellipticModel.F1: g, HyperellipticModel.F4: g + 3}[model]
    if numerator % 2:
        raise UsageError(f"no {model.value} polarization has genus {g}")
    n = numerator // 2
    if n < MODEL_THRESHOLDS[model]:
        raise UsageError(f"genus {g} gives n = {n} below the {model.value} range n >= {MODEL_THRESHOLDS[model]}")
    return n


def hyperelliptic_model(model: HyperellipticModel, n: int) -> HyperellipticRecord:
    """Genus, primitivity and divisibility of L_n for the given model."""
    model = HyperellipticModel(model)
    threshold = MODEL_THRESHOLDS[model]
    if n < threshold:
        raise UsageError(f"{model.value} polarizations need n >= {threshold}, got {n}")

    lattice = MODEL_LATTICES[model]
    v = polarization_vector(model, n)
    s = self_int(lattice, v)
    g = genus_of(lattice, v)
    div = divisibility(v)

    checks = [lattice.is_even, model_parameter_for_genus(model, g) == n]
    if model is HyperellipticModel.F4:
        parity = {n % 2 == 0, div == 2, g % 4 == 1}
        if len(parity) != 1:
            logger.error(f"F4 parity mismatch at n={n}: divisibility {div}, g={g}")
            raise InvariantViolation(f"F4 model at n={n}: n even, divisibility 2 and g = 1 mod 4 disagree")
        checks.append(g == 2 * n - 3)
    else:
        checks.append(div == 1)

    return HyperellipticRecord(
        model=model,
        parameter=n,
        lattice=lattice,
        L=v,
        self_intersection=s,
        g=g,
        primitive=div == 1,
        divisibility=div,
        valid=all(checks),
    )


def two_component_condition(g: int) -> bool:
    """g > 9 and g = 1 mod 4."""
    if g < 3:
        raise UsageError(f"genus {g} is below 3")
    return g > 9 and g % 4 == 1
