"""
The join threefold of two rational normal curves and its resolution.

Sigma in P^g is the join of two disjoint rational normal curves of degrees
n0 and n'. It is the image of Gamma = P(O(n0, 0) + O(0, n')) over the quadric
P^1 x P^1 under |O(1)|. Writing alpha and beta for the pullbacks of the two
rulings and H for O_P(E)(1), the Chow ring of Gamma is

    Q[alpha, beta, H] / (alpha^2, beta^2, H^2 - n0 alpha H - n' beta H + n0 n' alpha beta)

since c1(E) = n0 alpha + n' beta and c2(E) = n0 n' alpha beta. Every class is
kept in the normal form spanned by alpha^i beta^j H^k with i, j, k in {0, 1},
and integrate() reads off the coefficient of alpha beta H.

Fano tests use the three torus-invariant curves kappa1, kappa2 and the fiber
f of Gamma -> P^1 x P^1; Gamma is toric, so they span its cone of curves.

The printed computation this module checks names the rulings A, B and the
curves C1, C2 the other way round from the restricted-bundle computation
here: A is beta, B is alpha, C1 is kappa2 and C2 is kappa1. One line of the
argument still carries an editorial "check!", and its displayed sum
n'A + n0B - 2H + E1 - E2 is not zero under either labeling; the combination
that does vanish is K + 2A + 2B + E1 + E2.
"""
import logging
from collections import defaultdict
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, computed_field, field_serializer

from lib.errors import InvariantViolation, UsageError
from models.schemas import ScrollSpec

logger = logging.getLogger(__name__)

Monomial = Tuple[int, int, int]
Scalar = Union[int, Fraction]

MONOMIALS: Tuple[Monomial, ...] = (
    (0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 0, 1), (0, 1, 1), (1, 1, 0), (1, 1, 1),
)
MONOMIAL_NAMES: Dict[Monomial, str] = {
    (0, 0, 0): "1",
    (1, 0, 0): "alpha",
    (0, 1, 0): "beta",
    (0, 0, 1): "H",
    (1, 0, 1): "alpha*H",
    (0, 1, 1): "beta*H",
    (1, 1, 0): "alpha*beta",
    (1, 1, 1): "alpha*beta*H",
}
TOP: Monomial = (1, 1, 1)
DIMENSION = 3


# ============================================================================
# Parameters
# ============================================================================

class JoinParams(BaseModel):
    """Degrees of the two rational normal curves whose join is Sigma."""
    model_config = ConfigDict(frozen=True)

    n0: int = Field(..., ge=1, description="Degree of the curve C0")
    nprime: int = Field(..., ge=1, description="Degree of the curve C'")

    @classmethod
    def from_scroll(cls, spec: ScrollSpec) -> "JoinParams":
        """Join of the minimal section (degree b) and a disjoint section (degree a) of S(a, b)."""
        return cls(n0=spec.b, nprime=spec.a)

    @computed_field
    @property
    def span(self) -> int:
        """Sigma spans P^(n0 + n' + 1)."""
        return self.n0 + self.nprime + 1

    def __str__(self) -> str:
        return f"join({self.n0},{self.nprime})"


# ============================================================================
# Chow ring of Gamma
# ============================================================================

def _reduce(params: JoinParams, i: int, j: int, k: int) -> Dict[Monomial, Fraction]:
    """Normal form of alpha^i beta^j H^k."""
    if i > 1 or j > 1:
        return {}
    if k <= 1:
        return {(i, j, k): Fraction(1)}
    n0, n1 = params.n0, params.nprime
    out: Dict[Monomial, Fraction] = defaultdict(Fraction)
    # H^2 = n0 alpha H + n' beta H - n0 n' alpha beta
    for (di, dj, dk), c in (((1, 0, 1), n0), ((0, 1, 1), n1), ((1, 1, 0), -n0 * n1)):
        for mono, v in _reduce(params, i + di, j + dj, k - 2 + dk).items():
            out[mono] += c * v
    return out


class ChowClass(BaseModel):
    """Element of A*(Gamma) with rational coefficients, in normal form."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    params: JoinParams
    terms: Tuple[Tuple[Monomial, Fraction], ...] = ()

    @classmethod
    def from_dict(cls, params: JoinParams, coeffs: Dict[Monomial, Scalar]) -> "ChowClass":
        terms = tuple((m, Fraction(coeffs[m])) for m in MONOMIALS if coeffs.get(m, 0) != 0)
        return cls(params=params, terms=terms)

    @field_serializer("terms")
    def _serialize_terms(self, terms):
        return {MONOMIAL_NAMES[m]: str(c) for m, c in terms}

    @property
    def coeffs(self) -> Dict[Monomial, Fraction]:
        return dict(self.terms)

    def coefficient(self, mono: Monomial) -> Fraction:
        return self.coeffs.get(mono, Fraction(0))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def codimensions(self) -> Tuple[int, ...]:
        return tuple(sorted({sum(m) for m, _ in self.terms}))

    def graded(self, codim: int) -> Tuple[Fraction, ...]:
        """Coordinates of the codim-graded piece, in MONOMIALS order."""
        return tuple(self.coefficient(m) for m in MONOMIALS if sum(m) == codim)

    def _check_ring(self, other: "ChowClass") -> None:
        if self.params != other.params:
            raise UsageError(f"classes live on different threefolds: {self.params} and {other.params}")

    def __add__(self, other: "ChowClass") -> "ChowClass":
        self._check_ring(other)
        out = self.coeffs
        for m, c in other.terms:
            out[m] = out.get(m, Fraction(0)) + c
        return ChowClass.from_dict(self.params, out)

    def __neg__(self) -> "ChowClass":
        return ChowClass.from_dict(self.params, {m: -c for m, c in self.terms})

    def __sub__(self, other: "ChowClass") -> "ChowClass":
        return self + (-other)

    def __mul__(self, other: Union["ChowClass", Scalar]) -> "ChowClass":
        if not isinstance(other, ChowClass):
            return ChowClass.from_dict(self.params, {m: Fraction(other) * c for m, c in self.terms})
        return multiply(self, other)

    def __rmul__(self, k: Scalar) -> "ChowClass":
        return self * k

    def as_dict(self) -> Dict[str, str]:
        return {MONOMIAL_NAMES[m]: str(c) for m, c in self.terms}

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*{MONOMIAL_NAMES[m]}" for m, c in self.terms)


def multiply(u: ChowClass, v: ChowClass) -> ChowClass:
    u._check_ring(v)
    out: Dict[Monomial, Fraction] = defaultdict(Fraction)
    for (m1, c1) in u.terms:
        for (m2, c2) in v.terms:
            if sum(m1) + sum(m2) > DIMENSION:
                raise UsageError(f"product of codimension {sum(m1) + sum(m2)} exceeds dim Gamma = {DIMENSION}")
            i, j, k = (a + b for a, b in zip(m1, m2))
            for mono, c in _reduce(u.params, i, j, k).items():
                out[mono] += c1 * c2 * c
    return ChowClass.from_dict(u.params, out)


def integrate(w: ChowClass) -> Fraction:
    """Degree of the codimension-3 part."""
    return w.coefficient(TOP)


def generators(params: JoinParams) -> Tuple[ChowClass, ChowClass, ChowClass]:
    """(alpha, beta, H)."""
    return tuple(ChowClass.from_dict(params, {m: 1}) for m in ((1, 0, 0), (0, 1, 0), (0, 0, 1)))


def zero(params: JoinParams) -> ChowClass:
    return ChowClass(params=params)


# ============================================================================
# Distinguished classes
# ============================================================================

def canonical_gamma(params: JoinParams) -> ChowClass:
    """K = -2H + (n0 - 2) alpha + (n' - 2) beta."""
    alpha, beta, H = generators(params)
    return -2 * H + (params.n0 - 2) * alpha + (params.nprime - 2) * beta


def section_divisors(params: JoinParams) -> Tuple[ChowClass, ChowClass]:
    """E1 = H - n' beta and E2 = H - n0 alpha, the surfaces over the two curves."""
    alpha, beta, H = generators(params)
    return H - params.nprime * beta, H - params.n0 * alpha


def contracted_curves(params: JoinParams) -> Tuple[ChowClass, ChowClass, ChowClass]:
    """(kappa1, kappa2, f); kappa1 and kappa2 have H-degree 0."""
    alpha, beta, H = generators(params)
    f = alpha * beta
    return H * alpha - params.nprime * f, H * beta - params.n0 * f, f


def scroll_class(params: JoinParams) -> ChowClass:
    alpha, beta, _ = generators(params)
    return alpha + beta


def carpet_class(params: JoinParams) -> ChowClass:
    return 2 * scroll_class(params)


def degree_sigma(params: JoinParams) -> int:
    _, _, H = generators(params)
    degree = integrate(H * H * H)
    if degree != params.n0 * params.nprime:
        raise InvariantViolation(f"H^3 = {degree} on {params}, expected {params.n0 * params.nprime}")
    return int(degree)


def sigma_pullback_canonical(params: JoinParams) -> ChowClass:
    """pi^* K_Sigma = K + ((n' - 2)/n') E1 + ((n0 - 2)/n0) E2."""
    e1, e2 = section_divisors(params)
    return (
        canonical_gamma(params)
        + Fraction(params.nprime - 2, params.nprime) * e1
        + Fraction(params.n0 - 2, params.n0) * e2
    )


def verify_anticanonical_carpet(params: JoinParams) -> bool:
    """K + 2 alpha + 2 beta + E1 + E2 is the zero class."""
    e1, e2 = section_divisors(params)
    total = canonical_gamma(params) + carpet_class(params) + e1 + e2
    if not total.is_zero:
        logger.error(f"pi^*(K_Sigma + carpet) on {params} is {total}")
    return total.is_zero


# ============================================================================
# Fano verdicts
# ============================================================================

class FanoReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    anticanonical_on_kappa1: int
    anticanonical_on_kappa2: int
    anticanonical_on_fiber: int
    anticanonical_cube: int
    gamma_fano: bool
    gamma_weak_fano: bool
    sigma_fano: bool
    sigma_anticanonical_multiple: str = Field(..., description="lambda with pi^*(-K_Sigma) = lambda H, as a fraction")


def anticanonical_multiple(params: JoinParams) -> Fraction:
    """The lambda with pi^*(-K_Sigma) = lambda H; it is 2/n0 + 2/n'."""
    _, _, H = generators(params)
    pulled = -sigma_pullback_canonical(params)
    lam = pulled.coefficient((0, 0, 1))
    if not (pulled - lam * H).is_zero:
        raise InvariantViolation(f"pi^*(-K_Sigma) on {params} is not a multiple of H: {pulled}")
    if lam != Fraction(2, params.n0) + Fraction(2, params.nprime):
        logger.error(f"lambda on {params} is {lam}")
        raise InvariantViolation(f"pi^*(-K_Sigma) = {lam} H on {params}, expected 2/n0 + 2/n'")
    return lam


def fano_report(params: JoinParams) -> FanoReport:
    anti = -canonical_gamma(params)
    kappa1, kappa2, f = contracted_curves(params)
    pairings = [int(integrate(anti * c)) for c in (kappa1, kappa2, f)]
    cube = int(integrate(anti * anti * anti))
    lam = anticanonical_multiple(params)
    return FanoReport(
        anticanonical_on_kappa1=pairings[0],
        anticanonical_on_kappa2=pairings[1],
        anticanonical_on_fiber=pairings[2],
        anticanonical_cube=cube,
        gamma_fano=all(p > 0 for p in pairings),
        gamma_weak_fano=all(p >= 0 for p in pairings) and cube > 0,
        sigma_fano=lam > 0,
        sigma_anticanonical_multiple=str(lam),
    )


# ============================================================================
# Further bookkeeping
# ============================================================================

class JoinExtras(BaseModel):
    model_config = ConfigDict(frozen=True)

    scroll_degree: int = Field(..., description="H^2 . (alpha + beta)")
    carpet_degree: int
    sections_meet: bool = Field(..., description="False when E1 . E2 is the zero class")
    e1_cube: int
    e2_cube: int
    quintic_degeneration: Optional[Dict[str, int]] = Field(
        default=None, description="Sigma plus three hyperplanes, for the quadric cone in P^4"
    )


def quintic_degeneration(params: JoinParams) -> Dict[str, int]:
    """In P^4 the 2-secant quintic degenerates to the quadric cone plus three hyperplanes."""
    if params.n0 + params.nprime != 3:
        raise UsageError(f"{params} does not span P^4")
    sigma = degree_sigma(params)
    return {"sigma_degree": sigma, "hyperplanes": 3, "total_degree": sigma + 3}


def join_extras(params: JoinParams) -> JoinExtras:
    _, _, H = generators(params)
    e1, e2 = section_divisors(params)
    return JoinExtras(
        scroll_degree=int(integrate(H * H * scroll_class(params))),
        carpet_degree=int(integrate(H * H * carpet_class(params))),
        sections_meet=not (e1 * e2).is_zero,
        e1_cube=int(integrate(e1 * e1 * e1)),
        e2_cube=int(integrate(e2 * e2 * e2)),
        quintic_degeneration=quintic_degeneration(params) if params.n0 + params.nprime == 3 else None,
    )


# ============================================================================
# Checking the printed intersection tables
# ============================================================================

DOCUMENTED_DISCREPANCIES = frozenset({"K_Sigma + carpet", "Gamma Fano"})

Labeling = Dict[str, ChowClass]
Claim = Tuple[str, str, Callable[[Labeling], Tuple[object, object]]]


class ClaimCheck(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    claim: str
    direct: bool
    relabeled: bool
    status: str = Field(..., description="direct, relabeled or discrepancy")
    documented: bool = Field(default=False, description="A known discrepancy in the printed argument")


class MatrixCheckReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    checks: List[ClaimCheck]

    @computed_field
    @property
    def undocumented(self) -> List[str]:
        return [c.name for c in self.checks if c.status == "discrepancy" and not c.documented]

    @computed_field
    @property
    def passed(self) -> bool:
        return not self.undocumented


def labelings(params: JoinParams) -> Tuple[Labeling, Labeling]:
    """(direct, relabeled) assignments of A, B, C1, C2, f to ring classes."""
    alpha, beta, H = generators(params)
    kappa1, kappa2, f = contracted_curves(params)
    direct = {"H": H, "A": alpha, "B": beta, "C1": kappa1, "C2": kappa2, "f": f}
    relabeled = {"H": H, "A": beta, "B": alpha, "C1": kappa2, "C2": kappa1, "f": f}
    return direct, relabeled


def _claims(params: JoinParams) -> List[Claim]:
    n0, n1 = params.n0, params.nprime
    e1, e2 = section_divisors(params)
    K = canonical_gamma(params)
    claims: List[Claim] = [
        ("H.H", "n'C1 + n0C2 + n0n'f", lambda L: (L["H"] * L["H"], n1 * L["C1"] + n0 * L["C2"] + n0 * n1 * L["f"])),
        ("H.A", "C1 + n0f", lambda L: (L["H"] * L["A"], L["C1"] + n0 * L["f"])),
        ("H.B", "C2 + n'f", lambda L: (L["H"] * L["B"], L["C2"] + n1 * L["f"])),
        ("A.A", "0", lambda L: (L["A"] * L["A"], zero(params))),
        ("A.B", "f", lambda L: (L["A"] * L["B"], L["f"])),
        ("B.B", "0", lambda L: (L["B"] * L["B"], zero(params))),
    ]
    pairing = {"H": (0, 0, 1), "A": (0, 1, 0), "B": (1, 0, 0)}
    for d, row in pairing.items():
        for c, expected in zip(("C1", "C2", "f"), row):
            claims.append((
                f"{d}.{c}", str(expected),
                lambda L, d=d, c=c, expected=expected: (integrate(L[d] * L[c]), expected),
            ))
    claims += [
        ("K_Gamma", "(n'-2)A + (n0-2)B - 2H", lambda L: (K, (n1 - 2) * L["A"] + (n0 - 2) * L["B"] - 2 * L["H"])),
        ("E1", "H - n'A", lambda L: (e1, L["H"] - n1 * L["A"])),
        ("E2", "H - n0B", lambda L: (e2, L["H"] - n0 * L["B"])),
        ("E1.C1", "0", lambda L: (integrate(e1 * L["C1"]), 0)),
        ("E1.C2", "-n'", lambda L: (integrate(e1 * L["C2"]), -n1)),
        ("E1.f", "1", lambda L: (integrate(e1 * L["f"]), 1)),
        ("E2.C1", "-n0", lambda L: (integrate(e2 * L["C1"]), -n0)),
        ("E2.C2", "0", lambda L: (integrate(e2 * L["C2"]), 0)),
        ("E2.f", "1", lambda L: (integrate(e2 * L["f"]), 1)),
        (
            "K_Sigma + carpet", "n'A + n0B - 2H + E1 - E2 = 0",
            lambda L: (n1 * L["A"] + n0 * L["B"] - 2 * L["H"] + e1 - e2, zero(params)),
        ),
    ]
    return claims


def _fano_claim(params: JoinParams) -> ClaimCheck:
    """Gamma is Fano when n0, n' <= 2; otherwise -K is negative on C1 or C2."""
    report = fano_report(params)
    if params.n0 <= 2 and params.nprime <= 2:
        claim, holds = "Gamma is Fano", report.gamma_fano
    else:
        claim = "-K is negative on C1 or C2"
        holds = report.anticanonical_on_kappa1 < 0 or report.anticanonical_on_kappa2 < 0
    return ClaimCheck(
        name="Gamma Fano",
        claim=claim,
        direct=holds,
        relabeled=holds,
        status="direct" if holds else "discrepancy",
        documented=not holds,
    )


def printed_table_check(params: JoinParams) -> MatrixCheckReport:
    """Compare each printed product and pairing with the ring, under both labelings."""
    direct, relabeled = labelings(params)
    checks: List[ClaimCheck] = []
    for name, text, evaluate in _claims(params):
        ok_direct = _equal(*evaluate(direct))
        ok_relabeled = _equal(*evaluate(relabeled))
        status = "direct" if ok_direct else "relabeled" if ok_relabeled else "discrepancy"
        checks.append(ClaimCheck(
            name=name,
            claim=text,
            direct=ok_direct,
            relabeled=ok_relabeled,
            status=status,
            documented=status == "discrepancy" and name in DOCUMENTED_DISCREPANCIES,
        ))
    checks.append(_fano_claim(params))

    report = MatrixCheckReport(checks=checks)
    if report.undocumented:
        logger.error(f"undocumented discrepancies on {params}: {report.undocumented}")
    return report


def _equal(lhs, rhs) -> bool:
    if isinstance(lhs, ChowClass):
        return (lhs - rhs).is_zero
    return Fraction(lhs) == Fraction(rhs)
