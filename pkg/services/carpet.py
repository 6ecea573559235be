"""
K3 carpets on rational normal scrolls and the smoothness of their Hilbert points.

A K3 carpet S~ on S = S(a, b) is the double structure with ideal sheaf
I_S/I_S~ = omega_S. Writing N_S for N_{S/P^g}, N~ for N_{S~/P^g} and
M = Hom_S(I_S~/I_S^2, O_S), the tangent space to the Hilbert scheme at S~ is
H^0(N~), computed from the sequences

    0 -> omega^*        -> N_S             -> M          -> 0
    0 -> O_S            -> N_S (x) omega   -> M (x) omega -> 0
    0 -> M              -> N~|_S           -> omega^-2   -> 0
    0 -> M (x) omega    -> N~|_S (x) omega -> omega^*    -> 0
    0 -> N~|_S (x) omega -> N~             -> N~|_S      -> 0

each of which is one les_calculus problem. The last one leaves the rank of
H^0(N~|_S) -> H^1(N~|_S (x) omega) open, so for a - b >= 4 the report
carries h^1(N~) as an interval.
"""
import logging
from enum import Enum
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, computed_field

from lib.errors import InvariantViolation
from models.schemas import CohInfo, HirzebruchDivisor, Interval, ScrollSpec, SplitBundle
from services import hirzebruch, p1_bundles, picard_lattice, scroll
from services.les_calculus import SesProblem, require_exact, solve
from services.picard_lattice import HyperellipticModel, HyperellipticRecord

logger = logging.getLogger(__name__)


# ============================================================================
# Records
# ============================================================================

class CarpetSpec(BaseModel):
    """The K3 carpet on a scroll S(a, b) in P^g."""
    model_config = ConfigDict(frozen=True)

    scroll: ScrollSpec

    @computed_field
    @property
    def g(self) -> int:
        return self.scroll.g

    @computed_field
    @property
    def ambient(self) -> int:
        return self.scroll.g

    @computed_field
    @property
    def degree(self) -> int:
        return 2 * self.scroll.degree

    def __str__(self) -> str:
        return f"carpet on {self.scroll}"


class CarpetInvariants(BaseModel):
    model_config = ConfigDict(frozen=True)

    g: int
    ambient: int
    degree: int
    chi_O: int = Field(..., description="chi(O_S~) from 0 -> omega_S -> O_S~ -> O_S -> 0")
    h1_O: int
    omega_trivial: bool = True
    two_scroll_union_degree: int = Field(..., description="Degree of two scrolls glued along an anticanonical curve")
    degenerates_to: Optional[ScrollSpec] = Field(
        default=None, description="The less balanced scroll S(a+1, b-1) of the same genus, if any"
    )


class RibbonInvariants(BaseModel):
    """Numerics of a hyperplane section of the carpet, a canonical ribbon on a rational normal curve."""
    model_config = ConfigDict(frozen=True)

    support_degree: int
    support_ambient: int
    ribbon_degree: int
    arithmetic_genus: int
    conormal_degree: int = Field(..., description="deg omega_S restricted to the support curve")


class ChainStep(BaseModel):
    model_config = ConfigDict(frozen=True)

    label: str
    sheaf: str
    cohomology: CohInfo


class SmoothnessReport(BaseModel):
    """Hilbert-scheme tangent space data at the carpet."""
    model_config = ConfigDict(frozen=True)

    chi_normal: int
    h0: Interval
    h1: Interval
    h2: int = 0
    smooth_point: bool
    expected_dim: int = Field(..., description="dim PGL(g+1) + 19")
    h1_omega_dual: int
    h1_omega_minus2: int
    sequence_chain: List[ChainStep] = Field(default_factory=list)


class Component(str, Enum):
    PRIME = "PrimeComponent"
    SECOND = "SecondComponent"


class ComponentVerdict(BaseModel):
    model_config = ConfigDict(frozen=True)

    component: Component
    lattice: Optional[HyperellipticRecord] = Field(
        default=None, description="Hyperelliptic K3 model whose degeneration gives the carpet"
    )
    picard_rank_1: bool = False
    hyperplane_divisible_by_two: bool = False


# ============================================================================
# Basic invariants
# ============================================================================

def _coh(d: HirzebruchDivisor) -> CohInfo:
    return CohInfo.from_triple(hirzebruch.cohomology(d))


def degenerates_to(spec: ScrollSpec) -> Optional[ScrollSpec]:
    if spec.b < 2:
        return None
    return ScrollSpec(a=spec.a + 1, b=spec.b - 1)


def invariants(spec: ScrollSpec) -> CarpetInvariants:
    carpet = CarpetSpec(scroll=spec)
    problem = SesProblem(
        left=_coh(scroll.omega_class(spec)),
        right=_coh(HirzebruchDivisor(n=spec.n, x=0, y=0)),
        label=f"structure sequence of the {carpet}",
    )
    structure = require_exact(solve(problem).middle, f"O of the {carpet}")
    if structure.chi != 2 or structure.h1.value != 0:
        raise InvariantViolation(f"{carpet} has chi(O)={structure.chi}, h1(O)={structure.h1}")
    if carpet.degree != 2 * carpet.g - 2:
        raise InvariantViolation(f"{carpet} has degree {carpet.degree}, expected {2 * carpet.g - 2}")

    return CarpetInvariants(
        g=carpet.g,
        ambient=carpet.ambient,
        degree=carpet.degree,
        chi_O=structure.chi,
        h1_O=structure.h1.value,
        two_scroll_union_degree=2 * spec.degree,
        degenerates_to=degenerates_to(spec),
    )


def hyperplane_section_invariants(spec: ScrollSpec) -> RibbonInvariants:
    """
    A hyperplane section D is a ribbon on the rational normal curve C = S . H
    with conormal bundle omega_S|_C, so chi(O_D) = chi(omega_S|_C) + chi(O_C).
    """
    H = scroll.hyperplane(spec)
    support_degree = hirzebruch.intersect(H, H)
    conormal_degree = hirzebruch.intersect(scroll.omega_class(spec), H)
    chi = (conormal_degree + 1) + 1
    genus = 1 - chi
    if genus != spec.g:
        raise InvariantViolation(f"hyperplane section of the carpet on {spec} has genus {genus}, expected {spec.g}")
    return RibbonInvariants(
        support_degree=support_degree,
        support_ambient=spec.g - 1,
        ribbon_degree=2 * support_degree,
        arithmetic_genus=genus,
        conormal_degree=conormal_degree,
    )


def carpet_count(spec: ScrollSpec) -> int:
    """Carpets on S up to scalar: h^0(N_S (x) omega), which is 1."""
    count = scroll.normal_twist_canonical_cohomology(spec).cohomology.h0
    if count != 1:
        raise InvariantViolation(f"{spec} carries {count} independent carpet sections, expected 1")
    return count


# ============================================================================
# The two obstruction groups
# ============================================================================

def h1_omega_dual(spec: ScrollSpec) -> int:
    """h^1(omega^*), from the split O(n+2) + O(2) + O(2-n) and from O(2 C0 + (n+2) f)."""
    n = spec.n
    split = p1_bundles.h1(SplitBundle.of(n + 2, 2, 2 - n))
    direct = hirzebruch.cohomology(-scroll.omega_class(spec)).h1
    closed = max(0, n - 3)
    if not split == direct == closed:
        logger.error(f"h1(omega^*) on {spec}: split {split}, pushforward {direct}, closed form {closed}")
        raise InvariantViolation(f"h1(omega^*) on {spec} is not consistent")
    return direct


def h1_omega_minus2(spec: ScrollSpec) -> int:
    """h^1(omega^-2), from the split of O(4 + i(b-a)), i = -2..2, and from O(4 C0 + (2n+4) f)."""
    n = spec.n
    split = p1_bundles.h1(SplitBundle.from_iterable(4 + i * (spec.b - spec.a) for i in range(-2, 3)))
    direct = hirzebruch.cohomology(-2 * scroll.omega_class(spec)).h1
    closed = max(0, 2 * n - 5) + max(0, n - 5)
    if not split == direct == closed:
        logger.error(f"h1(omega^-2) on {spec}: split {split}, pushforward {direct}, closed form {closed}")
        raise InvariantViolation(f"h1(omega^-2) on {spec} is not consistent")
    return direct


# ============================================================================
# Smoothness of the Hilbert point
# ============================================================================

def _step(problem: SesProblem, slot: str, sheaf: str, chain: List[ChainStep]) -> CohInfo:
    info = solve(problem).slot(slot)
    chain.append(ChainStep(label=problem.label, sheaf=sheaf, cohomology=info))
    return info


def smoothness(spec: ScrollSpec) -> SmoothnessReport:
    g = spec.g
    omega = scroll.omega_class(spec)
    omega_dual = _coh(-omega)
    omega_minus2 = _coh(-2 * omega)
    structure = _coh(HirzebruchDivisor(n=spec.n, x=0, y=0))
    normal = CohInfo.from_triple(scroll.normal_bundle_cohomology(spec))
    normal_twisted = CohInfo.from_triple(scroll.normal_twist_canonical_cohomology(spec).cohomology)

    chain: List[ChainStep] = []
    hom = _step(
        SesProblem(left=omega_dual, middle=normal, label="0 -> omega^* -> N_S -> M -> 0"),
        "right", "M", chain,
    )
    hom_twisted = _step(
        SesProblem(left=structure, middle=normal_twisted, label="0 -> O_S -> N_S (x) omega -> M (x) omega -> 0"),
        "right", "M (x) omega", chain,
    )
    restricted = _step(
        SesProblem(left=hom, right=omega_minus2, label="0 -> M -> N~|_S -> omega^-2 -> 0"),
        "middle", "N~|_S", chain,
    )
    restricted_twisted = _step(
        SesProblem(left=hom_twisted, right=omega_dual, label="0 -> M (x) omega -> N~|_S (x) omega -> omega^* -> 0"),
        "middle", "N~|_S (x) omega", chain,
    )
    for step in chain:
        require_exact(step.cohomology, f"{step.sheaf} on {spec}")
    carpet_normal = _step(
        SesProblem(left=restricted_twisted, right=restricted, label="0 -> N~|_S (x) omega -> N~ -> N~|_S -> 0"),
        "middle", "N~", chain,
    )

    dual_h1 = h1_omega_dual(spec)
    minus2_h1 = h1_omega_minus2(spec)
    chi_normal = normal.chi + hirzebruch.riemann_roch_chi(-2 * omega)
    expected_dim = (g + 1) ** 2 + 18

    if carpet_normal.chi != chi_normal or chi_normal != expected_dim:
        logger.error(f"chi(N~) on {spec}: solver {carpet_normal.chi}, identity {chi_normal}, expected {expected_dim}")
        raise InvariantViolation(f"chi of the carpet normal bundle on {spec} is inconsistent")
    if carpet_normal.h1 != Interval(lo=minus2_h1, hi=minus2_h1 + dual_h1):
        raise InvariantViolation(f"h1(N~) on {spec} is {carpet_normal.h1}, expected [{minus2_h1}, {minus2_h1 + dual_h1}]")
    if carpet_normal.h2 != Interval.point(0):
        raise InvariantViolation(f"h2(N~) on {spec} is {carpet_normal.h2}, expected 0")

    smooth = carpet_normal.h1 == Interval.point(0)
    if smooth != (spec.n <= 2):
        raise InvariantViolation(f"smoothness of the carpet on {spec} disagrees with a - b <= 2")

    logger.debug(f"carpet on {spec}: chi={chi_normal}, h1={carpet_normal.h1}, smooth={smooth}")
    return SmoothnessReport(
        chi_normal=chi_normal,
        h0=carpet_normal.h0,
        h1=carpet_normal.h1,
        smooth_point=smooth,
        expected_dim=expected_dim,
        h1_omega_dual=dual_h1,
        h1_omega_minus2=minus2_h1,
        sequence_chain=chain,
    )


# ============================================================================
# Components of the Hilbert scheme
# ============================================================================

def _model_for(spec: ScrollSpec) -> Optional[HyperellipticModel]:
    return {0: HyperellipticModel.F0, 1: HyperellipticModel.F1, 4: HyperellipticModel.F4}.get(spec.n)


def component_membership(spec: ScrollSpec) -> List[ComponentVerdict]:
    """
    Every carpet lies on the component of smooth K3 surfaces with Picard
    group generated by the hyperplane class. For S of type F_4 with g > 9 and
    g = 1 mod 4 it also lies on the component of K3 surfaces whose hyperplane
    class is divisible by two.
    """
    model = _model_for(spec)
    record = None
    if model is not None:
        record = picard_lattice.hyperelliptic_model(model, picard_lattice.model_parameter_for_genus(model, spec.g))
        if record.g != spec.g or not record.valid:
            raise InvariantViolation(f"{model.value} lattice for {spec} does not reproduce g={spec.g}")

    verdicts = [ComponentVerdict(component=Component.PRIME, lattice=record, picard_rank_1=True)]

    second = picard_lattice.two_component_condition(spec.g) and spec.n == 4
    if model is HyperellipticModel.F4 and (record.divisibility == 2 and spec.g > 9) != second:
        raise InvariantViolation(f"divisibility of L on {spec} disagrees with g = 1 mod 4")
    if second:
        verdicts.append(ComponentVerdict(
            component=Component.SECOND,
            lattice=record,
            picard_rank_1=True,
            hyperplane_divisible_by_two=True,
        ))
    return verdicts
