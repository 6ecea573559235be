"""
Rational normal scrolls S(a, b) in P^N and the cohomology of their normal bundle.

S = P(O(a) + O(b)) is the Hirzebruch surface F_n, n = a - b, embedded by
H = C0 + a f, with canonical class omega = -2 C0 + (b - a - 2) f. Every
bundle below is assembled from line bundles on F_n through one of

    0 -> T_{S/P^1}        -> T_S           -> pi^* T_{P^1}     -> 0   (relative tangent)
    0 -> O_S              -> O_S(1)^(N+1)  -> T_{P^N}|_S       -> 0   (Euler)
    0 -> T_S              -> T_{P^N}|_S    -> N_{S/P^N}        -> 0   (normal)

and their twists by omega, and the cohomology is chased through les_calculus.
The connecting rank of the relative tangent sequence is never assumed to
vanish; the intervals it leaves on T_S must cancel downstream.

The Euler sequence has N + 1 copies of O_S(1), twisted or not.
"""
import logging
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field

from lib.errors import InvariantViolation
from models.schemas import CohInfo, CohTriple, HirzebruchDivisor, ScrollSpec, SplitBundle
from services import hirzebruch, p1_bundles
from services.les_calculus import SesProblem, require_exact, solve

logger = logging.getLogger(__name__)


# ============================================================================
# Records
# ============================================================================

class PushforwardRow(BaseModel):
    """pi_* and R^1 pi_* of a sheaf on the scroll."""
    model_config = ConfigDict(frozen=True)

    sheaf: str
    push: SplitBundle
    r1: SplitBundle
    trusted: bool = Field(default=False, description="True when the row is a known formula, not rederived")

    @property
    def euler_char(self) -> int:
        return p1_bundles.euler_char(self.push) - p1_bundles.euler_char(self.r1)


class PushforwardTable(BaseModel):
    """Pushforwards of T_S (x) omega, T_{P^N}|_S (x) omega and N (x) omega."""
    model_config = ConfigDict(frozen=True)

    tangent_twisted: PushforwardRow
    ambient_twisted: PushforwardRow
    normal_twisted: PushforwardRow


class NormalTwistReport(BaseModel):
    """Cohomology of N_{S/P^N} (x) omega with the solver envelope from the normal sequence."""
    model_config = ConfigDict(frozen=True)

    cohomology: CohTriple
    envelope: CohInfo


# ============================================================================
# Classes on the underlying Hirzebruch surface
# ============================================================================

def omega_class(spec: ScrollSpec) -> HirzebruchDivisor:
    """omega = -2 C0 + (b - a - 2) f on F_(a-b)."""
    omega = HirzebruchDivisor(n=spec.n, x=-2, y=spec.b - spec.a - 2)
    if omega != hirzebruch.canonical_class(spec.n):
        raise InvariantViolation(f"canonical class of {spec} disagrees with K_F{spec.n}")
    return omega


def hyperplane(spec: ScrollSpec) -> HirzebruchDivisor:
    return hirzebruch.hyperplane_class(spec.a, spec.b)


def relative_tangent_class(spec: ScrollSpec) -> HirzebruchDivisor:
    """T_{S/P^1} = O(2 C0 + n f), the dual of the relative canonical class."""
    return HirzebruchDivisor(n=spec.n, x=2, y=spec.n)


def base_tangent_class(spec: ScrollSpec) -> HirzebruchDivisor:
    """pi^* T_{P^1} = O(2 f)."""
    return HirzebruchDivisor(n=spec.n, x=0, y=2)


def _coh(d: HirzebruchDivisor) -> CohInfo:
    return CohInfo.from_triple(hirzebruch.cohomology(d))


def _scaled(triple: CohTriple, k: int) -> CohInfo:
    return CohInfo.exactly(k * triple.h0, k * triple.h1, k * triple.h2)


def hyperplane_cohomology(spec: ScrollSpec) -> CohTriple:
    """h^i(O_S(1)) = (N + 1, 0, 0)."""
    triple = hirzebruch.cohomology(hyperplane(spec))
    if triple.as_tuple() != (spec.N + 1, 0, 0):
        raise InvariantViolation(f"h^i(O_S(1)) = {triple.as_tuple()} on {spec}, expected ({spec.N + 1}, 0, 0)")
    return triple


# ============================================================================
# Tangent and ambient tangent bundles
# ============================================================================

def tangent_problem(spec: ScrollSpec, twist: Optional[HirzebruchDivisor] = None) -> SesProblem:
    if twist is None:
        twist = HirzebruchDivisor(n=spec.n, x=0, y=0)
    return SesProblem(
        left=_coh(relative_tangent_class(spec) + twist),
        right=_coh(base_tangent_class(spec) + twist),
        label=f"relative tangent sequence on {spec}",
    )


def tangent_cohomology(spec: ScrollSpec) -> CohInfo:
    """Cohomology of T_S: chi = 6, h2 = 0, h0 and h1 up to the connecting rank."""
    info = solve(tangent_problem(spec)).middle
    if info.chi != 6 or not info.h2.exact or info.h2.lo != 0:
        raise InvariantViolation(f"T_S on {spec} has chi={info.chi}, h2={info.h2}")
    return info


def tangent_twisted_cohomology(spec: ScrollSpec) -> CohInfo:
    """Cohomology of T_S (x) omega: (0, 2, 0) for every scroll."""
    info = solve(tangent_problem(spec, omega_class(spec))).middle
    return require_exact(info, f"T_S (x) omega on {spec}")


def ambient_problem(spec: ScrollSpec, twist: Optional[HirzebruchDivisor] = None) -> SesProblem:
    if twist is None:
        twist = HirzebruchDivisor(n=spec.n, x=0, y=0)
    sections = hirzebruch.cohomology(hyperplane(spec) + twist)
    return SesProblem(
        left=_coh(twist),
        middle=_scaled(sections, spec.N + 1),
        label=f"Euler sequence restricted to {spec}",
    )


def ambient_tangent_cohomology(spec: ScrollSpec) -> CohInfo:
    """Cohomology of T_{P^N}|_S: exactly ((N+1)^2 - 1, 0, 0)."""
    info = require_exact(solve(ambient_problem(spec)).right, f"T_P^N|_S on {spec}")
    expected = ((spec.N + 1) ** 2 - 1, 0, 0)
    if info.to_triple().as_tuple() != expected:
        raise InvariantViolation(f"T_P^N|_S on {spec} is {info}, expected {expected}")
    return info


def ambient_twisted_cohomology(spec: ScrollSpec) -> CohInfo:
    """Cohomology of T_{P^N}|_S (x) omega: (0, 1, 0)."""
    problem = ambient_problem(spec, omega_class(spec))
    return require_exact(solve(problem).right, f"T_P^N|_S (x) omega on {spec}")


# ============================================================================
# Normal bundle
# ============================================================================

def normal_bundle_cohomology(spec: ScrollSpec) -> CohTriple:
    """h^i(N_{S/P^N}) = ((N+1)^2 - 7, 0, 0); the solver must leave no interval."""
    problem = SesProblem(
        left=tangent_cohomology(spec),
        middle=ambient_tangent_cohomology(spec),
        label=f"normal sequence of {spec}",
    )
    info = require_exact(solve(problem).right, f"N_S/P^N on {spec}")
    triple = info.to_triple()
    expected = ((spec.N + 1) ** 2 - 7, 0, 0)
    if triple.as_tuple() != expected:
        raise InvariantViolation(f"N_S/P^N on {spec} is {triple.as_tuple()}, expected {expected}")
    return triple


def _middle_pushforward(sub: HirzebruchDivisor, quot: HirzebruchDivisor, sheaf: str) -> PushforwardRow:
    """
    Pushforward of the middle term of 0 -> O(sub) -> M -> O(quot) -> 0 on P^1:

        0 -> pi_* sub -> pi_* M -> pi_* quot -> R^1 sub -> R^1 M -> R^1 quot -> 0
    """
    push_sub, r1_sub = hirzebruch.pushforward(sub), hirzebruch.r1_pushforward(sub)
    push_quot, r1_quot = hirzebruch.pushforward(quot), hirzebruch.r1_pushforward(quot)
    if r1_sub.is_zero:
        push = p1_bundles.extension_pushforward(push_sub, push_quot)
        r1 = r1_quot
    elif push_quot.is_zero:
        push = push_sub
        r1 = p1_bundles.extension_pushforward(r1_sub, r1_quot)
    else:
        push = r1 = None
    if push is None or r1 is None:
        raise InvariantViolation(f"pushforward of {sheaf} is not determined by its sequence")
    return PushforwardRow(sheaf=sheaf, push=push, r1=r1)


def _quotient_pushforward(sub: HirzebruchDivisor, mid: HirzebruchDivisor, copies: int, sheaf: str) -> PushforwardRow:
    """Pushforward of Q in 0 -> O(sub) -> O(mid)^copies -> Q -> 0 when the middle has none."""
    if not (hirzebruch.pushforward(mid).is_zero and hirzebruch.r1_pushforward(mid).is_zero):
        raise InvariantViolation(f"pushforward of {sheaf} is not determined by its sequence")
    # pi_* Q = R^1 pi_* sub and R^1 pi_* Q = 0 once the middle term pushes forward to zero.
    return PushforwardRow(sheaf=sheaf, push=hirzebruch.r1_pushforward(sub), r1=SplitBundle())


def pushforward_table(spec: ScrollSpec) -> PushforwardTable:
    """
    ({-2}, {0}), ({-2}, {}), ({0}, {}) for T_S, T_P^N|_S and N, all twisted by omega.

    The first two rows are rederived from their sequences. The N (x) omega row
    needs the injectivity of pi_*(T_S (x) omega) -> pi_*(T_P^N|_S (x) omega),
    which dimensions cannot see, and is taken as known; ranks, degrees and
    chi of the pushed-forward sequence are checked against it.
    """
    omega = omega_class(spec)
    tangent = _middle_pushforward(
        relative_tangent_class(spec) + omega, base_tangent_class(spec) + omega, "T_S (x) omega"
    )
    ambient = _quotient_pushforward(omega, hyperplane(spec) + omega, spec.N + 1, "T_P^N|_S (x) omega")
    normal = PushforwardRow(sheaf="N (x) omega", push=SplitBundle.of(0), r1=SplitBundle(), trusted=True)

    # 0 -> pi_* T -> pi_* A -> pi_* N -> R^1 T -> R^1 A -> R^1 N -> 0 on P^1
    terms = [tangent.push, ambient.push, normal.push, tangent.r1, ambient.r1, normal.r1]
    rank_sum = sum((-1) ** k * t.rank for k, t in enumerate(terms))
    degree_sum = sum((-1) ** k * t.first_chern for k, t in enumerate(terms))
    if rank_sum or degree_sum:
        raise InvariantViolation(f"pushforward sequence of {spec} fails rank/degree additivity")
    if normal.euler_char != ambient.euler_char - tangent.euler_char:
        raise InvariantViolation(f"chi bookkeeping fails for the twisted normal sequence of {spec}")

    return PushforwardTable(tangent_twisted=tangent, ambient_twisted=ambient, normal_twisted=normal)


def normal_twist_canonical_cohomology(spec: ScrollSpec) -> NormalTwistReport:
    """h^i(N (x) omega) = (1, 0, 0), inside the envelope the solver allows."""
    table = pushforward_table(spec)
    triple = hirzebruch.leray_cohomology(table.normal_twisted.push, table.normal_twisted.r1)

    problem = SesProblem(
        left=tangent_twisted_cohomology(spec),
        middle=ambient_twisted_cohomology(spec),
        label=f"twisted normal sequence of {spec}",
    )
    envelope = solve(problem).right
    if not envelope.contains(triple):
        logger.error(f"N (x) omega on {spec}: {triple.as_tuple()} outside {envelope}")
        raise InvariantViolation(f"h^i(N (x) omega) = {triple.as_tuple()} is outside {envelope}")
    return NormalTwistReport(cohomology=triple, envelope=envelope)
