"""
Line bundles on the Hirzebruch surface F_n.

F_n = P(O + O(-n)) over P^1 with minimal section C0 (C0^2 = -n) and fiber f.
Cohomology is computed by pushing forward to the base:

    pi_* O(x C0 + y f)   = Sym^x(O + O(-n)) (x) O(y)        (x >= 0)
    R^1 pi_* O(x C0 + y f) = dual of pi_*(K_rel - D), K_rel = -2 C0 - n f

and, since the base is a curve, the Leray spectral sequence degenerates:

    H^q(F_n, L) = H^q(P^1, pi_* L) + H^(q-1)(P^1, R^1 pi_* L).

`h0_lattice_oracle` counts lattice points of the toric polygon instead and
shares no code with the pushforward path.
"""
import logging

from lib.errors import InvariantViolation, UsageError
from models.schemas import CohTriple, HirzebruchDivisor, SplitBundle
from services import p1_bundles

logger = logging.getLogger(__name__)


def canonical_class(n: int) -> HirzebruchDivisor:
    """K = -2 C0 - (n + 2) f."""
    return HirzebruchDivisor(n=n, x=-2, y=-(n + 2))


def fiber_class(n: int) -> HirzebruchDivisor:
    return HirzebruchDivisor(n=n, x=0, y=1)


def minimal_section(n: int) -> HirzebruchDivisor:
    return HirzebruchDivisor(n=n, x=1, y=0)


def hyperplane_class(a: int, b: int) -> HirzebruchDivisor:
    """O_{P(E)}(1) for E = O(a) + O(b), a >= b: H = C0 + a f on F_(a-b)."""
    if a < b:
        raise UsageError(f"hyperplane class needs a >= b, got ({a}, {b})")
    return HirzebruchDivisor(n=a - b, x=1, y=a)


def intersect(d1: HirzebruchDivisor, d2: HirzebruchDivisor) -> int:
    """Intersection number -n x1 x2 + x1 y2 + x2 y1."""
    if d1.n != d2.n:
        raise UsageError(f"cannot intersect classes on F_{d1.n} and F_{d2.n}")
    return -d1.n * d1.x * d2.x + d1.x * d2.y + d2.x * d1.y


def pushforward(d: HirzebruchDivisor) -> SplitBundle:
    """pi_* O(D): degrees y - k n for k = 0..x, empty when x < 0."""
    if d.x < 0:
        return SplitBundle()
    return SplitBundle.from_iterable(d.y - k * d.n for k in range(d.x + 1))


def r1_pushforward(d: HirzebruchDivisor) -> SplitBundle:
    """R^1 pi_* O(D): degrees y + j n for j = 1..(-x-1), empty when x > -2."""
    if d.x > -2:
        return SplitBundle()
    return SplitBundle.from_iterable(d.y + j * d.n for j in range(1, -d.x))


def leray_cohomology(push: SplitBundle, r1: SplitBundle) -> CohTriple:
    """H^q(S, L) = H^q(P^1, pi_* L) + H^(q-1)(P^1, R^1 pi_* L) for S ruled over P^1."""
    return CohTriple(
        h0=p1_bundles.h0(push),
        h1=p1_bundles.h1(push) + p1_bundles.h0(r1),
        h2=p1_bundles.h1(r1),
    )


def cohomology(d: HirzebruchDivisor) -> CohTriple:
    """(h0, h1, h2) of O(D) through the Leray identity over the base curve."""
    return leray_cohomology(pushforward(d), r1_pushforward(d))


def serre_dual(d: HirzebruchDivisor) -> HirzebruchDivisor:
    return canonical_class(d.n) - d


def riemann_roch_chi(d: HirzebruchDivisor) -> int:
    """chi(O(D)) = 1 + D.(D - K) / 2 on a rational surface."""
    twice = intersect(d, d - canonical_class(d.n))
    if twice % 2:
        # D.(D-K) is even on every smooth surface; an odd value means a bad formula.
        raise InvariantViolation(f"D.(D-K) = {twice} is odd for {d}")
    return 1 + twice // 2


def euler_characteristic_by_pushforward(d: HirzebruchDivisor) -> int:
    """chi(O(D)) = chi(pi_* O(D)) - chi(R^1 pi_* O(D))."""
    return p1_bundles.euler_char(pushforward(d)) - p1_bundles.euler_char(r1_pushforward(d))


def h0_lattice_oracle(d: HirzebruchDivisor) -> int:
    """
    Count monomials of O(D) on the toric surface F_n.

    Sections of x C0 + y f are sums over k = 0..x of forms of degree y - k n
    on the base, so the polygon has one lattice column of height
    max(0, y - k n + 1) per k.
    """
    if d.x < 0:
        return 0
    total = 0
    for k in range(d.x + 1):
        total += max(0, d.y - k * d.n + 1)
    return total


def checked_cohomology(d: HirzebruchDivisor) -> CohTriple:
    """cohomology() cross-checked against the lattice oracle and Riemann-Roch."""
    triple = cohomology(d)
    oracle = h0_lattice_oracle(d)
    if triple.h0 != oracle:
        logger.error(f"h0 mismatch for {d}: pushforward {triple.h0}, lattice {oracle}")
        raise InvariantViolation(f"h0({d}) = {triple.h0} disagrees with lattice count {oracle}")
    rr = riemann_roch_chi(d)
    if triple.chi != rr:
        logger.error(f"chi mismatch for {d}: {triple.chi} vs Riemann-Roch {rr}")
        raise InvariantViolation(f"chi({d}) = {triple.chi} disagrees with Riemann-Roch {rr}")
    return triple
