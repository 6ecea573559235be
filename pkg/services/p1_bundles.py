"""
Cohomology of split bundles on the projective line.

Everything on the ruled surfaces is pushed down to P^1, so these four
functions are the substrate of the whole package.
"""
from typing import Optional

from models.schemas import SplitBundle


def h0(bundle: SplitBundle) -> int:
    """h^0 of a split bundle: h^0(O(d)) = max(0, d + 1)."""
    return sum(max(0, d + 1) for d in bundle.degrees)


def h1(bundle: SplitBundle) -> int:
    """h^1 of a split bundle: h^1(O(d)) = max(0, -d - 1)."""
    return sum(max(0, -d - 1) for d in bundle.degrees)


def euler_char(bundle: SplitBundle) -> int:
    return sum(d + 1 for d in bundle.degrees)


def serre_dual(bundle: SplitBundle) -> SplitBundle:
    """Twist of the dual by the canonical bundle O(-2): d -> -d - 2."""
    return SplitBundle.from_iterable(-d - 2 for d in bundle.degrees)


def hom_h1(source: SplitBundle, target: SplitBundle) -> int:
    """dim Ext^1(source, target) = h^1(target (x) source^*)."""
    return sum(max(0, -(t - s) - 1) for s in source.degrees for t in target.degrees)


def extension_pushforward(sub: SplitBundle, quot: SplitBundle) -> Optional[SplitBundle]:
    """
    Middle term of 0 -> sub -> ? -> quot -> 0 when it is forced to split.

    Returns sub + quot when Ext^1(quot, sub) = 0 (every extension splits) or
    when either end is zero; otherwise None, since the middle term is then
    not determined by the ends.
    """
    if sub.is_zero:
        return quot
    if quot.is_zero:
        return sub
    if hom_h1(quot, sub) == 0:
        return sub + quot
    return None
