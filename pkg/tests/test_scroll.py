"""Tests for rational normal scrolls and their normal bundles."""
import pytest
from pydantic import ValidationError

from models.schemas import CohInfo, HirzebruchDivisor, Interval, ScrollSpec, SplitBundle
from services import hirzebruch, scroll

SCROLLS = [ScrollSpec(a=a, b=b) for a in range(1, 13) for b in range(1, a + 1)]


def S(a, b):
    return ScrollSpec(a=a, b=b)


def test_scroll_spec_invariants():
    spec = S(9, 2)
    assert (spec.n, spec.N, spec.degree, spec.g) == (7, 12, 11, 12)
    with pytest.raises(ValidationError):
        S(1, 2)
    with pytest.raises(ValidationError):
        S(3, 0)


def test_omega_class():
    assert scroll.omega_class(S(5, 2)) == HirzebruchDivisor(n=3, x=-2, y=-5)


@pytest.mark.parametrize("spec", SCROLLS, ids=str)
def test_hyperplane_sections(spec):
    assert scroll.hyperplane_cohomology(spec).as_tuple() == (spec.N + 1, 0, 0)


@pytest.mark.parametrize("spec, h0, h1", [
    (S(1, 1), (6, 6), (0, 0)),
    (S(2, 1), (6, 6), (0, 0)),
    (S(2, 2), (6, 6), (0, 0)),
    (S(3, 1), (6, 7), (0, 1)),
    (S(4, 1), (6, 8), (0, 2)),
    (S(5, 1), (6, 9), (0, 3)),
    (S(7, 3), (6, 9), (0, 3)),
    (S(8, 2), (8, 11), (2, 5)),
], ids=str)
def test_tangent_bundle(spec, h0, h1):
    info = scroll.tangent_cohomology(spec)
    assert (info.h0.lo, info.h0.hi) == h0
    assert (info.h1.lo, info.h1.hi) == h1
    assert info.h2 == Interval.point(0)
    assert info.chi == 6


@pytest.mark.parametrize("spec", SCROLLS, ids=str)
def test_tangent_interval_width(spec):
    info = scroll.tangent_cohomology(spec)
    width = min(3, max(0, spec.n - 1))
    assert info.h0.width == info.h1.width == width
    assert info.h0.hi == max(6, spec.n + 5)
    assert info.h1.hi == max(0, spec.n - 1)


@pytest.mark.parametrize("spec", SCROLLS, ids=str)
def test_twisted_tangent_and_ambient(spec):
    assert scroll.tangent_twisted_cohomology(spec) == CohInfo.exactly(0, 2, 0)
    assert scroll.ambient_twisted_cohomology(spec) == CohInfo.exactly(0, 1, 0)


@pytest.mark.parametrize("spec", SCROLLS, ids=str)
def test_normal_bundle(spec):
    assert scroll.normal_bundle_cohomology(spec).as_tuple() == ((spec.a + spec.b + 2) ** 2 - 7, 0, 0)


def test_normal_bundle_of_quadric_surface():
    spec = S(1, 1)
    assert scroll.normal_bundle_cohomology(spec).h0 == 9
    # S(1,1) is a quadric in P^3, N = O(2, 2)
    assert hirzebruch.cohomology(HirzebruchDivisor(n=0, x=2, y=2)).h0 == 9


@pytest.mark.parametrize("spec", SCROLLS, ids=str)
def test_twisted_normal_bundle_has_one_section(spec):
    report = scroll.normal_twist_canonical_cohomology(spec)
    assert report.cohomology.as_tuple() == (1, 0, 0)
    assert report.envelope.contains(report.cohomology)
    assert report.envelope.h0 == Interval(lo=1, hi=2)
    assert report.envelope.h1 == Interval(lo=0, hi=1)


@pytest.mark.parametrize("spec", [S(1, 1), S(4, 2), S(9, 2)], ids=str)
def test_pushforward_table(spec):
    table = scroll.pushforward_table(spec)
    assert (table.tangent_twisted.push, table.tangent_twisted.r1) == (SplitBundle.of(-2), SplitBundle.of(0))
    assert (table.ambient_twisted.push, table.ambient_twisted.r1) == (SplitBundle.of(-2), SplitBundle())
    assert (table.normal_twisted.push, table.normal_twisted.r1) == (SplitBundle.of(0), SplitBundle())
    assert table.normal_twisted.trusted and not table.tangent_twisted.trusted
