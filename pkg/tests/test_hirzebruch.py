"""Tests for line bundles on Hirzebruch surfaces."""
from itertools import product

import pytest
from hypothesis import given, strategies as st

from lib.errors import UsageError
from models.schemas import CohTriple, HirzebruchDivisor, SplitBundle
from services import hirzebruch


def D(n, x, y):
    return HirzebruchDivisor(n=n, x=x, y=y)


divisors = st.builds(
    D,
    st.integers(min_value=0, max_value=8),
    st.integers(min_value=-12, max_value=12),
    st.integers(min_value=-12, max_value=12),
)


@pytest.mark.parametrize("d1, d2, expected", [
    (D(2, 1, 0), D(2, 1, 0), -2),
    (D(3, 1, 3), D(3, 0, 1), 1),
    (D(1, -2, -3), D(1, -2, -3), 8),
])
def test_intersect(d1, d2, expected):
    assert hirzebruch.intersect(d1, d2) == expected


def test_intersect_rejects_different_surfaces():
    with pytest.raises(UsageError):
        hirzebruch.intersect(D(1, 1, 0), D(2, 1, 0))


@pytest.mark.parametrize("d, push", [
    (D(2, 0, 5), SplitBundle.of(5)),
    (D(3, 4, 10), SplitBundle.of(10, 7, 4, 1, -2)),
    (D(4, 0, -2), SplitBundle.of(-2)),
    (D(3, -1, 7), SplitBundle()),
])
def test_pushforward(d, push):
    assert hirzebruch.pushforward(d) == push


@pytest.mark.parametrize("d, r1", [
    (D(2, 0, 0), SplitBundle()),
    (D(5, -2, -7), SplitBundle.of(-2)),
    (D(3, -2, -3), SplitBundle.of(0)),
])
def test_r1_pushforward(d, r1):
    assert hirzebruch.r1_pushforward(d) == r1


@pytest.mark.parametrize("d, triple", [
    (D(0, 0, 0), (1, 0, 0)),
    (D(3, 4, 10), (26, 1, 0)),
    (D(4, 2, 6), (10, 1, 0)),
    (D(1, -2, -3), (0, 0, 1)),
])
def test_cohomology(d, triple):
    assert hirzebruch.checked_cohomology(d).as_tuple() == triple


@pytest.mark.parametrize("n", range(0, 9))
def test_chi_of_omega_minus_two_is_25(n):
    d = -2 * hirzebruch.canonical_class(n)
    assert hirzebruch.riemann_roch_chi(d) == 25
    assert hirzebruch.euler_characteristic_by_pushforward(d) == 25


@pytest.mark.parametrize("d, chi", [
    (D(0, 0, 0), 1),
    (D(3, -2, -5), 1),
])
def test_riemann_roch(d, chi):
    assert hirzebruch.riemann_roch_chi(d) == chi


@pytest.mark.parametrize("d, h0", [
    (D(0, 0, 0), 1),
    (D(3, 4, 10), 26),
    (D(0, 2, 2), 9),
])
def test_lattice_oracle(d, h0):
    assert hirzebruch.h0_lattice_oracle(d) == h0


def test_engine_over_full_range():
    for n, x, y in product(range(0, 9), range(-12, 13), range(-12, 13)):
        d = D(n, x, y)
        triple = hirzebruch.cohomology(d)
        assert triple.h0 == hirzebruch.h0_lattice_oracle(d)
        assert triple.chi == hirzebruch.riemann_roch_chi(d)
        assert triple == hirzebruch.cohomology(hirzebruch.serre_dual(d)).reversed()


@given(divisors)
def test_pushforwards_never_both_nonempty(d):
    assert hirzebruch.pushforward(d).is_zero or hirzebruch.r1_pushforward(d).is_zero


@given(divisors)
def test_checked_cohomology_agrees(d):
    assert isinstance(hirzebruch.checked_cohomology(d), CohTriple)


def test_hyperplane_class_requires_ordered_degrees():
    assert hirzebruch.hyperplane_class(3, 1) == D(2, 1, 3)
    with pytest.raises(UsageError):
        hirzebruch.hyperplane_class(1, 3)


def test_divisors_on_different_surfaces_do_not_add():
    with pytest.raises(ValueError):
        D(1, 0, 0) + D(2, 0, 0)
