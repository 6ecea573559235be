"""Tests for the rank-2 Picard sublattices of hyperelliptic K3 surfaces."""
import pytest
from hypothesis import given, strategies as st

from lib.errors import UsageError
from services import picard_lattice as pl
from services.picard_lattice import HyperellipticModel, Lattice2, LatticeVector

vectors = st.builds(LatticeVector, p=st.integers(-50, 50), q=st.integers(-50, 50))
lattices = st.sampled_from(list(pl.MODEL_LATTICES.values()))


@pytest.mark.parametrize("n", range(5, 41))
def test_f4_family(n):
    record = pl.hyperelliptic_model(HyperellipticModel.F4, n)
    assert record.g == 2 * n - 3
    assert pl.model_parameter_for_genus(HyperellipticModel.F4, record.g) == n
    assert (record.divisibility == 2) == (n % 2 == 0) == (record.g % 4 == 1)
    assert record.valid


@pytest.mark.parametrize("model, first", [(HyperellipticModel.F0, 1), (HyperellipticModel.F1, 2)])
def test_f0_and_f1_families_are_primitive(model, first):
    for n in range(first, first + 30):
        record = pl.hyperelliptic_model(model, n)
        assert record.primitive
        assert record.valid
        assert pl.model_parameter_for_genus(model, record.g) == n


def test_examples():
    f4 = pl.hyperelliptic_model(HyperellipticModel.F4, 8)
    assert (f4.g, f4.divisibility, f4.self_intersection) == (13, 2, 24)
    f0 = pl.hyperelliptic_model(HyperellipticModel.F0, 1)
    assert (f0.g, f0.primitive) == (3, True)
    f1 = pl.hyperelliptic_model(HyperellipticModel.F1, 2)
    assert (f1.g, f1.self_intersection) == (4, 6)


@pytest.mark.parametrize("model, n", [
    (HyperellipticModel.F0, 0),
    (HyperellipticModel.F1, 1),
    (HyperellipticModel.F4, 4),
])
def test_model_thresholds(model, n):
    with pytest.raises(UsageError):
        pl.hyperelliptic_model(model, n)


def test_model_parameter_rejects_wrong_parity():
    with pytest.raises(UsageError):
        pl.model_parameter_for_genus(HyperellipticModel.F0, 4)
    with pytest.raises(UsageError):
        pl.model_parameter_for_genus(HyperellipticModel.F4, 8)


def test_two_component_condition():
    hits = [g for g in range(3, 60) if pl.two_component_condition(g)]
    assert hits == list(range(13, 60, 4))
    with pytest.raises(UsageError):
        pl.two_component_condition(2)


@pytest.mark.parametrize("g", [2, 3, 13, 100])
def test_polarization_lattice(g):
    lattice = pl.polarization_lattice(g)
    assert lattice.gram == ((2 * g - 2, 2), (2, 0))
    assert lattice.determinant == -4
    assert lattice.is_even


def test_divisibility_of_zero_vector_is_rejected():
    with pytest.raises(UsageError):
        pl.divisibility(LatticeVector(p=0, q=0))


def test_gram_matrix_must_be_symmetric():
    with pytest.raises(ValueError):
        Lattice2(gram=((0, 1), (2, 0)))


def test_large_entries_stay_exact():
    lattice = Lattice2(gram=((10 ** 30, 1), (1, 0)))
    v = LatticeVector(p=10 ** 20, q=1)
    assert pl.self_int(lattice, v) == 10 ** 70 + 2 * 10 ** 20


@given(lattices, vectors, vectors, vectors)
def test_inner_product_is_symmetric_and_bilinear(lattice, u, v, w):
    s = LatticeVector(p=u.p + v.p, q=u.q + v.q)
    assert pl.inner(lattice, u, v) == pl.inner(lattice, v, u)
    assert pl.inner(lattice, s, w) == pl.inner(lattice, u, w) + pl.inner(lattice, v, w)


@given(vectors)
def test_primitive_iff_divisibility_one(v):
    if v.is_zero:
        return
    assert pl.is_primitive(v) == (pl.divisibility(v) == 1)
