import math
from itertools import permutations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from globalent import zoo
from globalent.channels import apply_local_unitary
from globalent.generators import partition_operators
from globalent.linalg import PureState, random_unitary
from globalent.partitions import enumerate_bipartitions, make_bipartition, num_bipartitions
from globalent.pure import (
    bipartite_concurrence,
    concurrence_vector,
    global_entanglement,
    is_fully_separable,
)

from conftest import basis, haar


def brute_force_component(psi, partition, op):
    """psi'^T S psi' conjugated, with psi' built by explicit index loops."""
    dims = psi.dims.dims
    order = partition.order
    pdims = [dims[i] for i in order]
    permuted = np.zeros(psi.dims.total_dim, dtype=complex)
    for idx in np.ndindex(*dims):
        new_idx = tuple(idx[i] for i in order)
        permuted[np.ravel_multi_index(new_idx, pdims)] = psi.amplitudes[np.ravel_multi_index(idx, dims)]
    return np.conj(permuted @ op @ permuted)


def test_bell_single_unit_component():
    c = concurrence_vector(zoo.bell(), enumerate_bipartitions([2, 2])[0])
    assert c.components.shape == (1,)
    assert abs(c.components[0]) == pytest.approx(1.0)


def test_product_components_vanish():
    c = concurrence_vector(basis((2, 2), 0, 0), enumerate_bipartitions([2, 2])[0])
    assert np.all(c.components == 0)


def test_global_phase(rng):
    psi = haar(rng, (2, 3, 2))
    phased = PureState(psi.dims, np.exp(0.7j) * psi.amplitudes)
    for p in enumerate_bipartitions(psi.dims):
        a = concurrence_vector(psi, p).components
        b = concurrence_vector(phased, p).components
        np.testing.assert_allclose(np.abs(a), np.abs(b), atol=1e-14)
        np.testing.assert_allclose(b, a * np.exp(-1.4j), atol=1e-14)


@pytest.mark.parametrize("dims", [(2, 2, 2), (3, 2), (2, 3, 2)])
def test_vector_matches_materialized_operators(rng, dims):
    psi = haar(rng, dims)
    for p in enumerate_bipartitions(dims):
        got = concurrence_vector(psi, p).components
        want = [brute_force_component(psi, p, o.matrix) for o in partition_operators(dims, p)]
        np.testing.assert_allclose(got, want, atol=1e-13)


def test_two_qubit_reduces_to_wootters_form(rng):
    for _ in range(20):
        psi = haar(rng, (2, 2))
        a, b, c, d = psi.amplitudes
        got = bipartite_concurrence(psi, enumerate_bipartitions([2, 2])[0])
        assert got == pytest.approx(2 * abs(a * d - b * c), abs=1e-13)


def test_qutrit_maximally_entangled():
    psi = zoo.ghz(2, 3)
    assert bipartite_concurrence(psi, enumerate_bipartitions([3, 3])[0]) == pytest.approx(2 / math.sqrt(3), abs=1e-12)


def test_product_any_dims_zero(rng):
    a = rng.standard_normal(3) + 1j * rng.standard_normal(3)
    b = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    psi = PureState.from_vector((3, 4), np.kron(a, b), renormalize=True)
    assert bipartite_concurrence(psi, enumerate_bipartitions([3, 4])[0]) == pytest.approx(0.0, abs=1e-14)


@pytest.mark.parametrize("state,expected", [
    (zoo.ghz(3), math.sqrt(3)),                 # purities 1/2, 1/2, 1/2
    (zoo.w(3), math.sqrt(8 / 3)),               # purities 5/9 each
    (PureState((2, 2, 2), np.kron(zoo.bell().amplitudes, [1, 0])), math.sqrt(2)),  # 1/2, 1/2, 1
    (basis((2, 2, 2), 0, 0, 0), 0.0),
    (zoo.ghz(4), math.sqrt(7)),                 # seven purities 1/2
])
def test_reference_values(state, expected):
    rep = global_entanglement(state)
    assert rep.value_purity_formula == pytest.approx(expected, abs=1e-10)
    assert rep.value_vector_formula == pytest.approx(expected, abs=1e-10)


def test_report_invariants(rng):
    psi = haar(rng, (2, 3, 2, 2))
    rep = global_entanglement(psi)
    assert rep.num == num_bipartitions(4)
    assert rep.value_vector_formula**2 == pytest.approx(sum(c for _, c in rep.per_partition), abs=1e-10)
    assert abs(rep.value_vector_formula - rep.value_purity_formula) <= 1e-9


def test_single_subsystem_rejected():
    with pytest.raises(ValueError):
        global_entanglement(PureState((2,), np.array([1, 0])))


def test_fully_separable():
    assert is_fully_separable(zoo.product("01+"))
    assert not is_fully_separable(zoo.ghz(3))
    semi = PureState((2, 2, 2), np.kron(zoo.bell().amplitudes, [1, 0]))
    assert not is_fully_separable(semi)
    assert global_entanglement(semi).value == pytest.approx(math.sqrt(2))


def test_formula_equivalence_random(rng):
    for _ in range(200):
        dims = tuple(int(d) for d in rng.choice([2, 3], size=int(rng.choice([2, 3, 4]))))
        rep = global_entanglement(haar(rng, dims))
        assert abs(rep.value_vector_formula - rep.value_purity_formula) <= 1e-9


def test_local_unitary_invariance(rng):
    for dims in [(2, 2, 2), (3, 2, 2), (2, 3, 2, 2)]:
        psi = haar(rng, dims)
        before = global_entanglement(psi).value
        for site, d in enumerate(dims):
            moved = apply_local_unitary(psi, site, random_unitary(d, rng))
            assert global_entanglement(moved).value == pytest.approx(before, abs=1e-10)


def test_permutation_invariance(rng):
    from globalent.linalg import permute_subsystems

    psi = haar(rng, (2, 3, 2))
    before = global_entanglement(psi).value
    for perm in permutations(range(3)):
        assert global_entanglement(permute_subsystems(psi, perm)).value == pytest.approx(before, abs=1e-10)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(2, 3), min_size=2, max_size=4), st.integers(0, 2**32 - 1))
def test_products_zero_and_upper_bound(dims, seed):
    rng = np.random.default_rng(seed)
    factors = [rng.standard_normal(d) + 1j * rng.standard_normal(d) for d in dims]
    vec = factors[0]
    for f in factors[1:]:
        vec = np.kron(vec, f)
    prod = PureState.from_vector(dims, vec, renormalize=True)
    rep = global_entanglement(prod)
    assert rep.value_vector_formula <= 1e-10
    assert rep.value_purity_formula <= 1e-7  # sqrt of a rounding-level difference
    ent = global_entanglement(haar(rng, dims))
    assert ent.value**2 <= 2 * ent.num


def test_zoo_entangled_states_positive():
    for psi in (zoo.ghz(3), zoo.w(3), zoo.bell(), zoo.ghz(2, 3), zoo.ghz(4), zoo.w(4)):
        assert global_entanglement(psi).value > 0.1


def test_mismatched_partition(rng):
    psi = haar(rng, (2, 3))
    with pytest.raises(ValueError):
        concurrence_vector(psi, make_bipartition((3, 2), [0]))
