import math
from itertools import permutations

import numpy as np
import pytest

from globalent import zoo
from globalent.channels import apply_local_unitary
from globalent.linalg import DensityMatrix, PureState, permute_subsystems, random_unitary
from globalent.mixed import BoundOptions
from globalent.partitions import make_bipartition
from globalent.pure import bipartite_concurrence
from globalent.tangles import (
    FOUR_PARTY_GROUPINGS,
    four_partite_audit,
    lhs_total,
    pairwise_sum,
    tangle_mixed_focus,
    three_tangle,
)

from conftest import basis, haar

QUICK = BoundOptions(restarts=4)


def hyperdeterminant_tangle(psi):
    """Coffman-Kundu-Wootters closed form 4|Det(a)| from the Cayley hyperdeterminant."""
    a = psi.tensor()
    d1 = (a[0, 0, 0] ** 2 * a[1, 1, 1] ** 2 + a[0, 0, 1] ** 2 * a[1, 1, 0] ** 2
          + a[0, 1, 0] ** 2 * a[1, 0, 1] ** 2 + a[1, 0, 0] ** 2 * a[0, 1, 1] ** 2)
    d2 = (a[0, 0, 0] * a[1, 1, 1] * a[0, 1, 1] * a[1, 0, 0] + a[0, 0, 0] * a[1, 1, 1] * a[1, 0, 1] * a[0, 1, 0]
          + a[0, 0, 0] * a[1, 1, 1] * a[1, 1, 0] * a[0, 0, 1] + a[0, 1, 1] * a[1, 0, 0] * a[1, 0, 1] * a[0, 1, 0]
          + a[0, 1, 1] * a[1, 0, 0] * a[1, 1, 0] * a[0, 0, 1] + a[1, 0, 1] * a[0, 1, 0] * a[1, 1, 0] * a[0, 0, 1])
    d3 = (a[0, 0, 0] * a[1, 1, 0] * a[1, 0, 1] * a[0, 1, 1] + a[1, 1, 1] * a[0, 0, 1] * a[0, 1, 0] * a[1, 0, 0])
    return 4 * abs(d1 - 2 * d2 + 4 * d3)


@pytest.mark.parametrize("state,lhs,pairs,residual", [
    (zoo.ghz(3), 1.0, (0.0, 0.0), 1.0),
    (zoo.w(3), 8 / 9, (4 / 9, 4 / 9), 0.0),
    (basis((2, 2, 2), 0, 0, 0), 0.0, (0.0, 0.0), 0.0),
])
def test_three_tangle_examples(state, lhs, pairs, residual):
    rep = three_tangle(state)
    assert rep.lhs == pytest.approx(lhs, abs=1e-10)
    assert [c.value for c in rep.components] == pytest.approx(list(pairs), abs=1e-10)
    assert rep.residual == pytest.approx(residual, abs=1e-10)
    assert rep.exact and rep.focus == "A(BC)"


def test_three_tangle_matches_hyperdeterminant(rng):
    for _ in range(100):
        psi = haar(rng, (2, 2, 2))
        tau = hyperdeterminant_tangle(psi)
        for focus in range(3):
            rep = three_tangle(psi, focus)
            assert rep.residual == pytest.approx(tau, abs=1e-8)
            assert -1e-8 <= rep.residual <= 1 + 1e-8


def test_three_tangle_local_unitary_invariance(rng):
    for _ in range(20):
        psi = haar(rng, (2, 2, 2))
        moved = psi
        for site in range(3):
            moved = apply_local_unitary(moved, site, random_unitary(2, rng))
        assert three_tangle(moved).residual == pytest.approx(three_tangle(psi).residual, abs=1e-8)


def test_three_tangle_wrong_dims():
    with pytest.raises(ValueError):
        three_tangle(zoo.ghz(3, 3))


def test_mixed_focus_rank_one_matches_pure():
    psi = zoo.ghz(3)
    rep = tangle_mixed_focus(psi.projector(), 0, QUICK)
    assert rep.residual == pytest.approx(three_tangle(psi).residual, abs=1e-4)
    assert rep.lhs_exact and all(c.exact for c in rep.components)


def test_mixed_focus_separable_states():
    rng = np.random.default_rng(7)
    factors = []
    for _ in range(3):
        m = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        m = m @ m.conj().T
        factors.append(m / np.trace(m))
    prod = DensityMatrix((2, 2, 2), np.kron(np.kron(factors[0], factors[1]), factors[2]))
    mixed = DensityMatrix((2, 2, 2), np.eye(8) / 8)
    for rho in (prod, mixed):
        rep = tangle_mixed_focus(rho, 1, QUICK)
        assert rep.lhs == pytest.approx(0.0, abs=1e-6)
        assert all(abs(c.value) <= 1e-6 for c in rep.components)
        assert rep.residual == pytest.approx(0.0, abs=1e-6)


def test_mixed_focus_flags_and_qutrits():
    rho = zoo.random_density((3, 2, 2), rank=2, seed=1)
    rep = tangle_mixed_focus(rho, 0, QUICK)
    assert not rep.lhs_exact
    # the two-qubit reduction is (2, 2) only for the B, C pair, which is never a component here
    assert not any(c.exact for c in rep.components)
    rep = tangle_mixed_focus(zoo.random_density((2, 2, 2), rank=3, seed=2), 0, QUICK)
    assert all(c.exact for c in rep.components) and not rep.exact
    with pytest.raises(ValueError):
        tangle_mixed_focus(zoo.bell().projector(), 0)


def test_audit_product():
    for rep in four_partite_audit(basis((2, 2, 2, 2), 0, 0, 0, 0), QUICK):
        assert rep.lhs == 0.0
        assert all(abs(c.value) <= 1e-12 for c in rep.components)
        assert abs(rep.residual) <= 1e-12


def test_audit_ghz4():
    reps = four_partite_audit(zoo.ghz(4), QUICK)
    assert len(reps) == len(FOUR_PARTY_GROUPINGS) == 10
    for rep in reps:
        assert rep.lhs == pytest.approx(1.0, abs=1e-10)
        assert all(abs(c.value) <= 1e-6 for c in rep.components)
        assert rep.residual == pytest.approx(1.0, abs=1e-6)
    assert lhs_total(reps) == pytest.approx(10.0)


def test_audit_bell_pairs():
    psi = PureState((2, 2, 2, 2), np.kron(zoo.bell().amplitudes, zoo.bell().amplitudes))
    reps = {r.grouping: r for r in four_partite_audit(psi, QUICK)}
    assert reps["(AB)CD"].lhs == pytest.approx(0.0, abs=1e-10)
    assert reps["A(BC)D"].lhs == pytest.approx(1.0, abs=1e-10)
    comps = {c.name: c.value for c in reps["A(BC)D"].components}
    assert comps["C2[AB]"] == pytest.approx(1.0, abs=1e-10)
    assert comps["C2[AC]"] == pytest.approx(0.0, abs=1e-10)
    assert comps["C2[AD]"] == pytest.approx(0.0, abs=1e-10)


def test_audit_labels():
    reps = four_partite_audit(zoo.ghz(4), QUICK)
    assert [r.focus for r in reps[:4]] == ["A", "B", "C", "D"]
    assert [c.name for c in reps[0].components] == ["C2[AB]", "C2[AC]", "tau[A(BC)]", "C2[AD]"]
    assert [c.name for c in reps[4].components] == ["C2[(AB)C]", "C2[(AB)D]"]


def test_audit_wrong_size():
    with pytest.raises(ValueError):
        four_partite_audit(zoo.ghz(3))


def test_bracket_permutation_lhs(rng):
    psi = haar(rng, (2, 2, 2, 2))
    base = bipartite_concurrence(psi, make_bipartition(psi.dims, [0])) ** 2
    for perm in permutations((1, 2, 3)):
        moved = permute_subsystems(psi, (0,) + perm)
        assert bipartite_concurrence(moved, make_bipartition(moved.dims, [0])) ** 2 == pytest.approx(base, abs=1e-10)


def test_complementary_lhs(rng):
    psi = haar(rng, (2, 2, 2, 2))
    for left in ([0, 1], [0, 2], [0, 3]):
        right = [i for i in range(4) if i not in left]
        # reorder so the complement is the first block, then compare
        moved = permute_subsystems(psi, right + left)
        a = bipartite_concurrence(psi, make_bipartition(psi.dims, left))
        b = bipartite_concurrence(moved, make_bipartition(moved.dims, [0, 1]))
        assert a == pytest.approx(b, abs=1e-10)


@pytest.mark.slow
def test_sum_direction_random_four_qubit():
    for seed in range(3):
        psi = zoo.haar_random_pure((2, 2, 2, 2), seed=seed)
        reps = four_partite_audit(psi, QUICK)
        assert lhs_total(reps) >= 3 * pairwise_sum(psi) - 1e-8
        for rep in reps[:4]:
            assert rep.lhs_exact
