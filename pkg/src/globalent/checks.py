"""Randomized property suites behind ``globalent check``."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channels import LocalOperation, apply_local_unitary, monotone_margin
from .linalg import PureState, random_unitary
from .partitions import enumerate_bipartitions, num_bipartitions
from .pure import global_concurrence, global_entanglement

EQUIVALENCE_TOL = 1e-9
LU_TOL = 1e-10
MONOTONE_TOL = 1e-8


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    worst: float
    threshold: float
    trials: int
    detail: str = ""


def _trial_rngs(seed: int, trials: int):
    return [np.random.default_rng(c) for c in np.random.SeedSequence(seed).spawn(trials)]


def _haar(rng: np.random.Generator, dims) -> PureState:
    D = int(np.prod(dims))
    v = rng.standard_normal(D) + 1j * rng.standard_normal(D)
    return PureState(tuple(dims), v / np.linalg.norm(v))


def _random_dims(rng: np.random.Generator, sizes=(2, 3, 4), local=(2, 3)) -> tuple[int, ...]:
    n = int(rng.choice(sizes))
    return tuple(int(d) for d in rng.choice(local, size=n))


def check_partitions(max_n: int = 10) -> CheckResult:
    bad = []
    for n in range(2, max_n + 1):
        counts = {num_bipartitions(n), 2 ** (n - 1) - 1, len(enumerate_bipartitions([2] * n))}
        if len(counts) != 1:
            bad.append(n)
    return CheckResult("partitions", not bad, float(len(bad)), 0.0, max_n - 1,
                       f"N=2..{max_n}" + (f"; mismatches at {bad}" if bad else ""))


def check_equivalence(trials: int = 200, seed: int = 0) -> CheckResult:
    worst = 0.0
    for rng in _trial_rngs(seed, trials):
        rep = global_entanglement(_haar(rng, _random_dims(rng)))
        worst = max(worst, abs(rep.value_vector_formula - rep.value_purity_formula))
    return CheckResult("equivalence", worst <= EQUIVALENCE_TOL, worst, EQUIVALENCE_TOL, trials,
                       "max |vector - purity|")


def check_lu(trials: int = 200, seed: int = 0) -> CheckResult:
    worst = 0.0
    for rng in _trial_rngs(seed, trials):
        psi = _haar(rng, _random_dims(rng))
        site = int(rng.integers(psi.dims.n))
        moved = apply_local_unitary(psi, site, random_unitary(psi.dims[site], rng))
        worst = max(worst, abs(global_concurrence(moved) - global_concurrence(psi)))
    return CheckResult("lu", worst <= LU_TOL, worst, LU_TOL, trials, "max |C(U psi) - C(psi)|")


def monotone_trials(trials: int = 200, seed: int = 0) -> tuple[float, float]:
    """(min measurement margin, max |unitary margin|) over random qubit trials."""
    min_margin, max_unitary = np.inf, 0.0
    for rng in _trial_rngs(seed, trials):
        psi = _haar(rng, (2,) * int(rng.choice((3, 4))))
        site = int(rng.integers(psi.dims.n))
        u = random_unitary(2, rng)
        projectors = [np.outer(u[:, i], u[:, i].conj()) for i in range(2)]
        min_margin = min(min_margin, monotone_margin(psi, projectors, site=site).value)
        unitary = monotone_margin(psi, LocalOperation(site, (u,)))
        max_unitary = max(max_unitary, abs(unitary.value))
    return float(min_margin), float(max_unitary)


def check_monotone(trials: int = 200, seed: int = 0) -> CheckResult:
    min_margin, max_unitary = monotone_trials(trials, seed)
    ok = min_margin >= -MONOTONE_TOL and max_unitary <= LU_TOL
    return CheckResult("monotone", ok, min_margin, -MONOTONE_TOL, trials,
                       f"min margin; max |unitary margin| = {max_unitary:.3e}")


SUITES = {
    "partitions": lambda trials, seed: check_partitions(),
    "equivalence": check_equivalence,
    "lu": check_lu,
    "monotone": check_monotone,
}


def run_suite(name: str, trials: int = 200, seed: int = 0) -> list[CheckResult]:
    if name == "all":
        return [fn(trials, seed) for fn in SUITES.values()]
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; known: {', '.join(SUITES)}, all")
    return [SUITES[name](trials, seed)]
