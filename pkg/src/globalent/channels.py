"""Local operations for checking that the measure does not grow under LOCC."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .linalg import DensityMatrix, PureState
from .mixed import BoundOptions, global_lower_bound
from .pure import global_concurrence

ZERO_PROB = 1e-14


@dataclass(frozen=True, eq=False)
class LocalOperation:
    """Kraus operators on one site, grouped into outcomes.

    ``outcomes[k]`` lists the Kraus indices that produce outcome ``k``;
    by default every Kraus operator is its own outcome.
    """

    site: int
    kraus: tuple[np.ndarray, ...]
    outcomes: tuple[tuple[int, ...], ...] | None = None

    def __post_init__(self):
        ks = tuple(np.asarray(k, dtype=complex) for k in self.kraus)
        if not ks:
            raise ValueError("need at least one Kraus operator")
        d = ks[0].shape[0]
        if any(k.shape != (d, d) for k in ks):
            raise ValueError("Kraus operators must be square and of equal size")
        defect = np.max(np.abs(sum(k.conj().T @ k for k in ks) - np.eye(d)))
        if defect > 1e-10:
            raise ValueError(f"Kraus operators are not trace preserving (defect {defect:.3e})")
        groups = self.outcomes if self.outcomes is not None else tuple((i,) for i in range(len(ks)))
        flat = sorted(i for g in groups for i in g)
        if flat != list(range(len(ks))):
            raise ValueError("outcome groups must partition the Kraus indices")
        object.__setattr__(self, "kraus", ks)
        object.__setattr__(self, "outcomes", tuple(tuple(g) for g in groups))

    @property
    def fine_grained(self) -> bool:
        return all(len(g) == 1 for g in self.outcomes)


@dataclass(frozen=True)
class OutcomeEnsemble:
    outcomes: tuple[tuple[float, PureState], ...]

    @property
    def total_probability(self) -> float:
        return float(sum(p for p, _ in self.outcomes))


@dataclass(frozen=True)
class Margin:
    value: float
    exact: bool
    inconclusive: bool = False


def _apply(psi: PureState, site: int, op: np.ndarray) -> np.ndarray:
    t = np.tensordot(op, psi.tensor(), axes=(1, site))
    return np.moveaxis(t, 0, site).ravel()


def _check_site(psi: PureState, site: int, d: int) -> None:
    if not 0 <= site < psi.dims.n:
        raise IndexError(f"site {site} out of range")
    if psi.dims[site] != d:
        raise ValueError(f"operator dimension {d} does not match site dimension {psi.dims[site]}")


def apply_local_unitary(psi: PureState, site: int, u: np.ndarray) -> PureState:
    u = np.asarray(u, dtype=complex)
    _check_site(psi, site, u.shape[0])
    defect = np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0])))
    if defect > 1e-10:
        raise ValueError(f"operator is not unitary (defect {defect:.3e})")
    out = _apply(psi, site, u)
    return PureState(psi.dims, out / np.linalg.norm(out))


def measure_local(psi: PureState, site: int, projectors: Sequence[np.ndarray]) -> OutcomeEnsemble:
    ps = [np.asarray(p, dtype=complex) for p in projectors]
    d = ps[0].shape[0]
    _check_site(psi, site, d)
    if np.max(np.abs(sum(ps) - np.eye(d))) > 1e-10:
        raise ValueError("projectors do not sum to the identity")
    for i, p in enumerate(ps):
        for j, q in enumerate(ps):
            target = p if i == j else np.zeros_like(p)
            if np.max(np.abs(p @ q - target)) > 1e-10:
                raise ValueError("projectors are not orthogonal idempotents")
    return _pure_outcomes(psi, site, ps)


def _pure_outcomes(psi: PureState, site: int, ops) -> OutcomeEnsemble:
    out = []
    for k in ops:
        v = _apply(psi, site, k)
        p = float(np.vdot(v, v).real)
        if p >= ZERO_PROB:
            out.append((p, PureState(psi.dims, v / np.sqrt(p))))
    return OutcomeEnsemble(tuple(out))


def monotone_margin(psi: PureState, op: LocalOperation | Sequence[np.ndarray], site: int | None = None,
                    opts: BoundOptions | None = None) -> Margin:
    """``C(psi) - sum_k p_k C(outcome_k)`` for a local operation on ``psi``.

    ``op`` is a ``LocalOperation`` or, with ``site``, a list of projectors.
    When every outcome is pure the margin is exact. Otherwise mixed outcomes
    are scored with the optimized lower bound; such a margin can only
    overestimate the true one, so a negative value is marked inconclusive
    rather than treated as a violation.
    """
    if not isinstance(op, LocalOperation):
        if site is None:
            raise ValueError("site is required when passing bare projectors")
        ens = measure_local(psi, site, op)
        return Margin(global_concurrence(psi) - sum(p * global_concurrence(s) for p, s in ens.outcomes), True)
    _check_site(psi, op.site, op.kraus[0].shape[0])
    before = global_concurrence(psi)
    if op.fine_grained:
        ens = _pure_outcomes(psi, op.site, op.kraus)
        return Margin(before - sum(p * global_concurrence(s) for p, s in ens.outcomes), True)
    after = 0.0
    for group in op.outcomes:
        vs = [_apply(psi, op.site, op.kraus[i]) for i in group]
        m = sum(np.outer(v, v.conj()) for v in vs)
        p = float(np.trace(m).real)
        if p < ZERO_PROB:
            continue
        rho = DensityMatrix(psi.dims, 0.5 * (m + m.conj().T) / p)
        after += p * global_lower_bound(rho, opts).value
    value = before - after
    return Margin(value, False, inconclusive=value < 0)
