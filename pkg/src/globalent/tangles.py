"""Residual entanglement (n-tangles) for three- and four-party states."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import DensityMatrix, PureState, partial_trace
from .mixed import BoundOptions, global_lower_bound, wootters_concurrence
from .partitions import make_bipartition
from .pure import bipartite_concurrence

NAMES = "ABCD"

# (focus block, first other block, second other block); the left-hand side
# is the squared concurrence of focus versus everything else.
FOUR_PARTY_GROUPINGS: tuple[tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]], ...] = (
    ((0,), (1, 2), (3,)),
    ((1,), (0, 2), (3,)),
    ((2,), (0, 1), (3,)),
    ((3,), (1, 2), (0,)),
    ((0, 1), (2,), (3,)),
    ((0, 2), (1,), (3,)),
    ((0, 3), (1,), (2,)),
    ((1, 2), (0,), (3,)),
    ((1, 3), (0,), (2,)),
    ((2, 3), (0,), (1,)),
)


@dataclass(frozen=True)
class Component:
    name: str
    value: float
    exact: bool


@dataclass(frozen=True)
class TangleReport:
    focus: str
    lhs: float
    components: tuple[Component, ...]
    residual: float
    lhs_exact: bool = True
    grouping: str = ""

    @property
    def exact(self) -> bool:
        return self.lhs_exact and all(c.exact for c in self.components)


def _block(ix, names=NAMES) -> str:
    s = "".join(names[i] for i in ix)
    return s if len(ix) == 1 else f"({s})"


def _report(focus: str, lhs: float, comps: list[Component], lhs_exact=True, grouping="") -> TangleReport:
    residual = lhs - sum(c.value for c in comps)
    return TangleReport(focus, lhs, tuple(comps), residual, lhs_exact, grouping)


def three_tangle(psi: PureState, focus: int = 0) -> TangleReport:
    """Exact 3-tangle of a three-qubit pure state about ``focus``."""
    if tuple(psi.dims) != (2, 2, 2):
        raise ValueError(f"three_tangle needs three qubits, got dims {tuple(psi.dims)}")
    others = [i for i in range(3) if i != focus]
    lhs = bipartite_concurrence(psi, make_bipartition(psi.dims, [focus])) ** 2
    comps = [
        Component(f"C2[{NAMES[focus]}{NAMES[j]}]", wootters_concurrence(partial_trace(psi, [focus, j])) ** 2, True)
        for j in others
    ]
    return _report(f"{NAMES[focus]}({NAMES[others[0]]}{NAMES[others[1]]})", lhs, comps)


def _mixed_sq(rho: DensityMatrix, left, opts: BoundOptions | None) -> tuple[float, bool]:
    """Squared concurrence of ``rho`` across ``left | rest``, and whether it is exact."""
    if tuple(rho.dims) == (2, 2):
        return wootters_concurrence(rho) ** 2, True
    res = global_lower_bound(rho, opts, partitions=[make_bipartition(rho.dims, left)])
    return res.value**2, res.restarts_used == 0


def tangle_mixed_focus(rho: DensityMatrix, focus: int = 0, opts: BoundOptions | None = None,
                       names: str = NAMES) -> TangleReport:
    """``C2[a(bc)] - C2[ab] - C2[ac]`` for a tripartite (possibly mixed) state.

    Each concurrence is the optimized lower bound on its single partition,
    except two-qubit reductions (Wootters, exact) and rank-one states (exact).
    The residual therefore carries no sign guarantee.
    """
    if rho.dims.n != 3:
        raise ValueError(f"tangle_mixed_focus needs a tripartite state, got {rho.dims.n} parties")
    others = [i for i in range(3) if i != focus]
    lhs, lhs_exact = _mixed_sq(rho, [focus], opts)
    comps = []
    for j in others:
        red = partial_trace(rho, sorted([focus, j]))
        left = [0] if focus < j else [1]
        val, exact = _mixed_sq(red, left, opts)
        comps.append(Component(f"C2[{names[focus]}{names[j]}]", val, exact))
    return _report(f"{names[focus]}({names[others[0]]}{names[others[1]]})", lhs, comps, lhs_exact)


def _reduced_sq(psi: PureState, block, other, opts) -> tuple[float, bool]:
    keep = sorted(block + other)
    red = partial_trace(psi, keep)
    left = [keep.index(i) for i in block]
    return _mixed_sq(red, left, opts)


def four_partite_audit(psi: PureState, opts: BoundOptions | None = None) -> list[TangleReport]:
    """The ten focus groupings of a four-party pure state.

    Single-party foci are expanded one level further through the 3-tangle of
    the reduced state on focus plus bracket, so their components are
    ``C2[mn], C2[mp], tau[m(np)], C2[mq]``. Pair foci list ``C2[(mn)p]`` and
    ``C2[(mn)q]``. Residuals stand in for the 4-tangles and are upper
    estimates whenever a component is only a lower bound.
    """
    if psi.dims.n != 4:
        raise ValueError(f"four_partite_audit needs four parties, got {psi.dims.n}")
    reports = []
    lhs_by_focus = {}
    for focus, first, second in FOUR_PARTY_GROUPINGS:
        lhs = bipartite_concurrence(psi, make_bipartition(psi.dims, focus)) ** 2
        lhs_by_focus[focus] = lhs
        grouping = _block(focus) + _block(first) + _block(second)
        if len(focus) == 1:
            keep = sorted(focus + first)
            sub = partial_trace(psi, keep)
            sub_names = "".join(NAMES[i] for i in keep)
            inner = tangle_mixed_focus(sub, keep.index(focus[0]), opts, names=sub_names)
            tau = Component(f"tau[{_block(focus)}{_block(first)}]", inner.residual, inner.exact)
            last_val, last_exact = _reduced_sq(psi, list(focus), list(second), opts)
            comps = list(inner.components) + [tau, Component(f"C2[{_block(focus)}{_block(second)}]",
                                                             last_val, last_exact)]
        else:
            comps = []
            for other in (first, second):
                val, exact = _reduced_sq(psi, list(focus), list(other), opts)
                comps.append(Component(f"C2[{_block(focus)}{_block(other)}]", val, exact))
        reports.append(_report(_block(focus), lhs, comps, True, grouping))
    for focus, _, _ in FOUR_PARTY_GROUPINGS[4:]:
        partner = tuple(i for i in range(4) if i not in focus)
        if partner in lhs_by_focus:
            gap = abs(lhs_by_focus[focus] - lhs_by_focus[partner])
            if gap > 1e-10:
                raise ArithmeticError(f"complementary lhs mismatch {_block(focus)} vs {_block(partner)}: {gap:.3e}")
    return reports


def pairwise_sum(psi: PureState) -> float:
    """Sum of squared two-qubit concurrences over all pairs (qubits only)."""
    n = psi.dims.n
    return float(sum(wootters_concurrence(partial_trace(psi, [i, j])) ** 2
                     for i in range(n) for j in range(i + 1, n)))


def lhs_total(reports: list[TangleReport]) -> float:
    return float(np.sum([r.lhs for r in reports]))
