"""Dense linear algebra for multipartite states.

Amplitudes are flattened row-major over the dims list: the leftmost
subsystem varies slowest, so ``psi.reshape(dims)`` recovers the tensor.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
from scipy.stats import unitary_group

NORM_TOL = 1e-12
HERMITIAN_TOL = 1e-12
PSD_TOL = 1e-10
TRACE_TOL = 1e-10
RANK_TOL = 1e-12
MAX_TOTAL_DIM = 4096


class InvariantError(ValueError):
    """A state failed validation.

    ``invariant`` names the violated property, ``defect`` is its measured
    magnitude (e.g. ``abs(norm - 1)``).
    """

    def __init__(self, invariant: str, defect: float, message: str | None = None):
        self.invariant = invariant
        self.defect = float(defect)
        super().__init__(message or f"{invariant} violated (defect {self.defect:.3e})")


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=complex, copy=True)
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class Dims:
    dims: tuple[int, ...]

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if len(dims) < 1:
            raise InvariantError("dims nonempty", 0.0, "dims must list at least one subsystem")
        bad = [d for d in dims if d < 2]
        if bad:
            raise InvariantError("dims >= 2", min(bad), f"every subsystem dimension must be >= 2, got {dims}")
        object.__setattr__(self, "dims", dims)
        if self.total_dim > MAX_TOTAL_DIM:
            warnings.warn(f"total dimension {self.total_dim} exceeds {MAX_TOTAL_DIM}; expect slow dense algebra")

    @property
    def n(self) -> int:
        return len(self.dims)

    @property
    def total_dim(self) -> int:
        return int(np.prod(self.dims))

    def sub(self, idx: Iterable[int]) -> int:
        """Product of dims over ``idx``."""
        return int(np.prod([self.dims[i] for i in idx], dtype=int))

    def __iter__(self):
        return iter(self.dims)

    def __len__(self):
        return len(self.dims)

    def __getitem__(self, i):
        return self.dims[i]


def as_dims(dims) -> Dims:
    return dims if isinstance(dims, Dims) else Dims(tuple(dims))


@dataclass(frozen=True, eq=False)
class PureState:
    dims: Dims
    amplitudes: np.ndarray

    def __post_init__(self):
        dims = as_dims(self.dims)
        amps = _readonly(np.ravel(self.amplitudes))
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "amplitudes", amps)
        if amps.shape != (dims.total_dim,):
            raise InvariantError("amplitude length", abs(amps.size - dims.total_dim),
                                 f"expected {dims.total_dim} amplitudes, got {amps.size}")
        if not np.all(np.isfinite(amps)):
            raise InvariantError("finite amplitudes", np.inf)
        defect = abs(np.linalg.norm(amps) - 1.0)
        if defect > NORM_TOL:
            raise InvariantError("unit norm", defect)

    @classmethod
    def from_vector(cls, dims, vec, renormalize: bool = False) -> "PureState":
        vec = np.asarray(vec, dtype=complex).ravel()
        if renormalize:
            vec = vec / np.linalg.norm(vec)
        return cls(as_dims(dims), vec)

    def tensor(self) -> np.ndarray:
        return self.amplitudes.reshape(self.dims.dims)

    def projector(self) -> "DensityMatrix":
        return DensityMatrix(self.dims, np.outer(self.amplitudes, self.amplitudes.conj()))


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    dims: Dims
    matrix: np.ndarray

    def __post_init__(self):
        dims = as_dims(self.dims)
        m = _readonly(self.matrix)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "matrix", m)
        D = dims.total_dim
        if m.shape != (D, D):
            raise InvariantError("matrix shape", abs(m.size - D * D), f"expected {D}x{D}, got {m.shape}")
        if not np.all(np.isfinite(m)):
            raise InvariantError("finite entries", np.inf)
        herm = float(np.max(np.abs(m - m.conj().T)))
        if herm > HERMITIAN_TOL:
            raise InvariantError("hermitian", herm)
        tr = abs(np.trace(m) - 1.0)
        if tr > TRACE_TOL:
            raise InvariantError("unit trace", tr)
        lo = float(np.linalg.eigvalsh(m)[0])
        if lo < -PSD_TOL:
            raise InvariantError("positive semidefinite", -lo)

    @classmethod
    def from_matrix(cls, dims, m, renormalize: bool = False) -> "DensityMatrix":
        m = np.asarray(m, dtype=complex)
        if renormalize:
            m = 0.5 * (m + m.conj().T)
            m = m / np.trace(m).real
        return cls(as_dims(dims), m)

    @classmethod
    def mixture(cls, dims, weights: Sequence[float], vectors: Sequence[np.ndarray]) -> "DensityMatrix":
        """``sum_k w_k |v_k><v_k|`` with each ``v_k`` normalized first."""
        D = as_dims(dims).total_dim
        m = np.zeros((D, D), dtype=complex)
        for w, v in zip(weights, vectors):
            v = np.asarray(v, dtype=complex)
            v = v / np.linalg.norm(v)
            m += w * np.outer(v, v.conj())
        return cls(as_dims(dims), 0.5 * (m + m.conj().T))


@dataclass(frozen=True, eq=False)
class SpectralDecomp:
    """Truncated eigendecomposition ``rho = Phi diag(M) Phi^dagger``."""

    eigenvectors: np.ndarray
    eigenvalues: np.ndarray
    rank_tolerance: float = RANK_TOL

    @property
    def rank(self) -> int:
        return len(self.eigenvalues)


def _check_subset(keep, n: int) -> list[int]:
    keep = sorted(set(int(k) for k in keep))
    if not keep:
        raise ValueError("keep set must be nonempty")
    if keep[0] < 0 or keep[-1] >= n:
        raise IndexError(f"subsystem index out of range 0..{n - 1}: {keep}")
    return keep


def partial_trace(state: PureState | DensityMatrix, keep: Iterable[int]) -> DensityMatrix:
    """Reduced state on ``keep``; kept subsystems stay in their original order."""
    dims = state.dims
    keep = _check_subset(keep, dims.n)
    rest = [i for i in range(dims.n) if i not in keep]
    dk = dims.sub(keep)
    sub_dims = Dims(tuple(dims[i] for i in keep))
    if isinstance(state, PureState):
        x = state.tensor().transpose(keep + rest).reshape(dk, -1)
        red = x @ x.conj().T
    else:
        n = dims.n
        t = state.matrix.reshape(dims.dims + dims.dims)
        t = t.transpose(keep + rest + [n + i for i in keep] + [n + i for i in rest])
        dr = dims.total_dim // dk
        red = np.einsum("arbr->ab", t.reshape(dk, dr, dk, dr))
    red = 0.5 * (red + red.conj().T)
    return DensityMatrix(sub_dims, red)


def permute_subsystems(state: PureState, perm: Sequence[int]) -> PureState:
    """Reorder subsystems: output subsystem ``k`` is input subsystem ``perm[k]``."""
    perm = [int(p) for p in perm]
    if sorted(perm) != list(range(state.dims.n)):
        raise ValueError(f"not a permutation of 0..{state.dims.n - 1}: {perm}")
    new_dims = Dims(tuple(state.dims[p] for p in perm))
    amps = np.ascontiguousarray(state.tensor().transpose(perm)).ravel()
    # bypass renormalization; transposition is exact
    return PureState(new_dims, amps)


def purity(rho: DensityMatrix) -> float:
    m = rho.matrix
    # Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho
    return float(np.sum(np.abs(m) ** 2))


def _clamped_eigvalsh(m: np.ndarray) -> np.ndarray:
    w = np.linalg.eigvalsh(m)
    return np.where(w < RANK_TOL, 0.0, w)


def von_neumann_entropy(rho: DensityMatrix) -> float:
    w = _clamped_eigvalsh(rho.matrix)
    w = w[w > 1e-14]
    return float(-np.sum(w * np.log2(w))) + 0.0


def spectral_decomposition(rho: DensityMatrix, rank_tolerance: float = RANK_TOL) -> SpectralDecomp:
    if rank_tolerance < 0:
        raise ValueError("rank_tolerance must be >= 0")
    w, v = np.linalg.eigh(rho.matrix)
    order = np.argsort(w)[::-1]
    w, v = w[order], v[:, order]
    keep = w > rank_tolerance
    return SpectralDecomp(_readonly(v[:, keep]), np.array(w[keep], dtype=float), rank_tolerance)


def singular_values(m: np.ndarray) -> np.ndarray:
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    return np.linalg.svd(m, compute_uv=False)


def partial_transpose(rho: DensityMatrix, sites: Iterable[int]) -> np.ndarray:
    """Partial transpose over ``sites`` as a plain matrix (not a state)."""
    dims = rho.dims
    n = dims.n
    sites = set(sites)
    t = rho.matrix.reshape(dims.dims + dims.dims)
    axes = list(range(2 * n))
    for s in sites:
        axes[s], axes[n + s] = n + s, s
    return t.transpose(axes).reshape(rho.matrix.shape)


def local_operator(dims: Dims, site: int, op: np.ndarray) -> np.ndarray:
    """``I x ... x op x ... x I`` with ``op`` on ``site``."""
    left = dims.sub(range(site))
    right = dims.sub(range(site + 1, dims.n))
    return np.kron(np.kron(np.eye(left), op), np.eye(right))


def random_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random ``d x d`` unitary."""
    return unitary_group.rvs(d, random_state=rng)
