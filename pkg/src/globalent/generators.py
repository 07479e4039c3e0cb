"""SO(n) generators and the per-partition operators ``L_alpha x L_beta``.

Generators carry entries +1/-1 with no normalization factor; with this
choice the squared concurrence of a bipartite pure state is exactly
``2 (1 - Tr rho_red^2)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .linalg import as_dims
from .partitions import Bipartition, make_bipartition


@dataclass(frozen=True, eq=False)
class GeneratorBasis:
    n: int
    pairs: tuple[tuple[int, int], ...]
    matrices: np.ndarray  # (n(n-1)/2, n, n), read-only

    def __len__(self):
        return len(self.pairs)


@dataclass(frozen=True, eq=False)
class PartitionOperator:
    partition: Bipartition
    alpha: int
    beta: int
    matrix: np.ndarray

    @property
    def label(self) -> str:
        # 1-based in reports
        return f"{self.partition.label()}[{self.alpha + 1},{self.beta + 1}]"


@lru_cache(maxsize=None)
def so_basis(n: int) -> GeneratorBasis:
    """Antisymmetric basis, lexicographic in (j, k) with j < k."""
    if n < 2:
        raise ValueError("SO(n) needs n >= 2")
    pairs = tuple((j, k) for j in range(n) for k in range(j + 1, n))
    mats = np.zeros((len(pairs), n, n))
    for i, (j, k) in enumerate(pairs):
        mats[i, j, k] = 1.0
        mats[i, k, j] = -1.0
    mats.flags.writeable = False
    return GeneratorBasis(n, pairs, mats)


def _check(dims, partition: Bipartition) -> None:
    dims = as_dims(dims)
    ref = make_bipartition(dims, partition.left)
    if ref != partition:
        raise ValueError(f"partition {partition} does not match dims {dims.dims}")


@lru_cache(maxsize=64)
def _operator_stack(n1: int, n2: int) -> np.ndarray:
    a, b = so_basis(n1).matrices, so_basis(n2).matrices
    ops = np.einsum("aij,bkl->abikjl", a, b).reshape(len(a) * len(b), n1 * n2, n1 * n2)
    ops.flags.writeable = False
    return ops


def partition_operators(dims, partition: Bipartition) -> list[PartitionOperator]:
    """Materialized ``L_alpha x L_beta`` for one partition, alpha-major.

    The matrices act on amplitudes already permuted into ``partition.order``.
    """
    _check(dims, partition)
    n1, n2 = partition.n1, partition.n2
    q = n2 * (n2 - 1) // 2
    stack = _operator_stack(n1, n2)
    return [PartitionOperator(partition, i // q, i % q, stack[i]) for i in range(len(stack))]
