"""Unordered two-block splits of N subsystems."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

from .linalg import Dims, as_dims


@dataclass(frozen=True)
class Bipartition:
    """Canonical split: ``left`` always contains subsystem 0."""

    left: tuple[int, ...]
    right: tuple[int, ...]
    n1: int
    n2: int

    @property
    def order(self) -> tuple[int, ...]:
        """Subsystem order (left block first) used when acting with S = L x L'."""
        return self.left + self.right

    def label(self, names: str = "ABCDEFGHIJ") -> str:
        def block(ix):
            s = "".join(names[i] for i in ix)
            return s if len(ix) == 1 else f"({s})"
        return block(self.left) + block(self.right)


def num_bipartitions(n: int) -> int:
    """Number of distinct unordered bipartitions, via the even/odd binomial sum."""
    if n < 2:
        raise ValueError("need at least two subsystems")
    if n % 2 == 0:
        return sum(comb(n, i) for i in range(1, (n - 2) // 2 + 1)) + comb(n, n // 2) // 2
    return sum(comb(n, i) for i in range(1, (n - 1) // 2 + 1))


def make_bipartition(dims: Dims, left) -> Bipartition:
    dims = as_dims(dims)
    left = tuple(sorted(set(int(i) for i in left)))
    all_ix = set(range(dims.n))
    if not left or not set(left) <= all_ix or set(left) == all_ix:
        raise ValueError(f"invalid block {left} for {dims.n} subsystems")
    right = tuple(sorted(all_ix - set(left)))
    if 0 not in left:
        left, right = right, left
    return Bipartition(left, right, dims.sub(left), dims.sub(right))


def enumerate_bipartitions(dims) -> list[Bipartition]:
    """All splits, ordered by left-block size then lexicographically."""
    dims = as_dims(dims)
    n = dims.n
    if n < 2:
        raise ValueError("need at least two subsystems")
    out = []
    for size in range(1, n):
        for rest in combinations(range(1, n), size - 1):
            left = (0,) + rest
            right = tuple(i for i in range(n) if i not in left)
            out.append(Bipartition(left, right, dims.sub(left), dims.sub(right)))
    return out
