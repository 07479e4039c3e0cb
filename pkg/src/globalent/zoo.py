"""Reference and benchmark states."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

import numpy as np

from .linalg import DensityMatrix, Dims, PureState, as_dims

_KET = {
    "0": np.array([1.0, 0.0]),
    "1": np.array([0.0, 1.0]),
    "+": np.array([1.0, 1.0]) / np.sqrt(2),
    "-": np.array([1.0, -1.0]) / np.sqrt(2),
}

BOUND_ABC_FORMULA = (
    "rho = (2|GHZ><GHZ| + a|001><001| + b|010><010| + c|011><011| "
    "+ (1/c)|100><100| + (1/b)|101><101| + (1/a)|110><110|) / N,  "
    "N = 2 + a + b + c + 1/a + 1/b + 1/c"
)

DCT_PRESET = dict(lambda0_plus=1 / 3, lambda0_minus=0.0, lambda01=1 / 6, lambda10=0.0, lambda11=1 / 6)


def _kron_all(vectors) -> np.ndarray:
    out = np.array([1.0 + 0j])
    for v in vectors:
        out = np.kron(out, v)
    return out


def ghz(n: int = 3, d: int = 2) -> PureState:
    if n < 2 or d < 2:
        raise ValueError("ghz needs n >= 2 and d >= 2")
    amps = np.zeros(d**n, dtype=complex)
    stride = sum(d**i for i in range(n))  # index of |k k ... k> is k * stride
    amps[np.arange(d) * stride] = 1 / np.sqrt(d)
    return PureState(Dims((d,) * n), amps)


def w(n: int = 3) -> PureState:
    if n < 2:
        raise ValueError("w needs n >= 2")
    amps = np.zeros(2**n, dtype=complex)
    amps[[2**k for k in range(n)]] = 1 / np.sqrt(n)
    return PureState(Dims((2,) * n), amps)


def bell() -> PureState:
    return ghz(2, 2)


def product(labels: str = "000") -> PureState:
    """Product of single-qubit kets named by ``0``, ``1``, ``+``, ``-``."""
    try:
        vecs = [_KET[c] for c in labels]
    except KeyError as exc:
        raise ValueError(f"unknown ket label {exc.args[0]!r}; use 0, 1, +, -") from None
    if not vecs:
        raise ValueError("product needs at least one label")
    return PureState(Dims((2,) * len(vecs)), _kron_all(vecs))


def upb_vectors() -> list[np.ndarray]:
    return [_kron_all([_KET[c] for c in s]) for s in ("01+", "1+0", "+01", "---")]


def upb_shifts() -> DensityMatrix:
    """Normalized projector onto the complement of the 'shifts' UPB."""
    proj = sum(np.outer(v, v.conj()) for v in upb_vectors())
    return DensityMatrix(Dims((2, 2, 2)), (np.eye(8) - proj) / 4)


def _ghz_basis_vector(k: int, sign: int) -> np.ndarray:
    k1, k2 = k >> 1, k & 1
    v = np.zeros(8, dtype=complex)
    v[4 * k1 + 2 * k2] = 1
    v[4 * (1 - k1) + 2 * (1 - k2) + 1] = sign
    return v / np.sqrt(2)


def dct(lambda0_plus: float = DCT_PRESET["lambda0_plus"], lambda0_minus: float = DCT_PRESET["lambda0_minus"],
        lambda01: float = DCT_PRESET["lambda01"], lambda10: float = DCT_PRESET["lambda10"],
        lambda11: float = DCT_PRESET["lambda11"]) -> DensityMatrix:
    """Three-qubit state diagonal in the GHZ basis; defaults to the bound-entangled preset."""
    weights = [lambda0_plus, lambda0_minus, lambda01, lambda10, lambda11]
    if min(weights) < 0:
        raise ValueError("dct weights must be nonnegative")
    total = lambda0_plus + lambda0_minus + 2 * (lambda01 + lambda10 + lambda11)
    if abs(total - 1) > 1e-12:
        raise ValueError(f"dct weights must satisfy l0+ + l0- + 2(l01 + l10 + l11) = 1, got {total!r}")
    m = np.zeros((8, 8), dtype=complex)
    for weight, k, sign in [(lambda0_plus, 0, 1), (lambda0_minus, 0, -1)]:
        v = _ghz_basis_vector(k, sign)
        m += weight * np.outer(v, v.conj())
    for k, weight in zip((1, 2, 3), (lambda01, lambda10, lambda11)):
        for sign in (1, -1):
            v = _ghz_basis_vector(k, sign)
            m += weight * np.outer(v, v.conj())
    return DensityMatrix(Dims((2, 2, 2)), m)


def bound_abc(a: float = 2.0, b: float = 2.0, c: float = 0.5) -> DensityMatrix:
    """GHZ-diagonal-plus-flips family; ``a`` weights ``|001>`` (see BOUND_ABC_FORMULA)."""
    if min(a, b, c) <= 0:
        raise ValueError("a, b, c must be positive")
    g = ghz(3, 2).amplitudes
    diag = np.array([0, a, b, c, 1 / c, 1 / b, 1 / a, 0], dtype=float)
    norm = 2 + a + b + c + 1 / a + 1 / b + 1 / c
    m = (2 * np.outer(g, g.conj()) + np.diag(diag)) / norm
    return DensityMatrix(Dims((2, 2, 2)), m)


def haar_random_pure(dims, seed: int | None = 0) -> PureState:
    dims = as_dims(dims)
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(dims.total_dim) + 1j * rng.standard_normal(dims.total_dim)
    return PureState(dims, v / np.linalg.norm(v))


def random_density(dims, rank: int | None = None, seed: int | None = 0) -> DensityMatrix:
    """``Psi W Psi^dagger`` from ``rank`` random complex vectors and random weights."""
    dims = as_dims(dims)
    D = dims.total_dim
    rank = D if rank is None else int(rank)
    if not 1 <= rank <= D:
        raise ValueError(f"rank must be in 1..{D}, got {rank}")
    rng = np.random.default_rng(seed)
    psi = rng.standard_normal((D, rank)) + 1j * rng.standard_normal((D, rank))
    psi /= np.linalg.norm(psi, axis=0)
    weights = rng.dirichlet(np.ones(rank))
    m = (psi * weights) @ psi.conj().T
    m = 0.5 * (m + m.conj().T)
    return DensityMatrix(dims, m / np.trace(m).real)


@dataclass(frozen=True)
class Family:
    build: Callable[..., Any]
    params: dict[str, Callable[[str], Any]] = field(default_factory=dict)
    note: str = ""


def _number(s: str) -> float:
    """Accepts decimals and fractions such as ``1/3``."""
    return float(Fraction(s))


def _int_list(s: str) -> tuple[int, ...]:
    return tuple(int(x) for x in s.split(","))


FAMILIES: dict[str, Family] = {
    "ghz": Family(ghz, {"n": int, "d": int}),
    "w": Family(w, {"n": int}),
    "bell": Family(bell),
    "product": Family(product, {"labels": str}),
    "haar-pure": Family(lambda dims=(2, 2, 2), seed=0: haar_random_pure(dims, seed), {"dims": _int_list, "seed": int}),
    "random-density": Family(lambda dims=(2, 2, 2), rank=None, seed=0: random_density(dims, rank, seed),
                             {"dims": _int_list, "rank": int, "seed": int}),
    "upb-shifts": Family(upb_shifts),
    "dct": Family(dct, {"lambda0_plus": _number, "lambda0_minus": _number, "lambda01": _number,
                        "lambda10": _number, "lambda11": _number}),
    "bound-abc": Family(bound_abc, {"a": _number, "b": _number, "c": _number},
                        note="coefficient a on |001><001| so the trace is exactly 1: " + BOUND_ABC_FORMULA),
}


def build(family: str, **params: str):
    """Construct a zoo state from string parameters (CLI form)."""
    key = family.replace("_", "-")
    if key not in FAMILIES:
        raise KeyError(f"unknown family {family!r}; known: {', '.join(FAMILIES)}")
    fam = FAMILIES[key]
    unknown = set(params) - set(fam.params)
    if unknown:
        raise KeyError(f"unknown parameter(s) for {key}: {', '.join(sorted(unknown))}")
    return fam.build(**{k: fam.params[k](v) for k, v in params.items()})
