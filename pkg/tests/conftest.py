import numpy as np
import pytest

from globalent import PureState


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def haar(rng, dims):
    D = int(np.prod(dims))
    v = rng.standard_normal(D) + 1j * rng.standard_normal(D)
    return PureState(tuple(dims), v / np.linalg.norm(v))


def basis(dims, *digits):
    """Computational basis ket |digits> over ``dims``."""
    idx = np.ravel_multi_index(digits, dims)
    v = np.zeros(int(np.prod(dims)), dtype=complex)
    v[idx] = 1
    return PureState(tuple(dims), v)
