"""Shared deterministic generators for the test suite."""

import numpy as np
import pytest

from qritz.pencil import QuadraticPencil


def rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=seed))


def cnormal(g: np.random.Generator, *shape) -> np.ndarray:
    return g.standard_normal(shape) + 1j * g.standard_normal(shape)


def random_unitary(g: np.random.Generator, n: int) -> np.ndarray:
    Q, _ = np.linalg.qr(cnormal(g, n, n))
    return Q


def random_hpd(g: np.random.Generator, n: int) -> np.ndarray:
    R = cnormal(g, n, n) / np.sqrt(n)
    return R @ R.conj().T + 0.5 * np.eye(n)


def random_pencil(g: np.random.Generator, n: int, hpd_mass: bool = True) -> QuadraticPencil:
    M = random_hpd(g, n) if hpd_mass else cnormal(g, n, n)
    D = cnormal(g, n, n) / np.sqrt(n)
    K = cnormal(g, n, n) / np.sqrt(n)
    return QuadraticPencil(M, D, K)


def isolated_eigenpair(pairs):
    """The pair whose eigenvalue maximizes the distance to the rest,
    among pairs with non-tiny eigenvalues."""
    values = np.array([p.value for p in pairs])

    def isolation(i):
        d = np.abs(values - values[i])
        d[i] = np.inf
        return float(np.min(d))

    candidates = [i for i in range(len(pairs)) if abs(values[i]) >= 0.15]
    if not candidates:
        candidates = list(range(len(pairs)))
    best = max(candidates, key=isolation)
    return pairs[best], isolation(best)


@pytest.fixture
def g():
    return rng(1234)
