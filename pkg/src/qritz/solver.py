"""Full dense solution of a quadratic eigenproblem via its linearization.

Intended for desk-scale ground truth: all 2n eigenpairs are obtained from the
standard eigenproblem ``B^{-1} A``, formed explicitly with n solves against
the mass matrix.
"""

from __future__ import annotations

import warnings

import numpy as np

from .errors import EmptyList, IndefiniteMass
from .kernels import eig_standard, solve_linear
from .pencil import Eigenpair, QuadraticPencil, qep_residual

#: When the lower block of a linearized eigenvector is smaller than this, the
#: eigenvalue is huge in magnitude and the upper block carries the vector.
LOWER_BLOCK_MIN = 1e-8


def _extract_vector(v: np.ndarray, n: int) -> np.ndarray:
    bot = v[n:]
    nb = np.linalg.norm(bot)
    if nb >= LOWER_BLOCK_MIN:
        return bot / nb
    top = v[:n]
    return top / np.linalg.norm(top)


def solve_full(p: QuadraticPencil) -> list[Eigenpair]:
    """All 2n eigenpairs of the pencil, eigenvectors unit norm.

    The eigenvector is read off the lower block of the linearized
    eigenvector ``[lam*x; x]``, falling back to the upper block when the
    lower one underflows (eigenvalue near infinity in magnitude).

    Raises:
        Singular: if M fails the pivot threshold.
        NoConvergence: from the underlying eigensolver.
    """
    if not p.hermitian_pd:
        warnings.warn(
            "mass matrix not verified Hermitian positive definite; "
            "proceeding on nonsingularity alone",
            IndefiniteMass,
            stacklevel=2,
        )
    n = p.n
    # B^{-1} A = [[-M^{-1}D, -M^{-1}K], [I, 0]] since B's lower-right block is I.
    top = solve_linear(p.M, np.hstack([-p.D, -p.K]))
    bottom = np.hstack([np.eye(n, dtype=np.complex128), np.zeros((n, n), dtype=np.complex128)])
    C = np.vstack([top, bottom])
    out = []
    for lam, v in eig_standard(C):
        x = _extract_vector(v, n)
        _, rn = qep_residual(p, lam, x)
        out.append(Eigenpair(value=lam, vector=x, residual_norm=rn))
    return out


def select_eigenpair(pairs: list[Eigenpair], target: complex) -> Eigenpair:
    """The pair minimizing ``|lam - target|``.

    Ties break toward the smaller residual norm, then the earlier index.

    Raises:
        EmptyList: if ``pairs`` is empty.
    """
    if not pairs:
        raise EmptyList("no eigenpairs to select from")
    target = complex(target)
    best = min(
        enumerate(pairs),
        key=lambda iv: (abs(iv[1].value - target), iv[1].residual_norm, iv[0]),
    )
    return best[1]
