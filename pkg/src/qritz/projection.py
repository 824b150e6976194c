"""Rayleigh-Ritz projection of a quadratic pencil onto an orthonormal basis.

Projecting (M, D, K) onto span{Q} yields the m-dimensional triple
``(Q^H M Q, Q^H D Q, Q^H K Q)``.  Eigenvalues of the projected pencil are the
Ritz values; their coefficient vectors lift through Q to Ritz vectors.  When
the projected mass matrix is nonsingular there are always exactly 2m finite
Ritz values.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import EmptyList, IndefiniteMass, NotOrthonormal, Singular
from .kernels import as_matrix, clustered_flags, orthonormality_defect
from .pencil import QuadraticPencil, qep_residual
from .solver import solve_full

#: Admission tolerance for ||Q^H Q - I|| on projection bases.
BASIS_TOL = 1e-12

#: Ritz values closer than this (relative to max |mu|) are flagged clustered:
#: the associated coefficient vectors are ill-posed and essentially arbitrary.
CLUSTER_TOL = 1e-8

#: Smallest-singular-value threshold on the projected mass matrix, taken
#: relative to the larger of the projected and original mass scales so a
#: projection that annihilates the mass matrix outright is still caught.
MASS_SIGMA_TOL = 1e-12


@dataclass(frozen=True)
class ProjectedPencil:
    """The projected triple together with the basis used to build it."""

    pencil: QuadraticPencil
    basis: np.ndarray

    @property
    def m(self) -> int:
        return self.pencil.n

    @property
    def mhat(self) -> np.ndarray:
        return self.pencil.M

    @property
    def dhat(self) -> np.ndarray:
        return self.pencil.D

    @property
    def khat(self) -> np.ndarray:
        return self.pencil.K


@dataclass(frozen=True)
class RitzPair:
    """A Ritz value with its coefficient vector and lifted Ritz vector.

    ``clustered`` marks values with a near-duplicate among the 2m Ritz
    values; the method itself cannot distinguish coefficient vectors inside
    such a cluster, so callers must treat ``coeff`` as one arbitrary choice.
    """

    value: complex
    coeff: np.ndarray
    vector: np.ndarray
    residual_norm: float
    clustered: bool


def project(p: QuadraticPencil, Q) -> ProjectedPencil:
    """Project the pencil onto span{Q} for orthonormal ``Q``.

    Raises:
        NotOrthonormal: if ``||Q^H Q - I|| > BASIS_TOL``.
    """
    Q = as_matrix(Q, "Q")
    n, m = Q.shape
    if n != p.n:
        raise NotOrthonormal(f"basis has {n} rows but the pencil has dimension {p.n}")
    if m > n:
        raise NotOrthonormal(f"basis has more columns ({m}) than rows ({n})")
    defect = orthonormality_defect(Q)
    if defect > BASIS_TOL:
        raise NotOrthonormal(f"||Q^H Q - I|| = {defect:.3e} exceeds {BASIS_TOL:.1e}")
    if not p.hermitian_pd:
        warnings.warn(
            "mass matrix not verified Hermitian positive definite; "
            "the projected pencil may have infinite Ritz values",
            IndefiniteMass,
            stacklevel=2,
        )
    Qh = Q.conj().T
    inner = QuadraticPencil(Qh @ p.M @ Q, Qh @ p.D @ Q, Qh @ p.K @ Q)
    if p.hermitian_pd and not inner.hermitian_pd:
        # Definiteness is inherited exactly; only catastrophic rounding on a
        # nearly singular M could trip this.
        raise Singular("projected mass matrix lost positive definiteness")
    return ProjectedPencil(pencil=inner, basis=Q)


def ritz_pairs(pp: ProjectedPencil, p: QuadraticPencil) -> list[RitzPair]:
    """All 2m Ritz pairs of ``p`` with respect to the basis of ``pp``.

    Raises:
        Singular: if the projected mass matrix is numerically singular, the
            regime in which the projection method itself breaks down.
    """
    sv = np.linalg.svd(pp.mhat, compute_uv=False)
    scale = max(sv[0], p.m0)
    if scale == 0.0 or sv[-1] < MASS_SIGMA_TOL * scale:
        raise Singular(
            f"projected mass matrix numerically singular "
            f"(sigma_min = {sv[-1]:.3e} against scale {scale:.3e})"
        )
    inner_pairs = solve_full(pp.pencil)
    flags = clustered_flags([ep.value for ep in inner_pairs], CLUSTER_TOL)
    out = []
    for ep, flag in zip(inner_pairs, flags):
        vector = pp.basis @ ep.vector
        _, rn = qep_residual(p, ep.value, vector)
        out.append(
            RitzPair(
                value=ep.value,
                coeff=ep.vector,
                vector=vector,
                residual_norm=rn,
                clustered=flag,
            )
        )
    return out


def select_ritz(pairs: list[RitzPair], target: complex) -> RitzPair:
    """The Ritz pair nearest the target; ties as in ``select_eigenpair``."""
    if not pairs:
        raise EmptyList("no Ritz pairs to select from")
    target = complex(target)
    best = min(
        enumerate(pairs),
        key=lambda iv: (abs(iv[1].value - target), iv[1].residual_norm, iv[0]),
    )
    return best[1]


def galerkin_defect(pp: ProjectedPencil, p: QuadraticPencil, pair: RitzPair) -> float:
    """``||Q^H (mu^2 M + mu D + K) x~||``, zero for an exact Ritz pair."""
    r, _ = qep_residual(p, pair.value, pair.vector)
    return float(np.linalg.norm(pp.basis.conj().T @ r))
