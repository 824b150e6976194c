"""Convergence diagnostics and a-priori bounds for projected quadratic pencils.

The machinery here quantifies, for one target eigenpair ``(lam1, x1)`` and
one search space span{Q}:

* how close the nearest Ritz value must be (an Elsner-type bound driven by a
  rank-one perturbation of the projected pencil that makes ``lam1`` exact);
* how close the Ritz vector is, conditional on the separation of ``lam1``
  from the rest of the projected spectrum (``sep`` of the deflated
  complement); and
* how close the refined vector is, conditional only on separation in the
  full-size pencil, which holds whenever ``lam1`` is simple.

``sep(mu, (L, N)) = sigma_min(L - mu N)`` throughout; a vanishing ``sep``
voids the corresponding hypothesis, which is reported as an infinite bound
rather than an exception so sweep tables stay rectangular.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .angles import Angle, stacked_subspace_angle, subspace_angle, vector_angle
from .errors import (
    BadNorm,
    NotAnEigenpair,
    OrthogonalSubspace,
    QritzError,
    ZeroBv,
    ZeroEigenvalue,
)
from .kernels import as_matrix, as_vector, spectral_norm, solve_linear, unitary_completion
from .pencil import QuadraticPencil, linearize, stack_vector
from .projection import ProjectedPencil, project, ritz_pairs, select_ritz
from .refined import refined_ritz
from .solver import select_eigenpair, solve_full

#: Residual admission threshold for deflation, relative to ||A|| + |lam| ||B||.
EIGPAIR_TOL = 1e-8

#: Relative threshold under which a separation counts as vanished and the
#: bound that divides by it is reported as +inf.
SEP_FLOOR = 1e-14


@dataclass(frozen=True)
class Deflation:
    """Unitary deflation of one eigenvalue from a matrix pair.

    ``[y1, Y]^H A [v1, X] = [[alpha, s^H], [0, L]]`` and likewise for B with
    ``(beta, t^H, N)``; the deflated eigenvalue is ``alpha / beta`` and the
    complement pair ``(L, N)`` carries the remaining spectrum.
    """

    alpha: complex
    beta: complex
    s: np.ndarray
    t: np.ndarray
    L: np.ndarray
    N: np.ndarray
    y1: np.ndarray
    Y: np.ndarray
    X: np.ndarray

    @property
    def eigenvalue(self) -> complex:
        return self.alpha / self.beta


@dataclass(frozen=True)
class PerturbationTriple:
    """Rank-one perturbations making a reference eigenpair exact after projection.

    With ``r1`` the projected residual of the normalized coefficient vector
    ``q1_hat`` at ``lam1``, the three matrices are ``-r1 q1_hat^H`` scaled by
    ``1/(3 lam1^2)``, ``1/(3 lam1)`` and ``1/3`` respectively.  Their norms
    are bounded by ``norm_bounds`` (one third of the residual scale, weighted
    per matrix, times tan(theta1)).
    """

    EM: np.ndarray
    ED: np.ndarray
    EK: np.ndarray
    norm_bounds: tuple[float, float, float]


#: Marker used in reports for fields whose computation failed.
NOT_AVAILABLE = None


@dataclass(frozen=True)
class DiagnosticsReport:
    """Angles, separations, perturbation-based bounds for one approximate pair.

    Fields that could not be computed (a prerequisite stage failed) are None.
    Bounds whose hypothesis fails numerically (vanishing sep) are ``inf``.
    """

    ref_value: complex
    sin_theta1: float
    tan_theta1: float
    ritz_value: complex | None
    ritz_value_error: float | None
    ritz_angle: float | None
    refined_angle: float | None
    ritz_residual: float | None
    refined_residual: float | None
    clustered: bool | None
    sep_full: float | None
    sep_projected: float | None
    elsner_bound: float | None
    ritz_vector_bound: float | None
    refined_vector_bound: float | None


def deflate(A, B, lam: complex, v) -> Deflation:
    """Deflate the eigenpair ``(lam, v)`` from the pair ``(A, B)``.

    The left vector is chosen as ``y1 = B v / ||B v||``, which zeroes both
    lower-left blocks simultaneously for every finite ``lam`` (including 0):
    ``Y^H B v = 0`` by construction and ``Y^H A v = lam Y^H B v = 0``.

    Raises:
        NotAnEigenpair: if ``||A v - lam B v||`` exceeds
            ``EIGPAIR_TOL * (||A|| + |lam| ||B||)``.
        ZeroBv: if ``||B v|| <= 1e-14 ||B||`` (no left vector available).
    """
    A = as_matrix(A, "A")
    B = as_matrix(B, "B")
    v = as_vector(v, "v")
    lam = complex(lam)
    v = v / np.linalg.norm(v)
    norm_a = spectral_norm(A)
    norm_b = spectral_norm(B)
    res = np.linalg.norm(A @ v - lam * (B @ v))
    scale = norm_a + abs(lam) * norm_b
    if res > EIGPAIR_TOL * scale:
        raise NotAnEigenpair(f"residual {res:.3e} exceeds {EIGPAIR_TOL:.1e} * {scale:.3e}")
    Bv = B @ v
    nb = np.linalg.norm(Bv)
    if nb <= 1e-14 * norm_b:
        raise ZeroBv(f"||B v|| = {nb:.3e} is numerically zero")
    y1 = Bv / nb
    X = unitary_completion(v)
    Y = unitary_completion(y1)
    L = Y.conj().T @ A @ X
    N = Y.conj().T @ B @ X
    alpha = complex(y1.conj() @ (A @ v))
    beta = complex(y1.conj() @ Bv)
    s = X.conj().T @ (A.conj().T @ y1)
    t = X.conj().T @ (B.conj().T @ y1)
    return Deflation(alpha=alpha, beta=beta, s=s, t=t, L=L, N=N, y1=y1, Y=Y, X=X)


def sep(mu: complex, L, N) -> float:
    """``sigma_min(L - mu N)``: separation of ``mu`` from the pair (L, N).

    Zero means ``mu`` collides with an eigenvalue of (L, N).  An empty pair
    separates everything, so the value is +inf.
    """
    L = np.asarray(L, dtype=np.complex128)
    N = np.asarray(N, dtype=np.complex128)
    if L.size == 0:
        return math.inf
    sv = np.linalg.svd(L - complex(mu) * N, compute_uv=False)
    return float(sv[-1])


def residual_angle_bound(r_norm: float, sep_val: float) -> float:
    """The eigenvector angle bound ``||r|| / sep``; +inf when sep vanishes."""
    if r_norm < 0.0 or sep_val < 0.0:
        raise ValueError("r_norm and sep_val must be nonnegative")
    if r_norm == 0.0:
        return 0.0
    if sep_val <= SEP_FLOOR * r_norm:
        return math.inf
    return r_norm / sep_val


def perturbation_triple(
    p: QuadraticPencil, pp: ProjectedPencil, lam1: complex, x1
) -> PerturbationTriple:
    """Rank-one triple making ``(lam1, q1_hat)`` exact for the perturbed projection.

    Raises:
        ZeroEigenvalue: if ``lam1 == 0`` (the scaling divides by it).
        OrthogonalSubspace: if ``x1`` is numerically orthogonal to span{Q}.
    """
    lam1 = complex(lam1)
    if lam1 == 0:
        raise ZeroEigenvalue("the perturbation construction requires lam1 != 0")
    x1 = as_vector(x1, "x1")
    x1 = x1 / np.linalg.norm(x1)
    q1 = pp.basis.conj().T @ x1
    cos = np.linalg.norm(q1)
    if cos <= 1e-14:
        raise OrthogonalSubspace("x1 is orthogonal to the projection subspace")
    q1_hat = q1 / cos
    inner = pp.pencil
    r1 = lam1 * (lam1 * (inner.M @ q1_hat) + inner.D @ q1_hat) + inner.K @ q1_hat
    outer = np.outer(r1, q1_hat.conj())
    EM = -outer / (3.0 * lam1 * lam1)
    ED = -outer / (3.0 * lam1)
    EK = -outer / 3.0
    theta = subspace_angle(pp.basis, x1)
    a = abs(lam1)
    bound_m = (p.m0 + p.d0 / a + p.k0 / (a * a)) * theta.tan / 3.0
    bound_d = (a * p.m0 + p.d0 + p.k0 / a) * theta.tan / 3.0
    bound_k = (a * a * p.m0 + a * p.d0 + p.k0) * theta.tan / 3.0
    return PerturbationTriple(EM=EM, ED=ED, EK=EK, norm_bounds=(bound_m, bound_d, bound_k))


def _companion_blocks(M: np.ndarray, D: np.ndarray, K: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    m = M.shape[0]
    eye = np.eye(m, dtype=np.complex128)
    zero = np.zeros((m, m), dtype=np.complex128)
    A = np.block([[-D, -K], [eye, zero]])
    B = np.block([[M, zero], [zero, eye]])
    return A, B


def elsner_bound(pp: ProjectedPencil, pert: PerturbationTriple) -> float:
    """Eigenvalue-distance bound between the projected pencil and its perturbation.

    Forms the companion matrices ``C = Bh^{-1} Ah`` of the projected pencil
    and ``Ct`` of the perturbed one and returns

        (||C|| + ||Ct||)^(1 - 1/(2m)) * ||C - Ct||^(1/(2m)),

    which dominates the distance from the reference eigenvalue to the
    nearest Ritz value.

    Raises:
        Singular: if either companion mass block fails the pivot threshold.
    """
    inner = pp.pencil
    m = inner.n
    Ah, Bh = _companion_blocks(inner.M, inner.D, inner.K)
    At, Bt = _companion_blocks(inner.M + pert.EM, inner.D + pert.ED, inner.K + pert.EK)
    C = solve_linear(Bh, Ah)
    Ct = solve_linear(Bt, At)
    gap = spectral_norm(C - Ct)
    total = spectral_norm(C) + spectral_norm(Ct)
    k = 2 * m
    return float(total ** (1.0 - 1.0 / k) * gap ** (1.0 / k))


def ritz_vector_bound(
    lam1: complex, m0: float, d0: float, k0: float, theta1: float, sep_proj: float
) -> float:
    """A-priori Ritz-vector angle bound; +inf when the separation vanishes.

    ``sin(theta1) + (|lam1|^2 m0 + |lam1| d0 + k0) / sep_proj * tan(theta1)``
    with ``sep_proj`` the separation of ``lam1`` from the deflated complement
    of the projected companion pair.
    """
    if not 0.0 <= theta1 < math.pi / 2.0:
        raise ValueError("theta1 must lie in [0, pi/2)")
    a = abs(complex(lam1))
    num = a * a * m0 + a * d0 + k0
    if sep_proj <= SEP_FLOOR * num:
        return math.inf
    return math.sin(theta1) + num / sep_proj * math.tan(theta1)


def refined_vector_bound(
    lam1: complex,
    mu1: complex,
    norm_b: float,
    norm_a_minus: float,
    theta1: float,
    sep_full: float,
) -> float:
    """A-priori refined-vector angle bound; +inf when the separation vanishes.

    ``sqrt(1+|lam1|^2) (|lam1-mu1| (||B|| + ||A - mu1 B||) +
    ||A - mu1 B|| sin(theta1)) / (cos(theta1) sep_full)`` with ``sep_full``
    the separation of ``mu1`` from the deflated complement of the full-size
    companion pair.  Since that separation tends to a fixed positive constant
    for a simple eigenvalue, this bound vanishes with theta1 unconditionally.
    """
    if not 0.0 <= theta1 < math.pi / 2.0:
        raise ValueError("theta1 must lie in [0, pi/2)")
    if sep_full <= SEP_FLOOR * (norm_b + norm_a_minus):
        return math.inf
    lam1 = complex(lam1)
    mu1 = complex(mu1)
    num = math.sqrt(1.0 + abs(lam1) ** 2) * (
        abs(lam1 - mu1) * (norm_b + norm_a_minus) + norm_a_minus * math.sin(theta1)
    )
    return num / (math.cos(theta1) * sep_full)


def stacked_angle_inequality_check(u, u_tilde) -> bool:
    """Check ``sin(angle of lower blocks) <= min(||u||, ||u~||) sin(angle of wholes)``.

    Both stacked vectors must have unit-norm lower halves.

    Raises:
        BadNorm: if a lower block is not unit length within 1e-12.
    """
    u = as_vector(u, "u")
    ut = as_vector(u_tilde, "u_tilde")
    if u.size != ut.size or u.size % 2:
        raise ValueError("expected two stacked vectors of one even dimension")
    n = u.size // 2
    u1, ut1 = u[n:], ut[n:]
    for blk in (u1, ut1):
        if abs(np.linalg.norm(blk) - 1.0) > 1e-12:
            raise BadNorm("lower blocks must be unit length")
    lhs = vector_angle(u1, ut1).sin
    rhs = min(np.linalg.norm(u), np.linalg.norm(ut)) * vector_angle(u, ut).sin
    return bool(lhs <= rhs + 1e-12)


def refined_residual_identity_check(p: QuadraticPencil, Q, mu: complex, z) -> bool:
    """Check ``||(A - mu B) [mu Qz; Qz]|| == ||(mu^2 M + mu D + K) Qz||``.

    The stacked form of the residual carries no extra factor for the raw
    (unnormalized) stacked vector; this identity is what ties refined
    extraction to the linearized residual.
    """
    Q = as_matrix(Q, "Q")
    z = as_vector(z, "z")
    mu = complex(mu)
    qz = Q @ z
    w = np.concatenate([mu * qz, qz])
    lp = linearize(p)
    lhs = float(np.linalg.norm(lp.A @ w - mu * (lp.B @ w)))
    rhs = float(np.linalg.norm(mu * (mu * (p.M @ qz) + p.D @ qz) + p.K @ qz))
    scale = max(1.0, p.residual_scale(mu))
    return bool(abs(lhs - rhs) <= 1e-12 * scale)


def full_diagnostics(
    p: QuadraticPencil, Q, target: complex, x1_ref=None
) -> DiagnosticsReport:
    """Assemble every diagnostic for one reference eigenpair and one basis.

    When ``x1_ref`` is given, ``(target, x1_ref)`` is taken as the reference
    eigenpair; otherwise the reference is the full-solve eigenpair nearest
    ``target``.  Stages that fail leave their fields None while independent
    fields are still filled.
    """
    Q = as_matrix(Q, "Q")
    if x1_ref is not None:
        lam1 = complex(target)
        x1 = as_vector(x1_ref, "x1_ref")
        x1 = x1 / np.linalg.norm(x1)
    else:
        ref = select_eigenpair(solve_full(p), target)
        lam1, x1 = ref.value, ref.vector

    theta = subspace_angle(Q, x1)
    pp = project(p, Q)

    mu1 = None
    ritz_err = None
    ritz_angle = None
    ritz_res = None
    clustered = None
    sel = None
    try:
        pairs = ritz_pairs(pp, p)
        sel = select_ritz(pairs, lam1)
        mu1 = sel.value
        ritz_err = abs(mu1 - lam1)
        ritz_angle = vector_angle(x1, sel.vector).sin
        ritz_res = sel.residual_norm
        clustered = sel.clustered
    except QritzError:
        pass

    refined_angle = None
    refined_res = None
    if mu1 is not None:
        try:
            rr = refined_ritz(p, Q, mu1)
            refined_angle = vector_angle(x1, rr.vector).sin
            refined_res = rr.residual_norm
        except QritzError:
            pass

    lp = linearize(p)
    sep_full = None
    if mu1 is not None:
        try:
            v1 = stack_vector(lam1, x1)
            dl = deflate(lp.A, lp.B, lam1, v1)
            sep_full = sep(mu1, dl.L, dl.N)
        except QritzError:
            pass

    sep_projected = None
    if sel is not None:
        try:
            Ah, Bh = _companion_blocks(pp.mhat, pp.dhat, pp.khat)
            vh = stack_vector(mu1, sel.coeff)
            dl_proj = deflate(Ah, Bh, mu1, vh)
            sep_projected = sep(lam1, dl_proj.L, dl_proj.N)
        except QritzError:
            pass

    elsner = None
    try:
        pert = perturbation_triple(p, pp, lam1, x1)
        elsner = elsner_bound(pp, pert)
    except QritzError:
        pass

    bound_ritz = None
    if sep_projected is not None:
        bound_ritz = ritz_vector_bound(lam1, p.m0, p.d0, p.k0, theta.radians, sep_projected)

    bound_refined = None
    if sep_full is not None and mu1 is not None:
        norm_b = spectral_norm(lp.B)
        norm_a_minus = spectral_norm(lp.A - mu1 * lp.B)
        bound_refined = refined_vector_bound(
            lam1, mu1, norm_b, norm_a_minus, theta.radians, sep_full
        )

    return DiagnosticsReport(
        ref_value=lam1,
        sin_theta1=theta.sin,
        tan_theta1=theta.tan,
        ritz_value=mu1,
        ritz_value_error=ritz_err,
        ritz_angle=ritz_angle,
        refined_angle=refined_angle,
        ritz_residual=ritz_res,
        refined_residual=refined_res,
        clustered=clustered,
        sep_full=sep_full,
        sep_projected=sep_projected,
        elsner_bound=elsner,
        ritz_vector_bound=bound_ritz,
        refined_vector_bound=bound_refined,
    )
