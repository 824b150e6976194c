import numpy as np
import pytest

from conftest import cnormal, random_pencil, rng
from qritz.angles import vector_angle
from qritz.builtin import (
    example31_basis,
    example31_pencil,
    example31_projected_mass,
)
from qritz.errors import IndefiniteMass, NotOrthonormal, Singular
from qritz.kernels import orthonormalize, spectral_norm
from qritz.pencil import QuadraticPencil
from qritz.projection import (
    galerkin_defect,
    project,
    ritz_pairs,
    select_ritz,
)
from qritz.solver import select_eigenpair, solve_full
from qritz.subspace import perturbed_subspace


class TestProject:
    def test_identity_basis(self, g):
        p = random_pencil(g, 4)
        pp = project(p, np.eye(4))
        assert np.allclose(pp.mhat, p.M)
        assert np.allclose(pp.dhat, p.D)
        assert np.allclose(pp.khat, p.K)

    def test_builtin_projected_mass(self):
        pp = project(example31_pencil(), example31_basis())
        assert spectral_norm(pp.mhat - example31_projected_mass()) <= 1e-13

    def test_builtin_projected_sum_vanishes(self):
        pp = project(example31_pencil(), example31_basis())
        assert spectral_norm(pp.mhat + pp.dhat + pp.khat) <= 1e-13

    def test_rejects_skewed_basis(self, g):
        p = random_pencil(g, 4)
        Q = cnormal(g, 4, 2)
        with pytest.raises(NotOrthonormal):
            project(p, Q)

    def test_warns_without_hpd_mass(self):
        p = QuadraticPencil(np.array([[1.0, 1.0], [0.0, 1.0]]), np.eye(2), np.eye(2))
        with pytest.warns(IndefiniteMass):
            project(p, np.eye(2))

    def test_hpd_propagates(self, g):
        p = random_pencil(g, 5)
        Q = orthonormalize(cnormal(g, 5, 3))
        assert project(p, Q).pencil.hermitian_pd


class TestRitzPairs:
    def test_identity_basis_reproduces_eigenpairs(self, g):
        p = random_pencil(g, 3)
        pp = project(p, np.eye(3))
        ritz = ritz_pairs(pp, p)
        assert len(ritz) == 6
        exact = sorted((ep.value for ep in solve_full(p)), key=lambda z: (z.real, z.imag))
        got = sorted((rp.value for rp in ritz), key=lambda z: (z.real, z.imag))
        for a, b in zip(exact, got):
            assert abs(a - b) <= 1e-10 * max(1.0, abs(b))

    def test_builtin_double_ritz_value(self):
        p = example31_pencil()
        pp = project(p, example31_basis())
        ritz = ritz_pairs(pp, p)
        assert len(ritz) == 4
        near_one = [rp for rp in ritz if abs(rp.value - 1.0) <= 1e-9]
        assert len(near_one) == 2
        assert all(rp.clustered for rp in near_one)

    def test_perturbed_builtin_values_stay_close(self):
        p = example31_pencil()
        Q = perturbed_subspace(
            np.array([0.0, 0.0, 1.0]), example31_basis()[:, 1:], 1e-12, seed=42
        )
        ritz = ritz_pairs(project(p, Q), p)
        near_one = [rp for rp in ritz if abs(rp.value - 1.0) <= 1e-9]
        assert len(near_one) == 2

    def test_singular_projected_mass_rejected(self):
        # Indefinite Hermitian mass can project to a singular block.
        p = QuadraticPencil(np.diag([1.0, -1.0]), np.eye(2), np.eye(2))
        Q = np.array([[1.0], [1.0]]) / np.sqrt(2)
        with pytest.warns(IndefiniteMass), pytest.raises(Singular):
            ritz_pairs(project(p, Q), p)

    def test_galerkin_orthogonality(self, g):
        p = random_pencil(g, 6)
        Q = orthonormalize(cnormal(g, 6, 3))
        pp = project(p, Q)
        for rp in ritz_pairs(pp, p):
            assert galerkin_defect(pp, p, rp) <= 1e-10 * p.residual_scale(rp.value)

    def test_lifted_vector_consistency(self, g):
        p = random_pencil(g, 5)
        Q = orthonormalize(cnormal(g, 5, 2))
        pp = project(p, Q)
        for rp in ritz_pairs(pp, p):
            assert np.linalg.norm(rp.vector - Q @ rp.coeff) <= 1e-13
            assert abs(np.linalg.norm(rp.vector) - 1.0) <= 1e-12

    @pytest.mark.parametrize("seed", range(4))
    def test_exactness_for_invariant_subspace(self, seed):
        # If the true eigenvector lies in span{Q} and its Ritz value is
        # simple, the Ritz vector recovers it up to phase.
        g = rng(seed + 1300)
        p = random_pencil(g, 5)
        ep = max(solve_full(p), key=lambda e: min(
            abs(e.value - o.value) for o in solve_full(p) if abs(o.value - e.value) > 1e-9
        ))
        Q = orthonormalize(np.column_stack([ep.vector, cnormal(g, 5, 2)]))
        ritz = ritz_pairs(project(p, Q), p)
        sel = select_ritz(ritz, ep.value)
        assert abs(sel.value - ep.value) <= 1e-8
        if not sel.clustered:
            assert vector_angle(sel.vector, ep.vector).sin <= 1e-9


class TestSelectRitz:
    def test_single_pair(self, g):
        p = random_pencil(g, 2)
        pp = project(p, orthonormalize(cnormal(g, 2, 1)))
        pairs = ritz_pairs(pp, p)
        assert select_ritz(pairs[:1], 0.0) is pairs[0]

    def test_distance_rule(self, g):
        p = random_pencil(g, 3)
        pairs = ritz_pairs(project(p, np.eye(3)), p)
        target = 1.0 + 0.5j
        sel = select_ritz(pairs, target)
        assert abs(sel.value - target) == min(abs(rp.value - target) for rp in pairs)

    def test_builtin_exact_subspace_clustered_choice(self):
        p = example31_pencil()
        pairs = ritz_pairs(project(p, example31_basis()), p)
        sel = select_ritz(pairs, 1.0)
        assert abs(sel.value - 1.0) <= 1e-12
        assert sel.clustered
