import numpy as np
import pytest

from xxzmat import fixtures
from xxzmat.errors import ParameterError, SingularConjugation
from xxzmat.operators import monodromy_blocks
from xxzmat.space_oracle import (
    QuasiLocalOp,
    adjoint_action,
    random_spin0_op,
    t_star_identity_residual,
    z_finite,
)


class TestZFinite:
    @pytest.mark.parametrize("fixture", ["P0", "P1"])
    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_unit_operator(self, fixture, m):
        p = fixtures.chain(fixture)
        ek, eka = fixtures.spectral_pair(fixture)
        X = QuasiLocalOp(m, np.eye(2**m, dtype=complex), 0)
        rng = np.random.default_rng(p.seed + m)
        xi2 = list(1.0 + 0.3 * rng.standard_normal(m))
        assert abs(z_finite(p, ek, eka, X, xi2) - 1.0) < 1e-12

    def test_sigma3_block_oracle(self, p0, p0_pair):
        ek, eka = p0_pair
        X = QuasiLocalOp(1, np.diag([1.0, -1.0]).astype(complex), 0)
        xi2 = 1.3
        got = z_finite(p0, ek, eka, X, [xi2])
        blk = monodromy_blocks(p0, np.exp(0.5 * np.log(xi2)))
        num = eka.left @ (
            (p0.qpow(p0.kappa) * blk["A"] - p0.qpow(-p0.kappa) * blk["D"]) @ ek.right
        )
        want = num / (ek.t_at(xi2) * (eka.left @ ek.right))
        assert got == pytest.approx(want)

    def test_shift_covariance(self, p0, p0_pair, rng):
        ek, eka = p0_pair
        Xp = random_spin0_op(2, rng)
        shifted = np.kron(np.diag([p0.qpow(p0.alpha), p0.qpow(-p0.alpha)]), Xp.matrix)
        lhs = z_finite(p0, ek, eka, QuasiLocalOp(3, shifted, 0), [1.0] * 3)
        rho1 = eka.t_at(1.0) / ek.t_at(1.0)
        rhs = rho1 * z_finite(p0, ek, eka, Xp, [1.0, 1.0])
        assert abs(lhs - rhs) < 1e-9 * abs(rhs)

    def test_eigenvector_scaling_invariance(self, p0, p0_pair, rng):
        from dataclasses import replace

        ek, eka = p0_pair
        X = random_spin0_op(2, rng)
        base = z_finite(p0, ek, eka, X, [1.1, 0.9])
        ek2 = replace(ek, right=3.7j * ek.right)
        eka2 = replace(eka, left=(0.2 - 2.0j) * eka.left)
        assert z_finite(p0, ek2, eka2, X, [1.1, 0.9]) == pytest.approx(base)

    def test_interval_cap(self, p0, p0_pair):
        ek, eka = p0_pair
        X = QuasiLocalOp(5, np.eye(32, dtype=complex), 0)
        with pytest.raises(ParameterError):
            z_finite(p0, ek, eka, X, [1.0] * 5)


class TestQuasiLocal:
    def test_grading_validation(self):
        bad = np.zeros((4, 4), dtype=complex)
        bad[0, 3] = 1.0  # raises S3 by 2, declared spin 0
        with pytest.raises(ParameterError):
            QuasiLocalOp(2, bad, 0)

    def test_declared_spin_accepted(self):
        raiser = np.zeros((2, 2), dtype=complex)
        raiser[0, 1] = 1.0  # sigma+
        QuasiLocalOp(1, raiser, 1)

    def test_random_spin0_commutes(self, rng):
        X = random_spin0_op(3, rng)
        from xxzmat.space_oracle import _space_sz

        sz = np.diag(_space_sz(3))
        assert np.max(np.abs(X.matrix @ sz - sz @ X.matrix)) < 1e-12


class TestAdjointAction:
    def test_empty_interval_trace(self, p0):
        """On the empty interval the conjugation is q^(alpha s3) and the
        auxiliary trace is the scalar q^alpha + q^-alpha."""
        X = QuasiLocalOp(0, np.eye(1, dtype=complex), 0)
        A = adjoint_action(p0, X, 1.9 + 0.3j, p0.alpha, [])
        tr = A.reshape(1, 2, 1, 2).trace(axis1=1, axis2=3)
        assert tr[0, 0] == pytest.approx(p0.qpow(p0.alpha) + p0.qpow(-p0.alpha))

    def test_total_trace_preserved(self, p0, rng):
        """Full-trace cyclicity: Tr factorizes through q^(alpha s3) X."""
        X = random_spin0_op(2, rng)
        A = adjoint_action(p0, X, 1.9 + 0.3j, p0.alpha, [1.0, 1.0])
        want = (p0.qpow(p0.alpha) + p0.qpow(-p0.alpha)) * np.trace(X.matrix)
        assert np.trace(A) == pytest.approx(want)

    def test_unit_point_is_cyclic_shift(self, p0):
        """T_{c,[1,m]}(1) at homogeneous points is a product of permutations."""
        from xxzmat.space_oracle import space_monodromy

        T = space_monodromy(p0, 1.0, [1.0, 1.0])
        eta = p0.qpow(0.5) * (p0.q - 1 / p0.q)
        shift = T / eta**2
        # acting as a cyclic permutation on basis states: entries 0 or 1
        mags = np.abs(shift)
        assert np.allclose(np.sort(mags.ravel())[-8:], 1.0)
        assert np.count_nonzero(mags > 1e-12) == 8
        assert np.max(np.abs((shift @ shift.conj().T) - np.eye(8))) < 1e-12

    def test_singular_point_raises(self, p0):
        X = QuasiLocalOp(1, np.eye(2, dtype=complex), 0)
        with pytest.raises(SingularConjugation):
            adjoint_action(p0, X, p0.qpow(2) * 1.0, p0.alpha, [1.0])


class TestReductionIdentity:
    @pytest.mark.parametrize("fixture", ["P0", "P1"])
    def test_random_operators(self, fixture):
        p = fixtures.chain(fixture)
        ek, eka = fixtures.spectral_pair(fixture)
        rng = np.random.default_rng(p.seed + 99)
        worst = 0.0
        for m in (1, 2, 3):
            for _ in range(7 if m < 3 else 3):
                X = random_spin0_op(m, rng)
                xi2 = list(1.0 + 0.25 * rng.standard_normal(m))
                worst = max(
                    worst,
                    t_star_identity_residual(p, ek, eka, X, xi2, 1.45 + 0.37j),
                )
        assert worst < 1e-9

    def test_homogeneous_specialization(self, p0, p0_pair, rng):
        ek, eka = p0_pair
        X = random_spin0_op(2, rng)
        res = t_star_identity_residual(p0, ek, eka, X, [1.0, 1.0], 1.45 + 0.37j)
        assert res < 1e-8

    def test_alpha_zero_reduces_to_cyclicity(self, p0, rng):
        """At alpha = 0 the identity holds with rho = 1."""
        from xxzmat.spectral import eigendata

        p = p0.replace(alpha=0.0)
        ek = eigendata(p, p.kappa)
        X = random_spin0_op(2, rng)
        res = t_star_identity_residual(p, ek, ek, X, [1.1, 0.95], 1.45 + 0.37j)
        assert res < 1e-9

    def test_rho_from_unit_operator(self, p0, p0_pair, p0_omega):
        """Conjugating the unit operator reproduces the eigenvalue ratio."""
        ek, eka = p0_pair
        for xe in (1.45 + 0.37j, 0.8 - 0.41j):
            conj = adjoint_action(
                p0, QuasiLocalOp(1, np.eye(2, dtype=complex), 0), xe, p0.alpha, [1.0]
            )
            val = z_finite(p0, ek, eka, QuasiLocalOp(2, conj, 0), [1.0, xe])
            assert abs(val - p0_omega.rho(xe)) < 1e-9 * abs(p0_omega.rho(xe))
