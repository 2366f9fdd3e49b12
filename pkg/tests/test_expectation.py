import numpy as np
import pytest

from xxzmat.errors import LengthMismatch, RadiusTooLarge
from xxzmat.expectation import basis_table, bc_table_fd, z_detform
from xxzmat.omega import build_omega
from xxzmat.qabelian import period_matrices
from xxzmat.spectral import eigendata


class TestDetForm:
    def test_empty_lists(self, p0_omega):
        assert z_detform(p0_omega, [], [], []) == 1.0

    def test_single_pair_is_omega(self, p0_omega):
        zp, zm = 0.9 + 0.2j, 0.7 - 0.5j
        assert z_detform(p0_omega, [], [zp], [zm]) == pytest.approx(
            p0_omega.omega(zp, zm)
        )

    def test_single_zero_mode_is_two_rho(self, p0_omega):
        z0 = 1.21 + 0.4j
        assert z_detform(p0_omega, [z0], [], []) == pytest.approx(
            2.0 * p0_omega.rho(z0)
        )

    def test_swap_antisymmetry(self, p0_omega):
        plus = [0.9 + 0.2j, 1.6 - 0.3j]
        minus = [0.7 - 0.5j, 1.9 + 0.35j]
        a = z_detform(p0_omega, [], plus, minus)
        b = z_detform(p0_omega, [], plus[::-1], minus)
        assert a == pytest.approx(-b)

    def test_zero_mode_multiplicativity(self, p0_omega):
        plus = [0.9 + 0.2j]
        minus = [0.7 - 0.5j]
        base = z_detform(p0_omega, [], plus, minus)
        z0 = 0.83 - 0.27j
        ext = z_detform(p0_omega, [z0], plus, minus)
        assert ext == pytest.approx(2.0 * p0_omega.rho(z0) * base)

    def test_length_mismatch(self, p0_omega):
        with pytest.raises(LengthMismatch):
            z_detform(p0_omega, [], [1.1], [])


class TestBasisTable:
    def test_trivial_row_at_zero_alpha(self, p0):
        p = p0.replace(alpha=0.0)
        ek = eigendata(p, p.kappa)
        eka = eigendata(p, p.kappa + p.alpha)
        pd = period_matrices(p, ek, eka, include_b=False)
        ev = build_omega(p, ek, eka, pd)

        # only the commuting-family row is defined without the B matrices
        from xxzmat.expectation import _dft_coeffs_1d

        coeffs = _dft_coeffs_1d(lambda z: 2.0 * ev.rho(z), 0.1, 5)
        assert coeffs[0] == pytest.approx(2.0)
        assert np.max(np.abs(coeffs[1:])) < 1e-13

    def test_first_entry_is_two_rho_at_unit(self, p0_omega):
        table = basis_table(p0_omega, pmax=4)
        assert table.t_star_values[0] == pytest.approx(2.0 * p0_omega.rho(1.0))

    def test_fd_oracle_agreement(self, p0_omega):
        table = basis_table(p0_omega, pmax=4)
        fd = bc_table_fd(p0_omega, pmax=4)
        scale = np.max(np.abs(table.bc_values))
        assert np.max(np.abs(table.bc_values - fd)) < 1e-6 * scale

    def test_radius_stability(self, p0_omega):
        t1 = basis_table(p0_omega, pmax=4, radius=0.1)
        t2 = basis_table(p0_omega, pmax=4, radius=0.05)
        assert np.max(np.abs(t1.t_star_values - t2.t_star_values)) < 1e-7
        assert np.max(np.abs(t1.bc_values - t2.bc_values)) < 1e-7
        assert t1.t_star_err < 1e-7
        assert t1.bc_err < 1e-7

    def test_radius_too_large(self, p0_omega):
        with pytest.raises(RadiusTooLarge):
            basis_table(p0_omega, pmax=3, radius=0.9)
