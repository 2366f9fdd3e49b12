import numpy as np
import pytest

from xxzmat import fixtures
from xxzmat import polyutil as pu
from xxzmat.classical import (
    InfSeries,
    canonical_rho,
    chain_at_nu,
    classical_weights,
    contour_period,
    curve_from_chain,
    curve_from_points,
    intersection_pair,
    pair_branch_points,
    quantum_classical_gap,
    select_classical_family,
    sigmat_numerator,
)
from xxzmat.errors import ParameterError, RootClusterAmbiguous

GENUS2_ROOTS = np.array(
    [1.4 + 0.1j, 1.7 - 0.05j, -0.9 + 0.6j, -1.1 + 0.85j, 0.2 - 1.3j, 0.45 - 1.6j]
)


@pytest.fixture(scope="module")
def synthetic():
    return curve_from_points(GENUS2_ROOTS)


@pytest.fixture(scope="module")
def synthetic_rho(synthetic):
    return canonical_rho(synthetic)


class TestInfSeries:
    def test_sqrt_squares_back(self):
        p = np.array([2.0, -1.0, 0.5, 3.0, 1.2], dtype=complex)
        s = InfSeries.from_poly_in_z(p, 20)
        r = s.sqrt(np.sqrt(p[-1]))
        back = r.mul(r)
        for k in range(-3, 10):
            assert back.coeff_u(k) == pytest.approx(s.coeff_u(k))

    def test_recip(self):
        p = np.array([1.0, 2.0, 1.5], dtype=complex)
        s = InfSeries.from_poly_in_z(p, 16)
        one = s.mul(s.recip())
        assert one.coeff_u(0) == pytest.approx(1.0)
        for k in range(1, 8):
            assert abs(one.coeff_u(k)) < 1e-13

    def test_antiderivative(self):
        # f(z) = z: int f dz = z^2/2: in u: coefficient of u^-2 is 1/2
        f = InfSeries.from_poly_in_z([0.0, 1.0], 10)
        F = f.antiderivative_z()
        assert F.coeff_u(-2) == pytest.approx(0.5)


class TestCurveGeometry:
    def test_pairing(self, synthetic):
        pairs = {frozenset(c) for c in synthetic.cuts}
        assert pairs == {frozenset((0, 1)), frozenset((2, 3)), frozenset((4, 5))}

    def test_ambiguous_pairing_raises(self):
        square = np.array([1.0, 1.0j, -1.0, -1.0j])
        with pytest.raises((RootClusterAmbiguous, ParameterError)):
            curve_from_points(square)

    def test_branch_closure_on_contours(self, synthetic):
        # total-residue sanity: the sum of all sigma_1 periods over the cut
        # contours equals minus the (vanishing) residue at infinity
        total = sum(
            contour_period(synthetic, [1.0], m) for m in range(1, synthetic.n + 1)
        )
        # sigma_1 = dz/w has no pole at 0 or infinity for genus 2; the three
        # cut contours are a homology basis relation: their sum is the cycle
        # around everything = residue at infinity = 0
        c0 = contour_period(synthetic, [1.0], 0)
        assert abs(total + c0) < 1e-8


class TestDifferentials:
    def test_first_kind_intersections(self, synthetic):
        for i in (1, 2):
            for j in (1, 2):
                v = intersection_pair(synthetic, "sigma", i, "sigmat", j)
                assert abs(v - (1.0 if i == j else 0.0)) < 1e-10

    def test_skew_blocks_vanish(self, synthetic):
        assert abs(intersection_pair(synthetic, "sigma", 1, "sigma", 2)) < 1e-12
        assert abs(intersection_pair(synthetic, "sigmat", 1, "sigmat", 2)) < 1e-12

    def test_sigmat_zero_is_exact(self, synthetic):
        for m in range(synthetic.n + 1):
            num = 0.5 * sigmat_numerator(synthetic.p_coeffs, 0)
            assert abs(contour_period(synthetic, num, m)) < 1e-10

    def test_exact_forms_have_zero_periods(self, synthetic):
        P = synthetic.p_coeffs
        dP = np.arange(1, len(P)) * P[1:]
        for k in (0, 1):
            zk = np.zeros(k + 1, dtype=complex)
            zk[k] = 1.0
            zkm = np.zeros(max(k, 1), dtype=complex)
            if k >= 1:
                zkm[k - 1] = k
            num = pu.padd(pu.pmul(zkm, P), 0.5 * pu.pmul(zk, dP))
            assert abs(contour_period(synthetic, num, 1)) < 1e-10

    def test_holomorphic_bounded_on_contours(self, synthetic):
        ell = synthetic.contours[0]
        for th in np.linspace(0, 2 * np.pi, 9):
            z = ell.point(th)
            w = synthetic.w_at(z)
            assert abs(z / w) < 1e3  # sigma_2 density stays bounded


class TestCanonicalRho:
    def test_x_matrix_symmetric(self, synthetic_rho):
        X = synthetic_rho.x_matrix
        assert np.max(np.abs(X - X.T)) < 1e-10 * max(1.0, np.max(np.abs(X)))

    def test_symmetric_in_arguments(self, synthetic_rho):
        x, y = 2.6 + 0.9j, -2.2 - 1.1j
        a = synthetic_rho.density(x, y)
        b = synthetic_rho.density(y, x)
        assert abs(a - b) < 1e-10 * abs(a)

    def test_double_pole_coefficient(self, synthetic_rho):
        y = -2.2 - 1.1j
        for eps in (1e-2, 1e-3):
            val = synthetic_rho.density(y + eps, y) * eps**2
            assert abs(val - 1.0) < 50 * eps

    def test_x_periods_vanish(self, synthetic_rho):
        from xxzmat.classical import _continue_sqrt

        data = synthetic_rho.data
        y = -2.6 - 1.9j
        wy = data.w_at(y)
        for m in (1, 2):
            ell = data.contours[m - 1]
            nodes = 512
            th = 2 * np.pi * np.arange(nodes) / nodes
            wx = data.w_at(ell.point(0.0))
            acc = 0.0 + 0.0j
            for k, t in enumerate(th):
                x = ell.point(t)
                if k > 0:
                    wx = _continue_sqrt(data.p_coeffs, x, wx)
                acc += synthetic_rho.density_with_w(x, y, wx, wy) * ell.tangent(t)
            assert abs(acc * 2 * np.pi / nodes) < 1e-8

    def test_bilinear_double_period_vanishes(self, synthetic):
        """The antisymmetrized first/second-kind two-form has vanishing
        double periods over pairs of cut contours."""
        from xxzmat.classical import _continue_sqrt, sigma_density, sigmat_density

        data = synthetic
        nodes = 96

        def loop_points(m):
            ell = data.contours[m - 1]
            th = 2 * np.pi * np.arange(nodes) / nodes
            zs = [ell.point(t) for t in th]
            ws = [data.w_at(zs[0])]
            for z in zs[1:]:
                ws.append(_continue_sqrt(data.p_coeffs, z, ws[-1]))
            dz = [ell.tangent(t) for t in th]
            return zs, ws, dz

        zs1, ws1, dz1 = loop_points(1)
        zs2, ws2, dz2 = loop_points(2)
        g = data.n - 1
        acc = 0.0 + 0.0j
        ref = 0.0 + 0.0j
        for x, wx, dx in zip(zs1, ws1, dz1):
            for y, wy, dy in zip(zs2, ws2, dz2):
                direct = sum(
                    sigma_density(data, j, x, wx) * sigmat_density(data, j, y, wy)
                    for j in range(1, g + 1)
                )
                mirrored = sum(
                    sigma_density(data, j, y, wy) * sigmat_density(data, j, x, wx)
                    for j in range(1, g + 1)
                )
                acc += (direct - mirrored) * dx * dy
                ref += direct * dx * dy
        acc *= (2 * np.pi / nodes) ** 2
        ref *= (2 * np.pi / nodes) ** 2
        assert abs(acc) < 1e-8 * max(1.0, abs(ref))


class TestChainCurve:
    def test_degree(self):
        cfg = fixtures.C0
        chains, family = select_classical_family(
            cfg["sigma_hats"], cfg["tau2"], cfg["kappa_hat"], cfg["nu_ladder"]
        )
        nu = min(chains)
        data = curve_from_chain(
            family[nu].t_poly, cfg["sigma_hats"], cfg["tau2"], cfg["kappa_hat"]
        )
        assert len(data.p_coeffs) - 1 == 2 * len(cfg["tau2"])

    def test_branch_product_is_weight_ratio(self):
        """eta+ eta- = a/d as functions of z."""
        cfg = fixtures.C0
        a_cl, d_cl = classical_weights(cfg["sigma_hats"], cfg["tau2"])
        chains, family = select_classical_family(
            cfg["sigma_hats"], cfg["tau2"], cfg["kappa_hat"], cfg["nu_ladder"]
        )
        nu = min(chains)
        t_cl = family[nu].t_poly
        data = curve_from_chain(t_cl, cfg["sigma_hats"], cfg["tau2"], cfg["kappa_hat"])
        for z in (3.5 + 1.2j, -2.8 + 2.0j):
            w = data.w_at(z)
            T = pu.pval(t_cl, z)
            d = pu.pval(d_cl, z)
            a = pu.pval(a_cl, z)
            eta_p = (T + w) / (2 * d)
            eta_m = (T - w) / (2 * d)
            assert eta_p * eta_m == pytest.approx(a / d, rel=1e-10)

    def test_branch_asymptotics(self):
        """eta(+-) tend to K^(+-1) Q_tot^2 at large z (taken at the reference
        transfer polynomial, so the limit is approached, not exact)."""
        cfg = fixtures.C0
        a_cl, d_cl = classical_weights(cfg["sigma_hats"], cfg["tau2"])
        chains, family = select_classical_family(
            cfg["sigma_hats"], cfg["tau2"], cfg["kappa_hat"], cfg["nu_ladder"]
        )
        nu = min(chains)
        t_cl = family[nu].t_poly
        data = curve_from_chain(t_cl, cfg["sigma_hats"], cfg["tau2"], cfg["kappa_hat"])
        K = np.exp(1j * np.pi * cfg["kappa_hat"])
        Qtot2 = np.exp(2j * np.pi * sum(cfg["sigma_hats"]))
        z = 6.0e3 + 1.0e3j
        w = data.w_at(z)
        T = pu.pval(t_cl, z)
        d = pu.pval(d_cl, z)
        eta_p = (T + w) / (2 * d)
        eta_m = (T - w) / (2 * d)
        # the reference transfer polynomial carries O(pi nu n) phase drift,
        # so the content at desk scale is the sheet-to-limit assignment plus
        # a coarse deviation bound
        assert abs(eta_p - K * Qtot2) < abs(eta_p - Qtot2 / K)
        assert abs(eta_m - Qtot2 / K) < abs(eta_m - K * Qtot2)
        assert abs(eta_p - K * Qtot2) < 0.5 * abs(K * Qtot2)
        assert abs(eta_m - Qtot2 / K) < 0.5 * abs(Qtot2 / K)


@pytest.fixture(scope="module")
def report():
    cfg = fixtures.C0
    return quantum_classical_gap(
        cfg["sigma_hats"], cfg["tau2"], cfg["kappa_hat"], cfg["nu_ladder"]
    )


class TestLadder:
    def test_measure_gap_decreases(self, report):
        assert report.measure_monotone

    def test_two_point_gap_decreases(self, report):
        assert report.rho_monotone

    def test_difference_term_subleading(self, report):
        assert report.bad_term_monotone

    def test_gaps_small_at_bottom(self, report):
        last = report.points[-1]
        assert last.measure_gap < 1.0
        assert last.rho_gap < 0.2

    def test_half_integer_constraint(self):
        with pytest.raises(ParameterError):
            chain_at_nu(0.15, [0.1, 0.1], [1.44, -0.64], 0.313)
