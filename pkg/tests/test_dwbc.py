import numpy as np
import pytest

from xxzmat import fixtures
from xxzmat.dwbc import (
    DwbcInstance,
    a_plus_monic,
    d_n_from_detA,
    det_reduction_residuals,
    dwbc_partition,
    recurrence_residual,
)
from xxzmat.errors import ParameterError
from xxzmat.operators import monodromy_blocks

Q = fixtures.D2["q"]


class TestPartitionFunction:
    def test_single_site_closed_form(self):
        tau2 = 1.21
        inst = DwbcInstance(Q, (tau2,), (0.77 + 0.3j,))
        want = np.exp(0.5 * np.log(Q)) * (Q - 1 / Q) / np.sqrt(tau2)
        assert dwbc_partition(inst) == pytest.approx(want)

    def test_permutation_symmetry(self, rng):
        tau2 = fixtures.D3["tau2"]
        xi2 = tuple(1.2 + 0.4 * rng.standard_normal(3) + 0.3j * rng.standard_normal(3))
        base = dwbc_partition(DwbcInstance(Q, tau2, xi2))
        for perm in ((2, 0, 1), (1, 0, 2)):
            v = dwbc_partition(DwbcInstance(Q, tau2, tuple(xi2[i] for i in perm)))
            assert v == pytest.approx(base)

    def test_ice_rule(self):
        inst = DwbcInstance(Q, fixtures.D3["tau2"], (1.3 + 0.2j, 0.9 - 0.4j, 1.7 + 0.1j))
        p = inst.params()
        up = np.zeros(8, dtype=complex)
        up[0] = 1.0
        vec = monodromy_blocks(p, 1.2)["B"] @ (monodromy_blocks(p, 0.9)["B"] @ up)
        down = np.zeros(8, dtype=complex)
        down[-1] = 1.0
        assert abs(down @ vec) == 0.0

    def test_reducible_tau_pair_rejected(self):
        # tau_i = q tau_j with j > i is the excluded ordering
        with pytest.raises(ParameterError):
            DwbcInstance(Q, (1.21 * Q**2, 1.21), (1.3, 0.9))

    def test_duplicate_xi_rejected(self):
        with pytest.raises(ParameterError):
            DwbcInstance(Q, (1.21, 0.81), (1.3 + 0.2j, 1.3 + 0.2j))


class TestDeterminantCounterpart:
    @pytest.mark.parametrize("label", ["D2", "D3"])
    def test_ratio_constant_over_xi(self, label, rng):
        cfg = getattr(fixtures, label)
        tau2 = cfg["tau2"]
        n = len(tau2)
        ratios = []
        for _ in range(10):
            xi2 = tuple(
                1.1 + 0.5 * rng.standard_normal(n) + 0.4j * rng.standard_normal(n)
            )
            inst = DwbcInstance(Q, tau2, xi2)
            ratios.append(d_n_from_detA(inst) / dwbc_partition(inst))
        ratios = np.array(ratios)
        assert np.max(np.abs(ratios - ratios.mean())) < 1e-8 * abs(ratios.mean())

    @pytest.mark.parametrize("label", ["D2", "D3"])
    def test_det_reductions(self, label, rng):
        cfg = getattr(fixtures, label)
        n = len(cfg["tau2"])
        xi2 = tuple(1.1 + 0.4 * rng.standard_normal(n) + 0.3j * rng.standard_normal(n))
        inst = DwbcInstance(Q, cfg["tau2"], xi2)
        r1, r2 = det_reduction_residuals(inst)
        assert r1 < 1e-10
        assert r2 < 1e-10

    def test_monic_first_row(self, rng):
        inst = DwbcInstance(Q, fixtures.D2["tau2"], (1.4 + 0.3j, 0.7 - 0.2j))
        A = a_plus_monic(inst)
        assert np.max(np.abs(A[0, 1:])) < 1e-13 * abs(A[0, 0])

    @pytest.mark.parametrize("label", ["D2", "D3"])
    def test_recurrence_calibrated(self, label, rng):
        cfg = getattr(fixtures, label)
        n = len(cfg["tau2"])
        xi_head = list(
            1.2 + 0.4 * rng.standard_normal(n - 1) + 0.3j * rng.standard_normal(n - 1)
        )
        assert recurrence_residual(Q, cfg["tau2"], xi_head) < 1e-12

    def test_joint_nonvanishing_with_overlap(self, p0, p0_pair, p0_periods):
        """On a live fixture both det A+ and the eigenvector overlap are
        comfortably nonzero (the equivalence statement at the working point)."""
        ek, eka = p0_pair
        assert abs(eka.overlap_with(ek)) > 1e-3
        assert abs(np.linalg.det(p0_periods.a_plus)) > 1.0
