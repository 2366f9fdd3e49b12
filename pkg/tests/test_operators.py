import numpy as np
import pytest

from xxzmat.operators import (
    build_L,
    build_osc_L,
    build_spin_rep,
    build_transfer,
    monodromy_blocks,
    osc_ops,
    sector_indices,
    spin_reversal,
    total_sz,
)

Q = 0.6 + 0.25j


def qpow(x):
    return np.exp(x * np.log(Q))


class TestSpinRep:
    def test_half_spin_is_pauli(self):
        rep = build_spin_rep("1/2", Q)
        assert np.allclose(rep.E, [[0, 1], [0, 0]])
        assert np.allclose(rep.F, [[0, 0], [1, 0]])
        assert np.allclose(rep.H, np.diag([1, -1]))

    def test_spin_one_cartan(self):
        rep = build_spin_rep(1, Q)
        assert np.allclose(np.diag(rep.H), [2, 0, -2])

    def test_commutator_identity_spin_three_half(self):
        rep = build_spin_rep("3/2", Q)
        lhs = rep.E @ rep.F - rep.F @ rep.E
        rhs = (np.diag(qpow(np.diag(rep.H))) - np.diag(qpow(-np.diag(rep.H)))) / (
            Q - 1 / Q
        )
        assert np.max(np.abs(lhs - rhs)) < 1e-13

    def test_ladder_relations(self):
        rep = build_spin_rep(1, Q)
        assert np.max(np.abs(rep.H @ rep.E - rep.E @ rep.H - 2 * rep.E)) < 1e-13
        assert np.max(np.abs(rep.H @ rep.F - rep.F @ rep.H + 2 * rep.F)) < 1e-13


def l_as_matrix(zeta):
    blocks = build_L(build_spin_rep("1/2", Q), zeta, Q)
    out = np.zeros((4, 4), dtype=complex)
    pos = {"+": 0, "-": 1}
    for (r, c), m in blocks.items():
        out[pos[r] * 2 : pos[r] * 2 + 2, pos[c] * 2 : pos[c] * 2 + 2] = m
    return out


class TestLOperator:
    def test_unit_point_is_permutation(self):
        eta = qpow(0.5) * (Q - 1 / Q)
        P = np.zeros((4, 4))
        P[0, 0] = P[3, 3] = P[1, 2] = P[2, 1] = 1
        assert np.max(np.abs(l_as_matrix(1.0) - eta * P)) < 1e-14

    def test_inverse_q_point_is_singlet_projector(self):
        L = l_as_matrix(1 / Q)
        assert np.linalg.matrix_rank(L, tol=1e-10) == 1
        # annihilates the triplet states
        for vec in ([1, 0, 0, 0], [0, 0, 0, 1], [0, 1, 1, 0]):
            assert np.linalg.norm(L @ np.array(vec, dtype=complex)) < 1e-12

    def test_off_diagonal_blocks_linear_in_zeta(self):
        rep = build_spin_rep("1/2", Q)
        b1 = build_L(rep, 1.3, Q)[("+", "-")]
        b2 = build_L(rep, 2.6, Q)[("+", "-")]
        assert np.max(np.abs(b2 - 2.0 * b1)) < 1e-13

    def test_yang_baxter(self):
        def op12(M):
            return np.kron(M, np.eye(2))

        def op23(M):
            return np.kron(np.eye(2), M)

        def op13(M):
            M4 = M.reshape(2, 2, 2, 2)
            out = np.zeros((2, 2, 2, 2, 2, 2), dtype=complex)
            for a in range(2):
                for ap in range(2):
                    for c in range(2):
                        for cp in range(2):
                            out[a, :, c, ap, :, cp] = M4[a, c, ap, cp] * np.eye(2)
            return out.reshape(8, 8)

        z1, z2, z3 = 1.3 + 0.2j, 0.7 - 0.4j, 1.9 + 0.1j
        R12 = op12(l_as_matrix(z1 / z2))
        R13 = op13(l_as_matrix(z1 / z3))
        R23 = op23(l_as_matrix(z2 / z3))
        assert np.max(np.abs(R12 @ R13 @ R23 - R23 @ R13 @ R12)) < 1e-12


class TestTransfer:
    def test_commuting_family(self, p0):
        T1 = build_transfer(p0, 1.1 + 0.3j, 0.4)
        T2 = build_transfer(p0, 0.77 - 0.21j, 0.4)
        assert np.max(np.abs(T1 @ T2 - T2 @ T1)) < 1e-12

    def test_conserves_total_sz(self, p1):
        T = build_transfer(p1, 1.1 + 0.3j, 0.4)
        S = total_sz(p1)
        assert np.max(np.abs(T @ S - S @ T)) < 1e-12

    def test_spin_reversal_conjugation(self, p0):
        J = spin_reversal(p0)
        T = build_transfer(p0, 1.1 + 0.3j, 0.4)
        Tm = build_transfer(p0, 1.1 + 0.3j, -0.4)
        assert np.max(np.abs(J @ T @ J - Tm)) < 1e-13

    def test_block_diagonal_in_sectors(self, p1):
        T = build_transfer(p1, 0.9 + 0.5j, 0.4)
        sz = np.real(np.diag(total_sz(p1)))
        mask = np.abs(sz[:, None] - sz[None, :]) > 1e-9
        assert np.max(np.abs(T[mask])) < 1e-13

    def test_sector_indices(self, p0):
        assert len(sector_indices(p0, 0)) == 2
        assert len(sector_indices(p0, 1)) == 1


class TestMonodromyBlocks:
    def test_trace_reproduces_transfer(self, p0):
        z = 1.2 - 0.4j
        lam = 0.4
        blk = monodromy_blocks(p0, z)
        T = build_transfer(p0, z, lam)
        assert np.max(np.abs(p0.qpow(lam) * blk["A"] + p0.qpow(-lam) * blk["D"] - T)) < 1e-13

    def test_b_operators_commute(self, p0):
        b1 = monodromy_blocks(p0, 1.15)["B"]
        b2 = monodromy_blocks(p0, 0.8 - 0.3j)["B"]
        assert np.max(np.abs(b1 @ b2 - b2 @ b1)) < 1e-13

    def test_b_lowers_sector(self, p0):
        B = monodromy_blocks(p0, 1.3)["B"]
        sz = np.real(np.diag(total_sz(p0)))
        for r in range(len(sz)):
            for c in range(len(sz)):
                if abs(B[r, c]) > 1e-12:
                    assert sz[r] == pytest.approx(sz[c] - 1.0)

    def test_single_site_b_element(self):
        from xxzmat.model import ModelParams

        tau2 = 1.21
        p = ModelParams(q=Q, alpha=0.0, kappa=0.3, spins=["1/2"], tau2=[tau2],
                        enforce_integer_spin=False)
        xi = 0.77 + 0.31j
        B = monodromy_blocks(p, xi)["B"]
        want = qpow(0.5) * (Q - 1 / Q) * xi / np.sqrt(tau2)
        assert B[1, 0] == pytest.approx(want)


class TestOscillator:
    def test_commutation_convention(self):
        a, astar, _ = osc_ops(12, Q)
        lhs = a @ astar - Q**2 * astar @ a
        want = (1 - Q**2) * np.eye(12)
        # the last diagonal entry feels the truncation; check below cutoff
        assert np.max(np.abs((lhs - want)[:-1, :-1])) < 1e-13

    def test_number_operator_action(self):
        a, astar, _ = osc_ops(8, Q)
        n_op = astar @ a
        for k in range(1, 7):
            vec = np.zeros(8)
            vec[k] = 1.0
            got = n_op @ vec
            assert got[k] == pytest.approx(1 - Q ** (2 * k))

    def test_block_structure(self):
        N = 6
        zeta = 1.3 + 0.2j
        blocks = build_osc_L(zeta, Q, N)
        qD = np.diag(qpow(np.arange(N)))
        assert np.max(np.abs(blocks[("-", "-")] - qD)) < 1e-14
        lower = blocks[("+", "-")]
        assert np.max(np.abs(np.tril(lower, 0))) < 1e-14
        for k in range(1, N):
            assert lower[k - 1, k] == pytest.approx(-zeta * (1 - Q ** (2 * k)) * qpow(k))
