"""Brute-force space-direction functional and the shift-reduction identity.

The finite-interval functional over m space sites with inhomogeneities
xi_1..xi_m is

    Z[X] = Tr_{1..m} <L| T_1(xi_1) q^(kappa s3_1) ... T_m(xi_m) q^(kappa s3_m) X |R>
           / ( prod_j T(xi_j, kappa) * <L|R> )

where T_j(xi) is the chain monodromy with space site j as the auxiliary
two-dimensional space, <L| / |R> are the dominant left/right vectors at
twists kappa+alpha / kappa, and X acts on the m space sites.

The reduction identity under test: extending the interval by one auxiliary
site c = m+1 and inserting the conjugated operator

    A(X) = T_{c,[1,m]}(xi_c) q^(alpha s3_c) X T_{c,[1,m]}(xi_c)^(-1)

multiplies the functional value by rho(xi_c).  (Two readings of the
overall constant were run; the factor-2 variant, i.e. 2 * Z[A(X)] against
2 rho Z[X], is the one that holds and is frozen here as Z[A(X)] = rho Z[X].)

Everything is dense and deliberately small: the interval is capped at four
sites and the chain dimension at 36.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    NonDegenerateFail,
    ParameterError,
    SingularConjugation,
)
from .model import ModelParams
from .operators import build_L, build_spin_rep, embed_site
from .spectral import EigenData

_SIGNS = ("+", "-")
MAX_INTERVAL = 4
MAX_CHAIN_DIM = 36


@dataclass(frozen=True)
class QuasiLocalOp:
    """Operator on (C^2)^(x m) with a declared S3-grading defect."""

    m: int
    matrix: np.ndarray
    spin: int = 0

    def __post_init__(self):
        dim = 2**self.m
        if self.matrix.shape != (dim, dim):
            raise ParameterError(f"matrix must be {dim}x{dim} for m={self.m}")
        # grading: X may only map the S3 = mu eigenspace into S3 = mu + spin
        sz = _space_sz(self.m)
        off = np.abs(sz[:, None] - sz[None, :] - self.spin) > 1e-9
        bad = float(np.max(np.abs(self.matrix[off]), initial=0.0))
        if bad > 1e-12 * max(1.0, float(np.max(np.abs(self.matrix)))):
            raise ParameterError("matrix entries violate the declared spin grading")


def _space_sz(m: int) -> np.ndarray:
    sz = np.zeros(2**m)
    for j in range(1, m + 1):
        sz += 0.5 * np.real(np.diag(embed_site(np.diag([1.0, -1.0]), j, (2,) * m)))
    return sz


def random_spin0_op(m: int, rng) -> QuasiLocalOp:
    """Seeded random operator commuting with the total space S3."""
    dim = 2**m
    sz = _space_sz(m)
    mat = np.zeros((dim, dim), dtype=complex)
    for r in range(dim):
        for c in range(dim):
            if abs(sz[r] - sz[c]) < 1e-9:
                mat[r, c] = rng.standard_normal() + 1j * rng.standard_normal()
    return QuasiLocalOp(m, mat, 0)


def _site_monodromy_blocks(params: ModelParams, zeta: complex, kappa: complex):
    """2x2 space-site blocks of T(zeta) q^(kappa s3) as chain operators."""
    dims = params.site_dims()
    blocks = None
    for mm in range(params.n, 0, -1):
        rep = build_spin_rep(params.spins[mm - 1], params.q)
        tau = np.exp(0.5 * np.log(params.tau2[mm - 1]))
        loc = build_L(rep, zeta / tau, params.q)
        emb = {key: embed_site(op, mm, dims) for key, op in loc.items()}
        if blocks is None:
            blocks = emb
        else:
            blocks = {
                (a, b): sum(blocks[(a, c)] @ emb[(c, b)] for c in _SIGNS)
                for a in _SIGNS
                for b in _SIGNS
            }
    tw = {"+": params.qpow(kappa), "-": params.qpow(-kappa)}
    return {(a, b): blocks[(a, b)] * tw[b] for a in _SIGNS for b in _SIGNS}


def z_finite(params: ModelParams, ek: EigenData, eka: EigenData,
             X: QuasiLocalOp, xi2) -> complex:
    """The finite-interval functional; xi2 are the m squared inhomogeneities."""
    m = X.m
    xi2 = [complex(x) for x in xi2]
    if len(xi2) != m:
        raise ParameterError(f"need {m} inhomogeneities, got {len(xi2)}")
    if m > MAX_INTERVAL:
        raise ParameterError(f"interval length {m} exceeds cap {MAX_INTERVAL}")
    dim_m = int(np.prod(params.site_dims()))
    if dim_m > MAX_CHAIN_DIM:
        raise ParameterError(f"chain dimension {dim_m} exceeds cap {MAX_CHAIN_DIM}")
    den_overlap = eka.overlap_with(ek)
    if abs(den_overlap) < 1e-12 * max(
        1.0, float(np.linalg.norm(eka.left)) * float(np.linalg.norm(ek.right))
    ):
        raise NonDegenerateFail("dominant eigenvectors are numerically orthogonal")
    # sweep sites left to right; rows[pattern] = <L| M^(1) ... M^(j), row vectors
    rows = {((), ()): eka.left.copy()}
    for j in range(1, m + 1):
        zeta = np.exp(0.5 * np.log(xi2[j - 1]))
        blk = _site_monodromy_blocks(params, zeta, params.kappa)
        new = {}
        for (rpat, cpat), vec in rows.items():
            for a in _SIGNS:
                for b in _SIGNS:
                    new[(rpat + (a,), cpat + (b,))] = vec @ blk[(a, b)]
        rows = new
    dim = 2**m
    S = np.zeros((dim, dim), dtype=complex)
    order = {"+": 0, "-": 1}
    for (rpat, cpat), vec in rows.items():
        r = sum(order[s] << (m - 1 - i) for i, s in enumerate(rpat))
        c = sum(order[s] << (m - 1 - i) for i, s in enumerate(cpat))
        S[r, c] = vec @ ek.right
    tvals = np.prod([ek.t_at(x) for x in xi2])
    return complex(np.trace(S @ X.matrix)) / (tvals * den_overlap)


def space_monodromy(params: ModelParams, zeta2: complex, xi2) -> np.ndarray:
    """T_{c,[1,m]}(zeta) = R_{c,m}(zeta/xi_m) ... R_{c,1}(zeta/xi_1) on c + m sites.

    c is ordered as the last (fastest) site, matching its role as site m+1.
    """
    m = len(xi2)
    rep = build_spin_rep("1/2", params.q)
    dims = (2,) * (m + 1)  # sites 1..m then c
    out = np.eye(2 ** (m + 1), dtype=complex)
    for j in range(m, 0, -1):
        ratio = np.exp(0.5 * (np.log(complex(zeta2)) - np.log(complex(xi2[j - 1]))))
        loc = build_L(rep, ratio, params.q)
        mat = np.zeros((2 ** (m + 1),) * 2, dtype=complex)
        for (a, b), op in loc.items():
            aux = np.zeros((2, 2), dtype=complex)
            aux[{"+": 0, "-": 1}[a], {"+": 0, "-": 1}[b]] = 1.0
            mat += np.kron(embed_site(op, j, (2,) * m), aux)
        out = out @ mat
    return out


def adjoint_action(params: ModelParams, X: QuasiLocalOp, zeta2: complex,
                   alpha: complex, xi2=None) -> np.ndarray:
    """T_{c,[1,m]}(zeta) q^(alpha s3_c) X T_{c,[1,m]}(zeta)^(-1) on m+1 sites."""
    m = X.m
    xi2 = [1.0] * m if xi2 is None else [complex(x) for x in xi2]
    for x in xi2:
        for shift in (2.0, -2.0):
            if abs(zeta2 / x - params.qpow(shift)) < 1e-9:
                raise SingularConjugation(
                    f"zeta^2/xi_j^2 = q^{shift}: space monodromy degenerates"
                )
    T = space_monodromy(params, zeta2, xi2)
    cond = np.linalg.cond(T)
    if not np.isfinite(cond) or cond > 1e12:
        raise SingularConjugation(f"space monodromy condition number {cond:.2e}")
    s3c = np.kron(np.eye(2**m), np.diag([1.0, -1.0]))
    qac = np.kron(np.eye(2**m), np.diag([params.qpow(alpha), params.qpow(-alpha)]))
    Xext = np.kron(X.matrix, np.eye(2))
    return T @ qac @ Xext @ np.linalg.inv(T)


def t_star_identity_residual(params: ModelParams, ek: EigenData, eka: EigenData,
                             X: QuasiLocalOp, xi2, xi_extra2: complex) -> float:
    """Relative defect of Z[A(X)] = rho(xi_extra) Z[X] on the frozen reading."""
    conj = adjoint_action(params, X, xi_extra2, params.alpha, xi2)
    Xbig = QuasiLocalOp(X.m + 1, conj, X.spin)
    lhs = z_finite(params, ek, eka, Xbig, list(xi2) + [xi_extra2])
    rho = eka.t_at(xi_extra2) / ek.t_at(xi_extra2)
    rhs = rho * z_finite(params, ek, eka, X, xi2)
    return abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1e-30)
