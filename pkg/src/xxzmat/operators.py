"""Lattice operators on the Matsubara chain.

Tensor ordering: site 1 is the most significant (slowest) index, i.e. the
chain Hilbert space is built as kron(site 1, site 2, ..., site n).  All
traces, partial traces and sector projections respect this ordering.

The universal L operator on auxiliary space (2x2 blocks) over one site is

    L(zeta) = q^(1/2) [ zeta^2 q^((H+1)/2) - q^(-(H+1)/2)   (q-1/q) zeta F q^((H-1)/2) ]
                      [ (q-1/q) zeta q^(-(H-1)/2) E         zeta^2 q^(-(H-1)/2) - q^((H-1)/2) ]

with E, F, H acting in the (2s+1)-dimensional representation.  The
monodromy over the chain is the ordered product with site n leftmost.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ParameterError
from .model import ModelParams


@dataclass(frozen=True)
class SiteRep:
    """E, F, H in the standard (2s+1)-dimensional representation."""

    spin: Fraction
    E: np.ndarray
    F: np.ndarray
    H: np.ndarray


def qnum(x, q: complex) -> complex:
    """[x]_q = (q^x - q^-x)/(q - q^-1)."""
    lx = complex(x) * np.log(q)
    return complex((np.exp(lx) - np.exp(-lx)) / (q - 1.0 / q))


def build_spin_rep(s, q: complex) -> SiteRep:
    s = Fraction(s).limit_denominator(64)
    if s <= 0 or (2 * s).denominator != 1:
        raise ParameterError(f"invalid spin {s}")
    dim = int(2 * s) + 1
    E = np.zeros((dim, dim), dtype=complex)
    F = np.zeros((dim, dim), dtype=complex)
    H = np.zeros((dim, dim), dtype=complex)
    # basis v_0 .. v_2s, H v_j = (2s-2j) v_j, E v_j = [j] v_{j-1}, F v_j = [2s-j] v_{j+1}
    for j in range(dim):
        H[j, j] = float(2 * s) - 2 * j
        if j >= 1:
            E[j - 1, j] = qnum(j, q)
        if j + 1 < dim:
            F[j + 1, j] = qnum(2 * s - j, q)
    return SiteRep(s, E, F, H)


def _qpow_diag(H: np.ndarray, x: complex, q: complex) -> np.ndarray:
    return np.diag(np.exp(x * np.diag(H) * np.log(q)))


def build_L(rep: SiteRep, zeta: complex, q: complex):
    """2x2 auxiliary blocks of the universal L at spectral parameter zeta."""
    if zeta == 0:
        raise ParameterError("zeta must be nonzero")
    pref = np.exp(0.5 * np.log(q))
    qm = q - 1.0 / q
    Hp = _qpow_diag(rep.H + np.eye(len(rep.H)), 0.5, q)
    Hm = _qpow_diag(rep.H - np.eye(len(rep.H)), 0.5, q)
    A = pref * (zeta**2 * Hp - np.linalg.inv(Hp))
    B = pref * qm * zeta * (rep.F @ Hm)
    C = pref * qm * zeta * (np.linalg.inv(Hm) @ rep.E)
    D = pref * (zeta**2 * np.linalg.inv(Hm) - Hm)
    return {("+", "+"): A, ("+", "-"): B, ("-", "+"): C, ("-", "-"): D}


def embed_site(op: np.ndarray, m: int, dims) -> np.ndarray:
    """kron(I_before, op, I_after) with site m (1-based) in ordering site1-slowest."""
    left = int(np.prod(dims[: m - 1], initial=1))
    right = int(np.prod(dims[m:], initial=1))
    return np.kron(np.kron(np.eye(left), op), np.eye(right))


_SIGNS = ("+", "-")


def _block_mul(X: dict, Y: dict) -> dict:
    out = {}
    for a in _SIGNS:
        for b in _SIGNS:
            out[(a, b)] = sum(X[(a, c)] @ Y[(c, b)] for c in _SIGNS)
    return out


def monodromy_blocks(params: ModelParams, zeta: complex) -> dict:
    """A, B, C, D blocks of L_n(zeta/tau_n) ... L_1(zeta/tau_1) on the chain.

    B lowers the total-S3 sector by one (it creates one down spin);
    C raises it by one.
    """
    dims = params.site_dims()
    blocks = None
    for m in range(params.n, 0, -1):
        rep = build_spin_rep(params.spins[m - 1], params.q)
        tau = np.exp(0.5 * np.log(params.tau2[m - 1]))
        loc = build_L(rep, zeta / tau, params.q)
        emb = {key: embed_site(op, m, dims) for key, op in loc.items()}
        blocks = emb if blocks is None else _block_mul(blocks, emb)
    return {"A": blocks[("+", "+")], "B": blocks[("+", "-")],
            "C": blocks[("-", "+")], "D": blocks[("-", "-")]}


def build_transfer(params: ModelParams, zeta: complex, lam: complex) -> np.ndarray:
    """Twisted transfer matrix q^lam A(zeta) + q^-lam D(zeta) on the chain."""
    blk = monodromy_blocks(params, zeta)
    return params.qpow(lam) * blk["A"] + params.qpow(-lam) * blk["D"]


def total_sz(params: ModelParams) -> np.ndarray:
    dims = params.site_dims()
    out = np.zeros((int(np.prod(dims)),) * 2, dtype=complex)
    for m in range(1, params.n + 1):
        rep = build_spin_rep(params.spins[m - 1], params.q)
        out += 0.5 * embed_site(rep.H, m, dims)
    return out


def sector_indices(params: ModelParams, sector: int) -> np.ndarray:
    sz = np.real(np.diag(total_sz(params)))
    idx = np.where(np.abs(sz - sector) < 1e-9)[0]
    return idx


def spin_reversal(params: ModelParams) -> np.ndarray:
    """J: site-wise basis reversal v_j -> v_{2s-j}; J T(zeta,lam) J = T(zeta,-lam)."""
    out = np.ones((1, 1))
    for d in params.site_dims():
        out = np.kron(out, np.eye(d)[::-1])
    return out.astype(complex)


# -- q-oscillator auxiliary space -----------------------------------------


def osc_ops(N: int, q: complex):
    """Truncated q-oscillator: a |k> = (1-q^(2k)) |k-1>, a* |k> = |k+1>, D |k> = k |k>."""
    a = np.zeros((N, N), dtype=complex)
    astar = np.zeros((N, N), dtype=complex)
    D = np.diag(np.arange(N).astype(complex))
    for k in range(1, N):
        a[k - 1, k] = 1.0 - np.exp(2 * k * np.log(q))
    for k in range(N - 1):
        astar[k + 1, k] = 1.0
    return a, astar, D


def build_osc_L(zeta: complex, q: complex, N: int) -> dict:
    """Site-space 2x2 blocks, oscillator-valued, of the q-oscillator L.

        L(zeta) = [ 1 - zeta^2 q^(2D+2)   -zeta a  ] [ q^-D   0  ]
                  [ -zeta a*               1       ] [ 0    q^D ]

    Valid for spin-1/2 sites only (higher spin would need fusion).
    """
    if N < 2:
        raise ParameterError("oscillator truncation must be >= 2")
    a, astar, D = osc_ops(N, q)
    qD = np.diag(np.exp(np.arange(N) * np.log(q)))
    qDm = np.diag(np.exp(-np.arange(N) * np.log(q)))
    q2D2 = np.diag(np.exp((2 * np.arange(N) + 2) * np.log(q)))
    return {
        ("+", "+"): (np.eye(N) - zeta**2 * q2D2) @ qDm,
        ("+", "-"): -zeta * (a @ qD),
        ("-", "+"): -zeta * (astar @ qDm),
        ("-", "-"): qD,
    }
