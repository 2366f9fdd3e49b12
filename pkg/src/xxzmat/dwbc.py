"""Domain-wall partition functions and their determinant counterpart.

M_n is the exact matrix-product evaluation

    M_n(xi | tau) = prod_j xi_j^-1 <-| B(xi_1) ... B(xi_n) |+>

on a spin-1/2 chain of n sites.  D_n is built from the same data through
the (n+1)x(n+1) matrix of monomial contour integrals with the product of Q
eigenvalues replaced by the monic polynomial prod_j (z - xi_j^2).

Calibrated constants (all-spin-1/2 chains, counterclockwise contours,
bare 2 pi i):

  * contour 0 of the monomial integrals gives (-1)^n 2 pi i prod xi_j^2 at
    j = 0 and exactly 0 for j >= 1;
  * the contour at infinity gives -2 pi i q^(-2n) prod tau_m^4 at j = n and
    0 below;
  * hence det over rows/cols 0..n = (-1)^n 2 pi i prod xi_j^2 * det over 1..n.

The recurrence prefactor frozen by calibration against M_n (exact to
machine precision for n = 2..4 over several q):

    M_n(xi_1..xi_{n-1}, tau_n | tau_1..tau_n)
      = q^(1/2-n) (q^2-1) tau_n^-(2n-1) prod_{j<n} tau_j^-2
        * prod_{j != n} (q^2 xi_j^2 - tau_n^2)(q^2 tau_n^2 - tau_j^2)
        * M_{n-1}(xi_1..xi_{n-1} | tau_1..tau_{n-1})

i.e. the head-range tau^-2 product together with an extra q^(1/2-n)
tau_n^(2-2n) relative to the naive constant.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import polyutil as pu
from .errors import ParameterError
from .model import ModelParams
from .operators import monodromy_blocks
from .qabelian import Measure, contour_integral_poly


@dataclass(frozen=True)
class DwbcInstance:
    """Spin-1/2 chain plus the n spectral points of the B operators."""

    q: complex
    tau2: tuple
    xi2: tuple

    def __post_init__(self):
        object.__setattr__(self, "tau2", tuple(complex(t) for t in self.tau2))
        object.__setattr__(self, "xi2", tuple(complex(x) for x in self.xi2))
        if len(self.xi2) != len(self.tau2):
            raise ParameterError("need exactly n spectral points for n sites")
        # distinctness within each list; cross-list coincidences are allowed
        # (the recurrence is probed exactly at xi_n = tau_n)
        for vals, label in ((self.tau2, "tau^2"), (self.xi2, "xi^2")):
            for i, v in enumerate(vals):
                for w in vals[i + 1 :]:
                    if abs(v - w) < 1e-9:
                        raise ParameterError(f"{label} values must be distinct")
        q2 = complex(self.q) ** 2
        for i, ti in enumerate(self.tau2):
            for j, tj in enumerate(self.tau2):
                if j > i and abs(ti - tj * q2) < 1e-9:
                    raise ParameterError(
                        "tau_i = q tau_j with j > i: reducible tensor product"
                    )

    @property
    def n(self) -> int:
        return len(self.tau2)

    def params(self, **kw) -> ModelParams:
        defaults = dict(q=self.q, alpha=0.0, kappa=0.3, enforce_integer_spin=False,
                        spins=["1/2"] * self.n, tau2=self.tau2)
        defaults.update(kw)
        return ModelParams(**defaults)


def dwbc_partition(inst: DwbcInstance) -> complex:
    """M_n by applying the B blocks to the all-up reference state."""
    params = inst.params()
    dim = 2**inst.n
    up = np.zeros(dim, dtype=complex)
    up[0] = 1.0
    vec = up
    for x2 in inst.xi2:
        zeta = np.exp(0.5 * np.log(x2))
        vec = monodromy_blocks(params, zeta)["B"] @ vec
    down = np.zeros(dim, dtype=complex)
    down[-1] = 1.0
    pref = np.prod([np.exp(-0.5 * np.log(x2)) for x2 in inst.xi2])
    return complex(pref * (down @ vec))


def _monic_measure(inst: DwbcInstance) -> Measure:
    qq = np.ones(1, dtype=complex)
    for x2 in inst.xi2:
        qq = pu.pmul(qq, [-x2, 1.0])
    return Measure(inst.params(), qq, qq)


def a_plus_monic(inst: DwbcInstance) -> np.ndarray:
    """(n+1)x(n+1) monomial integrals with the monic product as measure."""
    meas = _monic_measure(inst)
    n = inst.n
    out = np.zeros((n + 1, n + 1), dtype=complex)
    for i in range(n + 1):
        for j in range(n + 1):
            mono = np.zeros(j + 1, dtype=complex)
            mono[j] = 1.0
            out[i, j] = contour_integral_poly(meas, +1, mono, i)
    return out


def det_reduction_residuals(inst: DwbcInstance) -> tuple:
    """Check the two determinant reductions at their calibrated constants.

    Returns (residual of det_{0..n} vs (-1)^n 2 pi i prod xi^2 det_{1..n},
             residual of the row-sum identity behind the second reduction).
    """
    A = a_plus_monic(inst)
    n = inst.n
    d_full = np.linalg.det(A)
    d_sub = np.linalg.det(A[1:, 1:])
    pref = (-1.0) ** n * 2j * np.pi * np.prod(inst.xi2)
    r1 = abs(d_full - pref * d_sub) / max(abs(d_full), 1e-300)
    # rows 0..n sum to minus the infinity row: zero below j = n, the
    # calibrated constant at j = n
    params = inst.params()
    cinf = -2j * np.pi * params.qpow(-2 * n) * np.prod(np.array(inst.tau2) ** 2)
    rowsum = A.sum(axis=0)
    target = np.zeros(n + 1, dtype=complex)
    target[n] = -cinf
    r2 = float(np.max(np.abs(rowsum - target)) / max(np.max(np.abs(A)), 1e-300))
    return float(r1), r2


def d_n_from_detA(inst: DwbcInstance) -> complex:
    """The determinant counterpart of M_n (equal to it up to a fixed constant).

    Printed prefactor with the calibrated index ranges: tau^-2 over the full
    list, the (q tau_i^2 - q^-1 tau_j^2) double product over all ordered
    pairs including i = j.
    """
    A = a_plus_monic(inst)
    n = inst.n
    q = complex(inst.q)
    det_sub = np.linalg.det(A[1:, 1:])
    pref = (-1.0) ** (n * (n - 1) // 2)
    pref *= np.prod([1.0 / t for t in inst.tau2])
    pref *= np.prod(
        [q * ti - tj / q for ti in inst.tau2 for tj in inst.tau2]
    )
    pref *= np.prod(
        [inst.tau2[i] - inst.tau2[j] for i in range(n) for j in range(i + 1, n)]
    )
    return complex(pref * det_sub)


def recurrence_residual(q: complex, tau2, xi2_head) -> float:
    """Relative defect of the M_n recurrence at xi_n = tau_n (frozen reading)."""
    tau2 = [complex(t) for t in tau2]
    xi2_head = [complex(x) for x in xi2_head]
    n = len(tau2)
    if len(xi2_head) != n - 1:
        raise ParameterError("need n-1 free spectral points")
    q2 = q * q
    lhs = dwbc_partition(DwbcInstance(q, tuple(tau2), tuple(xi2_head + [tau2[-1]])))
    m_prev = dwbc_partition(DwbcInstance(q, tuple(tau2[:-1]), tuple(xi2_head)))
    tau_n = np.exp(0.5 * np.log(tau2[-1]))
    factor = complex(np.exp((0.5 - n) * np.log(q))) * (q2 - 1.0)
    factor *= tau_n ** (-(2 * n - 1))
    factor *= np.prod([1.0 / t for t in tau2[:-1]])
    factor *= np.prod([(q2 * x - tau2[-1]) for x in xi2_head])
    factor *= np.prod([(q2 * tau2[-1] - t) for t in tau2[:-1]])
    rhs = factor * m_prev
    return float(abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1e-300))
