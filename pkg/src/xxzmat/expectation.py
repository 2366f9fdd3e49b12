"""Determinant formula for expectation values and the basis coefficient table.

The functional value on a product of creation-operator descendants is

    prod_p 2 rho(zeta0_p) * det( omega(zeta+_i, zeta-_j) )_{i,j}

and the table of values on individual basis elements is read off as Taylor
coefficients around zeta^2 = 1: order p-1 in (zeta^2-1) of 2 rho for the
commuting family, and the mixed coefficients of

    zeta^(-alpha-2) xi^(alpha+2) omega(zeta, xi)

for the fermionic pairs.  Coefficients are extracted by sampling on circles
about 1 and discrete Fourier inversion.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import polyutil as pu
from .errors import LengthMismatch, RadiusTooLarge
from .laurent import principal_power
from .omega import OmegaEvaluator


def z_detform(ev: OmegaEvaluator, zeros, plus, minus) -> complex:
    """Functional value for zero-mode points `zeros` and paired points plus/minus.

    All points are given as zeta^2 values.
    """
    zeros = [complex(z) for z in zeros]
    plus = [complex(z) for z in plus]
    minus = [complex(z) for z in minus]
    if len(plus) != len(minus):
        raise LengthMismatch(
            f"{len(plus)} plus points vs {len(minus)} minus points"
        )
    acc = 1.0 + 0.0j
    for z in zeros:
        acc *= 2.0 * ev.rho(z)
    if plus:
        mat = np.array([[ev.omega(zp, zm) for zm in minus] for zp in plus])
        acc *= complex(np.linalg.det(mat))
    return acc


@dataclass(frozen=True)
class BasisTable:
    """Values of the functional on the first P basis elements of each family."""

    radius: float
    t_star_values: np.ndarray          # index p-1 -> value on the p-th element
    bc_values: np.ndarray              # [i-1, j-1] -> value on the (i, j) pair
    t_star_err: float                  # drift under radius halving
    bc_err: float


def _check_radius(ev: OmegaEvaluator, radius: float):
    p = ev.params
    # rho poles: zeros of T(., kappa)
    for root in pu.roots_dk(ev.ek.t_poly):
        if abs(root - 1.0) < 1.5 * radius:
            raise RadiusTooLarge(f"T(., kappa) zero at {root} inside circle")
    # omega poles zeta^2 = q^(+-2) xi^2 with both near 1
    for e in (2, -2):
        s = p.qpow(e)
        if abs(s - 1.0) < radius * (1.0 + abs(s)) + radius:
            raise RadiusTooLarge(f"q^{e} too close to 1 for radius {radius}")
    for pole in p.all_finite_poles():
        if abs(pole - 1.0) < 1.5 * radius:
            raise RadiusTooLarge(f"phi pole {pole} inside extraction circle")


def _dft_coeffs_1d(f, radius: float, pmax: int, nodes: int = 32) -> np.ndarray:
    zs = 1.0 + radius * np.exp(2j * np.pi * np.arange(nodes) / nodes)
    vals = np.array([f(z) for z in zs])
    coef = np.fft.fft(vals) / nodes
    return coef[:pmax] / radius ** np.arange(pmax)


def _dft_coeffs_2d(f, radius: float, pmax: int, nodes: int = 32) -> np.ndarray:
    zs = 1.0 + radius * np.exp(2j * np.pi * np.arange(nodes) / nodes)
    vals = np.array([[f(z, y) for y in zs] for z in zs])
    coef = np.fft.fft2(vals) / nodes**2
    out = coef[:pmax, :pmax]
    scale = radius ** np.arange(pmax)
    return out / np.outer(scale, scale)


def basis_table(ev: OmegaEvaluator, pmax: int, radius: float = 0.1) -> BasisTable:
    """Taylor-coefficient table with a radius-halving error estimate."""
    _check_radius(ev, radius)
    alpha = ev.params.alpha

    def f_t(z):
        return 2.0 * ev.rho(z)

    def f_bc(z, y):
        return (
            principal_power(z, -alpha - 2)
            * principal_power(y, alpha + 2)
            * ev.omega(z, y)
        )

    t1 = _dft_coeffs_1d(f_t, radius, pmax)
    t2 = _dft_coeffs_1d(f_t, radius / 2, pmax)
    b1 = _dft_coeffs_2d(f_bc, radius, pmax)
    b2 = _dft_coeffs_2d(f_bc, radius / 2, pmax)
    return BasisTable(
        radius=radius,
        t_star_values=t1,
        bc_values=b1,
        t_star_err=float(np.max(np.abs(t1 - t2))),
        bc_err=float(np.max(np.abs(b1 - b2))),
    )


# -- independent differentiation oracle ---------------------------------------


def fornberg_weights(m: int, nodes) -> np.ndarray:
    """Finite-difference weights for the m-th derivative at 0 on given nodes."""
    x = np.asarray(nodes, dtype=float)
    n = len(x) - 1
    c = np.zeros((n + 1, m + 1))
    c1 = 1.0
    c4 = x[0]
    c[0, 0] = 1.0
    for i in range(1, n + 1):
        mn = min(i, m)
        c2 = 1.0
        c5 = c4
        c4 = x[i]
        for j in range(i):
            c3 = x[i] - x[j]
            c2 *= c3
            if j == i - 1:
                for k in range(mn, 0, -1):
                    c[i, k] = c1 * (k * c[i - 1, k - 1] - c5 * c[i - 1, k]) / c2
                c[i, 0] = -c1 * c5 * c[i - 1, 0] / c2
            for k in range(mn, 0, -1):
                c[j, k] = (c4 * c[j, k] - k * c[j, k - 1]) / c3
            c[j, 0] = c4 * c[j, 0] / c3
        c1 = c2
    return c[:, m]


def bc_table_fd(ev: OmegaEvaluator, pmax: int, h: float = 0.01) -> np.ndarray:
    """bc table by direct mixed finite differences at zeta^2 = xi^2 = 1."""
    import math

    alpha = ev.params.alpha
    nodes = np.arange(-pmax - 1, pmax + 2) * h

    def f(z, y):
        return (
            principal_power(z, -alpha - 2)
            * principal_power(y, alpha + 2)
            * ev.omega(z, y)
        )

    grid = np.array([[f(1.0 + a, 1.0 + b) for b in nodes] for a in nodes])
    out = np.zeros((pmax, pmax), dtype=complex)
    for i in range(pmax):
        wi = fornberg_weights(i, nodes)
        for j in range(pmax):
            wj = fornberg_weights(j, nodes)
            out[i, j] = (wi @ grid @ wj) / (math.factorial(i) * math.factorial(j))
    return out
