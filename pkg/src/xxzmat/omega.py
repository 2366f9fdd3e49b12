"""The two target functions rho(zeta) and omega(zeta, xi).

rho(zeta) = T(zeta, kappa+alpha) / T(zeta, kappa).

omega is evaluated from the closed form

    omega(z, y) = 4/(T_k(z) T_k(y)) * v+(z)^t (A+)^-1 B+ v-(y) + omega_sym(z, y)

with v+-_j = zeta^(+-alpha+2j), plus the symmetric part built from the three
psi shifts.  An independent construction solves the linear characterization
(singular part + n+1 normalization integrals, system matrix = A+) and exists
purely as an oracle; the two must agree wherever both are defined.

Twist bookkeeping: every function of zeta here is zeta^alpha times a
rational function of z = zeta^2.  Internally we work with the "stripped"
values (the zeta^alpha factor removed, the xi^-alpha factor kept), which are
what the contour residue sums need; the public evaluators put the zeta^alpha
back via the principal branch.

The normalization integrals always use the contour-side rewrite of the
double-difference term,

    int T_k Dbar_z Dbar_y Dinv psi * (measure)
      = int Dbar_y psi(zeta/xi) Q-(kappa+alpha) (a Q+(q^-1 zeta) - d Q+(q zeta)) phi,

so no q-primitive of a rational kernel is ever materialized.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import polyutil as pu
from .errors import DivideByZeroT, PoleHit, SingularA
from .laurent import principal_power
from .model import ModelParams
from .qabelian import PeriodData, contour_integral_rational
from .spectral import EigenData


def _tw(z: complex, gamma: complex) -> complex:
    return principal_power(z, gamma)


@dataclass(frozen=True)
class OmegaEvaluator:
    """Caches everything needed to evaluate rho and omega for one chain."""

    params: ModelParams
    ek: EigenData          # twist kappa
    eka: EigenData         # twist kappa + alpha
    periods: PeriodData
    m_cached: np.ndarray = field(default=None)
    _tt_quot: np.ndarray = field(default=None)

    def __post_init__(self):
        if self.periods.b_plus is not None:
            object.__setattr__(self, "m_cached", self.periods.a_plus_inv_b_plus())
        # (T_k(x) T_ka(y) - T_k(y) T_ka(x)) / (x - y), exact
        object.__setattr__(
            self, "_tt_quot", pu.antisym_quotient(self.ek.t_poly, self.eka.t_poly)
        )

    # -- scalars -----------------------------------------------------------

    def t_k(self, z: complex) -> complex:
        return pu.pval(self.ek.t_poly, z)

    def t_ka(self, z: complex) -> complex:
        return pu.pval(self.eka.t_poly, z)

    def rho(self, z: complex) -> complex:
        den = self.t_k(z)
        if abs(den) < 1e-12 * max(1.0, np.max(np.abs(self.ek.t_poly))):
            raise DivideByZeroT(f"T(zeta, kappa) vanishes at zeta^2 = {z}")
        return self.t_ka(z) / den

    # -- psi shifts, zeta-twist stripped ------------------------------------

    def _psi_strip(self, z: complex, y: complex, shift: int) -> complex:
        """zeta^-alpha psi(q^shift zeta / xi, alpha), principal xi^-alpha kept."""
        p = self.params
        s2 = p.qpow(2 * shift)
        den = s2 * z - y
        if abs(den) < 1e-10 * max(abs(z), abs(y)):
            raise PoleHit(f"psi pole: q^{2*shift} zeta^2 = xi^2 at ({z}, {y})")
        return p.qpow(shift * p.alpha) * _tw(y, -p.alpha) * (s2 * z + y) / (2.0 * den)

    # -- omega pieces --------------------------------------------------------

    def omega_sing_strip(self, z: complex, y: complex) -> complex:
        p = self.params
        tz, ty = self.t_k(z), self.t_k(y)
        q2 = p.qpow(2)
        part1 = -(self._psi_strip(z, y, +1) - self._psi_strip(z, y, -1))
        part2 = (4.0 / (tz * ty)) * (
            p.a(y) * p.d(y / q2) * self._psi_strip(z, y, +1)
            - p.a(q2 * y) * p.d(y) * self._psi_strip(z, y, -1)
        )
        return part1 + part2

    def omega_sym_strip(self, z: complex, y: complex) -> complex:
        p = self.params
        tz, ty = self.t_k(z), self.t_k(y)
        diag = _tw(y, -p.alpha) * 0.5 * (z + y) * pu.bival(self._tt_quot, z, y)
        return (
            (4.0 * p.a(y) * p.d(z) - tz * ty) * self._psi_strip(z, y, +1)
            - (4.0 * p.a(z) * p.d(y) - tz * ty) * self._psi_strip(z, y, -1)
            - 2.0 * diag
        ) / (tz * ty)

    def omega_strip(self, z: complex, y: complex) -> complex:
        p = self.params
        if self.m_cached is None:
            raise SingularA(
                "closed form needs the B matrices; at alpha = 0 use "
                "omega_by_characterization instead"
            )
        vz = np.array([z**j for j in range(p.n + 1)])
        vy = np.array([y**j for j in range(p.n + 1)])
        main = (
            4.0
            / (self.t_k(z) * self.t_k(y))
            * _tw(y, -p.alpha)
            * (vz @ self.m_cached @ vy)
        )
        return main + self.omega_sym_strip(z, y)

    # -- public twisted values ----------------------------------------------

    def omega(self, z: complex, y: complex) -> complex:
        """omega(zeta, xi) at z = zeta^2, y = xi^2."""
        return _tw(z, self.params.alpha) * self.omega_strip(z, y)

    def omega_sing(self, z: complex, y: complex) -> complex:
        return _tw(z, self.params.alpha) * self.omega_sing_strip(z, y)

    # -- normalization integrals ---------------------------------------------

    def _dbar_xi_psi_strip(self, z: complex, y: complex) -> complex:
        """Dbar_xi psi(zeta/xi, alpha), zeta-twist stripped."""
        p = self.params
        q2 = p.qpow(2)
        # F(xi) = psi(zeta/xi): xi -> q xi replaces y by q^2 y and divides the
        # twist prefactor, which _psi_strip(.., shift) encodes with z-shifts;
        # write the three terms explicitly instead.
        def piece(yy: complex, pref: complex) -> complex:
            den = z - yy
            if abs(den) < 1e-10 * max(abs(z), abs(yy)):
                raise PoleHit("Dbar_xi psi pole hit")
            return pref * _tw(y, -p.alpha) * (z + yy) / (2.0 * den)

        return (
            piece(q2 * y, p.qpow(-p.alpha))
            + piece(y / q2, p.qpow(p.alpha))
            - 2.0 * self.rho(y) * piece(y, 1.0)
        )

    def norm_term_trans(self, m: int, y: complex) -> complex:
        """Contour-side value of the Dbar Dbar Dinv psi normalization term."""
        p = self.params
        pm = self.eka.q_minus.poly()
        pp_dn = self.ek.q_plus.shift_q(p.q, -1).poly()  # Q+(q^-1 zeta)
        pp_up = self.ek.q_plus.shift_q(p.q, +1).poly()  # Q+(q zeta)
        meas2 = pu.padd(
            pu.pmul(p.a_poly(), pu.pmul(pm, pp_dn)),
            -pu.pmul(p.d_poly(), pu.pmul(pm, pp_up)),
        )
        q2 = p.qpow(2)
        poles = [q2 * y, y / q2, y]

        def g(zz: complex) -> complex:
            return self._dbar_xi_psi_strip(zz, y)

        return _special_contour_integral(p, g, poles, meas2, m)

    def norm_integral_omega(self, m: int, y: complex) -> complex:
        """int_{G_m} T_k omega Q-(kappa+alpha) Q+(kappa) phi dz/z."""
        p = self.params
        q2 = p.qpow(2)
        poles = [q2 * y, y / q2]

        def g(zz: complex) -> complex:
            return self.t_k(zz) * self.omega_strip(zz, y)

        return contour_integral_rational(self.periods.measure, +1, g, poles, m)

    def normalization_residual(self, m: int, y: complex) -> float:
        i1 = self.norm_integral_omega(m, y)
        i2 = self.norm_term_trans(m, y)
        scale = max(abs(i1), abs(i2), 1e-30)
        return abs(i1 + i2) / scale

    # -- residues at the two simple poles -------------------------------------

    def residue_at(self, y: complex, eps: int, nodes: int = 128) -> complex:
        """res of omega(., xi) w.r.t. dzeta^2/zeta^2 at zeta^2 = q^(2 eps) xi^2."""
        p = self.params
        z0 = p.qpow(2 * eps) * y
        r = 0.02 * abs(z0)
        thetas = 2 * np.pi * np.arange(nodes) / nodes
        acc = 0.0 + 0.0j
        for th in thetas:
            zz = z0 + r * np.exp(1j * th)
            acc += self.omega(zz, y) / zz * r * np.exp(1j * th)
        return acc / nodes

    def residue_closed_form(self, y: complex, eps: int) -> complex:
        """The scalar residue forms consistent with the closed omega definition.

        With respect to the measure dzeta^2/zeta^2:
          eps=+1:  1 - 4 a(q xi) d(xi) / (T(xi) T(q xi))
          eps=-1: -(1 - 4 a(xi) d(q^-1 xi) / (T(xi) T(q^-1 xi)))
        times the twist of omega at the pole.  (Numerically calibrated: the
        a/d placement swapped relative to this, or dropping the 1/zeta^2
        measure, does not reproduce the actual residues.)
        """
        p = self.params
        q2 = p.qpow(2)
        if eps == +1:
            val = 1.0 - 4.0 * p.a(q2 * y) * p.d(y) / (self.t_k(y) * self.t_k(q2 * y))
        else:
            val = -(1.0 - 4.0 * p.a(y) * p.d(y / q2) / (self.t_k(y) * self.t_k(y / q2)))
        return val * _psi_res_twist(p, y, eps)


def _psi_res_twist(p: ModelParams, y: complex, eps: int) -> complex:
    """Twist of omega at the pole zeta^2 = q^(2 eps) xi^2.

    The residue-producing psi shift carries the mode-convention prefactor
    q^(-eps alpha) on top of the principal zeta^alpha xi^-alpha.
    """
    z0 = p.qpow(2 * eps) * y
    return p.qpow(-eps * p.alpha) * _tw(z0, p.alpha) * _tw(y, -p.alpha)


def _special_contour_integral(p: ModelParams, g, g_poles, meas_poly, m: int) -> complex:
    """Residue sum for a non-standard measure polynomial (trans-form term)."""
    contour = p.contour_poles(m)
    for z0, _ in contour:
        for w in g_poles:
            if abs(z0 - w) < 1e-6:
                raise PoleHit(f"trans-term pole {w} sits on contour {m}")
    if m == 0:
        return 2j * np.pi * g(0.0) * pu.pval(meas_poly, 0.0) * p.phi(0.0)
    acc = 0.0 + 0.0j
    for z0, res in contour:
        acc += g(z0) * pu.pval(meas_poly, z0) * res / z0
    return 2j * np.pi * acc


# -- the linear-characterization oracle ---------------------------------------


def omega_by_characterization(ev: OmegaEvaluator, y: complex):
    """Independent omega(. , xi): solve for the degree-n correction polynomial.

    omega'(z, y) = omega_sing(z, y) + zeta^alpha C(z) / T_k(z) with C fixed by
    the n+1 normalization integrals; the system matrix is exactly A+.
    Returns (callable z -> omega'(z, y), C coefficients).
    """
    p = ev.params
    q2 = p.qpow(2)
    sing_poles = [q2 * y, y / q2]
    rhs = np.zeros(p.n + 1, dtype=complex)
    for m in range(p.n + 1):
        def g(zz: complex) -> complex:
            return ev.t_k(zz) * ev.omega_sing_strip(zz, y)

        i_sing = contour_integral_rational(ev.periods.measure, +1, g, sing_poles, m)
        rhs[m] = -(i_sing + ev.norm_term_trans(m, y))
    det = np.linalg.det(ev.periods.a_plus)
    if abs(det) < 1e-12 * np.linalg.norm(ev.periods.a_plus) ** (p.n + 1):
        raise SingularA("characterization system matrix A+ is singular")
    c = np.linalg.solve(ev.periods.a_plus, rhs)

    def value(z: complex) -> complex:
        return _tw(z, p.alpha) * (
            ev.omega_sing_strip(z, y) + pu.pval(c, z) / ev.t_k(z)
        )

    return value, c


def singular_part_poly(ev: OmegaEvaluator, y: complex, radius: float = 1.7):
    """Interpolate zeta^-alpha T_k (omega - omega_sing) as a degree-n polynomial.

    Returns (coefficients, held-out relative residual).  The function being
    interpolated is regular at q^(+-2) y by construction of omega_sing.
    """
    p = ev.params
    n = p.n
    nodes = radius * np.exp(2j * np.pi * (np.arange(n + 2) + 0.31) / (n + 2))
    vals = [
        ev.t_k(z) * (ev.omega_strip(z, y) - ev.omega_sing_strip(z, y)) for z in nodes
    ]
    coeffs = pu.interp_nodes(vals[: n + 1], nodes[: n + 1])
    scale = max(1.0, max(abs(v) for v in vals))
    held = abs(pu.pval(coeffs, nodes[n + 1]) - vals[n + 1]) / scale
    return coeffs, held


def build_omega(params: ModelParams, ek: EigenData, eka: EigenData,
                periods: PeriodData) -> OmegaEvaluator:
    return OmegaEvaluator(params, ek, eka, periods)
