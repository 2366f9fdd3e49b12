"""Deformed Abelian integrals, exact forms, and the period matrices.

A deformed integral over contour m is the exact residue sum

    int_{G_m} f(zeta) Q-+(zeta, kappa+alpha) Q+-(zeta, kappa) phi(zeta) dzeta^2/zeta^2
        = 2 pi i * sum over the contour's pole set,

with contour 0 owning only z = 0 and the contour at infinity defined as
minus the sum of all finite contours.  Every residue is computed from the
explicit rational factorization of phi; nothing is ever obtained by
numerical limiting.  Integrals carry the bare 2 pi i (no 1/(2 pi i)).

Single-valuedness: writing s = sector, the measure products

    Q-(zeta, kappa+alpha) Q+(zeta, kappa) = zeta^-alpha * qq_plus(zeta^2)
    Q+(zeta, kappa+alpha) Q-(zeta, kappa) = zeta^+alpha * qq_minus(zeta^2)

are twisted polynomials; an integrand f of twist +-alpha (+ even integers)
cancels the twist exactly and the full integrand is rational in z.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import polyutil as pu
from .errors import (
    DivisionInexact,
    NonSingleValued,
    PoleOnContour,
    SingularA,
    WorkbenchError,
)
from .laurent import TwistedLaurent, delta_inverse
from .model import ModelParams
from .spectral import EigenData


@dataclass(frozen=True)
class Measure:
    """Twist-free polynomial parts of the two integration measures."""

    params: ModelParams
    qq_plus: np.ndarray    # zeta^alpha  Q-(kappa+alpha) Q+(kappa)
    qq_minus: np.ndarray   # zeta^-alpha Q+(kappa+alpha) Q-(kappa)

    @staticmethod
    def from_eigendata(params: ModelParams, ek: EigenData, eka: EigenData) -> "Measure":
        if ek.sector != eka.sector:
            raise WorkbenchError("twists landed in different sectors")
        plus = eka.q_minus * ek.q_plus
        minus = eka.q_plus * ek.q_minus
        for tl, want in ((plus, -params.alpha), (minus, params.alpha)):
            if abs(tl.twist - want) > 1e-9:
                raise NonSingleValued(
                    f"measure twist {tl.twist} does not reduce to {want}"
                )
        return Measure(params, plus.poly(), minus.poly())

    def qq(self, sign: int) -> np.ndarray:
        return self.qq_plus if sign > 0 else self.qq_minus

    def measure_twist(self, sign: int) -> complex:
        return -self.params.alpha if sign > 0 else self.params.alpha


def contour_integral_poly(meas: Measure, sign: int, g, m: int) -> complex:
    """Integral of zeta^(sign*alpha) g(zeta^2) against the sign-measure over contour m."""
    g = np.asarray(g, dtype=complex)
    p = meas.params
    qq = meas.qq(sign)
    if m == 0:
        return 2j * np.pi * pu.pval(g, 0.0) * pu.pval(qq, 0.0) * p.phi(0.0)
    acc = 0.0 + 0.0j
    for z0, res in p.contour_poles(m):
        acc += pu.pval(g, z0) * pu.pval(qq, z0) * res / z0
    return 2j * np.pi * acc


def contour_integral_rational(meas: Measure, sign: int, g, g_poles, m: int,
                              guard: float = 1e-6) -> complex:
    """Same, for a rational g(z) with declared poles (all off the contours)."""
    p = meas.params
    qq = meas.qq(sign)
    contour = p.contour_poles(m)
    for z0, _ in contour:
        for w in g_poles:
            if abs(z0 - w) < guard:
                raise PoleOnContour(f"integrand pole {w} sits on contour {m}")
    if m == 0:
        return 2j * np.pi * g(0.0) * pu.pval(qq, 0.0) * p.phi(0.0)
    acc = 0.0 + 0.0j
    for z0, res in contour:
        acc += g(z0) * pu.pval(qq, z0) * res / z0
    return 2j * np.pi * acc


def contour_integral_twisted(meas: Measure, f: TwistedLaurent, m: int) -> complex:
    """Integral of a twisted-Laurent f; the sign is inferred from its twist.

    The net twist of f plus the measure must be an even integer (here: zero),
    otherwise the integrand is not single-valued and the residue sum is
    meaningless.
    """
    p = meas.params
    for sign in (+1, -1):
        if abs(f.twist + meas.measure_twist(sign)) < 1e-9:
            return contour_integral_poly(meas, sign, f.poly(), m)
    raise NonSingleValued(
        f"twist {f.twist} does not cancel against either measure"
    )


def integral_infinity_poly(meas: Measure, sign: int, g) -> complex:
    """Contour at infinity = minus the sum of all finite contours."""
    return -sum(
        contour_integral_poly(meas, sign, g, m) for m in range(meas.params.n + 1)
    )


# -- exact forms --------------------------------------------------------------


def exact_form(params: ModelParams, t_k, t_ka, f: TwistedLaurent) -> TwistedLaurent:
    """The q-deformed exact form built from one twisted polynomial f.

    E(f) = T_k D^-1(f T_k) + T_ka D^-1(f T_ka)
         - T_k D^-1(f(.q) T_ka(.q)) - T_ka D^-1(f(.q^-1) T_k(.q^-1))
         + a(.q) d(.) f(.q) - d(.q^-1) a(.) f(.q^-1)

    where T_k, T_ka are the transfer polynomials at the two twists and
    D^-1 is the mode-wise q-primitive.
    """
    q = params.q
    a, d = params.a_poly(), params.d_poly()

    def dinv(g: TwistedLaurent) -> TwistedLaurent:
        return delta_inverse(g, q)

    t1 = dinv(f.mul_poly(t_k)).mul_poly(t_k)
    t2 = dinv(f.mul_poly(t_ka)).mul_poly(t_ka)
    t3 = dinv(f.mul_poly(t_ka).shift_q(q, 1)).mul_poly(t_k)
    t4 = dinv(f.mul_poly(t_k).shift_q(q, -1)).mul_poly(t_ka)
    t5 = f.shift_q(q, 1).mul_poly(pu.pmul(pu.pscale_arg(a, q**2), d))
    t6 = f.shift_q(q, -1).mul_poly(pu.pmul(pu.pscale_arg(d, q**-2), a))
    return t1 + t2 - t3 - t4 + t5 - t6


# -- the bivariate kernel r+ and the period matrices --------------------------


def _psi_times_tdiff(t, shift: int, alpha: complex, q: complex):
    """Bivariate coefficients of psi(q^shift zeta/xi, alpha) (T(zeta q^shift) - T(xi)).

    In u = q^(2 shift) z the product is

        q^(shift*alpha) zeta^alpha xi^-alpha (u+y)/2 * (T(u) - T(y))/(u - y),

    an exact division since T is one polynomial evaluated at two points.
    Returns C[k, l] for the twisted monomials zeta^(alpha+2k) xi^(-alpha+2l).
    """
    t = np.asarray(t, dtype=complex)
    s2 = complex(q) ** (2 * shift)
    d = len(t) - 1
    C = np.zeros((d + 1, d + 1), dtype=complex)
    # (u + y)/2 * sum_m t_m sum_{i+j=m-1} u^i y^j
    for m in range(1, d + 1):
        for i in range(m):
            j = m - 1 - i
            C[i + 1, j] += 0.5 * t[m]
            C[i, j + 1] += 0.5 * t[m]
    # substitute u^k = s2^k z^k and fold in the twist prefactor q^(shift*alpha)
    pref = complex(np.exp(shift * alpha * np.log(q)))
    for k in range(C.shape[0]):
        C[k, :] *= pref * (s2**k)
    return C


def _apply_dinv_rows(C: np.ndarray, alpha: complex, q: complex) -> np.ndarray:
    """Mode-wise q-primitive in zeta on rows (modes zeta^(alpha+2k))."""
    out = C.copy()
    for k in range(out.shape[0]):
        e = alpha + 2 * k
        den = complex(np.exp(e * np.log(q)) - np.exp(-e * np.log(q)))
        out[k, :] /= den
    return out


def _mul_rows_by_poly(C: np.ndarray, p) -> np.ndarray:
    p = np.asarray(p, dtype=complex)
    out = np.zeros((C.shape[0] + len(p) - 1, C.shape[1]), dtype=complex)
    for k in range(C.shape[0]):
        for i, c in enumerate(p):
            out[k + i, :] += c * C[k, :]
    return out


def r_plus_coeffs(params: ModelParams, t_k, t_ka, alpha=None) -> np.ndarray:
    """Bivariate coefficients R[k, l] of r+ = sum R[k,l] zeta^(alpha+2k) xi^(-alpha+2l).

    Passing alpha=-params.alpha together with the same transfer polynomials
    produces the r- data (the kappa -> -kappa substitution leaves both
    transfer polynomials unchanged).
    """
    q = params.q
    alpha = params.alpha if alpha is None else complex(alpha)
    a, d = params.a_poly(), params.d_poly()

    s1 = _mul_rows_by_poly(_apply_dinv_rows(_psi_times_tdiff(t_k, 0, alpha, q), alpha, q), t_k)
    s2 = _mul_rows_by_poly(_apply_dinv_rows(_psi_times_tdiff(t_ka, 0, alpha, q), alpha, q), t_ka)
    s3 = _mul_rows_by_poly(_apply_dinv_rows(_psi_times_tdiff(t_ka, +1, alpha, q), alpha, q), t_k)
    s4 = _mul_rows_by_poly(_apply_dinv_rows(_psi_times_tdiff(t_k, -1, alpha, q), alpha, q), t_ka)

    # (a(zeta q) - a(xi)) d(zeta) psi(q zeta/xi) and the d/a partner
    def ad_term(poly, shift):
        s2_ = complex(q) ** (2 * shift)
        C = np.zeros((len(poly), len(poly)), dtype=complex)
        for m in range(1, len(poly)):
            for i in range(m):
                j = m - 1 - i
                C[i + 1, j] += 0.5 * poly[m]
                C[i, j + 1] += 0.5 * poly[m]
        pref = complex(np.exp(shift * alpha * np.log(q)))
        for k in range(C.shape[0]):
            C[k, :] *= pref * (s2_**k)
        return C

    s5 = _mul_rows_by_poly(ad_term(a, +1), d)
    s6 = _mul_rows_by_poly(ad_term(d, -1), a)

    rows = max(x.shape[0] for x in (s1, s2, s3, s4, s5, s6))
    cols = max(x.shape[1] for x in (s1, s2, s3, s4, s5, s6))
    R = np.zeros((rows, cols), dtype=complex)
    for sgn, x in ((1, s1), (1, s2), (-1, s3), (-1, s4), (1, s5), (-1, s6)):
        R[: x.shape[0], : x.shape[1]] += sgn * x
    return R


def p_polys(R: np.ndarray, n: int, tol: float = 1e-12):
    """Columns of R as the expansion polynomials p_0..p_n; xi-degree must be n."""
    scale = np.max(np.abs(R))
    if R.shape[1] > n + 1 and np.max(np.abs(R[:, n + 1 :])) > tol * scale:
        raise DivisionInexact(
            "kernel has xi-degree above n: inconsistent transfer data"
        )
    return [pu.trim(R[:, j], 0.0) for j in range(n + 1)]


@dataclass(frozen=True)
class PeriodData:
    """(n+1)x(n+1) period matrices and the measure they were built from.

    The B matrices require the r+- kernels, whose q-primitive zero mode is
    structurally resonant at alpha = 0; they are built only when alpha != 0
    (the alpha = 0 omega goes through the characterization solve, which
    needs A+ alone).
    """

    params: ModelParams
    measure: Measure
    a_plus: np.ndarray
    a_minus: np.ndarray
    b_plus: np.ndarray = None
    b_minus: np.ndarray = None

    def bilinear_residual(self) -> float:
        lhs = self.b_plus @ self.a_minus.T
        rhs = self.a_plus @ self.b_minus.T
        den = np.linalg.norm(self.a_plus) * np.linalg.norm(self.b_minus)
        return float(np.linalg.norm(lhs - rhs) / max(den, 1e-300))

    def a_plus_inv_b_plus(self) -> np.ndarray:
        if self.b_plus is None:
            raise WorkbenchError("period data was built without B matrices")
        det = np.linalg.det(self.a_plus)
        scale = np.prod([max(np.linalg.norm(r), 1e-300) for r in self.a_plus])
        if abs(det) < 1e-10 * scale:
            raise SingularA(f"det A+ = {det:.2e} is numerically singular")
        return np.linalg.solve(self.a_plus, self.b_plus)


def period_matrices(params: ModelParams, ek: EigenData, eka: EigenData,
                    include_b: bool = True) -> PeriodData:
    """A+-, B+- from monomials and the r+- expansion kernels."""
    meas = Measure.from_eigendata(params, ek, eka)
    n = params.n
    ap = np.zeros((n + 1, n + 1), dtype=complex)
    am = np.zeros((n + 1, n + 1), dtype=complex)
    for i in range(n + 1):
        for j in range(n + 1):
            mono = np.zeros(j + 1, dtype=complex)
            mono[j] = 1.0
            ap[i, j] = contour_integral_poly(meas, +1, mono, i)
            am[i, j] = contour_integral_poly(meas, -1, mono, i)
    if not include_b:
        return PeriodData(params, meas, ap, am)
    Rp = r_plus_coeffs(params, ek.t_poly, eka.t_poly, params.alpha)
    Rm = r_plus_coeffs(params, ek.t_poly, eka.t_poly, -params.alpha)
    pp = p_polys(Rp, n)
    pm = p_polys(Rm, n)
    bp = np.zeros((n + 1, n + 1), dtype=complex)
    bm = np.zeros((n + 1, n + 1), dtype=complex)
    for i in range(n + 1):
        for j in range(n + 1):
            bp[i, j] = contour_integral_poly(meas, +1, pp[j], i)
            bm[i, j] = contour_integral_poly(meas, -1, pm[j], i)
    return PeriodData(params, meas, ap, am, bp, bm)
