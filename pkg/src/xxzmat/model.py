"""Model parameters and the elementary weight functions a, d, W, phi, psi.

Conventions (all in the square variable z = zeta^2):

    a_s(zeta)   = zeta^2 q^(2s+1) - 1
    d_s(zeta)   = zeta^2 q^(-2s+1) - 1
    w_s(zeta)   = prod_{k=1..2s} (1 - zeta^2 q^(2k-2s+1))
    phi_s(zeta) = prod_{k=0..2s} 1 / (zeta^2 q^(-2s+2k+1) - 1)

with the chain versions a(zeta) = prod_m a_{s_m}(zeta/tau_m) and so on.
phi satisfies a(zeta q) phi(zeta q) = d(zeta) phi(zeta), and
W d phi = 1 whenever the total spin is an integer.

The contour with index m encircles the poles z = tau_m^2 q^(2 s_m - 2k - 1)
(k = 0..2s_m) of phi; contour 0 encircles z = 0; the contour at infinity
is only ever used through "minus the sum of the finite ones".
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import polyutil as pu
from .errors import ParameterError, PoleAtUnitPoint, PoleCollision
from .laurent import principal_power


def _as_spin(s) -> Fraction:
    f = Fraction(s).limit_denominator(64)
    if f <= 0 or (2 * f).denominator != 1:
        raise ParameterError(f"invalid spin {s}: need a positive half-integer")
    return f


@dataclass(frozen=True)
class Tolerances:
    identity: float = 1e-9
    converge: float = 1e-13
    separation: float = 1e-6


@dataclass(frozen=True)
class ModelParams:
    """Global configuration of one Matsubara chain.

    q is accepted as a generic nonzero complex number; nothing assumes
    |q| = 1.  alpha is the disorder twist, kappa the transfer-matrix
    twist, sector the total-S3 eigenvalue the spectral routines work in.
    """

    q: complex
    alpha: complex
    kappa: complex
    spins: tuple = ()
    tau2: tuple = ()  # squared inhomogeneities, one per site
    sector: int = 0
    tol: Tolerances = field(default_factory=Tolerances)
    osc_truncation: int = 64
    seed: int = 7
    # the standing integer-total-spin assumption; the domain-wall bridge is
    # the one consumer that legitimately works without it (no eigenvectors)
    enforce_integer_spin: bool = True

    def __post_init__(self):
        spins = tuple(_as_spin(s) for s in self.spins)
        object.__setattr__(self, "spins", spins)
        object.__setattr__(self, "tau2", tuple(complex(t) for t in self.tau2))
        object.__setattr__(self, "q", complex(self.q))
        object.__setattr__(self, "alpha", complex(self.alpha))
        object.__setattr__(self, "kappa", complex(self.kappa))
        if len(spins) != len(self.tau2):
            raise ParameterError("spins and tau2 must have equal length")
        if len(spins) == 0:
            raise ParameterError("need at least one Matsubara site")
        if self.q == 0 or any(t == 0 for t in self.tau2):
            raise ParameterError("q and all tau_m must be nonzero")
        if self.enforce_integer_spin and self.total_spin().denominator != 1:
            raise ParameterError("sum of spins must be an integer")
        if self.osc_truncation < 2:
            raise ParameterError("oscillator truncation must be >= 2")
        self._validate_resonances()
        self._validate_pole_separation()

    # -- invariant scans -------------------------------------------------

    def _validate_resonances(self):
        """q must stay off roots of unity over the working exponent range.

        The scan covers the q-primitive exponent range actually exercised
        (twists +-alpha, mode index set by the chain length through the
        kernel and exact-form degrees).  At alpha = 0 the q-primitive is
        never applied (that pipeline goes through the linear
        characterization), so nothing is scanned; the runtime guard in
        delta_inverse still protects any direct use.
        """
        if self.alpha == 0:
            return
        kmax = 2 * self.n + 2
        for gamma in (self.alpha, -self.alpha):
            for k in range(-kmax, kmax + 1):
                e = gamma + 2 * k
                if e == 0 or abs(np.exp(2 * e * np.log(self.q)) - 1.0) < self.tol.separation:
                    raise ParameterError(
                        f"resonance q^(2({gamma}+2*{k})) = 1: twist degenerate"
                    )

    def _validate_pole_separation(self):
        poles = [p for m in range(1, self.n + 1) for p, _ in self.contour_poles(m)]
        for i, p in enumerate(poles):
            if abs(p - 1.0) < self.tol.separation:
                raise ParameterError(f"phi pole {p} collides with zeta^2 = 1")
            for pp in poles[i + 1 :]:
                if abs(p - pp) < self.tol.separation:
                    raise PoleCollision(f"phi poles {p} and {pp} coincide")

    # -- basic structure -------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.spins)

    def total_spin(self) -> Fraction:
        return sum(self.spins, Fraction(0))

    def site_dims(self) -> tuple:
        return tuple(int(2 * s) + 1 for s in self.spins)

    def replace(self, **kw) -> "ModelParams":
        data = dict(
            q=self.q, alpha=self.alpha, kappa=self.kappa, spins=self.spins,
            tau2=self.tau2, sector=self.sector, tol=self.tol,
            osc_truncation=self.osc_truncation, seed=self.seed,
            enforce_integer_spin=self.enforce_integer_spin,
        )
        data.update(kw)
        return ModelParams(**data)

    def reversed_twists(self) -> "ModelParams":
        """The (-kappa, -alpha) companion used by the symmetry checks."""
        return self.replace(kappa=-self.kappa, alpha=-self.alpha)

    # -- weight functions ------------------------------------------------

    def qpow(self, x: complex) -> complex:
        return complex(np.exp(complex(x) * np.log(self.q)))

    def a_poly(self) -> np.ndarray:
        out = np.ones(1, dtype=complex)
        for s, t2 in zip(self.spins, self.tau2):
            out = pu.pmul(out, [-1.0, self.qpow(2 * s + 1) / t2])
        return out

    def d_poly(self) -> np.ndarray:
        out = np.ones(1, dtype=complex)
        for s, t2 in zip(self.spins, self.tau2):
            out = pu.pmul(out, [-1.0, self.qpow(-2 * s + 1) / t2])
        return out

    def w_poly(self) -> np.ndarray:
        out = np.ones(1, dtype=complex)
        for s, t2 in zip(self.spins, self.tau2):
            for k in range(1, int(2 * s) + 1):
                out = pu.pmul(out, [1.0, -self.qpow(2 * k - 2 * s + 1) / t2])
        return out

    def _phi_factors(self):
        """(site m, k, coefficient c) with factor (c*z - 1) in 1/phi."""
        for m, (s, t2) in enumerate(zip(self.spins, self.tau2), start=1):
            for k in range(int(2 * s) + 1):
                yield m, k, self.qpow(-2 * s + 2 * k + 1) / t2

    def phi(self, z: complex) -> complex:
        acc = 1.0 + 0.0j
        for _, _, c in self._phi_factors():
            acc /= c * z - 1.0
        return acc

    def a(self, z: complex) -> complex:
        return pu.pval(self.a_poly(), z)

    def d(self, z: complex) -> complex:
        return pu.pval(self.d_poly(), z)

    def w(self, z: complex) -> complex:
        return pu.pval(self.w_poly(), z)

    # -- contours ----------------------------------------------------------

    def contour_poles(self, m: int):
        """Pole/residue list of contour m in {0, 1..n}.

        Contour 0 owns only z = 0 (residues there are taken directly from
        the regular part of the integrand, so the list is [(0, None)]).
        For m >= 1 the entries are (pole z_p, Res_{z=z_p} phi), computed by
        analytic factor removal, never by numerical limiting.
        """
        if m == 0:
            return [(0.0 + 0.0j, None)]
        if not 1 <= m <= self.n:
            raise ParameterError(f"contour index {m} outside 0..{self.n}")
        s, t2 = self.spins[m - 1], self.tau2[m - 1]
        out = []
        for k in range(int(2 * s) + 1):
            z0 = t2 * self.qpow(2 * s - 2 * k - 1)
            res = complex(z0)
            for mm, kk, c in self._phi_factors():
                if mm == m and kk == k:
                    continue
                den = c * z0 - 1.0
                if abs(den) < self.tol.separation:
                    raise PoleCollision(
                        f"phi poles coincide at zeta^2 = {z0} (sites {m}, {mm})"
                    )
                res /= den
            out.append((complex(z0), res))
        return out

    def all_finite_poles(self):
        return [p for m in range(1, self.n + 1) for p, _ in self.contour_poles(m)]


def eval_psi(z: complex, alpha: complex, tol: float = 1e-12) -> complex:
    """psi(zeta, alpha) = zeta^alpha (zeta^2+1) / (2 (zeta^2-1)) at z = zeta^2."""
    if abs(z - 1.0) < tol:
        raise PoleAtUnitPoint("psi has a pole at zeta^2 = 1")
    return principal_power(z, alpha) * (z + 1.0) / (2.0 * (z - 1.0))
