"""Twisted Laurent functions zeta^gamma * P(zeta^2) and the q-difference calculus.

All objects of the workbench that carry a fractional power of zeta (Q
eigenvalues, exact forms, the kernels feeding the period matrices) are
instances of :class:`TwistedLaurent`.  The value semantics are

    f(zeta) = zeta^gamma * sum_k c_k zeta^(2k),
    zeta^gamma := exp((gamma/2) * Log(zeta^2))

on the principal branch of the logarithm, so every evaluation is a
single-valued function of z = zeta^2.  The same branch rule is applied
uniformly across the package; identities are always compared between
quantities built with this one convention, so branch constants cancel.

q-shifts are defined mode-wise, f(zeta q^s): c_k -> q^(s(gamma+2k)) c_k
with q^x := exp(x Log q).  This is exact (no branch jump) and is what the
q-difference operator and its inverse act on.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateTwist, WorkbenchError

_TWIST_TOL = 1e-9


def principal_power(z: complex, gamma: complex) -> complex:
    """exp((gamma/2) Log z), the branch used for every zeta^gamma."""
    if gamma == 0:
        return 1.0 + 0.0j
    return complex(np.exp(0.5 * gamma * np.log(complex(z))))


@dataclass(frozen=True)
class TwistedLaurent:
    """zeta^twist * (Laurent polynomial in zeta^2), immutable."""

    twist: complex
    coeffs: dict = field(default_factory=dict)  # k -> coefficient of zeta^(2k)

    def __post_init__(self):
        object.__setattr__(
            self, "coeffs", {int(k): complex(v) for k, v in self.coeffs.items()}
        )

    @staticmethod
    def from_poly(twist: complex, poly) -> "TwistedLaurent":
        poly = np.asarray(poly, dtype=complex)
        return TwistedLaurent(twist, {k: poly[k] for k in range(len(poly))})

    def poly(self) -> np.ndarray:
        """Ascending coefficient array; requires no negative modes."""
        if not self.coeffs:
            return np.zeros(1, dtype=complex)
        kmin = min(self.coeffs)
        if kmin < 0:
            raise WorkbenchError("negative Laurent mode has no polynomial part")
        kmax = max(self.coeffs)
        out = np.zeros(kmax + 1, dtype=complex)
        for k, c in self.coeffs.items():
            out[k] = c
        return out

    def __add__(self, other: "TwistedLaurent") -> "TwistedLaurent":
        if abs(self.twist - other.twist) > _TWIST_TOL:
            raise WorkbenchError("addition requires equal twists")
        coeffs = dict(self.coeffs)
        for k, c in other.coeffs.items():
            coeffs[k] = coeffs.get(k, 0.0) + c
        return TwistedLaurent(self.twist, coeffs)

    def __sub__(self, other: "TwistedLaurent") -> "TwistedLaurent":
        return self + other.scale(-1.0)

    def __mul__(self, other: "TwistedLaurent") -> "TwistedLaurent":
        coeffs: dict = {}
        for k1, c1 in self.coeffs.items():
            for k2, c2 in other.coeffs.items():
                k = k1 + k2
                coeffs[k] = coeffs.get(k, 0.0) + c1 * c2
        return TwistedLaurent(self.twist + other.twist, coeffs)

    def scale(self, s: complex) -> "TwistedLaurent":
        return TwistedLaurent(self.twist, {k: s * c for k, c in self.coeffs.items()})

    def mul_poly(self, poly) -> "TwistedLaurent":
        return self * TwistedLaurent.from_poly(0.0, poly)

    def shift_q(self, q: complex, s: int = 1) -> "TwistedLaurent":
        """f(zeta q^s), mode-wise."""
        qs = {}
        for k, c in self.coeffs.items():
            qs[k] = c * complex(np.exp(s * (self.twist + 2 * k) * np.log(complex(q))))
        return TwistedLaurent(self.twist, qs)

    def value_sq(self, z: complex) -> complex:
        """Evaluate at z = zeta^2."""
        acc = 0.0 + 0.0j
        for k, c in self.coeffs.items():
            acc += c * complex(z) ** k
        return principal_power(z, self.twist) * acc

    def max_abs(self) -> float:
        return max((abs(c) for c in self.coeffs.values()), default=0.0)


def _mode_factor(q: complex, gamma: complex, k: int) -> complex:
    e = gamma + 2 * k
    return complex(np.exp(e * np.log(complex(q))) - np.exp(-e * np.log(complex(q))))


def delta_apply(f: TwistedLaurent, q: complex) -> TwistedLaurent:
    """q-difference: (Delta f)(zeta) = f(zeta q) - f(zeta q^-1), mode-wise."""
    return TwistedLaurent(
        f.twist, {k: c * _mode_factor(q, f.twist, k) for k, c in f.coeffs.items()}
    )


def delta_inverse(f: TwistedLaurent, q: complex, tol: float = 1e-12) -> TwistedLaurent:
    """The unique q-primitive on the twisted-Laurent class.

    Raises DegenerateTwist when a mode is resonant, q^(2(twist+2k)) = 1.
    """
    coeffs = {}
    for k, c in f.coeffs.items():
        d = _mode_factor(q, f.twist, k)
        if abs(d) < tol:
            raise DegenerateTwist(
                f"resonant mode: q^(2({f.twist}+2*{k})) = 1 within tolerance"
            )
        coeffs[k] = c / d
    return TwistedLaurent(f.twist, coeffs)
