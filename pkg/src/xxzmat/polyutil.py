"""Small polynomial helpers.

Polynomials in the square variable z = zeta^2 are stored as 1-D complex
numpy arrays in ascending order: p[k] is the coefficient of z^k.
"""

from __future__ import annotations

import numpy as np

from .errors import NotConverged


def trim(p, tol: float = 0.0) -> np.ndarray:
    p = np.asarray(p, dtype=complex)
    n = len(p)
    while n > 1 and abs(p[n - 1]) <= tol:
        n -= 1
    return p[:n].copy()


def padd(p, q) -> np.ndarray:
    p = np.asarray(p, dtype=complex)
    q = np.asarray(q, dtype=complex)
    n = max(len(p), len(q))
    out = np.zeros(n, dtype=complex)
    out[: len(p)] += p
    out[: len(q)] += q
    return out


def pmul(p, q) -> np.ndarray:
    return np.convolve(np.asarray(p, dtype=complex), np.asarray(q, dtype=complex))


def pval(p, z: complex) -> complex:
    """Horner evaluation at a scalar point."""
    acc = 0.0 + 0.0j
    for c in np.asarray(p, dtype=complex)[::-1]:
        acc = acc * z + c
    return acc


def pscale_arg(p, s: complex) -> np.ndarray:
    """Coefficients of p(s*z)."""
    p = np.asarray(p, dtype=complex)
    return p * (s ** np.arange(len(p)))


def diff_quotient(p) -> np.ndarray:
    """Coefficients Q[i, j] of (p(x) - p(y)) / (x - y).

    Uses (x^m - y^m)/(x - y) = sum_{i+j=m-1} x^i y^j, so the division is
    exact by construction.
    """
    p = np.asarray(p, dtype=complex)
    d = len(p) - 1
    out = np.zeros((max(d, 1), max(d, 1)), dtype=complex)
    for m in range(1, d + 1):
        for i in range(m):
            out[i, m - 1 - i] += p[m]
    return out


def antisym_quotient(u, v) -> np.ndarray:
    """Coefficients of (u(x) v(y) - u(y) v(x)) / (x - y), exact."""
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    n = max(len(u), len(v))
    uu = np.zeros(n, dtype=complex)
    vv = np.zeros(n, dtype=complex)
    uu[: len(u)] = u
    vv[: len(v)] = v
    out = np.zeros((n, n), dtype=complex)
    # u(x)v(y)-u(y)v(x) = sum_{a<b} (u_a v_b - u_b v_a)(x^a y^b - x^b y^a)
    # and (x^a y^b - x^b y^a)/(x-y) = -x^a y^a * sum_{i+j=b-a-1} x^i y^j.
    for a in range(n):
        for b in range(a + 1, n):
            c = uu[a] * vv[b] - uu[b] * vv[a]
            if c == 0:
                continue
            for i in range(b - a):
                out[a + i, b - 1 - i] -= c
    return out


def bival(m, x: complex, y: complex) -> complex:
    """Evaluate a bivariate coefficient array sum m[i,j] x^i y^j."""
    m = np.asarray(m, dtype=complex)
    xp = x ** np.arange(m.shape[0])
    yp = y ** np.arange(m.shape[1])
    return complex(xp @ m @ yp)


def roots_dk(p, tol: float = 1e-13, maxit: int = 500) -> np.ndarray:
    """All roots of p by Durand-Kerner simultaneous iteration.

    Independent of numpy's eigenvalue-based root finder on purpose: this
    doubles as the oracle for the dense eigensolver tests.
    """
    p = trim(np.asarray(p, dtype=complex))
    d = len(p) - 1
    if d < 1:
        return np.zeros(0, dtype=complex)
    mon = p / p[-1]
    r = max(1.0, 2.0 * max(abs(c) for c in mon[:-1]))
    k = np.arange(d)
    z = r ** (1.0 / d) * np.exp(2j * np.pi * (k + 0.25) / d)
    for _ in range(maxit):
        w = np.array([pval(mon, zi) for zi in z])
        den = np.ones(d, dtype=complex)
        for i in range(d):
            diff = z[i] - np.delete(z, i)
            den[i] = np.prod(diff)
        step = w / den
        z = z - step
        if np.max(np.abs(step)) < tol * max(1.0, np.max(np.abs(z))):
            return z
    raise NotConverged("Durand-Kerner root refinement did not converge")


def interp_nodes(values, nodes) -> np.ndarray:
    """Polynomial coefficients through (nodes[i], values[i]) via Vandermonde."""
    nodes = np.asarray(nodes, dtype=complex)
    values = np.asarray(values, dtype=complex)
    V = np.vander(nodes, N=len(nodes), increasing=True)
    return np.linalg.solve(V, values)
