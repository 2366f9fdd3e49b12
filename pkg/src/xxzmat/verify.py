"""Verification suites: every supporting identity as a named residual check.

Each check produces a record {name, equation, residual, tolerance, pass}
where `equation` is a stable identifier of the identity being tested.  The
suites are deterministic (seeded sampling) and reuse cached fixture
pipelines.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from . import fixtures
from . import polyutil as pu
from .errors import WorkbenchError
from .laurent import TwistedLaurent
from .model import eval_psi
from .omega import omega_by_characterization, singular_part_poly
from .qabelian import (
    Measure,
    contour_integral_poly,
    contour_integral_twisted,
    exact_form,
    integral_infinity_poly,
)
from .spectral import baxter_defect, wronskian_lhs


@dataclass(frozen=True)
class Check:
    name: str
    equation: str
    residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(self.residual < self.tolerance)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["pass"] = self.passed
        return d


def _sample_points(seed: int, count: int, radius: float = 1.6):
    rng = np.random.default_rng(seed)
    return radius * np.exp(
        1j * rng.uniform(0, 2 * np.pi, count)
    ) + 0.2 * rng.standard_normal(count)


# -- wronskian suite -----------------------------------------------------------


def suite_wronskian(names=("P0", "P1")) -> list:
    out = []
    for name in names:
        p = fixtures.chain(name)
        ek, eka = fixtures.spectral_pair(name)
        # W d phi = 1 at sample points
        worst = 0.0
        for z in _sample_points(p.seed, 10):
            worst = max(worst, abs(p.w(z) * p.d(z) * p.phi(z) - 1.0))
        out.append(Check(f"{name} W*d*phi = 1", "weight-product-unity", worst, 1e-12))
        # quantum Wronskian, coefficient-wise, both twists
        for label, ed in (("kappa", ek), ("kappa+alpha", eka)):
            got = wronskian_lhs(ed.q_plus, ed.q_minus, p.q)
            target = p.w_poly() / (
                p.qpow(ed.lam - ed.sector) - p.qpow(-ed.lam + ed.sector)
            )
            res = float(
                np.max(np.abs(pu.padd(got, -target))) / np.max(np.abs(target))
            )
            out.append(
                Check(f"{name} Wronskian at {label}", "quantum-wronskian", res, 1e-10)
            )
        # psi antisymmetry
        worst = 0.0
        for z in _sample_points(p.seed + 1, 5):
            worst = max(worst, abs(eval_psi(1 / z, -p.alpha) + eval_psi(z, p.alpha)))
        out.append(Check(f"{name} psi antisymmetry", "psi-reflection", worst, 1e-12))
        # phi functional equation
        worst = 0.0
        q2 = p.qpow(2)
        for z in _sample_points(p.seed + 2, 10):
            lhs = p.a(q2 * z) * p.phi(q2 * z)
            rhs = p.d(z) * p.phi(z)
            worst = max(worst, abs(lhs - rhs) / max(abs(rhs), 1e-30))
        out.append(
            Check(f"{name} phi shift equation", "phi-functional-equation", worst, 1e-12)
        )
    return out


# -- baxter suite --------------------------------------------------------------


def suite_baxter(names=("P0", "P1")) -> list:
    out = []
    for name in names:
        p = fixtures.chain(name)
        ek, eka = fixtures.spectral_pair(name)
        for label, ed in (("kappa", ek), ("kappa+alpha", eka)):
            for sign, qq in (("+", ed.q_plus), ("-", ed.q_minus)):
                res = baxter_defect(p, ed.t_poly, qq)
                out.append(
                    Check(
                        f"{name} TQ defect Q{sign} at {label}",
                        "baxter-tq-relation", res, 1e-10,
                    )
                )
        # sector consistency and symT through the reversed pipeline
        evm = fixtures.reversed_pipeline(name)
        res = float(
            np.max(np.abs(ek.t_poly - evm.ek.t_poly)) / np.max(np.abs(ek.t_poly))
        )
        out.append(Check(f"{name} T(zeta,-kappa) = T(zeta,kappa)",
                         "transfer-twist-reflection", res, 1e-9))
    out.append(_oscillator_check())
    return out


def _oscillator_check() -> Check:
    """Oscillator-trace Q against the TQ-nullspace Q at a convergent twist."""
    from .spectral import (
        dominant_eigendata_vectors,
        normalize_wronskian,
        oscillator_q_value,
        solve_baxter_q,
        transfer_poly,
    )

    p = fixtures.chain("P0")
    lam = 1.4
    val, right, left, idx = dominant_eigendata_vectors(p, lam)
    tp = transfer_poly(p, lam, right, left, idx)
    qp = solve_baxter_q(p, lam, tp, +1)
    qm = solve_baxter_q(p, lam, tp, -1)
    qp, qm = normalize_wronskian(p, lam, 0, qp, qm)
    ratios = []
    for z in (1.3 + 0.1j, 0.8 - 0.2j, 1.7 + 0.4j, 0.5 + 0.3j, 2.2 - 0.5j):
        zeta = np.exp(0.5 * np.log(complex(z)))
        ratios.append(
            oscillator_q_value(p, zeta, lam, right, left, idx) / qp.value_sq(z)
        )
    ratios = np.array(ratios)
    var = float(np.max(np.abs(ratios - ratios.mean())) / abs(ratios.mean()))
    return Check("P0 oscillator trace vs TQ nullspace", "oscillator-cross-check",
                 var, 1e-8)


# -- bilinear suite ------------------------------------------------------------


def suite_bilinear(names=("P0", "P1")) -> list:
    out = []
    for name in names:
        pd = fixtures.periods(name)
        out.append(
            Check(f"{name} B+ (A-)^t = A+ (B-)^t", "riemann-bilinear",
                  pd.bilinear_residual(), 1e-8)
        )
        det = abs(np.linalg.det(pd.a_plus))
        scale = float(np.linalg.norm(pd.a_plus)) ** (pd.params.n + 1)
        out.append(
            Check(f"{name} det A+ nonzero", "period-nondegeneracy",
                  0.0 if det > 1e-10 * scale else 1.0, 0.5)
        )
        # gauge invariance of (A+)^-1 B+ under Q rescaling
        from dataclasses import replace

        from .qabelian import period_matrices

        p = fixtures.chain(name)
        ek, eka = fixtures.spectral_pair(name)
        c = 2.0 - 1.0j
        ek2 = replace(ek, q_plus=ek.q_plus.scale(c), q_minus=ek.q_minus.scale(1 / c))
        pd2 = period_matrices(p, ek2, eka)
        res = float(
            np.max(np.abs(pd.a_plus_inv_b_plus() - pd2.a_plus_inv_b_plus()))
            / max(1.0, float(np.max(np.abs(pd.a_plus_inv_b_plus()))))
        )
        out.append(Check(f"{name} gauge invariance of (A+)^-1 B+",
                         "q-rescaling-gauge", res, 1e-10))
        # A+ row 0 supported on column 0 only
        res = float(np.max(np.abs(pd.a_plus[0, 1:])) / abs(pd.a_plus[0, 0]))
        out.append(Check(f"{name} A+ first row support", "origin-contour-support",
                         res, 1e-12))
    return out


# -- exact form suite ----------------------------------------------------------


def _exact_form_residual(name: str) -> float:
    p = fixtures.chain(name)
    ek, eka = fixtures.spectral_pair(name)
    pd = fixtures.periods(name)
    worst = 0.0
    for sign in (+1, -1):
        for k in range(p.n + 1):
            f = TwistedLaurent(sign * p.alpha, {k: 1.0})
            ef = exact_form(p, ek.t_poly, eka.t_poly, f)
            # relative to the largest single residue term over all contours
            scale = max(
                _term_scale(pd.measure, ef, m) for m in range(1, p.n + 1)
            )
            for m in range(p.n + 1):
                val = contour_integral_twisted(pd.measure, ef, m)
                worst = max(worst, abs(val) / max(scale, 1e-30))
    return worst


def _term_scale(meas: Measure, f: TwistedLaurent, m: int) -> float:
    p = meas.params
    sign = +1 if abs(f.twist - p.alpha) < 1e-9 else -1
    qq = meas.qq(sign)
    g = f.poly()
    return max(
        abs(2j * np.pi * pu.pval(g, z0) * pu.pval(qq, z0) * res / z0)
        for z0, res in p.contour_poles(m)
    )


def suite_exactform(names=("P0", "P1")) -> list:
    out = []
    for name in names:
        out.append(Check(f"{name} exact-form annihilation", "exact-form-vanishing",
                         _exact_form_residual(name), 1e-9))
        # the two q-primitive shift identities behind it
        out.extend(_first_lemma_checks(name))
    return out


def _first_lemma_checks(name: str) -> list:
    """Both contour-shift identities for twisted-polynomial integrands."""
    from .laurent import delta_inverse

    p = fixtures.chain(name)
    ek, eka = fixtures.spectral_pair(name)
    pd = fixtures.periods(name)
    rng = np.random.default_rng(p.seed + 5)
    out = []
    for sign in (+1, -1):
        coeffs = rng.standard_normal(p.n + 1) + 1j * rng.standard_normal(p.n + 1)
        f = TwistedLaurent.from_poly(sign * p.alpha, coeffs)
        g = delta_inverse(f, p.q)
        worst_a = 0.0
        worst_d = 0.0
        for m in range(p.n + 1):
            lhs_a = contour_integral_twisted(
                pd.measure,
                g.shift_q(p.q, 1).mul_poly(ek.t_poly)
                - g.mul_poly(eka.t_poly),
                m,
            )
            rhs_a = _shifted_q_integral(p, pd.measure, f, sign, m, up=False)
            scale = max(abs(lhs_a), abs(rhs_a), 1e-30)
            worst_a = max(worst_a, abs(lhs_a - rhs_a) / scale)
            lhs_d = contour_integral_twisted(
                pd.measure,
                g.mul_poly(eka.t_poly) - g.shift_q(p.q, -1).mul_poly(ek.t_poly),
                m,
            )
            rhs_d = _shifted_q_integral(p, pd.measure, f, sign, m, up=True)
            scale = max(abs(lhs_d), abs(rhs_d), 1e-30)
            worst_d = max(worst_d, abs(lhs_d - rhs_d) / scale)
        out.append(Check(f"{name} primitive shift identity (a-side, {sign:+d})",
                         "q-primitive-shift-a", worst_a, 1e-9))
        out.append(Check(f"{name} primitive shift identity (d-side, {sign:+d})",
                         "q-primitive-shift-d", worst_d, 1e-9))
    return out


def _shifted_q_integral(p, meas: Measure, f: TwistedLaurent, sign: int, m: int,
                        up: bool):
    """int f * (a or d) * Q-+(kappa+alpha) Q+-(q^-+1 zeta, kappa) phi."""
    ek, eka = fixtures.spectral_pair(_fixture_of(p))
    qk = ek.q_plus if sign > 0 else ek.q_minus
    qka = eka.q_minus if sign > 0 else eka.q_plus
    shifted = qk.shift_q(p.q, +1 if up else -1)
    weight = p.d_poly() if up else p.a_poly()
    integrand = (f * qka * shifted).mul_poly(weight)
    # net twist must vanish; evaluate as a plain rational residue sum
    if abs(integrand.twist) > 1e-9:
        raise WorkbenchError("shift identity integrand is not single-valued")
    g = integrand.poly()
    if m == 0:
        return 2j * np.pi * pu.pval(g, 0.0) * p.phi(0.0)
    return 2j * np.pi * sum(
        pu.pval(g, z0) * res / z0 for z0, res in p.contour_poles(m)
    )


def _fixture_of(p) -> str:
    for name in ("P0", "P1"):
        if fixtures.chain(name) == p:
            return name
    raise KeyError("unregistered fixture")


# -- omega suite ---------------------------------------------------------------


def suite_omega(names=("P0",)) -> list:
    out = []
    for name in names:
        p = fixtures.chain(name)
        ev = fixtures.omega_evaluator(name)
        evm = fixtures.reversed_pipeline(name)
        y = 1.37 + 0.45j
        coeffs, held = singular_part_poly(ev, y)
        out.append(Check(f"{name} singular part degree <= n",
                         "omega-singular-part", held, 1e-8))
        worst = max(
            ev.normalization_residual(m, y) for m in range(p.n + 1)
        )
        out.append(Check(f"{name} normalization integrals",
                         "omega-normalization", worst, 1e-8))
        # symmetry on a 5x5 grid through the reversed pipeline
        zg = 0.55 + 0.9 * np.arange(5) + 0.21j * (np.arange(5) - 2)
        worst = 0.0
        for z in zg:
            for yy in zg:
                if abs(z - yy) < 1e-9:
                    continue
                a_ = ev.omega(z, yy)
                b_ = evm.omega(yy, z)
                worst = max(worst, abs(a_ - b_) / max(1.0, abs(a_)))
        out.append(Check(f"{name} twist-reversal symmetry",
                         "omega-symmetry", worst, 1e-8))
        # uniqueness: closed form vs characterization on the grid
        worst = 0.0
        for yy in (1.37 + 0.45j, 0.77 - 0.31j):
            fn, _ = omega_by_characterization(ev, yy)
            for z in zg:
                a_ = ev.omega(z, yy)
                worst = max(worst, abs(a_ - fn(z)) / max(1.0, abs(a_)))
        out.append(Check(f"{name} closed form vs characterization",
                         "omega-uniqueness", worst, 1e-8))
        # residue closed forms at the two simple poles
        worst = 0.0
        for eps in (+1, -1):
            got = ev.residue_at(y, eps)
            want = ev.residue_closed_form(y, eps)
            worst = max(worst, abs(got - want) / abs(want))
        out.append(Check(f"{name} pole residues", "omega-pole-residues",
                         worst, 1e-8))
        # diagonal boundedness: values settle instead of blowing up
        vals = [abs(ev.omega(y * (1 + e), y)) for e in (1e-3, 1e-5, 1e-7)]
        spread = max(vals) - min(vals)
        out.append(Check(f"{name} diagonal regularity", "omega-diagonal",
                         spread / max(vals), 1e-2))
        # determinant formula structure
        out.extend(_detform_checks(name))
    return out


def _detform_checks(name: str) -> list:
    from .expectation import z_detform

    ev = fixtures.omega_evaluator(name)
    zeros = [1.21 + 0.4j]
    plus = [0.9 + 0.2j, 1.6 - 0.3j]
    minus = [0.7 - 0.5j, 1.9 + 0.35j]
    base = z_detform(ev, zeros, plus, minus)
    swapped = z_detform(ev, zeros, [plus[1], plus[0]], minus)
    r1 = abs(base + swapped) / max(abs(base), 1e-30)
    extended = z_detform(ev, zeros + [0.83 - 0.27j], plus, minus)
    r2 = abs(extended - 2.0 * ev.rho(0.83 - 0.27j) * base) / max(abs(extended), 1e-30)
    empty = z_detform(ev, [], [], [])
    r3 = abs(empty - 1.0)
    return [
        Check(f"{name} determinant antisymmetry", "detform-antisymmetry", r1, 1e-12),
        Check(f"{name} zero-mode multiplicativity", "detform-multiplicativity",
              r2, 1e-12),
        Check(f"{name} empty product", "detform-empty", r3, 0.5e-15 + 1e-12),
    ]


# -- oracle suite --------------------------------------------------------------


def suite_oracle(names=("P0", "P1")) -> list:
    from .space_oracle import (
        QuasiLocalOp,
        random_spin0_op,
        t_star_identity_residual,
        z_finite,
    )

    out = []
    for name in names:
        p = fixtures.chain(name)
        ek, eka = fixtures.spectral_pair(name)
        rng = np.random.default_rng(p.seed + 17)
        # identity normalization
        worst = 0.0
        for m in (1, 2):
            X = QuasiLocalOp(m, np.eye(2**m, dtype=complex), 0)
            xi2 = list(1.0 + 0.3 * rng.standard_normal(m))
            worst = max(worst, abs(z_finite(p, ek, eka, X, xi2) - 1.0))
        out.append(Check(f"{name} unit operator normalization",
                         "finite-functional-unit", worst, 1e-12))
        # shift covariance
        Xp = random_spin0_op(2, rng)
        shifted = np.kron(
            np.diag([p.qpow(p.alpha), p.qpow(-p.alpha)]), Xp.matrix
        )
        lhs = z_finite(p, ek, eka, QuasiLocalOp(3, shifted, 0), [1.0] * 3)
        rho1 = eka.t_at(1.0) / ek.t_at(1.0)
        rhs = rho1 * z_finite(p, ek, eka, Xp, [1.0, 1.0])
        out.append(Check(f"{name} shift covariance", "translation-covariance",
                         abs(lhs - rhs) / abs(rhs), 1e-9))
        # the reduction identity over random spin-0 operators
        worst = 0.0
        for m in (1, 2, 3):
            reps = 8 if m < 3 else 4
            for _ in range(reps):
                X = random_spin0_op(m, rng)
                xi2 = list(1.0 + 0.25 * rng.standard_normal(m))
                xe = 1.45 + 0.37j
                worst = max(
                    worst, t_star_identity_residual(p, ek, eka, X, xi2, xe)
                )
        out.append(Check(f"{name} conjugation reduction identity",
                         "shift-reduction-identity", worst, 1e-9))
        # homogeneous specialization
        X = random_spin0_op(2, rng)
        res = t_star_identity_residual(p, ek, eka, X, [1.0, 1.0], 1.45 + 0.37j)
        out.append(Check(f"{name} homogeneous specialization",
                         "shift-reduction-homogeneous", res, 1e-8))
    # rho sanity through the oracle on P0
    out.extend(_rho_checks("P0"))
    return out


def _rho_checks(name: str) -> list:
    from .space_oracle import QuasiLocalOp, z_finite

    p = fixtures.chain(name)
    ek, eka = fixtures.spectral_pair(name)
    ev = fixtures.omega_evaluator(name)
    out = []
    # alpha = 0 companion chain: rho identically 1
    p0 = p.replace(alpha=0.0)
    from .spectral import eigendata

    e0 = eigendata(p0, p0.kappa)
    zs = _sample_points(3, 6)
    worst = max(abs(e0.t_at(z) / e0.t_at(z) - 1.0) for z in zs)
    out.append(Check(f"{name} rho at alpha = 0", "rho-trivial-twist", worst, 1e-12))
    # half the conjugated unit operator reproduces rho via the oracle
    from .space_oracle import adjoint_action

    worst = 0.0
    for xe in (1.45 + 0.37j, 0.8 - 0.41j):
        conj = adjoint_action(p, QuasiLocalOp(1, np.eye(2, dtype=complex), 0),
                              xe, p.alpha, [1.0])
        val = z_finite(p, ek, eka, QuasiLocalOp(2, conj, 0), [1.0, xe])
        worst = max(worst, abs(val - ev.rho(xe)) / abs(ev.rho(xe)))
    out.append(Check(f"{name} rho via space functional", "rho-functional-value",
                     worst, 1e-9))
    return out


# -- dwbc suite ----------------------------------------------------------------


def suite_dwbc() -> list:
    from .dwbc import (
        DwbcInstance,
        d_n_from_detA,
        det_reduction_residuals,
        dwbc_partition,
        recurrence_residual,
    )

    out = []
    rng = np.random.default_rng(23)
    for label, cfg in (("D2", fixtures.D2), ("D3", fixtures.D3)):
        q, tau2 = cfg["q"], cfg["tau2"]
        n = len(tau2)
        # permutation symmetry
        xi2 = tuple(1.1 + 0.5 * rng.standard_normal(n) + 0.4j * rng.standard_normal(n))
        inst = DwbcInstance(q, tau2, xi2)
        base = dwbc_partition(inst)
        perm = dwbc_partition(DwbcInstance(q, tau2, xi2[::-1]))
        out.append(Check(f"{label} permutation symmetry", "dwbc-permutation",
                         abs(base - perm) / abs(base), 1e-12))
        # ice rule: too few B operators annihilate the overlap
        from .operators import monodromy_blocks

        p = inst.params()
        up = np.zeros(2**n, dtype=complex)
        up[0] = 1.0
        vec = up
        for x2 in xi2[: n - 1]:
            vec = monodromy_blocks(p, np.exp(0.5 * np.log(x2)))["B"] @ vec
        down = np.zeros(2**n, dtype=complex)
        down[-1] = 1.0
        out.append(Check(f"{label} ice rule", "dwbc-ice-rule",
                         abs(down @ vec), 1e-12))
        # determinant counterpart: ratio constant over 10 xi sets
        ratios = []
        for _ in range(10):
            xi2 = tuple(
                1.1 + 0.5 * rng.standard_normal(n) + 0.4j * rng.standard_normal(n)
            )
            inst = DwbcInstance(q, tau2, xi2)
            ratios.append(d_n_from_detA(inst) / dwbc_partition(inst))
        ratios = np.array(ratios)
        var = float(np.max(np.abs(ratios - ratios.mean())) / abs(ratios.mean()))
        out.append(Check(f"{label} determinant ratio constancy",
                         "dwbc-det-equivalence", var, 1e-8))
        # calibrated determinant reductions
        r1, r2 = det_reduction_residuals(inst)
        out.append(Check(f"{label} determinant reduction (origin row)",
                         "contour-reduction-origin", r1, 1e-10))
        out.append(Check(f"{label} determinant reduction (infinity row)",
                         "contour-reduction-infinity", r2, 1e-10))
        # recurrence at the calibrated prefactor
        xi_head = list(1.2 + 0.4 * rng.standard_normal(n - 1)
                       + 0.3j * rng.standard_normal(n - 1))
        out.append(Check(f"{label} recurrence", "dwbc-recurrence",
                         recurrence_residual(q, tau2, xi_head), 1e-10))
    return out


# -- classical suite -----------------------------------------------------------


def suite_classical() -> list:
    from .classical import (
        canonical_rho,
        curve_from_chain,
        intersection_pair,
        quantum_classical_gap,
        select_classical_family,
    )

    cfg = fixtures.C0
    out = []
    chains, family = select_classical_family(
        cfg["sigma_hats"], cfg["tau2"], cfg["kappa_hat"], cfg["nu_ladder"]
    )
    nu_min = min(chains)
    data = curve_from_chain(
        family[nu_min].t_poly, cfg["sigma_hats"], cfg["tau2"], cfg["kappa_hat"]
    )
    cr = canonical_rho(data)
    g = data.n - 1
    # intersection pairing
    worst = 0.0
    for i in range(1, g + 1):
        for j in range(1, g + 1):
            v = intersection_pair(data, "sigma", i, "sigmat", j)
            worst = max(worst, abs(v - (1.0 if i == j else 0.0)))
            worst = max(worst, abs(intersection_pair(data, "sigma", i, "sigma", j)))
    out.append(Check("C0 intersection pairing", "canonical-intersections",
                     worst, 1e-8))
    # X symmetry and rho symmetry
    xs = float(np.max(np.abs(cr.x_matrix - cr.x_matrix.T))) / max(
        1.0, float(np.max(np.abs(cr.x_matrix)))
    )
    out.append(Check("C0 X-matrix symmetry", "normalization-matrix-symmetry",
                     xs, 1e-8))
    x, y = 4.1 + 2.3j, -3.6 - 2.2j
    rsym = abs(cr.density(x, y) - cr.density(y, x)) / abs(cr.density(x, y))
    out.append(Check("C0 canonical form symmetry", "canonical-rho-symmetry",
                     rsym, 1e-8))
    # double pole normalization
    vals = [abs(cr.density(y + e, y) * e**2 - 1.0) for e in (1e-2, 1e-3)]
    out.append(Check("C0 double pole coefficient", "canonical-rho-double-pole",
                     min(vals), 1e-4))
    # a-period nondegeneracy (raises SingularPeriodMatrix on failure)
    det = abs(np.linalg.det(cr.per_sigma))
    out.append(Check("C0 a-period nondegeneracy", "period-nondegeneracy",
                     0.0 if det > 0 else 1.0, 0.5))
    # normalization of the canonical form: the x-periods vanish
    worst = 0.0
    for m in range(1, g + 1):
        worst = max(worst, abs(_rho_x_period(cr, m, y)))
    out.append(Check("C0 canonical form a-period normalization",
                     "canonical-rho-normalization", worst, 1e-6))
    # ladder trends
    rep = quantum_classical_gap(
        cfg["sigma_hats"], cfg["tau2"], cfg["kappa_hat"], cfg["nu_ladder"]
    )
    out.append(Check("C0 measure limit trend", "measure-limit-trend",
                     0.0 if rep.measure_monotone else 1.0, 0.5))
    out.append(Check("C0 two-point limit trend", "two-point-limit-trend",
                     0.0 if rep.rho_monotone else 1.0, 0.5))
    out.append(Check("C0 double-difference term trend", "difference-term-trend",
                     0.0 if rep.bad_term_monotone else 1.0, 0.5))
    return out


def _rho_x_period(cr, m: int, y: complex, nodes: int = 384) -> complex:
    """oint_{c_m} rho(x, y) dx by tracked quadrature (x-normalization check)."""
    from .classical import _continue_sqrt

    data = cr.data
    ell = data.contours[m - 1]
    th = 2 * np.pi * np.arange(nodes) / nodes
    wy = data.w_at(y)
    wx = data.w_at(ell.point(0.0))
    acc = 0.0 + 0.0j
    for k, t in enumerate(th):
        x = ell.point(t)
        if k > 0:
            wx = _continue_sqrt(data.p_coeffs, x, wx)
        acc += cr.density_with_w(x, y, wx, wy) * ell.tangent(t)
    return acc * 2 * np.pi / nodes


# -- registry ------------------------------------------------------------------

SUITES = {
    "wronskian": suite_wronskian,
    "baxter": suite_baxter,
    "bilinear": suite_bilinear,
    "exactform": suite_exactform,
    "omega": suite_omega,
    "oracle": suite_oracle,
    "dwbc": suite_dwbc,
    "classical": suite_classical,
}


def run_suite(name: str) -> list:
    if name == "all":
        out = []
        for key in SUITES:
            out.extend(SUITES[key]())
        return out
    try:
        fn = SUITES[name]
    except KeyError:
        raise KeyError(f"unknown suite {name!r}; have {sorted(SUITES)} and 'all'")
    return fn()
