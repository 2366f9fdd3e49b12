"""Command-line front end: fixtures, verification suites, data export.

Subcommands: spectrum, rho, omega (point or --grid CSV), basis-table,
expectation, dwbc, classical, verify.  Chains come either from a built-in
fixture (--fixture P0/P1) or from a flat key = value config file
(--config); domain-wall and classical runs take their own parameters.

Exit codes: 0 all checks passed / value computed; 1 a verification residual
exceeded its tolerance (the report names the failing identity); 2 invalid
input or a degenerate configuration.

Report paths also render small matplotlib figures (residual chart, grid
heat map, ladder trend) next to the delimited output; --no-figures turns
that off.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import fixtures
from .errors import ConfigError, WorkbenchError
from .model import ModelParams, Tolerances

_CONFIG_KEYS = {
    "q", "alpha", "kappa", "spins", "tau2", "sector", "seed",
    "osc_truncation", "tol_identity", "tol_converge", "extraction_radius",
    "nu_ladder", "sigma_hats", "kappa_hat", "dwbc_tau2", "dwbc_xi2",
}


def fmt_float(x: float) -> str:
    return f"{x:.17g}"


def fmt_complex(z: complex) -> str:
    z = complex(z)
    return f"{z.real:.17g}{z.imag:+.17g}i"


def parse_complex(text: str) -> complex:
    """Parse 're+imi' (also plain reals and 'i'-suffixed imaginaries)."""
    s = text.strip().replace(" ", "")
    if not s:
        raise ConfigError("empty complex literal")
    try:
        if s.endswith(("i", "I", "j", "J")):
            return complex(s[:-1] + "j")
        return complex(float(s))
    except ValueError as exc:
        raise ConfigError(f"bad complex literal {text!r}") from exc


def parse_complex_list(text: str):
    return [parse_complex(tok) for tok in text.split(",") if tok.strip()]


def load_config(path: str) -> dict:
    out = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
        key, val = (part.strip() for part in line.split("=", 1))
        if key not in _CONFIG_KEYS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        out[key] = val
    return out


def params_from_config(cfg: dict) -> ModelParams:
    needed = {"q", "alpha", "kappa", "spins", "tau2"}
    missing = needed - set(cfg)
    if missing:
        raise ConfigError(f"config missing keys: {sorted(missing)}")
    tol = Tolerances(
        identity=float(cfg.get("tol_identity", 1e-9)),
        converge=float(cfg.get("tol_converge", 1e-13)),
    )
    return ModelParams(
        q=parse_complex(cfg["q"]),
        alpha=parse_complex(cfg["alpha"]),
        kappa=parse_complex(cfg["kappa"]),
        spins=[s.strip() for s in cfg["spins"].split(",") if s.strip()],
        tau2=parse_complex_list(cfg["tau2"]),
        sector=int(cfg.get("sector", 0)),
        seed=int(cfg.get("seed", 7)),
        osc_truncation=int(cfg.get("osc_truncation", 64)),
        tol=tol,
    )


def _pipeline(args):
    """(params, omega evaluator) from --fixture or --config."""
    if args.config:
        p = params_from_config(load_config(args.config))
        from .omega import build_omega
        from .qabelian import period_matrices
        from .spectral import eigendata

        ek = eigendata(p, p.kappa)
        eka = eigendata(p, p.kappa + p.alpha)
        pd = period_matrices(p, ek, eka, include_b=(p.alpha != 0))
        return p, build_omega(p, ek, eka, pd)
    name = args.fixture or "P0"
    return fixtures.chain(name), fixtures.omega_evaluator(name)


def _write_json(path, payload):
    text = json.dumps(payload, indent=2, sort_keys=False) + "\n"
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def _poly_json(coeffs):
    return [fmt_complex(c) for c in np.asarray(coeffs, dtype=complex)]


# -- figures -------------------------------------------------------------------


def _savefig(fig, path):
    fig.savefig(path, dpi=130, metadata={"Software": None})


def _figure_residuals(checks, path):
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    names = [c.name for c in checks]
    res = np.array([max(c.residual, 1e-18) for c in checks])
    tol = np.array([c.tolerance for c in checks])
    colors = ["#2a7e43" if c.passed else "#b03a2e" for c in checks]
    fig, ax = plt.subplots(figsize=(9, 0.28 * len(names) + 1.4))
    ypos = np.arange(len(names))
    ax.barh(ypos, res, color=colors, height=0.6)
    ax.plot(tol, ypos, "k|", markersize=9, label="tolerance")
    ax.set_xscale("log")
    ax.set_yticks(ypos)
    ax.set_yticklabels(names, fontsize=6)
    ax.invert_yaxis()
    ax.set_xlabel("residual")
    ax.legend(loc="lower right", fontsize=7)
    fig.tight_layout()
    _savefig(fig, path)
    plt.close(fig)


def _figure_grid(z_vals, x_vals, grid, path):
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6, 4.6))
    mag = np.log10(np.abs(grid) + 1e-300)
    im = ax.pcolormesh(
        [z.real for z in z_vals], [x.real for x in x_vals], mag.T,
        shading="auto", cmap="viridis",
    )
    fig.colorbar(im, ax=ax, label="log10 |value|")
    ax.set_xlabel("Re zeta^2")
    ax.set_ylabel("Re xi^2")
    fig.tight_layout()
    _savefig(fig, path)
    plt.close(fig)


def _figure_trend(points, path):
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    nus = [pt.nu for pt in points]
    fig, ax = plt.subplots(figsize=(5.4, 4))
    ax.loglog(nus, [pt.measure_gap for pt in points], "o-", label="measure gap")
    ax.loglog(nus, [pt.rho_gap for pt in points], "s-", label="two-point gap")
    ax.loglog(nus, [pt.bad_term_ratio for pt in points], "^-",
              label="difference-term ratio")
    ax.set_xlabel("nu")
    ax.set_ylabel("relative gap")
    ax.legend(fontsize=8)
    fig.tight_layout()
    _savefig(fig, path)
    plt.close(fig)


# -- subcommands ---------------------------------------------------------------


def cmd_spectrum(args) -> int:
    p, ev = _pipeline(args)
    payload = {"chain": args.fixture or args.config}
    for label, ed in (("kappa", ev.ek), ("kappa_plus_alpha", ev.eka)):
        payload[label] = {
            "twist": fmt_complex(ed.lam),
            "sector": ed.sector,
            "eigenvalue_at_unit": fmt_complex(ed.eigenvalue),
            "t_poly": _poly_json(ed.t_poly),
            "q_plus_twist": fmt_complex(ed.q_plus.twist),
            "q_plus_poly": _poly_json(ed.q_plus.poly()),
            "q_minus_twist": fmt_complex(ed.q_minus.twist),
            "q_minus_poly": _poly_json(ed.q_minus.poly()),
        }
    _write_json(args.out, payload)
    return 0


def cmd_rho(args) -> int:
    _, ev = _pipeline(args)
    z = parse_complex(args.zeta2)
    sys.stdout.write(fmt_complex(ev.rho(z)) + "\n")
    return 0


def _grid_axis(axis: str):
    lo, hi, num = (tok.strip() for tok in axis.split(":"))
    return np.linspace(float(lo), float(hi), int(num))


def cmd_omega(args) -> int:
    _, ev = _pipeline(args)
    if args.grid is None:
        z = parse_complex(args.zeta2)
        x = parse_complex(args.xi2)
        sys.stdout.write(fmt_complex(ev.omega(z, x)) + "\n")
        return 0
    z_axis = _grid_axis(args.grid) + parse_complex(args.zeta2 or "0+0i")
    x_axis = _grid_axis(args.grid) + parse_complex(args.xi2 or "0+0i")
    rows = ["zeta2_re,zeta2_im,xi2_re,xi2_im,value_re,value_im"]
    grid = np.zeros((len(z_axis), len(x_axis)), dtype=complex)
    for i, z in enumerate(z_axis):
        for j, x in enumerate(x_axis):
            try:
                val = ev.omega(complex(z), complex(x))
            except WorkbenchError:
                val = complex(np.nan, np.nan)
            grid[i, j] = val
            rows.append(
                ",".join(
                    fmt_float(v)
                    for v in (z.real, z.imag, x.real, x.imag, val.real, val.imag)
                )
            )
    out = args.out or "omega_grid.csv"
    Path(out).write_text("\n".join(rows) + "\n")
    if args.figures:
        _figure_grid(z_axis, x_axis, grid, str(Path(out).with_suffix(".png")))
    return 0


def cmd_basis_table(args) -> int:
    from .expectation import basis_table

    _, ev = _pipeline(args)
    radius = args.radius
    if args.config and radius == 0.1:
        raw = load_config(args.config)
        radius = float(raw.get("extraction_radius", radius))
    table = basis_table(ev, args.pmax, radius=radius)
    payload = {
        "radius": fmt_float(table.radius),
        "t_star_values": _poly_json(table.t_star_values),
        "bc_values": [[fmt_complex(v) for v in row] for row in table.bc_values],
        "t_star_err": fmt_float(table.t_star_err),
        "bc_err": fmt_float(table.bc_err),
    }
    _write_json(args.out, payload)
    return 0


def cmd_expectation(args) -> int:
    from .expectation import z_detform

    _, ev = _pipeline(args)
    zeros = parse_complex_list(args.zeros) if args.zeros else []
    plus = parse_complex_list(args.plus) if args.plus else []
    minus = parse_complex_list(args.minus) if args.minus else []
    sys.stdout.write(fmt_complex(z_detform(ev, zeros, plus, minus)) + "\n")
    return 0


def cmd_dwbc(args) -> int:
    from .dwbc import DwbcInstance, d_n_from_detA, dwbc_partition

    tau2 = parse_complex_list(args.tau)
    xi2 = parse_complex_list(args.xi)
    if args.n is not None and args.n != len(tau2):
        raise ConfigError(f"--n {args.n} does not match {len(tau2)} tau values")
    inst = DwbcInstance(parse_complex(args.q), tuple(tau2), tuple(xi2))
    payload = {
        "n": inst.n,
        "partition_function": fmt_complex(dwbc_partition(inst)),
        "determinant_counterpart": fmt_complex(d_n_from_detA(inst)),
    }
    _write_json(args.out, payload)
    return 0


def cmd_classical(args) -> int:
    from .classical import quantum_classical_gap

    cfg = dict(fixtures.C0)
    if args.config:
        raw = load_config(args.config)
        if "sigma_hats" in raw:
            cfg["sigma_hats"] = tuple(float(x) for x in raw["sigma_hats"].split(","))
        if "tau2" in raw:
            cfg["tau2"] = tuple(parse_complex_list(raw["tau2"]))
        if "kappa_hat" in raw:
            cfg["kappa_hat"] = float(raw["kappa_hat"])
        if "nu_ladder" in raw:
            cfg["nu_ladder"] = tuple(float(x) for x in raw["nu_ladder"].split(","))
    if args.nu_ladder:
        cfg["nu_ladder"] = tuple(float(x) for x in args.nu_ladder.split(","))
    rep = quantum_classical_gap(
        cfg["sigma_hats"], cfg["tau2"], cfg["kappa_hat"], cfg["nu_ladder"]
    )
    payload = {
        "ladder": [
            {
                "nu": fmt_float(pt.nu),
                "measure_gap": fmt_float(pt.measure_gap),
                "two_point_gap": fmt_float(pt.rho_gap),
                "difference_term_ratio": fmt_float(pt.bad_term_ratio),
            }
            for pt in rep.points
        ],
        "measure_monotone": rep.measure_monotone,
        "two_point_monotone": rep.rho_monotone,
        "difference_term_monotone": rep.bad_term_monotone,
    }
    _write_json(args.out, payload)
    if args.figures and args.out:
        _figure_trend(rep.points, str(Path(args.out).with_suffix(".png")))
    return 0 if rep.all_monotone() else 1


def cmd_verify(args) -> int:
    from .verify import run_suite

    checks = run_suite(args.suite)
    payload = {
        "suite": args.suite,
        "checks": [
            {
                "name": c.name,
                "equation": c.equation,
                "residual": fmt_float(c.residual),
                "tolerance": fmt_float(c.tolerance),
                "pass": c.passed,
            }
            for c in checks
        ],
    }
    _write_json(args.out, payload)
    failed = [c for c in checks if not c.passed]
    for c in failed:
        sys.stderr.write(
            f"FAIL {c.name}: identity {c.equation} residual "
            f"{c.residual:.3e} >= {c.tolerance:g}\n"
        )
    if args.figures and args.out:
        _figure_residuals(checks, str(Path(args.out).with_suffix(".png")))
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="xxzmat",
        description="workbench for the two functions governing fermionic-basis "
                    "expectation values on a finite Matsubara chain",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, figures=False):
        p.add_argument("--fixture", choices=["P0", "P1"], default=None)
        p.add_argument("--config", default=None, help="flat key = value file")
        p.add_argument("--out", default=None, help="output path (default stdout)")
        if figures:
            p.add_argument("--no-figures", dest="figures", action="store_false")
            p.set_defaults(figures=True)

    p = sub.add_parser("spectrum", help="emit T/Q polynomial data per twist")
    common(p)
    p.set_defaults(fn=cmd_spectrum)

    p = sub.add_parser("rho", help="evaluate the eigenvalue ratio at zeta^2")
    common(p)
    p.add_argument("--zeta2", required=True)
    p.set_defaults(fn=cmd_rho)

    p = sub.add_parser("omega", help="evaluate the two-point function")
    common(p, figures=True)
    p.add_argument("--zeta2", default=None)
    p.add_argument("--xi2", default=None)
    p.add_argument("--grid", default=None,
                   help="real offsets lo:hi:num added to both points")
    p.set_defaults(fn=cmd_omega)

    p = sub.add_parser("basis-table", help="Taylor-coefficient table")
    common(p)
    p.add_argument("--pmax", type=int, required=True)
    p.add_argument("--radius", type=float, default=0.1)
    p.set_defaults(fn=cmd_basis_table)

    p = sub.add_parser("expectation", help="determinant-formula value")
    common(p)
    p.add_argument("--zeros", default="")
    p.add_argument("--plus", default="")
    p.add_argument("--minus", default="")
    p.set_defaults(fn=cmd_expectation)

    p = sub.add_parser("dwbc", help="domain-wall partition function")
    p.add_argument("--q", default="0.6+0.25i")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--tau", required=True, help="comma list of tau^2")
    p.add_argument("--xi", required=True, help="comma list of xi^2")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_dwbc)

    p = sub.add_parser("classical", help="hyperelliptic-limit ladder report")
    p.add_argument("--config", default=None)
    p.add_argument("--nu-ladder", default=None)
    p.add_argument("--out", default=None)
    p.add_argument("--no-figures", dest="figures", action="store_false")
    p.set_defaults(figures=True, fn=cmd_classical)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", default="all",
                   choices=["all", "wronskian", "baxter", "bilinear",
                            "exactform", "omega", "oracle", "dwbc", "classical"])
    p.add_argument("--out", default=None)
    p.add_argument("--no-figures", dest="figures", action="store_false")
    p.set_defaults(figures=True, fn=cmd_verify)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except WorkbenchError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except (ValueError, KeyError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
