"""Command-line harness: verify, tabulate, kernel, limit-study.

Exit statuses: 0 all checks passed, 1 a check failed, 2 configuration error,
3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from pathlib import Path

import numpy as np

from . import harmonic as ho
from . import morse
from .checks import run_checks
from .config import ConfigError, RunConfig, load_config, parse_assignment
from .quadrature import QuadratureError
from .report import CheckResult, VerificationReport

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_NUMERIC = 0, 1, 2, 3

DEFAULT_BETA_PATH = "0.5,0.25,0.125,0.0625"


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", type=Path, help="INI file with [run], [harmonic], [morse], [limits], [tolerances], [truncations]")
    p.add_argument("--model", choices=["harmonic", "morse"])
    p.add_argument("--z-re", type=float)
    p.add_argument("--z-im", type=float)
    p.add_argument("--omega", type=float)
    p.add_argument("--v0", type=float)
    p.add_argument("--beta", type=float)
    p.add_argument("--gamma", type=float)
    p.add_argument("--m-max", type=int)
    p.add_argument("--n-max", type=int)
    p.add_argument("--tol", action="append", default=[], metavar="NAME=VALUE", help="tolerance override by check id (or 'all')")
    p.add_argument("--out", type=Path, help="output directory")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="jmcs", description="Generalized coherent states by J-matrix tridiagonalization.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run the identity checks for a model")
    _add_common(p)

    p = sub.add_parser("tabulate", help="write wavefunction or coefficient values to CSV")
    _add_common(p)
    p.add_argument("what", choices=["phi", "psi", "glauber", "coefficients"])
    p.add_argument("--index", type=int, default=0, help="m for phi/coefficients, n for psi")
    p.add_argument("--x-min", type=float, default=-6.0)
    p.add_argument("--x-max", type=float, default=6.0)
    p.add_argument("--points", type=int, default=121)

    p = sub.add_parser("kernel", help="Landau-level reproducing kernel: series vs closed form")
    _add_common(p)
    p.add_argument("--w-re", type=float, default=0.0)
    p.add_argument("--w-im", type=float, default=0.0)
    p.add_argument("--index", type=int, default=0, help="Landau level m")
    p.add_argument("--terms", type=int, help="series truncation N")

    p = sub.add_parser("limit-study", help="distance between Morse and harmonic GCS as beta -> 0")
    _add_common(p)
    p.add_argument("--index", type=int, default=0, help="m")
    p.add_argument("--betas", default=DEFAULT_BETA_PATH, help="comma-separated decreasing beta values")
    return parser


def resolve_config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig()
    if args.model:
        cfg.model = args.model
    cfg = load_config(args.config, cfg)
    if args.model:
        cfg.model = args.model
    if args.z_re is not None or args.z_im is not None:
        base = cfg.resolved_z()
        cfg.z = complex(base.real if args.z_re is None else args.z_re, base.imag if args.z_im is None else args.z_im)
    for attr, val in (("omega", args.omega), ("V0", args.v0), ("beta", args.beta), ("gamma", args.gamma),
                      ("m_max", args.m_max), ("n_max", args.n_max)):
        if val is not None:
            setattr(cfg, attr, val)
    for item in args.tol:
        name, value = parse_assignment(item)
        cfg.tolerances[name] = value
    if args.out is not None:
        cfg.output_path = args.out
    return cfg.validate()


def _fmt(x: float) -> str:
    return repr(float(x))


def _write_csv(path: Path, header: list[str], columns: list[str], rows) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for line in header:
            fh.write(f"# {line}\n")
        fh.write(",".join(columns) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")
            fh.flush()


def cmd_verify(cfg: RunConfig) -> int:
    report = run_checks(cfg)
    json_path, _ = report.write(cfg.output_path, f"verify_{cfg.model}")
    sys.stdout.write(report.to_table())
    sys.stdout.write(f"report: {json_path}\n")
    return EXIT_OK if report.all_passed else EXIT_FAIL


def cmd_tabulate(cfg: RunConfig, what: str, index: int, x_min: float, x_max: float, points: int) -> int:
    if points < 1 or not x_max >= x_min:
        raise ConfigError("grid needs points >= 1 and x_max >= x_min")
    z = cfg.resolved_z()
    header = [f"model={cfg.model} z=({z.real!r},{z.imag!r})"]
    coord = "x"
    if what == "coefficients":
        if cfg.model != "harmonic":
            raise ConfigError("coefficients are tabulated for the harmonic model")
        n_terms = cfg.truncations["coefficient_terms"]
        label = ho.GCSLabel(z, index, ho.HarmonicParams(cfg.omega))
        vals = ho.expansion_coefficients(label, n_terms)
        grid = np.arange(n_terms, dtype=float)
        header.append(f"expansion coefficients C_s^(m,omega)(z) of Phi_m over psi_s; m={index} omega={cfg.omega!r}")
        coord = "s"
    else:
        grid = np.linspace(x_min, x_max, points)
        if cfg.model == "harmonic":
            params = ho.HarmonicParams(cfg.omega)
            if what == "phi":
                vals = ho.gcs_phi(ho.GCSLabel(z, index, params), grid)
                header.append(f"harmonic GCS Phi_m^(z,omega)(xi) closed Hermite-Gaussian form; m={index} omega={cfg.omega!r}")
            elif what == "psi":
                vals = ho.eigenfunction_psi(index, params, grid).astype(complex)
                header.append(f"harmonic eigenfunction psi_n(xi); n={index} omega={cfg.omega!r}")
            else:
                vals = ho.canonical_cs(z, grid)
                header.append("canonical coherent state <xi|z> (omega = 1)")
            coord = "xi"
        else:
            params = morse.MorseParams(cfg.V0, cfg.beta)
            label = morse.MorseGCSLabel(z, params)
            gamma = label.xi_z.real if cfg.gamma is None else cfg.gamma
            pinfo = f"V0={cfg.V0!r} beta={cfg.beta!r} D={params.D!r}"
            if what == "phi":
                vals = morse.gcs_phi_morse(label, index, grid)
                header.append(f"Morse GCS phi_m^(z,beta,D)(x) Laguerre form; m={index} {pinfo}")
            elif what == "psi":
                vals = morse.bound_state(params, index, grid).astype(complex)
                header.append(f"Morse bound state psi_mu(x); mu={index} {pinfo}")
            else:
                vals = morse.glauber_cs(label, gamma, grid)
                header.append(f"Morse Glauber coherent state <x|z> closed form; gamma={gamma!r} {pinfo}")
    vals = np.asarray(vals, dtype=complex)
    if not np.all(np.isfinite(vals)):
        raise FloatingPointError("non-finite values in tabulation")
    header.append("complex values split into real and imaginary columns")
    path = cfg.output_path / f"{what}.csv"
    rows = zip(grid, vals.real, vals.imag, np.abs(vals))
    _write_csv(path, header, [coord, "re", "im", "modulus"], rows)
    sys.stdout.write(f"wrote {path}\n")
    return EXIT_OK


def cmd_kernel(cfg: RunConfig, w: complex, m: int, n_terms: int | None) -> int:
    z = cfg.resolved_z()
    n_terms = n_terms or cfg.truncations["kernel_terms"]
    if n_terms < 1:
        raise ConfigError("kernel needs at least one term")
    series, closed = ho.landau_kernel(z, w, m, n_terms)
    rel_tol = cfg.tolerance("kernel", 1e-8)
    # gap measured against the Cauchy-Schwarz size sqrt(K(z,z) K(w,w)) of the kernel
    scale = math.exp(0.5 * (abs(z) ** 2 + abs(w) ** 2)) / math.pi
    entry = CheckResult(
        "kernel",
        "level-m reproducing kernel: sum_s C_s(z) conj(C_s(w)) / pi vs pi^-1 e^{z w*} L_m(|z-w|^2)",
        closed,
        series,
        rel_tol * scale,
        extra={"relative_gap": abs(series - closed) / scale, "m": m, "terms": n_terms},
    )
    sys.stdout.write(json.dumps(entry.to_dict()) + "\n")
    return EXIT_OK if entry.passed else EXIT_FAIL


def cmd_limit_study(cfg: RunConfig, m: int, betas: list[float]) -> int:
    z = cfg.z if cfg.z is not None else complex(0.3, 0.0)
    if any(b2 >= b1 for b1, b2 in zip(betas, betas[1:])) or any(b <= 0 for b in betas):
        raise ConfigError("beta path must be positive and strictly decreasing")
    start = time.perf_counter()
    path = cfg.output_path / "limit_study.csv"
    path.parent.mkdir(parents=True, exist_ok=True)
    rows = []
    header = [
        "harmonic limit: phase-aligned L2 distance between phi_m^(z,beta,D) with V0 = omega^2/(2 beta^2) and Phi_m^(-z*,omega)",
        f"z=({z.real!r},{z.imag!r}) omega={cfg.omega!r} m={m}",
    ]
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for line in header:
            fh.write(f"# {line}\n")
        fh.write("beta,distance,phase\n")
        for beta in betas:
            dist, phase = morse.harmonic_limit_point(z, cfg.omega, m, beta)
            rows.append((beta, dist, phase))
            fh.write(f"{_fmt(beta)},{_fmt(dist)},{_fmt(phase)}\n")
            fh.flush()
    dists = [r[1] for r in rows]
    entries = []
    if len(rows) > 1:
        rise = max(max(b - a for a, b in zip(dists, dists[1:])), 0.0)
        entries.append(CheckResult("limit.monotone", "distance strictly decreasing along the beta path",
                                   0j, rise, cfg.tolerance("limit.monotone", 1e-12)))
    threshold = cfg.tolerance("limit.final_distance", 0.05)
    entries.append(CheckResult("limit.final_distance", "distance at the smallest beta", 0j, dists[-1], threshold))
    report = VerificationReport(entries, time.perf_counter() - start)
    report.write(cfg.output_path, "limit_study")
    sys.stdout.write(report.to_table())
    sys.stdout.write(f"wrote {path}\n")
    return EXIT_OK if report.all_passed else EXIT_FAIL


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = resolve_config(args)
        if args.command == "verify":
            return cmd_verify(cfg)
        if args.command == "tabulate":
            return cmd_tabulate(cfg, args.what, args.index, args.x_min, args.x_max, args.points)
        if args.command == "kernel":
            return cmd_kernel(cfg, complex(args.w_re, args.w_im), args.index, args.terms)
        betas = [float(b) for b in args.betas.split(",") if b.strip()]
        return cmd_limit_study(cfg, args.index, betas)
    except ConfigError as exc:
        sys.stderr.write(f"config error: {exc}\n")
        return EXIT_CONFIG
    except (QuadratureError, ArithmeticError) as exc:
        sys.stderr.write(f"numerical failure: {exc}\n")
        return EXIT_NUMERIC
    except (ValueError, IndexError) as exc:
        sys.stderr.write(f"config error: {exc}\n")
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
