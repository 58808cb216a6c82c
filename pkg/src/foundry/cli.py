"""Command-line front end.

``foundry constants|surface|spectral|verify --config <path> [--out <dir>]``

Exit codes: 0 success, 2 configuration error, 3 solver did not converge,
4 surface verification failed, 5 spectral criterion failed.
"""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

import numpy as np

from .config import RunConfig, load_config
from .elliptic import Lattice, lattice_constants
from .errors import ConfigError, FoundryError, InvalidLattice, NoConvergence
from .spectral import (
    FOUR_END,
    TWO_END,
    kp_closing_check,
    puncture_residues,
    spectral_scan,
)
from .surfaces import (
    SpinorConfig,
    build_immersion,
    period_vector,
    sample_mesh,
    solve_general_four_end,
    solve_special_four_end,
    solve_two_end,
    two_end_open_generator,
)
from .tolerances import TOL
from .verify import identity_checks, run_suite

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NO_CONVERGENCE = 3
EXIT_VERIFY = 4
EXIT_SPECTRAL = 5


# ---------------------------------------------------------------------------
# output


def format_value(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return "%.16e" % float(value)
    if isinstance(value, (complex, np.complexfloating)):
        v = complex(value)
        return "%.16e %.16e" % (v.real, v.imag)
    if isinstance(value, (list, tuple, np.ndarray)):
        return " ".join(format_value(v) for v in value)
    return str(value)


def render_report(report: dict) -> str:
    return "".join(f"{k} = {format_value(report[k])}\n" for k in sorted(report))


def emit_report(report: dict, path) -> None:
    Path(path).write_text(render_report(report))


def export_obj(mesh, path) -> None:
    lines = ["# foundry minimal surface mesh\n"]
    for k in sorted(mesh.metadata):
        lines.append(f"# {k} = {format_value(mesh.metadata[k])}\n")
    for v in mesh.vertices:
        lines.append("v %.16e %.16e %.16e\n" % (v[0], v[1], v[2]))
    for f in mesh.faces:
        lines.append("f %d %d %d\n" % (f[0] + 1, f[1] + 1, f[2] + 1))
    Path(path).write_text("".join(lines))


# ---------------------------------------------------------------------------
# config interpretation


def _lattice(cfg: RunConfig) -> Lattice:
    w1 = cfg.require("lattice", "omega1")
    w3 = cfg.require("lattice", "omega3")
    try:
        return Lattice(w1, w3)
    except InvalidLattice as exc:
        raise ConfigError(f"invalid lattice: {exc}", cfg.line_of("lattice", "omega3")) from None


def _threads() -> int:
    raw = os.environ.get("FOUNDRY_THREADS")
    if raw is None or raw == "":
        return 1
    try:
        n = int(raw)
    except ValueError:
        raise ConfigError(f"FOUNDRY_THREADS must be a positive integer, got {raw!r}") from None
    if n <= 0:
        raise ConfigError(f"FOUNDRY_THREADS must be a positive integer, got {raw!r}")
    return n


def _explicit_coefficients(cfg: RunConfig, family: str) -> bool:
    names = "abcd" if family == FOUR_END else "a"
    return any(cfg.has("family", k) for k in names)


def _solve(cfg: RunConfig, lat: Lattice, info: dict) -> SpinorConfig:
    """Build the spinor configuration, solving the period problem if asked."""
    family = cfg.require("family", "family")
    explicit = _explicit_coefficients(cfg, family)
    default = "none" if explicit else ("special" if family == FOUR_END else "two_end")
    method = cfg.get("solve", "method", default)
    info["solve.method"] = method
    if family == FOUR_END:
        a = cfg.get("family", "a", 0j)
        b = cfg.get("family", "b", 0j)
        if method == "special":
            if a != 0 or b != 0:
                raise ConfigError("method 'special' requires a = b = 0", cfg.line_of("solve", "method"))
            c, d = solve_special_four_end(lat)
            return SpinorConfig.four_end(lat, 0, 0, c, d)
        if method == "general":
            guess = solve_special_four_end(lat)
            if cfg.has("family", "c") and cfg.has("family", "d"):
                guess = (cfg.get("family", "c"), cfg.get("family", "d"))
            rep = solve_general_four_end(
                lat, a, b, guess, solve_b=cfg.get("solve", "solve_b", False),
                max_iter=cfg.get("solve", "max_iterations", TOL.newton_iterations),
            )
            info["solve.iterations"] = rep.iterations
            info["solve.residual"] = rep.residual
            return SpinorConfig.four_end(lat, a, rep.b, rep.c, rep.d)
        if method == "none":
            return SpinorConfig.four_end(lat, a, b, cfg.get("family", "c", 0j), cfg.get("family", "d", 0j))
        raise ConfigError(f"method {method!r} does not apply to four_end", cfg.line_of("solve", "method"))
    m = cfg.get("family", "m", 1)
    n = cfg.get("family", "n", 0)
    if (m, n) == (0, 0):
        raise ConfigError("(m, n) must be non-zero", cfg.line_of("family", "m"))
    if method == "two_end":
        if explicit:
            raise ConfigError("method 'two_end' computes a; remove the explicit coefficient",
                              cfg.line_of("family", "a"))
        a, residual = solve_two_end(lat, m, n)
        info["solve.residual"] = residual
        return SpinorConfig.two_end(lat, a, m, n)
    if method == "none":
        return SpinorConfig.two_end(lat, cfg.require("family", "a"), m, n)
    raise ConfigError(f"method {method!r} does not apply to two_end", cfg.line_of("solve", "method"))


def _copies(cfg: RunConfig, scfg: SpinorConfig) -> tuple:
    raw = cfg.get("sampling", "copies", (1,))
    if len(raw) == 2:
        return raw
    k = raw[0]
    if scfg.family == FOUR_END:
        return (k, k)
    m, n = scfg.period_index
    if n == 0:
        return (1, k)
    if m == 0:
        return (k, 1)
    return (k, k)


def _out_dir(cfg: RunConfig, override) -> Path:
    out = Path(override) if override else Path(cfg.get("output", "directory", "."))
    out.mkdir(parents=True, exist_ok=True)
    return out


def _constants_report(lat: Lattice) -> dict:
    k = lattice_constants(lat)
    rep = {
        "lattice.omega1": complex(lat.omega1),
        "lattice.omega3": complex(lat.omega3),
        "legendre_residual": k.legendre_residual(lat),
        "e_sum_residual": k.e_sum_residual(),
    }
    for j in (1, 2, 3):
        rep[f"e{j}"] = complex(k.e[j - 1])
        rep[f"eta{j}"] = complex(k.eta[j - 1])
    for name, val in identity_checks(lat).items():
        rep[f"identity_check.{name}"] = float(val)
    return rep


def _surface_report(scfg: SpinorConfig, cfg: RunConfig, info: dict):
    rep = _constants_report(scfg.lat)
    rep.update(info)
    rep["family"] = scfg.family
    for name, val in zip("abcd" if scfg.family == FOUR_END else "a", scfg.coefficients):
        rep[f"coefficient.{name}"] = val
    if scfg.period_index is not None:
        rep["period_index"] = scfg.period_index
    for j, g in zip((1, 3), scfg.surface_lat.generators):
        rep[f"period_vector.{j}"] = period_vector(scfg, g)
    if scfg.family == TWO_END:
        try:
            rep["open_period_vector"] = period_vector(scfg, two_end_open_generator(scfg))
        except ValueError:
            pass
    suite = run_suite(
        scfg,
        samples=cfg.get("sampling", "samples", 500),
        seed=cfg.get("sampling", "seed", 0),
        zero_resolution=cfg.get("sampling", "zero_resolution", 120),
    )
    rep.update(suite.as_dict())
    return rep, suite


# ---------------------------------------------------------------------------
# commands


def cmd_constants(cfg: RunConfig, out: Path) -> int:
    lat = _lattice(cfg)
    rep = _constants_report(lat)
    emit_report(rep, out / cfg.get("output", "report", "report.txt"))
    sys.stdout.write(render_report(rep))
    return EXIT_OK


def _run_surface(cfg: RunConfig, out: Path, with_mesh: bool) -> int:
    lat = _lattice(cfg)
    info = {}
    report_path = out / cfg.get("output", "report", "report.txt")
    try:
        scfg = _solve(cfg, lat, info)
    except NoConvergence as exc:
        rep = _constants_report(lat)
        rep.update(info)
        rep["solve.converged"] = False
        rep["solve.residual"] = float(exc.residual)
        rep["solve.iterations"] = int(exc.iterations)
        emit_report(rep, report_path)
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_NO_CONVERGENCE
    rep, suite = _surface_report(scfg, cfg, info)
    if with_mesh:
        form = build_immersion(scfg)
        clip = cfg.get("sampling", "clip_radius", form.default_clip)
        if clip <= 0:
            raise ConfigError("clip_radius must be positive", cfg.line_of("sampling", "clip_radius"))
        resolution = cfg.get("sampling", "resolution", 64)
        if resolution < 8:
            raise ConfigError("resolution must be at least 8", cfg.line_of("sampling", "resolution"))
        mesh = sample_mesh(form, resolution, clip, _copies(cfg, scfg))
        mesh_name = cfg.get("output", "mesh", "mesh.obj")
        export_obj(mesh, out / mesh_name)
        rep["mesh.file"] = mesh_name
        rep["mesh.vertices"] = len(mesh.vertices)
        rep["mesh.faces"] = len(mesh.faces)
    emit_report(rep, report_path)
    sys.stdout.write(render_report(rep))
    if not suite.passed:
        sys.stderr.write("verification failed: " + ", ".join(suite.failures()) + "\n")
        return EXIT_VERIFY
    return EXIT_OK


def cmd_surface(cfg: RunConfig, out: Path) -> int:
    return _run_surface(cfg, out, with_mesh=True)


def cmd_verify(cfg: RunConfig, out: Path) -> int:
    return _run_surface(cfg, out, with_mesh=False)


def cmd_spectral(cfg: RunConfig, out: Path) -> int:
    lat = _lattice(cfg)
    family = cfg.require("family", "family")
    grid = cfg.get("sampling", "grid", 64)
    eps = cfg.get("sampling", "eps", TOL.control_log_distance)
    scan = spectral_scan(family, lat, grid, eps=eps, workers=_threads())
    rep = {
        "family": family,
        "lattice.omega1": complex(lat.omega1),
        "lattice.omega3": complex(lat.omega3),
        "scan.grid": grid,
        "scan.samples": len(scan.samples),
        "scan.flagged": len(scan.flagged),
        "scan.control_log_distance": eps,
        "scan.on_curve_fraction": scan.fraction_on_curve(),
        "scan.on_curve_max": float(np.nanmax(scan.on_curve)),
        "scan.off_curve_min": scan.min_off_curve(),
        "scan.conjugate_fraction": scan.fraction_conjugate(),
        "scan.conjugate_first_component_min": float(np.nanmin(scan.conjugate_direct)),
        "scan.conjugate_off_curve_min": scan.min_conjugate_off(),
        "scan.conjugate_distinct_fraction": scan.fraction_distinct(),
        "scan.excluded_controls": scan.excluded_controls(),
        "threshold.on_curve": TOL.on_curve,
        "threshold.off_curve": TOL.off_curve,
        "threshold.on_curve_fraction": TOL.on_curve_fraction,
        "threshold.kp_integrality": TOL.kp_integrality,
    }
    edges, on_counts, off_counts = scan.histogram()
    for i in range(len(on_counts)):
        key = f"histogram.{i:02d}"
        rep[key + ".log10_lower"] = float(edges[i])
        rep[key + ".on"] = int(on_counts[i])
        rep[key + ".off"] = int(off_counts[i])
    kp_ok = True
    for r in kp_closing_check(family, lat):
        key = f"kp.cycle{r.cycle}.form{r.form}"
        rep[key + ".period_over_2pii"] = r.period_over_2pii
        rep[key + ".nearest"] = r.nearest
        rep[key + ".residual"] = r.residual
        kp_ok &= r.residual < TOL.kp_integrality
    for j, res in zip((1, 3), puncture_residues(family, lat)):
        rep[f"kp.puncture_residue.form{j}"] = abs(res)
        kp_ok &= abs(res) < TOL.kp_integrality
    agree = scan.agreement()
    rep["criterion.agreement"] = agree
    rep["criterion.kp_integrality"] = kp_ok
    rep["criterion.all_pass"] = agree and kp_ok
    emit_report(rep, out / cfg.get("output", "report", "report.txt"))
    rows = ["index alpha_re alpha_im h1_re h1_im h3_re h3_im det_ratio off_curve conjugate\n"]
    for i, s in enumerate(scan.samples):
        rows.append("%d %s %s %s %s %s %s\n" % (
            i, format_value(s.alpha), format_value(complex(s.h.h1)), format_value(complex(s.h.h3)),
            format_value(s.det_ratio), format_value(float(scan.off_curve[i])),
            format_value(float(scan.conjugate[i]))))
    Path(out / cfg.get("output", "samples", "samples.txt")).write_text("".join(rows))
    sys.stdout.write(render_report(rep))
    return EXIT_OK if (agree and kp_ok) else EXIT_SPECTRAL


COMMANDS = {
    "constants": cmd_constants,
    "surface": cmd_surface,
    "spectral": cmd_spectral,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="foundry", description=__doc__.splitlines()[0])
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--config", required=True, help="INI-style run configuration")
    parser.add_argument("--out", default=None, help="output directory (overrides [output] directory)")
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args.config)
        out = _out_dir(cfg, args.out)
        return COMMANDS[args.command](cfg, out)
    except ConfigError as exc:
        sys.stderr.write(f"config error: {exc}\n")
        return EXIT_CONFIG
    except FoundryError as exc:
        # remaining library errors stem from unusable input (degenerate lattice etc.)
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
