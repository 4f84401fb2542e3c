"""Command-line driver: demos, invariant suites, factorisation, data export.

Every run emits a canonical JSON report (sorted keys, compact separators,
no timestamps) embedding the effective config, the seed, and the tool
version, so identical config + seed reproduce byte-identical reports.
Array outputs are written in the CSV or JSON layouts of
:mod:`weylkit.wigner`; reports themselves are always JSON.

Exit codes: 0 success, 1 invariant failure or gate refusal, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .checks import SUITE_NAMES, run_all, run_suite
from .factorize import (
    GaussianAlphaSpec,
    alpha_kernel_from_A,
    autv_residual,
    recover_A,
)
from .grids import GridSpec, hermite_basis
from .star import purity_residual, star
from .wigner import (
    phase_to_json,
    weyl_wigner,
    wigner_of_state,
    write_phase_csv,
)

__all__ = ["RunConfig", "main"]


class UsageError(Exception):
    """Invalid arguments, config, or input files (exit code 2)."""


# ----------------------------------------------------------------------
# configuration
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class RunConfig:
    """Effective run configuration, recorded verbatim in every report."""

    n: int = 64
    dx: float = 0.25
    r_max: int = 8
    out: str = "."
    format: str = "json"
    seed: int = 0
    tol: float | None = None


_CONFIG_TYPES = {
    "n": int,
    "dx": float,
    "r_max": int,
    "out": str,
    "format": str,
    "seed": int,
    "tol": float,
}


def _load_config_file(path: str) -> dict:
    """Parse a flat key=value config file ('#' starts a comment)."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read config file: {exc}")
    values = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or not key or not value:
            raise UsageError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        if key not in _CONFIG_TYPES:
            raise UsageError(
                f"{path}:{lineno}: unknown config key {key!r} "
                f"(known: {', '.join(sorted(_CONFIG_TYPES))})"
            )
        try:
            values[key] = _CONFIG_TYPES[key](value)
        except ValueError:
            raise UsageError(f"{path}:{lineno}: bad value for {key}: {value!r}")
    return values


def _build_config(args) -> tuple:
    """Resolve defaults <- config file <- CLI flags; returns (config, explicit)."""
    values = {}
    if getattr(args, "config", None):
        values.update(_load_config_file(args.config))
    for key in _CONFIG_TYPES:
        flag = getattr(args, "grid_n" if key == "n" else key, None)
        if flag is not None:
            values[key] = flag
    explicit = set(values)
    config = RunConfig(**values)
    if config.format not in ("csv", "json"):
        raise UsageError("format must be 'csv' or 'json'")
    if config.r_max < 1:
        raise UsageError("r_max must be a positive integer")
    if config.seed < 0:
        raise UsageError("seed must be non-negative")
    if config.tol is not None and not config.tol > 0:
        raise UsageError("tol must be positive")
    try:
        GridSpec(config.n, config.dx)
    except ValueError as exc:
        raise UsageError(str(exc))
    return config, explicit


def _grid(config: RunConfig) -> GridSpec:
    return GridSpec(config.n, config.dx)


# ----------------------------------------------------------------------
# report plumbing
# ----------------------------------------------------------------------


def canonical_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, separators=(",", ":"), allow_nan=False)


def _envelope(command: str, config: RunConfig, body: dict) -> dict:
    # the output directory is deliberately not embedded: the same
    # config + seed gives byte-identical reports wherever they land
    return {
        "command": command,
        "config": {
            "n": config.n,
            "dx": config.dx,
            "r_max": config.r_max,
            "format": config.format,
            "seed": config.seed,
            "tol": config.tol,
        },
        "seed": config.seed,
        "version": __version__,
        **body,
    }


def _out_dir(config: RunConfig) -> Path:
    path = Path(config.out)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _emit_report(name: str, report: dict, config: RunConfig) -> None:
    text = canonical_json(report)
    (_out_dir(config) / name).write_text(text + "\n")
    print(text)


def _write_phase_array(stem: str, A, grid: GridSpec, config: RunConfig) -> str:
    name = f"{stem}.{config.format}"
    path = _out_dir(config) / name
    if config.format == "csv":
        with open(path, "w") as fh:
            write_phase_csv(fh, A, grid)
    else:
        path.write_text(canonical_json(phase_to_json(A, grid)) + "\n")
    return name


# ----------------------------------------------------------------------
# wigner subcommand
# ----------------------------------------------------------------------


def _split_superposition(text: str) -> list:
    """Split on top-level +/-, keeping signs with their terms."""
    terms, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif (
            ch in "+-"
            and depth == 0
            and i > start
            and text[i - 1] not in "eE*/("
        ):
            terms.append(text[start:i])
            start = i
    terms.append(text[start:])
    return [t for t in terms if t.strip()]


def _basis_state(name: str, basis, r_max: int) -> np.ndarray:
    kind, sep, index = name.partition(":")
    if kind != "hermite" or not sep:
        raise UsageError(f"unknown state name {name!r} (expected 'hermite:k')")
    try:
        k = int(index)
    except ValueError:
        raise UsageError(f"bad basis index in {name!r}")
    if not 0 <= k < r_max:
        raise UsageError(f"basis index {k} out of range (r_max = {r_max})")
    return basis[k]


def _load_state_file(path: str, n: int) -> np.ndarray:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read state file: {exc}")
    try:
        if path.endswith(".json"):
            payload = json.loads(text)
            re = np.asarray(payload["re"], dtype=float)
            im = np.asarray(payload.get("im", np.zeros_like(re)), dtype=float)
            psi = re + 1j * im
        else:
            rows = [ln for ln in text.splitlines() if ln.strip()]
            psi = np.array(
                [
                    complex(*(float(part) for part in ln.split(",")))
                    if "," in ln
                    else complex(float(ln))
                    for ln in rows
                ]
            )
    except (ValueError, KeyError, TypeError, json.JSONDecodeError) as exc:
        raise UsageError(f"malformed state file {path!r}: {exc}")
    if psi.shape != (n,):
        raise UsageError(
            f"state file holds {psi.size} samples but the grid needs {n}"
        )
    return psi


def _parse_state(spec: str, grid: GridSpec, r_max: int) -> np.ndarray:
    spec = spec.strip()
    if spec.startswith("file:"):
        return _load_state_file(spec[5:], grid.n)
    basis = hermite_basis(grid, r_max)
    psi = np.zeros(grid.n, dtype=complex)
    for term in _split_superposition(spec):
        term = term.strip()
        sign = 1.0
        while term and term[0] in "+-":
            if term[0] == "-":
                sign = -sign
            term = term[1:].lstrip()
        if "*" in term:
            coeff_text, _, name = term.rpartition("*")
            try:
                coeff = complex(coeff_text.strip())
            except ValueError:
                raise UsageError(f"bad coefficient {coeff_text!r} in state")
        else:
            coeff, name = 1.0, term
        psi = psi + sign * coeff * _basis_state(name.strip(), basis, r_max)
    return psi


def cmd_wigner(args, config: RunConfig, explicit) -> int:
    grid = _grid(config)
    psi = _parse_state(args.state, grid, config.r_max)
    norm = float(np.sqrt(grid.dx) * np.linalg.norm(psi))
    if norm == 0.0:
        raise UsageError("state is identically zero")
    psi = psi / norm  # unit norm: dx * sum |psi|^2 = 1
    W = wigner_of_state(psi, grid)
    r1, r2 = purity_residual(W, grid)
    name = _write_phase_array("wigner", W, grid, config)
    report = _envelope(
        "wigner",
        config,
        {
            "state": args.state,
            "input_norm": norm,
            "normalized": True,
            "purity": {"idempotency": r1, "integrals": r2},
            "w_at_origin": float(W[grid.n, grid.n // 2].real),
            "files": {"wigner": name},
        },
    )
    _emit_report("wigner-report.json", report, config)
    return 0


# ----------------------------------------------------------------------
# check / reps subcommands
# ----------------------------------------------------------------------


def cmd_check(args, config: RunConfig, explicit) -> int:
    grid = _grid(config) if explicit & {"n", "dx"} else None
    if args.suite == "all":
        body = run_all(seed=config.seed, tol=config.tol, grid=grid)
    else:
        body = run_suite(args.suite, seed=config.seed, tol=config.tol, grid=grid)
    report = _envelope("check", config, body)
    _emit_report(f"check-{args.suite}.json", report, config)
    return 0 if body["passed"] else 1


def cmd_reps(args, config: RunConfig, explicit) -> int:
    body = run_suite("reps", seed=config.seed, tol=config.tol)
    report = _envelope("reps", config, body)
    _emit_report("reps-report.json", report, config)
    return 0 if body["passed"] else 1


# ----------------------------------------------------------------------
# factorize subcommand
# ----------------------------------------------------------------------


def _recovery_lattice():
    ticks = np.linspace(-2.0, 2.0, 17)
    return ticks, [(x, y) for x in ticks for y in ticks]


def _write_recovered(values, ticks, config: RunConfig) -> str:
    name = f"recovered_A.{config.format}"
    path = _out_dir(config) / name
    grid_vals = np.asarray(values, dtype=float).reshape(ticks.size, ticks.size)
    if config.format == "csv":
        with open(path, "w") as fh:
            fh.write("# columns q,p,A\n")
            for i, x in enumerate(ticks):
                for j, y in enumerate(ticks):
                    fh.write(f"{float(x)!r},{float(y)!r},{float(grid_vals[i, j])!r}\n")
    else:
        payload = {
            "q": ticks.tolist(),
            "p": ticks.tolist(),
            "values": grid_vals.tolist(),
        }
        path.write_text(canonical_json(payload) + "\n")
    return name


def _grid_consistency(spec: GaussianAlphaSpec, n: int, seed: int) -> float:
    """Residual between the gridded forward map and the closed-form kernel.

    Samples the generating symbol on an n-point grid, rebuilds the
    two-point kernel from the samples, and compares it with the closed
    form at random shift-aligned point pairs.
    """
    grid = GridSpec(n, float(np.sqrt(np.pi / n)))
    qs, ps = grid.q_matrix(), grid.p_matrix()
    samples = spec.a_function(qs, ps)
    gridded = alpha_kernel_from_A(samples, grid, background=spec.background)
    closed = spec.alpha_kernel()
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(100):
        q1, p1 = rng.uniform(-1.5, 1.5, size=2)
        jq, jp = rng.integers(-8, 9, size=2)
        q2 = q1 + jq * grid.dx / 2
        p2 = p1 + jp * grid.dp / 2
        worst = max(
            worst,
            float(abs(gridded(q1, p1, q2, p2) - closed(q1, p1, q2, p2))),
        )
    return worst


def cmd_factorize(args, config: RunConfig, explicit) -> int:
    try:
        spec = GaussianAlphaSpec(args.tau, args.sigma, args.epsilon)
    except ValueError as exc:
        raise UsageError(str(exc))
    threshold = config.tol if config.tol is not None else 1e-4
    R = spec.r_function()
    residual = autv_residual(R)

    ratio = None
    if spec.epsilon == -1:
        calibration = autv_residual(
            GaussianAlphaSpec(spec.tau, spec.sigma, 1).r_function()
        )
        ratio = float(residual / calibration)

    grid_consistency = None
    if args.grid_n is not None:
        if spec.epsilon != 1:
            raise UsageError(
                "--grid-n samples the generating symbol, which exists only "
                "for epsilon = +1"
            )
        grid_consistency = _grid_consistency(spec, args.grid_n, config.seed)

    admitted = residual <= threshold
    recovered_name = None
    ticks, points = _recovery_lattice()
    if admitted or args.override:
        values = recover_A(
            R,
            points,
            background=spec.background,
            threshold=threshold,
            override=args.override,
        )
        recovered_name = _write_recovered(values, ticks, config)

    body = {
        "spec": {
            "tau": spec.tau,
            "sigma": spec.sigma,
            "epsilon": spec.epsilon,
            "background": spec.background,
        },
        "residual": residual,
        "threshold": threshold,
        "admitted": admitted,
        "overridden": bool(args.override and not admitted),
        "residual_ratio": ratio,
        "recovered_A_path": recovered_name,
        "box": {"q": [-2.0, 2.0], "p": [-2.0, 2.0]},
        "probe_lattice": {"count": int(ticks.size), "step": float(ticks[1] - ticks[0])},
    }
    if grid_consistency is not None:
        body["grid_consistency"] = grid_consistency
    report = _envelope("factorize", config, body)
    _emit_report("factorize-report.json", report, config)
    return 0 if admitted or args.override else 1


# ----------------------------------------------------------------------
# star-demo subcommand
# ----------------------------------------------------------------------


def cmd_star_demo(args, config: RunConfig, explicit) -> int:
    grid = (
        _grid(config)
        if explicit & {"n", "dx"}
        else GridSpec(32, 0.3125)
    )
    basis = hermite_basis(grid, 2)
    w0 = wigner_of_state(basis[0], grid)
    w1 = wigner_of_state(basis[1], grid)
    phi01 = weyl_wigner(np.outer(basis[0], basis[1].conj()), grid)
    phi10 = weyl_wigner(np.outer(basis[1], basis[0].conj()), grid)
    phi00 = weyl_wigner(np.outer(basis[0], basis[0].conj()), grid)

    r1, r2 = purity_residual(w0, grid)
    s1, s2 = purity_residual(w1, grid)
    cross = float(np.max(np.abs(star(w0, w1, grid))))
    units = float(np.max(np.abs(star(phi01, phi10, grid) - phi00)))
    nilpotent = float(np.max(np.abs(star(phi01, phi01, grid))))

    tol = config.tol if config.tol is not None else 1e-8
    passed = max(r1, r2, s1, s2, cross, units, nilpotent) <= tol

    name = _write_phase_array("star-demo-product", star(phi01, phi10, grid), grid, config)
    report = _envelope(
        "star-demo",
        config,
        {
            "grid": {"n": grid.n, "dx": grid.dx},
            "invariants": [
                {"name": "ground state is a star projector", "residual": max(r1, r2)},
                {"name": "first excited state is a star projector", "residual": max(s1, s2)},
                {"name": "orthogonal projectors star to zero: W0 * W1 = 0", "residual": cross},
                {
                    "name": "transition symbols are star matrix units: "
                    "Phi_01 * Phi_10 = Phi_00",
                    "residual": units,
                },
                {"name": "off-diagonal symbols are star-nilpotent: Phi_01 * Phi_01 = 0", "residual": nilpotent},
            ],
            "tolerance": tol,
            "passed": passed,
            "files": {"product": name},
        },
    )
    _emit_report("star-demo-report.json", report, config)
    return 0 if passed else 1


# ----------------------------------------------------------------------
# parser
# ----------------------------------------------------------------------


def _add_common(sub) -> None:
    sub.add_argument("--out", help="output directory (default '.')")
    sub.add_argument(
        "--format", choices=("csv", "json"), help="array file format (default json)"
    )
    sub.add_argument("--seed", type=int, help="seed for randomized checks")
    sub.add_argument("--tol", type=float, help="tolerance override")
    sub.add_argument("--config", help="flat key=value config file")
    sub.add_argument("--dx", type=float, help="grid spacing")
    sub.add_argument("--r-max", type=int, dest="r_max", help="basis size bound")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="weylkit",
        description="Phase-space transform demos, invariant suites, and "
        "kernel factorisation.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    subs = parser.add_subparsers(dest="command", required=True)

    wigner = subs.add_parser(
        "wigner", help="Wigner function of a named or sampled state"
    )
    wigner.add_argument(
        "state",
        help="'hermite:k', a superposition like '0.6*hermite:0+0.8j*hermite:1', "
        "or 'file:PATH'",
    )
    wigner.add_argument("--grid-n", type=int, help="grid size n")
    _add_common(wigner)
    wigner.set_defaults(func=cmd_wigner)

    check = subs.add_parser("check", help="run a named invariant suite")
    check.add_argument("suite", choices=("all",) + SUITE_NAMES)
    check.add_argument("--grid-n", type=int, help="grid size n")
    _add_common(check)
    check.set_defaults(func=cmd_check)

    factorize = subs.add_parser(
        "factorize", help="consistency gate + symbol recovery for Gaussian kernels"
    )
    factorize.add_argument("--tau", type=float, required=True, help="position width")
    factorize.add_argument("--sigma", type=float, required=True, help="momentum width")
    factorize.add_argument(
        "--epsilon", type=int, required=True, choices=(1, -1), help="sign parameter"
    )
    factorize.add_argument(
        "--grid-n",
        type=int,
        help="also cross-check the gridded forward map at this grid size",
    )
    factorize.add_argument(
        "--override",
        action="store_true",
        help="recover even when the consistency gate refuses",
    )
    _add_common(factorize)
    factorize.set_defaults(func=cmd_factorize)

    reps = subs.add_parser(
        "reps", help="group-representation factorisation reports"
    )
    reps.add_argument("--grid-n", type=int, help="grid size n")
    _add_common(reps)
    reps.set_defaults(func=cmd_reps)

    demo = subs.add_parser("star-demo", help="worked star-product demonstration")
    demo.add_argument("--grid-n", type=int, help="grid size n")
    _add_common(demo)
    demo.set_defaults(func=cmd_star_demo)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        config, explicit = _build_config(args)
        return args.func(args, config, explicit)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
