"""Command-line front end: atlas, groundstate, sweep, analyze, bound, measure."""

import argparse
import json
import math
import os
import sys

import numpy as np

from . import analysis, bloch, gaussian, homodyne, io_utils, operators, sweep
from .wigner import wigner as wigner_fn
from .errors import (
    GkpError,
    InvalidArgumentError,
    NumericalFailureError,
    SchemaVersionError,
)
from .fock import expectation, ground_state

EXIT_OK = 0
EXIT_INVALID_ARGS = 2
EXIT_NUMERICAL = 3
EXIT_IO = 4

_U_ALIASES = {
    "0": (0.0, 0.0, 1.0),
    "1": (0.0, 0.0, -1.0),
    "+": (1.0, 0.0, 0.0),
    "-": (-1.0, 0.0, 0.0),
    "i": (0.0, 1.0, 0.0),
    "-i": (0.0, -1.0, 0.0),
    "H": (1 / math.sqrt(2), 1 / math.sqrt(2), 0.0),
    "T": (1 / math.sqrt(3), 1 / math.sqrt(3), 1 / math.sqrt(3)),
}


def parse_bloch(text):
    """Parse a Bloch vector: an alias ('0', 'H', ...), a core-state label,
    or an explicit 'ux,uy,uz' triple (normalized if slightly off-unit)."""
    if text in _U_ALIASES:
        return np.array(_U_ALIASES[text])
    for label, vec in bloch.core_states():
        if text == label:
            return vec
    parts = text.split(",")
    if len(parts) != 3:
        raise InvalidArgumentError(f"cannot parse Bloch vector {text!r}")
    try:
        vec = np.array([float(p) for p in parts])
    except ValueError as exc:
        raise InvalidArgumentError(f"cannot parse Bloch vector {text!r}") from exc
    norm = np.linalg.norm(vec)
    if norm == 0:
        raise InvalidArgumentError("Bloch vector must be nonzero")
    return vec / norm


def parse_cutoffs(text):
    """Parse '5:150:5' range syntax or a comma-separated list."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise InvalidArgumentError(f"range syntax is start:stop:step, got {text!r}")
        start, stop, step = (int(p) for p in parts)
        if step <= 0 or stop < start:
            raise InvalidArgumentError(f"bad cutoff range {text!r}")
        return list(range(start, stop + 1, step))
    try:
        cutoffs = [int(p) for p in text.split(",")]
    except ValueError as exc:
        raise InvalidArgumentError(f"cannot parse cutoffs {text!r}") from exc
    return cutoffs


def parse_grid(text):
    """Parse 'min:max:count' into a linspace."""
    parts = text.split(":")
    if len(parts) != 3:
        raise InvalidArgumentError(f"grid syntax is min:max:count, got {text!r}")
    lo, hi = float(parts[0]), float(parts[1])
    count = int(parts[2])
    if hi <= lo or count < 2:
        raise InvalidArgumentError(f"bad grid spec {text!r}")
    return np.linspace(lo, hi, count)


def _ensure_out(path):
    os.makedirs(path, exist_ok=True)
    return path


def _fmt(value):
    """Full-precision decimal text for a real number (numpy or builtin)."""
    return repr(float(value))


def cmd_atlas(args):
    atlas = bloch.order_greedy(bloch.sample_sphere(args.delta, args.seed))
    out = _ensure_out(args.out)
    config = {"command": "atlas", "delta": args.delta, "seed": args.seed}
    rows = [
        (i, atlas.labels[i], _fmt(atlas.points[i, 0]), _fmt(atlas.points[i, 1]),
         _fmt(atlas.points[i, 2]), i)
        for i in range(len(atlas))
    ]
    io_utils.write_csv(
        os.path.join(out, "atlas.csv"),
        ("index", "label", "ux", "uy", "uz", "order_position"),
        rows,
        config,
    )
    io_utils.write_json(
        os.path.join(out, "atlas.json"),
        {
            "size": len(atlas),
            "core_count": sum(1 for label in atlas.labels if label),
            "delta": args.delta,
            "seed": args.seed,
        },
        config,
    )
    print(f"atlas: {len(atlas)} points -> {out}/atlas.csv")
    return EXIT_OK


def cmd_groundstate(args):
    u = parse_bloch(args.u)
    energy, state = ground_state(operators.gkp_operator(u, args.cutoff))
    out = _ensure_out(args.out)
    config = {
        "command": "groundstate",
        "u": args.u,
        "cutoff": args.cutoff,
        "bloch": [float(v) for v in u],
    }
    rows = [(n, _fmt(state[n].real), _fmt(state[n].imag)) for n in range(args.cutoff)]
    io_utils.write_csv(os.path.join(out, "state.csv"), ("n", "re", "im"), rows, config)
    io_utils.write_json(
        os.path.join(out, "groundstate.json"),
        {"ground_energy": energy, "bloch": [float(v) for v in u], "cutoff": args.cutoff},
        config,
    )
    if args.wigner:
        axis = parse_grid(args.grid) if args.grid else np.linspace(-6, 6, 241)
        grid = wigner_fn(state, axis, axis)
        rows = [
            (_fmt(x), _fmt(p), _fmt(grid.values[i, j]))
            for i, x in enumerate(axis)
            for j, p in enumerate(axis)
        ]
        io_utils.write_csv(
            os.path.join(out, "wigner.csv"), ("x", "p", "W"), rows, config
        )
    print(f"groundstate: energy {energy:.6e} -> {out}/groundstate.json")
    return EXIT_OK


def _sweep_config(args):
    return {
        "command": "sweep",
        "delta": args.delta,
        "seed": args.seed,
        "cutoffs": parse_cutoffs(args.cutoffs),
    }


def cmd_sweep(args):
    config = _sweep_config(args)
    cutoffs = config["cutoffs"]
    out = _ensure_out(args.out)
    path = os.path.join(out, "sweep.json")
    atlas = bloch.order_greedy(bloch.sample_sphere(args.delta, args.seed))
    done = {}
    if args.resume and os.path.exists(path):
        with open(path) as fh:
            old = json.load(fh)
        if old.get("schema_version") != io_utils.SWEEP_SCHEMA_VERSION:
            raise SchemaVersionError(
                f"cannot resume from schema version {old.get('schema_version')!r}"
            )
        if old.get("delta") == args.delta and old.get("seed") == args.seed:
            done = old.get("per_cutoff", {})
        else:
            print("resume: config mismatch, recomputing everything", file=sys.stderr)
    todo = [n for n in cutoffs if str(n) not in done]
    record = sweep.run_sweep(atlas, todo, workers=args.workers)
    per_cutoff = {key: done[key] for key in done if int(key) in cutoffs}
    for n in todo:
        per_cutoff[str(n)] = {
            "expectation": record.expectation[n].tolist(),
            "ground_energies": record.ground_energies[n].tolist(),
        }
    payload = {
        "schema_version": io_utils.SWEEP_SCHEMA_VERSION,
        "delta": args.delta,
        "seed": args.seed,
        "cutoffs": cutoffs,
        "atlas": {
            "points": atlas.points.tolist(),
            "labels": atlas.labels,
            "delta": atlas.delta,
            "seed": atlas.seed,
        },
        "infidelity": record.infidelity.tolist(),
        "per_cutoff": per_cutoff,
    }
    io_utils.write_json(path, payload, config)
    print(f"sweep: {len(atlas)} states x {len(cutoffs)} cutoffs -> {path}")
    return EXIT_OK


def load_sweep(path):
    """Rebuild a SweepRecord from sweep.json, checking the schema version."""
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise SchemaVersionError(f"corrupt sweep file {path}: {exc}") from exc
    if doc.get("schema_version") != io_utils.SWEEP_SCHEMA_VERSION:
        raise SchemaVersionError(
            f"unknown sweep schema version {doc.get('schema_version')!r}; "
            f"expected {io_utils.SWEEP_SCHEMA_VERSION}"
        )
    atlas = bloch.Atlas(
        points=np.array(doc["atlas"]["points"]),
        labels=doc["atlas"]["labels"],
        delta=doc["atlas"]["delta"],
        seed=doc["atlas"]["seed"],
    )
    record = sweep.SweepRecord(
        atlas=atlas,
        cutoffs=[int(n) for n in doc["cutoffs"]],
        infidelity=np.array(doc["infidelity"]),
    )
    for key, block in doc["per_cutoff"].items():
        record.expectation[int(key)] = np.array(block["expectation"])
        record.ground_energies[int(key)] = np.array(block["ground_energies"])
    return record


def cmd_analyze(args):
    record = load_sweep(args.sweep)
    out = _ensure_out(args.out)
    config = {"command": "analyze", "sweep": args.sweep, "ksg_k": args.ksg_k}
    stats = analysis.regression_per_cutoff(record, ksg_k=args.ksg_k)
    rows = [
        (
            n,
            _fmt(s.slope),
            _fmt(s.intercept),
            _fmt(s.correlation_error),
            _fmt(s.mutual_information),
        )
        for n, s in sorted(stats.items())
    ]
    io_utils.write_csv(
        os.path.join(out, "regression.csv"),
        ("N", "slope", "intercept", "correlation_error", "mutual_information"),
        rows,
        config,
    )
    slopes = {n: s.slope for n, s in stats.items()}
    if len(slopes) >= 5:
        result = analysis.extrapolate_slope(slopes)
        extrapolation = {
            "m_infinity": result.m_infinity,
            "amplitude": result.amplitude,
            "rate": result.rate,
            "window_mean": result.window_mean,
            "window_std": result.window_std,
        }
    else:
        extrapolation = {
            "skipped": f"need at least 5 cutoffs for extrapolation, got {len(slopes)}"
        }
        print("analyze: extrapolation skipped (too few cutoffs)", file=sys.stderr)
    io_utils.write_json(os.path.join(out, "extrapolation.json"), extrapolation, config)

    def dump_matrix(name, matrix):
        rows = [tuple(_fmt(v) for v in row) for row in matrix]
        header = tuple(f"j{j}" for j in range(matrix.shape[1]))
        io_utils.write_csv(os.path.join(out, name), header, rows, config)

    dump_matrix("infidelity.csv", record.infidelity)
    dump_matrix("infidelity_normalized.csv", sweep.normalize_matrix(record.infidelity))
    diagnostics = {"diagonal_violations": {}, "identity_deviation": {}}
    for n in record.cutoffs:
        dump_matrix(f"expectation_N{n}.csv", record.expectation[n])
        dump_matrix(
            f"expectation_N{n}_normalized.csv",
            sweep.normalize_matrix(record.expectation[n]),
        )
        diagnostics["diagonal_violations"][str(n)] = sweep.diagonal_violations(
            record.expectation[n]
        )
        diagnostics["identity_deviation"][str(n)] = (
            sweep.logical_subspace_identity_check(record, n)
        )
    io_utils.write_json(os.path.join(out, "diagnostics.json"), diagnostics, config)
    print(f"analyze: {len(slopes)} cutoffs -> {out}")
    return EXIT_OK


def cmd_bound(args):
    targets = []
    for spec in args.u:
        if spec == "core":
            targets.extend(bloch.core_states())
        else:
            targets.append((spec, parse_bloch(spec)))
    out = _ensure_out(args.out)
    config = {
        "command": "bound",
        "budget": args.budget,
        "rmax": args.rmax,
        "seed": args.seed,
    }
    rows = []
    worst = 0.0
    for label, u in targets:
        analytic = gaussian.gaussian_bound(u)
        numeric, argmin = gaussian.minimize_over_gaussians(
            u, budget=args.budget, seed=args.seed, r_max=args.rmax
        )
        gap = numeric - analytic
        worst = max(worst, abs(gap))
        rows.append(
            (
                label,
                _fmt(u[0]), _fmt(u[1]), _fmt(u[2]),
                _fmt(analytic), _fmt(numeric), _fmt(gap),
                _fmt(argmin.x0), _fmt(argmin.p0), _fmt(argmin.r), _fmt(argmin.theta),
            )
        )
    io_utils.write_csv(
        os.path.join(out, "bound.csv"),
        ("label", "ux", "uy", "uz", "analytic_bound", "numeric_min", "gap",
         "x0", "p0", "r", "theta"),
        rows,
        config,
    )
    print(f"bound: {len(targets)} targets, max |gap| = {worst:.3e} -> {out}/bound.csv")
    return EXIT_OK


def cmd_measure(args):
    u = parse_bloch(args.u)
    _, state = ground_state(operators.gkp_operator(u, args.cutoff))
    estimate = homodyne.estimate_witness(
        state, u, count_per_quadrature=args.counts, seed=args.seed
    )
    exact = expectation(operators.gkp_operator(u, args.cutoff), state)
    out = _ensure_out(args.out)
    config = {
        "command": "measure",
        "u": args.u,
        "cutoff": args.cutoff,
        "counts": args.counts,
        "seed": args.seed,
    }
    io_utils.write_json(
        os.path.join(out, "measure.json"),
        {
            "value": estimate.value,
            "std_error": estimate.std_error,
            "per_term": [list(t) for t in estimate.per_term],
            "exact_matrix_value": exact,
            "gaussian_bound": gaussian.gaussian_bound(u),
            "bloch": [float(v) for v in u],
        },
        config,
    )
    print(
        f"measure: {estimate.value:.4f} +- {estimate.std_error:.4f} "
        f"(exact {exact:.4f}) -> {out}/measure.json"
    )
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="gkpkit",
        description="Target operators, approximate states and validation "
        "pipeline for logical GKP qubits.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("atlas", help="sample and order Bloch-sphere targets")
    p.add_argument("--delta", type=float, default=0.35)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="out")
    p.set_defaults(func=cmd_atlas)

    p = sub.add_parser("groundstate", help="extract an approximate GKP qubit")
    p.add_argument("--u", required=True)
    p.add_argument("--cutoff", type=int, default=150)
    p.add_argument("--out", default="out")
    p.add_argument("--wigner", action="store_true")
    p.add_argument("--grid", help="Wigner axis as min:max:count")
    p.set_defaults(func=cmd_groundstate)

    p = sub.add_parser("sweep", help="expectation/infidelity sweep over cutoffs")
    p.add_argument("--delta", type=float, default=0.35)
    p.add_argument("--cutoffs", default="5:120:5")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", default="out")
    p.add_argument("--resume", action="store_true")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("analyze", help="regression and extrapolation of a sweep")
    p.add_argument("--sweep", required=True)
    p.add_argument("--ksg-k", type=int, default=4)
    p.add_argument("--out", default="out")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("bound", help="Gaussian bound verification")
    p.add_argument("--u", action="append", required=True,
                   help="Bloch vector, alias, or 'core' (repeatable)")
    p.add_argument("--budget", type=int, default=200)
    p.add_argument("--rmax", type=float, default=6.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="out")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("measure", help="simulated three-quadrature estimation")
    p.add_argument("--u", required=True)
    p.add_argument("--cutoff", type=int, default=150)
    p.add_argument("--counts", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="out")
    p.set_defaults(func=cmd_measure)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID_ARGS if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except InvalidArgumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID_ARGS
    except NumericalFailureError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except GkpError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"i/o failure: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
