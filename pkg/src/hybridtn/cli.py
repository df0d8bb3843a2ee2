"""Command-line front end.

Exit codes: 0 ok, 2 config error, 3 capacity error, 4 degenerate normalization.
"""

from __future__ import annotations

import argparse
import sys

from . import experiments, kernels
from .config import estimation_config, load_instance
from .errors import CapacityError, ConfigError, ContractViolation, DegenerateNormalizationError
from .htncore import (
    amplitude_details,
    expectation_details,
    oracle_expectation,
    oracle_transition,
)

EXIT_OK, EXIT_CONFIG, EXIT_CAPACITY, EXIT_DEGENERATE = 0, 2, 3, 4


def fmt_complex(z: complex) -> str:
    re, im = z.real + 0.0, z.imag + 0.0  # drops negative zeros
    return f"{re:.12g}{im:+.12g}i"


def _int_list(text: str) -> list[int]:
    out = []
    for part in text.split(","):
        part = part.strip()
        if "-" in part[1:]:
            lo, hi = part.split("-", 1)
            out.extend(range(int(lo), int(hi) + 1))
        elif part:
            out.append(int(float(part)))
    if not out:
        raise argparse.ArgumentTypeError(f"empty list {text!r}")
    return out


def _global_flags() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--seed", type=int, default=None, help="root seed for all sampling")
    p.add_argument("--shots", type=int, default=None, help="total shot budget")
    p.add_argument("--engine", choices=("spectral", "svd", "montecarlo"), default=None)
    p.add_argument("--mode", choices=("exact", "shots"), default=None)
    p.add_argument("--split", choices=("stratified", "randomized"), default=None)
    p.add_argument("--oracle", action="store_true", help="also print the dense reference value")
    p.add_argument("--out", default=None, help="write results as CSV")
    p.add_argument("--fast", action="store_true", help="reduced profile for quick runs")
    return p


def build_parser() -> argparse.ArgumentParser:
    flags = _global_flags()
    parser = argparse.ArgumentParser(
        prog="hybridtn",
        description="Transition amplitudes, overlaps and expectation values on hybrid tree tensor networks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("amplitude", "transition amplitude <psi1|O|psi2> / (A1 A2)"),
        ("overlap", "overlap <psi1|psi2> / (A1 A2)"),
        ("expectation", "expectation value <psi|O|psi> / A^2 of state1"),
    ):
        p = sub.add_parser(name, parents=[flags], help=help_text)
        p.add_argument("config", help="YAML instance config")

    p = sub.add_parser("normstudy", parents=[flags], help="gamma vs operator norm of random N matrices")
    p.add_argument("--n-range", type=_int_list, default=None, help="e.g. 1-7 or 1,3,5")
    p.add_argument("--samples", type=int, default=None)

    p = sub.add_parser("costscan", parents=[flags], help="RMSE of SVD vs Monte-Carlo contraction")
    p.add_argument("--k-range", type=_int_list, default=None, help="e.g. 1-3")
    p.add_argument("--n", type=int, default=2, help="qubits per subsystem")
    p.add_argument("--shots-grid", type=_int_list, default=None, help="e.g. 1000,10000,100000")
    p.add_argument("--repeats", type=int, default=None)
    p.add_argument("--family", choices=experiments.FAMILIES, default="constant")
    return parser


def _estimation(args, file_settings: dict):
    settings = dict(file_settings)
    for key in ("seed", "shots", "engine", "mode", "split"):
        value = getattr(args, key)
        if value is not None:
            settings[key] = value
    if args.shots is not None and args.mode is None:
        settings["mode"] = "shots"
    return estimation_config(settings)


def _report(lines, out_path=None):
    for key, value in lines:
        print(f"{key}: {value}")
    if out_path:
        experiments.write_csv(out_path, ("key", "value"), lines)


def _header(command, cfg):
    return [
        ("command", command),
        ("engine", cfg.engine),
        ("mode", cfg.mode),
        ("split", cfg.split),
        ("shots", cfg.shots if not cfg.exact else 0),
        ("seed", cfg.seed),
    ]


def cmd_amplitude(args, identity: bool = False) -> int:
    inst = load_instance(args.config)
    cfg = _estimation(args, inst.estimation)
    if cfg.engine == "spectral":
        raise ConfigError("engine", "spectral contraction cannot handle non-Hermitian N; use svd or montecarlo")
    obs = None if identity else inst.observable
    res = amplitude_details(inst.state1, inst.state2, obs, cfg)
    lines = _header("overlap" if identity else "amplitude", cfg) + [
        ("T", fmt_complex(res.estimate.value)),
        ("A1", f"{res.norm1:.12g}"),
        ("A2", f"{res.norm2:.12g}"),
        ("stderr", f"{res.estimate.stderr:.12g}"),
    ]
    if args.oracle:
        ref = oracle_transition(inst.state1, inst.state2, obs)
        lines += [("oracle", fmt_complex(ref)),
                  ("abs_error", f"{abs(ref - res.estimate.value):.3e}")]
    _report(lines, args.out)
    return EXIT_OK


def cmd_overlap(args) -> int:
    return cmd_amplitude(args, identity=True)


def cmd_expectation(args) -> int:
    inst = load_instance(args.config, need_state2=False)
    cfg = _estimation(args, inst.estimation)
    res = expectation_details(inst.state1, inst.observable, cfg)
    lines = _header("expectation", cfg) + [
        ("value", f"{res.estimate.value.real:.12g}"),
        ("A", f"{res.norm:.12g}"),
        ("stderr", f"{res.estimate.stderr:.12g}"),
    ]
    if args.oracle:
        ref = oracle_expectation(inst.state1, inst.observable)
        lines += [("oracle", f"{ref:.12g}"),
                  ("abs_error", f"{abs(ref - res.estimate.value.real):.3e}")]
    _report(lines, args.out)
    return EXIT_OK


def cmd_normstudy(args) -> int:
    n_range = args.n_range or (list(range(1, 6)) if args.fast else list(range(1, 8)))
    samples = args.samples or (1000 if args.fast else 10000)
    seed = 0 if args.seed is None else args.seed
    results = experiments.norm_study(n_range, samples, seed)
    print(f"# normstudy seed={seed} samples={samples} backend={kernels.BACKEND}")
    print(",".join(experiments.NORM_STUDY_COLUMNS))
    for r in results:
        print(",".join(r.row()))
    if args.out:
        experiments.write_csv(args.out, experiments.NORM_STUDY_COLUMNS, [r.row() for r in results])
    return EXIT_OK


def cmd_costscan(args) -> int:
    k_range = args.k_range or [1, 2, 3]
    shots_grid = args.shots_grid or ([1000, 10000] if args.fast else [1000, 10000, 100000])
    repeats = args.repeats or (30 if args.fast else 100)
    seed = 0 if args.seed is None else args.seed
    res = experiments.cost_scan(k_range, args.n, shots_grid, repeats, seed,
                                split=args.split or "stratified", family=args.family)
    rows = list(res.rows())
    print(f"# costscan seed={seed} n={args.n} repeats={repeats} family={args.family}")
    print(",".join(experiments.COST_SCAN_COLUMNS))
    for row in rows:
        print(",".join(row))
    for engine in experiments.ENGINES:
        slopes = " ".join(f"{s:.3f}" for s in res.slope_vs_shots(engine))
        print(f"# {engine} slope vs log shots per k: {slopes}")
    ratio = " ".join(f"{r:.3f}" for r in res.efficiency_ratio()[:, -1])
    print(f"# rmse ratio montecarlo/svd at {shots_grid[-1]} shots per k: {ratio}")
    if args.out:
        experiments.write_csv(args.out, experiments.COST_SCAN_COLUMNS, rows)
    return EXIT_OK


COMMANDS = {
    "amplitude": cmd_amplitude,
    "overlap": cmd_overlap,
    "expectation": cmd_expectation,
    "normstudy": cmd_normstudy,
    "costscan": cmd_costscan,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except DegenerateNormalizationError as exc:
        print(f"degenerate normalization: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except ContractViolation as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
