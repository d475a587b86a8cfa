"""Command line front end for replicated reconstruction runs."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .errors import InvalidInput, MissingRadius, ParseError
from .fileio import parse_structure, read_radii
from .observe import DEFAULT_CUTOFF, Mode, ObservationModel
from .pipeline import run_reconstruction
from .solver import SolverConfig


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="edmcomplete",
        description=(
            "Reconstruct point configurations from partial pairwise distances "
            "by Douglas-Rachford completion of the Euclidean distance matrix."
        ),
    )
    parser.add_argument("--input", required=True, help="structure file (ELEMENT X Y Z RESIDUE lines)")
    parser.add_argument(
        "--mode",
        choices=[m.value for m in Mode],
        default=Mode.CUTOFF.value,
        help="observation model deciding which distances are known",
    )
    parser.add_argument("--cutoff", type=float, default=DEFAULT_CUTOFF, help="cutoff distance in angstroms")
    parser.add_argument("--percent", type=float, default=10.0, help="percent of smallest distances kept")
    parser.add_argument("--radii", help="CSV of element,radius_angstrom for vdw mode")
    parser.add_argument("--rank", type=int, default=3, help="target embedding dimension")
    parser.add_argument("--epsilon", type=float, default=1e-5, help="relative stopping tolerance")
    parser.add_argument("--max-iters", type=int, default=200000, help="iteration cap")
    parser.add_argument("--period", type=int, default=1, help="refresh the rank projection every N iterations")
    parser.add_argument("--seed", type=int, default=0, help="base seed; replication k uses seed + k")
    parser.add_argument("--replications", type=int, default=5, help="number of solver replications")
    parser.add_argument("--out-dir", required=True, help="directory for traces, coordinates, and the report")
    return parser


def _model_from_args(args, parser) -> ObservationModel:
    mode = Mode(args.mode)
    if mode is Mode.CUTOFF:
        return ObservationModel.with_cutoff(args.cutoff)
    if mode is Mode.CUTOFF_PLUS_RESIDUE:
        return ObservationModel.with_cutoff_and_residues(args.cutoff)
    if mode is Mode.TOP_PERCENT:
        return ObservationModel.with_top_percent(args.percent)
    if not args.radii:
        parser.error("--mode vdw requires --radii")
    return ObservationModel.with_vdw(read_radii(Path(args.radii).read_text(encoding="utf-8")))


def _fmt_metric(value) -> str:
    return "n/a" if value is None else f"{value:.6g}"


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        pc = parse_structure(Path(args.input).read_text(encoding="utf-8"))
        model = _model_from_args(args, parser)
        cfg = SolverConfig(
            epsilon=args.epsilon,
            max_iters=args.max_iters,
            period=args.period,
            seed=args.seed,
        )
        report = run_reconstruction(
            pc,
            model,
            cfg,
            replications=args.replications,
            rank=args.rank,
            out_dir=args.out_dir,
        )
    except (InvalidInput, ParseError, MissingRadius, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    for rec in report.replications:
        print(
            f"replication seed={rec.seed}: {rec.terminated}, "
            f"iterations={rec.iterations if rec.iterations is not None else 'n/a'}, "
            f"position_error={_fmt_metric(rec.position_error)}, "
            f"edm_error={_fmt_metric(rec.edm_error)}"
        )
    agg = report.aggregate
    print(
        "aggregate: position_error mean/worst "
        f"{_fmt_metric(agg['position_error_mean'])}/{_fmt_metric(agg['position_error_worst'])}, "
        "edm_error mean/worst "
        f"{_fmt_metric(agg['edm_error_mean'])}/{_fmt_metric(agg['edm_error_worst'])}"
    )
    print(f"report written to {Path(args.out_dir) / 'report.json'}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
