"""Command-line entry point.

Subcommands: run (single pipeline), robustness (condition x seed grid),
folds (fold-partition stability), validate (SCM-only do-calculus checks),
diagnose (warm-ramp vs parallel contrast). Exit codes: 0 success, 2 config
error, 3 stage failure (stage named on stderr).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .harness import (ConfigError, RunConfig, StageError, default_r3_conditions,
                      emit_outputs, load_fixture, run_diagnostic, run_folds,
                      run_robustness, run_single)
from .scm import ObservationTable, sample_observational
from .validation import run_do_checks

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_STAGE = 3


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="path to a RunConfig JSON document")
    p.add_argument("--seed", type=int, help="override the config seed")
    p.add_argument("--out", default="out", help="output directory")
    p.add_argument("--readout", choices=["synaptic", "propagation", "both"],
                   help="which readout(s) to compute")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="assembly-causal",
        description="directional assembly binding over known causal graphs")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, doc in [
            ("run", "single full-pipeline run"),
            ("robustness", "R1-R3 perturbation/stress grid"),
            ("folds", "fold-partition stability runs"),
            ("validate", "do-calculus checks only (no brain)"),
            ("diagnose", "warm-ramp vs parallel-baseline comparison")]:
        p = sub.add_parser(name, help=doc)
        _add_common(p)
        if name == "robustness":
            p.add_argument("--seeds", default="0,1,2,3,4,5",
                           help="comma-separated seed list")
            p.add_argument("--conditions",
                           help="JSON file with a list of condition objects")
        if name == "folds":
            p.add_argument("--n-folds", type=int, default=5)
        if name == "diagnose":
            p.add_argument("--seeds", default="0,1,2,3,4,5",
                           help="comma-separated seed list")
    return parser


def load_config(args) -> RunConfig:
    if args.config:
        try:
            with open(args.config) as fh:
                config = RunConfig.from_dict(json.load(fh))
        except FileNotFoundError as e:
            raise ConfigError(f"config file not found: {e.filename}") from e
        except json.JSONDecodeError as e:
            raise ConfigError(f"config is not valid JSON: {e}") from e
    else:
        config = RunConfig()
    if args.seed is not None:
        config.seed = args.seed
    if getattr(args, "readout", None):
        config.readout = args.readout
    config.validate()
    return config


def _parse_seeds(text: str) -> list[int]:
    try:
        return [int(s) for s in text.split(",") if s.strip() != ""]
    except ValueError as e:
        raise ConfigError(f"bad seed list {text!r}") from e


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = load_config(args)
        if args.command == "run":
            report = run_single(config)
            paths = emit_outputs(report, args.out)
            for readout, result in report.topk.items():
                print(f"{readout}: precision@{result.k}={result.precision_at_k:.3f} "
                      f"recall@{result.k}={result.recall_at_k:.3f}")
        elif args.command == "robustness":
            conditions = None
            if args.conditions:
                with open(args.conditions) as fh:
                    conditions = json.load(fh)
            else:
                conditions = default_r3_conditions()
            summary = run_robustness(config, conditions, _parse_seeds(args.seeds))
            paths = emit_outputs(summary, args.out)
            print(summary.to_csv(), end="")
        elif args.command == "folds":
            report = run_folds(config, args.n_folds)
            paths = emit_outputs(report, args.out)
            doc = report.to_dict()
            print(json.dumps(doc.get("precision_summary", {}), sort_keys=True))
        elif args.command == "validate":
            scm, graph = load_fixture(config)
            if scm is None:
                raise ConfigError("validate needs a builtin fixture with mechanisms")
            if config.table_path:
                with open(config.table_path) as fh:
                    table = ObservationTable.from_csv(fh.read())
            else:
                table = sample_observational(scm, config.n_rows,
                                             seed=config.seed + 1_000_003)
            pairs = ([tuple(p) for p in config.validation_pairs]
                     if config.validation_pairs else None)
            report = run_do_checks(scm, table, pairs=pairs,
                                   n_cf_units=config.n_cf_units,
                                   seed=config.seed + 2_000_003)
            os.makedirs(args.out, exist_ok=True)
            path = os.path.join(args.out, "validation_report.json")
            with open(path, "w") as fh:
                json.dump(report.to_dict(), fh, sort_keys=True, indent=2)
            paths = [path]
            print(f"signs_match={report.all_signs_match} "
                  f"magnitudes_ok={report.all_magnitudes_ok}")
        elif args.command == "diagnose":
            report = run_diagnostic(config, _parse_seeds(args.seeds))
            paths = emit_outputs(report, args.out)
            print(f"adaptive_median={report.adaptive_median:.3f} "
                  f"parallel_median={report.parallel_median:.3f} "
                  f"contrast_holds={report.contrast_holds}")
        else:  # pragma: no cover - argparse enforces choices
            raise ConfigError(f"unknown command {args.command}")
        for p in paths:
            print(f"wrote {p}")
        return EXIT_OK
    except ConfigError as e:
        print(f"config error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except StageError as e:
        print(f"stage failure in {e.stage}: {e.cause}", file=sys.stderr)
        return EXIT_STAGE


if __name__ == "__main__":
    sys.exit(main())
