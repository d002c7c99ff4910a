"""
holosec.py – Command-line entry point.

  python holosec.py run --sweep power --values 10,15,20,25,30 --trials 100 \\
      --schemes proposed,random --seed 0 --out power.csv
  python holosec.py check [--full]
"""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from config.scenario import load_scenario
from config.settings import get_settings
from core.system import ConfigurationError, SystemConfig
from data.cache import TrialCache
from data.models import SweepSpec, SweepVariable, parse_schemes, parse_values
from data.results import write_csv
from experiments.acceptance import run_acceptance
from experiments.plot_script import build_plot_script
from experiments.sweep import run_sweep

log = logging.getLogger("holosec")


def build_parser() -> argparse.ArgumentParser:
    settings = get_settings()
    parser = argparse.ArgumentParser(prog="holosec", description=settings.app_name)
    parser.add_argument("--log-level", default=None, help="Override HOLOSEC_LOG_LEVEL.")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="Run a Monte Carlo sweep and write a CSV.")
    run.add_argument("--config", type=Path, default=None, help="Scenario JSON file.")
    run.add_argument(
        "--sweep", required=True, choices=[v.value for v in SweepVariable], help="Swept quantity."
    )
    run.add_argument("--values", required=True, help="Comma-separated, strictly increasing.")
    run.add_argument("--trials", type=int, default=settings.default_trials)
    run.add_argument("--schemes", default="proposed,random")
    run.add_argument("--seed", type=int, default=settings.default_seed)
    run.add_argument("--out", type=Path, required=True)
    run.add_argument("--workers", type=int, default=settings.max_workers)
    run.add_argument(
        "--timings", action="store_true", help="Record optimizer wall-clock in runtime_ms."
    )
    run.add_argument("--cache-dir", default=None, help="Enable the persistent trial cache here.")
    run.add_argument("--plot-script", type=Path, default=None, help="Also write a gnuplot script.")

    check = sub.add_parser("check", help="Run the property and trend checks.")
    check.add_argument("--full", action="store_true", help="Include the slow checks.")
    return parser


def _run(args: argparse.Namespace) -> int:
    settings = get_settings()
    base = load_scenario(args.config) if args.config else SystemConfig()
    spec = SweepSpec(
        variable=SweepVariable(args.sweep),
        values=parse_values(args.values),
        trials=args.trials,
        schemes=parse_schemes(args.schemes),
        base=base,
        seed=args.seed,
    )

    cache: Optional[TrialCache] = None
    if args.cache_dir or settings.cache_enabled:
        cache = TrialCache(args.cache_dir or settings.cache_dir)
    try:
        rows = run_sweep(spec, max_workers=args.workers, timings=args.timings, cache=cache)
    finally:
        if cache is not None:
            cache.close()

    write_csv(rows, args.out)
    log.info("wrote %d rows to %s", len(rows), args.out)
    if args.plot_script:
        script = build_plot_script(
            str(args.out), spec.variable.value, [s.value for s in spec.schemes],
            output=str(Path(args.out).with_suffix(".png")),
        )
        args.plot_script.write_text(script, encoding="utf-8")
        log.info("wrote gnuplot script to %s", args.plot_script)
    return 0


def _check(args: argparse.Namespace) -> int:
    results = run_acceptance(full=args.full)
    for result in results:
        status = "PASS" if result.passed else "FAIL"
        print(f"[{status}] {result.name:<32} {result.seconds:7.1f}s  {result.detail}")
    return 0 if all(r.passed for r in results) else 1


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=(args.log_level or get_settings().log_level).upper(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    try:
        if args.command == "run":
            return _run(args)
        return _check(args)
    except ConfigurationError as exc:
        print(f"holosec: configuration error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"holosec: I/O error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
