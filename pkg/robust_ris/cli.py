"""
Bench Command Line
solve, sweep, analyze and selftest entry points
"""
from typing import List, Optional, Sequence
import argparse
import logging
import sys

from robust_ris.config_loader import BenchConfig, load_config
from robust_ris.data_processor import FLOAT_FORMAT, ReportProcessor
from robust_ris.exceptions import InvalidConfigError, RobustRisError
from robust_ris.models.channels import gen_channel_estimate
from robust_ris.models.system import distortion_constants
from robust_ris.schemas.bench import Scheme, SweepSpec
from robust_ris.schemas.solution import RisMethod
from robust_ris.services.analysis_service import AnalysisService
from robust_ris.services.scheme_service import SchemeService
from robust_ris.services.selftest_service import run_selftest
from robust_ris.services.sweep_service import SCHEME_KEYS, SweepService
from robust_ris.settings import get_settings
from robust_ris.utils.helpers import trial_rng

logger = logging.getLogger(__name__)


def _parse_schemes(text: Optional[str]) -> Optional[List[Scheme]]:
    if not text:
        return None
    try:
        return [Scheme(name.strip()) for name in text.split(",") if name.strip()]
    except ValueError as e:
        choices = ", ".join(s.value for s in Scheme)
        raise InvalidConfigError(f"{e}; choose from {choices}") from e


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rrb", description="Robust beamforming for RIS-aided MIMO with hardware impairments"
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="YAML run configuration (default: config/config.yaml)")
    common.add_argument("--seed", type=int, help="Master seed override")
    common.add_argument("--ris-method", choices=[m.value for m in RisMethod], help="Phase update method")
    common.add_argument("--paper-scale", action="store_true", help="Use the full-size dimensions (slow)")

    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", parents=[common], help="Solve one channel instance")
    solve.add_argument("--scheme", help="Comma-separated schemes (default: ao_mm)")

    sweep = sub.add_parser("sweep", parents=[common], help="Run the configured Monte-Carlo sweep")
    sweep.add_argument("--scheme", help="Comma-separated schemes (default: from config)")
    sweep.add_argument("--trials", type=int, help="Trials per sweep value")
    sweep.add_argument("--out", help="CSV output path (default: stdout)")
    sweep.add_argument("--timing", action="store_true", help="Record wall-clock times in the CSV")
    sweep.add_argument("--no-progress", action="store_true", help="Hide the progress bar")

    sub.add_parser("analyze", parents=[common], help="Evaluate bounds and floors")
    sub.add_parser("selftest", parents=[common], help="Run the numerical oracle checks")
    return parser


def _resolve_config(args: argparse.Namespace) -> BenchConfig:
    config = load_config(args.config)
    if args.paper_scale:
        logger.warning("Full-scale run requested: expect runtimes of hours")
        config = config.at_paper_scale()
    if args.ris_method:
        solver = config.solver.model_copy(update={"ris_method": RisMethod(args.ris_method)})
        config = config.model_copy(update={"solver": solver})
    return config


def cmd_solve(args: argparse.Namespace, config: BenchConfig) -> int:
    cfg = config.system
    seed = args.seed if args.seed is not None else 0
    schemes = _parse_schemes(args.scheme) or [Scheme.AO_MM]
    est = gen_channel_estimate(cfg, config.geometry, trial_rng(seed))
    consts = distortion_constants(cfg.bits)
    service = SchemeService(config.solver)

    for scheme in schemes:
        solution = service.run(scheme, est, cfg, consts, trial_rng(seed, 0, 0, SCHEME_KEYS[scheme]))
        print(
            f"{scheme.value}: anmse={solution.anmse:.6g} g_mse={solution.objective:.6g} "
            f"iterations={solution.iterations} converged={solution.converged}"
        )
    return 0


def cmd_sweep(args: argparse.Namespace, config: BenchConfig) -> int:
    if config.sweep is None:
        raise InvalidConfigError("the configuration has no sweep section")
    updates = {}
    if args.trials is not None:
        updates["trials"] = args.trials
    if args.seed is not None:
        updates["seed"] = args.seed
    spec = SweepSpec(**{**config.sweep.model_dump(), **updates})
    schemes = _parse_schemes(args.scheme) or config.schemes

    service = SweepService(
        config.solver,
        n_jobs=get_settings().n_jobs,
        record_timing=args.timing,
        progress=not args.no_progress,
    )
    report = service.run(spec, config.system, config.geometry, schemes)

    for entry in report.accounting:
        if entry.failed:
            logger.warning(f"{entry.scheme} at {entry.value}: {entry.failed} failed, {entry.completed} completed")

    processor = ReportProcessor()
    if args.out:
        processor.emit_csv(report, args.out)
    else:
        sys.stdout.write(processor.to_frame(report).to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n"))
    return 0


def cmd_analyze(args: argparse.Namespace, config: BenchConfig) -> int:
    seed = args.seed if args.seed is not None else 0
    report = AnalysisService().analyze(config.system, config.geometry, seed=seed)
    print(report.model_dump_json(indent=2))
    return 0


def cmd_selftest(args: argparse.Namespace, config: BenchConfig) -> int:
    results = run_selftest(seed=args.seed if args.seed is not None else 0)
    for result in results:
        print(f"[{'PASS' if result.passed else 'FAIL'}] {result.name}: {result.detail}")
    return 0 if all(r.passed for r in results) else 1


COMMANDS = {
    "solve": cmd_solve,
    "sweep": cmd_sweep,
    "analyze": cmd_analyze,
    "selftest": cmd_selftest,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    settings = get_settings()
    logging.basicConfig(level=getattr(logging, settings.log_level.upper(), logging.INFO))
    args = build_parser().parse_args(argv)

    try:
        config = _resolve_config(args)
        return COMMANDS[args.command](args, config)
    except InvalidConfigError as e:
        logger.error(f"Invalid configuration: {e}")
        return 2
    except RobustRisError as e:
        logger.error(f"{args.command} failed: {e}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
