"""
Catalog Co-Design Optimizer - Main Entry Point
Command-line front-end: catalogs, consistency checks, flat and decomposed solves, fleets
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Dict, List, Optional, Sequence

# Add src to path
sys.path.insert(0, str(Path(__file__).parent))

from loguru import logger

from core.config import Settings, load_settings
from core.exceptions import (
    CatalogIOError, EmptyFront, InfeasibleModel, InfeasiblePayload, ModelError,
)
from core.system_models import SystemModel
from catalogs.front_export import FrontExporter
from catalogs.generator import load_generator_spec, write_generated
from catalogs.model_parser import load_model
from catalogs.spec_files import load_subsystem_specs
from consistency.classifier import consistency_report
from decomposition.decomposer import Decomposer
from pareto.front_engine import EngineConfig, FrontEngine
from pareto.front_models import ParetoFront
from benchmarks.fleet import (
    FleetPlanner, build_fleet_from_pool, design_pool_from_file, load_fleet_params, load_packages,
)
from benchmarks.quadcopter import QuadcopterVariant, build_quadcopter_model, quadcopter_specs
from benchmarks.scaling import ScalingBenchmark, write_rows
from oracle.brute_force import EnumerationBudget, brute_force_front

EXIT_OK = 0
EXIT_INFEASIBLE = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 3

LOG_FORMAT = "<green>{time:HH:mm:ss}</green> | <level>{level: <8}</level> | {name}:{function} - {message}"


class UsageError(Exception):
    """Bad command-line arguments"""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


class InterceptHandler(logging.Handler):
    """Forwards stdlib logging records into loguru"""

    def emit(self, record: logging.LogRecord) -> None:
        try:
            level = logger.level(record.levelname).name
        except ValueError:
            level = record.levelno
        frame, depth = logging.currentframe(), 2
        while frame and frame.f_code.co_filename == logging.__file__:
            frame = frame.f_back
            depth += 1
        logger.opt(depth=depth, exception=record.exc_info).log(level, record.getMessage())


def configure_logging(level: str) -> None:
    """One stderr sink; stdlib loggers of the library modules go through it"""
    logger.remove()
    logger.add(sys.stderr, level=level.upper(), format=LOG_FORMAT)
    logging.basicConfig(handlers=[InterceptHandler()], level=0, force=True)


def exit_code_for(error: BaseException) -> int:
    if isinstance(error, (InfeasibleModel, EmptyFront, InfeasiblePayload)):
        return EXIT_INFEASIBLE
    if isinstance(error, (UsageError, CatalogIOError, ModelError, FileNotFoundError)):
        return EXIT_USAGE
    return EXIT_INTERNAL


def report_error(error: BaseException) -> int:
    """Write the machine-readable error line to stderr"""
    code = exit_code_for(error)
    line = {"error": type(error).__name__, "message": str(error), "exit_code": code}
    sys.stderr.write(json.dumps(line) + "\n")
    return code


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------

def _param(text: str) -> tuple:
    name, sep, value = text.partition("=")
    if not sep or not name:
        raise argparse.ArgumentTypeError(f"expected NAME=VALUE, got '{text}'")
    try:
        return name.strip(), float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"'{value}' is not a number") from None


def _add_model_source(parser: argparse.ArgumentParser) -> None:
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--model", type=Path, help="Model file")
    source.add_argument(
        "--quadcopter", choices=[v.value for v in QuadcopterVariant],
        help="Shipped quadcopter model variant",
    )
    parser.add_argument("--catalogs", type=Path, help="Quadcopter catalog directory")
    parser.add_argument("--param", type=_param, action="append", default=[], help="NAME=VALUE override")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="catsel", description="Catalog co-design optimizer")
    parser.add_argument("--config", type=Path, help="Configuration file (default: config/config.yaml)")
    parser.add_argument("--seed", type=int, help="Seed for every random choice")
    parser.add_argument("--threads", type=int, help="Workers for independent subproblems")
    parser.add_argument("--log-level", help="DEBUG, INFO, WARNING or ERROR")
    commands = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    gen = commands.add_parser("gen-catalog", help="Write a seeded synthetic catalog")
    gen.add_argument("--spec", type=Path, required=True, help="Generator spec (YAML)")
    gen.add_argument("--out", type=Path, required=True, help="Catalog file to write")
    gen.add_argument("--count", type=int, help="Override the component count")

    check = commands.add_parser("check-consistency", help="Classify properties and certify subsystems")
    _add_model_source(check)
    check.add_argument(
        "--subsystem", action="append", default=[],
        help="NAME=VAR,VAR,... or VAR,VAR,... (repeatable)",
    )
    check.add_argument("--subsystems", type=Path, help="Subsystem spec file; specs over model variables are checked")
    check.add_argument("--out", type=Path, help="Also write the report as JSON")

    solve = commands.add_parser("solve", help="Compute the exact Pareto front")
    _add_model_source(solve)
    solve.add_argument("--out", type=Path, default=Path("front.csv"), help="Front file to write")
    solve.add_argument("--oracle", action="store_true", help="Enumerate instead of searching")
    solve.add_argument("--stats", action="store_true", help="Print search statistics")

    decompose = commands.add_parser("decompose-solve", help="Solve through subsystem aggregates")
    _add_model_source(decompose)
    decompose.add_argument("--subsystems", type=Path, help="Subsystem spec file (required with --model; default: shipped quadcopter specs)")
    decompose.add_argument("--out", type=Path, default=Path("front.csv"), help="Front file to write")
    decompose.add_argument("--stats", action="store_true", help="Print per-subsystem reports")

    fleet = commands.add_parser("fleet", help="Plan a delivery fleet from quadcopter designs")
    fleet.add_argument("--quad-front", type=Path, help="Exported quadcopter front (default: solve the fleet variant)")
    fleet.add_argument("--packages", type=Path, required=True, help="Package table")
    fleet.add_argument("--params", type=Path, required=True, help="Fleet parameter file")
    fleet.add_argument("--fleet-size", type=int, help="Override the number of quadcopters")
    fleet.add_argument("--catalogs", type=Path, help="Quadcopter catalog directory")
    fleet.add_argument("--decompose", action="store_true", help="Decompose the quadcopter solve")
    fleet.add_argument("--out", type=Path, default=Path("fleet.csv"), help="Front file to write")

    bench = commands.add_parser("benchmark", help="Quadcopter scaling sweep")
    bench.add_argument("--scale", type=int, required=True, help="Largest catalog size")
    bench.add_argument("--sizes", type=int, nargs="+", help="Explicit catalog sizes")
    bench.add_argument(
        "--variant", choices=[v.value for v in QuadcopterVariant], default=QuadcopterVariant.SINGLE.value,
    )
    bench.add_argument("--compare", action="store_true", help="Time flat against decomposed solves")
    bench.add_argument("--out", type=Path, default=Path("benchmark.csv"), help="Table to write")
    return parser


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def engine_config(settings: Settings, args: argparse.Namespace) -> EngineConfig:
    config = EngineConfig.from_settings(settings)
    updates = {}
    if args.threads is not None:
        updates["threads"] = args.threads
    if args.seed is not None:
        updates["solver"] = config.solver.model_copy(update={"seed": args.seed})
    return config.model_copy(update=updates) if updates else config


def load_source_model(args: argparse.Namespace, settings: Settings) -> SystemModel:
    params: Dict[str, float] = dict(args.param)
    if args.model is not None:
        return load_model(args.model, params=params)
    quad = settings.quadcopter.model_copy(update=params) if params else settings.quadcopter
    return build_quadcopter_model(args.quadcopter, catalog_dir=args.catalogs, settings=quad)


def _print_front(front: ParetoFront, model: Optional[SystemModel]) -> None:
    if front.points:
        print(FrontExporter().front_table(front, model).to_string(index=False))
    print(f"{len(front)} Pareto-optimal point(s)")


def cmd_gen_catalog(args: argparse.Namespace, settings: Settings) -> int:
    spec = load_generator_spec(args.spec).with_overrides(count=args.count, seed=args.seed)
    path = write_generated(spec, args.out, settings.generator.max_resamples)
    logger.info(f"Generated {spec.count} '{spec.variable_name}' components (seed {spec.seed}) into {path}")
    return EXIT_OK


def _subsystem_arg(text: str) -> tuple:
    name, sep, variables = text.partition("=")
    if not sep:
        variables, name = name, name
    members = [v.strip() for v in variables.split(",") if v.strip()]
    if not members:
        raise UsageError(f"Subsystem '{text}' names no variables")
    return name.strip(), members


def cmd_check_consistency(args: argparse.Namespace, settings: Settings) -> int:
    model = load_source_model(args, settings)
    subsystems: Dict[str, List[str]] = dict(_subsystem_arg(s) for s in args.subsystem)
    if args.subsystems is not None:
        for spec in load_subsystem_specs(args.subsystems):
            if set(spec.variables) <= set(model.variable_names):
                subsystems.setdefault(spec.aggregate_name, list(spec.variables))
            else:
                logger.warning(f"Subsystem '{spec.name}' refers to aggregates; not checked on the flat model")
    report = consistency_report(model, subsystems, cap=settings.consistency.enumeration_cap)
    text = json.dumps(report.to_dict(), indent=2)
    print(text)
    if args.out is not None:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        args.out.write_text(text + "\n", encoding="utf-8")
    return EXIT_OK


def _export_or_raise(front: ParetoFront, model: SystemModel, out: Path) -> None:
    FrontExporter().export_front(front, out, model)
    _print_front(front, model)


def cmd_solve(args: argparse.Namespace, settings: Settings) -> int:
    model = load_source_model(args, settings)
    if args.oracle:
        front = brute_force_front(model, EnumerationBudget(max_combinations=settings.oracle.max_combinations))
        _export_or_raise(front, model, args.out)
        if not front.points:
            raise InfeasibleModel("No assignment satisfies the model constraints")
        return EXIT_OK

    engine = FrontEngine(engine_config(settings, args))
    try:
        front = engine.compute_front(model)
    except InfeasibleModel:
        _export_or_raise(ParetoFront.for_model(model), model, args.out)
        raise
    _export_or_raise(front, model, args.out)
    if args.stats:
        print(json.dumps(engine.statistics.model_dump(), sort_keys=True))
    return EXIT_OK


def cmd_decompose_solve(args: argparse.Namespace, settings: Settings) -> int:
    model = load_source_model(args, settings)
    if args.subsystems is not None:
        specs = load_subsystem_specs(args.subsystems)
    elif args.model is None:
        specs = quadcopter_specs()
    else:
        raise UsageError("decompose-solve with --model needs --subsystems")
    try:
        result = Decomposer(engine_config(settings, args)).solve(model, specs)
    except InfeasibleModel:
        _export_or_raise(ParetoFront.for_model(model), model, args.out)
        raise
    _export_or_raise(result.front, model, args.out)
    if args.stats:
        for report in result.reports:
            print(json.dumps(report.model_dump(), sort_keys=True))
    return EXIT_OK


def cmd_fleet(args: argparse.Namespace, settings: Settings) -> int:
    overrides = {"fleet_size": args.fleet_size}
    params = load_fleet_params(args.params, overrides, defaults=settings.fleet.model_dump())
    packages = load_packages(args.packages)
    config = engine_config(settings, args)

    if args.quad_front is not None:
        designs, provenance = design_pool_from_file(args.quad_front)
        fleet = build_fleet_from_pool(designs, packages, params, provenance)
        front = FrontEngine(config).compute_front(fleet.model)
    else:
        quad_model = build_quadcopter_model(
            QuadcopterVariant.FLEET, catalog_dir=args.catalogs, settings=settings.quadcopter
        )
        planner = FleetPlanner(quad_model, config, quad_specs=quadcopter_specs() if args.decompose else ())
        fleet, front = planner.solve(packages, params)
    _export_or_raise(front, fleet.model, args.out)
    return EXIT_OK


def _sweep_sizes(scale: int) -> List[int]:
    return sorted({max(1, round(scale * f)) for f in (0.1, 0.25, 0.5, 1.0)})


def cmd_benchmark(args: argparse.Namespace, settings: Settings) -> int:
    seed = args.seed if args.seed is not None else settings.solver.seed
    bench = ScalingBenchmark(engine_config(settings, args), seed=seed, settings=settings.quadcopter)
    if args.compare:
        rows = [bench.compare_flat_vs_decomposed(args.scale, args.variant)]
    else:
        rows = bench.run_scaling_sweep(args.sizes or _sweep_sizes(args.scale), args.variant)
    write_rows(rows, args.out)
    return EXIT_OK


COMMANDS = {
    "gen-catalog": cmd_gen_catalog,
    "check-consistency": cmd_check_consistency,
    "solve": cmd_solve,
    "decompose-solve": cmd_decompose_solve,
    "fleet": cmd_fleet,
    "benchmark": cmd_benchmark,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main entry point; returns the process exit code"""
    try:
        args = build_parser().parse_args(argv)
        settings = load_settings(args.config)
        configure_logging(args.log_level or settings.app.log_level)
        return COMMANDS[args.command](args, settings)
    except Exception as e:
        return report_error(e)


if __name__ == "__main__":
    sys.exit(main())
