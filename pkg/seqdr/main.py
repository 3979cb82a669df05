"""
Command-line entry point.

Subcommands:
- estimate: CSV dataset in, estimate report JSON out
- simulate: scenario JSON in, dataset CSV (and optionally truth JSON) out
- study:    study config JSON in, study result JSON plus CSV summary and comparison tables out
- oracle:   scenario JSON in, pseudo-true nuisance JSON out

Exit codes: 0 success, 1 usage error, 2 data or estimation error, 3 study failure.

Dependencies: argparse, pydantic
System role: Outer surface tying the library together
"""

import argparse
import sys
from collections.abc import Callable, Sequence
from pathlib import Path

from pydantic import BaseModel, ValidationError

from seqdr.configs import Settings, get_settings
from seqdr.core.exceptions import InvalidArgumentError, SeqDRError, StudyFailureError, UsageError
from seqdr.core.model_core import OverlapConfig, TreatmentPath, read_dataset, write_dataset
from seqdr.core.pipeline import EstimatorChoice, NuisanceFamily, estimate, estimate_dte, make_plan
from seqdr.evaluation import compare_estimators, comparison_frame, run_study, write_summary_csv
from seqdr.evaluation.metrics import TABLE_FLOAT_FORMAT
from seqdr.models.scenario import ScenarioSpec
from seqdr.models.study import StudyConfig
from seqdr.models.truth import OracleDocument
from seqdr.observability import configure_logging, get_logger
from seqdr.simulation import generate, oracle_eta

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_STUDY = 3

_FAMILIES = {"moment": NuisanceFamily.MOMENT_TARGETED, "baseline": NuisanceFamily.BASELINE}


class ArgumentParser(argparse.ArgumentParser):
    """ArgumentParser that raises UsageError instead of exiting with status 2."""

    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message, {"usage": self.format_usage().strip()})


def _path_arg(text: str) -> TreatmentPath:
    try:
        return TreatmentPath.parse(text)
    except InvalidArgumentError as e:
        raise argparse.ArgumentTypeError(e.message) from e


def _scales_arg(text: str) -> tuple[float, float, float, float]:
    try:
        values = tuple(float(part) for part in text.split(","))
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"not a list of numbers: {text!r}") from e
    if len(values) != 4 or any(value <= 0 for value in values):
        raise argparse.ArgumentTypeError("expected four positive numbers xg,xd,xa,xb")
    return values  # type: ignore[return-value]


def _read_json(path: str, model: type[BaseModel]) -> BaseModel:
    return model.model_validate_json(Path(path).read_text(encoding="utf-8"))


def _emit(document: BaseModel, output: str | None) -> None:
    text = document.model_dump_json(indent=2) + "\n"
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _cmd_estimate(args: argparse.Namespace, settings: Settings) -> int:
    data = read_dataset(args.data)
    estimation = settings.estimation
    overlap = OverlapConfig(
        c0=args.clip if args.clip is not None else estimation.overlap_c0,
        clip_propensities=estimation.clip_propensities and not args.no_clip,
    )
    choice = EstimatorChoice.from_settings(
        settings,
        _FAMILIES[args.family],
        overlap=overlap,
        lambda_scales=args.lambda_scale or estimation.lambda_scales,
        strict=args.strict or estimation.strict,
    )
    plan = make_plan(data.n, args.folds or estimation.k_folds, args.seed)
    level = args.level if args.level is not None else estimation.level
    if args.contrast is not None:
        report = estimate_dte(
            data, args.path, args.contrast, choice, plan, level,
            fold_workers=estimation.fold_workers,
        )
    else:
        report = estimate(data, args.path, choice, plan, level, fold_workers=estimation.fold_workers)
    _emit(report.to_document(), args.output)
    return EXIT_OK


def _cmd_simulate(args: argparse.Namespace, settings: Settings) -> int:
    spec = _read_json(args.spec, ScenarioSpec)
    data, truth = generate(spec, settings.study.truth_draws)
    write_dataset(data, args.output if args.output else sys.stdout)
    if args.truth:
        _emit(truth.to_document(), args.truth)
    return EXIT_OK


def _cmd_study(args: argparse.Namespace, settings: Settings) -> int:
    config = _read_json(args.config, StudyConfig)
    result = run_study(config)
    output = args.output or config.output_path
    _emit(result, output)
    if output:
        write_summary_csv(result, str(Path(output).with_suffix(".csv")))
        if len(result.summaries) > 1:
            table = compare_estimators(result)
            comparison_frame(table).to_csv(
                Path(output).with_name(f"{Path(output).stem}_comparison.csv"),
                index=False,
                float_format=TABLE_FLOAT_FORMAT,
                lineterminator="\n",
            )
            logger.info("comparison_written", advantage=table.moment_targeted_advantage)
    return EXIT_OK


def _cmd_oracle(args: argparse.Namespace, settings: Settings) -> int:
    spec = _read_json(args.spec, ScenarioSpec)
    n_pop = args.n_pop or settings.study.oracle_population
    family = _FAMILIES[args.family]
    eta = oracle_eta(spec, n_pop, family, args.path)
    document = OracleDocument(
        family=family.value,
        path=args.path.label,
        n_pop=n_pop,
        **eta.to_dict(),
    )
    _emit(document, args.output)
    return EXIT_OK


def build_parser() -> ArgumentParser:
    """Build the seqdr argument parser."""
    parser = ArgumentParser(
        prog="seqdr",
        description="Sequential model doubly robust estimation of dynamic treatment effects",
    )
    parser.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING or ERROR")
    commands = parser.add_subparsers(dest="command", required=True)

    est = commands.add_parser("estimate", help="Estimate a counterfactual mean or effect from CSV")
    est.add_argument("data", help="Dataset CSV")
    est.add_argument("--output", help="Report JSON path (stdout if omitted)")
    est.add_argument("--path", type=_path_arg, default=TreatmentPath(), help="Target path a1,a2")
    est.add_argument("--contrast", type=_path_arg, default=None, help="Control path a1,a2 for an effect")
    est.add_argument("--folds", type=int, default=None, help="Number of folds K")
    est.add_argument("--seed", type=int, default=0, help="Cross-fitting seed")
    est.add_argument("--lambda-scale", type=_scales_arg, default=None, help="Penalty constants xg,xd,xa,xb")
    est.add_argument("--family", choices=sorted(_FAMILIES), default="moment")
    est.add_argument("--level", type=float, default=None, help="Confidence level")
    clip = est.add_mutually_exclusive_group()
    clip.add_argument("--clip", type=float, default=None, help="Propensity clipping floor c0")
    clip.add_argument("--no-clip", action="store_true", help="Disable propensity clipping")
    est.add_argument("--strict", action="store_true", help="Fail on non-converged stages")
    est.set_defaults(handler=_cmd_estimate)

    sim = commands.add_parser("simulate", help="Generate a dataset from a scenario")
    sim.add_argument("spec", help="Scenario JSON")
    sim.add_argument("--output", help="Dataset CSV path (stdout if omitted)")
    sim.add_argument("--truth", help="Write the ground truth JSON here")
    sim.set_defaults(handler=_cmd_simulate)

    study = commands.add_parser("study", help="Run a Monte Carlo study")
    study.add_argument("config", help="Study config JSON")
    study.add_argument("--output", help="Result JSON path; the CSV summary goes next to it")
    study.set_defaults(handler=_cmd_study)

    orc = commands.add_parser("oracle", help="Pseudo-true nuisance parameters of a scenario")
    orc.add_argument("spec", help="Scenario JSON")
    orc.add_argument("--n-pop", type=int, default=None, help="Population draw size")
    orc.add_argument("--family", choices=sorted(_FAMILIES), default="moment")
    orc.add_argument("--path", type=_path_arg, default=TreatmentPath(), help="Target path a1,a2")
    orc.add_argument("--output", help="JSON path (stdout if omitted)")
    orc.set_defaults(handler=_cmd_oracle)
    return parser


def cli_main(argv: Sequence[str] | None = None) -> int:
    """
    Run the CLI and return its exit code.

    Args:
        argv: Arguments without the program name (defaults to sys.argv[1:])

    Returns:
        int: 0 success, 1 usage error, 2 data/estimation error, 3 study failure
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        sys.stderr.write(f"{e.details.get('usage', '')}\nseqdr: error: {e.message}\n")
        return EXIT_USAGE
    except SystemExit as e:
        # --help and --version exit through argparse
        return int(e.code or 0)

    settings = get_settings()
    configure_logging(args.log_level or settings.effective_log_level)
    handler: Callable[[argparse.Namespace, Settings], int] = args.handler
    try:
        return handler(args, settings)
    except StudyFailureError as e:
        logger.error("study_failed", error=str(e))
        sys.stderr.write(f"seqdr: study failed: {e}\n")
        return EXIT_STUDY
    except UsageError as e:
        sys.stderr.write(f"seqdr: error: {e}\n")
        return EXIT_USAGE
    except (SeqDRError, ValidationError, OSError) as e:
        logger.error("command_failed", command=args.command, error_type=type(e).__name__)
        sys.stderr.write(f"seqdr: {type(e).__name__}: {e}\n")
        return EXIT_DATA


def main() -> None:
    """Console script entry point."""
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
