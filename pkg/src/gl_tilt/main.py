import argparse
import json
import os
import sys
from pathlib import Path
from typing import Callable, Dict, Optional, Sequence, Tuple

from pydantic import BaseModel, ValidationError

from .errors import ConditionFailure, GLTiltError, TwistBoundError
from .geom import SNCConfig, cohomology_table, load_config, parse_config, validate_snc
from .gridcat import DEMOS, grid_demo
from .squid import FORMATS, SquidSpec, SquidSpecModel, build_pd_squid, emit, end_dim_crosscheck
from .tiltcheck import assemble_tilting, auto_twist, check_conditions, family_for
from .utils.logger import logger, set_logger_level

EXIT_OK, EXIT_FAILED, EXIT_INPUT = 0, 1, 2

# (text, passed)
Outcome = Tuple[str, bool]


def _dump(model: BaseModel) -> str:
    return model.model_dump_json(by_alias=True, indent=2) + "\n"


def _load(args) -> SNCConfig:
    if not args.field:
        return load_config(args.config)
    path = Path(args.config)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise GLTiltError(f"Cannot read configuration {path}: {e}") from e
    if not isinstance(data, dict):
        raise GLTiltError(f"{path} does not hold a configuration object")
    # intersection points are normalised in this field
    data["field"] = args.field
    return parse_config(data)


def _load_squid_spec(args) -> SquidSpec:
    path = Path(args.spec)
    try:
        model = SquidSpecModel.model_validate_json(path.read_text(encoding="utf-8"))
    except OSError as e:
        raise GLTiltError(f"Cannot read squid spec {path}: {e}") from e
    if args.field:
        model = model.model_copy(update={"field": args.field})
    return SquidSpec.from_model(model)


def cmd_validate(args) -> Outcome:
    verdict = validate_snc(_load(args))
    return _dump(verdict), verdict.valid


def cmd_cohom(args) -> Outcome:
    cfg = _load(args)
    try:
        classes = json.loads(args.classes)
    except json.JSONDecodeError as e:
        raise GLTiltError(f"--classes is not a JSON list: {e}") from e
    if not isinstance(classes, list):
        raise GLTiltError("--classes must be a JSON list of Picard classes")
    return _dump(cohomology_table(cfg.variety, classes)), True


def _checked(args):
    cfg = _load(args)
    family = family_for(cfg)
    twists = {}
    if args.auto_twist:
        family, twists = auto_twist(cfg, family)
    report = check_conditions(cfg, family)
    report.twists = twists
    return cfg, family, report


def cmd_check(args) -> Outcome:
    _, _, report = _checked(args)
    for failure in report.failures():
        logger.warning(f"Failing condition: {failure}")
    return _dump(report), report.passed


def cmd_assemble(args) -> Outcome:
    cfg, family, report = _checked(args)
    try:
        report = assemble_tilting(cfg, family, report)
    except ConditionFailure as e:
        for failure in e.failures:
            logger.warning(f"Failing condition: {failure}")
        return _dump(report), False
    return _dump(report), True


def cmd_squid(args) -> Outcome:
    return emit(build_pd_squid(_load_squid_spec(args)), args.format or "dot"), True


def cmd_crosscheck(args) -> Outcome:
    report = end_dim_crosscheck(_load_squid_spec(args))
    return report.model_dump_json(indent=2) + "\n", report.agrees


def cmd_griddemo(args) -> Outcome:
    report = grid_demo(args.name)
    return _dump(report), report.passed


COMMANDS: Dict[str, Callable[[argparse.Namespace], Outcome]] = {
    "validate": cmd_validate,
    "cohom": cmd_cohom,
    "check": cmd_check,
    "assemble": cmd_assemble,
    "squid": cmd_squid,
    "crosscheck": cmd_crosscheck,
    "griddemo": cmd_griddemo,
}


def build_parser():
    """Create and configure the argument parser for the toolkit."""
    parser = argparse.ArgumentParser(prog="gl-tilt", description="Exact toolkit for tilting on Geigle-Lenzing orders")
    parser.add_argument(
        "--log-level",
        type=str,
        default="warning",
        choices=["debug", "info", "warning", "error", "critical"],
        help="Set the logging level, defaults to warning so stdout stays scriptable",
    )
    parser.add_argument(
        "--field",
        type=str,
        default=None,
        help="Ground field, 'rational' or a prime q; overrides the field of the input file",
    )
    parser.add_argument(
        "--format",
        choices=list(FORMATS),
        default=None,
        help="Output format; squid defaults to dot, every other command writes json",
    )
    parser.add_argument("--out", type=str, default=None, help="Write the result to this path instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, text in (
        ("validate", "Check that a configuration is simple normal crossing and list its strata"),
        ("check", "Evaluate the tilting conditions for the configuration's family"),
        ("assemble", "List the summands of the tilting object"),
        ("cohom", "Tabulate line-bundle cohomology on the configuration's variety"),
    ):
        p = sub.add_parser(name, help=text)
        p.add_argument("config", help="Path to an SNC configuration JSON file")
        if name in ("check", "assemble"):
            p.add_argument("--auto-twist", action="store_true", help="Twist each T_I until condition 2 holds")
        if name == "cohom":
            p.add_argument("--classes", required=True, help='JSON list of Picard classes, e.g. "[[0,0],[1,-2]]"')

    p = sub.add_parser("squid", help="Emit the squid quiver with relations of weighted P^d")
    p.add_argument("spec", help="Path to a squid spec JSON file")

    p = sub.add_parser("crosscheck", help="Compare the squid path algebra with End(T) block by block")
    p.add_argument("spec", help="Path to a squid spec JSON file")

    p = sub.add_parser("griddemo", help="Print the recollement identities on a built-in example")
    p.add_argument("name", choices=sorted(DEMOS), help="Built-in example")
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Run one subcommand and return its exit status: 0 pass, 1 mathematical failure, 2 bad input."""
    args = build_parser().parse_args(argv)

    # Set log level through environment variable
    os.environ["GLTILT_LOG_LEVEL"] = args.log_level
    set_logger_level(logger, args.log_level)

    try:
        if args.format == "dot" and args.command != "squid":
            raise GLTiltError(f"{args.command} writes json; dot output is only available for squid")
        text, passed = COMMANDS[args.command](args)
    except TwistBoundError as e:
        logger.error(f"{args.command}: {e}")
        return EXIT_FAILED
    except (GLTiltError, ValidationError) as e:
        logger.error(f"{args.command}: {e}")
        return EXIT_INPUT

    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        logger.info(f"Wrote {args.command} output to {args.out}")
    else:
        sys.stdout.write(text)
    return EXIT_OK if passed else EXIT_FAILED


def start():
    """Entry point of the gl-tilt command."""
    sys.exit(run())


if __name__ == "__main__":
    start()
