"""Command line interface: simulate, analyze, replicate and mediate."""

from __future__ import annotations

import argparse
import asyncio
import logging
import sys
from collections.abc import Sequence
from pathlib import Path

from pyswbnet.const import Condition, ExitCode
from pyswbnet.exceptions import ReplicationFailed, SwbNetError
from pyswbnet.harness import (
    DEFAULT_MEDIATOR,
    DEFAULT_OUTCOMES,
    analyze,
    load_run_config,
    mediate_cmd,
    replicate,
    simulate,
)
from pyswbnet.models import RunConfig

_LOGGER = logging.getLogger(__name__)

_CONDITIONS = {
    "visible": (Condition.VISIBLE,),
    "invisible": (Condition.INVISIBLE,),
    "both": (Condition.VISIBLE, Condition.INVISIBLE),
}


def build_parser() -> argparse.ArgumentParser:
    """Return the argument parser."""
    parser = argparse.ArgumentParser(
        prog="pyswbnet",
        description="Networked public goods game with visible or invisible well-being.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    commands = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="TOML run config file")
    common.add_argument("--out", type=Path, help="run directory")
    common.add_argument("--jobs", type=int, default=1, help="worker processes")

    run = commands.add_parser("simulate", parents=[common], help="simulate sessions")
    run.add_argument("--seed", type=int, help="master seed (u64)")
    run.add_argument("--replicates", type=int, help="networks per condition")
    run.add_argument(
        "--condition", choices=sorted(_CONDITIONS), help="conditions to run"
    )

    commands.add_parser("analyze", parents=[common], help="compute per-round metrics")
    commands.add_parser("replicate", parents=[common], help="check the findings")

    mediation = commands.add_parser(
        "mediate", parents=[common], help="mediation through a metric"
    )
    mediation.add_argument("--mediator", default=DEFAULT_MEDIATOR)
    mediation.add_argument(
        "--outcome", help=f"outcome column (default: {', '.join(DEFAULT_OUTCOMES)})"
    )
    mediation.add_argument("--bootstrap", type=int, help="bootstrap samples")
    return parser


def _run_config(args: argparse.Namespace) -> RunConfig:
    config = load_run_config(args.config)
    return config.with_overrides(
        {
            "seed": getattr(args, "seed", None),
            "output_directory": args.out,
            "replicates_per_condition": getattr(args, "replicates", None),
            "conditions": _CONDITIONS.get(getattr(args, "condition", None) or ""),
        }
    )


async def _dispatch(args: argparse.Namespace) -> None:
    config = _run_config(args)
    run_directory = config.output_directory
    match args.command:
        case "simulate":
            await simulate(config, args.jobs)
        case "analyze":
            await analyze(run_directory, args.jobs)
        case "replicate":
            verdicts = await replicate(run_directory, args.jobs)
            for verdict in verdicts:
                print(
                    f"{verdict.verdict:4}  {verdict.finding:<36} "
                    f"effect={verdict.effect} p={verdict.p_value}"
                    f"{'' if verdict.required else '  (informational)'}"
                )
            failed = [v.finding for v in verdicts if v.required and not v.passed]
            if failed:
                raise ReplicationFailed(
                    f"Required findings failed: {', '.join(failed)}"
                )
        case "mediate":
            outcomes = (args.outcome,) if args.outcome else DEFAULT_OUTCOMES
            for outcome in outcomes:
                report = await mediate_cmd(
                    run_directory, args.mediator, outcome, args.bootstrap, args.jobs
                )
                print(report.to_json())


def main(argv: Sequence[str] | None = None) -> int:
    """Run the command line and return the process exit code."""
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    try:
        asyncio.run(_dispatch(args))
    except ReplicationFailed as exc:
        _LOGGER.error("%s", exc)
        return ExitCode.VERDICT_FAILURE
    except SwbNetError as exc:
        _LOGGER.error("%s", exc)
        return ExitCode.INPUT_ERROR
    except OSError as exc:
        _LOGGER.error("I/O error: %s", exc)
        return ExitCode.IO_ERROR
    return ExitCode.SUCCESS


if __name__ == "__main__":
    sys.exit(main())
