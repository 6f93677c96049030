"""Demonstrate the usage of the library."""

import asyncio
import logging
from pathlib import Path

from pyswbnet import analyze, replicate, replay_session, simulate
from pyswbnet.harness import dump_log, read_log
from pyswbnet.models import RunConfig

OUTPUT = Path("runs/example")


async def main():
    """Async main."""
    logging.basicConfig(level=logging.INFO)
    config = RunConfig(
        seed=20240601,
        replicates_per_condition=10,
        permutation_iterations=2000,
        output_directory=OUTPUT,
    )

    print("----------------------------- SIMULATING ----------------------------")
    run_directory = await simulate(config, jobs=2)

    log = read_log(run_directory / "logs" / "visible-000.jsonl")
    print(dump_log(log).splitlines()[1])
    state = replay_session(log)
    print(f"Replayed final wealth: {state.wealth}")

    print("----------------------------- ANALYZING -----------------------------")
    report = await analyze(run_directory, jobs=2)
    print(report.summary.to_string(index=False))

    print("----------------------------- CHECKING ------------------------------")
    for verdict in await replicate(run_directory):
        print(f"{verdict.verdict} {verdict.finding}: effect {verdict.effect}")


asyncio.run(main())
