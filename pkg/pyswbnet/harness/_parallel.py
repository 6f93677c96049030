"""Order-preserving process parallelism for batch work."""

from __future__ import annotations

import asyncio
import logging
from collections.abc import Callable, Sequence
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from typing import Any

from pyswbnet.exceptions import InvalidArgument

_LOGGER = logging.getLogger(__name__)


async def run_jobs[T](
    function: Callable[..., T], arguments: Sequence[tuple[Any, ...]], jobs: int = 1
) -> list[T]:
    """Call `function(*args)` for every argument tuple; results keep input order.

    With `jobs == 1` the calls run inline, otherwise in a process pool.
    """
    if jobs < 1:
        raise InvalidArgument(f"jobs must be at least 1, got {jobs}")
    if jobs == 1 or len(arguments) <= 1:
        return [function(*args) for args in arguments]

    loop = asyncio.get_running_loop()
    _LOGGER.debug("Running %s jobs on %s processes", len(arguments), jobs)
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(
            await asyncio.gather(
                *(
                    loop.run_in_executor(pool, partial(function, *args))
                    for args in arguments
                )
            )
        )
