"""Process-level environment setup for acmorse.

Handles run ID generation, project directory resolution and the worker pool
used for embarrassingly parallel work items.
"""

import contextvars
import hashlib
import logging
import os
from collections.abc import Callable, Iterable
from concurrent.futures import ThreadPoolExecutor
from typing import TypeVar

from acmorse.config.models import RunConfig

logger = logging.getLogger("acmorse.environment")

T = TypeVar("T")
R = TypeVar("R")


def generate_run_id(config: RunConfig) -> str:
    """Derive a short run ID from the validated config (stable across reruns)."""
    return hashlib.sha256(config.model_dump_json().encode()).hexdigest()[:12]


def get_project_dir() -> str:
    """Return the project root directory.

    Reads from the ``PROJECT_DIR`` environment variable, falling back to cwd.
    """
    return os.environ.get("PROJECT_DIR", os.getcwd())


def setup_environment(config: RunConfig) -> str:
    """Publish runtime tokens as env vars and return the run ID."""
    run_id = generate_run_id(config)
    os.environ.setdefault("PROJECT_DIR", get_project_dir())
    os.environ["RUN_ID"] = run_id

    logger.debug(
        "Environment ready: run_id=%s threads=%d project_dir=%s",
        run_id,
        config.threads,
        os.environ["PROJECT_DIR"],
    )
    return run_id


def parallel_map(fn: Callable[[T], R], items: Iterable[T], threads: int = 1) -> list[R]:
    """Apply *fn* to every item, on a thread pool when threads > 1.

    Results come back in input order, so callers stay deterministic for any
    thread count. Each task runs in a copy of the caller's context so log
    context fields propagate into workers.
    """
    work = list(items)
    if threads <= 1 or len(work) <= 1:
        return [fn(item) for item in work]

    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = [
            pool.submit(contextvars.copy_context().run, fn, item) for item in work
        ]
        return [future.result() for future in futures]
