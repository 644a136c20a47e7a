import functools
import logging
from collections.abc import Callable, Sequence
from concurrent.futures import ProcessPoolExecutor

from ffhyper.config import ConfigSettings, config
from ffhyper.models import IdentityReport, IdentitySweep

logger = logging.getLogger(__name__)

ChunkWorker = Callable[[IdentitySweep, int, int], IdentityReport]
"""Evaluates the tuples at positions worker_index, worker_index + jobs, ... of a sweep"""


def stride(items: Sequence[tuple[int, ...]], worker_index: int, jobs: int) -> Sequence[tuple[int, ...]]:
    return items[worker_index::jobs]


def merge_reports(reports: Sequence[IdentityReport]) -> IdentityReport:
    """Merges partial reports; the result does not depend on the order of the parts"""
    if not reports:
        raise ValueError("Nothing to merge")
    return functools.reduce(IdentityReport.merge, reports)


def run_configured(
    settings: ConfigSettings, worker: ChunkWorker, sweep: IdentitySweep, worker_index: int, jobs: int
) -> IdentityReport:
    """Applies the parent's settings inside a worker process, then evaluates its partition"""
    config.configure(**settings)
    return worker(sweep, worker_index, jobs)


def run_partitioned(sweep: IdentitySweep, jobs: int, worker: ChunkWorker) -> IdentityReport:
    """Runs a sweep on `jobs` static partitions, in process when jobs is 1

    Worker processes receive the current settings of `config`, whatever the start method."""
    jobs = max(jobs, 1)
    if jobs == 1:
        return worker(sweep, 0, 1)
    logger.debug(f"Fanning {sweep.identity} over {sweep.field} out to {jobs} workers")
    settings = config.settings()
    with ProcessPoolExecutor(max_workers=jobs) as executor:
        futures = [executor.submit(run_configured, settings, worker, sweep, index, jobs) for index in range(jobs)]
        partials = [future.result() for future in futures]
    return merge_reports(partials)
