import logging
import os
from typing import Any, Callable, Iterable, List, Optional, Sequence

from joblib import Parallel, delayed

from config import Config

logger = logging.getLogger(__name__)


def worker_count(requested: Optional[int] = None) -> int:
    """Resolve the worker count: explicit request, then OFFLOAD_WORKERS, then cores."""
    workers = requested if requested is not None else Config.WORKERS
    if workers is None or workers <= 0:
        workers = os.cpu_count() or 1
    return workers


def run_parallel(func: Callable[..., Any], jobs: Iterable[Sequence[Any]],
                 workers: Optional[int] = None) -> List[Any]:
    """Apply func to every argument tuple; results keep the order of jobs."""
    jobs = list(jobs)
    n_jobs = min(worker_count(workers), max(len(jobs), 1))
    if n_jobs <= 1:
        return [func(*args) for args in jobs]
    logger.debug(f"Dispatching {len(jobs)} jobs to {n_jobs} workers")
    return Parallel(n_jobs=n_jobs)(delayed(func)(*args) for args in jobs)
