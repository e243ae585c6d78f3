"""Worker pool used for restarts, candidate searches and grid scans."""

import logging
from concurrent.futures import ThreadPoolExecutor, as_completed

from .conf import get_setting

logger = logging.getLogger(__name__)


def resolve_workers(workers=None):
    """Explicit argument first, then settings (which honour MUBCORR_THREADS)."""
    if workers is None:
        workers = get_setting("THREADS")
    return max(1, int(workers))


def run_parallel(fn, items, workers=None):
    """Apply ``fn`` to every item and return results in submission order."""
    items = list(items)
    worker_count = resolve_workers(workers)
    if worker_count == 1 or len(items) <= 1:
        return [fn(item) for item in items]

    results = [None] * len(items)
    with ThreadPoolExecutor(max_workers=worker_count) as executor:
        futures = {executor.submit(fn, item): index for index, item in enumerate(items)}
        for future in as_completed(futures):
            results[futures[future]] = future.result()
    logger.debug("Completed %d work items on %d workers", len(items), worker_count)
    return results
