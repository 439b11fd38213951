"""
Process-pool fan-out for independent work units (per subset, per box, per diagram).
"""
import logging
from concurrent.futures import ProcessPoolExecutor, as_completed
from multiprocessing import cpu_count

from config import PARALLEL_MIN_TASKS

logger = logging.getLogger(__name__)


def run_tasks(worker, tasks: list, use_multiprocessing: bool = False, max_workers: int = None) -> list:
    """
    Apply a module-level worker function to every task.

    Args:
        worker: Picklable callable taking one task argument.
        tasks: List of task arguments.
        use_multiprocessing: Whether to use a process pool (default: False).
        max_workers: Upper bound on pool size (default: cpu_count()).

    Returns:
        list: Results in the same order as tasks, whatever order the workers finish in.
    """
    if not tasks:
        return []

    if use_multiprocessing and len(tasks) >= PARALLEL_MIN_TASKS:
        workers = min(max_workers or cpu_count(), len(tasks))
        logger.debug(f"Running {len(tasks)} tasks on {workers} workers")
        results = [None] * len(tasks)
        with ProcessPoolExecutor(max_workers=workers) as executor:
            futures = {executor.submit(worker, task): index for index, task in enumerate(tasks)}
            for future in as_completed(futures):
                index = futures[future]
                try:
                    results[index] = future.result()
                except Exception as e:
                    logger.error(f"Task {index} failed: {str(e)}")
                    raise
        return results

    # Single-process path
    return [worker(task) for task in tasks]
