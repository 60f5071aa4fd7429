"""
Trial Pool
Runs independent experiment trials on a thread pool and returns results in
trial order, whatever order they complete in.
"""

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, TypeVar

T = TypeVar('T')


def map_trials(run_trial: Callable[[int], T], trials: int, workers: int = 1) -> List[T]:
    """
    Call run_trial(0) .. run_trial(trials - 1).

    Args:
        run_trial: pure function of the trial index
        trials: number of trials
        workers: pool size; 1 runs inline

    Returns:
        Results ordered by trial index
    """
    if trials <= 0:
        return []
    if workers <= 1:
        return [run_trial(i) for i in range(trials)]

    with ThreadPoolExecutor(max_workers=workers) as executor:
        futures = [executor.submit(run_trial, i) for i in range(trials)]
        return [future.result() for future in futures]
