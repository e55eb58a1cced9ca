"""
Bounded parallel execution of independent members (sweep members, family
runs, twin runs). Results come back in submission order.
"""

import asyncio
import logging
from typing import Callable, List, Sequence, TypeVar, Union

T = TypeVar('T')
R = TypeVar('R')

logger = logging.getLogger(__name__)


async def gather_members(
    fn: Callable[[T], R],
    items: Sequence[T],
    jobs: int = 1,
) -> List[Union[R, BaseException]]:
    """
    Run fn over items in worker threads, at most `jobs` at a time

    Args:
        fn: Blocking member function
        items: Member inputs
        jobs: Concurrency bound

    Returns:
        One entry per item, in order: the result or the exception it raised
    """
    if not items:
        return []
    semaphore = asyncio.Semaphore(max(1, jobs))

    async def guarded(item: T) -> R:
        async with semaphore:
            return await asyncio.to_thread(fn, item)

    logger.debug(f"running {len(items)} members with {jobs} jobs")
    return await asyncio.gather(*(guarded(item) for item in items), return_exceptions=True)


def map_members(fn: Callable[[T], R], items: Sequence[T], jobs: int = 1) -> List[Union[R, BaseException]]:
    """Blocking wrapper around gather_members; jobs == 1 runs inline"""
    if jobs <= 1:
        results: List[Union[R, BaseException]] = []
        for item in items:
            try:
                results.append(fn(item))
            except Exception as e:
                results.append(e)
        return results
    return asyncio.run(gather_members(fn, items, jobs))
