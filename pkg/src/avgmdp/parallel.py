"""Order-preserving fan-out for per-state and per-discount work."""

from collections.abc import Callable, Iterable
from concurrent.futures import ThreadPoolExecutor


def ordered_map[T, R](
    fn: Callable[[T], R], items: Iterable[T], workers: int = 1
) -> list[R]:
    """Apply ``fn`` to every item, returning results in input order.

    Every task is a pure function of its item, so the output is identical for
    any worker count.

    Args:
        fn: Function to apply
        items: Inputs
        workers: Thread count; 1 runs inline

    Returns:
        ``[fn(item) for item in items]``
    """
    if workers <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
