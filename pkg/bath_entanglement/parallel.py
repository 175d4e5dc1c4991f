from concurrent.futures import ThreadPoolExecutor

from .settings import get_settings


def ordered_map(func, items, workers=None):
    """Map ``func`` over ``items``; results keep the order of ``items``.

    Work items must be independent. With one worker this is a plain map.
    """
    items = list(items)
    workers = workers or get_settings()['WORKERS']
    if workers <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=min(workers, len(items))) as executor:
        return list(executor.map(func, items))


def chunks(count, parts):
    """Split ``range(count)`` into at most ``parts`` contiguous slices."""
    parts = max(1, min(parts, count))
    bounds = [count * i // parts for i in range(parts + 1)]
    return [slice(lo, hi) for lo, hi in zip(bounds[:-1], bounds[1:]) if hi > lo]
