'''
define the chunked worker map used by the row- and element-partitioned kernels
'''

from collections.abc import Callable

from concurrent.futures import ThreadPoolExecutor

from typing import TypeVar

from .config import get_settings

T = TypeVar('T')


def chunk_bounds(total: int, chunk: int) -> list[tuple[int, int]]:
    '''
    split range(total) into consecutive [start, stop) pieces of at most chunk items
    '''

    chunk = max(1, chunk)

    return [
        (start, min(start + chunk, total))
        for start in range(0, total, chunk)
    ]


def map_chunks(fn: Callable[[int, int], T], total: int, chunk: int) -> list[T]:
    '''
    apply fn(start, stop) to every chunk of range(total)

    results come back in chunk order, so any associative merge of them
    equals the sequential computation
    '''

    bounds = chunk_bounds(total, chunk)
    threads = get_settings().threads

    if threads == 1 or len(bounds) <= 1:
        return [fn(start, stop) for start, stop in bounds]

    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda bound: fn(*bound), bounds))
