"""Shared enumeration helpers for the suites."""

from __future__ import annotations

from hodge_domains.hodge import HodgeNumbers


def compositions(m: int):
    """All ordered tuples of positive integers summing to m, length >= 2."""
    def rec(remaining, prefix):
        if remaining == 0:
            if len(prefix) >= 2:
                yield tuple(prefix)
            return
        for first in range(1, remaining + 1):
            yield from rec(remaining - first, prefix + [first])

    yield from rec(m, [])


def all_rank_tuples(max_m: int, min_m: int = 2):
    """Every valid rank tuple with total rank between min_m and max_m."""
    for m in range(min_m, max_m + 1):
        for tup in compositions(m):
            yield HodgeNumbers(tup)


def bounded_rank_tuples(max_blocks: int, max_rank: int):
    """Every rank tuple with 2..max_blocks blocks and entries 1..max_rank."""
    def rec(blocks_left, prefix):
        if prefix and len(prefix) >= 2:
            yield HodgeNumbers(tuple(prefix))
        if blocks_left == 0:
            return
        for r in range(1, max_rank + 1):
            yield from rec(blocks_left - 1, prefix + [r])

    # depth-first over prefixes, yielding every completed tuple once
    seen = set()
    for hn in rec(max_blocks, []):
        if hn.ranks not in seen:
            seen.add(hn.ranks)
            yield hn
