"""Shared test helpers: independent brute-force oracles.

Everything here deliberately avoids the package's search code paths so that
tests compare two genuinely different routes to the same answer.
"""

from __future__ import annotations

import itertools
import random

import pytest

from cwg.core import ColoredGraph, num_pairs, pair_list


def brute_force_embeds(pattern: ColoredGraph, host: ColoredGraph) -> bool:
    """Try every injective map, no pruning."""
    if pattern.n > host.n:
        return False
    pairs = pair_list(pattern.n)
    for perm in itertools.permutations(range(host.n), pattern.n):
        if all(host.weight(perm[x], perm[y]) >= pattern.weight(x, y) for x, y in pairs):
            return True
    return False


def brute_force_is_free(host: ColoredGraph, family) -> bool:
    return not any(brute_force_embeds(f, host) for f in family)


def chromatic_le(g: ColoredGraph, r: int) -> bool:
    """Can the nonzero-weight graph be covered by r independent sets?
    Subset dynamic programming, independent of the coloring backtracker."""
    n = g.n
    if n == 0:
        return True
    adj = [g.ge1_mask(v) for v in range(n)]
    independent = [
        mask
        for mask in range(1 << n)
        if all(
            not (adj[v] & mask)
            for v in range(n)
            if mask >> v & 1
        )
    ]
    from functools import lru_cache

    @lru_cache(maxsize=None)
    def cover(mask: int, k: int) -> bool:
        if mask == 0:
            return True
        if k == 0:
            return False
        v = (mask & -mask).bit_length() - 1
        for ind in independent:
            if ind >> v & 1 and ind & ~mask == 0:
                if cover(mask & ~ind, k - 1):
                    return True
        return False

    return cover((1 << n) - 1, r)


def random_graph(rng: random.Random, n: int) -> ColoredGraph:
    return ColoredGraph.from_digits(n, [rng.randrange(3) for _ in range(num_pairs(n))])


@pytest.fixture
def rng() -> random.Random:
    return random.Random(0xC001)
