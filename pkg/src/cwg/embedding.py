"""Weighted subgraph containment.

A pattern embeds into a host when an injective vertex map makes every host
weight dominate the corresponding pattern weight.  Only pattern pairs of
weight >= 1 constrain the search; green pattern pairs are free.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .core import ColoredGraph, pair_list


@dataclass(frozen=True)
class Embedding:
    """Injective map: pattern vertex i goes to host vertex map[i]."""

    map: tuple[int, ...]


def verify_embedding(pattern: ColoredGraph, host: ColoredGraph, emb: Embedding) -> bool:
    """Check the dominance inequality directly; independent of any search."""
    if len(emb.map) != pattern.n:
        return False
    if len(set(emb.map)) != pattern.n:
        return False
    if any(not 0 <= v < host.n for v in emb.map):
        return False
    for x, y in pair_list(pattern.n):
        if host.weight(emb.map[x], emb.map[y]) < pattern.weight(x, y):
            return False
    return True


def _search_order(pattern: ColoredGraph) -> list[int]:
    """Deterministic vertex order: descending degree, then connectivity to
    already placed vertices, then lowest index."""
    n = pattern.n
    degs = pattern.degrees()
    placed: list[int] = []
    remaining = set(range(n))
    while remaining:
        best = max(
            remaining,
            key=lambda u: (
                degs[u],
                sum(1 for p in placed if pattern.weight(u, p) >= 1),
                -u,
            ),
        )
        placed.append(best)
        remaining.discard(best)
    return placed


def _extend(
    pattern: ColoredGraph,
    host: ColoredGraph,
    order: list[int],
    depth: int,
    image: dict[int, int],
    used: int,
    host_ge1_count,
    host_red_count,
    pat_ge1_count,
    pat_red_count,
) -> Optional[dict[int, int]]:
    if depth == len(order):
        return image
    u = order[depth]
    need = [(image[v], pattern.weight(u, v)) for v in order[:depth]]
    for h in range(host.n):
        if used >> h & 1:
            continue
        # Weight-class count pruning: h must carry enough red / nonzero pairs.
        if host_red_count[h] < pat_red_count[u] or host_ge1_count[h] < pat_ge1_count[u]:
            continue
        ok = True
        for himg, w in need:
            if w and host.weight(h, himg) < w:
                ok = False
                break
        if ok:
            image[u] = h
            res = _extend(
                pattern, host, order, depth + 1, image, used | (1 << h),
                host_ge1_count, host_red_count, pat_ge1_count, pat_red_count,
            )
            if res is not None:
                return res
            del image[u]
    return None


def find_embedding(pattern: ColoredGraph, host: ColoredGraph) -> Optional[Embedding]:
    """Backtracking search for a weight-dominating injection; None if absent."""
    if pattern.n > host.n:
        return None
    if pattern.n == 0:
        return Embedding(())
    order = _search_order(pattern)
    host_ge1_count = [host.ge1_mask(v).bit_count() for v in range(host.n)]
    host_red_count = [host.red_mask(v).bit_count() for v in range(host.n)]
    pat_ge1_count = [pattern.ge1_mask(v).bit_count() for v in range(pattern.n)]
    pat_red_count = [pattern.red_mask(v).bit_count() for v in range(pattern.n)]
    image = _extend(
        pattern, host, order, 0, {}, 0,
        host_ge1_count, host_red_count, pat_ge1_count, pat_red_count,
    )
    if image is None:
        return None
    emb = Embedding(tuple(image[u] for u in range(pattern.n)))
    assert verify_embedding(pattern, host, emb)
    return emb


def find_embedding_using_pair(
    pattern: ColoredGraph, host: ColoredGraph, pair: tuple[int, int]
) -> Optional[Embedding]:
    """Embedding whose image covers the given host pair with a pattern pair
    of weight >= 1.  Complete for incremental freeness checks: when a host
    that was family-free gets one weight raised, any new violation must use
    the raised pair at positive pattern weight."""
    hx, hy = pair
    w_host = host.weight(hx, hy)
    if w_host == 0 or pattern.n > host.n:
        return None
    order_rest_cache: dict[tuple[int, int], list[int]] = {}
    host_ge1_count = [host.ge1_mask(v).bit_count() for v in range(host.n)]
    host_red_count = [host.red_mask(v).bit_count() for v in range(host.n)]
    pat_ge1_count = [pattern.ge1_mask(v).bit_count() for v in range(pattern.n)]
    pat_red_count = [pattern.red_mask(v).bit_count() for v in range(pattern.n)]
    for a, b in pair_list(pattern.n):
        w_pat = pattern.weight(a, b)
        if not 1 <= w_pat <= w_host:
            continue
        for pa, pb in ((a, b), (b, a)):
            key = (pa, pb)
            if key not in order_rest_cache:
                rest = [u for u in _search_order(pattern) if u not in (pa, pb)]
                order_rest_cache[key] = [pa, pb] + rest
            order = order_rest_cache[key]
            if (host_red_count[hx] < pat_red_count[pa]
                    or host_ge1_count[hx] < pat_ge1_count[pa]
                    or host_red_count[hy] < pat_red_count[pb]
                    or host_ge1_count[hy] < pat_ge1_count[pb]):
                continue
            image = {pa: hx, pb: hy}
            res = _extend(
                pattern, host, order, 2, image, (1 << hx) | (1 << hy),
                host_ge1_count, host_red_count, pat_ge1_count, pat_red_count,
            )
            if res is not None:
                emb = Embedding(tuple(res[u] for u in range(pattern.n)))
                assert verify_embedding(pattern, host, emb)
                return emb
    return None


def is_free(
    host: ColoredGraph, family: list[ColoredGraph]
) -> tuple[bool, Optional[tuple[int, Embedding]]]:
    """(True, None) if no family member embeds, else (False, (index, witness)).

    Members are tried smallest order first; the returned index refers to the
    family list as given.
    """
    for idx in sorted(range(len(family)), key=lambda i: (family[i].n, i)):
        emb = find_embedding(family[idx], host)
        if emb is not None:
            return False, (idx, emb)
    return True, None


# -- clique search on bitmask graphs ----------------------------------------


def find_clique(adj: tuple[int, ...] | list[int], cand_mask: int, k: int) -> Optional[list[int]]:
    """A k-clique inside cand_mask on the given adjacency masks, or None.
    Vertices are tried in ascending order, so the witness is deterministic."""
    if k == 0:
        return []

    def rec(cand: int, need: int, acc: list[int]) -> Optional[list[int]]:
        while cand:
            if cand.bit_count() < need:
                return None
            v = (cand & -cand).bit_length() - 1
            cand &= cand - 1
            if need == 1:
                return acc + [v]
            res = rec(cand & adj[v], need - 1, acc + [v])
            if res is not None:
                return res
        return None

    return rec(cand_mask, k, [])


def max_blue_clique(host: ColoredGraph) -> tuple[int, tuple[int, ...]]:
    """Largest vertex set with all pairwise weights >= 1 (branch and bound
    on the nonzero-weight graph); returns (size, witness)."""
    n = host.n
    if n == 0:
        return 0, ()
    adj = [host.ge1_mask(v) for v in range(n)]
    best: list[int] = []

    def rec(cand: int, acc: list[int]) -> None:
        nonlocal best
        if len(acc) > len(best):
            best = list(acc)
        while cand:
            if len(acc) + cand.bit_count() <= len(best):
                return
            v = (cand & -cand).bit_length() - 1
            cand &= cand - 1
            rec(cand & adj[v], acc + [v])

    rec((1 << n) - 1, [])
    return len(best), tuple(best)


def common_red_neighborhood(host: ColoredGraph, clique) -> tuple[int, ...]:
    """Vertices outside the clique joined red to every clique vertex.
    The empty clique yields all vertices."""
    cl = list(clique)
    for i, u in enumerate(cl):
        for v in cl[i + 1:]:
            if host.weight(u, v) != 2:
                raise ValueError("input set is not a red clique at (%d, %d)" % (u, v))
    mask = (1 << host.n) - 1
    for u in cl:
        mask &= host.red_mask(u)
    for u in cl:
        mask &= ~(1 << u)
    return tuple(v for v in range(host.n) if mask >> v & 1)
