"""Structural analysis of family-free colored graphs.

Tools here follow the structure that emerges above the even-family degree
threshold: pointwise-maximal completions, the audit of secure edges (blue
or green edges inside the common red neighbourhood of a red (r-2)-clique),
wicked triangles (one red pair with two non-red pairs at a common apex),
and the decomposition that turns this structure into a partition witness of
a homomorphism into the one-blue-pair red clique.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional, Union

from .core import ColoredGraph, even_threshold, min_degree, pair_list
from .constructions import gen_family
from .embedding import (
    Embedding,
    find_clique,
    find_embedding,
    find_embedding_using_pair,
    is_free,
)
from .homomorphism import HomCertificate, verify_certificate


@dataclass
class FailureDiagnosis:
    """Where and why the decomposition pipeline stopped.

    On an input satisfying the even-family hypotheses such an outcome
    would be a counterexample to the theorem, so callers surface it loudly.
    hypothesis_free / hypothesis_degree report the (re-checked, never
    assumed) preconditions.
    """

    step: str
    message: str
    witness: object = None
    hypothesis_free: bool = False
    hypothesis_degree: bool = False


@dataclass
class StructureReport:
    """Audit summary emitted by the analyze command."""

    wicked_triangles: list[tuple[int, int, int]]
    blue_wicked: list[tuple[int, int, int]]
    insecure_blue_edges: list[tuple[int, int]]
    insecure_green_edges: list[tuple[int, int]]
    j_embedding: Optional[Embedding]
    equivalence_ok: bool
    classes: list[dict] = field(default_factory=list)
    s: int = 0
    m: int = 0


def extremal_completion(
    g: ColoredGraph,
    family: list[ColoredGraph],
    policy: str = "lex",
    seed: Optional[int] = None,
) -> ColoredGraph:
    """Raise weights to a pointwise-maximal family-free graph.

    Sweeps the pairs (lexicographically, or shuffled per sweep under the
    seeded random policy) attempting single +1 increments; a sweep that
    changes nothing ends the process.  The fixpoint is extremal: raising any
    single pair creates a family member, hence so does any pointwise-larger
    graph.
    """
    free, witness = is_free(g, family)
    if not free:
        raise ValueError("input graph is not family-free (member %d embeds)" % witness[0])
    if policy not in ("lex", "random"):
        raise ValueError("unknown completion policy %r" % (policy,))
    rng = random.Random(seed) if policy == "random" else None
    pairs = list(pair_list(g.n))
    changed = True
    while changed:
        changed = False
        order = list(pairs)
        if rng is not None:
            rng.shuffle(order)
        for x, y in order:
            w = g.weight(x, y)
            if w == 2:
                continue
            candidate = g.with_weight(x, y, w + 1)
            if find_embedding_using_pair_any(candidate, family, (x, y)) is None:
                g = candidate
                changed = True
    return g


def find_embedding_using_pair_any(
    host: ColoredGraph, family: list[ColoredGraph], pair: tuple[int, int]
):
    """First (member index, embedding) that uses the given host pair, if any."""
    for idx in sorted(range(len(family)), key=lambda i: (family[i].n, i)):
        emb = find_embedding_using_pair(family[idx], host, pair)
        if emb is not None:
            return idx, emb
    return None


def find_wicked(g: ColoredGraph, blue_only: bool = False) -> list[tuple[int, int, int]]:
    """All triples (x, y, z), x < y, with xy red and xz, yz non-red
    (both blue under blue_only)."""
    out = []
    lo = 1 if blue_only else 0
    for x, y in pair_list(g.n):
        if g.weight(x, y) != 2:
            continue
        for z in range(g.n):
            if z == x or z == y:
                continue
            wxz = g.weight(x, z)
            wyz = g.weight(y, z)
            if lo <= wxz <= 1 and lo <= wyz <= 1:
                out.append((x, y, z))
    return out


def secure_audit(
    g: ColoredGraph, r: int
) -> tuple[list[tuple[int, int]], list[tuple[int, int]]]:
    """Blue and green edges with no red (r-2)-clique red-joined to both ends.

    Returns (insecure blue edges, insecure green edges).  For r = 2 the
    empty clique secures every edge, so both lists are empty.
    """
    if r < 2:
        raise ValueError("need r >= 2")
    insecure_blue: list[tuple[int, int]] = []
    insecure_green: list[tuple[int, int]] = []
    red = [g.red_mask(v) for v in range(g.n)]
    for x, y in pair_list(g.n):
        w = g.weight(x, y)
        if w == 2:
            continue
        cand = red[x] & red[y]
        if find_clique(red, cand, r - 2) is None:
            (insecure_blue if w == 1 else insecure_green).append((x, y))
    return insecure_blue, insecure_green


def _le1_classes(g: ColoredGraph) -> list[list[int]]:
    """Connected components of the weight-at-most-1 relation, each sorted,
    listed by least vertex."""
    n = g.n
    full = (1 << n) - 1
    seen = [False] * n
    comps: list[list[int]] = []
    for start in range(n):
        if seen[start]:
            continue
        comp = []
        stack = [start]
        seen[start] = True
        while stack:
            v = stack.pop()
            comp.append(v)
            nbrs = full & ~g.red_mask(v) & ~(1 << v)
            for u in range(n):
                if nbrs >> u & 1 and not seen[u]:
                    seen[u] = True
                    stack.append(u)
        comps.append(sorted(comp))
    return comps


def _blue_bipartition(g: ColoredGraph, cls: list[int]):
    """2-color the blue graph on a class by BFS; returns (B, C) or an odd
    cycle witness triple/None on failure."""
    side = {}
    for start in cls:
        if start in side:
            continue
        side[start] = 0
        queue = [start]
        while queue:
            v = queue.pop(0)
            for u in cls:
                if u != v and g.weight(u, v) == 1:
                    if u not in side:
                        side[u] = 1 - side[v]
                        queue.append(u)
                    elif side[u] == side[v]:
                        return None, (v, u)
    b = sorted(v for v in cls if side[v] == 0)
    c = sorted(v for v in cls if side[v] == 1)
    return (b, c), None


def decompose(
    g: ColoredGraph,
    r: int,
    family: Optional[list[ColoredGraph]] = None,
) -> Union[HomCertificate, FailureDiagnosis]:
    """Turn the structure forced above the even-family bound into a certificate.

    Steps: (1) no wicked triangles, (2) classes of the weight-<=1 relation,
    (3) split into blue-spanning and pure-green classes, (4) class count
    m + s = r with s >= 1, (5) per blue class a triangle-free bipartite blue
    graph split into two green cliques, (6) assembled and re-verified
    partition certificate with a designated non-red class pair.

    Preconditions (family-freeness, degree strictly above the even
    threshold) are re-checked and reported in any failure, never assumed:
    the primary use of a diagnosis is falsification testing.
    """
    if r < 3:
        raise ValueError("need r >= 3")
    if family is None:
        family = gen_family(2 * r)
    free_ok, _ = is_free(g, family)
    threshold = even_threshold(r)
    degree_ok = g.n >= 1 and threshold.exceeds(min_degree(g), g.n)

    def fail(step: str, message: str, witness=None) -> FailureDiagnosis:
        return FailureDiagnosis(
            step=step,
            message=message,
            witness=witness,
            hypothesis_free=free_ok,
            hypothesis_degree=degree_ok,
        )

    wicked = find_wicked(g)
    if wicked:
        return fail(
            "wicked_triangle",
            "the weight-<=1 relation is not transitive",
            wicked[0],
        )

    classes = _le1_classes(g)
    blue_classes = []
    green_classes = []
    for cls in classes:
        if any(g.weight(u, v) == 1 for i, u in enumerate(cls) for v in cls[i + 1:]):
            blue_classes.append(cls)
        else:
            green_classes.append(cls)
    m = len(classes)
    s = len(blue_classes)
    if m + s != r:
        return fail(
            "class_count",
            "m + s = %d + %d differs from r = %d" % (m, s, r),
            (m, s),
        )
    if s == 0:
        return fail(
            "no_blue_class",
            "every class is a green clique, so the graph spans a red %d-clique "
            "and no designated pair exists" % r,
            None,
        )

    cert_classes: list[frozenset[int]] = []
    designated_src = None
    for cls in blue_classes:
        blue_pairs = [
            (u, v) for i, u in enumerate(cls) for v in cls[i + 1:] if g.weight(u, v) == 1
        ]
        triangle = next(
            (
                (a, b, c)
                for i, (a, b) in enumerate(blue_pairs)
                for c in cls
                if c not in (a, b)
                and g.weight(a, c) == 1
                and g.weight(b, c) == 1
            ),
            None,
        )
        if triangle is not None:
            return fail(
                "blue_triangle",
                "class %r spans a blue triangle" % (cls,),
                triangle,
            )
        split, odd = _blue_bipartition(g, cls)
        if split is None:
            return fail(
                "odd_blue_cycle",
                "blue graph on class %r is not bipartite" % (cls,),
                odd,
            )
        b_side, c_side = split
        if designated_src is None:
            designated_src = (frozenset(b_side), frozenset(c_side))
        cert_classes.append(frozenset(b_side))
        cert_classes.append(frozenset(c_side))
    for cls in green_classes:
        cert_classes.append(frozenset(cls))

    # Intermediate witness: a homomorphism onto the order-r graph that has a
    # blue matching of size s and red edges elsewhere.
    matching_target = ColoredGraph.from_pair_weights(
        r,
        {
            (i, j): (1 if (min(i, j) % 2 == 0 and max(i, j) == min(i, j) + 1 and j < 2 * s and i < 2 * s) else 2)
            for i in range(r)
            for j in range(i + 1, r)
        },
    )
    matching_cert = HomCertificate(
        kind="general", classes=tuple(cert_classes), target=matching_target
    )
    if not verify_certificate(g, matching_cert):
        raise AssertionError("decomposition produced an invalid matching certificate")

    cert_classes.sort(key=lambda c: min(c) if c else g.n)
    designated = (
        cert_classes.index(designated_src[0]),
        cert_classes.index(designated_src[1]),
    )
    if designated[0] > designated[1]:
        designated = (designated[1], designated[0])
    cert = HomCertificate(
        kind="rk_minus", classes=tuple(cert_classes), designated=designated
    )
    if not verify_certificate(g, cert):
        raise AssertionError("decomposition produced an invalid certificate")
    return cert


def build_structure_report(g: ColoredGraph, r: int) -> StructureReport:
    """Collect the audits behind the analyze command into one report."""
    from .constructions import gen_j

    wicked = find_wicked(g, blue_only=False)
    blue_wicked = find_wicked(g, blue_only=True)
    insecure_blue, insecure_green = secure_audit(g, r)
    j_emb = find_embedding(gen_j(r).graph, g) if r >= 3 else None
    classes = _le1_classes(g)
    class_rows = []
    s = 0
    for cls in classes:
        has_blue = any(
            g.weight(u, v) == 1 for i, u in enumerate(cls) for v in cls[i + 1:]
        )
        s += has_blue
        class_rows.append({"vertices": cls, "has_blue": has_blue})
    return StructureReport(
        wicked_triangles=wicked,
        blue_wicked=blue_wicked,
        insecure_blue_edges=insecure_blue,
        insecure_green_edges=insecure_green,
        j_embedding=j_emb,
        equivalence_ok=not wicked,
        classes=class_rows,
        s=s,
        m=len(classes),
    )
