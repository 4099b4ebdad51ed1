"""Exhaustive and branch-and-bound search engines.

Raw verification sweeps all 3^C(n,2) labelled graphs.  The hypothesis
filter runs vectorized: degrees first (the minimum-degree cutoff removes
the vast majority), then family-freeness compiled to boolean pair
conditions, both over numpy chunks of the base-3 code space.  Survivors
get the homomorphism conclusion checked one by one, and any counterexample
is re-verified through the independent embedding/homomorphism modules and
greedily weight-minimized before it is reported.
"""

from __future__ import annotations

import itertools
import os
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

import numpy as np

from .core import (
    ColoredGraph,
    even_threshold,
    edge_weight_sum,
    enumerate_graphs,
    min_degree,
    num_pairs,
    odd_threshold,
    pair_list,
    pair_pos,
)
from .constructions import gen_family
from .embedding import find_clique, find_embedding, is_free
from .homomorphism import find_hom_rk, find_hom_rk_minus
from .analysis import find_embedding_using_pair_any

RAW_BOUND = 6
ISO_BOUND = 8
EX_BOUND = 8
_CHUNK = 3 ** 13


@dataclass
class SearchReport:
    """Outcome of a verification or extremal search, JSON-serializable."""

    kind: str
    parameters: dict
    outcome: str  # verified | counterexample | value
    value: Optional[int] = None
    witness: Optional[ColoredGraph] = None
    counterexample: Optional[ColoredGraph] = None
    diagnosis: Optional[str] = None
    statistics: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        out = {
            "kind": self.kind,
            "parameters": dict(self.parameters),
            "outcome": self.outcome,
            "statistics": dict(self.statistics),
        }
        if self.value is not None:
            out["value"] = self.value
        if self.witness is not None:
            out["witness"] = {"n": self.witness.n, "weights": self.witness.upper_string()}
        if self.counterexample is not None:
            out["counterexample"] = {
                "n": self.counterexample.n,
                "weights": self.counterexample.upper_string(),
            }
        if self.diagnosis is not None:
            out["diagnosis"] = self.diagnosis
        return out


# -- family compilation -------------------------------------------------------


def _two_level_shape(member: ColoredGraph) -> Optional[tuple[int, int]]:
    """(order, red clique size) when the member is a red clique fully joined
    to a blue remainder with no green pair; None otherwise."""
    n = member.n
    red_vs = {v for v in range(n) if member.red_mask(v)}
    for x, y in pair_list(n):
        w = member.weight(x, y)
        if w == 0:
            return None
        if (w == 2) != (x in red_vs and y in red_vs):
            return None
    return n, len(red_vs)


class FamilyChecker:
    """Freeness tester compiled from a family.

    Members matching the red-clique-over-blue shape are tested with bitmask
    clique searches; anything else falls back to the generic embedding
    search.  This is the fast path of the enumeration engines; the embedding
    module remains the independent reference implementation.
    """

    def __init__(self, family: list[ColoredGraph]):
        self.family = list(family)
        self.shapes: list[tuple[int, int]] = []
        self.generic: list[ColoredGraph] = []
        for member in sorted(family, key=lambda f: f.n):
            shape = _two_level_shape(member)
            if shape is not None:
                self.shapes.append(shape)
            else:
                self.generic.append(member)

    def is_free_masks(self, ge1, red, n: int) -> bool:
        full = (1 << n) - 1
        for o, i in self.shapes:
            if o > n:
                continue
            if _has_two_level(ge1, red, full, o, i):
                return False
        return True

    def is_free_graph(self, g: ColoredGraph) -> bool:
        ge1 = [g.ge1_mask(v) for v in range(g.n)]
        red = [g.red_mask(v) for v in range(g.n)]
        if not self.is_free_masks(ge1, red, g.n):
            return False
        for member in self.generic:
            if find_embedding(member, g) is not None:
                return False
        return True


def _has_two_level(ge1, red, full: int, o: int, i: int) -> bool:
    """Does the host contain a red i-clique whose common nonzero
    neighbourhood carries a further (o-i)-clique of nonzero pairs?"""
    if i == 0:
        return find_clique(ge1, full, o) is not None

    def rec(cand: int, need: int, common: int, used: int) -> bool:
        while cand:
            if cand.bit_count() < need:
                return False
            v = (cand & -cand).bit_length() - 1
            cand &= cand - 1
            nused = used | (1 << v)
            ncommon = common & ge1[v]
            if need == 1:
                if find_clique(ge1, ncommon & ~nused, o - i) is not None:
                    return True
            elif rec(cand & red[v], need - 1, ncommon, nused):
                return True
        return False

    return rec(full, i, full, 0)


# -- vectorized raw scan ------------------------------------------------------


def _compile_conditions(n: int, shapes: list[tuple[int, int]]):
    """Boolean pair conditions whose disjunction detects any shaped member:
    one condition per (vertex subset, red-clique subset) choice, listing the
    pair positions that must be red and those that must be nonzero."""
    pos = pair_pos(n)
    conditions = []
    for o, i in shapes:
        if o > n:
            continue
        for subset in itertools.combinations(range(n), o):
            for red_part in itertools.combinations(subset, i):
                red_set = set(red_part)
                red_positions = []
                ge1_positions = []
                for a, b in itertools.combinations(subset, 2):
                    p = pos[(a, b)]
                    if a in red_set and b in red_set:
                        red_positions.append(p)
                    else:
                        ge1_positions.append(p)
                conditions.append((tuple(red_positions), tuple(ge1_positions)))
    return conditions


def _scan_raw(
    n: int,
    cutoff: int,
    conditions,
    lo: int,
    hi: int,
    chunk: int = _CHUNK,
) -> Iterable[np.ndarray]:
    """Yield arrays of codes in [lo, hi) whose graphs pass minimum degree
    >= cutoff and, when conditions are given, contain no shaped member."""
    m = num_pairs(n)
    pairs = pair_list(n)
    for start in range(lo, hi, chunk):
        stop = min(start + chunk, hi)
        codes = np.arange(start, stop, dtype=np.int64)
        rem = codes.copy()
        digits = np.empty((m, stop - start), dtype=np.uint8)
        for p in range(m):
            digits[p] = rem % 3
            rem //= 3
        degs = np.zeros((n, stop - start), dtype=np.uint8)
        for p, (x, y) in enumerate(pairs):
            degs[x] += digits[p]
            degs[y] += digits[p]
        mask = degs.min(axis=0) >= cutoff
        idx = np.flatnonzero(mask)
        if idx.size == 0:
            continue
        if conditions is not None:
            sub = digits[:, idx]
            ge1 = sub >= 1
            red = sub == 2
            bad = np.zeros(idx.size, dtype=bool)
            for red_positions, ge1_positions in conditions:
                cond = None
                for p in red_positions:
                    cond = red[p] if cond is None else (cond & red[p])
                for p in ge1_positions:
                    cond = ge1[p] if cond is None else (cond & ge1[p])
                if cond is not None:
                    bad |= cond
            idx = idx[~bad]
        yield codes[idx]


def graph_from_code(n: int, code: int) -> ColoredGraph:
    """Decode a base-3 enumeration code into a graph."""
    m = num_pairs(n)
    digits = []
    for _ in range(m):
        digits.append(code % 3)
        code //= 3
    return ColoredGraph.from_digits(n, digits)


def code_of_graph(g: ColoredGraph) -> int:
    code = 0
    for d in reversed(g.digits()):
        code = code * 3 + d
    return code


# -- theorem verification -----------------------------------------------------


def _theorem_setup(kind: str, r: int):
    if kind == "odd":
        if r < 2:
            raise ValueError("need r >= 2 for the odd theorem")
        return gen_family(2 * r + 1), odd_threshold(r), lambda g: find_hom_rk(g, r)
    if kind == "even":
        if r < 3:
            raise ValueError("need r >= 3 for the even theorem")
        return gen_family(2 * r), even_threshold(r), lambda g: find_hom_rk_minus(g, r)
    raise ValueError("unknown theorem kind %r" % (kind,))


def _recheck_counterexample(g, family, threshold, hom) -> None:
    """Independent re-verification through the reference module paths."""
    free, _ = is_free(g, family)
    if not free:
        raise AssertionError("reported counterexample is not family-free")
    if not threshold.exceeds(min_degree(g), g.n):
        raise AssertionError("reported counterexample misses the degree bound")
    if hom(g) is not None:
        raise AssertionError("reported counterexample admits a homomorphism")


def _minimize_counterexample(g, family, threshold, hom) -> ColoredGraph:
    """Greedily lower weights while the graph stays a counterexample."""

    def still(c: ColoredGraph) -> bool:
        if not threshold.exceeds(min_degree(c), c.n):
            return False
        if hom(c) is not None:
            return False
        return is_free(c, family)[0]

    changed = True
    while changed:
        changed = False
        for x, y in pair_list(g.n):
            while g.weight(x, y) > 0:
                cand = g.with_weight(x, y, g.weight(x, y) - 1)
                if still(cand):
                    g = cand
                    changed = True
                else:
                    break
    return g


def _verify_worker(args) -> tuple[int, int, Optional[int]]:
    """Scan [lo, hi); returns (codes scanned, hypothesis passes, first
    counterexample code or None).  Module-level for multiprocessing."""
    kind, r, n, cutoff, lo, hi = args
    family, threshold, hom = _theorem_setup(kind, r)
    checker = FamilyChecker(family)
    conditions = _compile_conditions(n, checker.shapes) if not checker.generic else None
    passed = 0
    scanned = 0
    for codes in _scan_raw(n, cutoff, conditions, lo, hi):
        for code in codes.tolist():
            g = graph_from_code(n, code)
            if checker.generic and not checker.is_free_graph(g):
                continue
            passed += 1
            if hom(g) is None:
                scanned = code + 1 - lo
                return scanned, passed, code
    return hi - lo, passed, None


def _verify_theorem(kind: str, r: int, n: int, mode: str, threads: Optional[int]) -> SearchReport:
    if n < 1:
        raise ValueError("need n >= 1")
    family, threshold, hom = _theorem_setup(kind, r)
    t_param = 2 * r + 1 if kind == "odd" else 2 * r
    cutoff = threshold.cutoff(n)
    t0 = time.perf_counter()
    parameters = {
        "r": r,
        "n": n,
        "family": "F:%d" % t_param,
        "mode": mode,
        "threshold": str(threshold),
        "cutoff": cutoff,
        "threads": threads or 1,
    }

    enumerated = 0
    passed = 0
    ce_code: Optional[int] = None

    if mode == "raw":
        if n > RAW_BOUND:
            raise ValueError("raw enumeration bound %d exceeded (n=%d)" % (RAW_BOUND, n))
        total = 3 ** num_pairs(n)
        nthreads = threads if threads is not None else (os.cpu_count() or 1)
        parameters["threads"] = nthreads
        if nthreads > 1:
            import multiprocessing

            shard = max(_CHUNK, -(-total // (nthreads * 4)))
            tasks = [
                (kind, r, n, cutoff, lo, min(lo + shard, total))
                for lo in range(0, total, shard)
            ]
            with multiprocessing.Pool(nthreads) as pool:
                for scanned, p, code in pool.imap(_verify_worker, tasks):
                    enumerated += scanned
                    passed += p
                    if code is not None:
                        ce_code = code
                        pool.terminate()
                        break
        else:
            enumerated, passed, ce_code = _verify_worker((kind, r, n, cutoff, 0, total))
    elif mode in ("iso", "isomorph_free"):
        if n > ISO_BOUND:
            raise ValueError("isomorph-free bound %d exceeded (n=%d)" % (ISO_BOUND, n))
        checker = FamilyChecker(family)
        found: list[ColoredGraph] = []

        def visit(g: ColoredGraph) -> None:
            nonlocal passed
            if found or min_degree(g) < cutoff:
                return
            if not checker.is_free_graph(g):
                return
            passed += 1
            if hom(g) is None:
                found.append(g)

        stats = enumerate_graphs(n, "isomorph_free", visit)
        enumerated = stats.count
        if found:
            ce_code = code_of_graph(found[0])
    else:
        raise ValueError("unknown verification mode %r" % (mode,))

    statistics = {
        "enumerated": enumerated,
        "hypothesis_passed": passed,
        "wall_time_s": round(time.perf_counter() - t0, 3),
    }
    if ce_code is None:
        return SearchReport(
            kind="theorem_verify",
            parameters=parameters,
            outcome="verified",
            statistics=statistics,
        )
    g = graph_from_code(n, ce_code)
    _recheck_counterexample(g, family, threshold, hom)
    g = _minimize_counterexample(g, family, threshold, hom)
    _recheck_counterexample(g, family, threshold, hom)
    return SearchReport(
        kind="theorem_verify",
        parameters=parameters,
        outcome="counterexample",
        counterexample=g,
        diagnosis=(
            "graph is F:%d-free with minimum degree %d > (%s)*%d but admits no "
            "homomorphism into the order-%d target"
            % (t_param, min_degree(g), threshold, n, r)
        ),
        statistics=statistics,
    )


def verify_theorem_odd(
    r: int, n: int, mode: str = "raw", threads: Optional[int] = None
) -> SearchReport:
    """Check every raw (or isomorph-free) graph of order n: family-free with
    minimum degree strictly above (6r-8)/(3r-1)*n must map into the red
    r-clique."""
    return _verify_theorem("odd", r, n, mode, threads)


def verify_theorem_even(
    r: int, n: int, mode: str = "raw", threads: Optional[int] = None
) -> SearchReport:
    """Even-family variant: threshold (14r-24)/(7r-5), target the red
    r-clique with one blue pair."""
    return _verify_theorem("even", r, n, mode, threads)


# -- extremal numbers ---------------------------------------------------------


def compute_ex(n: int, family: list[ColoredGraph], weight_cap: int = 2) -> SearchReport:
    """Exact maximum total weight of a family-free graph of order n with
    weights in {0..weight_cap}.

    Branch and bound over pairs in lexicographic order, larger weights
    first; the bound is current sum + cap * pairs remaining.  Freeness is
    maintained incrementally: a newly assigned pair can only create a
    violation through an embedding that uses it, so only anchored
    embeddings are searched.
    """
    if n > EX_BOUND:
        raise ValueError("extremal search bound %d exceeded (n=%d)" % (EX_BOUND, n))
    if weight_cap not in (1, 2):
        raise ValueError("weight cap must be 1 or 2")
    if any(f.n == 0 for f in family):
        raise ValueError("the empty graph embeds everywhere; family is degenerate")
    t0 = time.perf_counter()
    m = num_pairs(n)
    pairs = pair_list(n)
    digits = [0] * m
    best = -1
    best_digits: Optional[list[int]] = None
    nodes = 0

    # Single-vertex members forbid everything on n >= 1 vertices.
    if n >= 1 and any(f.n == 1 for f in family):
        best = None

    def rec(d: int, total: int) -> None:
        nonlocal best, best_digits, nodes
        if total + weight_cap * (m - d) <= best:
            return
        if d == m:
            best = total
            best_digits = list(digits)
            return
        for w in range(weight_cap, -1, -1):
            nodes += 1
            digits[d] = w
            if w > 0:
                host = ColoredGraph.from_digits(n, digits)
                if find_embedding_using_pair_any(host, family, pairs[d]) is not None:
                    digits[d] = 0
                    continue
            rec(d + 1, total + w)
            digits[d] = 0

    if best is None:
        value = None
        witness = None
    else:
        rec(0, 0)
        value = best
        witness = ColoredGraph.from_digits(n, best_digits)
        free, _ = is_free(witness, family)
        if not free or edge_weight_sum(witness) != value:
            raise AssertionError("extremal witness failed independent re-check")
    return SearchReport(
        kind="ex_value",
        parameters={"n": n, "family_orders": [f.n for f in family], "cap": weight_cap},
        outcome="value",
        value=value,
        witness=witness,
        statistics={
            "nodes": nodes,
            "wall_time_s": round(time.perf_counter() - t0, 3),
        },
    )


# -- empirical thresholds -----------------------------------------------------


def empirical_threshold(n: int, r: int, kind: str) -> SearchReport:
    """Largest minimum degree of a family-free order-n graph with no
    homomorphism into the respective target.

    This probes the degree threshold from below at one finite n; the
    asymptotic threshold is an infimum over growing n and the report states
    the exact rational bound next to the observed value.
    """
    family, threshold, hom = _theorem_setup(kind, r)
    if not 1 <= n <= RAW_BOUND:
        raise ValueError("raw enumeration bound %d exceeded (n=%d)" % (RAW_BOUND, n))
    t0 = time.perf_counter()
    checker = FamilyChecker(family)
    conditions = _compile_conditions(n, checker.shapes) if not checker.generic else None
    total = 3 ** num_pairs(n)

    # One vectorized pass marks free graphs and records minimum degrees.
    m = num_pairs(n)
    pairs = pair_list(n)
    mindeg = np.empty(total, dtype=np.uint8)
    free = np.zeros(total, dtype=bool)
    for start in range(0, total, _CHUNK):
        stop = min(start + _CHUNK, total)
        codes = np.arange(start, stop, dtype=np.int64)
        rem = codes.copy()
        digits = np.empty((m, stop - start), dtype=np.uint8)
        for p in range(m):
            digits[p] = rem % 3
            rem //= 3
        degs = np.zeros((n, stop - start), dtype=np.uint8)
        for p, (x, y) in enumerate(pairs):
            degs[x] += digits[p]
            degs[y] += digits[p]
        mindeg[start:stop] = degs.min(axis=0)
        if conditions is not None:
            ge1 = digits >= 1
            red = digits == 2
            bad = np.zeros(stop - start, dtype=bool)
            for red_positions, ge1_positions in conditions:
                cond = None
                for p in red_positions:
                    cond = red[p] if cond is None else (cond & red[p])
                for p in ge1_positions:
                    cond = ge1[p] if cond is None else (cond & ge1[p])
                if cond is not None:
                    bad |= cond
            free[start:stop] = ~bad
        else:
            free[start:stop] = True

    value = None
    witness = None
    checked = 0
    for d in range(2 * (n - 1), -1, -1):
        candidates = np.flatnonzero(free & (mindeg == d))
        for code in candidates.tolist():
            g = graph_from_code(n, code)
            if checker.generic and not checker.is_free_graph(g):
                continue
            checked += 1
            if hom(g) is None:
                value = d
                witness = g
                break
        if value is not None:
            break

    t_param = 2 * r + 1 if kind == "odd" else 2 * r
    return SearchReport(
        kind="threshold",
        parameters={
            "n": n,
            "r": r,
            "kind": kind,
            "family": "F:%d" % t_param,
            "reference_threshold": str(threshold),
            "reference_threshold_times_n": str(Fraction(threshold.num * n, threshold.den)),
        },
        outcome="value",
        value=value,
        witness=witness,
        statistics={
            "enumerated": total,
            "free_graphs_checked": checked,
            "wall_time_s": round(time.perf_counter() - t0, 3),
        },
    )


# -- density report -----------------------------------------------------------


def _family_parameter(family: list[ColoredGraph]) -> Optional[int]:
    """Recover t when the list equals the standard forbidden family.
    The largest member always has order t-1."""
    if not family:
        return None
    t = max(f.n for f in family) + 1
    if t >= 2 and gen_family(t) == family:
        return t
    return None


def limiting_density(t: int) -> Fraction:
    """Reference limit of 2*ex/n^2 for the standard family of parameter t."""
    if t % 2:
        return Fraction(2 * (t - 3), t - 1)
    return Fraction(2 * (3 * t - 10), 3 * t - 4)


def density_report(
    family: list[ColoredGraph], constructions: list[ColoredGraph]
) -> list[dict]:
    """Per-construction scaled densities next to the limiting reference.

    Report only; finite-n densities are not asserted against the limits.
    """
    if not family:
        return []
    t = _family_parameter(family)
    reference = limiting_density(t) if t is not None else None
    rows = []
    for g in constructions:
        e = edge_weight_sum(g)
        density = Fraction(2 * e, g.n * g.n) if g.n else Fraction(0)
        rows.append(
            {
                "n": g.n,
                "edge_weight_sum": e,
                "density": str(density),
                "density_float": float(density),
                "reference": str(reference) if reference is not None else None,
                "reference_float": float(reference) if reference is not None else None,
            }
        )
    return rows
