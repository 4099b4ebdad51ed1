"""Colored weighted graphs with weights in {0, 1, 2}.

A colored graph is a complete graph on n vertices where every pair carries a
weight 0 (green), 1 (blue) or 2 (red).  Weights are stored packed, two bits
per unordered pair, over the strict upper triangle in row-major order:
(0,1), (0,2), ..., (0,n-1), (1,2), ..., (n-2,n-1).

This module provides the graph type itself, exact rational degree thresholds
(all comparisons are integer arithmetic, never floats), lexicographic
canonical forms, raw and isomorph-free enumeration, and the ``.cwg`` file
format.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd
from typing import Callable, Iterator, Optional

GREEN, BLUE, RED = 0, 1, 2

RAW_ENUM_BOUND = 6        # raw mode touches 3^C(n,2) graphs
ISO_ENUM_BOUND = 8        # canonical augmentation bound
CANON_BOUND = 8           # default bound for canonical_form

_PAIR_CACHE: dict[int, tuple[tuple[int, int], ...]] = {}
_POS_CACHE: dict[int, dict[tuple[int, int], int]] = {}


def pair_list(n: int) -> tuple[tuple[int, int], ...]:
    """Upper-triangle pairs of range(n) in row-major order."""
    if n not in _PAIR_CACHE:
        _PAIR_CACHE[n] = tuple((x, y) for x in range(n) for y in range(x + 1, n))
    return _PAIR_CACHE[n]


def pair_pos(n: int) -> dict[tuple[int, int], int]:
    """Map (x, y) with x < y to its index in pair_list(n)."""
    if n not in _POS_CACHE:
        _POS_CACHE[n] = {p: i for i, p in enumerate(pair_list(n))}
    return _POS_CACHE[n]


def num_pairs(n: int) -> int:
    return n * (n - 1) // 2


class ColoredGraph:
    """Immutable {0,1,2}-weighted complete graph.

    Weight symmetry and the zero diagonal are structural: only the strict
    upper triangle is stored.  Instances are hashable and safe to share
    between threads.
    """

    __slots__ = ("n", "bits", "_ge1", "_red", "_degrees")

    MAX_ORDER = 64

    def __init__(self, n: int, bits: int):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        if n > ColoredGraph.MAX_ORDER:
            raise ValueError("graphs beyond order %d are unsupported" % ColoredGraph.MAX_ORDER)
        m = num_pairs(n)
        if bits < 0 or bits >> (2 * m):
            raise ValueError("packed weights out of range for order %d" % n)
        self.n = n
        self.bits = bits
        # Eager per-vertex bitmasks and degrees; every search path needs them.
        ge1 = [0] * n
        red = [0] * n
        deg = [0] * n
        b = bits
        for x, y in pair_list(n):
            w = b & 3
            b >>= 2
            if w == 3:
                raise ValueError("weight code 3 is invalid (weights are 0, 1, 2)")
            if w:
                ge1[x] |= 1 << y
                ge1[y] |= 1 << x
                if w == 2:
                    red[x] |= 1 << y
                    red[y] |= 1 << x
                deg[x] += w
                deg[y] += w
        self._ge1 = tuple(ge1)
        self._red = tuple(red)
        self._degrees = tuple(deg)

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_digits(cls, n: int, digits) -> "ColoredGraph":
        """Build from an iterable of C(n,2) weights in upper-triangle order."""
        bits = 0
        count = 0
        for i, w in enumerate(digits):
            if w not in (0, 1, 2):
                raise ValueError("weight %r at pair index %d is not 0, 1 or 2" % (w, i))
            bits |= w << (2 * i)
            count += 1
        if count != num_pairs(n):
            raise ValueError("expected %d weights, got %d" % (num_pairs(n), count))
        return cls(n, bits)

    @classmethod
    def from_pair_weights(cls, n: int, weights: dict[tuple[int, int], int]) -> "ColoredGraph":
        """Build from a dict of (x, y) -> weight; missing pairs are green."""
        pos = pair_pos(n)
        bits = 0
        for (x, y), w in weights.items():
            if x == y:
                raise ValueError("self-pair (%d, %d)" % (x, y))
            key = (x, y) if x < y else (y, x)
            if key not in pos:
                raise ValueError("pair %r out of range" % (key,))
            if w not in (0, 1, 2):
                raise ValueError("weight %r is not 0, 1 or 2" % (w,))
            p = pos[key]
            bits = (bits & ~(3 << (2 * p))) | (w << (2 * p))
        return cls(n, bits)

    @classmethod
    def from_matrix(cls, rows) -> "ColoredGraph":
        """Build from a full symmetric matrix with zero diagonal."""
        rows = [list(r) for r in rows]
        n = len(rows)
        for i in range(n):
            if len(rows[i]) != n:
                raise ValueError("matrix is not square")
            if rows[i][i] != 0:
                raise ValueError("diagonal entry at %d is not zero" % i)
            for j in range(n):
                if rows[i][j] != rows[j][i]:
                    raise ValueError("matrix is not symmetric at (%d, %d)" % (i, j))
        return cls.from_digits(n, [rows[x][y] for x, y in pair_list(n)])

    @classmethod
    def uniform(cls, n: int, weight: int) -> "ColoredGraph":
        """Complete graph with every pair at the given weight."""
        return cls.from_digits(n, [weight] * num_pairs(n))

    # -- accessors ---------------------------------------------------------

    def weight(self, x: int, y: int) -> int:
        if x == y:
            return 0
        if x > y:
            x, y = y, x
        p = pair_pos(self.n)[(x, y)]
        return (self.bits >> (2 * p)) & 3

    def complement_weight(self, x: int, y: int) -> int:
        """The reflected weight 2 - w(x, y) (2 minus the stored weight)."""
        return 2 - self.weight(x, y)

    def digits(self) -> tuple[int, ...]:
        """Upper-triangle weights in row-major order."""
        b = self.bits
        out = []
        for _ in range(num_pairs(self.n)):
            out.append(b & 3)
            b >>= 2
        return tuple(out)

    def matrix(self) -> tuple[tuple[int, ...], ...]:
        n = self.n
        rows = [[0] * n for _ in range(n)]
        for (x, y), w in zip(pair_list(n), self.digits()):
            rows[x][y] = rows[y][x] = w
        return tuple(tuple(r) for r in rows)

    def upper_string(self) -> str:
        return "".join(str(d) for d in self.digits())

    def ge1_mask(self, x: int) -> int:
        """Bitmask of vertices joined to x by a blue or red pair."""
        return self._ge1[x]

    def red_mask(self, x: int) -> int:
        """Bitmask of vertices joined to x by a red pair."""
        return self._red[x]

    def degrees(self) -> tuple[int, ...]:
        return self._degrees

    def with_weight(self, x: int, y: int, w: int) -> "ColoredGraph":
        """A copy with one pair changed (graphs are immutable)."""
        if x == y:
            raise ValueError("self-pair")
        if w not in (0, 1, 2):
            raise ValueError("weight %r is not 0, 1 or 2" % (w,))
        if x > y:
            x, y = y, x
        p = pair_pos(self.n)[(x, y)]
        bits = (self.bits & ~(3 << (2 * p))) | (w << (2 * p))
        return ColoredGraph(self.n, bits)

    def permuted(self, perm) -> "ColoredGraph":
        """Relabelled copy: new vertex i is old vertex perm[i]."""
        m = self.matrix()
        return ColoredGraph.from_digits(
            self.n, [m[perm[x]][perm[y]] for x, y in pair_list(self.n)]
        )

    # -- dunder ------------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ColoredGraph)
            and self.n == other.n
            and self.bits == other.bits
        )

    def __hash__(self) -> int:
        return hash((self.n, self.bits))

    def __repr__(self) -> str:
        return "ColoredGraph(n=%d, weights=%r)" % (self.n, self.upper_string())


# -- degrees and thresholds -------------------------------------------------


def degree(g: ColoredGraph, x: int) -> int:
    """Weighted degree: sum of w(x, y) over all y."""
    if not 0 <= x < g.n:
        raise IndexError("vertex %d out of range for order %d" % (x, g.n))
    return g.degrees()[x]


def min_degree(g: ColoredGraph) -> int:
    if g.n == 0:
        raise ValueError("minimum degree of the empty graph is undefined")
    return min(g.degrees())


def edge_weight_sum(g: ColoredGraph) -> int:
    """Total weight over unordered pairs (the weighted edge count)."""
    return sum(g.degrees()) // 2


@dataclass(frozen=True)
class Threshold:
    """Exact rational p/q used for strict minimum-degree comparisons.

    The test "d/n > num/den" is evaluated as d*den > num*n in integers;
    the sharpness constructions sit exactly on these bounds, so floating
    point would corrupt the strictness boundary.
    """

    num: int
    den: int

    def __post_init__(self):
        if self.den <= 0:
            raise ValueError("denominator must be positive")
        g = gcd(self.num, self.den)
        if g > 1:
            object.__setattr__(self, "num", self.num // g)
            object.__setattr__(self, "den", self.den // g)

    def exceeds(self, d: int, n: int) -> bool:
        """True iff d > (num/den) * n, exactly."""
        if n < 1:
            raise ValueError("order must be at least 1")
        return d * self.den > self.num * n

    def cutoff(self, n: int) -> int:
        """Smallest integer degree strictly above (num/den) * n."""
        return (self.num * n) // self.den + 1

    def __str__(self) -> str:
        return "%d/%d" % (self.num, self.den)


def exceeds_threshold(d: int, n: int, t: Threshold) -> bool:
    return t.exceeds(d, n)


def aes_threshold(r: int) -> Threshold:
    """Simple-graph degree bound (3r-4)/(3r-1)."""
    return Threshold(3 * r - 4, 3 * r - 1)


def odd_threshold(r: int) -> Threshold:
    """Degree bound (6r-8)/(3r-1) for the odd-family theorem."""
    return Threshold(6 * r - 8, 3 * r - 1)


def even_threshold(r: int) -> Threshold:
    """Degree bound (14r-24)/(7r-5) for the even-family theorem."""
    return Threshold(14 * r - 24, 7 * r - 5)


# -- canonical forms ---------------------------------------------------------


@dataclass(frozen=True)
class CanonicalForm:
    """Lexicographically minimal upper-triangle string over all relabellings.

    Two graphs have equal canonical forms iff they are isomorphic.
    """

    n: int
    code: str


def _min_relabelling(g: ColoredGraph):
    """Return (minimal digit tuple, list of permutations achieving it)."""
    n = g.n
    if n <= 1:
        return (), [tuple(range(n))]
    m = g.matrix()
    pairs = pair_list(n)
    best = None
    argmins: list[tuple[int, ...]] = []
    for perm in itertools.permutations(range(n)):
        cand = tuple(m[perm[x]][perm[y]] for x, y in pairs)
        if best is None or cand < best:
            best = cand
            argmins = [perm]
        elif cand == best:
            argmins.append(perm)
    return best, argmins


def canonical_form(g: ColoredGraph, bound: int = CANON_BOUND) -> CanonicalForm:
    """Full-permutation minimization; feasible for the enumeration scale."""
    if g.n > bound:
        raise ValueError("canonical_form bound %d exceeded (n=%d)" % (bound, g.n))
    best, _ = _min_relabelling(g)
    return CanonicalForm(g.n, "".join(str(d) for d in best))


def canonicalized(g: ColoredGraph, bound: int = CANON_BOUND) -> ColoredGraph:
    """The canonically relabelled copy of g."""
    if g.n > bound:
        raise ValueError("canonical bound %d exceeded (n=%d)" % (bound, g.n))
    best, _ = _min_relabelling(g)
    return ColoredGraph.from_digits(g.n, best)


# -- enumeration -------------------------------------------------------------


@dataclass
class EnumerationStats:
    n: int
    mode: str
    count: int


def _enumerate_raw(n: int, visitor) -> int:
    m = num_pairs(n)
    total = 3 ** m
    count = 0
    for code in range(total):
        digits = []
        c = code
        for _ in range(m):
            digits.append(c % 3)
            c //= 3
        g = ColoredGraph.from_digits(n, digits)
        count += 1
        if visitor is not None:
            visitor(g)
    return count


def _enumerate_isomorph_free(n: int, visitor) -> int:
    """Canonical augmentation: extend representatives one vertex at a time.

    A child built from a canonical parent by appending a vertex is accepted
    iff the appended vertex lands in the same automorphism orbit as the
    vertex occupying the last slot of the child's canonical labelling; a
    per-parent set of canonical codes removes duplicates arising from
    automorphic extensions of the same parent.  Each isomorphism class is
    then produced exactly once.
    """
    if n == 0:
        if visitor is not None:
            visitor(ColoredGraph(0, 0))
        return 1
    level: list[ColoredGraph] = [ColoredGraph(1, 0)]
    for k in range(2, n + 1):
        nxt: list[ColoredGraph] = []
        for parent in level:
            seen: set[tuple[int, ...]] = set()
            base_digits = parent.digits()
            for ext in itertools.product((0, 1, 2), repeat=k - 1):
                # New vertex is index k-1; its pairs sit at the end of each row.
                digits = []
                it = iter(base_digits)
                for x in range(k - 1):
                    digits.extend(itertools.islice(it, k - 2 - x))
                    digits.append(ext[x])
                child = ColoredGraph.from_digits(k, digits)
                best, argmins = _min_relabelling(child)
                if best in seen:
                    continue
                last_orbit = {perm[k - 1] for perm in argmins}
                if k - 1 not in last_orbit:
                    continue
                seen.add(best)
                nxt.append(ColoredGraph.from_digits(k, best))
        level = nxt
    for g in level:
        if visitor is not None:
            visitor(g)
    return len(level)


def enumerate_graphs(
    n: int,
    mode: str = "raw",
    visitor: Optional[Callable[[ColoredGraph], None]] = None,
) -> EnumerationStats:
    """Visit every colored graph of order n exactly once.

    raw mode visits all 3^C(n,2) labelled graphs (n <= 6); isomorph_free
    visits one representative per isomorphism class (n <= 8).
    """
    if mode == "raw":
        if n > RAW_ENUM_BOUND:
            raise ValueError("raw enumeration bound %d exceeded (n=%d)" % (RAW_ENUM_BOUND, n))
        count = _enumerate_raw(n, visitor)
    elif mode == "isomorph_free":
        if n > ISO_ENUM_BOUND:
            raise ValueError("isomorph-free bound %d exceeded (n=%d)" % (ISO_ENUM_BOUND, n))
        count = _enumerate_isomorph_free(n, visitor)
    else:
        raise ValueError("unknown enumeration mode %r" % (mode,))
    return EnumerationStats(n=n, mode=mode, count=count)


def all_graphs(n: int) -> Iterator[ColoredGraph]:
    """Iterator over all labelled colored graphs of order n (raw order)."""
    if n > RAW_ENUM_BOUND:
        raise ValueError("raw enumeration bound %d exceeded (n=%d)" % (RAW_ENUM_BOUND, n))
    m = num_pairs(n)
    for code in range(3 ** m):
        digits = []
        c = code
        for _ in range(m):
            digits.append(c % 3)
            c //= 3
        yield ColoredGraph.from_digits(n, digits)


# -- .cwg file format ---------------------------------------------------------


class CwgFormatError(ValueError):
    """Malformed .cwg input; carries 1-based line and column."""

    def __init__(self, message: str, line: int, column: int = 0):
        super().__init__("line %d%s: %s" % (line, (", column %d" % column) if column else "", message))
        self.line = line
        self.column = column


def to_cwg(g: ColoredGraph) -> str:
    """Serialize: 'cwg <n>' then the C(n,2) upper-triangle weight characters."""
    return "cwg %d\n%s\n" % (g.n, g.upper_string())


def parse_cwg(text: str, first_line: int = 1) -> ColoredGraph:
    lines = text.splitlines()
    if not lines:
        raise CwgFormatError("empty input, expected 'cwg <n>' header", first_line)
    header = lines[0].split()
    if len(header) != 2 or header[0] != "cwg":
        raise CwgFormatError("expected header 'cwg <n>', got %r" % lines[0], first_line)
    try:
        n = int(header[1])
    except ValueError:
        raise CwgFormatError("vertex count %r is not an integer" % header[1], first_line)
    if n < 0:
        raise CwgFormatError("vertex count must be nonnegative", first_line)
    body = lines[1] if len(lines) > 1 else ""
    m = num_pairs(n)
    if len(body) != m:
        raise CwgFormatError(
            "expected %d weight characters, got %d" % (m, len(body)), first_line + 1
        )
    digits = []
    for i, ch in enumerate(body):
        if ch not in "012":
            raise CwgFormatError("invalid weight character %r" % ch, first_line + 1, i + 1)
        digits.append(int(ch))
    for extra in lines[2:]:
        if extra.strip():
            raise CwgFormatError("unexpected trailing content", first_line + 2)
    return ColoredGraph.from_digits(n, digits)


def read_cwg(path) -> ColoredGraph:
    with open(path, "r", encoding="ascii") as fh:
        return parse_cwg(fh.read())


def write_cwg(path, g: ColoredGraph) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(to_cwg(g))


def parse_cwg_family(text: str) -> list[ColoredGraph]:
    """Parse a multi-graph file: .cwg blocks separated by blank lines."""
    blocks: list[tuple[int, list[str]]] = []
    current: list[str] = []
    start = 1
    for i, line in enumerate(text.splitlines(), start=1):
        if line.strip() == "":
            if current:
                blocks.append((start, current))
                current = []
        else:
            if not current:
                start = i
            current.append(line)
    if current:
        blocks.append((start, current))
    return [parse_cwg("\n".join(lines), first_line=start) for start, lines in blocks]
