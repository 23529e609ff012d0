"""Exact P-linear maps, their covering graphs and periodic orbits.

A map built from a pattern has breakpoints 1..N and integer values, so every
affine piece has integer slope and offset. Orbits found along a loop of
length n share the denominator ``1 - slope`` of the n-fold composition; the
search keeps them as integer numerators over that denominator and only
builds ``Fraction`` objects for orbits that are kept.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterator, Optional, Sequence

from renorm_towers.permutations import (
    CyclicPermutation,
    Pattern,
    PermLike,
    Tower,
    as_permutation,
    block_periods,
    tower,
)


class OutOfDomain(ValueError):
    pass


class UndefinedForSmallPeriod(ValueError):
    pass


def _frac(v) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


def format_rational(x: Fraction) -> str:
    x = _frac(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


@dataclass(frozen=True)
class PLinearMap:
    """Continuous map affine between consecutive breakpoints."""

    breakpoints: tuple[Fraction, ...]
    values: tuple[Fraction, ...]

    def __post_init__(self):
        bps = tuple(_frac(b) for b in self.breakpoints)
        vals = tuple(_frac(v) for v in self.values)
        object.__setattr__(self, "breakpoints", bps)
        object.__setattr__(self, "values", vals)
        if len(bps) != len(vals) or len(bps) < 2:
            raise ValueError("need at least two breakpoints with one value each")
        if any(a >= b for a, b in zip(bps, bps[1:])):
            raise ValueError("breakpoints must be strictly increasing")
        if min(vals) < bps[0] or max(vals) > bps[-1]:
            raise ValueError("values must lie in the hull of the breakpoints")

    @property
    def hull(self) -> tuple[Fraction, Fraction]:
        return self.breakpoints[0], self.breakpoints[-1]

    @cached_property
    def is_integral(self) -> bool:
        """Breakpoints are exactly 1..N and all values are integers."""
        return (all(b == i for i, b in enumerate(self.breakpoints, start=1))
                and all(v.denominator == 1 for v in self.values))

    @cached_property
    def _int_values(self) -> tuple[int, ...]:
        if not self.is_integral:
            raise ValueError("orbit search needs a map built from a pattern")
        return tuple(int(v) for v in self.values)

    def __call__(self, x) -> Fraction:
        return evaluate(self, x)


def plinear_from_pattern(a: PermLike) -> PLinearMap:
    p = as_permutation(a)
    if p.size < 2:
        raise UndefinedForSmallPeriod("a P-linear map needs period >= 2")
    return PLinearMap(tuple(range(1, p.size + 1)), p.image)


def evaluate(f: PLinearMap, x) -> Fraction:
    x = _frac(x)
    bps, vals = f.breakpoints, f.values
    if not bps[0] <= x <= bps[-1]:
        raise OutOfDomain(f"{x} outside [{bps[0]}, {bps[-1]}]")
    lo, hi = 0, len(bps) - 1
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if bps[mid] <= x:
            lo = mid
        else:
            hi = mid
    if x == bps[lo]:
        return vals[lo]
    if x == bps[hi]:
        return vals[hi]
    return vals[lo] + (vals[hi] - vals[lo]) * (x - bps[lo]) / (bps[hi] - bps[lo])


@dataclass(frozen=True)
class CoveringGraph:
    """Basic intervals 0..N-2 left to right; ``succ[i]`` are the intervals f(I_i) covers."""

    succ: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.succ)

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i, js in enumerate(self.succ) for j in js]


def covering_graph(f: PLinearMap) -> CoveringGraph:
    vals = f.values
    bps = f.breakpoints
    succ = []
    for i in range(len(bps) - 1):
        lo, hi = sorted((vals[i], vals[i + 1]))
        succ.append(tuple(j for j in range(len(bps) - 1) if lo <= bps[j] and bps[j + 1] <= hi))
    return CoveringGraph(tuple(succ))


def _min_rotation(walk: tuple[int, ...]) -> tuple[int, ...]:
    return min(walk[i:] + walk[:i] for i in range(len(walk)))


def _return_distance(g: CoveringGraph, v: int) -> list[float]:
    """Shortest path length from each node back to v, through nodes >= v only."""
    pred: list[list[int]] = [[] for _ in range(g.size)]
    for i, js in enumerate(g.succ):
        if i >= v:
            for j in js:
                if j >= v:
                    pred[j].append(i)
    dist = [float("inf")] * g.size
    dist[v] = 0
    queue = deque([v])
    while queue:
        u = queue.popleft()
        for w in pred[u]:
            if dist[w] == float("inf"):
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def _closed_walks(g: CoveringGraph, lengths: range) -> Iterator[tuple[int, ...]]:
    """Closed walks whose first node is their minimum, for each length in range."""
    longest = max(lengths, default=0)
    for v in range(g.size):
        dist = _return_distance(g, v)
        if dist[v] == float("inf"):
            continue
        path = [v]

        def extend(u: int):
            depth = len(path)
            if depth in lengths and v in g.succ[u]:
                yield tuple(path)
            if depth == longest:
                return
            for w in g.succ[u]:
                if w >= v and depth + max(dist[w], 1) <= longest:
                    path.append(w)
                    yield from extend(w)
                    path.pop()

        yield from extend(v)


def loops(g: CoveringGraph, n: int) -> list[tuple[int, ...]]:
    """All closed walks of length n up to rotation, each as its minimal rotation."""
    found = {_min_rotation(w) for w in _closed_walks(g, range(n, n + 1))}
    return sorted(found)


def format_loop(walk: Sequence[int]) -> str:
    nodes = [f"I{i + 1}" for i in walk] + [f"I{walk[0] + 1}"]
    return "->".join(nodes)


@dataclass(frozen=True)
class ExactCycle:
    points: tuple[Fraction, ...]
    successor: tuple[int, ...]

    @classmethod
    def from_orbit(cls, orbit: Sequence) -> "ExactCycle":
        """Build from points listed in dynamical order."""
        pts = [_frac(x) for x in orbit]
        order = sorted(range(len(pts)), key=pts.__getitem__)
        rank = {i: r for r, i in enumerate(order)}
        n = len(pts)
        successor = tuple(rank[(order[r] + 1) % n] + 1 for r in range(n))
        return cls(tuple(pts[i] for i in order), successor)

    @property
    def period(self) -> int:
        return len(self.points)

    @cached_property
    def permutation(self) -> CyclicPermutation:
        return CyclicPermutation(self.successor)

    @cached_property
    def pattern(self) -> Pattern:
        return Pattern.of(self.permutation)

    @cached_property
    def tower(self) -> Tower:
        return tower(self.permutation)

    def to_json(self) -> dict:
        return {
            "points": [format_rational(x) for x in self.points],
            "successor": list(self.successor),
            "period": self.period,
            "tower": list(self.tower),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "ExactCycle":
        cyc = cls(tuple(parse_rational(s) for s in obj["points"]), tuple(obj["successor"]))
        if "period" in obj and obj["period"] != cyc.period:
            raise ValueError("period does not match the number of points")
        return cyc


def _solve_walk(vals: Sequence[int], walk: Sequence[int]) -> Optional[tuple[int, list[int]]]:
    """Periodic orbit following ``walk``, as (denominator, numerators in orbit order).

    Degenerate compositions: slope +1 with zero offset means the whole
    admissible interval is periodic, and its midpoint is returned; slope +1
    with nonzero offset has no solution.
    """
    slope, offset = 1, 0
    for i in walk:
        s = vals[i + 1] - vals[i]
        offset = s * (offset - (i + 1)) + vals[i]
        slope *= s
    start = walk[0] + 1
    if slope == 1:
        if offset != 0:
            return None
        num, den = 2 * start + 1, 2
    else:
        num, den = offset, 1 - slope
        if den < 0:
            num, den = -num, -den
    x = num
    orbit = []
    for i in walk:
        b = i + 1
        if not (b * den <= x <= (b + 1) * den):
            return None
        orbit.append(x)
        x = vals[i] * den + (vals[i + 1] - vals[i]) * (x - b * den)
    if x != num:
        return None
    period = orbit.index(x, 1) if x in orbit[1:] else len(orbit)
    return den, orbit[:period]


def _orbits(f: PLinearMap, lengths: range,
            seen: Optional[set] = None) -> Iterator[tuple[int, list[int]]]:
    """Distinct orbits following closed walks with lengths in range.

    ``seen`` holds the leftmost points of orbits already reported.
    """
    vals = f._int_values
    g = covering_graph(f)
    seen = set() if seen is None else seen
    for walk in _closed_walks(g, lengths):
        sol = _solve_walk(vals, walk)
        if sol is None:
            continue
        den, orbit = sol
        key = Fraction(min(orbit), den)
        if key not in seen:
            seen.add(key)
            yield den, orbit


def orbit_from_loop(f: PLinearMap, loop: Sequence[int]) -> Optional[ExactCycle]:
    """The periodic orbit whose itinerary follows ``loop`` (0-based basic intervals)."""
    sol = _solve_walk(f._int_values, tuple(loop))
    if sol is None:
        return None
    den, orbit = sol
    return ExactCycle.from_orbit([Fraction(x, den) for x in orbit])


def _self_orbit(f: PLinearMap) -> tuple[int, list[int]]:
    """The defining cycle {1..N} in orbit order, over denominator 1."""
    vals = f._int_values
    orbit, x = [1], vals[0]
    while x != 1:
        orbit.append(x)
        x = vals[x - 1]
    return 1, orbit


def _all_orbits(f: PLinearMap, n_max: int) -> Iterator[tuple[int, list[int]]]:
    own = _self_orbit(f)
    if len(own[1]) <= n_max:
        yield own
    for den, orbit in _orbits(f, range(1, n_max + 1), seen={Fraction(1)}):
        if len(orbit) <= n_max:
            yield den, orbit


def cycles_up_to(f: PLinearMap, n_max: int) -> list[ExactCycle]:
    """Every periodic orbit of period <= n_max, sorted by period then points.

    Intervals of periodic points (slope +1 along a loop) contribute one
    representative, the orbit of the interval's midpoint; all of them share
    the pattern of the defining cycle, which is always included.
    """
    out = [ExactCycle.from_orbit([Fraction(x, den) for x in orbit])
           for den, orbit in _all_orbits(f, n_max)]
    return sorted(out, key=lambda c: (c.period, c.points))


def _orbit_image(orbit: Sequence[int]) -> tuple[int, ...]:
    order = sorted(range(len(orbit)), key=orbit.__getitem__)
    rank = [0] * len(orbit)
    for r, i in enumerate(order):
        rank[i] = r
    n = len(orbit)
    return tuple(rank[(order[r] + 1) % n] + 1 for r in range(n))


def forces(a: PermLike, b: PermLike) -> bool:
    """Whether the P-linear map of ``a`` has a cycle of pattern ``b``."""
    a, b = Pattern.of(a), Pattern.of(b)
    if a == b:
        return True
    if b.period == 1:
        return True
    f = plinear_from_pattern(a)
    n = b.period
    for _, orbit in _orbits(f, range(n, n + 1)):
        if len(orbit) == n and Pattern.of(CyclicPermutation(_orbit_image(orbit))) == b:
            return True
    return False


def forced_patterns(a: PermLike, n_max: int) -> set[Pattern]:
    f = plinear_from_pattern(a)
    return {Pattern.of(CyclicPermutation(_orbit_image(o)))
            for _, o in _all_orbits(f, n_max)}


def forced_towers(a: PermLike, product_bound: int) -> set[Tower]:
    """Towers of cycles of period 2..bound of the P-linear map of ``a``."""
    f = plinear_from_pattern(a)
    towers: dict[tuple[int, ...], Tower] = {}
    for _, orbit in _all_orbits(f, product_bound):
        if len(orbit) < 2:
            continue
        image = _orbit_image(orbit)
        if image not in towers:
            towers[image] = tower(image)
    return set(towers.values())


def is_markov_exact(a: PermLike) -> bool:
    """Every basic interval eventually covers the whole hull under iteration."""
    p = as_permutation(a)
    if p.size <= 2:
        raise UndefinedForSmallPeriod("exactness is only defined for period > 2")
    g = covering_graph(plinear_from_pattern(p))
    full = frozenset(range(g.size))
    for j in range(g.size):
        cur = frozenset((j,))
        seen = set()
        while cur != full and cur not in seen:
            seen.add(cur)
            cur = frozenset(k for i in cur for k in g.succ[i])
        if cur != full:
            return False
    return True


def periods(cycles: Sequence[ExactCycle]) -> set[int]:
    return {c.period for c in cycles}


def nbs_periods(cycles: Sequence[ExactCycle]) -> set[int]:
    """Periods of cycles with no block structure; fixed points count as period 1."""
    return {c.period for c in cycles if c.period == 1 or not block_periods(c.permutation)}


def period_set(f: PLinearMap, n_max: int) -> set[int]:
    """Least periods <= n_max that occur, stopping at the first witness of each."""
    vals = f._int_values
    g = covering_graph(f)
    found = {len(_self_orbit(f)[1])} & set(range(1, n_max + 1))
    for m in range(1, n_max + 1):
        if m in found:
            continue
        for walk in _closed_walks(g, range(m, m + 1)):
            sol = _solve_walk(vals, walk)
            if sol is not None and len(sol[1]) == m:
                found.add(m)
                break
    return found
