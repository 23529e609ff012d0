"""Kneading sequences, star products and exact tent-map cycles.

The full tent map sends x to 2x on [0, 1/2] and to 2 - 2x on [1/2, 1].
A periodic itinerary over {L, R} of length n pins down a unique candidate
point, the fixed point of an affine map of slope +-2**n; all orbit points
share the denominator 2**n -+ 1 and are carried as integer numerators.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterable, Optional

from renorm_towers.orders import InfiniteTower
from renorm_towers.permutations import (
    CyclicPermutation,
    Pattern,
    PermLike,
    Tower,
    as_permutation,
    block_periods,
    turning_points,
)
from renorm_towers.plinear import ExactCycle


class NotUnimodal(ValueError):
    pass


class InadmissibleKneading(ValueError):
    pass


class NotRealizable(RuntimeError):
    """A unimodal pattern with no tent cycle; indicates an internal inconsistency."""


_CHECK = {"L": "R", "R": "L"}


@dataclass(frozen=True)
class KneadingSequence:
    symbols: str

    def __post_init__(self):
        sym = self.symbols.strip().upper()
        if any(c not in "LR" for c in sym):
            raise InadmissibleKneading(f"kneading symbols must be L or R, got {self.symbols!r}")
        object.__setattr__(self, "symbols", sym)

    @property
    def period(self) -> int:
        return len(self.symbols) + 1

    @property
    def parity(self) -> str:
        return kneading_parity(self)

    def __str__(self) -> str:
        return self.symbols

    def __len__(self) -> int:
        return len(self.symbols)


def _ks(s) -> KneadingSequence:
    return s if isinstance(s, KneadingSequence) else KneadingSequence(str(s))


def is_unimodal(a: PermLike) -> bool:
    p = as_permutation(a)
    return p.size <= 2 or turning_points(p.image) <= 1


def _max_oriented(a: PermLike) -> CyclicPermutation:
    """The form of the pattern with an interior maximum, i.e. sigma(N) = 1."""
    p = as_permutation(a)
    if p.image[-1] != 1:
        p = p.flip()
    return p


def kneading(a: PermLike) -> KneadingSequence:
    if not is_unimodal(a):
        raise NotUnimodal(f"{as_permutation(a)} is not unimodal")
    sigma = _max_oriented(a).image
    n = len(sigma)
    if n < 2:
        raise InadmissibleKneading("kneading sequences need period >= 2")
    k = sigma.index(n) + 1
    out, x = [], k
    for _ in range(n - 1):
        x = sigma[x - 1]
        out.append("L" if x < k else "R")
    return KneadingSequence("".join(out))


def kneading_parity(s) -> str:
    return "even" if str(s).count("R") % 2 == 0 else "odd"


def star(s, v) -> KneadingSequence:
    """Star product S*V: S V1 S V2 ... S V(m-1) S, with V flipped when S is odd."""
    s, v = _ks(s), _ks(v)
    sym = v.symbols
    if kneading_parity(s) == "odd":
        sym = "".join(_CHECK[c] for c in sym)
    body = s.symbols
    return KneadingSequence(body + "".join(c + body for c in sym))


def _solve_itinerary(word: str) -> Optional[tuple[int, list[int]]]:
    """Tent orbit with the given periodic itinerary, as (denominator, numerators).

    Returns None when the candidate point does not follow the itinerary or
    has a smaller period than ``len(word)``.
    """
    slope, offset = 1, 0
    for c in word:
        if c == "L":
            slope, offset = 2 * slope, 2 * offset
        else:
            slope, offset = -2 * slope, 2 - 2 * offset
    num, den = offset, 1 - slope
    if den < 0:
        num, den = -num, -den
    x = num
    orbit = []
    for c in word:
        if c == "L":
            if 2 * x > den:
                return None
            orbit.append(x)
            x = 2 * x
        else:
            if 2 * x < den:
                return None
            orbit.append(x)
            x = 2 * den - 2 * x
    if x != num or x in orbit[1:]:
        return None
    return den, orbit


def _cycle(den: int, orbit: Iterable[int]) -> ExactCycle:
    return ExactCycle.from_orbit([Fraction(x, den) for x in orbit])


@lru_cache(maxsize=None)
def _tent_cycles(n: int) -> tuple[ExactCycle, ...]:
    seen = set()
    out = []
    for letters in product("LR", repeat=n):
        sol = _solve_itinerary("".join(letters))
        if sol is None:
            continue
        den, orbit = sol
        if min(orbit) == 0:
            continue
        key = Fraction(min(orbit), den)
        if key not in seen:
            seen.add(key)
            out.append(_cycle(den, orbit))
    return tuple(sorted(out, key=lambda c: c.points[-1]))


def tent_cycles(n: int) -> list[ExactCycle]:
    """Cycles of exact period n of the full tent map, by increasing rightmost point.

    The fixed point 0 is not counted as a cycle.
    """
    if n < 1:
        raise ValueError("period must be positive")
    return list(_tent_cycles(n))


def alpha_of_cycle(p: ExactCycle) -> Fraction:
    return max(p.points)


def _cycles_with_kneading(s: KneadingSequence) -> list[ExactCycle]:
    """Tent cycles whose pattern has kneading ``s``.

    The orbit point next to the turning point has itinerary c + s for one of
    the two symbols c, so at most two candidates need solving.
    """
    n = s.period
    out = []
    for c in "LR":
        sol = _solve_itinerary(c + s.symbols)
        if sol is None:
            continue
        cyc = _cycle(*sol)
        if cyc.period == n and kneading(cyc.permutation) == s:
            out.append(cyc)
    return sorted(out, key=alpha_of_cycle)


def kneading_to_pattern(s) -> Pattern:
    s = _ks(s)
    if not s.symbols:
        raise InadmissibleKneading("empty kneading sequence")
    cycles = _cycles_with_kneading(s)
    if not cycles:
        raise InadmissibleKneading(f"no unimodal pattern has kneading {s}")
    return cycles[0].pattern


def tent_realizations(a: PermLike) -> list[ExactCycle]:
    """The one or two tent cycles of a unimodal pattern (period >= 2)."""
    a = Pattern.of(a)
    return _cycles_with_kneading(kneading(a))


def alpha(a: PermLike) -> Fraction:
    """Smallest rightmost point over tent cycles with pattern ``a``."""
    a = Pattern.of(a)
    if a.period == 1:
        return Fraction(2, 3)
    cycles = tent_realizations(a)
    if not cycles:
        raise NotRealizable(f"no tent cycle has pattern {a}")
    return alpha_of_cycle(cycles[0])


@lru_cache(maxsize=None)
def b_min(n: int) -> Pattern:
    """Unimodal pattern of period n with no block structure and least alpha."""
    if n < 2:
        raise ValueError("b_min needs n >= 2")
    if n == 2:
        return Pattern.of((2, 1))
    for cyc in _tent_cycles(n):
        if not block_periods(cyc.permutation):
            return cyc.pattern
    raise NotRealizable(f"no period-{n} tent cycle without block structure")


@lru_cache(maxsize=None)
def _a_min(m: Tower) -> Pattern:
    seq = kneading(b_min(m[0]))
    for entry in m[1:]:
        seq = star(seq, kneading(b_min(entry)))
    return kneading_to_pattern(seq)


def a_min(m: Iterable[int]) -> Pattern:
    """Star product of the least-alpha no-block-structure patterns, B_m1 * ... * B_ms."""
    m = tuple(int(v) for v in m)
    if not m or min(m) < 2:
        raise ValueError("a_min needs a nonempty tower with entries >= 2")
    return _a_min(m)


@dataclass(frozen=True)
class TruncatedTent:
    """x -> min(a, T(x)) for the full tent map T."""

    a: Fraction

    def __post_init__(self):
        a = Fraction(self.a)
        if not 0 < a <= 1:
            raise ValueError(f"truncation level must be in (0, 1], got {a}")
        object.__setattr__(self, "a", a)

    def __call__(self, x) -> Fraction:
        x = Fraction(x)
        t = 2 * x if 2 * x <= 1 else 2 - 2 * x
        return min(self.a, t)

    def plateau_orbit(self) -> Optional[list[Fraction]]:
        """Orbit of ``a`` if it is periodic, in dynamical order."""
        orbit = [self.a]
        index = {self.a: 0}
        x = self(self.a)
        # denominators never grow along the orbit, so it is eventually periodic
        while x not in index:
            index[x] = len(orbit)
            orbit.append(x)
            x = self(x)
        return orbit if index[x] == 0 else None


def truncated_cycles(t: TruncatedTent, n_max: int) -> list[ExactCycle]:
    """Cycles of period <= n_max: tent cycles below the cap plus the orbit of the cap."""
    if not isinstance(t, TruncatedTent):
        t = TruncatedTent(t)
    out = {}
    for n in range(1, n_max + 1):
        for cyc in _tent_cycles(n):
            if alpha_of_cycle(cyc) <= t.a:
                out[cyc.points] = cyc
    orbit = t.plateau_orbit()
    if orbit is not None and len(orbit) <= n_max and min(orbit) > 0:
        cyc = ExactCycle.from_orbit(orbit)
        out[cyc.points] = cyc
    return sorted(out.values(), key=lambda c: (c.period, c.points))


def realization_level(m: Iterable[int]) -> Fraction:
    return alpha(a_min(m))


def realize(m: Iterable[int], n_max: int) -> set[Tower]:
    """Towers of cycles of period 2..n_max of the tent map truncated at alpha(A_m)."""
    a = realization_level(m)
    return {c.tower for c in truncated_cycles(TruncatedTent(a), n_max) if c.period >= 2}


def beta_approx(k: InfiniteTower, depth: int) -> Fraction:
    """alpha(A_K) for the length-``depth`` head of an infinite tower.

    A tower ending in 1s is finite, and its own alpha is returned.
    """
    if k.is_finite:
        return realization_level(k.prefix)
    if depth < 1:
        raise ValueError("depth must be positive")
    return realization_level(k.head(depth))
