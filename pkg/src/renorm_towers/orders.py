"""Sharkovsky order, the nbs order and its lexicographic extension to towers."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cmp_to_key, lru_cache
from math import lcm, prod
from typing import Iterable, Optional, Union

from renorm_towers.permutations import Tower

_BIG = float("inf")


def sharkovsky_key(m: int) -> tuple:
    if m < 1:
        raise ValueError(f"periods are positive, got {m}")
    twos = 0
    while m % 2 == 0:
        m //= 2
        twos += 1
    if m > 1:
        return (0, twos, m)
    return (1, -twos, 0)


def sharkovsky_ge(m: int, n: int) -> bool:
    """``m`` equals ``n`` or precedes it in 3, 5, 7, ..., 6, 10, ..., 4, 2, 1."""
    return m == n or sharkovsky_key(m) < sharkovsky_key(n)


def nbs_key(m: int) -> tuple:
    """Smaller key means larger in the nbs order 4, 6, 3, 8, 10, 5, ..., 2, 1."""
    if m < 1:
        raise ValueError(f"nbs order is on positive integers, got {m}")
    if m == 1:
        return (_BIG, 1)
    if m == 2:
        return (_BIG, 0)
    if m % 4 == 0:
        return (m // 4, 0)
    if m % 4 == 2:
        return ((m - 2) // 4, 1)
    return ((m - 1) // 2, 2)


def nbs_gg(m: int, n: int) -> bool:
    """Strict nbs order: ``m >> n``."""
    return nbs_key(m) < nbs_key(n)


@dataclass(frozen=True)
class InfiniteTower:
    """An infinite tower held as a finite prefix plus a tail rule.

    ``periodic=None`` is the tail of 1s, i.e. the canonical extension of the
    finite tower ``prefix``. Otherwise the block ``periodic`` repeats forever.
    """

    prefix: tuple[int, ...] = ()
    periodic: Optional[tuple[int, ...]] = None

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(int(v) for v in self.prefix))
        if self.periodic is not None:
            object.__setattr__(self, "periodic", tuple(int(v) for v in self.periodic))
            if not self.periodic:
                raise ValueError("periodic tail block must be nonempty")
        for v in self.prefix + (self.periodic or ()):
            if v < 2:
                raise ValueError(f"tower entries must be >= 2, got {v}")

    @classmethod
    def canonical(cls, t: Iterable[int]) -> "InfiniteTower":
        return cls(tuple(t), None)

    @property
    def is_finite(self) -> bool:
        return self.periodic is None

    def entry(self, n: int) -> int:
        """1-based entry of the infinite string."""
        if n <= len(self.prefix):
            return self.prefix[n - 1]
        if self.periodic is None:
            return 1
        return self.periodic[(n - len(self.prefix) - 1) % len(self.periodic)]

    def head(self, length: int) -> Tower:
        """First ``length`` entries, stopping early at the tail of 1s."""
        out = []
        for i in range(1, length + 1):
            v = self.entry(i)
            if v == 1:
                break
            out.append(v)
        return tuple(out)

    def to_json(self) -> dict:
        tail = "ones" if self.periodic is None else {"periodic": list(self.periodic)}
        return {"prefix": list(self.prefix), "tail": tail}

    @classmethod
    def from_json(cls, obj: dict) -> "InfiniteTower":
        tail = obj.get("tail", "ones")
        if tail == "ones":
            return cls(tuple(obj["prefix"]))
        if isinstance(tail, dict) and "periodic" in tail:
            return cls(tuple(obj["prefix"]), tuple(tail["periodic"]))
        raise ValueError(f"unknown tail {tail!r}")

    def __str__(self) -> str:
        body = ",".join(map(str, self.prefix))
        if self.periodic is None:
            return f"({body})'"
        rep = ",".join(map(str, self.periodic))
        return f"({body}{',' if body else ''}[{rep}]...)"


TowerLike = Union[InfiniteTower, Iterable[int]]


def _as_infinite(t: TowerLike) -> InfiniteTower:
    if isinstance(t, InfiniteTower):
        return t
    return InfiniteTower.canonical(t)


def _compare(a: InfiniteTower, b: InfiniteTower) -> int:
    """+1 if a >> b, -1 if b >> a, 0 if equal."""
    horizon = max(len(a.prefix), len(b.prefix)) + lcm(len(a.periodic or (1,)),
                                                      len(b.periodic or (1,)))
    for i in range(1, horizon + 1):
        x, y = a.entry(i), b.entry(i)
        if x != y:
            return 1 if nbs_gg(x, y) else -1
    return 0


def tower_gg(a: TowerLike, b: TowerLike) -> bool:
    """Lexicographic extension of the nbs order to (finite or infinite) towers."""
    return _compare(_as_infinite(a), _as_infinite(b)) > 0


def tower_cmp(a: TowerLike, b: TowerLike) -> int:
    return _compare(_as_infinite(a), _as_infinite(b))


def n_set(p: int, bound: int) -> set[int]:
    return {s for s in range(1, bound + 1) if s == p or nbs_gg(p, s)}


@lru_cache(maxsize=None)
def towers_with_product(n: int) -> tuple[Tower, ...]:
    """All ordered factorizations of n into factors >= 2."""
    if n == 1:
        return ((),)
    out = []
    for d in range(2, n + 1):
        if n % d == 0:
            out.extend((d,) + rest for rest in towers_with_product(n // d))
    return tuple(out)


def towers_up_to(bound: int) -> list[Tower]:
    """Every nonempty tower with product <= bound, in the canonical output order."""
    return _sorted_towers(t for n in range(2, bound + 1) for t in towers_with_product(n))


def _sorted_towers(towers: Iterable[Tower]) -> list[Tower]:
    by_gg = cmp_to_key(lambda a, b: -tower_cmp(a, b))
    return sorted(towers, key=lambda t: (prod(t), by_gg(t)))


def tow_set(k: TowerLike, product_bound: int) -> list[Tower]:
    """Finite towers below ``k`` with product <= bound, plus k's base if finite.

    Sorted by product, then from the nbs-largest down.
    """
    k = _as_infinite(k)
    out = [t for t in towers_up_to(product_bound) if tower_gg(k, t)]
    if k.is_finite and k.prefix and prod(k.prefix) <= product_bound:
        out.append(k.prefix)
    return _sorted_towers(set(out))


class InconsistentTail(ValueError):
    """The set is not a >>-tail within its product bound."""


def tail_signature(s: Iterable[Tower], product_bound: Optional[int] = None) -> InfiniteTower:
    """Greedy infinite tower whose Tow-set (within the bound) is ``s``.

    Position by position, take the nbs-largest entry that still begins some
    member of ``s``; the first position with no continuation starts the tail
    of 1s. The bound defaults to the largest product in ``s``.
    """
    towers = {tuple(t) for t in s}
    if not towers:
        raise InconsistentTail("empty set has no tail signature")
    if () in towers:
        raise InconsistentTail("the fixed-point tower is not a member of any tail")
    bound = product_bound or max(prod(t) for t in towers)
    prefix: list[int] = []
    while True:
        depth = len(prefix)
        nxt = [t[depth] for t in towers if len(t) > depth and list(t[:depth]) == prefix]
        if not nxt:
            break
        prefix.append(min(nxt, key=nbs_key))
    sig = InfiniteTower.canonical(prefix)
    if set(tow_set(sig, bound)) != towers:
        raise InconsistentTail(
            f"set is not a >>-tail within product {bound}; greedy signature {sig}")
    return sig


def is_gg_tail(s: Iterable[Tower], product_bound: int) -> bool:
    """Downward closure under tower_gg among towers with product <= bound."""
    towers = {tuple(t) for t in s}
    universe = towers_up_to(product_bound)
    return all(u in towers for t in towers for u in universe if tower_gg(t, u))
