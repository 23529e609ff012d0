"""Cyclic permutations, patterns, block structures and renormalization towers.

Positions are 1-based throughout: ``image[i - 1]`` is the image of ``i``.
A tower is a plain tuple of integers >= 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from itertools import permutations
from typing import Iterator, Sequence, Union

Tower = tuple[int, ...]


class InvalidPermutation(ValueError):
    """Input is not a bijection of {1..N} forming a single cycle."""


class InvalidBlockPeriod(ValueError):
    pass


class InvalidPeriod(ValueError):
    pass


@dataclass(frozen=True)
class CyclicPermutation:
    image: tuple[int, ...]

    def __post_init__(self):
        image = tuple(int(v) for v in self.image)
        object.__setattr__(self, "image", image)
        n = len(image)
        if n == 0:
            raise InvalidPermutation("empty permutation")
        seen = set()
        for pos, v in enumerate(image, start=1):
            if not 1 <= v <= n:
                raise InvalidPermutation(f"position {pos}: value {v} outside 1..{n}")
            if v in seen:
                raise InvalidPermutation(f"position {pos}: value {v} repeated")
            seen.add(v)
        length, x = 1, image[0]
        while x != 1:
            x = image[x - 1]
            length += 1
        if length != n:
            raise InvalidPermutation(
                f"not a single cycle: orbit of 1 has length {length}, expected {n}")

    @classmethod
    def parse(cls, text: str) -> "CyclicPermutation":
        """Parse comma-separated 1-based images, e.g. ``"3,5,4,2,1"``."""
        parts = [t.strip() for t in text.replace(" ", ",").split(",") if t.strip()]
        values = []
        for pos, t in enumerate(parts, start=1):
            try:
                values.append(int(t))
            except ValueError:
                raise InvalidPermutation(f"position {pos}: {t!r} is not an integer") from None
        return cls(tuple(values))

    @property
    def size(self) -> int:
        return len(self.image)

    def __call__(self, i: int) -> int:
        return self.image[i - 1]

    def __len__(self) -> int:
        return len(self.image)

    def __str__(self) -> str:
        return ",".join(map(str, self.image))

    def flip(self) -> "CyclicPermutation":
        n = self.size
        return CyclicPermutation(tuple(n + 1 - self.image[n - i] for i in range(1, n + 1)))

    def power(self, k: int) -> tuple[int, ...]:
        """Image sequence of the k-th iterate (not cyclic in general)."""
        out = list(range(1, self.size + 1))
        for _ in range(k):
            out = [self.image[x - 1] for x in out]
        return tuple(out)

    def orbit(self, start: int = 1) -> list[int]:
        out = [start]
        x = self.image[start - 1]
        while x != start:
            out.append(x)
            x = self.image[x - 1]
        return out


@dataclass(frozen=True)
class Pattern:
    """A cyclic permutation up to flip, held by its lexicographically smaller form."""

    rep: CyclicPermutation

    def __post_init__(self):
        other = self.rep.flip()
        if other.image < self.rep.image:
            object.__setattr__(self, "rep", other)

    @classmethod
    def of(cls, p: PermLike) -> "Pattern":
        if isinstance(p, Pattern):
            return p
        if not isinstance(p, CyclicPermutation):
            p = CyclicPermutation(tuple(p))
        return cls(p)

    @property
    def period(self) -> int:
        return self.rep.size

    def __str__(self) -> str:
        return str(self.rep)

    @cached_property
    def tower(self) -> Tower:
        return tower(self.rep)


PermLike = Union[CyclicPermutation, Pattern, Sequence[int]]


def as_permutation(p: PermLike) -> CyclicPermutation:
    if isinstance(p, CyclicPermutation):
        return p
    if isinstance(p, Pattern):
        return p.rep
    return CyclicPermutation(tuple(p))


def all_cyclic(n: int) -> Iterator[CyclicPermutation]:
    """Every cyclic permutation of {1..n}, (n-1)! of them, in a fixed order."""
    if n == 1:
        yield CyclicPermutation((1,))
        return
    for rest in permutations(range(2, n + 1)):
        cycle = (1,) + rest
        image = [0] * n
        for a, b in zip(cycle, cycle[1:] + (1,)):
            image[a - 1] = b
        yield CyclicPermutation(tuple(image))


def all_patterns(n: int) -> list[Pattern]:
    """Distinct patterns of period n, sorted by representative."""
    return sorted({Pattern.of(p) for p in all_cyclic(n)}, key=lambda a: a.rep.image)


def _block_ok(image: Sequence[int], size: int) -> bool:
    n = len(image)
    for start in range(0, n, size):
        target = (image[start] - 1) // size
        for i in range(start + 1, start + size):
            if (image[i] - 1) // size != target:
                return False
    return True


def block_periods(p: PermLike) -> list[int]:
    """Periods k, 1 < k < N, of all block structures, ascending.

    A cyclic permutation permutes its blocks cyclically, so the blocks all
    have the same size and only the N/k-size consecutive partitions need
    checking.
    """
    image = as_permutation(p).image
    n = len(image)
    return [k for k in range(2, n) if n % k == 0 and _block_ok(image, n // k)]


def tower(p: PermLike) -> Tower:
    """Renormalization tower; ``()`` for the fixed point."""
    n = as_permutation(p).size
    if n == 1:
        return ()
    levels = [1] + block_periods(p) + [n]
    return tuple(b // a for a, b in zip(levels, levels[1:]))


def _check_block_period(p: CyclicPermutation, k: int) -> int:
    n = p.size
    if not (1 < k < n and n % k == 0 and _block_ok(p.image, n // k)):
        raise InvalidBlockPeriod(f"{k} is not a block period of {p}")
    return n // k


def quotient(p: PermLike, k: int) -> CyclicPermutation:
    """Cyclic permutation induced on the k blocks, ordered left to right."""
    p = as_permutation(p)
    size = _check_block_period(p, k)
    return CyclicPermutation(tuple((p.image[j * size] - 1) // size + 1 for j in range(k)))


def first_return(p: PermLike, k: int, i: int) -> CyclicPermutation:
    """The k-th iterate restricted to block i (1-based), relabelled by position."""
    p = as_permutation(p)
    size = _check_block_period(p, k)
    if not 1 <= i <= k:
        raise InvalidBlockPeriod(f"block index {i} outside 1..{k}")
    pk = p.power(k)
    lo = (i - 1) * size
    return CyclicPermutation(tuple(pk[lo + j] - lo for j in range(size)))


def stefan(period: int) -> CyclicPermutation:
    if period < 3 or period % 2 == 0:
        raise InvalidPeriod(f"Stefan cycles have odd period >= 3, got {period}")
    n = (period - 1) // 2
    image = [n + 1]
    image += [2 * n + 3 - i for i in range(2, n + 2)]
    image += [2 * n + 2 - i for i in range(n + 2, 2 * n + 2)]
    return CyclicPermutation(tuple(image))


def is_stefan(a: PermLike) -> bool:
    a = Pattern.of(a)
    n = a.period
    return n >= 3 and n % 2 == 1 and a == Pattern.of(stefan(n))


def is_doubling(a: PermLike) -> bool:
    p = as_permutation(a)
    n = p.size
    return n % 2 == 0 and n >= 4 and (n // 2) in block_periods(p)


def has_division(a: PermLike) -> bool:
    """Tower starts with 2; the period-2 cycle counts as having a division."""
    t = tower(a)
    return bool(t) and t[0] == 2


class ExtensionClass(str, Enum):
    MONOTONE = "monotone_extension"
    UNIMODAL = "unimodal_extension"
    GENERAL = "general_extension"
    NOT_EXTENSION = "not_extension"


def turning_points(values: Sequence[int]) -> int:
    """Number of direction changes in a sequence of distinct values."""
    changes = 0
    for a, b, c in zip(values, values[1:], values[2:]):
        if (b - a) * (c - b) < 0:
            changes += 1
    return changes


def extension_class(a: PermLike, k: int) -> ExtensionClass:
    p = as_permutation(a)
    size = _check_block_period(p, k)
    bad = []
    for start in range(0, p.size, size):
        changes = turning_points(p.image[start:start + size])
        if changes:
            bad.append(changes)
    if not bad:
        return ExtensionClass.MONOTONE
    if len(bad) > 1:
        return ExtensionClass.NOT_EXTENSION
    return ExtensionClass.UNIMODAL if bad[0] == 1 else ExtensionClass.GENERAL
