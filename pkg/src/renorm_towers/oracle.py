"""Brute-force periodic orbits of a P-linear map, independent of covering graphs.

The hull is cut at every preimage of the breakpoints up to depth n - 1;
between consecutive cut points each iterate f, ..., f^n is affine, so the
fixed points of f^n on each piece come from its two endpoint values alone.
Only ``evaluate`` is shared with the loop-based search.
"""

from __future__ import annotations

from fractions import Fraction

from renorm_towers.plinear import ExactCycle, PLinearMap, evaluate


def _preimages(f: PLinearMap, targets: set[Fraction]) -> set[Fraction]:
    bps, vals = f.breakpoints, f.values
    out = set()
    for i in range(len(bps) - 1):
        lo, hi = bps[i], bps[i + 1]
        vlo, vhi = vals[i], vals[i + 1]
        for y in targets:
            if min(vlo, vhi) <= y <= max(vlo, vhi):
                if vlo == vhi:
                    out.update((lo, hi))
                else:
                    out.add(lo + (y - vlo) * (hi - lo) / (vhi - vlo))
    return out


def _iterate(f: PLinearMap, x: Fraction, n: int) -> Fraction:
    for _ in range(n):
        x = evaluate(f, x)
    return x


def _orbit(f: PLinearMap, x: Fraction) -> list[Fraction]:
    orbit = [x]
    y = evaluate(f, x)
    while y != x:
        orbit.append(y)
        y = evaluate(f, y)
    return orbit


def branch_cycles(f: PLinearMap, n_max: int) -> list[ExactCycle]:
    """Periodic orbits of period <= n_max found branch by branch.

    A branch of f^n that is the identity contributes the orbits of its
    midpoint and of its two endpoints.
    """
    cuts = set(f.breakpoints)
    layer = set(f.breakpoints)
    found: dict[frozenset, ExactCycle] = {}
    for n in range(1, n_max + 1):
        pts = sorted(cuts)
        for u, w in zip(pts, pts[1:]):
            fu, fw = _iterate(f, u, n), _iterate(f, w, n)
            slope = (fw - fu) / (w - u)
            candidates = []
            if slope == 1:
                if fu == u:
                    candidates.extend((u, (u + w) / 2, w))
            else:
                # fixed point of the affine branch x -> fu + slope * (x - u)
                x = (fu - slope * u) / (1 - slope)
                if u <= x <= w:
                    candidates.append(x)
            for x in candidates:
                orbit = _orbit(f, x)
                if len(orbit) <= n_max:
                    key = frozenset(orbit)
                    if key not in found:
                        found[key] = ExactCycle.from_orbit(orbit)
        layer = _preimages(f, layer)
        cuts |= layer
    return sorted(found.values(), key=lambda c: (c.period, c.points))
