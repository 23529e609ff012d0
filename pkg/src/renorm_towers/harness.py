"""Exhaustive desk-scale checks of the tower forcing theorems.

Each check returns a :class:`CheckReport`. Checks iterate over patterns
rather than permutations where the property is invariant under flip (the
P-linear maps of a permutation and its flip are conjugate), and report both
counts.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Iterable, Optional

from renorm_towers.kneading import (
    alpha,
    alpha_of_cycle,
    b_min,
    beta_approx,
    is_unimodal,
    kneading,
    kneading_to_pattern,
    realization_level,
    realize,
    star,
    tent_cycles,
    tent_realizations,
)
from renorm_towers.oracle import branch_cycles
from renorm_towers.orders import (
    InconsistentTail,
    InfiniteTower,
    is_gg_tail,
    nbs_gg,
    tail_signature,
    tow_set,
    tower_gg,
    towers_up_to,
)
from renorm_towers.permutations import (
    ExtensionClass,
    Pattern,
    all_cyclic,
    all_patterns,
    block_periods,
    extension_class,
    first_return,
    has_division,
    is_stefan,
    quotient,
    stefan,
    tower,
)
from renorm_towers.plinear import (
    cycles_up_to,
    forced_towers,
    forces,
    format_rational,
    is_markov_exact,
    plinear_from_pattern,
)

MAX_COUNTEREXAMPLES = 20

DEFAULTS: dict[str, Any] = {
    "max_period": 7,
    "product_bound": 8,
    "exact_max_period": 8,
    "border_max_period": 10,
    "extension_max_period": 8,
    "stefan_periods": [5, 7],
    "realization_towers": [[3], [2], [2, 2], [4], [2, 3]],
    "unimodal_max_period": 6,
    "star_left_max": 4,
    "star_right_max": 3,
    "beta_depth": 6,
    "order_bound": 200,
    "divisor_bound": 100,
    "oracle_max_pattern": 5,
    "oracle_max_cycle": 6,
}


@dataclass
class CheckReport:
    name: str
    params: dict
    counterexamples: list = field(default_factory=list)
    checked: int = 0
    seconds: float = 0.0

    @property
    def verdict(self) -> str:
        return "fail" if self.counterexamples else "pass"

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    def add(self, example) -> None:
        if len(self.counterexamples) < MAX_COUNTEREXAMPLES:
            self.counterexamples.append(example)

    def to_json(self, timing: bool = False) -> dict:
        out = {
            "check": self.name,
            "params": self.params,
            "verdict": self.verdict,
            "checked": self.checked,
            "counterexamples": self.counterexamples,
        }
        if timing:
            out["seconds"] = round(self.seconds, 3)
        return out

    def to_line(self, timing: bool = False) -> str:
        return json.dumps(self.to_json(timing), sort_keys=True)


def _timed(fn: Callable[..., CheckReport]) -> Callable[..., CheckReport]:
    def wrapper(*args, **kwargs):
        start = time.perf_counter()
        report = fn(*args, **kwargs)
        report.seconds = time.perf_counter() - start
        return report
    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def _patterns(lo: int, hi: int) -> Iterable[Pattern]:
    for n in range(lo, hi + 1):
        yield from all_patterns(n)


@_timed
def check_forcing_direction(max_period: int = 7, product_bound: int = 8) -> CheckReport:
    """Every tower below a pattern's own tower occurs among its forced cycles."""
    report = CheckReport("forcing_direction",
                         {"max_period": max_period, "product_bound": product_bound})
    universe = towers_up_to(product_bound)
    for a in _patterns(2, max_period):
        own = a.tower
        have = forced_towers(a, product_bound)
        for m in universe:
            if tower_gg(own, m):
                report.checked += 1
                if m not in have:
                    report.add({"pattern": list(a.rep.image), "tower": list(own),
                                "missing": list(m)})
    return report


@_timed
def check_tail_structure(max_period: int = 7, product_bound: int = 8) -> CheckReport:
    """Forced tower sets are >>-tails equal to Tow of their greedy signature."""
    report = CheckReport("tail_structure",
                         {"max_period": max_period, "product_bound": product_bound})
    for a in _patterns(2, max_period):
        report.checked += 1
        have = forced_towers(a, product_bound)
        bad = {"pattern": list(a.rep.image)}
        if not is_gg_tail(have, product_bound):
            bad["reason"] = "not downward closed"
            report.add(bad)
            continue
        try:
            sig = tail_signature(have, product_bound)
        except InconsistentTail as exc:
            bad["reason"] = str(exc)
            report.add(bad)
            continue
        if set(tow_set(sig, product_bound)) != have:
            bad["reason"] = f"differs from Tow{sig}"
            report.add(bad)
    return report


@_timed
def check_realization(towers: Iterable[Iterable[int]] = ((3,), (2,), (2, 2)),
                      n_max: int = 8) -> CheckReport:
    """Truncated tent maps at alpha(A_M) have exactly the towers Tow(M')."""
    towers = [tuple(t) for t in towers]
    report = CheckReport("realization",
                         {"towers": [list(t) for t in towers], "n_max": n_max})
    for m in towers:
        report.checked += 1
        got = realize(m, n_max)
        want = set(tow_set(m, n_max))
        if got != want:
            report.add({"tower": list(m), "level": format_rational(realization_level(m)),
                        "extra": sorted(map(list, got - want)),
                        "missing": sorted(map(list, want - got))})
    return report


@_timed
def check_stefan_theorem(period: int) -> CheckReport:
    """Each pattern of odd period forces the Stefan pattern; non-Stefan ones also the next lower."""
    report = CheckReport("stefan_theorem", {"period": period})
    own = Pattern.of(stefan(period))
    lower = Pattern.of(stefan(period - 2)) if period >= 5 else None
    cache: dict[Pattern, bool] = {}
    for p in all_cyclic(period):
        report.checked += 1
        a = Pattern.of(p)
        if a not in cache:
            ok = forces(a, own)
            if ok and lower is not None and not is_stefan(a):
                ok = forces(a, lower)
            cache[a] = ok
        if not cache[a]:
            report.add({"permutation": list(p.image)})
    return report


@_timed
def check_exactness(max_period: int = 8) -> CheckReport:
    """Markov exactness of the P-linear map iff no block structure."""
    report = CheckReport("exactness", {"max_period": max_period})
    for n in range(3, max_period + 1):
        for p in all_cyclic(n):
            report.checked += 1
            if is_markov_exact(p) != (not block_periods(p)):
                report.add({"permutation": list(p.image)})
    return report


@_timed
def check_division_border(n_max: int = 10) -> CheckReport:
    """Tent cycles: rightmost point below 5/6 iff the tower starts with 2."""
    report = CheckReport("division_border", {"n_max": n_max})
    border = Fraction(5, 6)
    for n in range(2, n_max + 1):
        for cyc in tent_cycles(n):
            report.checked += 1
            if (alpha_of_cycle(cyc) < border) != has_division(cyc.permutation):
                report.add({"points": [format_rational(x) for x in cyc.points]})
    return report


def _is_stefan_extension(cyc_perm, base: Pattern, n: int, s: int) -> bool:
    if n not in block_periods(cyc_perm):
        return False
    if Pattern.of(quotient(cyc_perm, n)) != base:
        return False
    if extension_class(cyc_perm, n) == ExtensionClass.NOT_EXTENSION:
        return False
    target = Pattern.of(stefan(s))
    return all(Pattern.of(first_return(cyc_perm, n, i)) == target for i in range(1, n + 1))


@_timed
def check_stefan_extension(max_total_period: int = 8) -> CheckReport:
    """Direct block structure over D with m >> s forces an extension of D by Stefan-s."""
    report = CheckReport("stefan_extension", {"max_total_period": max_total_period})
    for a in _patterns(4, max_total_period):
        bps = block_periods(a.rep)
        if not bps:
            continue
        n = bps[-1]
        m = a.period // n
        base = Pattern.of(quotient(a.rep, n))
        targets = [s for s in range(3, max_total_period // n + 1, 2) if nbs_gg(m, s)]
        if not targets:
            continue
        cycles = cycles_up_to(plinear_from_pattern(a), max(n * s for s in targets))
        for s in targets:
            report.checked += 1
            if not any(c.period == n * s and _is_stefan_extension(c.permutation, base, n, s)
                       for c in cycles):
                report.add({"pattern": list(a.rep.image), "base_period": n, "stefan": s})
    return report


@_timed
def check_alpha_rl3(n: int = 4) -> CheckReport:
    """alpha of the RLLL pattern exceeds alpha(B_4)."""
    report = CheckReport("alpha_rl3_vs_b4", {})
    report.checked = 1
    d = alpha(kneading_to_pattern("RLLL"))
    b4 = alpha(b_min(4))
    if not d > b4:
        report.add({"alpha_D": format_rational(d), "alpha_B4": format_rational(b4)})
    return report


def divisor_cases(n: int, p: int) -> list[str]:
    """Which of the divisor cases (a)-(e) hold for p | n."""
    cases = []
    if p == 1:
        cases.append("a")
    if p == 2:
        cases.append("b")
    if n % 4 == 2 and p == (n - 2) // 2 + 1:
        cases.append("c")
    if nbs_gg(p, n):
        cases.append("d")
    if p == n:
        cases.append("e")
    return cases


@_timed
def check_divisor_cases(bound: int = 100) -> CheckReport:
    """Some case holds for every divisor; case (d) never overlaps another."""
    report = CheckReport("divisor_cases", {"bound": bound})
    for n in range(1, bound + 1):
        for p in range(1, n + 1):
            if n % p:
                continue
            report.checked += 1
            cases = divisor_cases(n, p)
            if not cases or ("d" in cases and len(cases) > 1):
                report.add({"n": n, "p": p, "cases": cases})
    return report


@_timed
def check_nbs_order(bound: int = 200) -> CheckReport:
    """nbs order on [1, bound]: trichotomy and transitivity, exhaustively."""
    import numpy as np

    report = CheckReport("nbs_total_order", {"bound": bound})
    rng = range(1, bound + 1)
    gg = np.array([[nbs_gg(m, n) for n in rng] for m in rng], dtype=bool)
    eye = np.eye(bound, dtype=bool)
    report.checked = bound * bound
    count = gg.astype(np.int64) + gg.T.astype(np.int64) + eye.astype(np.int64)
    for m, n in zip(*np.nonzero(count != 1)):
        report.add({"m": int(m) + 1, "n": int(n) + 1, "reason": "trichotomy"})
    two_step = (gg.astype(np.int64) @ gg.astype(np.int64)) > 0
    for m, n in zip(*np.nonzero(two_step & ~gg)):
        report.add({"m": int(m) + 1, "n": int(n) + 1, "reason": "transitivity"})
    return report


@_timed
def check_forcing_alpha(max_period: int = 6) -> CheckReport:
    """For unimodal A, B: A forces B iff alpha(A) >= alpha(B)."""
    report = CheckReport("forcing_alpha", {"max_period": max_period})
    pats = [a for a in _patterns(2, max_period) if is_unimodal(a)]
    alphas = {a: alpha(a) for a in pats}
    for a in pats:
        for b in pats:
            report.checked += 1
            if forces(a, b) != (alphas[a] >= alphas[b]):
                report.add({"A": list(a.rep.image), "B": list(b.rep.image)})
    return report


@_timed
def check_star_laws(left_max: int = 4, right_max: int = 3) -> CheckReport:
    """tower(A*B) = tower(A) + tower(B), and A*B has quotient A and first returns B."""
    report = CheckReport("star_laws", {"left_max": left_max, "right_max": right_max})
    lefts = [a for a in _patterns(2, left_max) if is_unimodal(a)]
    rights = [b for b in _patterns(2, right_max) if is_unimodal(b)]
    for a in lefts:
        for b in rights:
            report.checked += 1
            c = kneading_to_pattern(star(kneading(a), kneading(b)))
            n = a.period
            ok = c.tower == a.tower + b.tower and n in block_periods(c.rep)
            ok = ok and Pattern.of(quotient(c.rep, n)) == a
            ok = ok and all(Pattern.of(first_return(c.rep, n, i)) == b for i in range(1, n + 1))
            if not ok:
                report.add({"A": list(a.rep.image), "B": list(b.rep.image),
                            "product": list(c.rep.image)})
    return report


@_timed
def check_beta_monotone(depth: int = 6) -> CheckReport:
    """alpha(A_K_d) for K = (2, 2, ...) increases with d and stays below 5/6."""
    report = CheckReport("beta_monotone", {"depth": depth})
    k = InfiniteTower((), (2,))
    values = [beta_approx(k, d) for d in range(1, depth + 1)]
    report.checked = len(values)
    for d, (x, y) in enumerate(zip(values, values[1:]), start=1):
        if not x < y:
            report.add({"depth": d, "values": [format_rational(x), format_rational(y)]})
    for d, x in enumerate(values, start=1):
        if not x < Fraction(5, 6):
            report.add({"depth": d, "value": format_rational(x)})
    return report


@_timed
def check_oracle(max_pattern: int = 5, max_cycle: int = 6) -> CheckReport:
    """Loop-based cycle search agrees with the branch subdivision oracle."""
    report = CheckReport("oracle_equivalence",
                         {"max_pattern": max_pattern, "max_cycle": max_cycle})
    for a in _patterns(2, max_pattern):
        f = plinear_from_pattern(a)
        for n in range(1, max_cycle + 1):
            report.checked += 1
            got = [c.points for c in cycles_up_to(f, n)]
            want = [c.points for c in branch_cycles(f, n)]
            if got != want:
                report.add({"pattern": list(a.rep.image), "n": n})
    return report


@_timed
def check_doubling_count(max_period: int = 8) -> CheckReport:
    """Unimodal patterns have one tent cycle if a doubling (or period 2), else two."""
    report = CheckReport("doubling_count", {"max_period": max_period})
    for n in range(2, max_period + 1):
        pats = {c.pattern for c in tent_cycles(n)}
        for a in sorted(pats, key=lambda p: p.rep.image):
            report.checked += 1
            want = 1 if n == 2 or (n // 2) in block_periods(a.rep) else 2
            if len(tent_realizations(a)) != want:
                report.add({"pattern": list(a.rep.image)})
    return report


def _cfg(config: Optional[dict]) -> dict:
    merged = dict(DEFAULTS)
    merged.update(config or {})
    return merged


SUITES: dict[str, Callable[[dict], list[CheckReport]]] = {
    "forcing": lambda c: [check_forcing_direction(c["max_period"], c["product_bound"])],
    "tails": lambda c: [check_tail_structure(c["max_period"], c["product_bound"])],
    "realization": lambda c: [check_realization(c["realization_towers"], c["product_bound"])],
    "stefan": lambda c: [check_stefan_theorem(p) for p in c["stefan_periods"]],
    "exactness": lambda c: [check_exactness(c["exact_max_period"])],
    "border": lambda c: [check_division_border(c["border_max_period"])],
    "extension": lambda c: [check_stefan_extension(c["extension_max_period"])],
    "orders": lambda c: [check_nbs_order(c["order_bound"]),
                         check_divisor_cases(c["divisor_bound"])],
    "kneading": lambda c: [check_forcing_alpha(c["unimodal_max_period"]),
                           check_star_laws(c["star_left_max"], c["star_right_max"]),
                           check_alpha_rl3(),
                           check_beta_monotone(c["beta_depth"]),
                           check_doubling_count(c["max_period"] + 1)],
    "oracle": lambda c: [check_oracle(c["oracle_max_pattern"], c["oracle_max_cycle"])],
}


def run_suite(name: str, config: Optional[dict] = None) -> list[CheckReport]:
    """Run a named suite, or every suite for ``"all"``."""
    cfg = _cfg(config)
    if name == "all":
        return [r for suite in SUITES.values() for r in suite(cfg)]
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from all, {', '.join(SUITES)}")
    return SUITES[name](cfg)
