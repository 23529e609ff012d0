"""Command-line front end.

Exit codes: 0 success, 1 a verification check failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from renorm_towers import harness
from renorm_towers.kneading import (
    InadmissibleKneading,
    KneadingSequence,
    NotUnimodal,
    TruncatedTent,
    a_min,
    alpha,
    kneading,
    kneading_parity,
    kneading_to_pattern,
    realization_level,
    star,
    truncated_cycles,
)
from renorm_towers.orders import _sorted_towers, tow_set, tower_cmp
from renorm_towers.permutations import (
    CyclicPermutation,
    InvalidPeriod,
    InvalidPermutation,
    Pattern,
    block_periods,
    first_return,
    quotient,
    stefan,
    tower,
)
from renorm_towers.plinear import (
    ExactCycle,
    cycles_up_to,
    format_rational,
    plinear_from_pattern,
)

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

DEFAULT_LIMITS = {"forces_max_period": 10, "realize_max_period": 16}


class UsageError(Exception):
    pass


def fmt_tower(t: Sequence[int]) -> str:
    return "(" + ",".join(map(str, t)) + ")"


def parse_tower(text: str) -> tuple[int, ...]:
    try:
        entries = tuple(int(t) for t in text.replace(" ", "").strip("()").split(",") if t)
    except ValueError:
        raise UsageError(f"invalid tower {text!r}: entries must be integers") from None
    if not entries:
        raise UsageError("a tower needs at least one entry")
    for pos, v in enumerate(entries, start=1):
        if v < 2:
            raise UsageError(f"invalid tower {text!r}: entry {pos} is {v}, entries must be >= 2")
    return entries


def load_config(path: Optional[str]) -> dict:
    if not path:
        return {}
    try:
        with open(path, "rb") as fh:
            return tomllib.load(fh)
    except (OSError, tomllib.TOMLDecodeError) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None


def _limits(cfg: dict) -> dict:
    out = dict(DEFAULT_LIMITS)
    out.update(cfg.get("limits", {}))
    return out


def _emit(args, payload, text: str) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def cmd_tower(args, cfg) -> int:
    p = CyclicPermutation.parse(args.permutation)
    bps = block_periods(p)
    levels = []
    for k in bps:
        levels.append({
            "block_period": k,
            "quotient": list(quotient(p, k).image),
            "first_return": list(first_return(p, k, 1).image),
        })
    lines = [f"tower: {fmt_tower(tower(p))}",
             f"block periods: [{', '.join(map(str, bps))}]"]
    for lev in levels:
        lines.append(f"  period {lev['block_period']}: quotient "
                     f"{','.join(map(str, lev['quotient']))}; first return "
                     f"{','.join(map(str, lev['first_return']))}")
    _emit(args, {"permutation": list(p.image), "tower": list(tower(p)),
                 "block_periods": bps, "levels": levels}, "\n".join(lines))
    return 0


def cmd_compare(args, cfg) -> int:
    a, b = parse_tower(args.tower_a), parse_tower(args.tower_b)
    rel = {1: ">>", -1: "<<", 0: "=="}[tower_cmp(a, b)]
    _emit(args, {"a": list(a), "b": list(b), "relation": rel}, rel)
    return 0


def cmd_forces(args, cfg) -> int:
    p = CyclicPermutation.parse(args.permutation)
    n_max = args.max_period or cfg.get("max_period", 8)
    limit = _limits(cfg)["forces_max_period"]
    if n_max > limit:
        raise UsageError(f"--max-period {n_max} exceeds the limit {limit}; loop counts grow "
                         f"exponentially, raise limits.forces_max_period in a config file "
                         f"if you really want this")
    if p.size < 2:
        raise UsageError("the P-linear map needs period >= 2")
    f = plinear_from_pattern(p)
    cycles = cycles_up_to(f, n_max)
    if args.out:
        from renorm_towers.plotting import plot_map_with_cycles
        plot_map_with_cycles(f, cycles, Path(args.out), title=f"P-linear map of {p}")
    if args.towers:
        towers = _sorted_towers({c.tower for c in cycles if c.period >= 2})
        _emit(args, [list(t) for t in towers], "\n".join(fmt_tower(t) for t in towers))
        return 0
    rows = ["period  tower         pattern              points"]
    for c in cycles:
        rows.append(f"{c.period:<7} {fmt_tower(c.tower):<13} {str(c.pattern):<20} "
                    f"{' '.join(format_rational(x) for x in c.points)}")
    _emit(args, [c.to_json() | {"pattern": list(c.pattern.rep.image)} for c in cycles],
          "\n".join(rows))
    return 0


def cmd_realize(args, cfg) -> int:
    m = parse_tower(args.tower)
    n_max = args.max_period or cfg.get("product_bound", 8)
    limit = _limits(cfg)["realize_max_period"]
    if n_max > limit:
        raise UsageError(f"--max-period {n_max} exceeds the limit {limit}")
    a = realization_level(m)
    cycles = truncated_cycles(TruncatedTent(a), n_max)
    towers = _sorted_towers({c.tower for c in cycles if c.period >= 2})
    expected = tow_set(m, n_max)
    if args.out:
        from renorm_towers.plotting import plot_map_with_cycles
        plot_map_with_cycles(TruncatedTent(a), cycles, Path(args.out),
                             title=f"tent map truncated at {format_rational(a)}")
    payload = {"tower": list(m), "a": format_rational(a),
               "pattern": list(a_min(m).rep.image),
               "towers": [list(t) for t in towers],
               "matches_tow_set": set(towers) == set(expected)}
    text = "\n".join([f"a = {format_rational(a)}",
                      "towers: {" + ", ".join(fmt_tower(t) for t in towers) + "}",
                      f"matches Tow: {'yes' if payload['matches_tow_set'] else 'no'}"])
    _emit(args, payload, text)
    return 0


def cmd_draw(args, cfg) -> int:
    from renorm_towers.plotting import draw_cycle, draw_permutation

    out = Path(args.out)
    if not out.parent.exists():
        raise UsageError(f"cannot write {out}: directory {out.parent} does not exist")
    if args.cycle:
        try:
            cyc = ExactCycle.from_json(json.loads(Path(args.cycle).read_text()))
        except (OSError, ValueError, KeyError) as exc:
            raise UsageError(f"cannot read cycle {args.cycle}: {exc}") from None
        draw_cycle(cyc.points, cyc.successor, out)
    elif args.permutation:
        p = CyclicPermutation.parse(args.permutation)
        draw_permutation(p.image, out)
    else:
        raise UsageError("draw needs a permutation or --cycle FILE")
    _emit(args, {"out": str(out)}, f"wrote {out}")
    return 0


def cmd_verify(args, cfg) -> int:
    bounds = {k: v for k, v in cfg.items() if k in harness.DEFAULTS}
    if args.max_period:
        bounds["max_period"] = args.max_period
    try:
        reports = harness.run_suite(args.suite, bounds)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    lines = [r.to_line(timing=args.timing) for r in reports]
    for line in lines:
        print(line)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "report.jsonl").write_text("\n".join(lines) + "\n")
        from renorm_towers.plotting import _RC, _save
        import matplotlib.pyplot as plt
        with plt.rc_context(_RC | {"axes.spines.left": True}):
            fig, ax = plt.subplots(figsize=(6, 0.3 * len(reports) + 1))
            names = [f"{r.name} {r.params.get('period', '')}".strip() for r in reports]
            ax.barh(names, [r.checked for r in reports],
                    color=["tab:green" if r.passed else "tab:red" for r in reports])
            ax.set_xscale("log")
            ax.set_xlabel("cases checked")
            ax.invert_yaxis()
            _save(fig, out / "report.svg")
    return 0 if all(r.passed for r in reports) else 1


def cmd_stefan(args, cfg) -> int:
    p = stefan(args.period)
    _emit(args, list(p.image), str(p))
    return 0


def _perm_or_kneading(text: str):
    t = text.strip()
    if t and set(t.upper()) <= set("LR"):
        return KneadingSequence(t)
    return Pattern.of(CyclicPermutation.parse(t))


def cmd_knead(args, cfg) -> int:
    x = _perm_or_kneading(args.input)
    if isinstance(x, KneadingSequence):
        a = kneading_to_pattern(x)
        _emit(args, {"kneading": str(x), "pattern": list(a.rep.image),
                     "tower": list(a.tower)},
              f"pattern: {a}\ntower: {fmt_tower(a.tower)}")
    else:
        s = kneading(x)
        _emit(args, {"kneading": str(s), "parity": kneading_parity(s)},
              f"{s} ({kneading_parity(s)})")
    return 0


def cmd_star(args, cfg) -> int:
    s, v = KneadingSequence(args.left), KneadingSequence(args.right)
    prod = star(s, v)
    a = kneading_to_pattern(prod)
    _emit(args, {"kneading": str(prod), "pattern": list(a.rep.image), "tower": list(a.tower)},
          f"{prod}\npattern: {a}\ntower: {fmt_tower(a.tower)}")
    return 0


def cmd_alpha(args, cfg) -> int:
    if args.tower:
        m = parse_tower(args.input)
        a = a_min(m)
        value = alpha(a)
    else:
        x = _perm_or_kneading(args.input)
        a = kneading_to_pattern(x) if isinstance(x, KneadingSequence) else x
        value = alpha(a)
    _emit(args, {"pattern": list(a.rep.image), "alpha": format_rational(value)},
          format_rational(value))
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--config", help="TOML file with enumeration bounds")

    parser = argparse.ArgumentParser(
        prog="renorm-towers",
        description="Renormalization towers of cyclic patterns and their forcing.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tower", parents=[common], help="tower and block structures")
    p.add_argument("permutation", help="comma-separated images, e.g. 3,5,4,2,1")
    p.set_defaults(func=cmd_tower)

    p = sub.add_parser("compare", parents=[common], help="compare two towers under >>")
    p.add_argument("tower_a")
    p.add_argument("tower_b")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("forces", parents=[common], help="cycles of the P-linear map")
    p.add_argument("permutation")
    p.add_argument("--max-period", type=int)
    p.add_argument("--towers", action="store_true", help="list towers only")
    p.add_argument("--out", help="also plot the map and its cycles")
    p.set_defaults(func=cmd_forces)

    p = sub.add_parser("realize", parents=[common], help="truncated tent map for a tower")
    p.add_argument("tower")
    p.add_argument("--max-period", type=int)
    p.add_argument("--out", help="also plot the truncated tent map")
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("draw", parents=[common], help="arc diagram of a cycle")
    p.add_argument("permutation", nargs="?")
    p.add_argument("--cycle", help="ExactCycle JSON file instead of a permutation")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_draw)

    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("--suite", default="all")
    p.add_argument("--max-period", type=int)
    p.add_argument("--timing", action="store_true", help="include wall-clock seconds")
    p.add_argument("--out", help="directory for report.jsonl and report.svg")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("stefan", parents=[common], help="Stefan permutation")
    p.add_argument("period", type=int)
    p.set_defaults(func=cmd_stefan)

    p = sub.add_parser("knead", parents=[common],
                       help="kneading of a permutation, or the pattern of a kneading")
    p.add_argument("input")
    p.set_defaults(func=cmd_knead)

    p = sub.add_parser("star", parents=[common], help="star product of kneading sequences")
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(func=cmd_star)

    p = sub.add_parser("alpha", parents=[common], help="exact alpha of a unimodal pattern")
    p.add_argument("input", help="permutation, kneading sequence, or tower with --tower")
    p.add_argument("--tower", action="store_true", help="alpha of the minimal pattern A_M")
    p.set_defaults(func=cmd_alpha)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args.config)
        return args.func(args, cfg)
    except (UsageError, InvalidPermutation, InvalidPeriod, InadmissibleKneading,
            NotUnimodal, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
