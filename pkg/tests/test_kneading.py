from fractions import Fraction as F

import pytest

from brute import tent_cycles_by_denominator
from renorm_towers.kneading import (
    InadmissibleKneading,
    KneadingSequence,
    NotUnimodal,
    TruncatedTent,
    a_min,
    alpha,
    alpha_of_cycle,
    b_min,
    beta_approx,
    is_unimodal,
    kneading,
    kneading_parity,
    kneading_to_pattern,
    realize,
    star,
    tent_cycles,
    tent_realizations,
    truncated_cycles,
)
from renorm_towers.orders import InfiniteTower, tow_set
from renorm_towers.permutations import (
    Pattern,
    block_periods,
    first_return,
    is_doubling,
    quotient,
    stefan,
    tower,
)
from renorm_towers.plinear import forced_patterns

STEFAN3 = (2, 3, 1)
PERIOD2 = (2, 1)
STEFAN5 = (3, 5, 4, 2, 1)


def _unimodal_patterns(n):
    return sorted({c.pattern for c in tent_cycles(n)}, key=lambda a: a.rep.image)


def _pts(cycles):
    return {c.points for c in cycles}


def test_is_unimodal():
    assert is_unimodal(STEFAN5)
    assert is_unimodal(PERIOD2)
    assert not is_unimodal((2, 4, 1, 5, 3))


def test_kneading_examples():
    assert str(kneading(STEFAN3)) == "RL"
    assert str(kneading(PERIOD2)) == "R"
    assert str(kneading(STEFAN5)) == "RLRR"
    with pytest.raises(NotUnimodal):
        kneading((2, 4, 1, 5, 3))


def test_kneading_shape():
    for n in range(3, 9):
        for a in _unimodal_patterns(n):
            s = str(kneading(a))
            assert len(s) == n - 1 and s[:2] == "RL"


def test_parity():
    assert kneading_parity("RL") == "odd"
    assert kneading_parity("RLRR") == "odd"
    assert kneading_parity("RLLR") == "even"
    assert KneadingSequence("RLLR").parity == "even"


def test_star_examples():
    assert str(star("RL", "R")) == "RLLRL"
    assert str(star("RL", "RL")) == "RLLRLRRL"
    assert str(star("R", "R")) == "RLR"
    assert str(star("RLLR", "R")) == "RLLRRRLLR"


def test_tent_cycles_examples():
    assert _pts(tent_cycles(1)) == {(F(2, 3),)}
    assert _pts(tent_cycles(2)) == {(F(2, 5), F(4, 5))}
    assert _pts(tent_cycles(3)) == {(F(2, 7), F(4, 7), F(6, 7)), (F(2, 9), F(4, 9), F(8, 9))}


def test_tent_cycles_match_denominator_oracle():
    for n in range(1, 11):
        assert {frozenset(c.points) for c in tent_cycles(n)} == tent_cycles_by_denominator(n)


def test_tent_periodic_point_count():
    # T^n has 2^n fixed points in [0, 1]; all but the origin lie on cycles
    for n in range(1, 13):
        pts = sum(c.period for d in range(1, n + 1) if n % d == 0 for c in tent_cycles(d))
        assert pts == 2 ** n - 1


def test_alpha_examples():
    assert alpha_of_cycle(tent_cycles(2)[0]) == F(4, 5)
    assert alpha(STEFAN3) == F(6, 7)
    assert alpha(PERIOD2) == F(4, 5)
    assert alpha(STEFAN5) == F(26, 31)
    assert sorted(alpha_of_cycle(c) for c in tent_realizations(STEFAN5)) == [F(26, 31), F(28, 33)]


def test_kneading_to_pattern_examples():
    assert kneading_to_pattern("RL") == Pattern.of(STEFAN3)
    d = kneading_to_pattern("RLLRL")
    assert d.period == 6 and is_doubling(d.rep) and quotient(d.rep, 3) == stefan(3)
    with pytest.raises(InadmissibleKneading):
        kneading_to_pattern("LL")
    with pytest.raises(InadmissibleKneading):
        kneading_to_pattern("RR")


def test_kneading_to_pattern_matches_scan():
    for n in range(2, 10):
        by_scan = {}
        for c in tent_cycles(n):
            by_scan.setdefault(str(kneading(c.pattern)), set()).add(c.pattern)
        for s, pats in by_scan.items():
            assert pats == {kneading_to_pattern(s)}


def test_kneading_injective():
    for n in range(2, 11):
        pats = _unimodal_patterns(n)
        assert len({str(kneading(a)) for a in pats}) == len(pats)


def test_alpha_determines_cycle():
    tops = [alpha_of_cycle(c) for n in range(1, 11) for c in tent_cycles(n)]
    assert len(tops) == len(set(tops))


def test_realization_count_doubling():
    for n in range(2, 9):
        for a in _unimodal_patterns(n):
            single = n == 2 or is_doubling(a.rep)
            assert len(tent_realizations(a)) == (1 if single else 2)


def test_star_tower_and_block_laws():
    for n in range(2, 5):
        for a in _unimodal_patterns(n):
            for m in range(2, 4):
                for b in _unimodal_patterns(m):
                    ab = kneading_to_pattern(star(kneading(a), kneading(b)))
                    assert tower(ab.rep) == tower(a.rep) + tower(b.rep)
                    assert n in block_periods(ab.rep)
                    assert Pattern.of(quotient(ab.rep, n)) == a
                    for i in range(1, n + 1):
                        assert Pattern.of(first_return(ab.rep, n, i)) == b


def test_division_border():
    for n in range(2, 11):
        for c in tent_cycles(n):
            has_div = c.tower[0] == 2
            assert (alpha_of_cycle(c) < F(5, 6)) == has_div


def test_b_min_examples():
    assert b_min(2) == Pattern.of(PERIOD2)
    assert b_min(3) == Pattern.of(STEFAN3)
    assert b_min(4) == Pattern.of((2, 3, 4, 1))
    assert alpha(b_min(4)) == F(14, 15)
    assert alpha(kneading_to_pattern("RLLL")) == F(30, 31)


def test_b_min_is_minimal():
    for n in range(3, 9):
        nbs = [a for a in _unimodal_patterns(n) if not block_periods(a.rep)]
        assert alpha(b_min(n)) == min(alpha(a) for a in nbs)


def test_a_min_examples():
    assert a_min((3,)) == Pattern.of(STEFAN3)
    assert str(kneading(a_min((2, 2)))) == "RLR"
    six = a_min((2, 3))
    assert str(kneading(six)) == "RLRRR" and tower(six.rep) == (2, 3)
    assert alpha(six) == F(52, 63)
    assert alpha(six) == min(alpha(a) for a in _unimodal_patterns(6) if tower(a.rep) == (2, 3))


def test_a_min_tower():
    for t in [(2,), (3,), (2, 2), (2, 3), (3, 2), (2, 2, 2), (4,), (2, 4), (4, 2), (3, 3)]:
        assert tower(a_min(t).rep) == t


def test_truncated_tent():
    t = TruncatedTent(F(4, 5))
    assert t(F(1, 2)) == F(4, 5) and t(F(1, 5)) == F(2, 5)
    assert _pts(truncated_cycles(t, 4)) == {(F(2, 3),), (F(2, 5), F(4, 5))}
    assert _pts(truncated_cycles(TruncatedTent(F(6, 7)), 3)) == {
        (F(2, 3),), (F(2, 5), F(4, 5)), (F(2, 7), F(4, 7), F(6, 7))}
    assert _pts(truncated_cycles(TruncatedTent(F(1, 2)), 5)) == {(F(1, 2),)}
    with pytest.raises(ValueError):
        TruncatedTent(F(3, 2))


def test_realize_examples():
    assert realize((3,), 8) == {(3,), (5,), (7,), (8,), (2,), (2, 2), (2, 3), (2, 4), (2, 2, 2)}
    assert realize((2,), 8) == {(2,)}
    assert realize((2, 2), 8) == {(2,), (2, 2)}
    for t in [(3,), (2,), (2, 2), (4,), (2, 3), (5,)]:
        assert realize(t, 8) == set(tow_set(t, 8))


def test_beta_approx():
    k = InfiniteTower((), (2,))
    vals = [beta_approx(k, d) for d in range(1, 7)]
    assert vals[:3] == [F(4, 5), F(14, 17), F(212, 257)]
    assert vals[1] == alpha(a_min((2, 2)))
    assert all(x < y for x, y in zip(vals, vals[1:]))
    assert all(v < F(5, 6) for v in vals)
    assert beta_approx(InfiniteTower((3,)), 4) == F(6, 7)


def test_stefan5_map_realizes_division_patterns():
    found = forced_patterns(STEFAN5, 6)
    for n in range(2, 7):
        for a in _unimodal_patterns(n):
            if alpha(a) < F(5, 6):
                assert a in found


def test_forcing_matches_alpha():
    pats = [a for n in range(2, 7) for a in _unimodal_patterns(n)]
    forced = {a: forced_patterns(a.rep, 6) for a in pats}
    for a in pats:
        for b in pats:
            assert (b in forced[a]) == (alpha(a) >= alpha(b))
