from math import prod

import pytest
from hypothesis import given, settings, strategies as st

from brute import block_periods_any_partition
from renorm_towers.permutations import (
    CyclicPermutation,
    ExtensionClass,
    InvalidBlockPeriod,
    InvalidPeriod,
    InvalidPermutation,
    Pattern,
    all_cyclic,
    all_patterns,
    block_periods,
    extension_class,
    first_return,
    has_division,
    is_doubling,
    is_stefan,
    quotient,
    stefan,
    tower,
)

STEFAN5 = CyclicPermutation((3, 5, 4, 2, 1))
STEFAN7 = CyclicPermutation((4, 7, 6, 5, 3, 2, 1))
TWO_BLOCKS = CyclicPermutation((4, 5, 6, 2, 3, 1))
THREE_BLOCKS = CyclicPermutation((3, 4, 5, 6, 2, 1))


@st.composite
def cyclic_permutations(draw, max_size=12):
    n = draw(st.integers(min_value=2, max_value=max_size))
    order = [1] + draw(st.permutations(list(range(2, n + 1))))
    image = [0] * n
    for a, b in zip(order, order[1:] + order[:1]):
        image[a - 1] = b
    return CyclicPermutation(tuple(image))


def test_validation_reports_position():
    with pytest.raises(InvalidPermutation, match="single cycle"):
        CyclicPermutation((2, 1, 4, 3))
    with pytest.raises(InvalidPermutation, match="position 3"):
        CyclicPermutation.parse("2,3,x")
    with pytest.raises(InvalidPermutation, match="position 2: value 9"):
        CyclicPermutation((2, 9, 1))


def test_parse_and_text_roundtrip():
    p = CyclicPermutation.parse("3,5,4,2,1")
    assert p == STEFAN5
    assert str(p) == "3,5,4,2,1"


@pytest.mark.parametrize("p, expected", [
    (STEFAN5, []),
    (TWO_BLOCKS, [2]),
    (THREE_BLOCKS, [3]),
])
def test_block_periods_examples(p, expected):
    assert block_periods(p) == expected
    assert block_periods_any_partition(p.image) == expected


def test_equal_size_blocks_suffice():
    for n in range(2, 9):
        for p in all_cyclic(n):
            assert block_periods(p) == block_periods_any_partition(p.image)


@pytest.mark.parametrize("p, expected", [
    (STEFAN7, (7,)),
    (TWO_BLOCKS, (2, 3)),
    (THREE_BLOCKS, (3, 2)),
    (CyclicPermutation((2, 1)), (2,)),
    (CyclicPermutation((1,)), ()),
])
def test_tower_examples(p, expected):
    assert tower(p) == expected


def test_quotient_and_first_return():
    assert quotient(TWO_BLOCKS, 2).image == (2, 1)
    assert quotient(THREE_BLOCKS, 3).image == (2, 3, 1)
    assert first_return(TWO_BLOCKS, 2, 1).image == (2, 3, 1)
    assert first_return(THREE_BLOCKS, 3, 1).image == (2, 1)
    with pytest.raises(InvalidBlockPeriod):
        quotient(STEFAN5, 5)
    with pytest.raises(InvalidBlockPeriod):
        first_return(STEFAN5, 5, 1)
    with pytest.raises(InvalidBlockPeriod):
        quotient(TWO_BLOCKS, 3)


def test_stefan_permutations():
    assert stefan(3).image == (2, 3, 1)
    assert stefan(5) == STEFAN5
    assert stefan(7) == STEFAN7
    assert stefan(11).image == (6, 11, 10, 9, 8, 7, 5, 4, 3, 2, 1)
    for bad in (1, 2, 4, 10):
        with pytest.raises(InvalidPeriod):
            stefan(bad)


def test_stefan_has_no_block_structure():
    for n in range(1, 30):
        assert tower(stefan(2 * n + 1)) == (2 * n + 1,)


def test_is_stefan():
    assert is_stefan(Pattern.of(STEFAN5))
    assert is_stefan(Pattern.of((2, 3, 1)))
    assert is_stefan(Pattern.of(STEFAN5.flip()))
    assert not is_stefan(Pattern.of(TWO_BLOCKS))
    assert sum(is_stefan(a) for a in all_patterns(5)) == 1


def test_is_doubling():
    assert is_doubling(THREE_BLOCKS)
    assert not is_doubling(TWO_BLOCKS)
    assert not is_doubling(STEFAN5)


def test_has_division_counts_period_two():
    assert has_division((2, 1))
    assert has_division(TWO_BLOCKS)
    assert not has_division(THREE_BLOCKS)


def test_extension_class():
    assert extension_class(THREE_BLOCKS, 3) == ExtensionClass.MONOTONE
    # three 3-point blocks, only the first has a turning point
    c = CyclicPermutation((4, 6, 5, 8, 9, 7, 3, 2, 1))
    assert extension_class(c, 3) == ExtensionClass.NOT_EXTENSION
    u = CyclicPermutation((4, 6, 5, 7, 8, 9, 3, 2, 1))
    assert block_periods(u) == [3]
    assert extension_class(u, 3) == ExtensionClass.UNIMODAL
    with pytest.raises(InvalidBlockPeriod):
        extension_class(STEFAN5, 5)


def test_pattern_identifies_flips():
    a, b = Pattern.of(STEFAN5), Pattern.of(STEFAN5.flip())
    assert a == b and hash(a) == hash(b)
    assert a.rep.image <= a.rep.flip().image
    assert len(all_patterns(5)) == 12
    assert len(list(all_cyclic(7))) == 720


@settings(max_examples=200, deadline=None)
@given(cyclic_permutations())
def test_tower_laws(p):
    t = tower(p)
    assert prod(t) == p.size and min(t) >= 2
    assert tower(p.flip()) == t
    assert block_periods(p.flip()) == block_periods(p)
    bps = block_periods(p)
    for small in bps:
        for big in bps:
            if small < big:
                assert big % small == 0
                # every big block sits inside one small block
                bsize, ssize = p.size // big, p.size // small
                for start in range(0, p.size, bsize):
                    assert start // ssize == (start + bsize - 1) // ssize


@settings(max_examples=200, deadline=None)
@given(cyclic_permutations())
def test_prefix_law(p):
    t = tower(p)
    for k in block_periods(p):
        q = tower(quotient(p, k))
        assert len(q) < len(t) and t[:len(q)] == q
        # coarser block structures of p restrict to every block, finer ones
        # of a single block need not lift, so the suffix is only a lower bound
        rest = t[len(q):]
        inherited = [prod(rest[:j]) for j in range(1, len(rest))]
        for i in range(1, k + 1):
            r = first_return(p, k, i)
            assert r.size == prod(rest)
            assert set(inherited) <= set(block_periods(r))


def test_first_return_towers_can_differ_between_blocks():
    p = CyclicPermutation((5, 7, 6, 8, 3, 2, 4, 1))
    assert tower(p) == (2, 4)
    assert tower(first_return(p, 2, 1)) == (2, 2)
    assert tower(first_return(p, 2, 2)) == (4,)
