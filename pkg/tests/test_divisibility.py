import pytest

from oracles import naive_left_divides, naive_right_divides, naive_partition
from hpmonoid.divisibility import (
    divides,
    divisor_set,
    lcm_failure_witness,
    left_divides,
    left_divisor_set,
    mcd,
    mcm_bounded,
    right_divides,
    right_divisor_set,
)
from hpmonoid.words import enumerate_class, parse_presentation, words_equal


def canon(p, words):
    return {c.canonical for c in words}


def test_left_divides_examples(bii):
    w = bii.word
    assert words_equal(bii, left_divides(bii, w("a"), w("bc")), w("b"))
    assert words_equal(bii, left_divides(bii, "", w("bc")), w("bc"))
    assert left_divides(bii, w("a"), w("bbb")) is None


def test_right_divides_examples(bii):
    w = bii.word
    assert right_divides(bii, w("a"), w("bba")) == w("bb")
    assert right_divides(bii, w("abc"), w("abc")) == ""
    assert right_divides(bii, w("c"), w("bcbcbc")) is not None


@pytest.mark.parametrize("n", [3, 4, 5])
def test_divides_matches_naive(bii, n):
    reps = [min(c) for c in naive_partition(bii, n)]
    shorts = [min(c) for k in (1, 2) for c in naive_partition(bii, k)]
    for v in reps:
        for u in shorts:
            assert divides(bii, u, v, "left") == naive_left_divides(bii, u, v)
            assert divides(bii, u, v, "right") == naive_right_divides(bii, u, v)


def test_divisor_sets(bii, g22):
    w = bii.word
    assert canon(bii, left_divisor_set(bii, w("bbb")).divisors) == {"", w("b"), w("bb"), w("bbb")}
    assert canon(bii, left_divisor_set(bii, "").divisors) == {""}
    delta_divs = left_divisor_set(g22.p, g22.delta)
    for x in g22.p.letters:
        assert any(c.canonical == x for c in delta_divs.divisors)
    assert divisor_set(bii, w("ab"), "right") == right_divisor_set(bii, w("ab"))


def test_mcm_bc_family(bii):
    w = bii.word
    got = canon(bii, mcm_bounded(bii, (w("b"), w("c")), "right", 6).minimal)
    expected = set()
    for k in range(4):
        v = w("b") + w("c") * k + w("ba")
        expected.add(enumerate_class(bii, v).canonical)
    assert got == expected


def test_mcm_singleton_and_empty(bii):
    w = bii.word
    assert canon(bii, mcm_bounded(bii, (w("abc"),), "right", 5).minimal) == {enumerate_class(bii, w("abc")).canonical}
    assert canon(bii, mcm_bounded(bii, ("",), "right", 1).minimal) == {""}


def test_mcm_letters_g22_is_delta(g22):
    d = enumerate_class(g22.p, g22.delta).canonical
    for side in ("left", "right"):
        assert canon(g22.p, mcm_bounded(g22.p, g22.L0, side, 6).minimal) == {d}


def test_mcd(bii, g22):
    w = bii.word
    assert canon(bii, mcd(bii, (w("bbb"), w("bba")), "left")) == {w("bb")}
    assert canon(bii, mcd(bii, (w("acb"),), "left")) == {enumerate_class(bii, w("acb")).canonical}
    assert canon(g22.p, mcd(g22.p, (g22.delta1, g22.delta2), "left")) == {g22.s}


def test_lcm_failure(bii):
    f = lcm_failure_witness(bii, 6)
    assert f.pair == (bii.word("b"), bii.word("c"))
    assert len(f.multiples) >= 2


def test_lcm_failure_absent_for_free_commutative():
    p = parse_presentation("generators: a b\nrelation: a b = b a")
    assert lcm_failure_witness(p, 6) is None


def test_bad_side(bii):
    with pytest.raises(ValueError):
        divides(bii, "", "", "up")
