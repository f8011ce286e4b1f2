import pytest

from oracles import naive_conjugates, naive_partition
from hpmonoid.conjugacy import (
    NO,
    NOT_FOUND,
    YES,
    are_conjugate,
    conj_oracle_bounded,
    conjugator_from_chain,
    group_conjugate,
    group_equal,
    group_normalize,
    orbit_closure,
    parse_group_word,
    positive_group_word,
    property_P_probe,
    trans_min_bounded,
    transit_elements_bounded,
    transit_quotients,
)
from hpmonoid.divisibility import left_divides
from hpmonoid.garside import fundamental_cert
from hpmonoid.words import classes_of_length, enumerate_class, words_equal


def canon(p, text_list):
    return {enumerate_class(p, p.word(t)).canonical for t in text_list}


def names(classes):
    return {c.canonical for c in classes}


def test_transit_quotients(bii):
    w = bii.word
    assert transit_quotients(bii, w("a"), w("b")) == {w("c")}


def test_transit_elements_contain_b(bii):
    assert enumerate_class(bii, bii.word("b")) in transit_elements_bounded(bii, bii.word("a"), 4)


@pytest.mark.parametrize(
    "w, L, expected",
    [("c", 4, ["a", "c", "bb"]), ("a", 3, ["a", "b", "c"]), ("ba", 3, ["b", "cba"])],
)
def test_trans_min_small(bii, w, L, expected):
    assert names(trans_min_bounded(bii, bii.word(w), L)) == canon(bii, expected)


def test_trans_min_is_minimal(bii):
    w = bii.word("ab")
    mins = trans_min_bounded(bii, w, 6)
    alls = transit_elements_bounded(bii, w, 6)
    assert mins <= alls
    for c in alls:
        has_min = any(left_divides(bii, m.canonical, c.canonical) is not None for m in mins)
        assert has_min


@pytest.mark.parametrize("n", [1, 2, 3])
def test_oracle_matches_naive(bii, n):
    for c in naive_partition(bii, n):
        w = min(c)
        chain = conj_oracle_bounded(bii, w, 4)
        exhaustive = conj_oracle_bounded(bii, w, 4, method="exhaustive")
        assert {frozenset(x.members) for x in exhaustive.members} == naive_conjugates(bii, w, 4)
        assert chain.members == exhaustive.members


def test_chain_gives_conjugators(bii):
    w = bii.word("a")
    cs = conj_oracle_bounded(bii, w, 4)
    for c in cs.members:
        A = conjugator_from_chain(cs, c.canonical)
        assert A is not None
        if A:
            assert words_equal(bii, A + c.canonical, w + A)


def test_orbits(bii, g22):
    d1 = bii.word("bcbcbc")
    assert names(orbit_closure(bii, bii.word("bbb"), d1).orbit) == canon(bii, ["bbb"])
    assert names(orbit_closure(bii, bii.word("a"), d1).orbit) == canon(bii, ["a", "c"])
    # every letter is preserved in G_{2,2}, so a single letter is alone in its orbit
    assert names(orbit_closure(g22.p, g22.word("t1"), g22.delta).orbit) == {g22.word("t1")}
    st = orbit_closure(g22.p, g22.word("t1 u1 s"), g22.delta)
    assert names(st.orbit) == canon(g22.p, ["u1 s t1", "t1 u1 s", "t1 s u1", "s t1 u1"])
    target = enumerate_class(g22.p, g22.word("s t1 u1")).canonical
    A = "".join(st.chain(target))
    assert words_equal(g22.p, A + target, g22.word("t1 u1 s") + A)


def test_orbit_rejects_non_fundamental(bii):
    with pytest.raises(ValueError):
        orbit_closure(bii, bii.word("a"), bii.word("bbb"))


def test_property_P_probe_g22(g22):
    for n in range(1, 4):
        for c in classes_of_length(g22.p, n):
            assert property_P_probe(g22.p, c.canonical, g22.delta, 5).holds


def test_property_P_probe_bii_counterexample(bii):
    res = property_P_probe(bii, bii.word("ac"), bii.word("bcbcbc"), 7)
    assert not res.holds
    assert res.counterexample == bii.word("bbb")
    assert property_P_probe(bii, bii.word("c"), bii.word("bcbcbc"), 7).holds


def test_are_conjugate(bii, g22):
    d = g22.delta
    assert are_conjugate(g22.p, g22.word("t1"), g22.word("t1"), d).status == YES
    assert are_conjugate(g22.p, g22.word("t1"), g22.word("t2"), d).reason == "letter-count"
    v = are_conjugate(g22.p, g22.word("t1 u1 s"), g22.word("s t1 u1"), d)
    assert v.status == YES
    assert words_equal(g22.p, v.conjugator + g22.word("s t1 u1"), g22.word("t1 u1 s") + v.conjugator)
    assert are_conjugate(g22.p, g22.word("t1 t2"), g22.word("t2 t1"), d).status == YES
    v = are_conjugate(g22.p, g22.word("s t1 t2"), g22.word("s t2 t1"), d)
    assert v.status == NOT_FOUND
    assert are_conjugate(g22.p, g22.word("s t1 t2"), g22.word("s t2 t1"), d, assume_P=True).status == NO
    assert are_conjugate(g22.p, g22.word("t1"), g22.word("u1"), d).reason == "letter-count"
    assert are_conjugate(g22.p, g22.word("s t1 t2"), g22.word("t2 s t1"), d).status == YES
    v = are_conjugate(bii, bii.word("a"), bii.word("b"), bii.word("bcbcbc"))
    assert v.status == NO and v.reason == "letter-count"


def test_not_found_without_assumption(bii):
    d1 = bii.word("bcbcbc")
    v = are_conjugate(bii, bii.word("aa"), bii.word("bb"), d1)
    assert v.status == NO
    v = are_conjugate(bii, bii.word("ab"), bii.word("aa"), d1)
    assert v.status == NO  # b-count differs
    v = are_conjugate(bii, bii.word("ba"), bii.word("bc"), d1)
    assert v.status in (YES, NOT_FOUND)


def test_group_words(bii, g22):
    fund = fundamental_cert(g22.p, g22.delta)
    g = parse_group_word(g22.p, "s s^-1")
    assert group_equal(g22.p, g, parse_group_word(g22.p, "e"), fund)
    assert group_equal(g22.p, parse_group_word(g22.p, "s t1 t2"), parse_group_word(g22.p, "t1 t2 s"), fund)
    assert group_normalize(g22.p, positive_group_word(g22.word("t1")), fund) == (0, g22.word("t1"))
    k, P = group_normalize(g22.p, parse_group_word(g22.p, "s^-1"), fund)
    assert k == 1
    fb = fundamental_cert(bii, bii.word("bcbcbc"))
    assert not group_equal(bii, parse_group_word(bii, "a b"), parse_group_word(bii, "b a"), fb)


def test_group_conjugate(g22):
    fund = fundamental_cert(g22.p, g22.delta)
    g = parse_group_word(g22.p, "s^-1 t1 s")
    assert group_conjugate(g22.p, g, parse_group_word(g22.p, "t1"), fund).status == YES
    assert group_conjugate(g22.p, g, parse_group_word(g22.p, "t2"), fund).status == NO
    assert group_conjugate(g22.p, parse_group_word(g22.p, "t1"), parse_group_word(g22.p, "u1"), fund).status == NO
