import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import naive_class, naive_partition
from hpmonoid.words import (
    ClassCeilingExceeded,
    PresentationError,
    all_classes_upto,
    atoms,
    classes_of_length,
    elementary_neighbors,
    enumerate_class,
    parse_presentation,
    preserved_letters,
    reverse_presentation,
    words_equal,
)

BII_TEXT = """
generators: a b c
relation: c b b = b b a
relation: a b = b c
relation: a c = c a
"""


def test_parse_bii_text(bii):
    p = parse_presentation(BII_TEXT)
    assert len(p.alphabet) == 3
    assert len(p.relations) == 3
    assert p == bii


def test_g22_has_eight_relations(g22):
    assert [g.name for g in g22.p.alphabet] == ["s", "t1", "t2", "u1", "u2"]
    assert len(g22.p.relations) == 8


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("generators: a b\nrelation: a b = b", "non-homogeneous"),
        ("generators: a b\nrelation: a b = x y", "unknown generator"),
        ("relation: a = b", "before generators"),
        ("generators: a a", "duplicate"),
        ("generators: a b\nrelation: a b", "exactly one"),
        ("generators: a\nfoo: bar", "unknown key"),
        ("", "missing generators"),
    ],
)
def test_parse_errors(text, fragment):
    with pytest.raises(PresentationError, match=fragment):
        parse_presentation(text)


def test_parse_error_reports_line():
    with pytest.raises(PresentationError) as err:
        parse_presentation("generators: a b\n\nrelation: a b = b")
    assert err.value.line == 3


def test_alias_merging():
    p = parse_presentation("generators: x y z\nrelation: x = y\nrelation: y z = z x")
    assert [g.name for g in atoms(p)] == ["x", "z"]
    assert p.word("y") == p.word("x")
    assert words_equal(p, p.word("x z"), p.word("z x"))


def test_neighbors(bii):
    w = bii.word
    assert elementary_neighbors(bii, w("ab")) == {w("bc")}
    assert elementary_neighbors(bii, w("bbb")) == set()
    assert elementary_neighbors(bii, w("cbb")) == {w("bba")}


def test_class_of_ab_and_empty(bii):
    c = enumerate_class(bii, bii.word("ab"))
    assert c.members == {bii.word("ab"), bii.word("bc")}
    assert c.canonical == bii.word("ab")
    assert enumerate_class(bii, "").members == {""}


def test_delta1_spellings_share_a_class(bii):
    c = enumerate_class(bii, bii.word("bcbcbc"))
    for s in ("bbcbac", "cbabba", "acbabb"):
        assert bii.word(s) in c


@pytest.mark.parametrize(
    "u, v, expected", [("abbb", "bbba", True), ("a", "b", False), ("ab", "ca", False), ("", "", True)]
)
def test_words_equal_bii(bii, u, v, expected):
    assert words_equal(bii, bii.word(u), bii.word(v)) is expected


def test_words_equal_rotation(g22):
    assert words_equal(g22.p, g22.word("s t1 t2"), g22.word("t2 s t1"))


def test_counts_of_small_classes(bii):
    assert [len(classes_of_length(bii, n)) for n in range(3)] == [1, 3, 7]
    assert len(all_classes_upto(bii, 2)) == 11


@pytest.mark.parametrize("n", range(1, 7))
def test_partition_matches_naive_bii(bii, n):
    ours = {c.members for c in classes_of_length(bii, n)}
    assert ours == set(naive_partition(bii, n))


@pytest.mark.parametrize("n", range(1, 5))
def test_partition_matches_naive_g22(g22, n):
    ours = {c.members for c in classes_of_length(g22.p, n)}
    assert ours == set(naive_partition(g22.p, n))


def test_reverse_presentation(bii):
    r = reverse_presentation(bii)
    w = r.word
    rels = {frozenset((x.lhs, x.rhs)) for x in r.relations}
    assert rels == {frozenset((w("bbc"), w("abb"))), frozenset((w("ba"), w("cb"))), frozenset((w("ca"), w("ac")))}


def test_preserved_letters(bii, g22):
    assert preserved_letters(bii) == {bii.word("b")}
    assert preserved_letters(g22.p) == set(g22.p.letters)


def test_ceiling():
    p = parse_presentation(BII_TEXT)  # fresh cache
    with pytest.raises(ClassCeilingExceeded):
        enumerate_class(p, p.word("bcbcbcbcbc"), ceiling=3)


def test_cache_roundtrip(tmp_path, bii):
    for n in range(4):
        classes_of_length(bii, n)
    path = tmp_path / "cache.json"
    saved = bii.save_cache(path)
    fresh = parse_presentation(BII_TEXT)
    assert fresh.load_cache(path) == saved
    assert enumerate_class(fresh, fresh.word("bc")).members == {fresh.word("ab"), fresh.word("bc")}


letters = st.sampled_from("abc")


@settings(max_examples=60, deadline=None)
@given(st.lists(letters, min_size=0, max_size=7))
def test_class_matches_naive_random(bii_word_list):
    from hpmonoid.bii import bii_presentation

    p = bii_presentation()
    w = p.word(list(bii_word_list))
    assert enumerate_class(p, w).members == naive_class(p, w)
