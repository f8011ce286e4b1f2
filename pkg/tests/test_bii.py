import pytest

from oracles import naive_partition
from hpmonoid.bii import (
    BiiNormalForm,
    b_count,
    bii_conjugate,
    bii_normal_form,
    bii_reduce,
    bii_trans_min_table,
    conjugacy_class,
    delta0_exponent,
    delta_k,
    reduce_delta0,
)
from hpmonoid.conjugacy import NO, YES, conj_oracle_bounded, trans_min_bounded
from hpmonoid.divisibility import left_divides
from hpmonoid.garside import fundamental_cert
from hpmonoid.words import classes_of_length, enumerate_class, words_equal

# one representative per table row, plus two extra r values for the j=1 stairs
ROW_REPS = ["", "c", "a", "ac", "cba", "aba", "acba", "ba", "baa", "cbbc", "abbc", "acbbc", "bbc", "acbabb", "bbbc"]


def names(classes):
    return {c.canonical for c in classes}


def test_counts(bii):
    assert b_count(bii.word("acac"), bii) == 0
    assert b_count(bii.word("bcbcbc"), bii) == 3


@pytest.mark.parametrize("w, e", [("bbb", 1), ("abbb", 1), ("ab", 0), ("bbbbbb", 2), ("bbbbb", 1)])
def test_delta0_exponent(bii, w, e):
    assert delta0_exponent(bii.word(w), bii) == e


def test_delta_k_is_fundamental(bii):
    for k in (1, 2):
        assert fundamental_cert(bii, delta_k(k, bii)) is not None
    assert delta_k(1, bii) == bii.word("bcbcbc")


@pytest.mark.parametrize(
    "w, nf",
    [
        ("bcbcbc", BiiNormalForm(0, 3, 1, 1, 1)),
        ("aacc", BiiNormalForm(0, 0, 2, 2, None)),
        ("bbbb", BiiNormalForm(1, 1, 0, 0, 0)),
        ("", BiiNormalForm(0, 0, 0, 0, None)),
    ],
)
def test_normal_form_examples(bii, w, nf):
    assert bii_normal_form(bii.word(w), bii) == nf


def test_normal_form_faithful(bii):
    for n in range(7):
        seen = {}
        for c in classes_of_length(bii, n):
            nf = bii_normal_form(c.canonical, bii)
            assert words_equal(bii, nf.word(bii), c.canonical)
            assert nf not in seen
            seen[nf] = c


@pytest.mark.parametrize(
    "v1, X, v2, Y, case, Z, k",
    [
        ("a", "b", "b", "c", "ii", "", 0),
        ("a", "ca", "c", "aa", "iii", "a", 0),
        ("b", "cba", "c", "abb", "iv", "", 1),
        ("c", "abb", "b", "cba", "iv", "", 1),
        ("a", "bc", "a", "ab", "i", "ab", 0),
    ],
)
def test_reduce_examples(bii, v1, X, v2, Y, case, Z, k):
    w = bii.word
    r = bii_reduce(w(v1), w(X), w(v2), w(Y), bii)
    assert r.case == case
    assert words_equal(bii, r.Z, w(Z))
    assert r.k == k


def test_reduce_rejects_false_equation(bii):
    with pytest.raises(ValueError):
        bii_reduce(bii.word("a"), bii.word("a"), bii.word("b"), bii.word("b"), bii)


def test_reduce_exhaustive(bii):
    for n in range(2, 6):
        for c in naive_partition(bii, n):
            heads = {}
            for m in sorted(c):
                heads.setdefault(m[0], m[1:])
            for v1, X in heads.items():
                for v2, Y in heads.items():
                    bii_reduce(v1, X, v2, Y, bii)


def test_reduce_delta0(bii):
    w = bii.word
    k, rest = reduce_delta0(w("bbbbc"), bii)
    assert k == 1 and words_equal(bii, rest, w("bc"))
    # b-count 3 is left alone
    assert reduce_delta0(w("bbbc"), bii)[0] == 0


@pytest.mark.parametrize("w", ROW_REPS)
def test_table_matches_scan(bii, w):
    x = bii.word(w)
    fam = bii_trans_min_table(x, bii)
    assert names(fam.classes(bii, 7)) == names(trans_min_bounded(bii, x, 7))


def test_table_examples(bii):
    w = bii.word
    assert set(bii_trans_min_table(w("c"), bii).instantiate(7)) == {w("a"), w("c"), w("bb")}
    assert set(bii_trans_min_table(w("acbabb"), bii).instantiate(7)) == {w("a"), w("b"), w("c")}
    ba = bii_trans_min_table(w("ba"), bii).instantiate(max_len=7)
    assert w("b") in ba and w("cba") in ba


def test_printed_row_differs_for_r_at_least_one(bii):
    x = bii.word("ba")
    printed = bii_trans_min_table(x, bii, printed=True)
    assert names(printed.classes(bii, 7)) != names(trans_min_bounded(bii, x, 7))
    x = bii.word("b")
    printed = bii_trans_min_table(x, bii, printed=True)
    assert names(printed.classes(bii, 7)) == names(trans_min_bounded(bii, x, 7))


def test_conjugate_examples(bii):
    w = bii.word
    v = bii_conjugate(w("a"), w("c"), bii)
    assert v.status == YES
    assert words_equal(bii, v.conjugator + w("c"), w("a") + v.conjugator)
    v = bii_conjugate(w("a"), w("b"), bii)
    assert v.status == NO and v.reason == "b-count"
    assert bii_conjugate(w("bcbcbc"), w("acbabb"), bii).status == YES


@pytest.mark.parametrize("n", range(1, 5))
def test_conjugacy_class_matches_oracle(bii, n):
    for c in classes_of_length(bii, n):
        ours = conjugacy_class(c.canonical, bii)
        assert ours == conj_oracle_bounded(bii, c.canonical, 7).canonicals()


def test_families_divide_some_delta_k(bii):
    # every tabulated transit element left-divides (bc^i)^3 for some 0 <= i <= 4
    deltas = [delta_k(i, bii) for i in range(5)]
    for w in ROW_REPS:
        for A in bii_trans_min_table(bii.word(w), bii).instantiate(max_param=4):
            assert any(left_divides(bii, A, d) is not None for d in deltas), bii.show(A)
