"""
The monoid B_ii = < a, b, c | cbb = bba, ab = bc, ac = ca >.

Every relation keeps the number of b's, so the monoid is graded by the
b-count ``j``.  ``D0 = bbb`` is central, and each element with ``j >= 4`` is
divisible by ``D0`` on both sides.  After removing the largest left power of
``D0`` the remainder has one of four shapes, one per ``j`` in 0..3:

    j=0  a^p c^q            j=2  a^p c^q bb c^r
    j=1  a^p c^q b a^r      j=3  a^p c^q b a^r bb

The minimal transit elements of each shape are tabulated below and used for
an exact conjugacy test.  One printed family (``j=1``, ``p=q=0``) disagrees
with brute force for ``r >= 1``; both the printed and the corrected family are
kept, and the corrected one is the default.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .conjugacy import NO, YES, Template, TransitFamily, Verdict, transit_quotients
from .divisibility import left_divides, left_quotients
from .words import EquivClass, Presentation, Word, enumerate_class, parse_presentation, words_equal

__all__ = [
    "BII_TEXT",
    "BiiNormalForm",
    "BiiReduction",
    "b_count",
    "bii_conjugate",
    "bii_normal_form",
    "bii_presentation",
    "bii_reduce",
    "bii_trans_min_table",
    "delta0_exponent",
    "delta_k",
]

BII_TEXT = """\
# B_ii
generators: a b c
relation: c b b = b b a
relation: a b = b c
relation: a c = c a
"""

_BII: Presentation | None = None


def bii_presentation() -> Presentation:
    """The shared built-in presentation (one class cache per process)."""
    global _BII
    if _BII is None:
        _BII = parse_presentation(BII_TEXT, name="B_ii")
    return _BII


def _letters(p: Presentation) -> tuple[Word, Word, Word]:
    return p.letter("a"), p.letter("b"), p.letter("c")


def b_count(w: Word, p: Presentation | None = None) -> int:
    p = p or bii_presentation()
    return w.count(p.letter("b"))


def delta0(p: Presentation | None = None) -> Word:
    p = p or bii_presentation()
    return p.letter("b") * 3


def delta_k(k: int, p: Presentation | None = None) -> Word:
    """``(b c^k)^3``, a minimal fundamental element for every ``k >= 0``."""
    p = p or bii_presentation()
    a, b, c = _letters(p)
    return (b + c * k) * 3


def delta0_exponent(w: Word, p: Presentation | None = None) -> int:
    p = p or bii_presentation()
    d0 = delta0(p)
    k = 0
    cur = w
    while len(cur) >= 3:
        q = left_divides(p, d0, cur)
        if q is None:
            break
        k += 1
        cur = q
    return k


@dataclass(frozen=True)
class BiiNormalForm:
    k: int
    j: int
    p: int
    q: int
    r: int | None = None

    def remainder(self, pres: Presentation | None = None) -> Word:
        pres = pres or bii_presentation()
        a, b, c = _letters(pres)
        head = a * self.p + c * self.q
        if self.j == 0:
            return head
        if self.j == 1:
            return head + b + a * self.r
        if self.j == 2:
            return head + b + b + c * self.r
        return head + b + a * self.r + b + b

    def word(self, pres: Presentation | None = None) -> Word:
        return delta0(pres) * self.k + self.remainder(pres)

    def show(self) -> str:
        shape = {0: "a^{p} c^{q}", 1: "a^{p} c^{q} b a^{r}", 2: "a^{p} c^{q} bb c^{r}", 3: "a^{p} c^{q} b a^{r} bb"}[self.j]
        body = shape.format(p=self.p, q=self.q, r=self.r)
        return (f"(bbb)^{self.k} " if self.k else "") + body


def _shapes(j: int, n: int):
    """Exponent tuples for the ``j``-shape of total length ``n``."""
    free = n - j
    if free < 0:
        return
    if j == 0:
        for p in range(free + 1):
            yield (p, free - p, None)
        return
    for p in range(free + 1):
        for q in range(free - p + 1):
            yield (p, q, free - p - q)


def bii_normal_form(w: Word, p: Presentation | None = None) -> BiiNormalForm:
    p = p or bii_presentation()
    k = 0
    cur = enumerate_class(p, w).canonical
    d0 = delta0(p)
    while len(cur) >= 3:
        q = left_divides(p, d0, cur)
        if q is None:
            break
        k, cur = k + 1, q
    j = b_count(cur, p)
    if j > 3:
        raise AssertionError(f"b-count {j} remains after removing bbb; expected at most 3")
    cls = enumerate_class(p, cur)
    hits = []
    for pe, qe, re in _shapes(j, len(cur)):
        nf = BiiNormalForm(k, j, pe, qe, re)
        if nf.remainder(p) in cls:
            hits.append(nf)
    if len(hits) != 1:
        raise AssertionError(f"expected exactly one shape for {p.compact(cur)}, found {len(hits)}")
    return hits[0]


# -- the reduction lemma ---------------------------------------------------

@dataclass(frozen=True)
class BiiReduction:
    case: str  # "i" | "ii" | "iii" | "iv"
    Z: Word
    k: int = 0
    swapped: bool = False  # the equation was given with its sides exchanged

    def show(self, p: Presentation | None = None) -> str:
        p = p or bii_presentation()
        z = p.compact(self.Z) if self.Z else "e"
        return f"case {self.case}: Z={z}" + (f", k={self.k}" if self.case == "iv" else "")


def bii_reduce(v1: Word, X: Word, v2: Word, Y: Word, p: Presentation | None = None) -> BiiReduction:
    """Structural solution of ``v1 X = v2 Y`` for letters ``v1, v2``.

    * same letter: ``X = Y`` (``Z = X``)
    * ``a X = b Y``: ``X = b Z``, ``Y = c Z``
    * ``a X = c Y``: ``X = c Z``, ``Y = a Z``
    * ``b X = c Y``: ``X = c^k b a Z``, ``Y = a^k b b Z``
    """
    p = p or bii_presentation()
    a, b, c = _letters(p)
    if len(v1) != 1 or len(v2) != 1:
        raise ValueError("v1 and v2 must be letters")
    if not words_equal(p, v1 + X, v2 + Y):
        raise ValueError("the equation does not hold")
    if v1 == v2:
        if not words_equal(p, X, Y):
            raise AssertionError("left cancellation failed")
        return BiiReduction("i", enumerate_class(p, X).canonical)
    swapped = (v1, v2) in ((b, a), (c, a), (c, b))
    if swapped:
        v1, X, v2, Y = v2, Y, v1, X
    if (v1, v2) == (a, b):
        Z = left_divides(p, b, X)
        if Z is None or not words_equal(p, Y, c + Z):
            raise AssertionError("case (ii) decomposition not found")
        return BiiReduction("ii", Z, 0, swapped)
    if (v1, v2) == (a, c):
        Z = left_divides(p, c, X)
        if Z is None or not words_equal(p, Y, a + Z):
            raise AssertionError("case (iii) decomposition not found")
        return BiiReduction("iii", Z, 0, swapped)
    for k in range(0, len(X) - 1):
        Z = left_divides(p, c * k + b + a, X)
        if Z is not None and words_equal(p, Y, a * k + b + b + Z):
            return BiiReduction("iv", Z, k, swapped)
    raise AssertionError("case (iv) decomposition not found")


# -- minimal transit tables ------------------------------------------------

@dataclass(frozen=True)
class TableRow:
    case: int
    label: str
    family: TransitFamily
    printed: TransitFamily


def _row_key(nf: BiiNormalForm) -> str:
    if nf.j == 3:
        return "any"
    if nf.p == 0 and nf.q == 0:
        return "p=q=0"
    if nf.p == 0:
        return "p=0,q>=1"
    if nf.q == 0:
        return "q=0,p>=1"
    return "p,q>=1"


def table_row(nf: BiiNormalForm, p: Presentation | None = None) -> TableRow:
    """The table row for a normal form with ``k = 0`` (or ``j = 3``)."""
    pres = p or bii_presentation()
    a, b, c = _letters(pres)
    key = _row_key(nf)
    r = nf.r
    fin = lambda *ws: TransitFamily(tuple(ws))  # noqa: E731
    if nf.j == 0:
        if key == "p=q=0":
            # the empty word: every letter is a minimal transit element
            f = fin(a, b, c)
            return TableRow(1, "p=q=0 (empty word)", f, f)
        if key == "p=0,q>=1":
            f = fin(a, c, b + b)
        elif key == "q=0,p>=1":
            f = fin(a, b, c)
        else:
            f = TransitFamily((a, c), (Template(((b + b, 0, 1), (c, 1, 0), (b, 0, 1)), 0),))
        return TableRow(1, key, f, f)
    if nf.j == 1:
        stairs = Template(((c, 1, 0), (b, 0, 1), (a, 1, 0)), 1, r) if r >= 1 else None
        low = (stairs,) if stairs else ()
        if key == "p=0,q>=1":
            f = fin(b, c)
            return TableRow(2, key, f, f)
        if key == "q=0,p>=1":
            f = TransitFamily((a, b), low)
            return TableRow(2, key, f, f)
        if key == "p,q>=1":
            f = fin(a, b, c)
            return TableRow(2, key, f, f)
        printed = TransitFamily((b,), low + (Template(((a, 1, 0), (c, 1, 0), (b, 0, 1), (a, 1, 0)), r + 1),))
        corrected = TransitFamily((b,), low + (Template(((a, 1, -r), (c, 1, 0), (b, 0, 1), (a, 1, 0)), r + 1),))
        return TableRow(2, key, corrected, printed)
    if nf.j == 2:
        if key == "p=0,q>=1":
            f = fin(b, c)
        elif key == "q=0,p>=1":
            f = fin(a, b)
        elif key == "p,q>=1":
            f = fin(a, b, c)
        else:
            f = TransitFamily((b,), (Template(((a, 1, 0), (c, 1, 0), (b, 0, 1), (a, 1, 0)), 1),))
        return TableRow(3, key, f, f)
    f = fin(a, b, c)
    return TableRow(4, "any", f, f)


def reduce_delta0(w: Word, p: Presentation | None = None) -> tuple[int, Word]:
    """Strip ``bbb`` from the left while the b-count is at least 4.

    For such ``w = bbb x`` the transit elements of ``w`` and ``x`` coincide
    and the positive conjugates of ``w`` are ``bbb`` times those of ``x``:
    any ``Q`` with ``A Q = w A`` has b-count >= 4, hence ``Q = bbb Q'`` and
    ``A Q' = x A`` by centrality and cancellation.  The reduction stops at
    b-count 3, where ``bbb`` is no longer removable without changing the
    transit set (``bbbc`` has ``b`` as a transit element, ``c`` does not).
    """
    p = p or bii_presentation()
    d0 = delta0(p)
    k = 0
    cur = enumerate_class(p, w).canonical
    while b_count(cur, p) >= 4:
        q = left_divides(p, d0, cur)
        if q is None:
            raise AssertionError("bbb does not divide an element with b-count >= 4")
        k, cur = k + 1, q
    return k, cur


def bii_trans_min_table(w: Word, p: Presentation | None = None, printed: bool = False) -> TransitFamily:
    """Minimal transit elements of ``w`` as a symbolic family."""
    p = p or bii_presentation()
    _, cur = reduce_delta0(w, p)
    if b_count(cur, p) == 3:
        # bbb may still divide here, but the transit set is that of the j=3 shape
        row = table_row(BiiNormalForm(0, 3, 0, 0, 0), p)
    else:
        row = table_row(bii_normal_form(cur, p), p)
    fam = row.printed if printed else row.family
    return TransitFamily(fam.finite, fam.parametric, f"case {row.case}: {row.label}")


def bii_conjugate(u: Word, v: Word, p: Presentation | None = None, printed: bool = False, extra: int = 0) -> Verdict:
    """Exact positive conjugacy test driven by the transit tables.

    Parametric families are instantiated up to parameter ``|u| + extra``.
    """
    p = p or bii_presentation()
    if len(u) != len(v):
        return Verdict(NO, reason="length")
    if b_count(u, p) != b_count(v, p):
        return Verdict(NO, reason="b-count")
    ku, ru = reduce_delta0(u, p)
    kv, rv = reduce_delta0(v, p)
    if ku != kv:
        raise AssertionError("equal b-counts must strip the same number of bbb")
    target = enumerate_class(p, rv).canonical
    start = enumerate_class(p, ru).canonical
    cap = len(u) + extra
    parent: dict[Word, tuple] = {start: (None, "")}
    todo = deque([start])
    while todo:
        cur = todo.popleft()
        if cur == target:
            break
        fam = bii_trans_min_table(cur, p, printed=printed)
        for A in fam.instantiate(max_param=cap):
            for q in sorted(transit_quotients(p, cur, A)):
                if q not in parent:
                    parent[q] = (cur, A)
                    todo.append(q)
    if target not in parent:
        return Verdict(NO, reason="transit-closure")
    chain = []
    node = target
    while parent[node][0] is not None:
        prev, A = parent[node]
        chain.append(A)
        node = prev
    chain.reverse()
    A = "".join(chain)
    if not words_equal(p, A + enumerate_class(p, v).canonical, enumerate_class(p, u).canonical + A):
        raise AssertionError("reconstructed conjugator fails to conjugate")
    return Verdict(YES, A, "transit-closure", tuple(chain))


def conjugacy_class(u: Word, p: Presentation | None = None, printed: bool = False, extra: int = 0) -> set[Word]:
    """All canonical positive conjugates of ``u`` reached through the tables."""
    p = p or bii_presentation()
    k, start = reduce_delta0(u, p)
    cap = len(u) + extra
    seen = {start}
    todo = deque([start])
    while todo:
        cur = todo.popleft()
        for A in bii_trans_min_table(cur, p, printed=printed).instantiate(max_param=cap):
            for q in transit_quotients(p, cur, A):
                if q not in seen:
                    seen.add(q)
                    todo.append(q)
    d = delta0(p) * k
    return {enumerate_class(p, d + x).canonical for x in seen}
