"""
The monoids G_{m,n} = < s, t_1..t_m, u_1..u_n | [s,t_1,..,t_m], [s,u_1,..,u_n], [t_i,u_j] >.

A bracket ``[x_1, .., x_k]`` makes every rotation of ``x_1 .. x_k`` equal,
and ``[t_i, u_j]`` is the commutator ``t_i u_j = u_j t_i``.  Every relation
keeps each letter count, so the count vector is a conjugacy invariant.

Notation used throughout (``i`` is 1 for the t-letters and 2 for the u-letters):

* ``D = s t_1..t_m u_1..u_n``, ``D_1 = s t_1..t_m``, ``D_2 = s u_1..u_n``;
* ``D_{i,v}`` is the quotient ``D_i = v D_{i,v}`` for a left divisor ``v``;
* ``C_i(w)`` is the longest suffix ``x_a x_{a+1} .. x_b`` of a non-empty pure
  word with consecutive indices, and ``w = R_i(w) C_i(w)``;
* ``Ct_i(w s)`` is ``C_i(w) s`` when ``C_i(w)`` ends with the last letter of
  the family and ``s`` otherwise, with ``w s = Rt_i(w s) Ct_i(w s)``.

Elements with no factor equal to ``D_1`` or ``D_2`` (the set ``W``) only
rewrite by commutators, which gives a block normal form
``w_0(t) w_0(u) s w_1(t) w_1(u) s .. s w_N(t) w_N(u)``.

:func:`gmn_property_P` runs the case analysis that produces, for each
possible first letter of a transit element, a transit element dividing
``D``; every produced element is checked with the word problem before it is
reported.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

from .conjugacy import (
    NO,
    NOT_FOUND,
    YES,
    Verdict,
    invariant_mismatch,
    orbit_closure,
    transit_quotients,
)
from .divisibility import left_divides, left_divisor_set
from .garside import QuasiCentralCert, central_power, fundamental_cert
from .words import Presentation, Word, enumerate_class, words_equal

__all__ = [
    "GmnContext",
    "GmnNormalForm",
    "GmnReduction",
    "GmnStrata",
    "LetterWitness",
    "McmFamily",
    "PropertyPReport",
    "consec_divisor_C",
    "delta_quotient",
    "gmn_conjugacy_class",
    "gmn_conjugate",
    "gmn_membership_W",
    "gmn_mcm_letter",
    "gmn_normal_form",
    "gmn_presentation",
    "gmn_reduce",
    "gmn_property_P",
    "gmn_strata",
    "left_letters",
    "tilde_C",
]


def _cyclic(names: list[str]) -> list[tuple[str, str]]:
    base = " ".join(names)
    return [(base, " ".join(names[r:] + names[:r])) for r in range(1, len(names))]


@dataclass(frozen=True)
class GmnContext:
    m: int
    n: int
    presentation: Presentation = field(compare=False, repr=False)

    @property
    def p(self) -> Presentation:
        return self.presentation

    @property
    def s(self) -> Word:
        return self.p.letter("s")

    @property
    def t(self) -> tuple[Word, ...]:
        return tuple(self.p.letter(f"t{i}") for i in range(1, self.m + 1))

    @property
    def u(self) -> tuple[Word, ...]:
        return tuple(self.p.letter(f"u{j}") for j in range(1, self.n + 1))

    def family(self, i: int) -> tuple[Word, ...]:
        if i == 1:
            return self.t
        if i == 2:
            return self.u
        raise ValueError("family index must be 1 or 2")

    def family_of(self, x: Word) -> int:
        """0 for ``s``, 1 for a t-letter, 2 for a u-letter."""
        if x == self.s:
            return 0
        return 1 if x in self.t else 2

    @property
    def delta(self) -> Word:
        return self.s + "".join(self.t) + "".join(self.u)

    @property
    def delta1(self) -> Word:
        return self.s + "".join(self.t)

    @property
    def delta2(self) -> Word:
        return self.s + "".join(self.u)

    def delta_i(self, i: int) -> Word:
        return {0: self.delta, 1: self.delta1, 2: self.delta2}[i]

    @property
    def L0(self) -> tuple[Word, ...]:
        return (self.s,) + self.t + self.u

    @property
    def L1(self) -> tuple[Word, ...]:
        return self.t

    @property
    def L2(self) -> tuple[Word, ...]:
        return self.u

    def show(self, w: Word) -> str:
        return self.p.show(w)

    def word(self, text: str) -> Word:
        return self.p.word(text)

    @property
    def cert(self) -> QuasiCentralCert:
        return _cert(self.m, self.n)


@lru_cache(maxsize=None)
def _context(m: int, n: int) -> GmnContext:
    names = ["s"] + [f"t{i}" for i in range(1, m + 1)] + [f"u{j}" for j in range(1, n + 1)]
    rels = _cyclic(names[: m + 1]) + _cyclic(["s"] + names[m + 1:])
    rels += [(f"t{i} u{j}", f"u{j} t{i}") for i in range(1, m + 1) for j in range(1, n + 1)]
    p = Presentation.from_names(names, rels, name=f"G_{{{m},{n}}}")
    return GmnContext(m, n, p)


@lru_cache(maxsize=None)
def _cert(m: int, n: int) -> QuasiCentralCert:
    ctx = _context(m, n)
    cert = fundamental_cert(ctx.p, ctx.delta)
    if cert is None:
        raise AssertionError("D is not fundamental")
    return cert


def gmn_presentation(m: int, n: int) -> GmnContext:
    """The shared context for ``G_{m,n}`` (one class cache per ``(m, n)``)."""
    if m < 2 or n < 2:
        raise ValueError("m and n must both be at least 2")
    return _context(m, n)


# -- notation --------------------------------------------------------------

def delta_quotient(ctx: GmnContext, i: int, v: Word) -> Word:
    """``D_{i,v}``: the canonical ``w`` with ``D_i = v w`` (``i = 0`` means ``D``)."""
    q = left_divides(ctx.p, v, ctx.delta_i(i))
    if q is None:
        raise ValueError(f"{ctx.show(v)} does not left-divide D_{i}")
    return q


def _pure(ctx: GmnContext, i: int, w: Word) -> None:
    fam = set(ctx.family(i))
    if any(x not in fam for x in w):
        raise ValueError(f"word {ctx.show(w)} is not over family {i}")


def consec_divisor_C(ctx: GmnContext, i: int, w: Word) -> tuple[Word, Word]:
    """Return ``(R_i(w), C_i(w))`` for a non-empty word over family ``i``."""
    if not w:
        raise ValueError("C_i is not defined for the empty word")
    _pure(ctx, i, w)
    fam = ctx.family(i)
    k = len(w) - 1
    while k > 0 and fam.index(w[k - 1]) == fam.index(w[k]) - 1:
        k -= 1
    return w[:k], w[k:]


def tilde_C(ctx: GmnContext, i: int, w: Word) -> tuple[Word, Word]:
    """Return ``(Rt_i(w s), Ct_i(w s))`` for a (possibly empty) word over family ``i``."""
    _pure(ctx, i, w)
    if not w:
        return "", ctx.s
    r, c = consec_divisor_C(ctx, i, w)
    if c[-1] == ctx.family(i)[-1]:
        return r, c + ctx.s
    return w, ctx.s


# -- the set W and its normal form ------------------------------------------

def gmn_membership_W(ctx: GmnContext, w: Word) -> bool:
    """No member of the class of ``w`` contains ``D_1`` or ``D_2`` as a factor.

    A factor equivalent to ``D_i`` can always be respelled literally inside
    the class, so a scan for the two literal words is exact.
    """
    d1, d2 = ctx.delta1, ctx.delta2
    return not any(d1 in m or d2 in m for m in enumerate_class(ctx.p, w).members)


def sufficient_W(ctx: GmnContext, w: Word) -> bool:
    """The sufficient test: neither ``D_{1,s}`` nor ``D_{2,s}`` left-divides ``w``."""
    return all(left_divides(ctx.p, delta_quotient(ctx, i, ctx.s), w) is None for i in (1, 2))


@dataclass(frozen=True)
class GmnNormalForm:
    """Blocks ``((w_0(t), w_0(u)), .., (w_N(t), w_N(u)))`` separated by ``s``."""

    blocks: tuple

    @property
    def N(self) -> int:
        return len(self.blocks) - 1

    def wt(self, k: int) -> Word:
        return self.blocks[k][0]

    def wu(self, k: int) -> Word:
        return self.blocks[k][1]

    def part(self, i: int, k: int) -> Word:
        return self.blocks[k][i - 1]

    def word(self, ctx: GmnContext) -> Word:
        return ctx.s.join(a + b for a, b in self.blocks)

    def show(self, ctx: GmnContext) -> str:
        out = []
        for k, (a, b) in enumerate(self.blocks):
            out.append(f"[{ctx.show(a)} | {ctx.show(b)}]")
        return " s ".join(out)


def gmn_normal_form(ctx: GmnContext, w: Word) -> GmnNormalForm:
    if not gmn_membership_W(ctx, w):
        raise ValueError(f"{ctx.show(w)} is not in W")
    tset = set(ctx.t)
    blocks = []
    for seg in w.split(ctx.s):
        blocks.append(("".join(x for x in seg if x in tset), "".join(x for x in seg if x not in tset)))
    nf = GmnNormalForm(tuple(blocks))
    if not words_equal(ctx.p, nf.word(ctx), w):
        raise AssertionError("block reassembly left the class")
    return nf


# -- strata ----------------------------------------------------------------

@dataclass(frozen=True)
class GmnStrata:
    k: int
    lam1: int
    lam2: int
    mu1: int
    mu2: int
    remain: Word  # w = D^k remain
    rest: Word  # remain = D_1^lam1 D_2^lam2 D_{1,s}^mu1 D_{2,s}^mu2 rest

    @property
    def case(self) -> str:
        if self.k > 0:
            return "k>0"
        if self.lam1 > 0:
            return "I"
        if self.lam2 > 0:
            return "II"
        return "III"


def _strip(ctx: GmnContext, prefix: Word, w: Word) -> tuple[int, Word]:
    k = 0
    while prefix and len(w) >= len(prefix):
        q = left_divides(ctx.p, prefix, w)
        if q is None:
            break
        k, w = k + 1, q
    return k, w


def gmn_strata(ctx: GmnContext, w: Word) -> GmnStrata:
    """Greedy left extraction: ``D^k``, then ``D_i^lam``, then ``D_{1,s}^mu1 D_{2,s}^mu2``.

    In case I only ``mu1`` is extracted and in case II only ``mu2``.
    """
    p = ctx.p
    w = enumerate_class(p, w).canonical
    k, remain = _strip(ctx, ctx.delta, w)
    lam1, r1 = _strip(ctx, ctx.delta1, remain)
    lam2, r2 = _strip(ctx, ctx.delta2, remain)
    if lam1 and lam2:
        raise AssertionError("both D_1 and D_2 divide the remainder")
    d1s, d2s = delta_quotient(ctx, 1, ctx.s), delta_quotient(ctx, 2, ctx.s)
    mu1 = mu2 = 0
    if lam1:
        rest = r1
        mu1, rest = _strip(ctx, d1s, rest)
    elif lam2:
        rest = r2
        mu2, rest = _strip(ctx, d2s, rest)
    else:
        mu1, rest = _strip(ctx, d1s, remain)
        mu2, rest = _strip(ctx, d2s, rest)
    return GmnStrata(k, lam1, lam2, mu1, mu2, remain, rest)


def left_letters(ctx: GmnContext, w: Word) -> tuple[Word, ...]:
    """``L(w)``: the letters dividing ``w`` from the left."""
    heads = {m[0] for m in enumerate_class(ctx.p, w).members if m}
    return tuple(x for x in ctx.L0 if x in heads)


# -- the reduction lemma ------------------------------------------------------

@dataclass(frozen=True)
class GmnReduction:
    """Solution of ``v X = w Y`` for a letter ``v`` and a non-empty word ``w``.

    ``case`` is one of ``i`` .. ``vi``; ``middle`` is the pure word ``w(u)``
    (or ``w(t)``) that cases ``v`` and ``vi`` insert, and ``Z`` the common
    tail.
    """

    case: str
    Z: Word
    middle: Word = ""


def gmn_reduce(ctx: GmnContext, v: Word, X: Word, w: Word, Y: Word) -> GmnReduction:
    """Find the decomposition promised by the reduction lemma.

    * ``v = w``: ``X = Y``;
    * ``t_i X = u_j Y``: ``X = u_j Z``, ``Y = t_i Z`` (and the mirror);
    * ``s X = w(t) Y``: ``X = D_{1,s} R_1(w) Z``, ``Y = D_{1,C_1(w)} Z`` (and for u);
    * ``t_i X = w(t) Y`` with ``w`` not starting with ``t_i``:
      ``X = w(u) D_{1,t_i} R_1(w) Z``, ``Y = w(u) D_{1,C_1(w)} Z`` for some
      ``w(u)`` in ``F_{2,rm}`` (and the mirror).

    Raises ``AssertionError`` when the promised decomposition does not exist
    and ``ValueError`` when the equation is not of one of these shapes.
    """
    p = ctx.p
    if len(v) != 1 or not w:
        raise ValueError("v must be a letter and w non-empty")
    if not words_equal(p, v + X, w + Y):
        raise ValueError("the equation does not hold")
    fv = ctx.family_of(v)
    fams = {ctx.family_of(x) for x in w}
    if len(w) == 1 and w == v:
        if not words_equal(p, X, Y):
            raise AssertionError("left cancellation failed")
        return GmnReduction("i", enumerate_class(p, X).canonical)
    if len(w) == 1 and {fv, ctx.family_of(w)} == {1, 2}:
        Z = left_divides(p, w, X)
        if Z is None or not words_equal(p, Y, v + Z):
            raise AssertionError("case (ii) decomposition not found")
        return GmnReduction("ii", Z)
    if len(fams) != 1 or 0 in fams:
        raise ValueError("w must be a letter or a pure t- or u-word")
    i = fams.pop()
    R, C = consec_divisor_C(ctx, i, w)
    if fv == 0:
        Z = left_divides(p, delta_quotient(ctx, i, C), Y)
        if Z is None or not words_equal(p, X, delta_quotient(ctx, i, ctx.s) + R + Z):
            raise AssertionError(f"case ({'iii' if i == 1 else 'iv'}) decomposition not found")
        return GmnReduction("iii" if i == 1 else "iv", Z)
    if fv != i:
        raise ValueError("letter and word belong to different families")
    if w[0] == v:
        raise ValueError("v left-divides w; cancel it first")
    j = _other(i)
    tail = delta_quotient(ctx, i, C)
    head = delta_quotient(ctx, i, v)
    for mid in f_rm(ctx, j, len(Y) - len(tail)):
        Z = left_divides(p, mid + tail, Y)
        if Z is not None and words_equal(p, X, mid + head + R + Z):
            return GmnReduction("v" if i == 1 else "vi", Z, mid)
    raise AssertionError(f"case ({'v' if i == 1 else 'vi'}) decomposition not found")


# -- minimal common multiples with a letter ---------------------------------

@dataclass(frozen=True)
class McmFamily:
    """Either ``{head tail}`` (``family`` is 0) or
    ``{head w' tail : w' in F_{family,rm}}``."""

    head: Word
    tail: Word
    family: int = 0
    branch: str = ""

    @property
    def singleton(self) -> bool:
        return self.family == 0

    def instantiate(self, ctx: GmnContext, max_len: int) -> list[Word]:
        if self.singleton:
            w = self.head + self.tail
            return [w] if len(w) <= max_len else []
        out = []
        for v in f_rm(ctx, self.family, max_len - len(self.head) - len(self.tail)):
            out.append(self.head + v + self.tail)
        return out

    def show(self, ctx: GmnContext) -> str:
        if self.singleton:
            return "{" + ctx.show(self.head + self.tail) + "}"
        name = "t" if self.family == 1 else "u"
        return "{" + f"{ctx.show(self.head)} . w'({name}) . {ctx.show(self.tail)}" + f" : w'({name}) in F_{self.family},rm" + "}"


def f_rm(ctx: GmnContext, i: int, max_len: int, include_empty: bool = True) -> list[Word]:
    """Words over family ``i`` of length <= ``max_len`` not ending with the full run."""
    fam = ctx.family(i)
    run = "".join(fam)
    out = [""] if include_empty and max_len >= 0 else []
    for n in range(1, max_len + 1):
        for tup in product(fam, repeat=n):
            v = "".join(tup)
            if not v.endswith(run):
                out.append(v)
    return out


def _other(i: int) -> int:
    return 3 - i


def _last_split(ctx: GmnContext, i: int, nf: GmnNormalForm) -> tuple[Word, Word, Word]:
    """``(Ct_i(w_{N-1} s), D_{i,Ct_i(w_{N-1} s)}, w_N)`` for family ``i``."""
    prev = tilde_C(ctx, i, nf.part(i, nf.N - 1))[1]
    return prev, delta_quotient(ctx, i, prev), nf.part(i, nf.N)


def _letter_branch(ctx: GmnContext, i: int, nf: GmnNormalForm) -> tuple[str, Word, Word]:
    """Shared test of the two letter lemmas.

    Returns ``("divides", D_{i, Ct_i(w_{N-1} s) w_N}, "")`` or
    ``("family", "", D_{i, C_i(w_N)})``.
    """
    prev, q, wN = _last_split(ctx, i, nf)
    if left_divides(ctx.p, wN, q) is not None:
        return "divides", delta_quotient(ctx, i, prev + wN), ""
    return "family", "", delta_quotient(ctx, i, consec_divisor_C(ctx, i, wN)[1])


def gmn_mcm_letter(ctx: GmnContext, x: Word, w: Word) -> McmFamily:
    """Minimal common right multiples of a letter and an element of ``W``.

    For a t- or u-letter ``x`` this is ``mcm_r({x, w})`` (``w`` must contain
    ``s`` and ``x`` must not left-divide it).  For ``x = s`` it is
    ``mcm_r({s, w s})`` with ``s`` not left-dividing ``w``.
    """
    p = ctx.p
    nf = gmn_normal_form(ctx, w)
    fam = ctx.family_of(x)
    if fam == 0:
        if w and left_divides(p, ctx.s, w) is not None:
            raise ValueError("s left-divides w")
        t0, u0 = nf.wt(0), nf.wu(0)
        tail1 = delta_quotient(ctx, 1, tilde_C(ctx, 1, nf.wt(nf.N))[1])
        tail2 = delta_quotient(ctx, 2, tilde_C(ctx, 2, nf.wu(nf.N))[1])
        if t0 and not u0:
            return McmFamily(w + ctx.s, tail1, 0, "t0")
        if u0 and not t0:
            return McmFamily(w + ctx.s, tail2, 0, "u0")
        if t0 and u0:
            return McmFamily(w + ctx.s, tail1 + tail2, 0, "t0u0")
        raise ValueError("w must not be divisible by s (w_0 blocks are both empty)")
    if nf.N == 0:
        raise ValueError("w must contain the letter s")
    if left_divides(p, x, w) is not None:
        raise ValueError("x left-divides w")
    kind, single, tail = _letter_branch(ctx, fam, nf)
    if kind == "divides":
        return McmFamily(w, single, 0, "divides")
    return McmFamily(w, tail, _other(fam), "family")


# -- property P ------------------------------------------------------------

@dataclass(frozen=True)
class LetterWitness:
    letter: Word
    branch: str
    candidates: tuple  # words produced by the case analysis
    witnesses: tuple  # the candidates that are transit elements dividing D


@dataclass(frozen=True)
class PropertyPReport:
    word: Word
    strata: GmnStrata
    left: tuple
    case: str
    letters: tuple  # LetterWitness per letter of L0

    @property
    def holds(self) -> bool:
        return all(lw.witnesses for lw in self.letters)

    @property
    def scanned(self) -> tuple:
        """Letters whose witness came from the divisor scan rather than a formula."""
        return tuple(lw.letter for lw in self.letters if lw.branch.endswith("scan"))

    def show(self, ctx: GmnContext) -> str:
        lines = [f"w = {ctx.show(self.word)}  case {self.case}  L(w) = {{{', '.join(ctx.show(x) for x in self.left)}}}"]
        for lw in self.letters:
            ws = ", ".join(ctx.show(a) for a in lw.witnesses) or "NONE"
            lines.append(f"  {ctx.show(lw.letter)}: {lw.branch} -> {ws}")
        return "\n".join(lines)


def _is_witness(ctx: GmnContext, w: Word, A: Word) -> bool:
    return bool(A) and left_divides(ctx.p, A, ctx.delta) is not None and bool(transit_quotients(ctx.p, w, A))


def _scan(ctx: GmnContext, w: Word, x: Word) -> tuple[Word, ...]:
    """Left divisors of ``D`` starting with ``x`` that are transit elements of ``w``, minimal ones only."""
    divs = sorted(
        (c for c in left_divisor_set(ctx.p, ctx.delta).divisors if c.length and any(m[0] == x for m in c.members)),
        key=lambda c: (c.length, c.canonical),
    )
    found: list[Word] = []
    for c in divs:
        if any(left_divides(ctx.p, f, c.canonical) is not None for f in found):
            continue
        if transit_quotients(ctx.p, w, c.canonical):
            found.append(c.canonical)
    return tuple(found)


def _cross(ctx: GmnContext, i: int, nf: GmnNormalForm, with_other: bool, other_free: bool) -> tuple[str, list[Word]]:
    """Candidates for a first letter of family ``i`` not in ``L(w)``.

    ``nf`` is the normal form of the element the letter lemma applies to.
    ``with_other`` appends ``D_{j, Ct_j(w_N(j) s)}`` to the ``w'_0 = e``
    candidate (the other family's first block is non-empty).  ``other_free``
    says letters of the other family may still start a minimal transit, so
    non-empty ``w'_0`` must be considered.
    """
    j = _other(i)
    kind, single, base = _letter_branch(ctx, i, nf)
    if kind == "divides":
        return "-1", [single]
    wNj = nf.part(j, nf.N)
    first = base + (delta_quotient(ctx, j, tilde_C(ctx, j, wNj)[1]) if with_other else "")
    cands = [first]
    if not other_free:
        return "-2", cands
    room = len(ctx.delta) - len(base) - 1
    for v in f_rm(ctx, j, room, include_empty=False):
        ct_long = tilde_C(ctx, j, wNj + v)[1]
        ct_short = tilde_C(ctx, j, v)[1]
        if words_equal(ctx.p, ct_long, ct_short):
            cands.append(base + delta_quotient(ctx, j, ctx.s))
        else:
            q = left_divides(ctx.p, ct_long, ctx.delta_i(j))
            if q is not None:
                cands.append(v + base + q)
    return "-2", list(dict.fromkeys(cands))


def _s_candidate(ctx: GmnContext, nf: GmnNormalForm) -> Word | None:
    t0, u0 = nf.wt(0), nf.wu(0)
    tail1 = delta_quotient(ctx, 1, tilde_C(ctx, 1, nf.wt(nf.N))[1])
    tail2 = delta_quotient(ctx, 2, tilde_C(ctx, 2, nf.wu(nf.N))[1])
    if t0 and not u0:
        return ctx.s + tail1
    if u0 and not t0:
        return ctx.s + tail2
    if t0 and u0:
        return ctx.s + tail1 + tail2
    return None


def _nf_or_none(ctx: GmnContext, w: Word) -> GmnNormalForm | None:
    return gmn_normal_form(ctx, w) if gmn_membership_W(ctx, w) else None


def gmn_property_P(ctx: GmnContext, w: Word) -> PropertyPReport:
    """Run the case analysis for ``P(w; D)`` and verify every produced element.

    Letters of ``L(w)`` are their own witnesses.  For every other letter the
    branch formula is evaluated; where a formula needs data the element does
    not have (for instance a last block when ``w`` contains no ``s``) the
    witness is taken from a scan of the left divisors of ``D`` and the branch
    is labelled ``scan``.
    """
    p = ctx.p
    w = enumerate_class(p, w).canonical
    st = gmn_strata(ctx, w)
    left = left_letters(ctx, w)
    lset = set(left)
    letters = []

    def done(x: Word, branch: str, cands) -> None:
        cands = [enumerate_class(p, c).canonical for c in cands if c is not None]
        cands = list(dict.fromkeys(cands))
        ok = tuple(c for c in cands if _is_witness(ctx, w, c))
        if not ok and not cands:
            branch = branch + " scan"
            ok = _scan(ctx, w, x)
        letters.append(LetterWitness(x, branch, tuple(cands), ok))

    if not w:
        case = "empty"
    elif st.k > 0:
        case = "k>0"
    elif st.lam1 or st.lam2:
        i = 1 if st.lam1 else 2
        case = "I" if i == 1 else "II"
        nf = _nf_or_none(ctx, st.rest)
        sub = "1" if nf is not None and nf.N == 0 else "2"
        case += f"-{sub}"
    else:
        case = "III"
    for x in ctx.L0:
        if x in lset or not w:
            done(x, "in L(w)", [x])
            continue
        fx = ctx.family_of(x)
        if case.startswith(("I-", "II-")):
            i = 1 if case.startswith("I-") else 2
            nf = _nf_or_none(ctx, st.rest)
            label = f"{case}, first letter {ctx.show(x)}"
            if fx != _other(i) or nf is None:
                done(x, label, [])
                continue
            j = fx
            if nf.N == 0:
                w0 = nf.part(j, 0)
                done(x, label, [delta_quotient(ctx, j, consec_divisor_C(ctx, j, w0)[1])] if w0 else [])
            else:
                br, c = _cross(ctx, j, nf, with_other=False, other_free=False)
                done(x, f"{case}{br}, first letter {ctx.show(x)}", c)
            continue
        # case III: dispatch on L(w)
        fams = {ctx.family_of(y) for y in left}
        t_all = set(ctx.t) <= lset
        u_all = set(ctx.u) <= lset
        core = w
        if t_all and 2 in fams:
            # drop D_{1,s}^mu1 and work with D_{2,s}^mu2 rest
            core = delta_quotient(ctx, 2, ctx.s) * st.mu2 + st.rest
        elif u_all and 1 in fams:
            core = _strip(ctx, delta_quotient(ctx, 2, ctx.s), w)[1]
        nf = _nf_or_none(ctx, core)
        if nf is None:
            done(x, "III outside W", [])
            continue
        if t_all and len(left) == ctx.m + 1 and 2 in fams:
            sub, i = "1", 1
        elif u_all and len(left) == ctx.n + 1 and 1 in fams:
            sub, i = "2", 2
        elif fams == {1, 2} and len(left) == 2:
            sub, i = "3", 0
        elif fams == {1} and len(left) == 1:
            sub, i = "4", 1
        elif fams == {2} and len(left) == 1:
            sub, i = "5", 2
        elif fams == {0}:
            sub, i = "6", 0
        else:
            done(x, "III unclassified L(w)", [])
            continue
        label = f"III-{sub}, first letter {ctx.show(x)}"
        if fx == 0:
            done(x, label, [_s_candidate(ctx, nf)])
            continue
        if nf.N == 0:
            done(x, label, [])
            continue
        if sub in ("1", "2"):
            # the other family is entirely in L(w): only w'_0 = e matters
            br, c = _cross(ctx, fx, nf, with_other=False, other_free=False)
        elif sub == "3":
            br, c = _cross(ctx, fx, nf, with_other=True, other_free=True)
        elif sub in ("4", "5"):
            # w_0 of the other family is empty for the letter of L(w)'s family
            br, c = _cross(ctx, fx, nf, with_other=(fx != i), other_free=True)
        else:
            br, c = _cross(ctx, fx, nf, with_other=False, other_free=True)
        done(x, f"III-{sub}{br}, first letter {ctx.show(x)}", c)
    return PropertyPReport(w, st, left, case, tuple(letters))


# -- conjugacy ---------------------------------------------------------------

def gmn_conjugate(ctx: GmnContext, u: Word, v: Word) -> Verdict:
    """Positive conjugacy through the orbit of ``u`` under divisors of ``D``.

    The answer is definitive when property P is verified for every element
    of the orbit; otherwise a negative answer is reported as not found.
    """
    p = ctx.p
    why = invariant_mismatch(p, u, v)
    if why:
        return Verdict(NO, reason=why)
    cert = ctx.cert
    if words_equal(p, u, v):
        lam = central_power(p, cert)
        return Verdict(YES, lam, "equal", (lam,))
    st = orbit_closure(p, u, ctx.delta, check_delta=False)
    target = enumerate_class(p, v)
    if target in st.orbit:
        ch = st.chain(target.canonical)
        A = "".join(ch)
        if not words_equal(p, A + target.canonical, u + A):
            raise AssertionError("orbit chain does not conjugate")
        return Verdict(YES, A, "orbit", tuple(ch))
    unverified = [c.canonical for c in sorted(st.orbit, key=lambda c: c.canonical) if not gmn_property_P(ctx, c.canonical).holds]
    if unverified:
        return Verdict(NOT_FOUND, reason="orbit; property P unverified for " + ", ".join(ctx.show(x) for x in unverified))
    return Verdict(NO, reason="orbit")


def gmn_conjugacy_class(ctx: GmnContext, u: Word) -> tuple[frozenset, bool]:
    """Canonical words of the orbit of ``u`` and whether property P was
    verified on every orbit element (which makes the orbit the whole
    positive conjugacy class)."""
    st = orbit_closure(ctx.p, u, ctx.delta, check_delta=False)
    verified = all(gmn_property_P(ctx, c.canonical).holds for c in st.orbit)
    return frozenset(c.canonical for c in st.orbit), verified
