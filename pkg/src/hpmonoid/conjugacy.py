"""
Transit elements, orbits and conjugacy.

``A`` is a (right) transit element of ``w`` when ``A Q = w A`` for some ``Q``,
i.e. ``A`` left-divides ``w A``; ``Q`` is then the conjugate reached through
``A``.  Given a fundamental element ``D`` the orbit of ``w`` is grown by
allowing only transit elements that left-divide ``D``.  When every transit
element of every orbit member is left-divisible by such a small transit
element (property P), the orbit is the full positive conjugacy set.

Two independent bounded oracles are provided for the positive conjugacy set:

* ``exhaustive``: try every conjugator of length <= L;
* ``chain``: walk minimal transit elements with a shortest-path search.  In a
  left-cancellative monoid every transit element factors as a minimal transit
  element followed by a transit element of the conjugate it produces, so the
  two methods agree for every bound.

The group bridge at the end turns words with inverse letters into
``Lambda^-k P`` with ``P`` positive and ``Lambda`` the central power of a
fundamental element, and reduces equality and conjugacy in the group to the
monoid.
"""

from __future__ import annotations

import heapq
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable

from .divisibility import left_divides, left_divisor_set, left_quotients
from .garside import QuasiCentralCert, central_power, fundamental_cert
from .words import (
    EquivClass,
    Presentation,
    PresentationError,
    Word,
    classes_of_length,
    enumerate_class,
    preserved_letters,
    words_equal,
)

__all__ = [
    "ConjugacySet",
    "GroupWord",
    "Template",
    "TransitFamily",
    "OrbitState",
    "PVerdict",
    "Verdict",
    "are_conjugate",
    "conj_oracle_bounded",
    "group_conjugate",
    "group_equal",
    "group_normalize",
    "minimal_transits",
    "orbit_closure",
    "orbit_step",
    "parse_group_word",
    "property_P_probe",
    "trans_min_bounded",
    "transit_elements_bounded",
    "transit_quotients",
]

YES, NO, NOT_FOUND, INCONCLUSIVE = "yes", "no", "not-found-in-orbit", "inconclusive"


def _key(c: EquivClass):
    return (c.length, c.canonical)


def transit_quotients(p: Presentation, w: Word, A: Word) -> set[Word]:
    """Canonical ``Q`` with ``A Q = w A``; empty when ``A`` is not a transit element."""
    return left_quotients(p, A, w + A)


# -- symbolic transit families -------------------------------------------

@dataclass(frozen=True)
class Template:
    """A word ``x_1^(e_1(i)) ... x_k^(e_k(i))`` with ``e_j(i) = coef_j * i + offset_j``.

    ``blocks`` holds ``(word, coef, offset)`` triples; the parameter ``i``
    ranges over ``lo <= i <= hi`` (``hi=None`` means unbounded).
    """

    blocks: tuple
    lo: int = 0
    hi: int | None = None

    def instance(self, i: int) -> Word:
        return "".join(w * (c * i + o) for w, c, o in self.blocks)

    def length(self, i: int) -> int:
        return sum(len(w) * (c * i + o) for w, c, o in self.blocks)

    def instances(self, max_len: int | None = None, max_param: int | None = None) -> list[Word]:
        """Instances in parameter order, stopping at the length or parameter cap."""
        if max_len is None and max_param is None and self.hi is None:
            raise ValueError("unbounded template needs a cap")
        growth = sum(len(w) * c for w, c, _ in self.blocks)
        out = []
        i = self.lo
        while True:
            if self.hi is not None and i > self.hi:
                break
            if max_param is not None and i > max_param:
                break
            n = self.length(i)
            if max_len is not None and n > max_len:
                if growth > 0:
                    break
            else:
                out.append(self.instance(i))
            if growth <= 0 and self.hi is None and max_param is None:
                break
            i += 1
        return out

    def show(self, p: Presentation) -> str:
        parts = []
        for w, c, o in self.blocks:
            name = p.compact(w)
            base = name if len(w) == 1 else f"({name})"
            if c == 0:
                if o:
                    parts.append(name if o == 1 else f"{base}^{o}")
            else:
                e = "i" if c == 1 else f"{c}i"
                if o:
                    e = f"({e}{o:+d})"
                parts.append(f"{base}^{e}")
        rng = f"i>={self.lo}" if self.hi is None else f"{self.lo}<=i<={self.hi}"
        return " ".join(parts) + f" [{rng}]"


@dataclass(frozen=True)
class TransitFamily:
    finite: tuple
    parametric: tuple = ()
    label: str = ""

    def instantiate(self, max_len: int | None = None, max_param: int | None = None) -> list[Word]:
        words = [w for w in self.finite if max_len is None or len(w) <= max_len]
        for t in self.parametric:
            words.extend(t.instances(max_len=max_len, max_param=max_param))
        return words

    def classes(self, p: Presentation, max_len: int) -> set[EquivClass]:
        return {enumerate_class(p, w) for w in self.instantiate(max_len=max_len)}

    def show(self, p: Presentation) -> str:
        items = [p.compact(w) for w in self.finite] + [t.show(p) for t in self.parametric]
        return "{" + ", ".join(items) + "}"


# -- transit elements ----------------------------------------------------

def transit_elements_bounded(p: Presentation, w: Word, L: int) -> set[EquivClass]:
    """All transit classes of ``w`` with length 1..L (exhaustive scan)."""
    out = set()
    for n in range(1, L + 1):
        for c in classes_of_length(p, n):
            if transit_quotients(p, w, c.canonical):
                out.add(c)
    return out


@dataclass(frozen=True)
class MinimalTransit:
    element: EquivClass
    conjugates: tuple  # canonical Q with A Q = w A


def minimal_transits(p: Presentation, w: Word, L: int) -> list[MinimalTransit]:
    """Minimal transit elements of ``w`` of length <= ``L``, grown level by level.

    Level ``l`` keeps the classes of length ``l`` none of whose non-trivial
    left divisors is a transit element.  A class of length ``l+1`` can only
    be a minimal transit element (or stay transit-free) if all its left
    divisors of length ``l`` sit in that level, so candidates are generated
    as one-letter extensions of the level and filtered by that test.
    """
    level = [""]
    found: list[MinimalTransit] = []
    for n in range(1, L + 1):
        if not level:
            break
        level_set = set(level)
        cand: dict[Word, EquivClass] = {}
        for B in level:
            for x in p.letters:
                c = enumerate_class(p, B + x)
                cand.setdefault(c.canonical, c)
        nxt = []
        for A in sorted(cand):
            c = cand[A]
            if n > 1:
                prefixes = {m[: n - 1] for m in c.members}
                if any(enumerate_class(p, pre).canonical not in level_set for pre in prefixes):
                    continue
            qs = transit_quotients(p, w, A)
            if qs:
                found.append(MinimalTransit(c, tuple(sorted(qs))))
            else:
                nxt.append(A)
        level = nxt
    return found


def trans_min_bounded(p: Presentation, w: Word, L: int) -> set[EquivClass]:
    """Minimal transit elements of length <= ``L`` (minimality is exact: every
    left divisor of a short element is shorter still)."""
    return {m.element for m in minimal_transits(p, w, L)}


# -- bounded conjugacy oracle --------------------------------------------

@dataclass(frozen=True)
class ConjugacySet:
    seed: EquivClass
    bound: int
    method: str
    members: frozenset
    # canonical -> (conjugator, previous canonical) for the chain method
    witnesses: dict = field(default_factory=dict, compare=False, repr=False)

    def __contains__(self, c: object) -> bool:
        return c in self.members

    def canonicals(self) -> set[Word]:
        return {c.canonical for c in self.members}


def conj_oracle_bounded(p: Presentation, w: Word, L: int, method: str = "chain") -> ConjugacySet:
    """``{V : A V = w A, 1 <= |A| <= L} ∪ {w}``: a lower bound for the positive conjugacy set."""
    if L < 1:
        raise ValueError("bound must be at least 1")
    seed = enumerate_class(p, w)
    if method == "exhaustive":
        found = {seed}
        for n in range(1, L + 1):
            for c in classes_of_length(p, n):
                for q in transit_quotients(p, seed.canonical, c.canonical):
                    found.add(enumerate_class(p, q))
        return ConjugacySet(seed, L, method, frozenset(found))
    if method != "chain":
        raise ValueError(f"unknown method {method!r}")
    dist = {seed.canonical: 0}
    via: dict[Word, tuple] = {}
    heap = [(0, seed.canonical)]
    cache: dict[Word, list[MinimalTransit]] = {}
    while heap:
        d, v = heapq.heappop(heap)
        if d > dist[v]:
            continue
        budget = L - d
        if budget <= 0:
            continue
        mins = cache.get(v)
        if mins is None or (mins and max(m.element.length for m in mins) < budget and cache.get(("b", v), 0) < budget):
            mins = minimal_transits(p, v, budget)
            cache[v] = mins
            cache[("b", v)] = budget
        for m in mins:
            if m.element.length > budget:
                continue
            nd = d + m.element.length
            for q in m.conjugates:
                if nd < dist.get(q, L + 1):
                    dist[q] = nd
                    via[q] = (m.element.canonical, v)
                    heapq.heappush(heap, (nd, q))
    members = frozenset(enumerate_class(p, q) for q in dist)
    return ConjugacySet(seed, L, method, members, via)


def conjugator_from_chain(cs: ConjugacySet, target: Word) -> Word | None:
    """Concatenate the minimal transit elements leading from the seed to ``target``."""
    if target == cs.seed.canonical:
        return ""
    parts = []
    cur = target
    while cur != cs.seed.canonical:
        if cur not in cs.witnesses:
            return None
        a, prev = cs.witnesses[cur]
        parts.append(a)
        cur = prev
    return "".join(reversed(parts))


# -- orbits ------------------------------------------------------------------

@dataclass
class OrbitState:
    """Levels ``levels[k-1] = O^(k)(w; delta)``; ``parent`` maps a class to the
    (previous class, divisor) pair that first produced it."""

    seed: EquivClass
    delta: Word
    levels: list = field(default_factory=list)
    stabilized_at: int | None = None
    parent: dict = field(default_factory=dict)

    @property
    def orbit(self) -> frozenset:
        return self.levels[-1] if self.levels else frozenset()

    def chain(self, target: Word) -> list[Word] | None:
        """Divisors ``delta_1 ... delta_k`` with ``A = delta_1 ... delta_k`` and ``A V = w A``."""
        if target == self.seed.canonical:
            return []
        out = []
        cur = target
        while cur != self.seed.canonical:
            if cur not in self.parent:
                return None
            prev, a = self.parent[cur]
            out.append(a)
            cur = prev
        return list(reversed(out))


def _delta_divisors(p: Presentation, delta: Word) -> list[Word]:
    return [c.canonical for c in sorted(left_divisor_set(p, delta).divisors, key=_key) if c.length > 0]


def orbit_step(p: Presentation, current: Iterable[EquivClass], delta: Word, _parent: dict | None = None) -> set[EquivClass]:
    """One application of the orbit map; the result contains ``current``."""
    current = sorted(set(current), key=_key)
    out = set(current)
    divisors = _delta_divisors(p, delta)
    for U in current:
        for A in divisors:
            for q in transit_quotients(p, U.canonical, A):
                c = enumerate_class(p, q)
                if c not in out:
                    out.add(c)
                    if _parent is not None and q not in _parent:
                        _parent[q] = (U.canonical, A)
    return out


def orbit_closure(p: Presentation, w: Word, delta: Word, check_delta: bool = True) -> OrbitState:
    if check_delta and fundamental_cert(p, delta) is None:
        raise ValueError("delta is not a fundamental element")
    seed = enumerate_class(p, w)
    st = OrbitState(seed, enumerate_class(p, delta).canonical)
    parent: dict = {}
    cur = frozenset(orbit_step(p, {seed}, delta, parent))
    st.levels.append(cur)
    # the number of classes of length |w| bounds the number of strict growths
    while True:
        nxt = frozenset(orbit_step(p, cur, delta, parent))
        if nxt == cur:
            st.stabilized_at = len(st.levels)
            break
        st.levels.append(nxt)
        cur = nxt
    st.parent = parent
    return st


# -- property P ------------------------------------------------------------

@dataclass(frozen=True)
class PVerdict:
    holds: bool
    bound: int
    counterexample: Word | None = None
    checked: int = 0


def property_P_probe(p: Presentation, w: Word, delta: Word, L: int) -> PVerdict:
    """Every minimal transit element of length <= ``L`` must left-divide ``delta``.

    For a minimal transit element ``A`` the only transit left divisor is ``A``
    itself, so the defining condition reduces to ``A |_l delta``; any longer
    transit element is left-divisible by a minimal one.
    """
    mins = sorted(trans_min_bounded(p, w, L), key=_key)
    for c in mins:
        if left_divides(p, c.canonical, delta) is None:
            return PVerdict(False, L, c.canonical, len(mins))
    return PVerdict(True, L, None, len(mins))


# -- conjugacy decision ----------------------------------------------------

@dataclass(frozen=True)
class Verdict:
    status: str
    conjugator: Word | None = None
    reason: str = ""
    chain: tuple = ()

    @property
    def yes(self) -> bool:
        return self.status == YES


def invariant_mismatch(p: Presentation, u: Word, v: Word) -> str | None:
    if len(u) != len(v):
        return "length"
    keep = preserved_letters(p)
    cu, cv = Counter(u), Counter(v)
    if any(cu[x] != cv[x] for x in keep):
        return "letter-count"
    return None


def are_conjugate(
    p: Presentation,
    u: Word,
    v: Word,
    delta: Word,
    assume_P: bool = False,
    cert: QuasiCentralCert | None = None,
) -> Verdict:
    """Decide whether ``A v = u A`` has a positive solution ``A``.

    A negative answer is definitive when an invariant separates ``u`` and
    ``v`` or when the caller asserts property P for every orbit element;
    otherwise it is reported as ``not-found-in-orbit``.
    """
    why = invariant_mismatch(p, u, v)
    if why:
        return Verdict(NO, reason=why)
    cert = cert or fundamental_cert(p, delta)
    if cert is None:
        raise ValueError("delta is not a fundamental element")
    if words_equal(p, u, v):
        lam = central_power(p, cert)
        return Verdict(YES, lam, "equal", (lam,))
    st = orbit_closure(p, u, delta, check_delta=False)
    target = enumerate_class(p, v)
    if target in st.orbit:
        ch = st.chain(target.canonical)
        A = "".join(ch)
        assert words_equal(p, A + target.canonical, u + A)
        return Verdict(YES, A, "orbit", tuple(ch))
    return Verdict(NO if assume_P else NOT_FOUND, reason="orbit")


# -- group bridge ----------------------------------------------------------

@dataclass(frozen=True)
class GroupWord:
    letters: tuple  # (letter code, +1 | -1)

    def is_positive(self) -> bool:
        return all(e == 1 for _, e in self.letters)

    def inverse(self) -> "GroupWord":
        return GroupWord(tuple((x, -e) for x, e in reversed(self.letters)))

    def __add__(self, other: "GroupWord") -> "GroupWord":
        return GroupWord(self.letters + other.letters)

    def show(self, p: Presentation) -> str:
        if not self.letters:
            return "e"
        return " ".join(p.show(x) + ("" if e == 1 else "^-1") for x, e in self.letters)


def parse_group_word(p: Presentation, text: str) -> GroupWord:
    """Whitespace-separated letters; ``x^-1`` is an inverse letter, ``e`` is empty."""
    out = []
    for tok in text.split():
        exp = 1
        for suffix in ("^-1", "^{-1}"):
            if tok.endswith(suffix):
                tok, exp = tok[: -len(suffix)], -1
                break
        for x in p.word(tok):
            out.append((x, exp))
        if exp == -1 and len(p.word(tok)) != 1:
            raise PresentationError(f"inverse suffix applies to a single letter, got {tok!r}")
    return GroupWord(tuple(out))


def positive_group_word(w: Word) -> GroupWord:
    return GroupWord(tuple((x, 1) for x in w))


def group_normalize(p: Presentation, g: GroupWord, fund: QuasiCentralCert) -> tuple[int, Word]:
    """Return ``(k, P)`` with ``g = Lambda^-k P`` in the group, ``P`` positive.

    ``s^-1 = d_s d^(ord-1) Lambda^-1`` because ``s d_s = d`` and
    ``d^ord = Lambda`` is central.
    """
    if not fund.quotients:
        raise ValueError("a fundamental certificate is required")
    tail = fund.word * (fund.sigma.order - 1)
    k = 0
    parts = []
    for x, e in g.letters:
        if e == 1:
            parts.append(x)
        else:
            parts.append(fund.quotient(x) + tail)
            k += 1
    return k, "".join(parts)


def group_equal(p: Presentation, g1: GroupWord, g2: GroupWord, fund: QuasiCentralCert) -> bool:
    lam = central_power(p, fund)
    k1, P1 = group_normalize(p, g1, fund)
    k2, P2 = group_normalize(p, g2, fund)
    return words_equal(p, lam * k2 + P1, lam * k1 + P2)


def group_conjugate(
    p: Presentation,
    g1: GroupWord,
    g2: GroupWord,
    fund: QuasiCentralCert,
    assume_P: bool = False,
    decide=None,
) -> Verdict:
    """Conjugacy in the group, reduced to positive conjugacy of
    ``Lambda^k2 P1`` and ``Lambda^k1 P2``.

    ``decide(u, v)`` may supply a monoid-level decision procedure (for
    instance the built-in one for G_{m,n}); by default the orbit search of
    :func:`are_conjugate` is used.
    """
    lam = central_power(p, fund)
    k1, P1 = group_normalize(p, g1, fund)
    k2, P2 = group_normalize(p, g2, fund)
    u, v = lam * k2 + P1, lam * k1 + P2
    if decide is not None:
        return decide(u, v)
    return are_conjugate(p, u, v, fund.word, assume_P=assume_P, cert=fund)
