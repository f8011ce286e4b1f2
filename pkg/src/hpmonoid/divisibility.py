"""
Divisibility in a positively presented monoid.

``u |_l v`` holds when some member of the class of ``v`` begins with a word
equivalent to ``u``; right division is the mirror statement on suffixes.
Divisor sets are finite and computed exactly.  Multiple sets are infinite in
general, so every function that returns multiples takes an explicit length
bound and says so in its result type.

Naming of sides follows the usual convention for multiples: ``cm_r(J)`` is
the set of elements that every ``j`` divides *from the left* (they are right
multiples of ``j``).  ``side="right"`` therefore means "right multiples,
ordered by left division".
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .words import (
    EquivClass,
    Presentation,
    Word,
    classes_of_length,
    enumerate_class,
    reverse_presentation,
)

__all__ = [
    "BoundedMultipleSet",
    "DivisorSet",
    "common_multiples_bounded",
    "lcm_failure_witness",
    "left_divides",
    "left_divisor_set",
    "left_quotients",
    "mcd",
    "mcm_bounded",
    "right_divides",
    "right_divisor_set",
    "right_quotients",
]

SIDES = ("left", "right")


def _check_side(side: str) -> str:
    if side not in SIDES:
        raise ValueError(f"side must be 'left' or 'right', not {side!r}")
    return side


@dataclass(frozen=True)
class DivisorSet:
    element: EquivClass
    side: str
    divisors: frozenset

    def __contains__(self, cls: object) -> bool:
        return cls in self.divisors

    def __len__(self) -> int:
        return len(self.divisors)

    def sorted(self) -> list[EquivClass]:
        return sorted(self.divisors, key=lambda c: (c.length, c.canonical))


@dataclass(frozen=True)
class BoundedMultipleSet:
    """Minimal common multiples of ``base`` among elements of length <= ``bound``."""

    base: tuple
    side: str
    bound: int
    minimal: frozenset

    def sorted(self) -> list[EquivClass]:
        return sorted(self.minimal, key=lambda c: (c.length, c.canonical))

    def __len__(self) -> int:
        return len(self.minimal)


# -- quotients ----------------------------------------------------------

def left_quotients(p: Presentation, u: Word, v: Word) -> set[Word]:
    """Canonical words ``w`` with ``v = u w``; one element when ``p`` is cancellative."""
    k = len(u)
    if k > len(v):
        return set()
    if k == 0:
        return {enumerate_class(p, v).canonical}
    cu = enumerate_class(p, u).members
    out = set()
    seen_tails = set()
    for m in enumerate_class(p, v).members:
        tail = m[k:]
        if tail in seen_tails:
            continue
        if m[:k] in cu:
            seen_tails.add(tail)
            out.add(enumerate_class(p, tail).canonical)
    return out


def right_quotients(p: Presentation, u: Word, v: Word) -> set[Word]:
    """Canonical words ``w`` with ``v = w u``."""
    k = len(u)
    if k > len(v):
        return set()
    if k == 0:
        return {enumerate_class(p, v).canonical}
    cu = enumerate_class(p, u).members
    out = set()
    seen_heads = set()
    n = len(v)
    for m in enumerate_class(p, v).members:
        head = m[: n - k]
        if head in seen_heads:
            continue
        if m[n - k:] in cu:
            seen_heads.add(head)
            out.add(enumerate_class(p, head).canonical)
    return out


def left_divides(p: Presentation, u: Word, v: Word) -> Word | None:
    """Return the quotient ``w`` with ``v = u w`` (canonical), or ``None``."""
    q = left_quotients(p, u, v)
    return min(q) if q else None


def right_divides(p: Presentation, u: Word, v: Word) -> Word | None:
    """Return the quotient ``w`` with ``v = w u`` (canonical), or ``None``."""
    q = right_quotients(p, u, v)
    return min(q) if q else None


def divides(p: Presentation, u: Word, v: Word, side: str) -> bool:
    """``side='left'`` tests ``u |_l v``; ``side='right'`` tests ``u |_r v``."""
    if _check_side(side) == "left":
        return bool(left_quotients(p, u, v))
    return bool(right_quotients(p, u, v))


# -- divisor sets --------------------------------------------------------

def left_divisor_set(p: Presentation, v: Word) -> DivisorSet:
    cls = enumerate_class(p, v)
    prefixes = {m[:i] for m in cls.members for i in range(len(v) + 1)}
    return DivisorSet(cls, "left", _classes_of(p, prefixes))


def right_divisor_set(p: Presentation, v: Word) -> DivisorSet:
    cls = enumerate_class(p, v)
    n = len(v)
    suffixes = {m[i:] for m in cls.members for i in range(n + 1)}
    return DivisorSet(cls, "right", _classes_of(p, suffixes))


def divisor_set(p: Presentation, v: Word, side: str) -> DivisorSet:
    return left_divisor_set(p, v) if _check_side(side) == "left" else right_divisor_set(p, v)


def _classes_of(p: Presentation, words: Iterable[Word]) -> frozenset:
    out: dict[Word, EquivClass] = {}
    for w in words:
        c = enumerate_class(p, w)
        out.setdefault(c.canonical, c)
    return frozenset(out.values())


# -- multiples -----------------------------------------------------------

def _div_side(side: str) -> str:
    # right multiples are ordered by left division and vice versa
    return "left" if side == "right" else "right"


def common_multiples_bounded(p: Presentation, J: Iterable[Word], side: str, L: int) -> set[EquivClass]:
    """All classes of length <= ``L`` that are ``side``-multiples of every word of ``J``."""
    _check_side(side)
    J = sorted(set(J), key=lambda w: (-len(w), w))
    if not J:
        raise ValueError("J must be non-empty")
    if L < len(J[0]):
        raise ValueError("bound is shorter than an element of J")
    dside = _div_side(side)
    anchor = enumerate_class(p, J[0]).canonical
    rest = J[1:]
    out: dict[Word, EquivClass] = {}
    for n in range(len(anchor), L + 1):
        for c in classes_of_length(p, n - len(anchor)):
            w = anchor + c.canonical if side == "right" else c.canonical + anchor
            cls = enumerate_class(p, w)
            if cls.canonical in out:
                continue
            if all(divides(p, j, cls.canonical, dside) for j in rest):
                out[cls.canonical] = cls
    return set(out.values())


def minimal_elements(p: Presentation, classes: Iterable[EquivClass], side: str) -> frozenset:
    """Members not properly ``side``-divided by another member."""
    items = sorted(set(classes), key=lambda c: (c.length, c.canonical))
    keep = []
    for c in items:
        if not any(d.length < c.length and divides(p, d.canonical, c.canonical, side) for d in keep):
            keep.append(c)
    return frozenset(keep)


def mcm_bounded(p: Presentation, J: Iterable[Word], side: str, L: int) -> BoundedMultipleSet:
    """Minimal common ``side``-multiples of ``J`` of length <= ``L``.

    Every divisor of an element is no longer than the element, so the
    members returned are genuinely minimal; the bound only hides minimal
    multiples that are longer than ``L``.
    """
    J = tuple(sorted(set(J)))
    cms = common_multiples_bounded(p, J, side, L)
    return BoundedMultipleSet(J, side, L, minimal_elements(p, cms, _div_side(side)))


def mcd(p: Presentation, J: Iterable[Word], side: str) -> set[EquivClass]:
    """Maximal common ``side``-divisors of ``J`` (exact)."""
    _check_side(side)
    J = list(J)
    if not J:
        raise ValueError("J must be non-empty")
    common = None
    for j in J:
        ds = set(divisor_set(p, j, side).divisors)
        common = ds if common is None else common & ds
    items = sorted(common, key=lambda c: (-c.length, c.canonical))
    keep: list[EquivClass] = []
    for c in items:
        if not any(k.length > c.length and divides(p, c.canonical, k.canonical, side) for k in keep):
            keep.append(c)
    return set(keep)


@dataclass(frozen=True)
class LcmFailure:
    pair: tuple
    multiples: tuple


def lcm_failure_witness(p: Presentation, L: int, side: str = "right") -> LcmFailure | None:
    """First letter pair (in generator order) with two or more minimal common multiples."""
    if L < 2:
        raise ValueError("L must be at least 2")
    for x, y in combinations(p.letters, 2):
        res = mcm_bounded(p, (x, y), side, L)
        if len(res.minimal) >= 2:
            return LcmFailure((x, y), tuple(c.canonical for c in res.sorted()))
    return None


def reversed_word(w: Word) -> Word:
    return w[::-1]


def right_divides_via_reverse(p: Presentation, u: Word, v: Word) -> Word | None:
    """``u |_r v`` computed as left division in the reversed presentation."""
    q = left_divides(reverse_presentation(p), u[::-1], v[::-1])
    return None if q is None else enumerate_class(p, q[::-1]).canonical
