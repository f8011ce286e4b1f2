"""
Quasi-central, fundamental and Garside elements.

An element ``d`` is quasi-central when there is a permutation ``sigma`` of the
atoms with ``s d = d sigma(s)`` for every atom ``s``.  It is fundamental when,
in addition, every atom divides ``d`` from the left; we then record the left
quotients ``d_s`` with ``d = s d_s``, and check ``d = d_s sigma(s)``.

Certificates keep the spellings that realise each identity so a caller can
replay them with :func:`words_equal` alone.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import lcm
from typing import Iterable

from .divisibility import (
    left_divides,
    left_divisor_set,
    left_quotients,
    right_divides,
    right_divisor_set,
)
from .words import (
    EquivClass,
    Presentation,
    Word,
    classes_of_length,
    enumerate_class,
    parse_presentation,
    words_equal,
)

__all__ = [
    "PermutationSigma",
    "QuasiCentralCert",
    "TamenessReport",
    "central_power",
    "fundamental_cert",
    "garside_check",
    "indecomposable_qz_check",
    "minimal_fundamental_check",
    "quasi_central_cert",
    "search_quasi_central",
    "tameness_probe",
]


@dataclass(frozen=True)
class PermutationSigma:
    """A permutation of the atoms, stored as ``{letter: image}``."""

    mapping: tuple  # sorted pairs (letter, image)

    @classmethod
    def from_dict(cls, d: dict) -> "PermutationSigma":
        return cls(tuple(sorted(d.items())))

    def __call__(self, x: Word) -> Word:
        return dict(self.mapping)[x]

    @property
    def order(self) -> int:
        return lcm(*(len(c) for c in self.cycles())) if self.mapping else 1

    def is_identity(self) -> bool:
        return all(a == b for a, b in self.mapping)

    def cycles(self) -> list[tuple]:
        m = dict(self.mapping)
        seen, out = set(), []
        for start in sorted(m):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            nxt = m[start]
            while nxt != start:
                cyc.append(nxt)
                seen.add(nxt)
                nxt = m[nxt]
            out.append(tuple(cyc))
        return out

    def show(self, p: Presentation) -> str:
        nontrivial = [c for c in self.cycles() if len(c) > 1]
        if not nontrivial:
            return "id"
        return "".join("(" + " ".join(p.show(x) for x in c) + ")" for c in nontrivial)


@dataclass(frozen=True)
class QuasiCentralCert:
    element: EquivClass
    sigma: PermutationSigma
    kind: str  # "quasi-central" | "fundamental" | "garside-verified"
    # letter -> member of class(s d) spelled as (member of class(d)) + sigma(s)
    witnesses: tuple = field(default=(), compare=False)
    # letter -> canonical d_s with d = s d_s (fundamental certs only)
    quotients: tuple = field(default=(), compare=False)

    @property
    def word(self) -> Word:
        return self.element.canonical

    def quotient(self, s: Word) -> Word:
        return dict(self.quotients)[s]

    def replay(self, p: Presentation) -> bool:
        """Re-check every recorded identity with the word problem alone."""
        d = self.word
        for s, spelled in self.witnesses:
            if not (words_equal(p, s + d, spelled) and words_equal(p, spelled, d + self.sigma(s))):
                return False
        for s, q in self.quotients:
            if not (words_equal(p, d, s + q) and words_equal(p, d, q + self.sigma(s))):
                return False
        return True


def quasi_central_cert(p: Presentation, d: Word) -> QuasiCentralCert | None:
    cls = enumerate_class(p, d)
    if not d:
        ident = PermutationSigma.from_dict({x: x for x in p.letters})
        return QuasiCentralCert(cls, ident, "quasi-central")
    dm = cls.members
    k = len(d)
    sigma: dict[Word, Word] = {}
    witnesses = []
    for s in p.letters:
        found = None
        for m in sorted(enumerate_class(p, s + d).members):
            if m[:k] in dm:
                found = m
                break
        if found is None:
            return None
        sigma[s] = found[k:]
        witnesses.append((s, found))
    if len(set(sigma.values())) != len(sigma):
        return None
    return QuasiCentralCert(cls, PermutationSigma.from_dict(sigma), "quasi-central", tuple(witnesses))


def fundamental_cert(p: Presentation, d: Word) -> QuasiCentralCert | None:
    if not d:
        return None
    qz = quasi_central_cert(p, d)
    if qz is None:
        return None
    d = qz.word
    quotients = []
    for s in p.letters:
        q = left_divides(p, s, d)
        if q is None:
            return None
        if not words_equal(p, d, q + qz.sigma(s)):
            return None
        quotients.append((s, q))
    return QuasiCentralCert(qz.element, qz.sigma, "fundamental", qz.witnesses, tuple(quotients))


def garside_check(p: Presentation, d: Word) -> bool:
    """Left and right divisor sets coincide and contain every atom."""
    if not d:
        return False
    left = left_divisor_set(p, d).divisors
    if left != right_divisor_set(p, d).divisors:
        return False
    return all(enumerate_class(p, x) in left for x in p.letters)


def central_power(p: Presentation, cert: QuasiCentralCert) -> Word:
    lam = enumerate_class(p, cert.word * cert.sigma.order).canonical
    for s in p.letters:
        if not words_equal(p, s + lam, lam + s):
            raise ArithmeticError("central power does not commute with " + p.show(s))
    return lam


def _proper_divisors(p: Presentation, d: Word) -> list[EquivClass]:
    both = set(left_divisor_set(p, d).divisors) | set(right_divisor_set(p, d).divisors)
    return sorted((c for c in both if 0 < c.length < len(d)), key=lambda c: (c.length, c.canonical))


def minimal_fundamental_check(p: Presentation, d: Word, L: int | None = None) -> bool:
    """No proper divisor of ``d`` (either side) is fundamental.

    ``L`` optionally caps the divisor length examined; all proper divisors
    are shorter than ``d`` so the default examines everything.
    """
    if fundamental_cert(p, d) is None:
        raise ValueError("element is not fundamental")
    for c in _proper_divisors(p, d):
        if L is not None and c.length > L:
            break
        if fundamental_cert(p, c.canonical) is not None:
            return False
    return True


def indecomposable_qz_check(p: Presentation, d: Word, L: int | None = None) -> bool:
    """``d`` is not a product of two non-trivial quasi-central elements."""
    if not d:
        return False
    if quasi_central_cert(p, d) is None:
        raise ValueError("element is not quasi-central")
    for c in left_divisor_set(p, d).divisors:
        if not 0 < c.length < len(d):
            continue
        if L is not None and c.length > L:
            continue
        if quasi_central_cert(p, c.canonical) is None:
            continue
        for v in left_quotients(p, c.canonical, d):
            if quasi_central_cert(p, v) is not None:
                return False
    return True


@dataclass(frozen=True)
class SearchHit:
    cert: QuasiCentralCert
    fundamental: bool
    minimal: bool
    indecomposable: bool


def _scan_chunk(args) -> list[tuple]:
    text, words = args
    p = parse_presentation(text)
    return [_classify(p, w) for w in words]


def _classify(p: Presentation, w: Word):
    qz = quasi_central_cert(p, w)
    if qz is None:
        return None
    fund = fundamental_cert(p, w)
    minimal = fund is not None and minimal_fundamental_check(p, w)
    indec = indecomposable_qz_check(p, w)
    return (w, fund is not None, minimal, indec)


def search_quasi_central(p: Presentation, L: int, jobs: int = 1) -> list[SearchHit]:
    """Every non-trivial quasi-central class of length <= ``L``, sorted by length then word."""
    candidates = [c.canonical for n in range(1, L + 1) for c in classes_of_length(p, n)]
    if jobs > 1 and len(candidates) > 64:
        text = p.to_text()
        # words are shipped in the worker's own encoding: generator order is identical
        chunks = [candidates[i::jobs] for i in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = [r for part in pool.map(_scan_chunk, [(text, ch) for ch in chunks]) for r in part]
    else:
        rows = [_classify(p, w) for w in candidates]
    hits = []
    for row in sorted((r for r in rows if r is not None), key=lambda r: (len(r[0]), r[0])):
        w, fund, minimal, indec = row
        cert = fundamental_cert(p, w) if fund else quasi_central_cert(p, w)
        hits.append(SearchHit(cert, fund, minimal, indec))
    return hits


@dataclass
class TamenessReport:
    bound: int
    outer_bound: int
    witnesses: dict = field(default_factory=dict)  # indecomposable -> minimal fundamental
    failures: list = field(default_factory=list)
    inconclusive: list = field(default_factory=list)

    @property
    def tame_at_bound(self) -> bool:
        return not self.failures and not self.inconclusive


def tameness_probe(p: Presentation, L: int, L2: int | None = None, jobs: int = 1) -> TamenessReport:
    """Look for a minimal fundamental element divisible on both sides by each
    indecomposable quasi-central element of length <= ``L``.

    Minimal fundamental elements are searched up to length ``L2``.  An
    element with no witness is reported inconclusive, since a longer minimal
    fundamental element could still exist; a failure is recorded only if the
    presentation has finitely many classes in total and all were searched,
    which never happens for infinite monoids, so in practice the report lists
    witnesses and inconclusives.
    """
    L2 = L if L2 is None else L2
    rep = TamenessReport(L, L2)
    hits = search_quasi_central(p, max(L, L2), jobs=jobs)
    indecs = [h.cert.word for h in hits if h.indecomposable and h.cert.element.length <= L]
    minimals = [h.cert.word for h in hits if h.minimal and h.cert.element.length <= L2]
    for d in indecs:
        for f in minimals:
            if left_divides(p, d, f) is not None and right_divides(p, d, f) is not None:
                rep.witnesses[d] = f
                break
        else:
            rep.inconclusive.append(d)
    return rep
