"""
Positive homogeneous presentations and their equivalence classes.

A presentation ``<L | R>`` is stored with every generator encoded as a single
private character (``chr(0x100 + id)``), so a positive word is a plain ``str``
and substring substitution is ordinary string slicing.  Character order
equals the declared generator order, which makes the lexicographically least
member of a class simply ``min(members)``.

Use :meth:`Presentation.word` to turn generator names into a word and
:meth:`Presentation.show` to go back.

    >>> p = parse_presentation('''
    ... generators: a b c
    ... relation: c b b = b b a
    ... relation: a b = b c
    ... relation: a c = c a
    ... ''')
    >>> p.show(enumerate_class(p, p.word("a b")).canonical)
    'a b'
    >>> sorted(p.show(m) for m in enumerate_class(p, p.word("a b")))
    ['a b', 'b c']
"""

from __future__ import annotations

import itertools
import re
import threading
from collections import Counter, deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Sequence

__all__ = [
    "DEFAULT_CEILING",
    "EPSILON_TOKEN",
    "ClassCeilingExceeded",
    "EquivClass",
    "Generator",
    "Presentation",
    "PresentationError",
    "Relation",
    "Word",
    "all_classes",
    "atoms",
    "elementary_neighbors",
    "enumerate_class",
    "letter_counts",
    "parse_presentation",
    "preserved_letters",
    "reverse_presentation",
    "words_equal",
]

Word = str

CODE_BASE = 0x100
DEFAULT_CEILING = 5_000_000
EPSILON_TOKEN = "e"

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_']*\Z")


class PresentationError(ValueError):
    """Malformed presentation text or an invalid word."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


class ClassCeilingExceeded(RuntimeError):
    """An equivalence class grew past the configured member ceiling."""

    def __init__(self, ceiling: int, seed: str):
        self.ceiling = ceiling
        self.seed = seed
        super().__init__(f"equivalence class exceeded {ceiling} members")


@dataclass(frozen=True)
class Generator:
    id: int
    name: str

    @property
    def code(self) -> str:
        return chr(CODE_BASE + self.id)


@dataclass(frozen=True)
class Relation:
    lhs: Word
    rhs: Word


@dataclass(frozen=True)
class EquivClass:
    """All words equivalent to a given one; compares and hashes by ``canonical``."""

    canonical: Word
    members: frozenset = field(compare=False, repr=False)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[Word]:
        return iter(sorted(self.members))

    def __contains__(self, word: object) -> bool:
        return word in self.members

    @property
    def length(self) -> int:
        return len(self.canonical)


class ClassCache:
    """Member-word -> class memo shared by every query on one presentation."""

    def __init__(self) -> None:
        self._by_word: dict[Word, EquivClass] = {}
        self._lock = threading.Lock()

    def get(self, word: Word) -> EquivClass | None:
        return self._by_word.get(word)

    def add(self, cls: EquivClass) -> EquivClass:
        with self._lock:
            known = self._by_word.get(cls.canonical)
            if known is not None:
                return known
            for m in cls.members:
                self._by_word[m] = cls
            return cls

    def classes(self) -> list[EquivClass]:
        seen = {c.canonical: c for c in self._by_word.values()}
        return [seen[k] for k in sorted(seen, key=lambda w: (len(w), w))]

    def __len__(self) -> int:
        return len(self._by_word)

    def clear(self) -> None:
        with self._lock:
            self._by_word.clear()


class Presentation:
    """
    A validated positive homogeneous presentation.

    ``relations`` holds the stated relation pairs (after alias merging); both
    orientations are used for rewriting.  Instances are treated as immutable;
    the class cache is the only mutable state and it is lock-protected.
    """

    def __init__(
        self,
        names: Sequence[str],
        relations: Iterable[tuple[Word, Word]],
        name: str | None = None,
        aliases: dict[str, str] | None = None,
        ceiling: int = DEFAULT_CEILING,
    ):
        if not names:
            raise PresentationError("empty alphabet")
        if len(set(names)) != len(names):
            raise PresentationError("duplicate generator name")
        self.name = name
        self.alphabet = tuple(Generator(i, n) for i, n in enumerate(names))
        self.aliases = dict(aliases or {})
        self.ceiling = ceiling
        rels = []
        for lhs, rhs in relations:
            if len(lhs) != len(rhs):
                raise PresentationError(f"non-homogeneous relation {self.show(lhs)} = {self.show(rhs)}")
            if not lhs:
                raise PresentationError("relation with an empty side")
            if len(lhs) == 1 and lhs != rhs:
                raise PresentationError("length-1 relation left after alias merging")
            if lhs != rhs:
                rels.append(Relation(lhs, rhs))
        self.relations = tuple(rels)
        self._by_name = {g.name: g for g in self.alphabet}
        rules: dict[Word, list[Word]] = {}
        for r in self.relations:
            for a, b in ((r.lhs, r.rhs), (r.rhs, r.lhs)):
                targets = rules.setdefault(a, [])
                if b not in targets:
                    targets.append(b)
        self._rules = {k: tuple(v) for k, v in rules.items()}
        self.cache = ClassCache()
        self._by_length: dict[int, list[EquivClass]] = {}
        self._reverse: Presentation | None = None

    # -- naming ---------------------------------------------------------
    @property
    def letters(self) -> tuple[Word, ...]:
        return tuple(g.code for g in self.alphabet)

    def letter(self, name: str) -> Word:
        name = self.aliases.get(name, name)
        try:
            return self._by_name[name].code
        except KeyError:
            raise PresentationError(f"unknown generator {name!r}") from None

    def word(self, text: str | Sequence[str]) -> Word:
        """Parse whitespace-separated generator names (``e`` is the empty word).

        When every generator name is one character, an unspaced token such as
        ``"abc"`` is also accepted.
        """
        tokens = text.split() if isinstance(text, str) else list(text)
        out = []
        single = all(len(g.name) == 1 for g in self.alphabet)
        for tok in tokens:
            if tok == EPSILON_TOKEN and EPSILON_TOKEN not in self._by_name:
                continue
            if tok in self._by_name or tok in self.aliases:
                out.append(self.letter(tok))
            elif single and len(tok) > 1:
                out.extend(self.letter(ch) for ch in tok)
            else:
                raise PresentationError(f"unknown generator {tok!r}")
        return "".join(out)

    def show(self, w: Word, sep: str = " ") -> str:
        if not w:
            return EPSILON_TOKEN
        return sep.join(self.alphabet[ord(ch) - CODE_BASE].name for ch in w)

    def compact(self, w: Word) -> str:
        """Unspaced rendering when names are single characters (used in reprs)."""
        sep = "" if all(len(g.name) == 1 for g in self.alphabet) else " "
        return self.show(w, sep)

    def valid(self, w: Word) -> bool:
        n = len(self.alphabet)
        return all(0 <= ord(ch) - CODE_BASE < n for ch in w)

    # -- identity -------------------------------------------------------
    def _key(self):
        return (tuple(g.name for g in self.alphabet), self.relations)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Presentation) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"<Presentation{label}: {len(self.alphabet)} generators, {len(self.relations)} relations>"

    def to_text(self) -> str:
        lines = []
        if self.name:
            lines.append(f"# {self.name}")
        lines.append("generators: " + " ".join(g.name for g in self.alphabet))
        for r in self.relations:
            lines.append(f"relation: {self.show(r.lhs)} = {self.show(r.rhs)}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_names(
        cls,
        names: Sequence[str],
        relations: Iterable[tuple[str, str]],
        name: str | None = None,
        ceiling: int = DEFAULT_CEILING,
    ) -> "Presentation":
        """Build from name-level relations, merging length-1 aliases first."""
        return _build(list(names), [(l.split(), r.split()) for l, r in relations], name, ceiling)

    # -- cache persistence ---------------------------------------------
    def save_cache(self, path: str | Path) -> int:
        classes = self.cache.classes()
        with open(path, "w", encoding="utf-8") as fh:
            for c in classes:
                fh.write("class-begin\n")
                fh.write(f"canonical: {self.show(c.canonical)}\n")
                for m in sorted(c.members):
                    fh.write(self.show(m) + "\n")
                fh.write("class-end\n")
        return len(classes)

    def load_cache(self, path: str | Path) -> int:
        count = 0
        members: list[Word] | None = None
        for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
            line = raw.strip()
            if not line:
                continue
            if line == "class-begin":
                members = []
            elif line == "class-end":
                if members is None:
                    raise PresentationError("class-end without class-begin", lineno)
                self.cache.add(EquivClass(min(members), frozenset(members)))
                members = None
                count += 1
            elif line.startswith("canonical:"):
                continue
            elif members is not None:
                members.append(self.word(line))
            else:
                raise PresentationError("word outside a class block", lineno)
        return count


def _build(names, relations, label, ceiling) -> Presentation:
    for n in names:
        if not _NAME_RE.match(n) or n == EPSILON_TOKEN:
            raise PresentationError(f"invalid generator name {n!r}")
    known = set(names)
    for lhs, rhs in relations:
        for tok in itertools.chain(lhs, rhs):
            if tok not in known:
                raise PresentationError(f"unknown generator {tok!r}")
        if len(lhs) != len(rhs):
            raise PresentationError(
                f"non-homogeneous relation {' '.join(lhs)} = {' '.join(rhs)} ({len(lhs)} != {len(rhs)})"
            )
        if not lhs:
            raise PresentationError("relation with an empty side")
    # union-find over length-1 relations; the earliest declared name represents
    parent = {n: n for n in names}
    order = {n: i for i, n in enumerate(names)}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for lhs, rhs in relations:
        if len(lhs) == 1:
            a, b = find(lhs[0]), find(rhs[0])
            if a != b:
                if order[b] < order[a]:
                    a, b = b, a
                parent[b] = a
    kept = [n for n in names if find(n) == n]
    aliases = {n: find(n) for n in names if find(n) != n}
    code = {n: chr(CODE_BASE + i) for i, n in enumerate(kept)}
    encoded = []
    for lhs, rhs in relations:
        if len(lhs) == 1:
            continue
        l = "".join(code[find(t)] for t in lhs)
        r = "".join(code[find(t)] for t in rhs)
        if l != r and (l, r) not in encoded and (r, l) not in encoded:
            encoded.append((l, r))
    return Presentation(kept, encoded, name=label, aliases=aliases, ceiling=ceiling)


def parse_presentation(text: str, name: str | None = None, ceiling: int = DEFAULT_CEILING) -> Presentation:
    """Parse the ``generators:`` / ``relation:`` text format."""
    names: list[str] | None = None
    relations = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        if not sep:
            raise PresentationError("expected 'key: value'", lineno, 1)
        key = key.strip()
        col = raw.index(rest) + 1 if rest else len(raw) + 1
        if key == "generators":
            if names is not None:
                raise PresentationError("duplicate generators line", lineno, 1)
            names = rest.split()
            if not names:
                raise PresentationError("empty alphabet", lineno, col)
            for n in names:
                if not _NAME_RE.match(n) or n == EPSILON_TOKEN:
                    raise PresentationError(f"invalid generator name {n!r}", lineno, raw.index(n) + 1)
            if len(set(names)) != len(names):
                raise PresentationError("duplicate generator name", lineno, col)
        elif key == "relation":
            if names is None:
                raise PresentationError("relation before generators line", lineno, 1)
            lhs, eq, rhs = rest.partition("=")
            if not eq or "=" in rhs:
                raise PresentationError("relation needs exactly one '='", lineno, col)
            l, r = lhs.split(), rhs.split()
            for tok in l + r:
                if tok not in names:
                    raise PresentationError(f"unknown generator {tok!r}", lineno, raw.index(tok) + 1)
            if len(l) != len(r):
                raise PresentationError(
                    f"non-homogeneous relation ({len(l)} != {len(r)} letters)", lineno, col
                )
            if not l:
                raise PresentationError("relation with an empty side", lineno, col)
            relations.append((l, r))
        elif key == "name":
            name = name or rest.strip() or None
        else:
            raise PresentationError(f"unknown key {key!r}", lineno, 1)
    if names is None:
        raise PresentationError("missing generators line")
    return _build(names, relations, name, ceiling)


# -- rewriting ----------------------------------------------------------

def elementary_neighbors(p: Presentation, w: Word) -> set[Word]:
    """Words reachable from ``w`` by one relation substitution (either direction)."""
    out = set()
    for side, targets in p._rules.items():
        k = len(side)
        i = w.find(side)
        while i != -1:
            head, tail = w[:i], w[i + k:]
            for t in targets:
                out.add(head + t + tail)
            i = w.find(side, i + 1)
    out.discard(w)
    return out


def enumerate_class(p: Presentation, w: Word, ceiling: int | None = None) -> EquivClass:
    """Breadth-first closure of ``{w}`` under elementary equivalence."""
    hit = p.cache.get(w)
    if hit is not None:
        return hit
    limit = p.ceiling if ceiling is None else ceiling
    seen = {w}
    frontier = deque([w])
    rules = p._rules.items()
    while frontier:
        cur = frontier.popleft()
        for side, targets in rules:
            k = len(side)
            i = cur.find(side)
            while i != -1:
                head, tail = cur[:i], cur[i + k:]
                for t in targets:
                    nxt = head + t + tail
                    if nxt not in seen:
                        seen.add(nxt)
                        frontier.append(nxt)
                i = cur.find(side, i + 1)
        if len(seen) > limit:
            raise ClassCeilingExceeded(limit, w)
    return p.cache.add(EquivClass(min(seen), frozenset(seen)))


def words_equal(p: Presentation, u: Word, v: Word) -> bool:
    if len(u) != len(v):
        return False
    if u == v:
        return True
    return v in enumerate_class(p, u)


def atoms(p: Presentation) -> tuple[Generator, ...]:
    # aliases are merged at build time, so no generator is a dummy
    return p.alphabet


def reverse_presentation(p: Presentation) -> Presentation:
    if p._reverse is None:
        rp = Presentation(
            [g.name for g in p.alphabet],
            [(r.lhs[::-1], r.rhs[::-1]) for r in p.relations],
            name=f"rev({p.name})" if p.name else None,
            aliases=p.aliases,
            ceiling=p.ceiling,
        )
        rp._reverse = p
        p._reverse = rp
    return p._reverse


def classes_of_length(p: Presentation, n: int) -> list[EquivClass]:
    """Classes of length ``n``, grown from canonical representatives of length n-1."""
    if n in p._by_length:
        return p._by_length[n]
    if n == 0:
        out = [enumerate_class(p, "")]
    else:
        seen: dict[Word, EquivClass] = {}
        for c in classes_of_length(p, n - 1):
            for x in p.letters:
                cls = enumerate_class(p, c.canonical + x)
                seen.setdefault(cls.canonical, cls)
        out = [seen[k] for k in sorted(seen)]
    p._by_length[n] = out
    return out


def all_classes(p: Presentation, n: int) -> list[EquivClass]:
    """Partition of all words of length ``n`` into classes, sorted by canonical word."""
    if n < 0:
        raise ValueError("length must be non-negative")
    return list(classes_of_length(p, n))


def all_classes_upto(p: Presentation, n: int) -> list[EquivClass]:
    return [c for k in range(n + 1) for c in classes_of_length(p, k)]


def letter_counts(w: Word) -> Counter:
    return Counter(w)


def preserved_letters(p: Presentation) -> frozenset[Word]:
    """Letters whose multiplicity is the same on both sides of every relation."""
    keep = set(p.letters)
    for r in p.relations:
        cl, cr = Counter(r.lhs), Counter(r.rhs)
        keep = {x for x in keep if cl[x] == cr[x]}
    return frozenset(keep)


def count_signature(p: Presentation, w: Word) -> tuple[int, ...]:
    pres = sorted(preserved_letters(p))
    c = Counter(w)
    return tuple(c[x] for x in pres)


def all_words(p: Presentation, n: int) -> Iterator[Word]:
    for t in itertools.product(p.letters, repeat=n):
        yield "".join(t)
