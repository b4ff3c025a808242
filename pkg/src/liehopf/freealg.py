"""Free graded associative algebras over the integers.

Words are tuples of generator ids; the empty tuple is the unit.  An
:class:`Element` is a finite integer combination of words over a fixed
:class:`Alphabet`, and a :class:`TensorSquareElement` is a combination of
ordered word pairs.  Products on the tensor square follow the Koszul rule
``(a⊗b)(c⊗d) = (-1)^(|b||c|) ac⊗bd``.

Words are ordered by length (shorter first) and then lexicographically on
generator indices with the higher index first.  The ordering is the column
order of every linear system built from words, so it decides which particular
solution the integer solver reports.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from .errors import AlphabetError

Word = tuple[str, ...]
UNIT: Word = ()


@dataclass(frozen=True)
class Generator:
    id: str
    degree: int

    def __post_init__(self):
        if not isinstance(self.id, str) or not self.id.isidentifier():
            raise AlphabetError(f"generator id must be a nonempty identifier token, got {self.id!r}")
        if isinstance(self.degree, bool) or not isinstance(self.degree, int) or self.degree < 1:
            raise AlphabetError(f"generator {self.id} must have a positive integer degree, got {self.degree!r}")


class Alphabet:
    """An ordered, finite set of graded generators."""

    def __init__(self, generators: Iterable[Generator | tuple[str, int]]):
        gens = []
        for g in generators:
            if not isinstance(g, Generator):
                g = Generator(*g)
            gens.append(g)
        self.generators: tuple[Generator, ...] = tuple(gens)
        self._index = {}
        for i, g in enumerate(self.generators):
            if g.id in self._index:
                raise AlphabetError(f"duplicate generator id {g.id!r}")
            self._index[g.id] = i
        self._degree = {g.id: g.degree for g in self.generators}
        self._words_cache: dict[int, tuple[Word, ...]] = {}

    def __eq__(self, other):
        return isinstance(other, Alphabet) and self.generators == other.generators

    def __hash__(self):
        return hash(self.generators)

    def __len__(self):
        return len(self.generators)

    def __iter__(self) -> Iterator[Generator]:
        return iter(self.generators)

    def __contains__(self, gid) -> bool:
        return gid in self._index

    def __repr__(self):
        inner = ", ".join(f"{g.id}:{g.degree}" for g in self.generators)
        return f"Alphabet({inner})"

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(g.id for g in self.generators)

    def index(self, gid: str) -> int:
        try:
            return self._index[gid]
        except KeyError:
            raise AlphabetError(f"unknown generator {gid!r}") from None

    def degree(self, gid: str) -> int:
        try:
            return self._degree[gid]
        except KeyError:
            raise AlphabetError(f"unknown generator {gid!r}") from None

    def word_degree(self, word: Word) -> int:
        deg = self._degree
        return sum(deg[x] for x in word)

    def word_key(self, word: Word):
        """Sort key realising the canonical monomial order."""
        idx = self._index
        return (len(word), tuple(-idx[x] for x in word))

    def check_word(self, word: Word) -> Word:
        word = tuple(word)
        for x in word:
            if x not in self._index:
                raise AlphabetError(f"letter {x!r} is not in {self!r}")
        return word

    def words(self, d: int) -> tuple[Word, ...]:
        """All words of degree exactly ``d``, in canonical order."""
        if d < 0:
            return ()
        cached = self._words_cache.get(d)
        if cached is not None:
            return cached
        if d == 0:
            out: list[Word] = [UNIT]
        else:
            out = []
            for g in self.generators:
                if g.degree <= d:
                    out.extend((g.id,) + rest for rest in self.words(d - g.degree))
        result = tuple(sorted(out, key=self.word_key))
        self._words_cache[d] = result
        return result

    def words_upto(self, d: int) -> list[Word]:
        return [w for k in range(d + 1) for w in self.words(k)]

    # element constructors

    def zero(self) -> Element:
        return Element(self)

    def one(self) -> Element:
        return Element._raw(self, {UNIT: 1})

    def gen(self, gid: str) -> Element:
        self.index(gid)
        return Element._raw(self, {(gid,): 1})

    def word(self, *ids: str) -> Element:
        return Element._raw(self, {self.check_word(ids): 1})

    def parse(self, text: str) -> Element:
        """Parse text such as ``"w3 - 3*w2|w1 + 2*w1|w1|w1"``.

        A term is an optional integer coefficient followed by ``*`` and a
        word whose letters are separated by ``|``; a bare integer is a
        multiple of the unit.
        """
        return Element(self, _parse_terms(text, self))


_TERM = re.compile(r"^(?:(\d+)\s*\*\s*)?(.+)$")


def _parse_terms(text: str, alphabet: Alphabet) -> dict[Word, int]:
    src = text.replace("−", "-").strip()
    if not src:
        raise ValueError("empty expression")
    chunks = re.split(r"([+-])", src)
    terms: dict[Word, int] = {}
    sign = 1
    dangling = False
    for chunk in chunks:
        chunk = chunk.strip()
        if chunk in ("+", "-"):
            if chunk == "-":
                sign = -sign
            dangling = True
            continue
        if not chunk:
            continue
        if chunk.isdigit():
            coeff, word = int(chunk), UNIT
        else:
            m = _TERM.match(chunk)
            if m is None:
                raise ValueError(f"cannot parse term {chunk!r}")
            coeff = int(m.group(1)) if m.group(1) else 1
            body = m.group(2).strip()
            if body == "1":
                word = UNIT
            else:
                word = tuple(p.strip() for p in body.split("|"))
                if any(not p for p in word):
                    raise ValueError(f"empty letter in {chunk!r}")
                alphabet.check_word(word)
        terms[word] = terms.get(word, 0) + sign * coeff
        sign = 1
        dangling = False
    if dangling:
        raise ValueError(f"dangling sign in {text!r}")
    return terms


def _format_coeff(c: int, body: str, first: bool) -> str:
    if body == "1":
        mag = str(abs(c))
    else:
        mag = body if abs(c) == 1 else f"{abs(c)}*{body}"
    if first:
        return ("-" if c < 0 else "") + mag
    return (" - " if c < 0 else " + ") + mag


def format_word(word: Word) -> str:
    return "|".join(word) if word else "1"


class Element:
    """Finite integer combination of words; immutable."""

    __slots__ = ("alphabet", "_terms")

    def __init__(self, alphabet: Alphabet, terms: Mapping[Word, int] | None = None):
        clean: dict[Word, int] = {}
        for w, c in (terms or {}).items():
            if c:
                clean[alphabet.check_word(w)] = int(c)
        self.alphabet = alphabet
        self._terms = clean

    @classmethod
    def _raw(cls, alphabet: Alphabet, terms: dict[Word, int]) -> Element:
        obj = cls.__new__(cls)
        obj.alphabet = alphabet
        obj._terms = {w: c for w, c in terms.items() if c}
        return obj

    @property
    def terms(self) -> dict[Word, int]:
        return dict(self._terms)

    def items(self) -> list[tuple[Word, int]]:
        key = self.alphabet.word_key
        return sorted(self._terms.items(), key=lambda t: key(t[0]))

    def coefficient(self, word: Word) -> int:
        return self._terms.get(tuple(word), 0)

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def degrees(self) -> set[int]:
        return {self.alphabet.word_degree(w) for w in self._terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def _check(self, other: Element):
        if not isinstance(other, Element):
            return NotImplemented
        if other.alphabet != self.alphabet:
            raise AlphabetError("elements are over different alphabets")

    def __add__(self, other):
        if isinstance(other, int):
            other = other * self.alphabet.one()
        if self._check(other) is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for w, c in other._terms.items():
            out[w] = out.get(w, 0) + c
        return Element._raw(self.alphabet, out)

    __radd__ = __add__

    def __neg__(self):
        return Element._raw(self.alphabet, {w: -c for w, c in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = other * self.alphabet.one()
        if not isinstance(other, Element):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return Element._raw(self.alphabet, {w: c * other for w, c in self._terms.items()})
        if self._check(other) is NotImplemented:
            return NotImplemented
        out: dict[Word, int] = {}
        for w1, c1 in self._terms.items():
            for w2, c2 in other._terms.items():
                w = w1 + w2
                out[w] = out.get(w, 0) + c1 * c2
        return Element._raw(self.alphabet, out)

    def __rmul__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return self * other
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, int):
            other = other * self.alphabet.one() if other else Element(self.alphabet)
        if not isinstance(other, Element):
            return NotImplemented
        return self.alphabet == other.alphabet and self._terms == other._terms

    def __hash__(self):
        return hash((self.alphabet, frozenset(self._terms.items())))

    def __str__(self):
        if not self._terms:
            return "0"
        return "".join(
            _format_coeff(c, format_word(w), i == 0) for i, (w, c) in enumerate(self.items())
        )

    def __repr__(self):
        return f"Element({self})"


class TensorSquareElement:
    """Finite integer combination of ordered word pairs ``left ⊗ right``."""

    __slots__ = ("alphabet", "_terms")

    def __init__(self, alphabet: Alphabet, terms: Mapping[tuple[Word, Word], int] | None = None):
        clean = {}
        for (l, r), c in (terms or {}).items():
            if c:
                clean[(alphabet.check_word(l), alphabet.check_word(r))] = int(c)
        self.alphabet = alphabet
        self._terms = clean

    @classmethod
    def _raw(cls, alphabet: Alphabet, terms: dict) -> TensorSquareElement:
        obj = cls.__new__(cls)
        obj.alphabet = alphabet
        obj._terms = {k: c for k, c in terms.items() if c}
        return obj

    @property
    def terms(self) -> dict[tuple[Word, Word], int]:
        return dict(self._terms)

    def items(self):
        key = self.alphabet.word_key
        return sorted(self._terms.items(), key=lambda t: (key(t[0][0]), key(t[0][1])))

    def coefficient(self, left: Word, right: Word) -> int:
        return self._terms.get((tuple(left), tuple(right)), 0)

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def degrees(self) -> set[int]:
        wd = self.alphabet.word_degree
        return {wd(l) + wd(r) for l, r in self._terms}

    def __add__(self, other):
        if not isinstance(other, TensorSquareElement):
            return NotImplemented
        if other.alphabet != self.alphabet:
            raise AlphabetError("tensors are over different alphabets")
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return TensorSquareElement._raw(self.alphabet, out)

    def __neg__(self):
        return TensorSquareElement._raw(self.alphabet, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, TensorSquareElement):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return TensorSquareElement._raw(self.alphabet, {k: c * other for k, c in self._terms.items()})
        if not isinstance(other, TensorSquareElement):
            return NotImplemented
        return tensor_multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return self * other
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, TensorSquareElement):
            return NotImplemented
        return self.alphabet == other.alphabet and self._terms == other._terms

    def __hash__(self):
        return hash((self.alphabet, frozenset(self._terms.items())))

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for i, ((l, r), c) in enumerate(self.items()):
            parts.append(_format_coeff(c, f"{format_word(l)}⊗{format_word(r)}", i == 0))
        return "".join(parts)

    def __repr__(self):
        return f"TensorSquareElement({self})"


def multiply(a: Element, b: Element) -> Element:
    """Concatenation product, extended bilinearly."""
    return a * b


def tensor(a: Element, b: Element) -> TensorSquareElement:
    """The pure tensor ``a ⊗ b`` expanded bilinearly."""
    if a.alphabet != b.alphabet:
        raise AlphabetError("elements are over different alphabets")
    out = {}
    for w1, c1 in a._terms.items():
        for w2, c2 in b._terms.items():
            out[(w1, w2)] = out.get((w1, w2), 0) + c1 * c2
    return TensorSquareElement._raw(a.alphabet, out)


def tensor_multiply(x: TensorSquareElement, y: TensorSquareElement) -> TensorSquareElement:
    """Componentwise product with the Koszul sign ``(-1)^(|b||c|)``."""
    if x.alphabet != y.alphabet:
        raise AlphabetError("tensors are over different alphabets")
    wd = x.alphabet.word_degree
    rdeg = {}
    ldeg = {}
    out: dict[tuple[Word, Word], int] = {}
    for (a, b), c1 in x._terms.items():
        db = rdeg.get(b)
        if db is None:
            db = rdeg[b] = wd(b)
        for (c, d), c2 in y._terms.items():
            dc = ldeg.get(c)
            if dc is None:
                dc = ldeg[c] = wd(c)
            coeff = c1 * c2
            if db & 1 and dc & 1:
                coeff = -coeff
            key = (a + c, b + d)
            out[key] = out.get(key, 0) + coeff
    return TensorSquareElement._raw(x.alphabet, out)


def graded_component(x: Element, d: int) -> Element:
    """Sub-sum of the terms of ``x`` whose word degree equals ``d``."""
    wd = x.alphabet.word_degree
    return Element._raw(x.alphabet, {w: c for w, c in x._terms.items() if wd(w) == d})


def decomposable_basis(alphabet: Alphabet, d: int) -> list[Word]:
    """Words of length at least two and degree exactly ``d``, canonically ordered."""
    if d < 2:
        raise ValueError(f"decomposable words need degree >= 2, got {d}")
    return [w for w in alphabet.words(d) if len(w) >= 2]
