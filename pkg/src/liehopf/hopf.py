"""Finitely presented graded Hopf structures on free tensor algebras.

A presentation lists generators with degrees and the *reduced* coproduct of
each generator; the grouplike terms ``g⊗1 + 1⊗g`` are implicit.  The full
coproduct is the unique algebra map extending those values, computed with
Koszul signs.  Everything is evaluated only up to the truncation degree.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Mapping

from .errors import AlphabetError, PresentationError, TruncationError
from .freealg import (
    UNIT,
    Alphabet,
    Element,
    TensorSquareElement,
    Word,
    format_word,
    tensor,
    tensor_multiply,
)
from .linz import IntMatrix


class HopfPresentation:
    """Generators, their reduced coproducts, and a truncation degree."""

    def __init__(
        self,
        alphabet: Alphabet,
        reduced_coproducts: Mapping[str, TensorSquareElement] | None = None,
        truncation_degree: int = 0,
    ):
        if isinstance(truncation_degree, bool) or not isinstance(truncation_degree, int) or truncation_degree < 1:
            raise PresentationError(f"truncation degree must be a positive integer, got {truncation_degree!r}")
        reduced_coproducts = dict(reduced_coproducts or {})
        for gid in reduced_coproducts:
            if gid not in alphabet:
                raise PresentationError(f"reduced coproduct given for unknown generator {gid!r}")
        coproducts = {}
        for g in alphabet:
            if g.degree > truncation_degree:
                raise PresentationError(
                    f"generator {g.id} has degree {g.degree} above the truncation degree {truncation_degree}"
                )
            red = reduced_coproducts.get(g.id, TensorSquareElement(alphabet))
            if red.alphabet != alphabet:
                raise PresentationError(f"reduced coproduct of {g.id} uses a different alphabet")
            for (l, r), _ in red.items():
                dl, dr = alphabet.word_degree(l), alphabet.word_degree(r)
                if dl == 0 or dr == 0:
                    raise PresentationError(
                        f"reduced coproduct of {g.id} has a term {format_word(l)}⊗{format_word(r)} "
                        "with a degree-0 factor"
                    )
                if dl + dr != g.degree:
                    raise PresentationError(
                        f"reduced coproduct of {g.id} (degree {g.degree}) has a term "
                        f"{format_word(l)}⊗{format_word(r)} of degree {dl + dr}"
                    )
            coproducts[g.id] = red
        self.alphabet = alphabet
        self.reduced_coproducts: dict[str, TensorSquareElement] = coproducts
        self.truncation_degree = truncation_degree
        self._delta: dict[Word, TensorSquareElement] = {}
        self._antipode: dict[Word, Element] = {}

    def __repr__(self):
        return f"HopfPresentation({self.alphabet!r}, D={self.truncation_degree})"

    def __eq__(self, other):
        return (
            isinstance(other, HopfPresentation)
            and self.alphabet == other.alphabet
            and self.truncation_degree == other.truncation_degree
            and self.reduced_coproducts == other.reduced_coproducts
        )

    def with_truncation(self, d: int) -> HopfPresentation:
        return HopfPresentation(self.alphabet, self.reduced_coproducts, d)

    def generators_in_order(self):
        """Generators sorted by degree, ties kept in presentation order."""
        return sorted(self.alphabet, key=lambda g: g.degree)

    def _check_degree(self, x: Element):
        if x.alphabet != self.alphabet:
            raise AlphabetError("element is not over the presentation's alphabet")
        for d in x.degrees():
            if d > self.truncation_degree:
                raise TruncationError(f"degree {d} exceeds truncation degree {self.truncation_degree}")

    def word_coproduct(self, word: Word) -> TensorSquareElement:
        cached = self._delta.get(word)
        if cached is not None:
            return cached
        a = self.alphabet
        if not word:
            out = TensorSquareElement._raw(a, {(UNIT, UNIT): 1})
        elif len(word) == 1:
            g = word[0]
            terms = dict(self.reduced_coproducts[g]._terms)
            terms[(word, UNIT)] = terms.get((word, UNIT), 0) + 1
            terms[(UNIT, word)] = terms.get((UNIT, word), 0) + 1
            out = TensorSquareElement._raw(a, terms)
        else:
            out = tensor_multiply(self.word_coproduct(word[:-1]), self.word_coproduct(word[-1:]))
        self._delta[word] = out
        return out


def full_coproduct(p: HopfPresentation, x: Element) -> TensorSquareElement:
    """Δ(x), the multiplicative extension of the generator coproducts."""
    p._check_degree(x)
    out: dict = {}
    for w, c in x._terms.items():
        for k, v in p.word_coproduct(w)._terms.items():
            out[k] = out.get(k, 0) + c * v
    return TensorSquareElement._raw(p.alphabet, out)


def reduced_coproduct(p: HopfPresentation, x: Element) -> TensorSquareElement:
    """Δ(x) - x⊗1 - 1⊗x."""
    if x.coefficient(UNIT):
        raise ValueError("reduced coproduct is defined on the augmentation ideal only")
    full = full_coproduct(p, x)
    terms = dict(full._terms)
    for w, c in x._terms.items():
        terms[(w, UNIT)] = terms.get((w, UNIT), 0) - c
        terms[(UNIT, w)] = terms.get((UNIT, w), 0) - c
    return TensorSquareElement._raw(p.alphabet, terms)


def is_primitive(p: HopfPresentation, x: Element) -> bool:
    return not reduced_coproduct(p, x)


@dataclass
class Report:
    """Outcome of a verification pass; failures are data, not exceptions."""

    check: str
    passed: bool
    degree: int | None = None
    element: str | None = None
    detail: str = ""

    def __bool__(self):
        return self.passed

    def as_dict(self) -> dict:
        return {
            "check": self.check,
            "passed": self.passed,
            "degree": self.degree,
            "element": self.element,
            "detail": self.detail,
        }


def _apply_left(p: HopfPresentation, t: TensorSquareElement):
    """(Δ⊗Id) t as a dict on word triples."""
    out: dict = {}
    for (l, r), c in t._terms.items():
        for (a, b), v in p.word_coproduct(l)._terms.items():
            k = (a, b, r)
            out[k] = out.get(k, 0) + c * v
    return {k: v for k, v in out.items() if v}


def _apply_right(p: HopfPresentation, t: TensorSquareElement):
    """(Id⊗Δ) t as a dict on word triples."""
    out: dict = {}
    for (l, r), c in t._terms.items():
        for (a, b), v in p.word_coproduct(r)._terms.items():
            k = (l, a, b)
            out[k] = out.get(k, 0) + c * v
    return {k: v for k, v in out.items() if v}


def verify_coassociativity(p: HopfPresentation, D: int | None = None) -> Report:
    """(Id⊗Δ)Δ = (Δ⊗Id)Δ on generators of degree ≤ D.

    Both sides are algebra maps, so agreement on generators is agreement
    everywhere.
    """
    D = p.truncation_degree if D is None else min(D, p.truncation_degree)
    for g in p.generators_in_order():
        if g.degree > D:
            break
        delta = p.word_coproduct((g.id,))
        if _apply_left(p, delta) != _apply_right(p, delta):
            return Report("coassociativity", False, g.degree, g.id, "(Id⊗Δ)Δ ≠ (Δ⊗Id)Δ")
    return Report("coassociativity", True, D)


def counit(x: Element) -> int:
    return x.coefficient(UNIT)


def verify_counit(p: HopfPresentation, D: int | None = None) -> Report:
    """(Id⊗ε)Δ = Id = (ε⊗Id)Δ on generators of degree ≤ D."""
    D = p.truncation_degree if D is None else min(D, p.truncation_degree)
    for g in p.generators_in_order():
        if g.degree > D:
            break
        w = (g.id,)
        delta = p.word_coproduct(w)
        right = {l: c for (l, r), c in delta._terms.items() if r == UNIT}
        left = {r: c for (l, r), c in delta._terms.items() if l == UNIT}
        if right != {w: 1}:
            return Report("counit", False, g.degree, g.id, "(Id⊗ε)Δ ≠ Id")
        if left != {w: 1}:
            return Report("counit", False, g.degree, g.id, "(ε⊗Id)Δ ≠ Id")
    return Report("counit", True, D)


def _word_sign(p: HopfPresentation, word: Word) -> int:
    """Sign of reversing a word of graded letters."""
    degs = [p.alphabet.degree(x) & 1 for x in word]
    odd = sum(degs)
    # pairs of odd letters
    return -1 if (odd * (odd - 1) // 2) & 1 else 1


def _word_antipode(p: HopfPresentation, word: Word) -> Element:
    cached = p._antipode.get(word)
    if cached is not None:
        return cached
    a = p.alphabet
    if not word:
        out = a.one()
    elif len(word) == 1:
        # m(S⊗Id)Δ(g) = 0 gives S(g) = -g - Σ S(g')g''
        out = -a.word(*word)
        for (l, r), c in p.reduced_coproducts[word[0]]._terms.items():
            out = out - c * (_word_antipode(p, l) * Element._raw(a, {r: 1}))
    else:
        out = a.one()
        for x in reversed(word):
            out = out * _word_antipode(p, (x,))
        out = out * _word_sign(p, word)
    p._antipode[word] = out
    return out


def antipode(p: HopfPresentation, x: Element) -> Element:
    """The graded antipode, an anti-automorphism with Koszul sign."""
    p._check_degree(x)
    out: dict[Word, int] = {}
    for w, c in x._terms.items():
        for k, v in _word_antipode(p, w)._terms.items():
            out[k] = out.get(k, 0) + c * v
    return Element._raw(p.alphabet, out)


def _antipode_composites(p: HopfPresentation, word: Word):
    """m(Id⊗S)Δ(word) and m(S⊗Id)Δ(word)."""
    a = p.alphabet
    left: dict[Word, int] = {}
    right: dict[Word, int] = {}
    for (l, r), c in p.word_coproduct(word)._terms.items():
        for w, v in _word_antipode(p, r)._terms.items():
            k = l + w
            left[k] = left.get(k, 0) + c * v
        for w, v in _word_antipode(p, l)._terms.items():
            k = w + r
            right[k] = right.get(k, 0) + c * v
    return Element._raw(a, left), Element._raw(a, right)


def verify_antipode(p: HopfPresentation, D: int | None = None) -> Report:
    """m(Id⊗S)Δ = ηε = m(S⊗Id)Δ on every word of degree ≤ D."""
    D = p.truncation_degree if D is None else min(D, p.truncation_degree)
    for d in range(D + 1):
        for w in p.alphabet.words(d):
            expect = p.alphabet.one() if not w else p.alphabet.zero()
            left, right = _antipode_composites(p, w)
            if left != expect:
                return Report("antipode", False, d, format_word(w), "m(Id⊗S)Δ ≠ ηε")
            if right != expect:
                return Report("antipode", False, d, format_word(w), "m(S⊗Id)Δ ≠ ηε")
    return Report("antipode", True, D)


def verify_multiplicativity(p: HopfPresentation, samples: int = 20, seed: int = 0) -> Report:
    """Spot-check Δ(xy) = Δ(x)Δ(y) on random words."""
    rng = random.Random(seed)
    D = p.truncation_degree
    words = [w for w in p.alphabet.words_upto(D) if w]
    a = p.alphabet
    for _ in range(samples):
        if not words:
            break
        x, y = rng.choice(words), rng.choice(words)
        if a.word_degree(x) + a.word_degree(y) > D:
            continue
        lhs = p.word_coproduct(x + y)
        rhs = tensor_multiply(p.word_coproduct(x), p.word_coproduct(y))
        if lhs != rhs:
            return Report("multiplicativity", False, a.word_degree(x + y), format_word(x + y))
    return Report("multiplicativity", True, D)


def verify_hopf_axioms(p: HopfPresentation, D: int | None = None) -> list[Report]:
    return [verify_coassociativity(p, D), verify_counit(p, D), verify_antipode(p, D)]


@dataclass
class DualAlgebraTable:
    """Structure constants of the graded dual in the basis dual to words.

    ``constants[(w1, w2)][w]`` is the coefficient of ``w1⊗w2`` in Δ(w).
    """

    alphabet: Alphabet
    max_degree: int
    labels: dict[int, tuple[Word, ...]]
    constants: dict[tuple[Word, Word], dict[Word, int]]

    def product(self, w1: Word, w2: Word) -> dict[Word, int]:
        return dict(self.constants.get((tuple(w1), tuple(w2)), {}))


def dual_multiplication_table(p: HopfPresentation, D: int | None = None) -> DualAlgebraTable:
    D = p.truncation_degree if D is None else min(D, p.truncation_degree)
    labels = {d: p.alphabet.words(d) for d in range(D + 1)}
    constants: dict[tuple[Word, Word], dict[Word, int]] = {}
    for d in range(D + 1):
        for w in labels[d]:
            for (l, r), c in p.word_coproduct(w)._terms.items():
                constants.setdefault((l, r), {})[w] = c
    return DualAlgebraTable(p.alphabet, D, labels, constants)


def lie_hopf_presentation(alphabet: Alphabet, D: int) -> HopfPresentation:
    """The primitively generated presentation on ``alphabet``."""
    return HopfPresentation(alphabet, {}, D)


@dataclass
class IsoCandidate:
    """Images of source generators in the target algebra."""

    images: dict[str, Element]

    @property
    def triangular(self) -> bool:
        """Each image is its own generator plus decomposable words."""
        for gid, img in self.images.items():
            linear = {w: c for w, c in img._terms.items() if len(w) == 1}
            if linear != {(gid,): 1}:
                return False
        return True


def apply_algebra_map(f: IsoCandidate, x: Element, target: Alphabet) -> Element:
    out: dict[Word, int] = {}
    for w, c in x._terms.items():
        img = target.one()
        for letter in w:
            img = img * f.images[letter]
        for k, v in img._terms.items():
            out[k] = out.get(k, 0) + c * v
    return Element._raw(target, out)


def _apply_tensor_map(f: IsoCandidate, t: TensorSquareElement, target: Alphabet) -> TensorSquareElement:
    out = TensorSquareElement(target)
    cache: dict[Word, Element] = {}

    def img(w):
        if w not in cache:
            cache[w] = apply_algebra_map(f, Element._raw(t.alphabet, {w: 1}), target)
        return cache[w]

    for (l, r), c in t._terms.items():
        out = out + tensor(img(l), img(r)) * c
    return out


def verify_hopf_iso(f: IsoCandidate, src: HopfPresentation, dst: HopfPresentation, D: int | None = None) -> Report:
    """Check that ``f`` extends to a graded Hopf isomorphism through degree D."""
    D = min(src.truncation_degree, dst.truncation_degree) if D is None else D
    sa, da = src.alphabet, dst.alphabet
    if set(f.images) != set(sa.ids):
        raise PresentationError("iso candidate must give an image for every source generator")
    for gid, img in f.images.items():
        if img.alphabet != da:
            raise AlphabetError(f"image of {gid} is not over the target alphabet")
        if img.degrees() - {sa.degree(gid)}:
            raise PresentationError(f"image of {gid} is not homogeneous of degree {sa.degree(gid)}")

    # (i) linear parts unimodular degree by degree
    degrees = sorted({g.degree for g in sa} | {g.degree for g in da})
    for d in degrees:
        if d > D:
            break
        s_ids = [g.id for g in sa if g.degree == d]
        t_ids = [g.id for g in da if g.degree == d]
        if len(s_ids) != len(t_ids):
            return Report("iso.generators", False, d, None,
                          f"{len(s_ids)} source vs {len(t_ids)} target generators")
        lin = IntMatrix.from_rows([[f.images[s].coefficient((t,)) for s in s_ids] for t in t_ids], cols=len(s_ids))
        if not lin.is_unimodular():
            return Report("iso.generators", False, d, None, "linear part is not unimodular")

    for g in src.generators_in_order():
        if g.degree > D:
            break
        img = f.images[g.id]
        # (iii) counit: images have no constant term
        if counit(img):
            return Report("iso.counit", False, g.degree, g.id, "ε∘f ≠ ε")
        # (ii) coproduct compatibility
        lhs = _apply_tensor_map(f, src.word_coproduct((g.id,)), da)
        rhs = full_coproduct(dst, img)
        if lhs != rhs:
            return Report("iso.coproduct", False, g.degree, g.id, f"(f⊗f)Δ({g.id}) ≠ Δ(f({g.id}))")
        # antipode compatibility follows; spot-check it anyway
        s_img = apply_algebra_map(f, antipode(src, sa.gen(g.id)), da)
        if s_img != antipode(dst, img):
            return Report("iso.antipode", False, g.degree, g.id, "f∘S ≠ S∘f")
    return Report("iso", True, D)
