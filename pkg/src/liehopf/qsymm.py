"""Quasi-symmetric functions in the monomial basis, and their dual NSymm.

Compositions index the monomial quasi-symmetric functions ``M_ω``; products
are overlapping shuffles, coproducts deconcatenation.  NSymm words
``Z_{i1}…Z_{ik}`` pair with compositions by the Kronecker rule
``⟨Z_ω, M_ω'⟩ = [ω = ω']``.
"""
from __future__ import annotations

from itertools import combinations, product
from typing import Iterable, Mapping


class Composition(tuple):
    """Ordered tuple of positive integers."""

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(parts)
        for p in parts:
            if isinstance(p, bool) or not isinstance(p, int) or p < 1:
                raise ValueError(f"composition parts must be positive integers, got {parts!r}")
        return super().__new__(cls, parts)

    @property
    def weight(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def __repr__(self):
        return "(" + ",".join(map(str, self)) + ")"


def compositions(n: int) -> list[Composition]:
    """All compositions of ``n``, shorter first then lexicographic."""
    if n == 0:
        return [Composition()]
    out = []
    for k in range(1, n + 1):
        for cuts in combinations(range(1, n), k - 1):
            bounds = (0,) + cuts + (n,)
            out.append(Composition(bounds[i + 1] - bounds[i] for i in range(k)))
    return out


class QSymmElement:
    """Integer combination of monomial quasi-symmetric functions."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping | None = None):
        clean = {}
        for comp, c in (terms or {}).items():
            if c:
                comp = Composition(comp)
                clean[comp] = clean.get(comp, 0) + int(c)
        self._terms = {k: v for k, v in clean.items() if v}

    @classmethod
    def monomial(cls, parts) -> QSymmElement:
        return cls({Composition(parts): 1})

    @property
    def terms(self) -> dict[Composition, int]:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items(), key=lambda t: (t[0].weight, len(t[0]), tuple(t[0])))

    def coefficient(self, parts) -> int:
        return self._terms.get(Composition(parts), 0)

    def __add__(self, other: QSymmElement) -> QSymmElement:
        out = dict(self._terms)
        for k, v in other._terms.items():
            out[k] = out.get(k, 0) + v
        return QSymmElement(out)

    def __neg__(self):
        return QSymmElement({k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return QSymmElement({k: v * other for k, v in self._terms.items()})
        out: dict = {}
        for a, ca in self._terms.items():
            for b, cb in other._terms.items():
                for comp, m in overlapping_shuffle(a, b)._terms.items():
                    out[comp] = out.get(comp, 0) + ca * cb * m
        return QSymmElement(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, QSymmElement):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for i, (comp, c) in enumerate(self.items()):
            body = f"M{comp!r}"
            mag = body if abs(c) == 1 else f"{abs(c)}*{body}"
            if i == 0:
                parts.append(("-" if c < 0 else "") + mag)
            else:
                parts.append((" - " if c < 0 else " + ") + mag)
        return "".join(parts)

    __repr__ = __str__


def monomial_expand(omega, numvars: int) -> dict[tuple[int, ...], int]:
    """M_ω in ``numvars`` commuting variables, as exponent vector -> coefficient."""
    omega = Composition(omega)
    if numvars < 0:
        raise ValueError("numvars must be >= 0")
    out: dict[tuple[int, ...], int] = {}
    for positions in combinations(range(numvars), len(omega)):
        exps = [0] * numvars
        for pos, part in zip(positions, omega):
            exps[pos] = part
        key = tuple(exps)
        out[key] = out.get(key, 0) + 1
    return out


def overlapping_shuffle(left, right) -> QSymmElement:
    """M_left · M_right as a combination of M_ω.

    Counts the ways to pad ``left`` and ``right`` with zeros to a common
    length ``k`` so that the padded tuples add up to ω with no position left
    empty in both.
    """
    a, b = Composition(left), Composition(right)
    la, lb = len(a), len(b)
    out: dict[Composition, int] = {}
    for k in range(max(la, lb), la + lb + 1):
        for pa in combinations(range(k), la):
            rest = [i for i in range(k) if i not in pa]
            # positions left empty by ``a`` must be filled by ``b``
            need = len(rest)
            if need > lb:
                continue
            for pb in combinations(range(k), lb):
                if not set(rest) <= set(pb):
                    continue
                slots = [0] * k
                for i, x in zip(pa, a):
                    slots[i] += x
                for i, x in zip(pb, b):
                    slots[i] += x
                comp = Composition(slots)
                out[comp] = out.get(comp, 0) + 1
    return QSymmElement(out)


def deconcatenation(omega) -> list[tuple[Composition, Composition]]:
    """The ``k+1`` splittings of ω in order."""
    omega = Composition(omega)
    return [(Composition(omega[:i]), Composition(omega[i:])) for i in range(len(omega) + 1)]


# NSymm side: words in Z_1, Z_2, ... are tuples of positive indices


def nsymm_word(indices) -> tuple[int, ...]:
    return tuple(Composition(indices))


def nsymm_coproduct(word) -> dict[tuple[tuple[int, ...], tuple[int, ...]], int]:
    """Multiplicative extension of Δ(Z_n) = Σ_{i+j=n} Z_i⊗Z_j, Z_0 = 1."""
    out = {((), ()): 1}
    for n in nsymm_word(word):
        letter = [((i,) if i else (), (n - i,) if n - i else ()) for i in range(n + 1)]
        nxt: dict = {}
        for (l, r), c in out.items():
            for l2, r2 in letter:
                key = (l + l2, r + r2)
                nxt[key] = nxt.get(key, 0) + c
        out = nxt
    return out


def pairing(x, omega) -> int:
    """Kronecker pairing of an NSymm word (or combination) with a composition (or combination)."""
    xs = x if isinstance(x, Mapping) else {nsymm_word(x): 1}
    if isinstance(omega, QSymmElement):
        ys = omega.terms
    elif isinstance(omega, Mapping):
        ys = {Composition(k): v for k, v in omega.items()}
    else:
        ys = {Composition(omega): 1}
    return sum(c * ys.get(Composition(w), 0) for w, c in xs.items())


def _tensor_pairing(xt: Mapping, a, b) -> int:
    """⟨Σ c x'⊗x'', M_a⊗M_b⟩."""
    return sum(c for (l, r), c in xt.items() if tuple(l) == tuple(a) and tuple(r) == tuple(b))


def verify_duality(D: int) -> tuple[bool, str]:
    """Check both adjunctions between NSymm and QSymm on weights ≤ D.

    ⟨Δx, α⊗β⟩ = ⟨x, α·β⟩ and ⟨xy, α⟩ = ⟨x⊗y, Δα⟩.
    """
    comps = {n: compositions(n) for n in range(D + 1)}
    for n in range(D + 1):
        for x in comps[n]:
            dx = nsymm_coproduct(x)
            for i in range(n + 1):
                for alpha, beta in product(comps[i], comps[n - i]):
                    lhs = _tensor_pairing(dx, alpha, beta)
                    rhs = pairing(x, overlapping_shuffle(alpha, beta))
                    if lhs != rhs:
                        return False, f"⟨ΔZ{tuple(x)}, M{alpha!r}⊗M{beta!r}⟩: {lhs} ≠ {rhs}"
        for alpha in comps[n]:
            dec = deconcatenation(alpha)
            for i in range(n + 1):
                for x, y in product(comps[i], comps[n - i]):
                    lhs = pairing(tuple(x) + tuple(y), alpha)
                    rhs = sum(1 for l, r in dec if tuple(l) == tuple(x) and tuple(r) == tuple(y))
                    if lhs != rhs:
                        return False, f"⟨Z{tuple(x)}Z{tuple(y)}, M{alpha!r}⟩: {lhs} ≠ {rhs}"
    return True, f"duality holds through weight {D}"
