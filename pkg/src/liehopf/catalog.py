"""Named Hopf presentations, the 4-manifold criterion, desuspension obstructions."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb

from .errors import PresentationError
from .freealg import Alphabet, Element, TensorSquareElement
from .hopf import HopfPresentation, IsoCandidate, verify_hopf_iso
from .linz import IntMatrix
from .primitivize import (
    ChangeOfBasis,
    ObstructionCertificate,
    PrimitiveCorrection,
    lie_hopf_decision,
    primitivize_generator,
)


def _tensor(alphabet, pairs) -> TensorSquareElement:
    terms = {}
    for l, r, c in pairs:
        key = (tuple(l), tuple(r))
        terms[key] = terms.get(key, 0) + c
    return TensorSquareElement(alphabet, terms)


def leibnitz(D: int) -> HopfPresentation:
    """Δu_n = Σ_{i+j=n} u_i⊗u_j with deg u_n = 2n (NSymm)."""
    n_max = D // 2
    a = Alphabet((f"u{n}", 2 * n) for n in range(1, n_max + 1))
    red = {
        f"u{n}": _tensor(a, [((f"u{i}",), (f"u{n - i}",), 1) for i in range(1, n)])
        for n in range(1, n_max + 1)
    }
    return HopfPresentation(a, red, D)


def binomial(D: int) -> HopfPresentation:
    """Δw_n = Σ_k C(n,k) w_k⊗w_{n-k} with deg w_n = 2n."""
    n_max = D // 2
    a = Alphabet((f"w{n}", 2 * n) for n in range(1, n_max + 1))
    red = {
        f"w{n}": _tensor(a, [((f"w{k}",), (f"w{n - k}",), comb(n, k)) for k in range(1, n)])
        for n in range(1, n_max + 1)
    }
    return HopfPresentation(a, red, D)


def primitive_spheres(D: int) -> HopfPresentation:
    """Primitive ξ_n of degree 2n (loops on a wedge of even spheres)."""
    a = Alphabet((f"xi{n}", 2 * n) for n in range(1, D // 2 + 1))
    return HopfPresentation(a, {}, D)


def polynomial_primitive(D: int) -> HopfPresentation:
    """One primitive generator w of degree 2."""
    return HopfPresentation(Alphabet([("w", 2)]), {}, D)


def _fixed(name: str, D: int, gens, pairs_by_gen) -> HopfPresentation:
    top = max(d for _, d in gens)
    if D < top:
        raise PresentationError(f"preset {name} needs truncation degree >= {top}, got {D}")
    a = Alphabet(gens)
    return HopfPresentation(a, {g: _tensor(a, pairs) for g, pairs in pairs_by_gen.items()}, D)


def cp2(D: int = 4) -> HopfPresentation:
    return _fixed("cp2", D, [("u1", 2), ("u2", 4)], {"u2": [(("u1",), ("u1",), 1)]})


def s2xs2(D: int = 4) -> HopfPresentation:
    return _fixed(
        "s2xs2", D, [("u1", 2), ("u2", 2), ("v", 4)],
        {"v": [(("u1",), ("u2",), 1), (("u2",), ("u1",), 1)]},
    )


def square_manifold(D: int = 6) -> HopfPresentation:
    return _fixed(
        "square_manifold", D, [("a1", 3), ("a2", 3), ("b", 6)],
        {"b": [(("a1",), ("a2",), 1), (("a2",), ("a1",), -1)]},
    )


def pentagon_manifold(D: int = 7) -> HopfPresentation:
    # b's are listed before a's so that a_i|b_i is the preferred column, as
    # in the dual coalgebra built from cohomology (higher degrees first)
    gens = [(f"b{i}", 4) for i in range(1, 6)] + [(f"a{i}", 3) for i in range(1, 6)] + [("c", 7)]
    pairs = []
    for i in range(1, 6):
        pairs.append(((f"a{i}",), (f"b{i}",), 1))
        pairs.append(((f"b{i}",), (f"a{i}",), 1))
    return _fixed("pentagon_manifold", D, gens, {"c": pairs})


PRESETS = {
    "leibnitz": leibnitz,
    "binomial": binomial,
    "primitive_spheres": primitive_spheres,
    "polynomial_primitive": polynomial_primitive,
    "cp2": cp2,
    "s2xs2": s2xs2,
    "square_manifold": square_manifold,
    "pentagon_manifold": pentagon_manifold,
}

DEFAULT_DEGREE = {
    "leibnitz": 8,
    "binomial": 8,
    "primitive_spheres": 8,
    "polynomial_primitive": 8,
    "cp2": 4,
    "s2xs2": 4,
    "square_manifold": 6,
    "pentagon_manifold": 7,
}


def preset(name: str, D: int | None = None) -> HopfPresentation:
    try:
        builder = PRESETS[name]
    except KeyError:
        raise ValueError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}") from None
    D = DEFAULT_DEGREE[name] if D is None else D
    if D < 1:
        raise PresentationError("truncation degree must be >= 1")
    return builder(D)


def _as_symmetric(a) -> IntMatrix:
    m = a if isinstance(a, IntMatrix) else IntMatrix.from_rows(a)
    if m.rows != m.cols or m.rows < 1:
        raise ValueError("intersection form must be a nonempty square matrix")
    if m != m.transpose():
        raise ValueError("intersection form must be symmetric")
    return m


def presentation_from_intersection_form(a, D: int = 4) -> HopfPresentation:
    """Degree-2 primitives u_1..u_k and v of degree 4 with Δ̃v = Σ A_ij u_i⊗u_j."""
    m = _as_symmetric(a)
    k = m.rows
    if D < 4:
        raise PresentationError(f"preset intersection_form needs truncation degree >= 4, got {D}")
    alphabet = _form_alphabet(k)
    pairs = [((f"u{i + 1}",), (f"u{j + 1}",), m[i, j]) for i in range(k) for j in range(k) if m[i, j]]
    return HopfPresentation(alphabet, {"v": _tensor(alphabet, pairs)}, D)


@lru_cache(maxsize=None)
def _form_alphabet(k: int) -> Alphabet:
    # shared across forms of the same rank so its word lists are built once
    return Alphabet([(f"u{i}", 2) for i in range(1, k + 1)] + [("v", 4)])


@dataclass(frozen=True)
class GammaSolution:
    gamma: IntMatrix
    lam: IntMatrix

    def holds(self, a) -> bool:
        """Λᵀ A Λ = -Γ - Γᵀ."""
        m = _as_symmetric(a)
        lhs = self.lam.transpose() @ m @ self.lam
        g = self.gamma
        rhs = IntMatrix.from_rows(
            [[-g[i, j] - g[j, i] for j in range(g.cols)] for i in range(g.rows)], cols=g.cols
        )
        return lhs == rhs


@dataclass(frozen=True)
class GammaObstruction:
    """First odd diagonal entry of ΛᵀAΛ; no Γ exists."""

    index: int
    value: int


def solve_gamma(a, lam=None) -> GammaSolution | GammaObstruction:
    """Solve Λᵀ A Λ = -Γ - Γᵀ for Γ, Λ defaulting to the identity.

    Γ is taken upper triangular: minus the strict upper part minus half the
    diagonal.  It exists iff every diagonal entry is even.
    """
    m = _as_symmetric(a)
    k = m.rows
    lam = IntMatrix.identity(k) if lam is None else (lam if isinstance(lam, IntMatrix) else IntMatrix.from_rows(lam))
    if not lam.is_unimodular() or lam.rows != k:
        raise ValueError("Λ must be a unimodular k×k matrix")
    b = lam.transpose() @ m @ lam
    for i in range(k):
        if b[i, i] % 2:
            return GammaObstruction(i, b[i, i])
    gamma = [[0] * k for _ in range(k)]
    for i in range(k):
        gamma[i][i] = -b[i, i] // 2
        for j in range(i + 1, k):
            gamma[i][j] = -b[i, j]
    return GammaSolution(IntMatrix.from_rows(gamma, cols=k), lam)


@dataclass(frozen=True)
class ObstructionElement:
    n: int
    a_xi: Element
    obstruction: Element


def desuspension_obstruction(n: int, D: int | None = None) -> ObstructionElement:
    """The primitive image of ξ_n in the binomial Hopf algebra and w_n minus it."""
    D = 2 * n if D is None else D
    if n < 1:
        raise ValueError("n must be >= 1")
    if 2 * n > D:
        raise PresentationError(f"n={n} needs truncation degree >= {2 * n}, got {D}")
    p = binomial(D)
    out = primitivize_generator(p, f"w{n}")
    if isinstance(out, ObstructionCertificate):  # pragma: no cover - binomial is always solvable
        raise RuntimeError(f"unexpected obstruction for w{n}: {out.summary()}")
    a_xi = p.alphabet.gen(f"w{n}") + out.correction
    return ObstructionElement(n, a_xi, -out.correction)


def desuspension_iso(D: int) -> IsoCandidate:
    """ξ_n ↦ a₊ξ_n from the primitive-spheres presentation into the binomial one."""
    target = binomial(D)
    images = {}
    for n in range(1, D // 2 + 1):
        ob = desuspension_obstruction(n, D)
        images[f"xi{n}"] = Element(target.alphabet, ob.a_xi.terms)
    return IsoCandidate(images)


def verify_desuspension_iso(D: int):
    return verify_hopf_iso(desuspension_iso(D), primitive_spheres(D), binomial(D), D)
