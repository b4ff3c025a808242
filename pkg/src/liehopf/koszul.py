"""Integral cohomology of moment-angle complexes via the Koszul DGA.

The DGA is ``Λ[u_1..u_m] ⊗ ℤ[v_1..v_m] / SR(K)`` with ``|u_i| = 1``,
``|v_i| = 2``, ``d(u_i) = v_i`` and ``d(v_i) = 0``.  A monomial ``u_S v^a`` is
stored as ``(S, a)`` with ``S`` an ascending tuple of vertices (1-based) and
``a`` an exponent vector; it vanishes when the support of ``a`` is not a face.

Cohomology is computed degree by degree with Hermite/Smith forms.  Class
representatives are chosen greedily among cocycle *monomials* in monomial
order when those give a ℤ-basis of the free part, and fall back to the
Smith-form basis otherwise.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from itertools import combinations
from typing import Callable, Iterable, Mapping

from .errors import ComplexError, TorsionError
from .freealg import Alphabet, TensorSquareElement
from .hopf import HopfPresentation
from .linz import IntMatrix, hermite_normal_form, rank, smith_normal_form

Monomial = tuple[tuple[int, ...], tuple[int, ...]]


class SimplicialComplex:
    """Abstract simplicial complex on vertices ``1..m``."""

    def __init__(self, m: int, faces: Iterable[Iterable[int]]):
        if m < 0:
            raise ComplexError("vertex count must be >= 0")
        fs = {frozenset(f) for f in faces}
        fs.add(frozenset())
        for f in fs:
            for v in f:
                if not (isinstance(v, int) and 1 <= v <= m):
                    raise ComplexError(f"face {sorted(f)} uses vertex {v!r} outside 1..{m}")
        for v in range(1, m + 1):
            if frozenset([v]) not in fs:
                raise ComplexError(f"vertex {v} is not a face")
        for f in fs:
            for x in f:
                if f - {x} not in fs:
                    raise ComplexError(f"face set is not closed under subsets: {sorted(f)} without {x}")
        self.m = m
        self.faces: frozenset[frozenset[int]] = frozenset(fs)

    @classmethod
    def from_maximal_faces(cls, m: int, facets: Iterable[Iterable[int]]) -> SimplicialComplex:
        fs = set()
        for f in facets:
            f = tuple(f)
            for k in range(len(f) + 1):
                fs.update(frozenset(c) for c in combinations(f, k))
        for v in range(1, m + 1):
            fs.add(frozenset([v]))
        return cls(m, fs)

    @classmethod
    def simplex(cls, m: int) -> SimplicialComplex:
        return cls.from_maximal_faces(m, [range(1, m + 1)])

    @classmethod
    def simplex_boundary(cls, m: int) -> SimplicialComplex:
        return cls.from_maximal_faces(m, combinations(range(1, m + 1), m - 1))

    @classmethod
    def polygon(cls, n: int) -> SimplicialComplex:
        return cls.from_maximal_faces(n, [(i, i % n + 1) for i in range(1, n + 1)])

    def is_face(self, vertices) -> bool:
        return frozenset(vertices) in self.faces

    @property
    def dimension(self) -> int:
        return max(len(f) for f in self.faces) - 1

    def maximal_faces(self) -> list[tuple[int, ...]]:
        out = [f for f in self.faces if not any(f < g for g in self.faces)]
        return sorted((tuple(sorted(f)) for f in out), key=lambda t: (len(t), t))

    def minimal_non_faces(self) -> list[tuple[int, ...]]:
        out = []
        for k in range(1, self.m + 1):
            for c in combinations(range(1, self.m + 1), k):
                s = frozenset(c)
                if s not in self.faces and all(s - {x} in self.faces for x in s):
                    out.append(c)
        return out

    def moment_angle_dimension(self) -> int:
        return self.m + self.dimension + 1


def _support(a: tuple[int, ...]) -> frozenset[int]:
    return frozenset(i + 1 for i, e in enumerate(a) if e)


def _format_monomial(mono: Monomial) -> str:
    s, a = mono
    parts = [f"u{i}" for i in s]
    for i, e in enumerate(a):
        if e == 1:
            parts.append(f"v{i + 1}")
        elif e:
            parts.append(f"v{i + 1}^{e}")
    return "".join(parts) or "1"


class DgaElement:
    """Integer combination of nonzero Koszul monomials."""

    __slots__ = ("dga", "_terms")

    def __init__(self, dga: KoszulDGA, terms: Mapping[Monomial, int] | None = None):
        self.dga = dga
        self._terms = {k: v for k, v in (terms or {}).items() if v}

    @property
    def terms(self) -> dict[Monomial, int]:
        return dict(self._terms)

    def items(self):
        key = self.dga.monomial_key
        return sorted(self._terms.items(), key=lambda t: key(t[0]))

    def degrees(self) -> set[int]:
        return {self.dga.degree(k) for k in self._terms}

    def __bool__(self):
        return bool(self._terms)

    def __add__(self, other: DgaElement) -> DgaElement:
        out = dict(self._terms)
        for k, v in other._terms.items():
            out[k] = out.get(k, 0) + v
        return DgaElement(self.dga, out)

    def __neg__(self):
        return DgaElement(self.dga, {k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return DgaElement(self.dga, {k: v * other for k, v in self._terms.items()})
        return self.dga.multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, DgaElement):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __str__(self):
        if not self._terms:
            return "0"
        out = []
        for i, (mono, c) in enumerate(self.items()):
            body = _format_monomial(mono)
            mag = body if abs(c) == 1 and body != "1" else (str(abs(c)) if body == "1" else f"{abs(c)}*{body}")
            out.append((("-" if c < 0 else "") if i == 0 else (" - " if c < 0 else " + ")) + mag)
        return "".join(out)

    __repr__ = __str__


_FACTOR = re.compile(r"([uv])(\d+)(?:\^(\d+))?")


class KoszulDGA:
    """The Koszul DGA of a simplicial complex, evaluated degree by degree."""

    def __init__(self, complex: SimplicialComplex, monomial_key: Callable[[Monomial], object] | None = None):
        self.complex = complex
        self.m = complex.m
        self.monomial_key = monomial_key or (lambda mono: (mono[0], mono[1]))
        self._basis: dict[int, list[Monomial]] = {}

    def degree(self, mono: Monomial) -> int:
        return len(mono[0]) + 2 * sum(mono[1])

    def is_nonzero(self, mono: Monomial) -> bool:
        return self.complex.is_face(_support(mono[1]))

    def basis(self, d: int) -> list[Monomial]:
        """Nonzero monomials of degree ``d`` in monomial order."""
        if d < 0:
            return []
        if d in self._basis:
            return self._basis[d]
        out = []
        faces = sorted(self.complex.faces, key=lambda f: (len(f), sorted(f)))
        for ns in range(d % 2, min(d, self.m) + 1, 2):
            k = (d - ns) // 2
            exps = []
            for f in faces:
                if len(f) > k or (k > 0 and not f) or (k == 0 and f):
                    continue
                verts = sorted(f)
                if not verts:
                    exps.append((0,) * self.m)
                    continue
                for cuts in combinations(range(1, k), len(verts) - 1):
                    bounds = (0,) + cuts + (k,)
                    a = [0] * self.m
                    for idx, v in enumerate(verts):
                        a[v - 1] = bounds[idx + 1] - bounds[idx]
                    exps.append(tuple(a))
            for s in combinations(range(1, self.m + 1), ns):
                out.extend((s, a) for a in exps)
        out.sort(key=self.monomial_key)
        self._basis[d] = out
        return out

    # constructors

    def element(self, terms: Mapping[Monomial, int]) -> DgaElement:
        clean = {}
        for (s, a), c in terms.items():
            s, a = tuple(s), tuple(a)
            if len(a) != self.m:
                raise ValueError(f"exponent vector {a} needs length {self.m}")
            if sorted(set(s)) != list(s):
                raise ValueError("exterior part must be strictly ascending; use multiply for unsorted products")
            if self.is_nonzero((s, a)):
                clean[(s, a)] = clean.get((s, a), 0) + c
        return DgaElement(self, clean)

    def one(self) -> DgaElement:
        return DgaElement(self, {((), (0,) * self.m): 1})

    def u(self, i: int) -> DgaElement:
        self._check_vertex(i)
        return DgaElement(self, {((i,), (0,) * self.m): 1})

    def v(self, i: int) -> DgaElement:
        self._check_vertex(i)
        a = [0] * self.m
        a[i - 1] = 1
        return DgaElement(self, {((), tuple(a)): 1})

    def _check_vertex(self, i: int):
        if not 1 <= i <= self.m:
            raise ValueError(f"vertex {i} outside 1..{self.m}")

    def parse(self, text: str) -> DgaElement:
        """Parse ``"u5*u1*v3"``, ``"u1v3 - u3v1"``, ``"2*v1^2"``; factors multiply in order."""
        src = text.replace("−", "-").replace(" ", "")
        if not src:
            raise ValueError("empty expression")
        total = DgaElement(self)
        for sign, body in re.findall(r"([+-]?)([^+-]+)", src):
            coeff = 1
            m = re.match(r"^(\d+)\*?(.*)$", body)
            if m:
                coeff = int(m.group(1))
                body = m.group(2)
            term = self.one()
            pos = 0
            body = body.replace("*", "")
            while pos < len(body):
                fm = _FACTOR.match(body, pos)
                if fm is None:
                    raise ValueError(f"cannot parse {body[pos:]!r} in {text!r}")
                kind, idx, power = fm.group(1), int(fm.group(2)), int(fm.group(3) or 1)
                factor = self.u(idx) if kind == "u" else self.v(idx)
                for _ in range(power):
                    term = term * factor
                pos = fm.end()
            total = total + term * (-coeff if sign == "-" else coeff)
        return total

    # structure

    def multiply_monomials(self, x: Monomial, y: Monomial) -> tuple[int, Monomial | None]:
        s, a = x
        t, b = y
        if set(s) & set(t):
            return 0, None
        inversions = sum(1 for i in s for j in t if i > j)
        c = tuple(p + q for p, q in zip(a, b))
        if not self.complex.is_face(_support(c)):
            return 0, None
        return (-1 if inversions & 1 else 1), (tuple(sorted(s + t)), c)

    def multiply(self, x: DgaElement, y: DgaElement) -> DgaElement:
        out: dict[Monomial, int] = {}
        for mx, cx in x._terms.items():
            for my, cy in y._terms.items():
                sign, mono = self.multiply_monomials(mx, my)
                if sign:
                    out[mono] = out.get(mono, 0) + sign * cx * cy
        return DgaElement(self, out)

    def differential_monomial(self, mono: Monomial) -> dict[Monomial, int]:
        s, a = mono
        out = {}
        for j, i in enumerate(s):
            b = list(a)
            b[i - 1] += 1
            b = tuple(b)
            if not self.complex.is_face(_support(b)):
                continue
            key = (s[:j] + s[j + 1:], b)
            out[key] = out.get(key, 0) + (-1 if j & 1 else 1)
        return out

    def differential(self, x: DgaElement) -> DgaElement:
        out: dict[Monomial, int] = {}
        for mono, c in x._terms.items():
            for k, v in self.differential_monomial(mono).items():
                out[k] = out.get(k, 0) + c * v
        return DgaElement(self, out)

    def differential_matrix(self, d: int) -> IntMatrix:
        """Matrix of d: C^d → C^(d+1) in the monomial bases."""
        src, dst = self.basis(d), self.basis(d + 1)
        index = {mono: i for i, mono in enumerate(dst)}
        rows = [[0] * len(src) for _ in dst]
        for j, mono in enumerate(src):
            for k, v in self.differential_monomial(mono).items():
                rows[index[k]][j] += v
        return IntMatrix.from_rows(rows, cols=len(src))

    def vector(self, x: DgaElement, d: int) -> list[int]:
        index = {mono: i for i, mono in enumerate(self.basis(d))}
        vec = [0] * len(index)
        for mono, c in x._terms.items():
            if self.degree(mono) != d:
                raise ValueError(f"element is not homogeneous of degree {d}")
            vec[index[mono]] += c
        return vec

    def from_vector(self, vec, d: int) -> DgaElement:
        return DgaElement(self, {mono: c for mono, c in zip(self.basis(d), vec) if c})


def build_dga(complex: SimplicialComplex, monomial_key=None) -> KoszulDGA:
    return KoszulDGA(complex, monomial_key)


def differential(x: DgaElement) -> DgaElement:
    return x.dga.differential(x)


@dataclass(frozen=True)
class CohomologyClass:
    degree: int
    representative: DgaElement
    label: str


@dataclass
class _Degree:
    degree: int
    kernel_rank: int           # rank of d on C^d
    uinv_tail: list[list[int]]  # rows of the HNF inverse that give cocycle coordinates
    snf_u: IntMatrix
    snf_rank: int
    invariant_factors: list[int]
    torsion: list[int]
    free_rank: int
    classes: list[CohomologyClass] = field(default_factory=list)
    coord_inverse: IntMatrix | None = None


class CohomologyResult:
    """Per-degree ranks, torsion and a ℤ-basis of the free part."""

    def __init__(self, dga: KoszulDGA, max_degree: int, data: dict[int, _Degree]):
        self.dga = dga
        self.max_degree = max_degree
        self._data = data

    def rank(self, d: int) -> int:
        return self._data[d].free_rank if d in self._data else 0

    def ranks(self) -> list[int]:
        return [self.rank(d) for d in range(self.max_degree + 1)]

    def torsion(self, d: int) -> list[int]:
        return list(self._data[d].torsion) if d in self._data else []

    def torsion_free(self) -> bool:
        return not any(self._data[d].torsion for d in self._data)

    def classes(self, d: int | None = None) -> list[CohomologyClass]:
        if d is not None:
            return list(self._data[d].classes) if d in self._data else []
        return [c for k in sorted(self._data) for c in self._data[k].classes]

    def free_coordinates(self, x: DgaElement, d: int) -> list[int]:
        """Coordinates of the class of cocycle ``x`` in the Smith basis of the free part."""
        data = self._data[d]
        vec = self.dga.vector(x, d)
        if self.dga.differential(x):
            raise ValueError("element is not a cocycle")
        zeta = [sum(r[j] * vec[j] for j in range(len(vec))) for r in data.uinv_tail]
        eta = data.snf_u @ zeta if zeta else []
        return eta[data.snf_rank:]

    def coordinates(self, x: DgaElement, d: int) -> dict[str, int]:
        """Class of cocycle ``x`` in the chosen basis, by label."""
        data = self._data[d]
        if data.torsion:
            raise TorsionError(f"H^{d} has torsion {data.torsion}")
        eta = self.free_coordinates(x, d)
        if not data.classes:
            return {}
        coords = data.coord_inverse @ eta
        return {c.label: v for c, v in zip(data.classes, coords) if v}

    def is_coboundary(self, x: DgaElement, d: int) -> bool:
        if d not in self._data:
            return not x
        data = self._data[d]
        if self.dga.differential(x):
            return False
        vec = self.dga.vector(x, d)
        zeta = [sum(r[j] * vec[j] for j in range(len(vec))) for r in data.uinv_tail]
        if not zeta:
            return not any(vec)
        eta = data.snf_u @ zeta
        factors = data.invariant_factors
        return not any(eta[data.snf_rank:]) and all(eta[i] % factors[i] == 0 for i in range(data.snf_rank))

    def with_representatives(self, named: Mapping[int, Iterable[tuple[str, DgaElement]]]) -> CohomologyResult:
        """Replace the chosen basis in some degrees by named cocycles.

        Raises ``ValueError`` unless the named cocycles form a ℤ-basis of the
        free part in that degree.
        """
        data = dict(self._data)
        for d, items in named.items():
            items = list(items)
            old = self._data[d]
            if old.torsion:
                raise TorsionError(f"H^{d} has torsion {old.torsion}")
            cols = [self.free_coordinates(x, d) for _, x in items]
            if len(cols) != old.free_rank:
                raise ValueError(f"H^{d} has rank {old.free_rank}, got {len(cols)} representatives")
            mat = IntMatrix.from_columns(cols, rows=old.free_rank)
            if old.free_rank and not mat.is_unimodular():
                raise ValueError(f"named cocycles do not form a basis of H^{d}")
            new = replace(old)
            new.classes = [CohomologyClass(d, x, label) for label, x in items]
            new.coord_inverse = hermite_normal_form(mat).u if old.free_rank else None
            data[d] = new
        return CohomologyResult(self.dga, self.max_degree, data)


def cohomology(dga: KoszulDGA, max_degree: int) -> CohomologyResult:
    if max_degree < 0:
        raise ValueError("max_degree must be >= 0")
    data = {}
    for d in range(max_degree + 1):
        n = len(dga.basis(d))
        if n == 0:
            continue
        herm = hermite_normal_form(dga.differential_matrix(d))
        r = herm.rank
        uinv_tail = herm.u_inv.to_rows()[r:]
        kernel = [herm.u.column(j) for j in range(r, n)]
        prev = dga.differential_matrix(d - 1)
        z = n - r
        if prev.cols:
            x_rows = [[sum(row[k] * prev[k, j] for k in range(n)) for j in range(prev.cols)] for row in uinv_tail]
        else:
            x_rows = [[] for _ in range(z)]
        snf = smith_normal_form(IntMatrix.from_rows(x_rows, cols=prev.cols))
        factors = snf.invariant_factors
        rk = len(factors)
        entry = _Degree(
            degree=d,
            kernel_rank=r,
            uinv_tail=uinv_tail,
            snf_u=snf.u,
            snf_rank=rk,
            invariant_factors=list(factors),
            torsion=[f for f in factors if f > 1],
            free_rank=z - rk,
        )
        _choose_representatives(dga, entry, kernel, snf)
        data[d] = entry
    return CohomologyResult(dga, max_degree, data)


def _choose_representatives(dga: KoszulDGA, entry: _Degree, kernel, snf):
    d = entry.degree
    f = entry.free_rank
    if f == 0:
        return

    def free_coords(vec):
        zeta = [sum(r[j] * vec[j] for j in range(len(vec))) for r in entry.uinv_tail]
        return (snf.u @ zeta)[entry.snf_rank:]

    basis = dga.basis(d)
    chosen: list[tuple[int, list[int]]] = []
    for j, mono in enumerate(basis):
        if dga.differential_monomial(mono):
            continue
        vec = [0] * len(basis)
        vec[j] = 1
        eta = free_coords(vec)
        if not any(eta):
            continue
        trial = [c for _, c in chosen] + [eta]
        if rank(IntMatrix.from_columns(trial, rows=f)) == len(trial):
            chosen.append((j, eta))
            if len(chosen) == f:
                break
    mat = IntMatrix.from_columns([c for _, c in chosen], rows=f) if len(chosen) == f else None
    if mat is not None and mat.is_unimodular():
        reps = [dga.from_vector([int(i == j) for i in range(len(basis))], d) for j, _ in chosen]
        entry.coord_inverse = hermite_normal_form(mat).u
    else:
        reps = []
        n = len(basis)
        for i in range(entry.snf_rank, entry.snf_rank + f):
            zeta = snf.u_inv.column(i)
            vec = [sum(kernel[k][t] * zeta[k] for k in range(len(kernel))) for t in range(n)]
            reps.append(dga.from_vector(vec, d))
        entry.coord_inverse = IntMatrix.identity(f)
    entry.classes = [CohomologyClass(d, x, f"h{d}_{i + 1}") for i, x in enumerate(reps)]


def cup_structure(result: CohomologyResult, classes: list[CohomologyClass] | None = None):
    """Products of classes expressed in the chosen basis.

    Returns ``{(label_x, label_y): {label_z: coefficient}}`` for every pair
    whose product degree is within range; zero products map to ``{}``.
    """
    classes = result.classes() if classes is None else classes
    out = {}
    for x in classes:
        for y in classes:
            d = x.degree + y.degree
            if d > result.max_degree:
                continue
            prod = x.representative * y.representative
            if result.torsion(d):
                raise TorsionError(f"H^{d} has torsion {result.torsion(d)}; cup products into it are unsupported")
            out[(x.label, y.label)] = result.coordinates(prod, d) if prod else {}
    return out


def coalgebra_from_ring(result: CohomologyResult, constants=None, truncation_degree: int | None = None) -> HopfPresentation:
    """Dual coalgebra on positive-degree classes: Δ̃(ẑ) = Σ c^z_{xy} x̂⊗ŷ."""
    if not result.torsion_free():
        bad = {d: result.torsion(d) for d in range(result.max_degree + 1) if result.torsion(d)}
        raise TorsionError(f"cohomology has torsion {bad}; dualisation needs a free module")
    constants = cup_structure(result) if constants is None else constants
    # higher degrees are listed first; within a degree, basis order.  Later
    # letters are preferred in canonical corrections, so this favours words
    # that start with the lower-degree class
    positive = sorted((c for c in result.classes() if c.degree > 0), key=lambda c: -c.degree)
    D = truncation_degree or max((c.degree for c in positive), default=1)
    a = Alphabet((c.label, c.degree) for c in positive)
    labels = set(a.ids)
    red: dict[str, dict] = {c.label: {} for c in positive}
    for (x, y), prod in constants.items():
        if x not in labels or y not in labels:
            continue
        for z, coeff in prod.items():
            if z in red:
                red[z][((x,), (y,))] = red[z].get(((x,), (y,)), 0) + coeff
    return HopfPresentation(a, {z: TensorSquareElement(a, t) for z, t in red.items()}, D)
