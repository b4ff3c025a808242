"""Exact integer matrices: Hermite and Smith normal forms, solving over ℤ.

Everything is plain Python ``int`` arithmetic.  Elimination is the textbook
gcd-by-repeated-division scheme, which is plenty for the matrix sizes that
come out of degree-truncated Hopf algebras and Koszul complexes.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import chain
from typing import Iterable, Sequence

from .errors import DimensionError


@dataclass(frozen=True)
class IntMatrix:
    """Dense row-major integer matrix."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise DimensionError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], cols: int | None = None) -> IntMatrix:
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise DimensionError("ragged rows")
        return cls(len(rows), cols, tuple(map(int, chain.from_iterable(rows))))

    @classmethod
    def from_columns(cls, columns: Iterable[Sequence[int]], rows: int) -> IntMatrix:
        columns = [list(c) for c in columns]
        return cls.from_rows([[c[i] for c in columns] for i in range(rows)], cols=len(columns))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def diagonal(cls, values: Sequence[int], rows: int | None = None, cols: int | None = None) -> IntMatrix:
        rows = len(values) if rows is None else rows
        cols = len(values) if cols is None else cols
        data = [[0] * cols for _ in range(rows)]
        for i, v in enumerate(values):
            data[i][i] = v
        return cls.from_rows(data, cols=cols)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list[int]:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def column(self, j: int) -> list[int]:
        return [self.entries[i * self.cols + j] for i in range(self.rows)]

    def to_rows(self) -> list[list[int]]:
        return [self.row(i) for i in range(self.rows)]

    def transpose(self) -> IntMatrix:
        return IntMatrix.from_rows([self.column(j) for j in range(self.cols)], cols=self.rows)

    @property
    def T(self) -> IntMatrix:
        return self.transpose()

    def __matmul__(self, other):
        if isinstance(other, IntMatrix):
            if self.cols != other.rows:
                raise DimensionError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
            a = self.to_rows()
            bcols = [other.column(j) for j in range(other.cols)]
            return IntMatrix.from_rows(
                [[sum(x * y for x, y in zip(r, c)) for c in bcols] for r in a], cols=other.cols
            )
        vec = list(other)
        if len(vec) != self.cols:
            raise DimensionError(f"vector of length {len(vec)} does not match {self.cols} columns")
        return [sum(x * y for x, y in zip(self.row(i), vec)) for i in range(self.rows)]

    def is_zero(self) -> bool:
        return not any(self.entries)

    def det(self) -> int:
        if self.rows != self.cols:
            raise DimensionError("determinant of a non-square matrix")
        return _bareiss_det(self.to_rows())

    def is_unimodular(self) -> bool:
        return self.rows == self.cols and self.det() in (1, -1)

    def __str__(self):
        return "[" + ", ".join(str(r) for r in self.to_rows()) + "]"


def _bareiss_det(a: list[list[int]]) -> int:
    n = len(a)
    if n == 0:
        return 1
    a = [r[:] for r in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _as_matrix(m) -> IntMatrix:
    return m if isinstance(m, IntMatrix) else IntMatrix.from_rows(m)


# column operations shared by the Hermite and kernel code; ``inv`` receives
# the matching row operation so that it stays the inverse of ``u``


def _col_swap(mats, inv, i, j):
    if i == j:
        return
    for m in mats:
        for row in m:
            row[i], row[j] = row[j], row[i]
    if inv is not None:
        inv[i], inv[j] = inv[j], inv[i]


def _col_addmul(mats, inv, dst, src, q):
    """col[dst] += q * col[src]."""
    if not q:
        return
    for m in mats:
        for row in m:
            if row[src]:
                row[dst] += q * row[src]
    if inv is None:
        return
    rs, rd = inv[src], inv[dst]
    for k in range(len(rs)):
        if rd[k]:
            rs[k] -= q * rd[k]


def _col_neg(mats, inv, i):
    for m in mats:
        for row in m:
            row[i] = -row[i]
    if inv is not None:
        inv[i] = [-x for x in inv[i]]


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


@dataclass(frozen=True)
class HermiteResult:
    """``a @ u == h`` with ``u`` unimodular and ``u @ u_inv == I``."""

    h: IntMatrix
    u: IntMatrix
    u_inv: IntMatrix
    pivot_rows: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.pivot_rows)


def hermite_normal_form(m) -> HermiteResult:
    """Column-style Hermite normal form.

    The result is lower staircase: column ``j < rank`` has its first nonzero
    entry at ``pivot_rows[j]`` (strictly increasing), that pivot is positive,
    and the entries to its left in the same row lie in ``[0, pivot)``.
    Columns ``rank..n-1`` are zero, so the matching columns of ``u`` are a
    lattice basis of the integer kernel.
    """
    m = _as_matrix(m)
    rows, n = m.rows, m.cols
    h = m.to_rows()
    u = _identity(n)
    uinv = _identity(n)
    mats = (h, u)
    pc = 0
    pivots = []
    for i in range(rows):
        if pc == n:
            break
        while True:
            nz = [j for j in range(pc, n) if h[i][j] != 0]
            if not nz:
                break
            j0 = min(nz, key=lambda j: (abs(h[i][j]), j))
            _col_swap(mats, uinv, pc, j0)
            p = h[i][pc]
            clean = True
            for j in range(pc + 1, n):
                if h[i][j]:
                    _col_addmul(mats, uinv, j, pc, -(h[i][j] // p))
                    if h[i][j]:
                        clean = False
            if clean:
                break
        if h[i][pc] == 0:
            continue
        if h[i][pc] < 0:
            _col_neg(mats, uinv, pc)
        p = h[i][pc]
        for k in range(pc):
            q = h[i][k] // p
            if q:
                _col_addmul(mats, uinv, k, pc, -q)
        pivots.append(i)
        pc += 1
    return HermiteResult(
        IntMatrix.from_rows(h, cols=n),
        IntMatrix.from_rows(u, cols=n),
        IntMatrix.from_rows(uinv, cols=n),
        tuple(pivots),
    )


def rank(m) -> int:
    return hermite_normal_form(m).rank


@dataclass(frozen=True)
class SmithResult:
    """``u @ a @ v == s``; ``s`` is diagonal with each entry dividing the next."""

    s: IntMatrix
    u: IntMatrix
    v: IntMatrix
    u_inv: IntMatrix | None

    @property
    def diagonal(self) -> list[int]:
        return [self.s[i, i] for i in range(min(self.s.rows, self.s.cols))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)

    @property
    def invariant_factors(self) -> list[int]:
        return [d for d in self.diagonal if d]


def smith_normal_form(m, with_inverse: bool = True) -> SmithResult:
    """Smith form with transforms; ``u_inv`` is tracked only when asked for."""
    m = _as_matrix(m)
    rows, cols = m.rows, m.cols
    s = m.to_rows()
    u = _identity(rows)
    uinv = _identity(rows) if with_inverse else []
    v = _identity(cols)
    vinv = None

    def row_swap(i, j):
        if i == j:
            return
        s[i], s[j] = s[j], s[i]
        u[i], u[j] = u[j], u[i]
        for r in uinv:
            r[i], r[j] = r[j], r[i]

    def row_addmul(dst, src, q):
        if not q:
            return
        for mat in (s, u):
            rs, rd = mat[src], mat[dst]
            for k in range(len(rs)):
                if rs[k]:
                    rd[k] += q * rs[k]
        for r in uinv:
            if r[dst]:
                r[src] -= q * r[dst]

    def row_neg(i):
        s[i] = [-x for x in s[i]]
        u[i] = [-x for x in u[i]]
        for r in uinv:
            r[i] = -r[i]

    cmats = (s, v)
    t = 0
    while t < min(rows, cols):
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if s[i][j] and (best is None or abs(s[i][j]) < abs(s[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        row_swap(t, best[0])
        _col_swap(cmats, vinv, t, best[1])
        while True:
            p = s[t][t]
            for i in range(t + 1, rows):
                if s[i][t]:
                    row_addmul(i, t, -(s[i][t] // p))
            for j in range(t + 1, cols):
                if s[t][j]:
                    _col_addmul(cmats, vinv, j, t, -(s[t][j] // p))
            rest = [(abs(s[i][t]), i, t) for i in range(t + 1, rows) if s[i][t]]
            rest += [(abs(s[t][j]), t, j) for j in range(t + 1, cols) if s[t][j]]
            if rest:
                _, i, j = min(rest)
                if j == t:
                    row_swap(t, i)
                else:
                    _col_swap(cmats, vinv, t, j)
                continue
            bad = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if s[i][j] % p),
                None,
            )
            if bad is None:
                break
            row_addmul(t, bad, 1)
        if s[t][t] < 0:
            row_neg(t)
        t += 1
    return SmithResult(
        IntMatrix.from_rows(s, cols=cols),
        IntMatrix.from_rows(u, cols=rows),
        IntMatrix.from_rows(v, cols=cols),
        IntMatrix.from_rows(uinv, cols=rows) if with_inverse else None,
    )


@dataclass(frozen=True)
class Witness:
    """Row functional ``f`` with ``f @ m ≡ 0 (mod g)`` but ``f @ b == r``, ``g ∤ r``.

    ``g == 0`` means ``f @ m`` vanishes outright (no rational solution).
    """

    functional: tuple[int, ...]
    g: int
    r: int


@dataclass(frozen=True)
class IntSolveResult:
    solvable: bool
    particular: tuple[int, ...] | None = None
    kernel_basis: tuple[tuple[int, ...], ...] = ()
    witness: Witness | None = None


def _divides(g: int, r: int) -> bool:
    return r == 0 if g == 0 else r % g == 0


def check_witness(m, b: Sequence[int], w: Witness) -> bool:
    """Independently confirm that ``w`` proves ``m x = b`` has no integer solution."""
    m = _as_matrix(m)
    if len(w.functional) != m.rows or len(b) != m.rows:
        return False
    combo = [sum(w.functional[i] * m[i, j] for i in range(m.rows)) for j in range(m.cols)]
    if not all(_divides(w.g, c) for c in combo):
        return False
    if sum(f * x for f, x in zip(w.functional, b)) != w.r:
        return False
    return not _divides(w.g, w.r)


def canonical_kernel_basis(vectors: Sequence[Sequence[int]], n: int) -> list[list[int]]:
    """Echelon basis of the lattice spanned by ``vectors`` keyed on last coordinates.

    Each returned vector has a positive last nonzero entry (its pivot), pivots
    sit at distinct coordinates in decreasing order, and the other vectors are
    reduced into ``[0, pivot)`` at each pivot coordinate.
    """
    if not vectors:
        return []
    # reverse the coordinates so "last nonzero" becomes "first nonzero", then
    # column-HNF the matrix whose columns are the vectors
    cols = [list(reversed(list(v))) for v in vectors]
    mat = IntMatrix.from_columns(cols, rows=n)
    herm = hermite_normal_form(mat)
    out = []
    for j in range(herm.rank):
        out.append(list(reversed(herm.h.column(j))))
    return out


def reduce_against(x: Sequence[int], basis: Sequence[Sequence[int]]) -> list[int]:
    """Reduce ``x`` modulo the lattice of a :func:`canonical_kernel_basis`."""
    x = list(x)
    for k in basis:
        p = max(i for i, c in enumerate(k) if c)
        q = x[p] // k[p]
        if q:
            x = [a - q * b for a, b in zip(x, k)]
    return x


def solve_integer(m, b: Sequence[int]) -> IntSolveResult:
    """All integer solutions of ``m x = b``, or a divisibility witness.

    The particular solution is canonical: it is reduced against the kernel
    lattice so that later coordinates are pushed to zero first (pivot entries
    land in ``[0, pivot)``).  It does not depend on the elimination path.
    """
    m = _as_matrix(m)
    b = [int(x) for x in b]
    if len(b) != m.rows:
        raise DimensionError(f"right-hand side has length {len(b)}, matrix has {m.rows} rows")
    if m.rows == 0 or m.cols == 0:
        return _solve_degenerate(m, b)
    snf = smith_normal_form(m, with_inverse=False)
    c = snf.u @ b
    diag = snf.diagonal
    r = snf.rank
    for i in range(m.rows):
        d = diag[i] if i < len(diag) else 0
        if not _divides(d, c[i]):
            return IntSolveResult(False, witness=Witness(tuple(snf.u.row(i)), d, c[i]))
    z = [c[i] // diag[i] for i in range(r)] + [0] * (m.cols - r)
    x = snf.v @ z
    kernel = canonical_kernel_basis([snf.v.column(j) for j in range(r, m.cols)], m.cols)
    x = reduce_against(x, kernel)
    return IntSolveResult(True, tuple(x), tuple(tuple(k) for k in kernel))


def _solve_degenerate(m: IntMatrix, b: list[int]) -> IntSolveResult:
    # no equations: everything solves; no unknowns: only b = 0 does
    for i, x in enumerate(b):
        if x:
            return IntSolveResult(False, witness=Witness(tuple(int(i == k) for k in range(m.rows)), 0, x))
    n = m.cols
    kernel = [[int(i == j) for i in range(n)] for j in range(n)]
    return IntSolveResult(True, (0,) * n, tuple(tuple(k) for k in canonical_kernel_basis(kernel, n)))


def kernel_basis(m) -> list[list[int]]:
    """Canonical lattice basis of ``{x : m x = 0}``."""
    m = _as_matrix(m)
    herm = hermite_normal_form(m)
    return canonical_kernel_basis([herm.u.column(j) for j in range(herm.rank, m.cols)], m.cols)
