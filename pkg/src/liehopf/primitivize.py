"""Deciding whether a presented Hopf algebra is primitively generated over ℤ.

For each generator ``g`` (ascending degree) we look for integers ``λ`` with

    Δ̃(g + Σ λ_α m_α) = 0,

the ``m_α`` running over the decomposable words of degree ``deg g``.  This is
an integer linear system ``M λ = -Δ̃(g)`` in the basis of word pairs.

Why per-generator solvability is the whole story: in a fixed degree the set
of linear combinations of generators that admit a primitive correction is a
subgroup of the free abelian group on those generators.  A unimodular change
of generators lands inside that subgroup iff the subgroup is everything, iff
each original generator admits a correction.  The systems only involve the
original alphabet, whose coproduct is fixed, so no backtracking across
degrees is needed.  Reduction of arbitrary graded isomorphisms to triangular
ones is taken as given, not re-proved here.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import AlphabetError, PresentationError, TruncationError
from .freealg import Alphabet, Element, Word, decomposable_basis, format_word
from .hopf import (
    HopfPresentation,
    IsoCandidate,
    is_primitive,
    lie_hopf_presentation,
    reduced_coproduct,
    verify_coassociativity,
    verify_counit,
)
from .linz import IntMatrix, Witness, check_witness, solve_integer


@dataclass(frozen=True)
class LinearSystem:
    """``matrix @ λ = rhs``; columns are words, rows are word pairs."""

    columns: tuple[Word, ...]
    rows: tuple[tuple[Word, Word], ...]
    matrix: IntMatrix
    rhs: tuple[int, ...]

    def describe(self) -> list[str]:
        """Equations in the form ``2*λ[u1|u1] = -1``."""
        out = []
        for i, (l, r) in enumerate(self.rows):
            lhs = []
            for j, w in enumerate(self.columns):
                c = self.matrix[i, j]
                if c:
                    lhs.append(f"{c}*λ[{format_word(w)}]")
            out.append(f"{' + '.join(lhs) or '0'} = {self.rhs[i]}    ({format_word(l)}⊗{format_word(r)})")
        return out


def correction_system(p: HopfPresentation, gid: str) -> LinearSystem:
    """The integer system whose solutions are primitive corrections of ``gid``."""
    a = p.alphabet
    d = a.degree(gid)
    if d > p.truncation_degree:
        raise TruncationError(f"generator {gid} has degree {d} > {p.truncation_degree}")
    columns = decomposable_basis(a, d) if d >= 2 else []
    col_vals = []
    for w in columns:
        # Δ̃ of a word is Δ(w) without its w⊗1 and 1⊗w terms
        t = dict(p.word_coproduct(w)._terms)
        t[(w, ())] -= 1
        t[((), w)] -= 1
        col_vals.append({k: c for k, c in t.items() if c})
    target = {k: c for k, c in p.reduced_coproducts[gid]._terms.items() if c}
    keys = set(target)
    for t in col_vals:
        keys.update(t)
    wk = a.word_key
    rows = sorted(keys, key=lambda k: (wk(k[0]), wk(k[1])))
    matrix = IntMatrix.from_rows([[t.get(k, 0) for t in col_vals] for k in rows], cols=len(columns))
    rhs = tuple(-target.get(k, 0) for k in rows)
    return LinearSystem(tuple(columns), tuple(rows), matrix, rhs)


@dataclass(frozen=True)
class ObstructionCertificate:
    """Proof that ``generator`` admits no primitive correction over ℤ."""

    alphabet: Alphabet
    degree: int
    generator: str
    system: LinearSystem
    witness: Witness

    def summary(self) -> str:
        w = self.witness
        return (
            f"degree {self.degree}, generator {self.generator}: functional {list(w.functional)} "
            f"gives {w.g}·(integer) = {w.r}, impossible"
        )


@dataclass(frozen=True)
class PrimitiveCorrection:
    generator: str
    correction: Element
    system: LinearSystem
    kernel: tuple[tuple[int, ...], ...]


def primitivize_generator(p: HopfPresentation, gid: str) -> PrimitiveCorrection | ObstructionCertificate:
    """Canonical primitive correction for one generator, or an obstruction."""
    system = correction_system(p, gid)
    res = solve_integer(system.matrix, system.rhs)
    if not res.solvable:
        return ObstructionCertificate(p.alphabet, p.alphabet.degree(gid), gid, system, res.witness)
    corr = Element._raw(p.alphabet, dict(zip(system.columns, res.particular)))
    return PrimitiveCorrection(gid, corr, system, res.kernel_basis)


@dataclass(frozen=True)
class ChangeOfBasis:
    """New primitive generators ``w_g = g + c_g`` with decomposable ``c_g``."""

    presentation: HopfPresentation
    corrections: dict[str, Element]

    def new_generator(self, gid: str) -> Element:
        return self.presentation.alphabet.gen(gid) + self.corrections[gid]

    def new_generators(self) -> dict[str, Element]:
        return {g.id: self.new_generator(g.id) for g in self.presentation.alphabet}

    def as_iso_candidate(self) -> IsoCandidate:
        """Map from the Lie-Hopf presentation on the same alphabet into the source."""
        return IsoCandidate(self.new_generators())

    def lie_hopf_presentation(self) -> HopfPresentation:
        p = self.presentation
        return lie_hopf_presentation(p.alphabet, p.truncation_degree)


def lie_hopf_decision(p: HopfPresentation, validate: bool = True) -> ChangeOfBasis | ObstructionCertificate:
    """Either a triangular primitive generating set or the first obstruction.

    Generators are processed by ascending degree, ties in presentation order,
    and the first failure is reported.
    """
    if validate:
        for rep in (verify_coassociativity(p), verify_counit(p)):
            if not rep.passed:
                raise PresentationError(f"invalid presentation: {rep.check} fails at {rep.element}")
    corrections = {}
    for g in p.generators_in_order():
        out = primitivize_generator(p, g.id)
        if isinstance(out, ObstructionCertificate):
            return out
        corrections[g.id] = out.correction
    return ChangeOfBasis(p, {g.id: corrections[g.id] for g in p.alphabet})


def check_certificate(cert: ObstructionCertificate, p: HopfPresentation) -> bool:
    """Re-derive the system from ``p`` and re-check the divisibility witness."""
    if cert.alphabet != p.alphabet:
        raise AlphabetError("certificate was issued for a different alphabet")
    a = p.alphabet
    if cert.generator not in a or a.degree(cert.generator) != cert.degree:
        return False
    sysm = cert.system
    # rebuild entry by entry from Δ̃ of the stored columns, independent of the
    # row bookkeeping in correction_system
    if list(sysm.columns) != (decomposable_basis(a, cert.degree) if cert.degree >= 2 else []):
        return False
    col_vals = [reduced_coproduct(p, Element._raw(a, {w: 1})) for w in sysm.columns]
    target = reduced_coproduct(p, a.gen(cert.generator))
    covered = set(sysm.rows)
    for t in col_vals + [target]:
        if not set(t._terms) <= covered:
            return False
    for i, k in enumerate(sysm.rows):
        if any(sysm.matrix[i, j] != t.coefficient(*k) for j, t in enumerate(col_vals)):
            return False
        if sysm.rhs[i] != -target.coefficient(*k):
            return False
    return check_witness(sysm.matrix, sysm.rhs, cert.witness)


def verify_change_of_basis(change: ChangeOfBasis) -> bool:
    p = change.presentation
    return all(is_primitive(p, w) for w in change.new_generators().values())
