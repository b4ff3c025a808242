import random

import pytest

from liehopf.errors import ComplexError, TorsionError
from liehopf.freealg import tensor
from liehopf.koszul import (
    SimplicialComplex,
    build_dga,
    coalgebra_from_ring,
    cohomology,
    cup_structure,
    differential,
)
from liehopf.primitivize import ChangeOfBasis, lie_hopf_decision

SQUARE = SimplicialComplex.polygon(4)
PENTAGON = SimplicialComplex.polygon(5)

SQUARE_NAMED = {3: [("a1", "u1v3"), ("a2", "u2v4")], 6: [("b", "u1u2v3v4")]}
PENTAGON_NAMED = {
    3: [("a1", "u1v3"), ("a2", "u4v1"), ("a3", "u2v4"), ("a4", "u5v2"), ("a5", "u3v5")],
    4: [("b1", "u4u5v2"), ("b2", "u2u3v5"), ("b3", "u5u1v3"), ("b4", "u3u4v1"), ("b5", "u1u2v4")],
    7: [("c", "u1u2u3v4v5")],
}


def named(result, table):
    dga = result.dga
    return result.with_representatives({d: [(lab, dga.parse(t)) for lab, t in items] for d, items in table.items()})


def test_invalid_complexes():
    with pytest.raises(ComplexError):
        SimplicialComplex(2, [[1], [2], [1, 3]])
    with pytest.raises(ComplexError):
        SimplicialComplex(3, [[1], [2], [3], [1, 2, 3]])
    with pytest.raises(ComplexError):
        SimplicialComplex(2, [[1]])


def test_stanley_reisner_relations():
    assert SQUARE.minimal_non_faces() == [(1, 3), (2, 4)]
    assert PENTAGON.minimal_non_faces() == [(1, 3), (1, 4), (2, 4), (2, 5), (3, 5)]
    assert SimplicialComplex.simplex(4).minimal_non_faces() == []
    dga = build_dga(SQUARE)
    assert not dga.parse("v1v3") and not dga.parse("v2*v4")
    assert dga.parse("v1v2")


def test_differential_examples():
    dga = build_dga(SQUARE)
    assert differential(dga.u(1)) == dga.v(1)
    assert not differential(dga.parse("u1v3"))
    x = dga.parse("u1u2")
    assert differential(x) == dga.parse("v1u2") - dga.parse("u1v2")
    assert not differential(differential(x))


def test_exterior_signs():
    dga = build_dga(PENTAGON)
    assert dga.parse("u5u1v3") == -dga.parse("u1u5v3")
    assert not dga.parse("u1u1")


@pytest.mark.parametrize("k", [SQUARE, PENTAGON, SimplicialComplex.simplex_boundary(3), SimplicialComplex.simplex(3)])
def test_d_squared_zero(k):
    dga = build_dga(k)
    for d in range(0, 9):
        for mono in dga.basis(d):
            x = dga.element({mono: 1})
            assert not differential(differential(x))


def test_associative_and_graded_commutative():
    dga = build_dga(PENTAGON)
    rng = random.Random(4)
    monos = [m for d in range(0, 5) for m in dga.basis(d)]
    for _ in range(300):
        xs = [dga.element({rng.choice(monos): 1}) for _ in range(3)]
        x, y, z = xs
        assert (x * y) * z == x * (y * z)
        (dx,), (dy,) = x.degrees(), y.degrees()
        assert x * y == y * x * ((-1) ** (dx * dy))
        # Leibniz rule
        assert differential(x * y) == differential(x) * y + x * differential(y) * ((-1) ** dx)


def test_square_cohomology():
    h = cohomology(build_dga(SQUARE), 6)
    assert h.ranks() == [1, 0, 0, 2, 0, 0, 1]
    assert h.torsion_free()
    reps = [str(c.representative) for c in h.classes()]
    assert reps == ["1", "u1v3", "u2v4", "u1u2v3v4"]


def test_pentagon_cohomology():
    h = cohomology(build_dga(PENTAGON), 7)
    assert h.ranks() == [1, 0, 0, 5, 5, 0, 0, 1]
    assert h.torsion_free()


def test_simplex_and_boundary():
    h = cohomology(build_dga(SimplicialComplex.simplex(3)), 6)
    assert h.ranks() == [1, 0, 0, 0, 0, 0, 0]
    h = cohomology(build_dga(SimplicialComplex.simplex_boundary(3)), 6)
    assert h.ranks() == [1, 0, 0, 0, 0, 1, 0]


def test_two_points_give_three_sphere():
    k = SimplicialComplex(2, [[1], [2]])
    h = cohomology(build_dga(k), 4)
    assert h.ranks() == [1, 0, 0, 1, 0]


def test_ranks_independent_of_monomial_order():
    rng = random.Random(9)
    for k, D in ((SQUARE, 6), (PENTAGON, 7)):
        salt = {}

        def key(mono):
            if mono not in salt:
                salt[mono] = rng.random()
            return salt[mono]

        base = cohomology(build_dga(k), D)
        scrambled = cohomology(build_dga(k, monomial_key=key), D)
        assert base.ranks() == scrambled.ranks()
        for d in range(D + 1):
            assert base.torsion(d) == scrambled.torsion(d)


def test_named_cocycles_are_basis_classes():
    h = named(cohomology(build_dga(PENTAGON), 7), PENTAGON_NAMED)
    assert [c.label for c in h.classes(4)] == ["b1", "b2", "b3", "b4", "b5"]
    # a named class is recovered from any cohomologous representative
    dga = h.dga
    shifted = dga.parse("u1v3") + differential(dga.parse("u1u3"))
    assert h.coordinates(shifted, 3) == {"a1": 1}


def test_named_cocycles_must_span():
    h = cohomology(build_dga(SQUARE), 6)
    dga = h.dga
    with pytest.raises(ValueError):
        h.with_representatives({3: [("a1", dga.parse("u1v3")), ("a2", dga.parse("u1v3"))]})
    with pytest.raises(ValueError):
        h.with_representatives({3: [("a1", dga.parse("u1v3")), ("a2", dga.parse("u2v4") * 2)]})


def test_coboundary_detection():
    h = cohomology(build_dga(SQUARE), 6)
    dga = h.dga
    assert h.is_coboundary(differential(dga.parse("u1u2")), 3)
    assert not h.is_coboundary(dga.parse("u1v3"), 3)


def test_square_products():
    h = named(cohomology(build_dga(SQUARE), 6), SQUARE_NAMED)
    cs = cup_structure(h)
    assert cs[("a1", "a2")] == {"b": 1}
    assert cs[("a2", "a1")] == {"b": -1}
    assert cs[("a1", "a1")] == {} and cs[("a2", "a2")] == {}
    assert cs[("h0_1", "a1")] == {"a1": 1}


def test_pentagon_products():
    h = named(cohomology(build_dga(PENTAGON), 7), PENTAGON_NAMED)
    cs = cup_structure(h)
    for i in range(1, 6):
        assert cs[(f"a{i}", f"b{i}")] == {"c": 1}
        assert cs[(f"b{i}", f"a{i}")] == {"c": 1}
    nontrivial = {k for k, v in cs.items() if v and "h0_1" not in k}
    assert len(nontrivial) == 10


def test_square_dual_coalgebra_and_decision():
    h = named(cohomology(build_dga(SQUARE), 6), SQUARE_NAMED)
    p = coalgebra_from_ring(h)
    a = p.alphabet
    assert p.reduced_coproducts["b"] == tensor(a.gen("a1"), a.gen("a2")) - tensor(a.gen("a2"), a.gen("a1"))
    out = lie_hopf_decision(p)
    assert isinstance(out, ChangeOfBasis)
    assert out.corrections["b"] == a.parse("a2|a1")


def test_pentagon_dual_coalgebra_and_decision():
    h = named(cohomology(build_dga(PENTAGON), 7), PENTAGON_NAMED)
    p = coalgebra_from_ring(h)
    a = p.alphabet
    expected = None
    for i in range(1, 6):
        ai, bi = a.gen(f"a{i}"), a.gen(f"b{i}")
        term = tensor(ai, bi) + tensor(bi, ai)
        expected = term if expected is None else expected + term
    assert p.reduced_coproducts["c"] == expected
    out = lie_hopf_decision(p)
    assert isinstance(out, ChangeOfBasis)
    assert out.corrections["c"] == a.parse("-a1|b1 - a2|b2 - a3|b3 - a4|b4 - a5|b5")


def test_full_simplex_dual_is_empty():
    h = cohomology(build_dga(SimplicialComplex.simplex(3)), 4)
    p = coalgebra_from_ring(h)
    assert len(p.alphabet) == 0
    assert isinstance(lie_hopf_decision(p), ChangeOfBasis)


def test_torsion_aborts_dualization():
    h = cohomology(build_dga(SQUARE), 6)
    h._data[3].torsion = [2]
    with pytest.raises(TorsionError):
        coalgebra_from_ring(h)
