import itertools

import pytest

from liehopf.catalog import (
    DEFAULT_DEGREE,
    PRESETS,
    GammaObstruction,
    GammaSolution,
    binomial,
    cp2,
    desuspension_iso,
    desuspension_obstruction,
    preset,
    presentation_from_intersection_form,
    solve_gamma,
    verify_desuspension_iso,
)
from liehopf.errors import PresentationError
from liehopf.freealg import TensorSquareElement, tensor
from liehopf.hopf import is_primitive
from liehopf.linz import IntMatrix
from liehopf.primitivize import ChangeOfBasis, lie_hopf_decision


def test_leibnitz_preset_shape():
    p = preset("leibnitz", 6)
    a = p.alphabet
    assert [(g.id, g.degree) for g in a] == [("u1", 2), ("u2", 4), ("u3", 6)]
    assert p.reduced_coproducts["u3"] == tensor(a.gen("u1"), a.gen("u2")) + tensor(a.gen("u2"), a.gen("u1"))


def test_primitive_spheres_preset():
    p = preset("primitive_spheres", 8)
    assert [g.degree for g in p.alphabet] == [2, 4, 6, 8]
    assert all(not t for t in p.reduced_coproducts.values())


def test_cp2_preset():
    p = preset("cp2", 4)
    a = p.alphabet
    assert not p.reduced_coproducts.get("u1")
    assert p.reduced_coproducts["u2"] == tensor(a.gen("u1"), a.gen("u1"))


def test_unknown_preset():
    with pytest.raises(ValueError):
        preset("nope")


def test_fixed_preset_needs_room():
    with pytest.raises(PresentationError):
        preset("pentagon_manifold", 6)


def test_defaults_cover_all_presets():
    assert set(DEFAULT_DEGREE) == set(PRESETS)
    for name in PRESETS:
        assert preset(name).truncation_degree == DEFAULT_DEGREE[name]


def test_intersection_form_examples():
    p = presentation_from_intersection_form([[0, 1], [1, 0]])
    a = p.alphabet
    assert p.reduced_coproducts["v"] == tensor(a.gen("u1"), a.gen("u2")) + tensor(a.gen("u2"), a.gen("u1"))
    q = presentation_from_intersection_form([[1]])
    assert q.reduced_coproducts["v"] == tensor(q.alphabet.gen("u1"), q.alphabet.gen("u1"))
    assert [(g.id, g.degree) for g in q.alphabet] == [("u1", 2), ("v", 4)]
    z = presentation_from_intersection_form([[0, 0], [0, 0]])
    assert not z.reduced_coproducts.get("v")


def test_intersection_form_must_be_symmetric():
    with pytest.raises(ValueError):
        presentation_from_intersection_form([[0, 1], [0, 0]])


def test_gamma_examples():
    sol = solve_gamma([[0, 1], [1, 0]])
    assert isinstance(sol, GammaSolution)
    assert sol.gamma == IntMatrix.from_rows([[0, -1], [0, 0]])
    assert sol.holds([[0, 1], [1, 0]])
    ob = solve_gamma([[1]])
    assert isinstance(ob, GammaObstruction) and ob.value == 1
    sol = solve_gamma([[2, 3], [3, 0]])
    assert sol.gamma == IntMatrix.from_rows([[-1, -3], [0, 0]])
    assert sol.holds([[2, 3], [3, 0]])


def test_gamma_with_change_of_basis():
    a = [[1, 0], [0, -1]]
    lam = [[1, 1], [0, 1]]
    out = solve_gamma(a, lam)
    # Λᵀ A Λ = [[1, 1], [1, 0]] still has an odd diagonal entry
    assert isinstance(out, GammaObstruction)
    with pytest.raises(ValueError):
        solve_gamma(a, [[2, 0], [0, 1]])


def _symmetric(k, values):
    it = iter(values)
    m = [[0] * k for _ in range(k)]
    for i in range(k):
        for j in range(i, k):
            m[i][j] = m[j][i] = next(it)
    return m


def test_gamma_agrees_with_decision_on_small_forms():
    for k in (1, 2):
        n = k * (k + 1) // 2
        for vals in itertools.product(range(-3, 4), repeat=n):
            a = _symmetric(k, vals)
            gamma_ok = isinstance(solve_gamma(a), GammaSolution)
            decided = isinstance(lie_hopf_decision(presentation_from_intersection_form(a)), ChangeOfBasis)
            assert gamma_ok == decided, a


def test_desuspension_low_degrees():
    b = binomial(6).alphabet
    ob1 = desuspension_obstruction(1)
    assert str(ob1.a_xi) == "w1" and not ob1.obstruction
    ob2 = desuspension_obstruction(2)
    assert ob2.a_xi == binomial(4).alphabet.parse("w2 - w1|w1")
    ob3 = desuspension_obstruction(3)
    assert ob3.a_xi == b.parse("w3 - 3*w2|w1 + 2*w1|w1|w1")


def test_desuspension_degree_six_up_to_commutator():
    p = binomial(6)
    a = p.alphabet
    ref = a.parse("w3 - 3*w2|w1 + 2*w1|w1|w1")
    comm = a.parse("w2|w1 - w1|w2")
    assert is_primitive(p, comm)
    for t in range(-3, 4):
        assert is_primitive(p, ref + comm * t)
    ob = desuspension_obstruction(3)
    assert ob.a_xi - ref == comm * 0


def test_desuspension_elements_are_primitive_lifts():
    p = binomial(12)
    for n in range(1, 7):
        ob = desuspension_obstruction(n, 12)
        assert is_primitive(p, ob.a_xi)
        assert ob.a_xi.coefficient((f"w{n}",)) == 1
        assert all(len(w) >= 2 for w in ob.obstruction.terms)


def test_desuspension_iso():
    images = desuspension_iso(8).images
    for n in range(1, 5):
        linear = {w: c for w, c in images[f"xi{n}"].terms.items() if len(w) == 1}
        assert linear == {(f"w{n}",): 1}
    assert verify_desuspension_iso(8).passed


def test_desuspension_needs_room():
    with pytest.raises(PresentationError):
        desuspension_obstruction(4, 6)
    with pytest.raises(ValueError):
        desuspension_obstruction(0)
