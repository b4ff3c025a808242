"""JSON documents for presentations, complexes, certificates and changes of basis.

Coefficients are written as decimal strings so arbitrarily large integers
survive any JSON consumer.  Every document carries a ``format`` tag.
"""
from __future__ import annotations

import json
from typing import Any

from .errors import LieHopfError
from .freealg import Alphabet, Element, TensorSquareElement
from .hopf import HopfPresentation
from .koszul import SimplicialComplex
from .linz import IntMatrix, Witness
from .primitivize import ChangeOfBasis, LinearSystem, ObstructionCertificate

PRESENTATION_FORMAT = "liehopf-presentation/1"
COMPLEX_FORMAT = "liehopf-complex/1"
REPORT_FORMAT = "liehopf-report/1"


class DocumentError(LieHopfError, ValueError):
    """Malformed document; ``path`` names the offending field."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path


def _int(value: Any, path: str) -> int:
    if isinstance(value, bool):
        raise DocumentError(path, "expected an integer, got a boolean")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        try:
            return int(value.strip())
        except ValueError:
            pass
    raise DocumentError(path, f"expected an integer, got {value!r}")


def _field(doc: dict, key: str, path: str):
    if not isinstance(doc, dict):
        raise DocumentError(path, "expected an object")
    if key not in doc:
        raise DocumentError(f"{path}.{key}" if path else key, "missing field")
    return doc[key]


def _list(value, path: str) -> list:
    if not isinstance(value, list):
        raise DocumentError(path, "expected a list")
    return value


def _check_format(doc, expected: str):
    tag = _field(doc, "format", "")
    if tag != expected:
        raise DocumentError("format", f"expected {expected!r}, got {tag!r}")


def _word(value, path: str) -> tuple[str, ...]:
    items = _list(value, path)
    for i, x in enumerate(items):
        if not isinstance(x, str):
            raise DocumentError(f"{path}[{i}]", "generator ids must be strings")
    return tuple(items)


# presentations


def presentation_to_dict(p: HopfPresentation) -> dict:
    a = p.alphabet
    coproducts = []
    for g in a:
        t = p.reduced_coproducts.get(g.id)
        if not t:
            continue
        terms = [{"left": list(l), "right": list(r), "coeff": str(c)} for (l, r), c in t.items()]
        coproducts.append({"generator": g.id, "terms": terms})
    return {
        "format": PRESENTATION_FORMAT,
        "generators": [{"id": g.id, "degree": g.degree} for g in a],
        "reduced_coproducts": coproducts,
        "truncation_degree": p.truncation_degree,
    }


def presentation_from_dict(doc: dict) -> HopfPresentation:
    _check_format(doc, PRESENTATION_FORMAT)
    gens = []
    for i, g in enumerate(_list(_field(doc, "generators", ""), "generators")):
        path = f"generators[{i}]"
        gid = _field(g, "id", path)
        if not isinstance(gid, str):
            raise DocumentError(f"{path}.id", "expected a string")
        gens.append((gid, _int(_field(g, "degree", path), f"{path}.degree")))
    try:
        alphabet = Alphabet(gens)
    except ValueError as exc:
        raise DocumentError("generators", str(exc)) from None
    red: dict[str, TensorSquareElement] = {}
    for i, entry in enumerate(_list(doc.get("reduced_coproducts", []), "reduced_coproducts")):
        path = f"reduced_coproducts[{i}]"
        gid = _field(entry, "generator", path)
        if gid not in alphabet:
            raise DocumentError(f"{path}.generator", f"unknown generator {gid!r}")
        if gid in red:
            raise DocumentError(f"{path}.generator", f"duplicate entry for {gid!r}")
        terms: dict = {}
        for j, t in enumerate(_list(_field(entry, "terms", path), f"{path}.terms")):
            tp = f"{path}.terms[{j}]"
            key = (_word(_field(t, "left", tp), f"{tp}.left"), _word(_field(t, "right", tp), f"{tp}.right"))
            terms[key] = terms.get(key, 0) + _int(_field(t, "coeff", tp), f"{tp}.coeff")
        try:
            red[gid] = TensorSquareElement(alphabet, terms)
        except ValueError as exc:
            raise DocumentError(path, str(exc)) from None
    D = _int(_field(doc, "truncation_degree", ""), "truncation_degree")
    try:
        return HopfPresentation(alphabet, red, D)
    except ValueError as exc:
        raise DocumentError("", str(exc)) from None


# simplicial complexes


def complex_to_dict(k: SimplicialComplex) -> dict:
    return {"format": COMPLEX_FORMAT, "vertices": k.m, "maximal_faces": [list(f) for f in k.maximal_faces()]}


def complex_from_dict(doc: dict) -> SimplicialComplex:
    """Accepts ``maximal_faces`` (closed automatically) or a full ``faces`` list (checked for closure)."""
    _check_format(doc, COMPLEX_FORMAT)
    m = _int(_field(doc, "vertices", ""), "vertices")
    key = "faces" if "faces" in doc else "maximal_faces"
    faces = []
    for i, f in enumerate(_list(_field(doc, key, ""), key)):
        faces.append([_int(v, f"{key}[{i}][{j}]") for j, v in enumerate(_list(f, f"{key}[{i}]"))])
    try:
        if key == "faces":
            return SimplicialComplex(m, faces)
        return SimplicialComplex.from_maximal_faces(m, faces)
    except ValueError as exc:
        raise DocumentError(key, str(exc)) from None


# results


def element_to_dict(x: Element) -> list[dict]:
    return [{"word": list(w), "coeff": str(c)} for w, c in x.items()]


def element_from_dict(items: list, alphabet: Alphabet, path: str = "element") -> Element:
    terms: dict = {}
    for i, t in enumerate(_list(items, path)):
        w = _word(_field(t, "word", f"{path}[{i}]"), f"{path}[{i}].word")
        terms[w] = terms.get(w, 0) + _int(_field(t, "coeff", f"{path}[{i}]"), f"{path}[{i}].coeff")
    return Element(alphabet, terms)


def certificate_to_dict(cert: ObstructionCertificate) -> dict:
    s = cert.system
    return {
        "generator": cert.generator,
        "degree": cert.degree,
        "columns": [list(w) for w in s.columns],
        "rows": [[list(l), list(r)] for l, r in s.rows],
        "matrix": [[str(x) for x in s.matrix.row(i)] for i in range(s.matrix.rows)],
        "rhs": [str(x) for x in s.rhs],
        "witness": {
            "functional": [str(x) for x in cert.witness.functional],
            "g": str(cert.witness.g),
            "r": str(cert.witness.r),
        },
        "equations": s.describe(),
    }


def certificate_from_dict(doc: dict, alphabet: Alphabet) -> ObstructionCertificate:
    cols = tuple(_word(w, f"columns[{i}]") for i, w in enumerate(_list(_field(doc, "columns", ""), "columns")))
    rows = []
    for i, pair in enumerate(_list(_field(doc, "rows", ""), "rows")):
        pair = _list(pair, f"rows[{i}]")
        if len(pair) != 2:
            raise DocumentError(f"rows[{i}]", "expected [left, right]")
        rows.append((_word(pair[0], f"rows[{i}][0]"), _word(pair[1], f"rows[{i}][1]")))
    mrows = [
        [_int(x, f"matrix[{i}][{j}]") for j, x in enumerate(_list(r, f"matrix[{i}]"))]
        for i, r in enumerate(_list(_field(doc, "matrix", ""), "matrix"))
    ]
    if len(mrows) != len(rows) or any(len(r) != len(cols) for r in mrows):
        raise DocumentError("matrix", "shape does not match rows × columns")
    rhs = tuple(_int(x, f"rhs[{i}]") for i, x in enumerate(_list(_field(doc, "rhs", ""), "rhs")))
    w = _field(doc, "witness", "")
    witness = Witness(
        tuple(_int(x, f"witness.functional[{i}]") for i, x in enumerate(_list(_field(w, "functional", "witness"), "witness.functional"))),
        _int(_field(w, "g", "witness"), "witness.g"),
        _int(_field(w, "r", "witness"), "witness.r"),
    )
    system = LinearSystem(cols, tuple(rows), IntMatrix.from_rows(mrows, cols=len(cols)), rhs)
    gid = _field(doc, "generator", "")
    return ObstructionCertificate(alphabet, _int(_field(doc, "degree", ""), "degree"), gid, system, witness)


def change_to_dict(change: ChangeOfBasis) -> dict:
    out = []
    for g in change.presentation.alphabet:
        out.append({
            "generator": g.id,
            "correction": element_to_dict(change.corrections[g.id]),
            "new_generator": str(change.new_generator(g.id)),
        })
    return {"generators": out}


def change_from_dict(doc: dict, p: HopfPresentation) -> ChangeOfBasis:
    corrections = {}
    for i, entry in enumerate(_list(_field(doc, "generators", ""), "generators")):
        gid = _field(entry, "generator", f"generators[{i}]")
        corrections[gid] = element_from_dict(_field(entry, "correction", f"generators[{i}]"), p.alphabet, f"generators[{i}].correction")
    if set(corrections) != set(p.alphabet.ids):
        raise DocumentError("generators", "change of basis must cover every generator")
    return ChangeOfBasis(p, {g: corrections[g] for g in p.alphabet.ids})


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def loads(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"line {exc.lineno}, column {exc.colno}", exc.msg) from None
    if not isinstance(doc, dict):
        raise DocumentError("", "top level must be an object")
    return doc
