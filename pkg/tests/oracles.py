"""Independent reference implementations used only by the tests.

Nothing here imports the engine's coproduct or solver: words and tensors are
plain dicts, Koszul signs are recomputed from scratch, and the primitivity
question is settled by exhaustive search over a box of coefficients.
"""
from __future__ import annotations

import itertools
import random

import numpy as np


def word_degree(degrees: dict, word) -> int:
    return sum(degrees[g] for g in word)


def words_of_degree(degrees: dict, d: int, min_len: int = 1):
    out = []
    ids = list(degrees)
    for n in range(min_len, d + 1):
        for w in itertools.product(ids, repeat=n):
            if word_degree(degrees, w) == d:
                out.append(w)
    return out


def letter_coproduct(degrees: dict, reduced: dict, g) -> dict:
    out = {((g,), ()): 1, ((), (g,)): 1}
    for (l, r), c in reduced.get(g, {}).items():
        out[(tuple(l), tuple(r))] = out.get((tuple(l), tuple(r)), 0) + c
    return out


def coproduct_of_word(degrees: dict, reduced: dict, word) -> dict:
    """Δ of a word as the Koszul-signed product of letter coproducts."""
    acc = {((), ()): 1}
    for g in word:
        nxt: dict = {}
        for (a, b), c1 in acc.items():
            for (cc, d), c2 in letter_coproduct(degrees, reduced, g).items():
                sign = -1 if (word_degree(degrees, b) * word_degree(degrees, cc)) % 2 else 1
                key = (a + cc, b + d)
                nxt[key] = nxt.get(key, 0) + sign * c1 * c2
        acc = {k: v for k, v in nxt.items() if v}
    return acc


def reduced_of_word(degrees: dict, reduced: dict, word) -> dict:
    full = coproduct_of_word(degrees, reduced, word)
    w = tuple(word)
    full.pop((w, ()), None)
    full.pop(((), w), None)
    return full


def reduced_coassociative(degrees: dict, reduced: dict) -> bool:
    """(Δ̃⊗1)Δ̃ = (1⊗Δ̃)Δ̃ on every generator."""
    for g, t in reduced.items():
        lhs: dict = {}
        rhs: dict = {}
        for (l, r), c in t.items():
            for (a, b), c2 in reduced_of_word(degrees, reduced, l).items():
                lhs[(a, b, tuple(r))] = lhs.get((a, b, tuple(r)), 0) + c * c2
            for (a, b), c2 in reduced_of_word(degrees, reduced, r).items():
                rhs[(tuple(l), a, b)] = rhs.get((tuple(l), a, b), 0) + c * c2
        if {k: v for k, v in lhs.items() if v} != {k: v for k, v in rhs.items() if v}:
            return False
    return True


def brute_correction(degrees: dict, reduced: dict, g, bound: int = 12):
    """First λ in the box with Δ̃(g + Σ λ_α m_α) = 0, or None."""
    d = degrees[g]
    cols = words_of_degree(degrees, d, min_len=2)
    vals = [reduced_of_word(degrees, reduced, w) for w in cols]
    target = {(tuple(l), tuple(r)): c for (l, r), c in reduced.get(g, {}).items() if c}
    keys = sorted(set(target).union(*[set(v) for v in vals]) if vals else set(target))
    if not cols:
        return () if not any(target.values()) else None
    mat = np.array([[v.get(k, 0) for v in vals] for k in keys], dtype=np.int64).reshape(len(keys), len(cols))
    rhs = np.array([-target.get(k, 0) for k in keys], dtype=np.int64)
    grid = np.array(list(itertools.product(range(-bound, bound + 1), repeat=len(cols))), dtype=np.int64).T
    hit = np.all(mat @ grid == rhs[:, None], axis=0)
    idx = np.flatnonzero(hit)
    if len(idx) == 0:
        return None
    return tuple(int(x) for x in grid[:, idx[0]]), cols


def brute_is_lie_hopf(degrees: dict, reduced: dict, bound: int = 12) -> bool:
    return all(brute_correction(degrees, reduced, g, bound) is not None for g in degrees)


# random small presentations

DEGREE_PATTERNS = [
    (2, 4), (2, 2, 4), (2, 4, 6), (3, 3, 6), (1, 2, 3), (1, 3, 4),
    (1, 1, 2), (2, 4, 4), (3, 4, 7), (2, 3, 5), (2, 2, 2), (1, 2), (2, 6),
]


def random_presentation(rng: random.Random) -> tuple[dict, dict, int]:
    """Random coassociative presentation with at most three generators.

    Each generator in turn gets a sparse random reduced coproduct over pairs
    of words in the lower generators; candidates failing coassociativity are
    redrawn, falling back to primitive.
    """
    pattern = rng.choice(DEGREE_PATTERNS)
    names = [f"g{i + 1}" for i in range(len(pattern))]
    degrees = dict(zip(names, pattern))
    reduced: dict = {}
    for g in names:
        d = degrees[g]
        lower = {h: degrees[h] for h in names if degrees[h] < d}
        pairs = []
        for dl in range(1, d):
            for l in words_of_degree(lower, dl) if lower else []:
                for r in words_of_degree(lower, d - dl):
                    pairs.append((l, r))
        if not pairs:
            continue
        for _ in range(30):
            cand = {}
            for p in pairs:
                if rng.random() < 0.45:
                    c = rng.choice([-2, -1, 1, 1, 2, 3])
                    cand[p] = c
            trial = dict(reduced)
            trial[g] = cand
            if reduced_coassociative(degrees, trial):
                reduced = trial
                break
    D = max(pattern) + rng.choice([0, 1, 2])
    return degrees, reduced, min(D, 8)
