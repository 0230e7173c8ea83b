import random

import pytest
import sympy as sp

from khtorsion.alexander import NormalizedAlexander, alexander, check_family, normalize
from khtorsion.diagram import (
    DiagramError,
    add_kink,
    braid_closure,
    connected_sum,
    faces,
    kt_tangle,
    livingston_pattern,
    load,
    mirror,
    permute_crossings,
    satellite,
    tangle_replace,
)
from khtorsion.poly import LaurentPolynomial

KNOWN = {
    "unknot": [1],
    "3_1": [1, -1, 1],
    "3_1_right": [1, -1, 1],
    "4_1": [1, -3, 1],
    "5_1": [1, -1, 1, -1, 1],
    "5_2": [2, -3, 2],
    "6_1": [2, -5, 2],
    "6_2": [1, -3, 3, -3, 1],
    "6_3": [1, -3, 5, -3, 1],
    "7_4": [4, -7, 4],
    "8_19": [1, -1, 0, 1, 0, -1, 1],
}


def burau_oracle(word, n):
    """``Δ`` of a braid closure from the unreduced Burau matrix, via sympy."""
    t = sp.symbols("t")
    m = sp.eye(n)
    for g in word:
        i = abs(g) - 1
        b = sp.eye(n)
        blk = sp.Matrix([[1 - t, t], [1, 0]])
        b[i:i + 2, i:i + 2] = blk if g > 0 else blk.inv()
        m = m * b
    minor = sp.factor((sp.eye(n) - m)[1:, 1:].det())
    num, _ = sp.fraction(sp.together(minor))
    coeffs = sp.Poly(sp.expand(num), t).all_coeffs()[::-1]
    return normalize(LaurentPolynomial.from_list([int(c) for c in coeffs]))


@pytest.mark.parametrize("name", sorted(KNOWN))
def test_corpus_values(name):
    assert alexander(load(name)).coefficients == KNOWN[name]


def test_stevedore_offset():
    a = alexander(load("6_1"))
    assert str(a) == "2 -5 2" and a.offset == -1
    assert a.symmetric() == LaurentPolynomial({-1: 2, 0: -5, 1: 2})


@pytest.mark.parametrize("word,n", [([1, 1, 1], 2), ([1, -2, 1, -2], 3), ([1, 2, 1, 2, 1], 3), ([1, 1, 2, -1, 2, 3, -2, 3], 4)])
def test_braid_closures_match_burau(word, n):
    d = braid_closure(word, n)
    if d.is_knot:
        assert alexander(d).polynomial == burau_oracle(word, n)


def test_random_braids_match_burau():
    rnd = random.Random(3)
    checked = 0
    while checked < 8:
        n = rnd.choice([3, 4])
        word = [rnd.choice([1, -1]) * rnd.randint(1, n - 1) for _ in range(rnd.randint(4, 9))]
        d = braid_closure(word, n)
        if not d.is_knot:
            continue
        assert alexander(d).polynomial == burau_oracle(word, n), word
        checked += 1


@pytest.mark.parametrize("name", ["3_1", "4_1", "5_2", "6_2", "8_19"])
def test_invariance_and_symmetry(name):
    d = load(name)
    a = alexander(d)
    assert abs(a(1)) == 1
    assert alexander(mirror(d)) == a
    assert alexander(add_kink(d, sign=-1)) == a
    assert alexander(permute_crossings(d, list(reversed(range(d.n))))) == a
    c = a.coefficients
    assert c == c[::-1]


def test_connected_sum_multiplies():
    s = connected_sum(load("3_1"), load("5_2"))
    assert alexander(s) == alexander(load("3_1")) * alexander(load("5_2"))


def test_links_rejected():
    with pytest.raises(DiagramError):
        alexander(load("hopf"))


@pytest.mark.parametrize("k", ["unknot", "3_1"])
def test_family(k):
    rep = check_family(load(k), load("6_1"), 3)
    assert rep.passed and rep.distinct
    assert rep.values[2] == alexander(load(k)) * NormalizedAlexander(normalize(LaurentPolynomial.from_list([2, -5, 2]) ** 2))
    assert "PASS" in str(rep)


def test_family_fails_without_distinct_values():
    assert not check_family(load("3_1"), load("unknot"), 2).passed


def _face_pairs(d, limit=4):
    out = []
    for face in faces(d):
        labs = sorted({a for a, _ in face})
        for i in range(len(labs)):
            for j in range(i + 1, len(labs)):
                if (labs[i], labs[j]) not in out:
                    out.append((labs[i], labs[j]))
    return out[:limit]


@pytest.mark.parametrize("name", ["unknot_kink", "3_1", "3_1_right", "4_1"])
def test_ktjoin_preserves_alexander(name):
    d = add_kink(load("unknot")) if name == "unknot_kink" else load(name)
    t = kt_tangle()
    for a1, a2 in _face_pairs(d):
        j = tangle_replace(d, a1, a2, t)
        assert j.is_knot
        assert alexander(j) == alexander(d), (a1, a2)


def test_kt_numerator_has_trivial_alexander():
    assert alexander(kt_tangle().numerator()).coefficients == [1]


@pytest.mark.parametrize("name", ["3_1", "3_1_right", "4_1"])
def test_satellite_preserves_alexander(name):
    d = load(name)
    assert alexander(satellite(d)) == alexander(d)


def test_pattern_closure_has_trivial_alexander():
    assert alexander(livingston_pattern().closure()).coefficients == [1]
