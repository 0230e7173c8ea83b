import random

import pytest

from khtorsion.diagram import add_kink, braid_closure, connected_sum, load, mirror, parse_pd, permute_crossings
from khtorsion.homology import AbelianGroup
from khtorsion.khovanov import (
    KhTable,
    LaurentPolynomial,
    check_summand,
    graded_euler_characteristic,
    jones_from_bracket,
    kauffman_bracket_oracle,
    kh,
    parse_ring,
    torsion_summands,
)

Z = AbelianGroup(1)
Z2 = AbelianGroup(0, (2,))
CORPUS = ["unknot", "3_1", "3_1_right", "4_1", "hopf", "5_1", "5_2", "6_1", "6_2", "6_3", "7_4", "8_19"]


@pytest.fixture(scope="module")
def tables():
    return {name: kh(load(name)) for name in CORPUS}


def test_unknot():
    t = kh(load("unknot"))
    assert t.entries == {(0, -1): Z, (0, 1): Z}


def test_right_trefoil_table():
    t = kh(load("3_1_right"))
    assert t.entries == {(0, 1): Z, (0, 3): Z, (2, 5): Z, (3, 7): Z2, (3, 9): Z}


def test_left_trefoil_is_mirror_table():
    t = kh(load("3_1"))
    assert t.entries == {(0, -1): Z, (0, -3): Z, (-2, -5): Z, (-2, -7): Z2, (-3, -9): Z}


def test_figure_eight_table():
    t = kh(load("4_1"))
    want = {
        (-2, -5): Z, (-1, -3): Z2, (-1, -1): Z, (0, -1): Z,
        (0, 1): Z, (1, 1): Z, (2, 3): Z2, (2, 5): Z,
    }
    assert t.entries == want


def test_hopf_table():
    t = kh(load("hopf"))
    assert t.entries == {(0, 0): Z, (0, -2): Z, (-2, -4): Z, (-2, -6): Z}


def test_split_unknots_multiply():
    t = kh(parse_pd("PD[] U[2]"))
    assert t.entries == {(0, -2): Z, (0, 0): AbelianGroup(2), (0, 2): Z}


@pytest.mark.parametrize("name", CORPUS)
def test_euler_characteristic_is_jones(name, tables):
    d = load(name)
    assert graded_euler_characteristic(tables[name]) == jones_from_bracket(kauffman_bracket_oracle(d))


def test_known_jones_values():
    # unnormalised Jones of the right trefoil: q + q^3 + q^5 - q^9
    j = jones_from_bracket(kauffman_bracket_oracle(load("3_1_right")))
    assert j == LaurentPolynomial({1: 1, 3: 1, 5: 1, 9: -1})


@pytest.mark.parametrize("name", ["3_1", "4_1", "5_2", "6_2"])
def test_field_coefficients_uct(name, tables):
    tz = tables[name]
    for p in (2, 3, 5):
        tp = kh(load(name), "F%d" % p)
        keys = set(tz.entries) | set(tp.entries) | {(i + 1, j) for i, j in tz.entries}
        for i, j in keys:
            want = tz[i, j].free_rank + tz[i, j].p_torsion_count(p) + tz[i + 1, j].p_torsion_count(p)
            assert tp[i, j].free_rank == want
    tq = kh(load(name), "Q")
    assert {k: g.free_rank for k, g in tq.entries.items()} == {
        k: g.free_rank for k, g in tz.entries.items() if g.free_rank
    }


def test_trefoil_f2_exceeds_rational_by_two():
    d = load("3_1")
    assert kh(d, "F2").total_rank() == kh(d, "Q").total_rank() + 2


@pytest.mark.parametrize("name", ["3_1", "3_1_right", "4_1", "hopf", "5_1", "5_2", "6_1", "6_2", "6_3", "7_4"])
def test_alternating_torsion_is_z2(name, tables):
    for _, _, q, _ in torsion_summands(tables[name]):
        assert q == 2


def test_trefoil_has_one_z2(tables):
    assert torsion_summands(tables["3_1"]) == [(-2, -7, 2, 1)]


@pytest.mark.parametrize("name", ["3_1", "4_1", "5_2", "6_1", "7_4"])
def test_reidemeister_and_order_invariance(name, tables):
    d = load(name)
    base = tables[name]
    assert kh(add_kink(d, sign=1)) == base
    assert kh(add_kink(add_kink(d, sign=-1, under_first=False), sign=1)) == base
    rnd = random.Random(name)
    order = list(range(d.n))
    rnd.shuffle(order)
    assert kh(permute_crossings(d, order)) == base


def test_braid_closure_diagrams_agree():
    assert kh(braid_closure([1, 1, 1])) == kh(load("3_1_right"))
    assert kh(braid_closure([1, -2, 1, -2])) == kh(load("4_1"))


@pytest.mark.parametrize("name", ["3_1", "4_1", "5_2", "6_2", "8_19"])
def test_mirror_free_part_duality(name, tables):
    t, m = tables[name], kh(mirror(load(name)))
    assert {k: g.free_rank for k, g in t.entries.items() if g.free_rank} == {
        (-i, -j): g.free_rank for (i, j), g in m.entries.items() if g.free_rank
    }
    # torsion moves from (i, j) to (1 - i, -j)
    assert sorted((i, j, q) for i, j, q, _ in torsion_summands(t)) == sorted(
        (1 - i, -j, q) for i, j, q, _ in torsion_summands(m)
    )


def test_8_19_has_no_odd_torsion_but_is_not_thin(tables):
    t = tables["8_19"]
    assert all(q == 2 for _, _, q, _ in torsion_summands(t))
    diagonals = {j - 2 * i for (i, j), g in t.entries.items() if g.free_rank}
    assert len(diagonals) > 2


def test_thread_count_does_not_change_table():
    d = connected_sum(load("3_1"), load("4_1"))
    assert kh(d, threads=1).to_text() == kh(d, threads=2).to_text()


def test_output_formats(tables):
    t = tables["3_1_right"]
    text = t.to_text()
    lines = text.splitlines()
    assert lines[1].split("|")[1].split() == ["0", "1", "2", "3"]
    js = [int(ln.split("|")[0]) for ln in lines[3:]]
    assert js == sorted(js, reverse=True)
    assert "1_2" in text
    assert KhTable.from_json(t.to_json()) == t
    csv_lines = t.to_csv().splitlines()
    assert csv_lines[0] == "i,j,free_rank,torsion"
    assert "3,7,0,2" in csv_lines


def test_parse_ring():
    assert parse_ring("Z") is None and parse_ring("Q") == 0
    assert parse_ring("F2") == 2 and parse_ring("F_5") == 5 and parse_ring("f3") == 3
    for bad in ("F4", "R", "F1"):
        with pytest.raises(ValueError):
            parse_ring(bad)


def test_check_summand(tables):
    assert check_summand(tables["unknot"], tables["6_1"]).passed
    rep = check_summand(tables["3_1"], tables["4_1"])
    assert not rep.passed and rep.failures
    assert "FAIL" in str(rep)
    with pytest.raises(ValueError):
        check_summand(tables["unknot"], kh(load("unknot"), "Q"))


def test_torsion_summands_requires_integers():
    with pytest.raises(ValueError):
        torsion_summands(kh(load("3_1"), "F2"))


# Jones polynomial V(t) of 11n42 as listed in knot tables
KT_JONES = {-6: 1, -5: -2, -4: 2, -3: -2, -2: 1, 1: 2, 2: -2, 3: 2, 4: -1}


def _unnormalised(v, s):
    out = LaurentPolynomial()
    for e, c in v.items():
        out = out + LaurentPolynomial({2 * s * e + 1: c, 2 * s * e - 1: c})
    return out


def test_kt_numerator_is_11n42():
    from khtorsion.diagram import kt_tangle

    j = jones_from_bracket(kauffman_bracket_oracle(kt_tangle().numerator()))
    assert j in (_unnormalised(KT_JONES, 1), _unnormalised(KT_JONES, -1))


def test_kt_denominator_is_unlink():
    from khtorsion.diagram import LinkDiagram, kt_tangle

    assert kh(kt_tangle().denominator()).entries == kh(LinkDiagram.from_pd([], 2)).entries


def test_axis_of_core_is_hopf_link():
    from khtorsion.diagram import AnnularPattern

    core = AnnularPattern((), (1,), (1,))
    hopfs = [kh(load("hopf")).entries, kh(mirror(load("hopf"))).entries]
    assert kh(core.with_axis()).entries in hopfs


def test_pattern_is_nontrivial_with_unknotted_closure():
    from khtorsion.diagram import livingston_pattern

    p = livingston_pattern()
    assert kh(p.closure()).entries == kh(load("unknot")).entries
    # an unknotted pattern of wrapping number one would be the core
    hopfs = [kh(load("hopf")).entries, kh(mirror(load("hopf"))).entries]
    assert kh(p.with_axis()).entries not in hopfs
