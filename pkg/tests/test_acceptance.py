"""Acceptance suite: one PASS/FAIL line per criterion.

Run with ``pytest -s tests/test_acceptance.py`` to see the report lines, or
directly with ``python tests/test_acceptance.py``.
"""

import random
import sys
import time

import pytest

from khtorsion.alexander import alexander, check_family
from khtorsion.complex import build_all
from khtorsion.diagram import (
    LinkDiagram,
    add_kink,
    braid_closure,
    connected_sum,
    faces,
    kt_tangle,
    load,
    permute_crossings,
    satellite,
    tangle_replace,
)
from khtorsion.khovanov import (
    check_summand,
    graded_euler_characteristic,
    jones_from_bracket,
    kauffman_bracket_oracle,
    kh,
    torsion_summands,
)

CORPUS = ["unknot", "3_1", "3_1_right", "4_1", "hopf", "5_1", "5_2", "6_1", "6_2", "6_3", "7_4", "8_19"]
ALTERNATING = ["3_1", "3_1_right", "4_1", "5_1", "5_2", "6_1", "6_2", "6_3", "7_4", "hopf"]

# a second diagram for each knot, as a braid closure
BRAIDS = {
    "3_1": [-1, -1, -1],
    "4_1": [1, -2, 1, -2],
    "5_1": [-1] * 5,
    "5_2": [-1, -1, -1, -2, 1, -2],
    "6_1": [-1, -1, -2, 1, 3, -2, 3],
}


def report(num, ok, what, seconds):
    line = "%s criterion %d: %s (%.1fs)" % ("PASS" if ok else "FAIL", num, what, seconds)
    print(line)
    return line


def criterion_1():
    t0 = time.time()
    u = kh(load("unknot"))
    pos = kh(LinkDiagram.from_pd([(1, 1, 2, 2)]))
    neg = kh(LinkDiagram.from_pd([(1, 2, 2, 1)]))
    shape = {k: (g.free_rank, g.torsion) for k, g in u.entries.items()} == {(0, 1): (1, ()), (0, -1): (1, ())}
    dt = time.time() - t0
    ok = shape and pos.entries == u.entries and neg.entries == u.entries and dt < 1
    return ok, "unknot and both kinks give Z at (0,+-1)", dt


def criterion_2():
    t0 = time.time()
    bad = []
    for name in CORPUS:
        for b, cx in build_all(load(name)).items():
            for a in cx.degrees:
                if not (cx.d(a - 2) @ cx.d(a)).is_zero():
                    bad.append((name, b, a))
    dt = time.time() - t0
    return not bad and dt < 60, "d^2 = 0 on %d corpus diagrams%s" % (len(CORPUS), "" if not bad else " %r" % bad), dt


def criterion_3():
    t0 = time.time()
    bad = [n for n in CORPUS if graded_euler_characteristic(kh(load(n))) != jones_from_bracket(kauffman_bracket_oracle(load(n)))]
    dt = time.time() - t0
    return not bad and dt < 60, "Euler characteristic equals bracket oracle%s" % ("" if not bad else " except %r" % bad), dt


def criterion_4():
    t0 = time.time()
    rnd = random.Random(2024)
    bad = []
    for name, word in BRAIDS.items():
        d = load(name)
        base = kh(d)
        inflated = add_kink(add_kink(d, sign=-1), sign=1, under_first=False)
        order = list(range(d.n))
        rnd.shuffle(order)
        others = [inflated, braid_closure(word), permute_crossings(d, order)]
        if any(kh(o) != base for o in others):
            bad.append(name)
    return not bad, "%d knots, minimal/inflated/braid/permuted agree" % len(BRAIDS), time.time() - t0


def criterion_5():
    t0 = time.time()
    primes = {q for n in ALTERNATING for _, _, q, _ in torsion_summands(kh(load(n)))}
    trefoil = torsion_summands(kh(load("3_1")))
    ok = primes <= {2} and len(trefoil) == 1 and trefoil[0][2:] == (2, 1)
    return ok, "alternating torsion orders %s, trefoil %r" % (sorted(primes), trefoil), time.time() - t0


def criterion_6():
    t0 = time.time()
    bad = []
    for name in CORPUS:
        tz = kh(load(name))
        for p in (2, 3, 5):
            tp = kh(load(name), "F%d" % p)
            keys = set(tz.entries) | set(tp.entries) | {(i + 1, j) for i, j in tz.entries}
            for i, j in keys:
                want = tz[i, j].free_rank + tz[i, j].p_torsion_count(p) + tz[i + 1, j].p_torsion_count(p)
                if tp[i, j].free_rank != want:
                    bad.append((name, p, i, j))
    return not bad, "universal coefficients over F2, F3, F5%s" % ("" if not bad else " %r" % bad[:4]), time.time() - t0


def criterion_7():
    t0 = time.time()
    tref = load("3_1")
    joined = tangle_replace(tref, 1, 4, kt_tangle())
    pairs = [
        (load("unknot"), load("6_1")),
        (tref, connected_sum(tref, load("6_1"))),
        (tref, joined),
    ]
    results = [check_summand(kh(a), kh(b)).passed for a, b in pairs]
    dt = time.time() - t0
    what = "summand checks %s; KT join has %d crossings" % (results, joined.n)
    return all(results) and dt < 1800, what, dt


def criterion_8():
    t0 = time.time()
    fam = [check_family(load(k), load("6_1"), 3) for k in ("unknot", "3_1")]
    values = [str(v) for rep in fam for v in rep.values]
    ok = all(r.passed for r in fam) and len(set(values)) == len(values)
    t = kt_tangle()
    small = [n for n in CORPUS if n != "hopf" and load(n).n <= 4]
    for name in small:
        d = load(name)
        ok = ok and alexander(satellite(d)) == alexander(d)
        for face in faces(d)[:3]:
            labs = sorted({a for a, _ in face})
            if len(labs) > 1:
                ok = ok and alexander(tangle_replace(d, labs[0], labs[1], t)) == alexander(d)
    dt = time.time() - t0
    return ok and dt < 60, "family n<=3 for unknot and trefoil; ktjoin and satellite on %s" % small, dt


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7, criterion_8]


@pytest.mark.parametrize("num", range(1, 9))
def test_criterion(num):
    ok, what, dt = CRITERIA[num - 1]()
    report(num, ok, what, dt)
    assert ok, what


def test_criterion_9_not_attempted():
    print("SKIP criterion 9: T(5,6) needs a scanning algorithm; not attempted")


if __name__ == "__main__":
    failed = 0
    for k, fn in enumerate(CRITERIA, 1):
        ok, what, dt = fn()
        report(k, ok, what, dt)
        failed += not ok
    print("SKIP criterion 9: T(5,6) needs a scanning algorithm; not attempted")
    sys.exit(1 if failed else 0)
