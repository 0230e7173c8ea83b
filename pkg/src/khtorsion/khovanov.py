"""Khovanov homology tables, torsion queries and the direct-summand check.

Regrading: a homology class in ``(a, b)`` of the unoriented diagram lands
in ``Kh^{i,j}`` with ``i = (w - a) / 2`` and ``j = (3w - b) / 2`` where ``w``
is the writhe.  The unknot sits at ``(0, ±1)``.

Euler characteristic: ``Σ (-1)^i rank Kh^{i,j} q^j`` equals the unreduced
Jones polynomial.  The bracket oracle returns ``f(A) = (-A^3)^{-w} <D>``
with ``<O> = 1``; all exponents of ``f`` are even and the two agree under

    ``A^e  ->  (-1)^{e/2} q^{-e/2}``,  then multiply by ``q + q^{-1}``

(:func:`jones_from_bracket`).  This follows from ``A^2 = -q^{-1}``, which
turns the loop value ``-A^2 - A^{-2}`` into ``q + q^{-1}``.
"""

from __future__ import annotations

import csv
import io
import json
import os
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .complex import build_all
from .diagram import LinkDiagram
from .homology import AbelianGroup, is_direct_summand, is_prime, rank_over_field, smith_normal_form
from .poly import LaurentPolynomial
from .states import check_cap

__all__ = [
    "KhTable",
    "LaurentPolynomial",
    "parse_ring",
    "kh",
    "torsion_summands",
    "graded_euler_characteristic",
    "kauffman_bracket_oracle",
    "jones_from_bracket",
    "check_summand",
    "SummandReport",
]


def parse_ring(ring) -> int | None:
    """``"Z" -> None``, ``"Q" -> 0``, ``"F2"``/``"Fp"`` forms -> ``p``."""
    if ring is None:
        return None
    if isinstance(ring, int):
        return ring
    s = str(ring).strip().upper()
    if s == "Z":
        return None
    if s == "Q":
        return 0
    m = re.fullmatch(r"F_?(\d+)", s)
    if not m:
        raise ValueError("unknown ring %r (use Z, Q or Fp)" % ring)
    p = int(m.group(1))
    if not is_prime(p):
        raise ValueError("F%d: %d is not prime" % (p, p))
    return p


def ring_name(char: int | None) -> str:
    return "Z" if char is None else "Q" if char == 0 else "F%d" % char


@dataclass
class KhTable:
    """``Kh^{i,j}`` of one diagram; only nonzero entries are stored."""

    ring: str
    entries: dict[tuple[int, int], AbelianGroup]
    name: str = ""
    writhe: int = 0
    crossings: int = 0

    def __getitem__(self, ij) -> AbelianGroup:
        return self.entries.get(tuple(ij), AbelianGroup())

    def __eq__(self, other):
        return isinstance(other, KhTable) and self.ring == other.ring and self.entries == other.entries

    @property
    def bigradings(self) -> list[tuple[int, int]]:
        return sorted(self.entries)

    def total_rank(self) -> int:
        return sum(g.free_rank for g in self.entries.values())

    # -- output ----------------------------------------------------------

    def to_text(self) -> str:
        """Aligned table: rows ``j`` descending, columns ``i`` ascending.

        A cell lists ``A`` for ``Z^A`` (or the field dimension) and ``A_b``
        for ``A`` copies of ``Z_b``.
        """
        head = "Kh over %s" % self.ring
        if self.name:
            head += " of %s" % self.name
        head += "  (crossings %d, writhe %d)" % (self.crossings, self.writhe)
        if not self.entries:
            return head + "\n(zero)\n"
        is_ = sorted({i for i, _ in self.entries})
        js = sorted({j for _, j in self.entries}, reverse=True)
        i_cols = list(range(is_[0], is_[-1] + 1))
        cells = {ij: ", ".join(g.cells()) for ij, g in self.entries.items()}
        width = max([len(c) for c in cells.values()] + [len(str(i)) for i in i_cols] + [1])
        jw = max(len(str(j)) for j in js + ["j"])
        lines = [head, " " * jw + " | " + " ".join(str(i).rjust(width) for i in i_cols)]
        lines.append("-" * len(lines[-1]))
        for j in js:
            row = [cells.get((i, j), "").rjust(width) for i in i_cols]
            lines.append(str(j).rjust(jw) + " | " + " ".join(row).rstrip())
        return "\n".join(lines) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["i", "j", "free_rank", "torsion"])
        for (i, j), g in sorted(self.entries.items()):
            w.writerow([i, j, g.free_rank, " ".join(map(str, g.torsion))])
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps(
            {
                "ring": self.ring,
                "name": self.name,
                "writhe": self.writhe,
                "crossings": self.crossings,
                "entries": [
                    {"i": i, "j": j, "free_rank": g.free_rank, "torsion": list(g.torsion)}
                    for (i, j), g in sorted(self.entries.items())
                ],
            },
            indent=1,
        )

    @classmethod
    def from_json(cls, text: str) -> "KhTable":
        obj = json.loads(text)
        ent = {(e["i"], e["j"]): AbelianGroup(e["free_rank"], tuple(e["torsion"])) for e in obj["entries"]}
        return cls(obj["ring"], ent, obj.get("name", ""), obj.get("writhe", 0), obj.get("crossings", 0))

    def __str__(self):
        return self.to_text()


def _homology_of_complex(cx, char):
    """``{a: AbelianGroup}`` for one quantum grading."""
    ranks, torsion = {}, {}
    for a in cx.degrees:
        m = cx.differentials.get(a)
        if m is None or m.is_zero():
            ranks[a], torsion[a] = 0, []
        elif char is None:
            f = smith_normal_form(m)
            ranks[a], torsion[a] = len(f), [q for q in f if q > 1]
        else:
            ranks[a], torsion[a] = rank_over_field(m, char), []
    out = {}
    for a in cx.degrees:
        free = cx.rank(a) - ranks[a] - ranks.get(a + 2, 0)
        g = AbelianGroup.from_orders(free, torsion.get(a + 2, []))
        if not g.is_zero():
            out[a] = g
    return out


def _worker(args):
    d, b, char, cap = args
    cx = build_all(d, cap, only_b={b})[b]
    return b, _homology_of_complex(cx, char)


def kh(d: LinkDiagram, ring="Z", cap: int | None = None, threads: int | None = None) -> KhTable:
    """Khovanov homology of ``d`` over ``ring`` (``"Z"``, ``"Q"`` or ``"Fp"``).

    With ``threads > 1`` the quantum gradings are processed in a worker pool;
    the table does not depend on the thread count.
    """
    char = parse_ring(ring)
    check_cap(d, cap)
    if threads is None:
        threads = int(os.environ.get("KHTOR_THREADS", "1") or 1)
    w = d.writhe
    per_b: dict[int, dict[int, AbelianGroup]] = {}
    if threads > 1 and d.n > 6:
        from .complex import quantum_gradings

        bs = quantum_gradings(d)
        with ProcessPoolExecutor(max_workers=threads) as ex:
            for b, res in ex.map(_worker, [(d, b, char, cap) for b in bs]):
                per_b[b] = res
    else:
        for b, cx in build_all(d, cap).items():
            per_b[b] = _homology_of_complex(cx, char)
    entries = {}
    for b in sorted(per_b):
        for a, g in per_b[b].items():
            i, j = (w - a) // 2, (3 * w - b) // 2
            assert (w - a) % 2 == 0 and (3 * w - b) % 2 == 0
            entries[(i, j)] = g
    return KhTable(ring_name(char), entries, d.name, w, d.n)


def torsion_summands(t: KhTable) -> list[tuple[int, int, int, int]]:
    """``(i, j, prime power, multiplicity)`` for every torsion summand."""
    if t.ring != "Z":
        raise ValueError("torsion is only defined for integral tables")
    out = []
    for (i, j), g in sorted(t.entries.items()):
        counts: dict[int, int] = {}
        for q in g.torsion:
            counts[q] = counts.get(q, 0) + 1
        out.extend((i, j, q, k) for q, k in sorted(counts.items()))
    return out


def graded_euler_characteristic(t: KhTable) -> LaurentPolynomial:
    out: dict[int, int] = {}
    for (i, j), g in t.entries.items():
        out[j] = out.get(j, 0) + (-1) ** (i & 1) * g.free_rank
    return LaurentPolynomial(out)


def _state_loops(pd, unknots, s):
    """Number of loops after smoothing, by walking slot to slot."""
    n = len(pd)
    where: dict[int, list[tuple[int, int]]] = {}
    for ci, t in enumerate(pd):
        for p, lab in enumerate(t):
            where.setdefault(lab, []).append((ci, p))
    partner = {}
    for ci in range(n):
        if s >> ci & 1:
            pairs = ((0, 3), (1, 2))
        else:
            pairs = ((0, 1), (2, 3))
        for p, q in pairs:
            partner[(ci, p)] = (ci, q)
            partner[(ci, q)] = (ci, p)
    seen = set()
    loops = 0
    for start in partner:
        if start in seen:
            continue
        loops += 1
        slot = start
        while slot not in seen:
            seen.add(slot)
            other = partner[slot]
            seen.add(other)
            e0, e1 = where[pd[other[0]][other[1]]]
            slot = e1 if e0 == other else e0
    return loops + unknots


def kauffman_bracket_oracle(d: LinkDiagram, cap: int | None = None) -> LaurentPolynomial:
    """Writhe-normalised bracket ``(-A^3)^{-w} <D>`` with ``<O> = 1``, as a polynomial in ``A``.

    A direct sum over all ``2^n`` states; it shares no code with the chain
    complex.
    """
    check_cap(d, cap)
    pd = d.pd
    n = len(pd)
    loop = LaurentPolynomial({2: -1, -2: -1})
    by_loops: dict[tuple[int, int], int] = {}
    for s in range(1 << n):
        sigma = n - 2 * bin(s).count("1")
        c = _state_loops(pd, d.unknots, s)
        by_loops[(sigma, c)] = by_loops.get((sigma, c), 0) + 1
    total = LaurentPolynomial()
    for (sigma, c), k in by_loops.items():
        total = total + LaurentPolynomial({sigma: k}) * loop ** (c - 1)
    w = d.writhe
    norm = LaurentPolynomial({-3 * w: (-1) ** (w & 1)})
    return total * norm


def jones_from_bracket(f: LaurentPolynomial) -> LaurentPolynomial:
    """Unreduced Jones polynomial in ``q`` from the normalised bracket in ``A``."""
    out = {}
    for e, c in f.coeffs.items():
        if e % 2:
            raise ValueError("normalised bracket has an odd exponent %d" % e)
        out[-e // 2] = c * (-1) ** ((e // 2) & 1)
    return LaurentPolynomial(out) * LaurentPolynomial({1: 1, -1: 1})


@dataclass
class SummandReport:
    passed: bool
    checked: int
    failures: list[tuple[tuple[int, int], AbelianGroup, AbelianGroup]] = field(default_factory=list)

    def __str__(self):
        lines = ["%s: %d bigradings checked, %d failures" % ("PASS" if self.passed else "FAIL", self.checked, len(self.failures))]
        for (i, j), g0, g1 in self.failures:
            lines.append("  (%d, %d): %s is not a summand of %s" % (i, j, g0, g1))
        return "\n".join(lines)


def check_summand(t0: KhTable, t1: KhTable) -> SummandReport:
    """Check that every ``Kh^{i,j}`` of ``t0`` is a direct summand of that of ``t1``."""
    if t0.ring != t1.ring:
        raise ValueError("tables over different rings (%s, %s)" % (t0.ring, t1.ring))
    failures = []
    keys = sorted(t0.entries)
    for ij in keys:
        if not is_direct_summand(t0[ij], t1[ij]):
            failures.append((ij, t0[ij], t1[ij]))
    return SummandReport(not failures, len(keys), failures)
