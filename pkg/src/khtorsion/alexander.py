"""Alexander polynomials of knot diagrams via Fox calculus.

The Wirtinger generators are the over-arcs.  At a crossing with over-arc
``k``, incoming under-arc ``i`` and outgoing under-arc ``j`` the relation is
``x_j = x_k x_i x_k^{-1}`` (positive) or ``x_j = x_k^{-1} x_i x_k``
(negative); abelianised Fox derivatives give the rows

    positive:  (1 - t) x_k + t x_i - x_j
    negative:  (t - 1) x_k +   x_i - t x_j      (times t)

Any first minor of this matrix is ``Δ`` up to a unit ``±t^k``.  The minor is
computed by sparse elimination on unit pivots followed by fraction-free
(Bareiss) elimination with exact polynomial division.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .diagram import DiagramError, LinkDiagram, connected_sum
from .poly import LaurentPolynomial

__all__ = [
    "NormalizedAlexander",
    "alexander",
    "alexander_matrix",
    "normalize",
    "check_family",
    "FamilyReport",
]

ONE = LaurentPolynomial({0: 1})


def _divexact(a: LaurentPolynomial, b: LaurentPolynomial) -> LaurentPolynomial:
    """Exact division in Z[t^±1]; raises if ``b`` does not divide ``a``."""
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    if not a:
        return LaurentPolynomial()
    rem = dict(a.coeffs)
    bhi = b.max_degree
    blead = b.coeffs[bhi]
    blo = b.min_degree
    q = {}
    while rem:
        hi = max(rem)
        if hi - bhi < min(rem) - blo:
            break
        c, r = divmod(rem[hi], blead)
        if r:
            raise ArithmeticError("inexact division")
        e = hi - bhi
        q[e] = c
        for eb, cb in b.coeffs.items():
            v = rem.get(e + eb, 0) - c * cb
            if v:
                rem[e + eb] = v
            else:
                rem.pop(e + eb, None)
    if rem:
        raise ArithmeticError("inexact division")
    return LaurentPolynomial(q)


def _unit_inverse(p: LaurentPolynomial):
    if len(p.coeffs) == 1:
        (e, c), = p.coeffs.items()
        if c in (1, -1):
            return LaurentPolynomial({-e: c})
    return None


def _det(rows: dict[int, dict[int, LaurentPolynomial]], size: int) -> LaurentPolynomial:
    """Determinant up to a unit of a sparse square matrix over Z[t^±1]."""
    rows = {r: {c: v for c, v in row.items() if v} for r, row in rows.items()}
    cols: dict[int, set[int]] = {}
    for r, row in rows.items():
        for c in row:
            cols.setdefault(c, set()).add(r)
    live_rows, live_cols = set(range(size)), set(range(size))
    unit = ONE
    # unit pivots
    progress = True
    while progress:
        progress = False
        for c in sorted(live_cols, key=lambda c: len(cols.get(c, ()))):
            if c not in live_cols:
                continue
            cand = [r for r in cols.get(c, ()) if _unit_inverse(rows[r][c]) is not None]
            if not cand:
                continue
            r0 = min(cand, key=lambda r: len(rows[r]))
            piv = rows[r0][c]
            inv = _unit_inverse(piv)
            unit = unit * piv
            prow = rows[r0]
            for r in list(cols[c]):
                if r == r0:
                    continue
                k = rows[r][c] * inv
                row = rows[r]
                for cc, v in prow.items():
                    nv = row.get(cc, LaurentPolynomial()) - k * v
                    if nv:
                        row[cc] = nv
                        cols.setdefault(cc, set()).add(r)
                    else:
                        row.pop(cc, None)
                        cols[cc].discard(r)
            for cc in prow:
                cols[cc].discard(r0)
            del rows[r0]
            live_rows.discard(r0)
            live_cols.discard(c)
            cols.pop(c, None)
            progress = True
    # Bareiss on the dense remainder
    rl, cl = sorted(live_rows), sorted(live_cols)
    m = len(rl)
    if m == 0:
        return unit
    a = [[rows.get(r, {}).get(c, LaurentPolynomial()) for c in cl] for r in rl]
    sign = 1
    prev = ONE
    for k in range(m - 1):
        if not a[k][k]:
            swap = next((i for i in range(k + 1, m) if a[i][k]), None)
            if swap is None:
                return LaurentPolynomial()
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, m):
            for j in range(k + 1, m):
                a[i][j] = _divexact(a[i][j] * a[k][k] - a[i][k] * a[k][j], prev)
            a[i][k] = LaurentPolynomial()
        prev = a[k][k]
    return a[m - 1][m - 1] * unit * sign


def alexander_matrix(d: LinkDiagram):
    """Rows ``{over-arc index: entry}`` per crossing, and the number of over-arcs."""
    parent = {x: x for x in d.arcs}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for c in d.crossings:
        a, b, cc, dd = c.pd
        rb, rd = find(b), find(dd)
        if rb != rd:
            parent[max(rb, rd)] = min(rb, rd)
    reps = sorted({find(x) for x in d.arcs})
    idx = {r: k for k, r in enumerate(reps)}
    t = LaurentPolynomial({1: 1})
    rows = []
    for c in d.crossings:
        a, b, cc, dd = c.pd
        k, i, j = idx[find(b)], idx[find(a)], idx[find(cc)]
        if c.sign > 0:
            terms = ((k, ONE - t), (i, t), (j, -ONE))
        else:
            terms = ((k, t - ONE), (i, ONE), (j, -t))
        row: dict[int, LaurentPolynomial] = {}
        for col, v in terms:
            row[col] = row.get(col, LaurentPolynomial()) + v
        rows.append({col: v for col, v in row.items() if v})
    return rows, len(reps)


def normalize(p: LaurentPolynomial) -> LaurentPolynomial:
    """Lowest exponent 0 and positive leading coefficient."""
    if not p:
        return p
    p = p.shift(-p.min_degree)
    return -p if p.coeffs[p.max_degree] < 0 else p


@dataclass(frozen=True)
class NormalizedAlexander:
    polynomial: LaurentPolynomial

    @property
    def coefficients(self) -> list[int]:
        return self.polynomial.to_list()[0]

    @property
    def offset(self) -> int:
        """Exponent of the first coefficient in the symmetric form."""
        return -(self.polynomial.max_degree // 2)

    def symmetric(self) -> LaurentPolynomial:
        return self.polynomial.shift(self.offset)

    def __mul__(self, other: "NormalizedAlexander") -> "NormalizedAlexander":
        return NormalizedAlexander(normalize(self.polynomial * other.polynomial))

    def __pow__(self, k: int) -> "NormalizedAlexander":
        return NormalizedAlexander(normalize(self.polynomial ** k))

    def __call__(self, x):
        return self.polynomial(x)

    def __str__(self):
        return " ".join(map(str, self.coefficients))


def alexander(d: LinkDiagram) -> NormalizedAlexander:
    """``Δ`` of a knot diagram, up to units, normalised (see :func:`normalize`)."""
    if not d.is_knot:
        raise DiagramError("alexander() needs a knot diagram, got %d components" % d.num_components)
    if d.n == 0:
        return NormalizedAlexander(ONE)
    rows, m = alexander_matrix(d)
    # drop the last relation and the last generator
    minor = {r: {c: v for c, v in rows[r].items() if c != m - 1} for r in range(len(rows) - 1)}
    det = _det(minor, m - 1)
    poly = normalize(det)
    if abs(poly(1)) != 1:
        raise ArithmeticError("Δ(1) = %d; the diagram is not a knot?" % poly(1))
    return NormalizedAlexander(poly)


@dataclass
class FamilyReport:
    passed: bool
    values: list[NormalizedAlexander] = field(default_factory=list)
    expected: list[NormalizedAlexander] = field(default_factory=list)
    distinct: bool = True

    def __str__(self):
        lines = []
        for n, (got, want) in enumerate(zip(self.values, self.expected)):
            ok = "ok" if got == want else "MISMATCH"
            lines.append("n=%d  Δ = %s  (expected %s) %s" % (n, got, want, ok))
        lines.append("pairwise distinct: %s" % ("yes" if self.distinct else "no"))
        lines.append("PASS" if self.passed else "FAIL")
        return "\n".join(lines)


def check_family(k: LinkDiagram, j0: LinkDiagram, n_max: int) -> FamilyReport:
    """Compare ``Δ(K # J0 # ... # J0)`` with ``Δ(K) Δ(J0)^n`` for ``0 <= n <= n_max``."""
    dk, dj = alexander(k), alexander(j0)
    values, expected = [], []
    kn = k
    for n in range(n_max + 1):
        if n:
            kn = connected_sum(kn, j0)
        values.append(alexander(kn))
        expected.append(dk * dj ** n)
    distinct = len(set(values)) == len(values)
    ok = all(a == b for a, b in zip(values, expected)) and distinct
    return FamilyReport(ok, values, expected, distinct)
