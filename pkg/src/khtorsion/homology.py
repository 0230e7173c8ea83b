"""Exact homology of integer chain complexes.

Smith normal form uses sparse elimination: unit pivots are taken first
(cheapest Markowitz cost), which is where almost all of the work in a
Khovanov complex goes, and the small residual block is then reduced with
gcd steps.  Everything is done in Python integers, so there is no overflow.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import gcd

from .complex import SparseIntMatrix

__all__ = [
    "AbelianGroup",
    "smith_normal_form",
    "homology_of_pair",
    "rank_over_field",
    "is_direct_summand",
    "prime_power_decomposition",
    "is_prime",
]


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    k = 2
    while k * k <= p:
        if p % k == 0:
            return False
        k += 1
    return True


def _factor(m: int) -> dict[int, int]:
    out: dict[int, int] = {}
    k = 2
    while k * k <= m:
        while m % k == 0:
            out[k] = out.get(k, 0) + 1
            m //= k
        k += 1
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


def prime_power_decomposition(factors) -> list[int]:
    """Split cyclic orders into prime powers: ``[12, 2] -> [2, 3, 4]``."""
    out = []
    for m in factors:
        m = abs(m)
        if m > 1:
            out.extend(p**e for p, e in _factor(m).items())
    return sorted(out)


def _invariant_factors(diagonal) -> list[int]:
    """Rebuild the divisibility chain from any diagonal form."""
    nonzero = [abs(x) for x in diagonal if x]
    ones = sum(1 for x in nonzero if x == 1)
    by_prime: dict[int, list[int]] = {}
    for q in prime_power_decomposition(x for x in nonzero if x > 1):
        p = min(_factor(q))
        by_prime.setdefault(p, []).append(q)
    rest = len(nonzero) - ones
    chain = [1] * rest
    for p, qs in by_prime.items():
        qs.sort(reverse=True)
        for k, q in enumerate(qs):
            chain[rest - 1 - k] *= q
    return [1] * ones + chain


class _Eliminator:
    """Sparse integer matrix with row and column access for pivoting."""

    def __init__(self, m: SparseIntMatrix):
        self.rows = {r: dict(row) for r, row in m.rows.items() if row}
        self.cols: dict[int, dict[int, int]] = {}
        for r, row in self.rows.items():
            for c, v in row.items():
                self.cols.setdefault(c, {})[r] = v

    def _set(self, r, c, v):
        if v:
            self.rows.setdefault(r, {})[c] = v
            self.cols.setdefault(c, {})[r] = v
        else:
            row = self.rows.get(r)
            if row is not None and c in row:
                del row[c]
                if not row:
                    del self.rows[r]
                col = self.cols[c]
                del col[r]
                if not col:
                    del self.cols[c]

    def drop(self, r, c):
        """Remove row ``r`` and column ``c`` (pivot already isolated or unit)."""
        for cc in list(self.rows.get(r, {})):
            col = self.cols[cc]
            del col[r]
            if not col:
                del self.cols[cc]
        self.rows.pop(r, None)
        for rr in list(self.cols.get(c, {})):
            row = self.rows[rr]
            del row[c]
            if not row:
                del self.rows[rr]
        self.cols.pop(c, None)

    def add_row(self, dst, src, k):
        """row[dst] += k * row[src]."""
        for c, v in list(self.rows[src].items()):
            self._set(dst, c, self.rows.get(dst, {}).get(c, 0) + k * v)

    def add_col(self, dst, src, k):
        for r, v in list(self.cols[src].items()):
            self._set(r, dst, self.cols.get(dst, {}).get(r, 0) + k * v)

    def unit_phase(self) -> int:
        """Eliminate ±1 pivots; returns how many were used."""
        used = 0
        progress = True
        while progress:
            progress = False
            for c in sorted(self.cols, key=lambda c: len(self.cols[c])):
                col = self.cols.get(c)
                if not col:
                    continue
                best, best_len = None, None
                for r, v in col.items():
                    if v == 1 or v == -1:
                        ln = len(self.rows[r])
                        if best is None or ln < best_len:
                            best, best_len = r, ln
                            if ln == 1:
                                break
                if best is None:
                    continue
                piv = col[best]
                prow = self.rows[best]
                for r in [r for r in col if r != best]:
                    k = -col[r] * piv
                    row = self.rows[r]
                    for cc, v in prow.items():
                        nv = row.get(cc, 0) + k * v
                        if nv:
                            row[cc] = nv
                            self.cols[cc][r] = nv
                        else:
                            del row[cc]
                            del self.cols[cc][r]
                    if not row:
                        del self.rows[r]
                # the pivot column is now zero outside the pivot row
                for cc in prow:
                    if cc != c:
                        ccol = self.cols[cc]
                        del ccol[best]
                        if not ccol:
                            del self.cols[cc]
                del self.rows[best]
                del self.cols[c]
                used += 1
                progress = True
        return used

    def general_phase(self) -> list[int]:
        diag = []
        while self.rows:
            # smallest absolute value, ties by fill-in estimate
            r, c, v = min(
                ((r, c, v) for r, row in self.rows.items() for c, v in row.items()),
                key=lambda t: (abs(t[2]), len(self.rows[t[0]]) * len(self.cols[t[1]])),
            )
            clean = True
            for rr, w in list(self.cols[c].items()):
                if rr == r:
                    continue
                q = w // v
                self.add_row(rr, r, -q)
                if self.rows.get(rr, {}).get(c, 0):
                    clean = False
            for cc, w in list(self.rows.get(r, {}).items()):
                if cc == c:
                    continue
                q = w // v
                self.add_col(cc, c, -q)
                if self.cols.get(cc, {}).get(r, 0):
                    clean = False
            if not clean:
                continue
            diag.append(abs(v))
            self.drop(r, c)
        return diag


def smith_normal_form(m: SparseIntMatrix) -> list[int]:
    """Nonzero invariant factors ``d_1 | d_2 | ... | d_r`` of ``m``."""
    e = _Eliminator(m)
    ones = e.unit_phase()
    rest = e.general_phase()
    return _invariant_factors([1] * ones + rest)


def rank_over_field(m: SparseIntMatrix, char: int = 0) -> int:
    """Rank over Q (``char=0``) or over F_p."""
    if char and not is_prime(char):
        raise ValueError("characteristic %d is not prime" % char)
    rows = []
    for row in m.rows.values():
        if char:
            row = {c: v % char for c, v in row.items() if v % char}
        else:
            row = dict(row)
        if row:
            rows.append(row)
    # pivot on the lowest column index present; rows kept in a dict by pivot
    pivots: dict[int, dict[int, int]] = {}
    rank = 0
    for row in rows:
        while row:
            c = min(row)
            prow = pivots.get(c)
            if prow is None:
                if char:
                    inv = pow(row[c], -1, char)
                    row = {k: v * inv % char for k, v in row.items()}
                else:
                    g = 0
                    for v in row.values():
                        g = gcd(g, v)
                    row = {k: v // g for k, v in row.items()}
                pivots[c] = row
                rank += 1
                break
            if char:
                k = row[c]
                new = dict(row)
                for cc, v in prow.items():
                    nv = (new.get(cc, 0) - k * v) % char
                    if nv:
                        new[cc] = nv
                    else:
                        new.pop(cc, None)
                row = new
            else:
                a, b = prow[c], row[c]
                g = gcd(a, b)
                fa, fb = b // g, a // g
                new = {cc: fb * v for cc, v in row.items()}
                for cc, v in prow.items():
                    nv = new.get(cc, 0) - fa * v
                    if nv:
                        new[cc] = nv
                    else:
                        new.pop(cc, None)
                if new:
                    g = 0
                    for v in new.values():
                        g = gcd(g, v)
                    new = {k: v // g for k, v in new.items()}
                row = new
    return rank


@dataclass(frozen=True)
class AbelianGroup:
    """``Z^free_rank`` plus cyclic summands of prime-power order."""

    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        t = tuple(sorted(self.torsion))
        for q in t:
            if q < 2 or len(_factor(q)) != 1:
                raise ValueError("torsion orders must be prime powers, got %d" % q)
        object.__setattr__(self, "torsion", t)

    @classmethod
    def from_orders(cls, free_rank: int, orders) -> "AbelianGroup":
        return cls(free_rank, tuple(prime_power_decomposition(orders)))

    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def p_torsion_count(self, p: int) -> int:
        return sum(1 for q in self.torsion if q % p == 0)

    def dim_mod(self, p: int) -> int:
        """Dimension of the group tensored with F_p."""
        return self.free_rank + self.p_torsion_count(p)

    def cells(self) -> list[str]:
        """Table notation: ``A`` for ``Z^A`` and ``A_b`` for ``A`` copies of ``Z_b``."""
        out = []
        if self.free_rank:
            out.append(str(self.free_rank))
        for q, k in sorted(Counter(self.torsion).items()):
            out.append("%d_%d" % (k, q))
        return out

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else "Z^%d" % self.free_rank)
        for q, k in sorted(Counter(self.torsion).items()):
            parts.append("Z_%d" % q if k == 1 else "Z_%d^%d" % (q, k))
        return " + ".join(parts)


def homology_of_pair(d_in: SparseIntMatrix, d_out: SparseIntMatrix) -> AbelianGroup:
    """``ker(d_out) / im(d_in)``.

    ``im(d_in)`` lies in the saturated subgroup ``ker(d_out)``, so the
    torsion is exactly the torsion of ``coker(d_in)``.
    """
    if d_in.nrows != d_out.ncols:
        raise ValueError("d_in has %d rows but d_out has %d columns" % (d_in.nrows, d_out.ncols))
    if not (d_out @ d_in).is_zero():
        raise ValueError("d_out @ d_in is not zero")
    f_in = smith_normal_form(d_in)
    r_out = len(smith_normal_form(d_out))
    return AbelianGroup.from_orders(d_in.nrows - r_out - len(f_in), [q for q in f_in if q > 1])


def is_direct_summand(a: AbelianGroup, b: AbelianGroup) -> bool:
    """Whether ``b ≅ a ⊕ c`` for some ``c``."""
    if a.free_rank > b.free_rank:
        return False
    ca, cb = Counter(a.torsion), Counter(b.torsion)
    return all(cb[q] >= k for q, k in ca.items())
