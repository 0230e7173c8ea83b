"""Per-quantum-grading chain complexes of enhanced states."""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .diagram import LinkDiagram
from .states import EnhancedState, KauffmanState, StateSpace, check_cap

__all__ = ["SparseIntMatrix", "GradedComplex", "build_complex", "build_all", "quantum_gradings"]


class SparseIntMatrix:
    """Sparse matrix of Python integers, stored as ``{row: {col: value}}``.

    Zero entries are never stored.
    """

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int, rows: dict | None = None):
        self.nrows = nrows
        self.ncols = ncols
        self.rows: dict[int, dict[int, int]] = rows if rows is not None else {}

    @classmethod
    def from_entries(cls, nrows, ncols, entries) -> "SparseIntMatrix":
        """From ``{(r, c): v}`` or an iterable of ``(r, c, v)``; repeated positions add up."""
        m = cls(nrows, ncols)
        items = entries.items() if isinstance(entries, dict) else (((r, c), v) for r, c, v in entries)
        for (r, c), v in items:
            m[r, c] = m[r, c] + v
        return m

    @classmethod
    def from_dense(cls, a) -> "SparseIntMatrix":
        a = [list(map(int, row)) for row in a]
        nrows = len(a)
        ncols = len(a[0]) if a else 0
        rows = {}
        for r, row in enumerate(a):
            d = {c: v for c, v in enumerate(row) if v}
            if d:
                rows[r] = d
        return cls(nrows, ncols, rows)

    @classmethod
    def zeros(cls, nrows, ncols) -> "SparseIntMatrix":
        return cls(nrows, ncols)

    @classmethod
    def identity(cls, n) -> "SparseIntMatrix":
        return cls(n, n, {i: {i: 1} for i in range(n)})

    def __setitem__(self, key, v):
        r, c = key
        if not (0 <= r < self.nrows and 0 <= c < self.ncols):
            raise IndexError("entry (%d, %d) out of range" % (r, c))
        v = int(v)
        if v:
            self.rows.setdefault(r, {})[c] = v
        else:
            row = self.rows.get(r)
            if row and c in row:
                del row[c]
                if not row:
                    del self.rows[r]

    def __getitem__(self, key) -> int:
        r, c = key
        return self.rows.get(r, {}).get(c, 0)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def nnz(self) -> int:
        return sum(len(r) for r in self.rows.values())

    def entries(self):
        for r in sorted(self.rows):
            row = self.rows[r]
            for c in sorted(row):
                yield (r, c), row[c]

    def copy(self) -> "SparseIntMatrix":
        return SparseIntMatrix(self.nrows, self.ncols, {r: dict(row) for r, row in self.rows.items()})

    def transpose(self) -> "SparseIntMatrix":
        t: dict[int, dict[int, int]] = {}
        for r, row in self.rows.items():
            for c, v in row.items():
                t.setdefault(c, {})[r] = v
        return SparseIntMatrix(self.ncols, self.nrows, t)

    T = property(transpose)

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for r, row in self.rows.items():
            for c, v in row.items():
                out[r][c] = v
        return out

    def __matmul__(self, other: "SparseIntMatrix") -> "SparseIntMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch %s @ %s" % (self.shape, other.shape))
        out: dict[int, dict[int, int]] = {}
        for r, row in self.rows.items():
            acc: dict[int, int] = {}
            for k, v in row.items():
                orow = other.rows.get(k)
                if orow:
                    for c, w in orow.items():
                        acc[c] = acc.get(c, 0) + v * w
            acc = {c: v for c, v in acc.items() if v}
            if acc:
                out[r] = acc
        return SparseIntMatrix(self.nrows, other.ncols, out)

    def is_zero(self) -> bool:
        return not self.rows

    def __eq__(self, other):
        return (
            isinstance(other, SparseIntMatrix)
            and self.shape == other.shape
            and self.rows == other.rows
        )

    def __repr__(self):
        return "SparseIntMatrix(%d x %d, nnz=%d)" % (self.nrows, self.ncols, self.nnz)

    def dump(self) -> str:
        """Sparse triplet text: a ``rows cols nnz`` header, then ``row col value`` lines (0-based)."""
        buf = io.StringIO()
        buf.write("%d %d %d\n" % (self.nrows, self.ncols, self.nnz))
        for (r, c), v in self.entries():
            buf.write("%d %d %d\n" % (r, c, v))
        return buf.getvalue()

    @classmethod
    def load(cls, text: str) -> "SparseIntMatrix":
        lines = [ln.split() for ln in text.strip().splitlines()]
        nrows, ncols, nnz = map(int, lines[0])
        m = cls(nrows, ncols)
        for r, c, v in lines[1:1 + nnz]:
            m[int(r), int(c)] = int(v)
        return m


@dataclass
class GradedComplex:
    """The complex ``C_{•,b}``: bases and differentials keyed by ``a``.

    ``differentials[a]`` is ``∂_{a,b}: C_{a,b} -> C_{a-2,b}``; column ``k``
    is the image of ``basis[a][k]``.  Bases are ``(marker mask, enhancement
    mask)`` pairs sorted lexicographically.
    """

    b: int
    basis: dict[int, list[tuple[int, int]]]
    differentials: dict[int, SparseIntMatrix]
    diagram: LinkDiagram | None = field(default=None, repr=False)

    @property
    def degrees(self) -> list[int]:
        return sorted(self.basis)

    def rank(self, a: int) -> int:
        return len(self.basis.get(a, ()))

    def d(self, a: int) -> SparseIntMatrix:
        """``∂_{a,b}``; a zero matrix of the right shape if ``a`` is absent."""
        m = self.differentials.get(a)
        if m is not None:
            return m
        return SparseIntMatrix(self.rank(a - 2), self.rank(a))

    def enhanced(self, a: int, k: int) -> EnhancedState:
        s, mask = self.basis[a][k]
        st = self.diagram and _state(self.diagram, s)
        return EnhancedState(st, tuple(1 if mask >> j & 1 else -1 for j in range(st.circle_count)))


def _state(d: LinkDiagram, s: int) -> KauffmanState:
    count, circ = _tables(d).space.circles(s)
    return KauffmanState(d, s, count, circ)


@lru_cache(maxsize=None)
def _combos(c: int):
    """For ``c`` circles: masks grouped by popcount (ascending) and each mask's rank in its group."""
    masks = np.arange(1 << c, dtype=np.int64)
    pc = np.bitwise_count(masks).astype(np.int64)
    order = np.lexsort((masks, pc))
    groups = [masks[order][pc[order] == p] for p in range(c + 1)]
    rank = np.empty(1 << c, dtype=np.int64)
    for g in groups:
        rank[g] = np.arange(len(g))
    return groups, rank


class _Tables:
    """Per-diagram state data shared by all quantum gradings."""

    def __init__(self, d: LinkDiagram):
        self.d = d
        self.space = StateSpace(d)
        n = d.n
        self.count = np.empty(1 << n, dtype=np.int64)
        self.sigma = np.empty(1 << n, dtype=np.int64)
        self.circ = []
        for s in range(1 << n):
            c, circ = self.space.circles(s)
            self.count[s] = c
            self.sigma[s] = self.space.sigma(s)
            self.circ.append(circ)

    def gradings(self):
        """All (a, b) with generators, as a dict a -> sorted list of b."""
        out: dict[int, set[int]] = {}
        for s in range(1 << self.d.n):
            c, sig = int(self.count[s]), int(self.sigma[s])
            out.setdefault(sig, set()).update(sig + 2 * (2 * p - c) for p in range(c + 1))
        return out


@lru_cache(maxsize=8)
def _tables(d: LinkDiagram) -> _Tables:
    return _Tables(d)


def quantum_gradings(d: LinkDiagram) -> list[int]:
    gr = _tables(d).gradings()
    return sorted(set().union(*gr.values()))


def _transition(t: _Tables, s: int, y: int):
    """Differential pieces for the edge ``s -> s | 1 << y``.

    Returns ``(s2, src_masks, dst_masks)`` over all enhancements of ``s``.
    """
    sp = t.space
    s2 = s | (1 << y)
    c1, circ1 = int(t.count[s]), t.circ[s]
    c2, circ2 = int(t.count[s2]), t.circ[s2]
    u = t.d.unknots
    touched1 = sorted({circ1[k] for k in sp.xs[y]})
    touched2 = sorted({circ2[k] for k in sp.xs[y]})
    # image of every untouched circle
    img = {}
    for k, cc in enumerate(circ1):
        if cc not in touched1 and cc not in img:
            img[cc] = circ2[k]
    for j in range(u):
        img[c1 - u + j] = c2 - u + j
    masks = np.arange(1 << c1, dtype=np.int64)
    base = np.zeros_like(masks)
    for k, k2 in img.items():
        base |= ((masks >> k) & 1) << k2
    if len(touched1) == 2:
        # merge: (-,-) -> -, (+,-) and (-,+) -> +, (+,+) -> 0
        p, q = touched1
        (w,) = touched2
        bp, bq = (masks >> p) & 1, (masks >> q) & 1
        keep = (bp & bq) == 0
        dst = base | ((bp | bq) << w)
        return s2, masks[keep], dst[keep]
    # split: - -> (+,-) + (-,+),  + -> (+,+)
    (p,) = touched1
    w1, w2 = touched2
    bp = (masks >> p) & 1
    plus = bp == 1
    src = np.concatenate([masks[plus], masks[~plus], masks[~plus]])
    dst = np.concatenate([
        base[plus] | (1 << w1) | (1 << w2),
        base[~plus] | (1 << w1),
        base[~plus] | (1 << w2),
    ])
    return s2, src, dst


def build_all(d: LinkDiagram, cap: int | None = None, only_b=None) -> dict[int, GradedComplex]:
    """Build ``C_{•,b}`` for every quantum grading ``b`` (or those in ``only_b``)."""
    check_cap(d, cap)
    t = _tables(d)
    n = d.n
    N = 1 << n
    count, sigma = t.count, t.sigma

    # offsets: generators of state s with p plus-circles sit at
    # offset[(a, b)][s] + rank of the mask within its popcount group
    offsets: dict[tuple[int, int], dict[int, int]] = {}
    basis: dict[int, dict[int, list]] = {}
    for s in range(N):
        c, sig = int(count[s]), int(sigma[s])
        groups, _ = _combos(c)
        for p in range(c + 1):
            b = sig + 2 * (2 * p - c)
            if only_b is not None and b not in only_b:
                continue
            lst = basis.setdefault(b, {}).setdefault(sig, [])
            offsets.setdefault((sig, b), {})[s] = len(lst)
            lst.extend((s, int(m)) for m in groups[p])

    pieces: dict[tuple[int, int], list] = {}
    for s in range(N):
        c = int(count[s])
        _, rank1 = _combos(c)
        sig = int(sigma[s])
        for y in range(n):
            if s >> y & 1:
                continue
            s2, src, dst = _transition(t, s, y)
            if len(src) == 0:
                continue
            sign = -1 if bin(s >> (y + 1)).count("1") & 1 else 1
            c2 = int(count[s2])
            _, rank2 = _combos(c2)
            pc = np.bitwise_count(src).astype(np.int64)
            bs = sig + 2 * (2 * pc - c)
            for b in np.unique(bs):
                b = int(b)
                if only_b is not None and b not in only_b:
                    continue
                sel = bs == b
                col = offsets[(sig, b)][s] + rank1[src[sel]]
                row = offsets[(sig - 2, b)][s2] + rank2[dst[sel]]
                pieces.setdefault((sig, b), []).append((row, col, sign))

    out = {}
    for b in sorted(basis):
        bas = {a: basis[b][a] for a in sorted(basis[b])}
        diffs = {}
        for a in bas:
            if (a, b) not in pieces:
                continue
            m = SparseIntMatrix(len(bas.get(a - 2, ())), len(bas[a]))
            rows = m.rows
            for row, col, sign in pieces[(a, b)]:
                for r, cidx in zip(row.tolist(), col.tolist()):
                    rr = rows.get(r)
                    if rr is None:
                        rows[r] = {cidx: sign}
                    else:
                        rr[cidx] = sign
            diffs[a] = m
        out[b] = GradedComplex(b, bas, diffs, d)
    return out


def build_complex(d: LinkDiagram, b: int, cap: int | None = None) -> GradedComplex:
    """The chain complex in quantum grading ``b`` (empty if ``b`` carries no generators)."""
    got = build_all(d, cap, only_b={b})
    return got.get(b, GradedComplex(b, {}, {}, d))
