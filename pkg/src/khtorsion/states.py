"""Kauffman states, enhanced states and the incidence rule between them.

A Kauffman state is stored as a bit mask over the crossings in diagram
order: bit ``i`` set means crossing ``i`` carries a B marker.  Its circles
are numbered by their smallest arc position (arcs are numbered in sorted
label order), followed by the split unknots of the diagram.

An enhancement is a bit mask over circles; a set bit means the circle is
labelled ``+1``.  With ``σ = #A - #B`` and ``τ`` the sum of the labels, an
enhanced state has gradings ``a = σ`` and ``b = σ + 2τ``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .diagram import LinkDiagram

__all__ = [
    "DEFAULT_CAP",
    "CapExceeded",
    "KauffmanState",
    "EnhancedState",
    "StateSpace",
    "smooth",
    "gradings",
    "enumerate_enhanced",
    "adjacency_sign",
]

DEFAULT_CAP = 16


class CapExceeded(RuntimeError):
    pass


def check_cap(d: LinkDiagram, cap: int | None):
    cap = DEFAULT_CAP if cap is None else cap
    if d.n > cap:
        raise CapExceeded("diagram has %d crossings; the cap is %d" % (d.n, cap))


class StateSpace:
    """Circle data for every Kauffman state of one diagram, computed lazily.

    ``circles(s)`` returns ``(count, circle_of)`` where ``circle_of[k]`` is
    the circle through the ``k``-th arc.
    """

    def __init__(self, d: LinkDiagram):
        self.d = d
        self.n = d.n
        labels = sorted(d.arcs)
        self.arc_index = {lab: k for k, lab in enumerate(labels)}
        self.num_arcs = len(labels)
        self.xs = [tuple(self.arc_index[x] for x in c.pd) for c in d.crossings]
        self._cache: dict[int, tuple[int, tuple[int, ...]]] = {}

    def circles(self, s: int) -> tuple[int, tuple[int, ...]]:
        hit = self._cache.get(s)
        if hit is not None:
            return hit
        parent = list(range(self.num_arcs))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x, y):
            rx, ry = find(x), find(y)
            if rx != ry:
                if rx < ry:
                    parent[ry] = rx
                else:
                    parent[rx] = ry

        for i, (a, b, c, dd) in enumerate(self.xs):
            if s >> i & 1:
                union(a, dd)
                union(b, c)
            else:
                union(a, b)
                union(c, dd)
        ids: dict[int, int] = {}
        circ = []
        for k in range(self.num_arcs):
            r = find(k)
            if r not in ids:
                ids[r] = len(ids)
            circ.append(ids[r])
        out = (len(ids) + self.d.unknots, tuple(circ))
        self._cache[s] = out
        return out

    def sigma(self, s: int) -> int:
        return self.n - 2 * bin(s).count("1")

    def touched(self, s: int, y: int) -> tuple[int, ...]:
        """Circles of state ``s`` passing through crossing ``y``, sorted."""
        _, circ = self.circles(s)
        return tuple(sorted({circ[k] for k in self.xs[y]}))


@lru_cache(maxsize=64)
def _space(d: LinkDiagram) -> StateSpace:
    return StateSpace(d)


@dataclass(frozen=True)
class KauffmanState:
    diagram: LinkDiagram = field(repr=False, compare=False)
    markers: int
    circle_count: int
    circle_of: tuple[int, ...] = field(repr=False)

    @property
    def n(self) -> int:
        return self.diagram.n

    @property
    def sigma(self) -> int:
        return self.n - 2 * bin(self.markers).count("1")

    def marker(self, i: int) -> str:
        return "B" if self.markers >> i & 1 else "A"

    def circle_arcs(self) -> list[frozenset]:
        """Arc labels of each circle; split unknots give empty sets."""
        labels = sorted(self.diagram.arcs)
        out = [set() for _ in range(self.circle_count)]
        for k, c in enumerate(self.circle_of):
            out[c].add(labels[k])
        return [frozenset(x) for x in out]


@dataclass(frozen=True)
class EnhancedState:
    state: KauffmanState
    signs: tuple[int, ...]

    @property
    def tau(self) -> int:
        return sum(self.signs)

    @property
    def a(self) -> int:
        return self.state.sigma

    @property
    def b(self) -> int:
        return self.state.sigma + 2 * self.tau

    @property
    def mask(self) -> int:
        return sum(1 << k for k, v in enumerate(self.signs) if v > 0)


def _markers_int(markers) -> int:
    if isinstance(markers, int):
        return markers
    s = 0
    for i, m in enumerate(markers):
        if m in ("B", 1, True):
            s |= 1 << i
        elif m not in ("A", 0, False):
            raise ValueError("marker must be A or B, got %r" % (m,))
    return s


def smooth(d: LinkDiagram, markers) -> KauffmanState:
    """Smooth every crossing according to ``markers``.

    ``markers`` is a bit mask (bit ``i`` set means B at crossing ``i``) or a
    sequence of ``"A"``/``"B"``.
    """
    s = _markers_int(markers)
    if not isinstance(markers, int) and len(markers) != d.n:
        raise ValueError("need one marker per crossing")
    count, circ = _space(d).circles(s)
    return KauffmanState(d, s, count, circ)


def gradings(e: EnhancedState) -> tuple[int, int]:
    return e.a, e.b


def enumerate_enhanced(d: LinkDiagram, cap: int | None = None):
    """Yield ``(b, [EnhancedState, ...])`` for each quantum grading, ``b`` ascending.

    Within a grading, states are ordered by marker mask and then by the
    enhancement mask, which is also the basis order of the chain complex.
    """
    check_cap(d, cap)
    sp = _space(d)
    groups: dict[int, list[EnhancedState]] = {}
    for s in range(1 << d.n):
        count, circ = sp.circles(s)
        ks = KauffmanState(d, s, count, circ)
        sig = ks.sigma
        for mask in range(1 << count):
            signs = tuple(1 if mask >> k & 1 else -1 for k in range(count))
            b = sig + 2 * sum(signs)
            groups.setdefault(b, []).append(EnhancedState(ks, signs))
    for b in sorted(groups):
        yield b, groups[b]


def adjacency_sign(e: EnhancedState, e2: EnhancedState) -> int:
    """Incidence number ``(e : e2)`` of the Khovanov differential.

    Nonzero exactly when ``e2`` is adjacent to ``e``: the markers differ at a
    single crossing ``y`` that is A in ``e`` and B in ``e2``, ``b`` agrees,
    and every circle away from ``y`` keeps its label.  The value is
    ``(-1)**α`` with ``α`` the number of B markers of ``e`` after ``y``.
    """
    s, s2 = e.state, e2.state
    if s.diagram != s2.diagram:
        raise ValueError("states belong to different diagrams")
    diff = s.markers ^ s2.markers
    if diff == 0 or diff & (diff - 1) or s.markers & diff:
        return 0
    if e.b != e2.b:
        return 0
    y = diff.bit_length() - 1
    d = s.diagram
    ys = set(d.crossings[y].pd)
    arcs1, arcs2 = s.circle_arcs(), s2.circle_arcs()
    # split unknots are the last circles in both states, in the same order
    u = d.unknots
    label2 = {}
    for k, arcs in enumerate(arcs2):
        if arcs:
            label2[arcs] = e2.signs[k]
    for k, arcs in enumerate(arcs1):
        if not arcs or arcs & ys:
            continue
        if label2.get(arcs) != e.signs[k]:
            return 0
    for j in range(u):
        if e.signs[s.circle_count - u + j] != e2.signs[s2.circle_count - u + j]:
            return 0
    alpha = bin(s.markers >> (y + 1)).count("1")
    return -1 if alpha & 1 else 1
