"""Oriented link diagrams in PD notation and the constructions built on them.

PD convention
-------------
A crossing ``X[a, b, c, d]`` lists its four arc labels counterclockwise,
starting with the incoming under-strand.  The under-strand therefore runs
``a -> c``; the over-strand joins ``b`` and ``d``.  The crossing is positive
when the over-strand runs ``d -> b`` and negative when it runs ``b -> d``.
This is the Knot Atlas convention, so its PD codes can be used verbatim.

Smoothing convention
--------------------
At ``X[a, b, c, d]`` the A-smoothing joins ``a`` with ``b`` and ``c`` with
``d``; the B-smoothing joins ``a`` with ``d`` and ``b`` with ``c``.  The
A-channels are the two regions swept by the over-strand when it is turned
counterclockwise, which is Kauffman's usual choice.  With it the all-A
state of a positive diagram sits in homological degree 0 and the
right-handed trefoil has Khovanov homology in degrees 0, 2 and 3.

Every diagram stores its crossings in the oriented form above.  The
constructions (connected sum, tangle replacement, satellites) assemble
unoriented crossings first, with the under-strand in slots 0 and 2, and
orient the result afterwards, rotating a tuple by two places whenever its
under-strand has to run backwards.
"""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass, field
from functools import cached_property
from importlib import resources
from typing import Sequence

from ._morse import MorseBuilder, resolve

__all__ = [
    "DiagramError",
    "Crossing",
    "LinkDiagram",
    "Tangle",
    "AnnularPattern",
    "parse_pd",
    "parse_json",
    "load",
    "writhe",
    "mirror",
    "relabel",
    "permute_crossings",
    "add_kink",
    "braid_closure",
    "faces",
    "connected_sum",
    "tangle_replace",
    "trivial_tangle",
    "kt_tangle",
    "livingston_pattern",
    "satellite",
]


class DiagramError(ValueError):
    """Raised for malformed or inconsistent diagram input."""


@dataclass(frozen=True)
class Crossing:
    pd: tuple[int, int, int, int]
    sign: int

    def __str__(self):
        return "X[%d,%d,%d,%d]" % self.pd


# ---------------------------------------------------------------------------
# orientation


def _occurrences(tuples):
    where: dict[int, list[tuple[int, int]]] = {}
    for ci, t in enumerate(tuples):
        for p, lab in enumerate(t):
            where.setdefault(lab, []).append((ci, p))
    return where


def _orient(tuples, strict: bool):
    """Orient raw crossings.

    Returns ``(oriented_tuples, signs, components)``; each component is the
    tuple of its arc labels in the direction of travel.  In strict mode every
    under-passage must already run from slot 0 to slot 2.  Otherwise the
    first under-passage of a component (in crossing order) decides and the
    other tuples are rotated to agree.
    """
    tuples = [tuple(int(x) for x in t) for t in tuples]
    for t in tuples:
        if len(t) != 4:
            raise DiagramError("crossing %r does not have 4 arcs" % (t,))
    where = _occurrences(tuples)
    for lab, occ in sorted(where.items()):
        if len(occ) != 2:
            raise DiagramError("arc %d occurs %d times (expected 2)" % (lab, len(occ)))

    def other_end(ci, p):
        e0, e1 = where[tuples[ci][p]]
        return e1 if e0 == (ci, p) else e0

    seen = set()
    loops = []  # passages (crossing, enter slot, exit slot)
    for ci in range(len(tuples)):
        for p0 in range(4):
            if (ci, p0) in seen:
                continue
            passages = []
            c, p = ci, p0
            while (c, p) not in seen:
                q = (p + 2) % 4
                seen.add((c, p))
                seen.add((c, q))
                passages.append((c, p, q))
                c, p = other_end(c, q)
            loops.append(passages)

    flip = [False] * len(tuples)
    entered = set()
    components = []
    for passages in loops:
        unders = sorted((c, p) for c, p, _ in passages if p in (0, 2))
        if unders:
            if strict:
                votes = {p == 0 for _, p in unders}
                if len(votes) > 1:
                    raise DiagramError(
                        "no coherent orientation for the strand through crossing %d" % (unders[0][0] + 1)
                    )
                forward = votes.pop()
            else:
                forward = unders[0][1] == 0
        else:
            # only over-passages: run along increasing labels where possible
            c, p, q = passages[0]
            forward = tuples[c][p] != tuples[c][q] + 1
        if not forward:
            passages = [(c, q, p) for c, p, q in reversed(passages)]
        for c, p, _ in passages:
            if p in (0, 2):
                flip[c] = p == 2
            entered.add((c, p))
        components.append(tuple(tuples[c][q] for c, _, q in passages))

    out, signs = [], []
    for ci, t in enumerate(tuples):
        if flip[ci]:
            out.append((t[2], t[3], t[0], t[1]))
            over_in_at_3 = (ci, 1) in entered
        else:
            out.append(t)
            over_in_at_3 = (ci, 3) in entered
        signs.append(1 if over_in_at_3 else -1)
    return out, signs, components


# ---------------------------------------------------------------------------
# data types


@dataclass(frozen=True)
class LinkDiagram:
    """An oriented link diagram.

    ``crossings`` keeps the input order, which fixes the crossing order used
    by the Khovanov sign rule.  Split unknotted circles without crossings
    are counted in ``unknots`` since PD notation cannot express them.
    """

    crossings: tuple[Crossing, ...]
    unknots: int = 0
    components: tuple[tuple[int, ...], ...] = ()
    name: str = field(default="", compare=False)

    @classmethod
    def from_pd(cls, tuples, unknots: int = 0, name: str = "", strict: bool = True) -> "LinkDiagram":
        if unknots < 0:
            raise DiagramError("negative unknot count")
        out, signs, comps = _orient(tuples, strict)
        if not out and unknots == 0:
            raise DiagramError("empty diagram (use U[1] for the unknot)")
        xs = tuple(Crossing(t, s) for t, s in zip(out, signs))
        return cls(xs, unknots, tuple(comps), name)

    @property
    def n(self) -> int:
        return len(self.crossings)

    @property
    def pd(self) -> list[tuple[int, int, int, int]]:
        return [c.pd for c in self.crossings]

    @property
    def signs(self) -> list[int]:
        return [c.sign for c in self.crossings]

    @cached_property
    def arcs(self) -> frozenset:
        return frozenset(x for c in self.crossings for x in c.pd)

    @property
    def num_components(self) -> int:
        return len(self.components) + self.unknots

    @property
    def is_knot(self) -> bool:
        return self.num_components == 1

    @cached_property
    def writhe(self) -> int:
        return sum(self.signs)

    @cached_property
    def _ends(self):
        """Map arc -> ((tail crossing, slot), (head crossing, slot))."""
        tail, head = {}, {}
        for ci, c in enumerate(self.crossings):
            a, b, cc, d = c.pd
            head[a] = (ci, 0)
            tail[cc] = (ci, 2)
            if c.sign > 0:
                head[d], tail[b] = (ci, 3), (ci, 1)
            else:
                head[b], tail[d] = (ci, 1), (ci, 3)
        return {lab: (tail[lab], head[lab]) for lab in tail}

    def tail(self, arc: int) -> tuple[int, int]:
        return self._ends[arc][0]

    def head(self, arc: int) -> tuple[int, int]:
        return self._ends[arc][1]

    def component_of(self, arc: int) -> int:
        for k, comp in enumerate(self.components):
            if arc in comp:
                return k
        raise DiagramError("arc %d not in diagram" % arc)

    def to_pd(self) -> str:
        return serialize(self)

    def __str__(self):
        return serialize(self)


@dataclass(frozen=True)
class Tangle:
    """A 2-string tangle in a disk.

    ``crossings`` use the unoriented internal format (counterclockwise, with
    the under-strand in slots 0 and 2).  ``endpoints`` lists the labels at
    the NW, NE, SE and SW corners.  Each label occurs exactly twice counting
    both crossings and endpoints, so a strand running straight from one
    corner to another shows up as a repeated endpoint label.
    """

    crossings: tuple[tuple[int, int, int, int], ...]
    endpoints: tuple[int, int, int, int]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        _check_boundary_labels(self.crossings, self.endpoints, 4)

    @property
    def n(self) -> int:
        return len(self.crossings)

    def numerator(self) -> LinkDiagram:
        """Close NW to NE and SW to SE."""
        nw, ne, se, sw = self.endpoints
        return _closure(self.crossings, [(nw, ne), (sw, se)], self.name + " N")

    def denominator(self) -> LinkDiagram:
        """Close NW to SW and NE to SE."""
        nw, ne, se, sw = self.endpoints
        return _closure(self.crossings, [(nw, sw), (ne, se)], self.name + " D")


@dataclass(frozen=True)
class AnnularPattern:
    """A pattern in the solid torus, cut open along a meridian disk.

    ``bottom`` and ``top`` list the strand labels left to right; the
    closure glues ``top[k]`` to ``bottom[k]``.  Crossings use the unoriented
    internal format.
    """

    crossings: tuple[tuple[int, int, int, int], ...]
    bottom: tuple[int, ...]
    top: tuple[int, ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if len(self.bottom) != len(self.top):
            raise DiagramError("pattern needs as many strands at the top as at the bottom")
        _check_boundary_labels(self.crossings, self.bottom + self.top, len(self.bottom) * 2)

    @property
    def width(self) -> int:
        return len(self.bottom)

    @property
    def n(self) -> int:
        return len(self.crossings)

    def closure(self) -> LinkDiagram:
        """The pattern viewed in S^3 (standardly embedded solid torus)."""
        return _closure(self.crossings, list(zip(self.top, self.bottom)), self.name + " closure")

    def with_axis(self) -> LinkDiagram:
        """The closure together with a meridian circle of the solid torus."""
        m = self.width
        b = MorseBuilder(m)
        b.cup(0)
        # the ring's right end passes over every strand, then back under
        for p in range(1, m + 1):
            b.cross(p, positive=True)
        for p in range(m, 0, -1):
            b.cross(p, positive=True)
        b.cap(0)
        return _stack_and_close(self, b)


def _check_boundary_labels(crossings, boundary, nb):
    counts: dict[int, int] = {}
    for c in crossings:
        if len(c) != 4:
            raise DiagramError("crossing %r does not have 4 arcs" % (c,))
        for x in c:
            counts[x] = counts.get(x, 0) + 1
    for x in boundary:
        counts[x] = counts.get(x, 0) + 1
    bad = {x: k for x, k in counts.items() if k != 2}
    if bad:
        raise DiagramError("labels with occurrence count != 2: %r" % bad)
    if len(boundary) != nb:
        raise DiagramError("expected %d boundary points" % nb)


def _closure(crossings, glue, name=""):
    out, loops, _ = resolve(crossings, glue)
    return LinkDiagram.from_pd(out, loops, name=name, strict=False)


def _stack_and_close(pattern: AnnularPattern, builder: MorseBuilder):
    """Stack ``builder`` (same width) on top of ``pattern`` and close up."""
    off = max([x for c in pattern.crossings for x in c] + list(pattern.bottom) + list(pattern.top)) + 1
    xs = list(pattern.crossings) + [tuple(x + off for x in c) for c in builder.crossings]
    glue = [(a + off, b + off) for a, b in builder.glue]
    glue += [(t, b + off) for t, b in zip(pattern.top, builder.bottom)]
    glue += [(t + off, b) for t, b in zip(builder.top, pattern.bottom)]
    return _closure(xs, glue, pattern.name)


# ---------------------------------------------------------------------------
# text formats

_X = re.compile(r"X\[(-?\d+),(-?\d+),(-?\d+),(-?\d+)\]")
_U = re.compile(r"U\[(\d+)\]")
_ITEM = re.compile(r"X\[-?\d+,-?\d+,-?\d+,-?\d+\]|U\[\d+\]")


def parse_pd(text: str, name: str = "") -> LinkDiagram:
    """Parse ``PD[X[a,b,c,d],...]`` text, or the JSON form.

    Lines starting with ``#`` are comments.  Whitespace is ignored.  A
    ``U[k]`` item, either inside the ``PD[...]`` list or after it, adds ``k``
    split unknotted circles.  Text starting with ``{`` is read as JSON.
    """
    body = "\n".join(ln for ln in text.splitlines() if not ln.lstrip().startswith("#"))
    if body.strip().startswith("{"):
        return parse_json(body, name=name)
    s = re.sub(r"\s+", "", body)
    m = re.fullmatch(r"PD\[(.*?)\](U\[\d+\])?", s)
    if not m:
        raise DiagramError("malformed PD text: expected PD[X[a,b,c,d],...]")
    inner, tail = m.group(1), m.group(2) or ""
    items = inner.split("],") if inner else []
    items = [it if it.endswith("]") else it + "]" for it in items]
    tuples, unknots = [], 0
    for it in items + ([tail] if tail else []):
        if not _ITEM.fullmatch(it):
            raise DiagramError("malformed PD item %r" % it)
        if it.startswith("U"):
            unknots += int(_U.fullmatch(it).group(1))
        else:
            tuples.append(tuple(int(g) for g in _X.fullmatch(it).groups()))
    return LinkDiagram.from_pd(tuples, unknots, name=name)


def parse_json(text: str, name: str = "") -> LinkDiagram:
    try:
        obj = json.loads(text)
        tuples = [tuple(int(x) for x in c) for c in obj["crossings"]]
        unknots = int(obj.get("unknots", 0))
    except (ValueError, KeyError, TypeError) as exc:
        raise DiagramError("malformed JSON diagram: %s" % exc) from None
    return LinkDiagram.from_pd(tuples, unknots, name=obj.get("name", name))


def serialize(d: LinkDiagram) -> str:
    s = "PD[" + ",".join(str(c) for c in d.crossings) + "]"
    if d.unknots:
        s += " U[%d]" % d.unknots
    return s


def to_json(d: LinkDiagram) -> str:
    return json.dumps({"crossings": [list(c.pd) for c in d.crossings], "unknots": d.unknots})


def _data(fname: str) -> str:
    return resources.files("khtorsion").joinpath("data", fname).read_text()


def load(name: str) -> LinkDiagram:
    """Load a bundled diagram, e.g. ``load("3_1")`` or ``load("unknot")``."""
    try:
        text = _data(name + ".pd")
    except FileNotFoundError:
        raise DiagramError("no bundled diagram named %r" % name) from None
    return parse_pd(text, name=name)


# ---------------------------------------------------------------------------
# elementary operations


def writhe(d: LinkDiagram) -> int:
    return d.writhe


def mirror(d: LinkDiagram) -> LinkDiagram:
    """Swap over and under at every crossing; the projection is unchanged."""
    out = []
    for c in d.crossings:
        a, b, cc, dd = c.pd
        # the old over-strand becomes the under-strand; start at its entry
        out.append((dd, a, b, cc) if c.sign > 0 else (b, cc, dd, a))
    return LinkDiagram.from_pd(out, d.unknots, name=("mirror " + d.name).strip())


def relabel(d: LinkDiagram) -> LinkDiagram:
    """Renumber arcs 1, 2, ... along each component in turn."""
    new, k = {}, 1
    for comp in d.components:
        for lab in comp:
            new[lab] = k
            k += 1
    out = [tuple(new[x] for x in c.pd) for c in d.crossings]
    return LinkDiagram.from_pd(out, d.unknots, name=d.name)


def permute_crossings(d: LinkDiagram, order: Sequence[int]) -> LinkDiagram:
    if sorted(order) != list(range(d.n)):
        raise DiagramError("not a permutation of the crossings")
    return LinkDiagram.from_pd([d.crossings[i].pd for i in order], d.unknots, name=d.name)


def _fresh(d: LinkDiagram):
    return itertools.count(max(d.arcs, default=0) + 1)


def add_kink(d: LinkDiagram, arc: int | None = None, sign: int = 1, under_first: bool = True) -> LinkDiagram:
    """Insert a Reidemeister I curl on ``arc`` (appended as the last crossing).

    On a crossingless diagram one split circle becomes a 1-crossing curl.
    """
    fresh = _fresh(d)
    loop = next(fresh)
    if d.n == 0 or arc is None and d.n == 0:
        if d.unknots == 0:
            raise DiagramError("nothing to curl")
        e = b = next(fresh)
        unknots = d.unknots - 1
        tuples = []
    else:
        e = d.components[0][0] if arc is None else arc
        if e not in d.arcs:
            raise DiagramError("arc %d not in diagram" % e)
        b = next(fresh)
        hc, hp = d.head(e)
        tuples = [list(c.pd) for c in d.crossings]
        tuples[hc][hp] = b
        unknots = d.unknots
    if under_first:
        kink = (e, b, loop, loop) if sign > 0 else (e, loop, loop, b)
    else:
        kink = (loop, loop, b, e) if sign > 0 else (loop, e, b, loop)
    tuples.append(kink)
    return LinkDiagram.from_pd(tuples, unknots, name=d.name)


def braid_closure(word: Sequence[int], strands: int | None = None, name: str = "") -> LinkDiagram:
    """Closure of a braid word (``±i`` is ``σ_i^{±1}``), strands oriented upward."""
    strands = strands or (max(abs(g) for g in word) + 1 if word else 1)
    b = MorseBuilder(strands).braid(word)
    glue = list(zip(b.top, b.bottom)) + b.glue
    return _closure(b.crossings, glue, name)


def faces(d: LinkDiagram) -> list[list[tuple[int, bool]]]:
    """Faces of the diagram as cycles of ``(arc, forward)``.

    Each face lies to the right of its boundary walk; ``forward`` tells
    whether the walk follows the arc's orientation.
    """
    where = _occurrences(d.pd)
    tails = {lab: d.tail(lab) for lab in d.arcs}
    seen = set()
    out = []
    for ci in range(d.n):
        for q0 in range(4):
            if (ci, q0) in seen:
                continue
            face = []
            c, q = ci, q0
            while (c, q) not in seen:
                seen.add((c, q))
                lab = d.crossings[c].pd[q]
                face.append((lab, tails[lab] == (c, q)))
                e0, e1 = where[lab]
                c2, p2 = e1 if e0 == (c, q) else e0
                c, q = c2, (p2 + 1) % 4
            out.append(face)
    return out


# ---------------------------------------------------------------------------
# constructions


def connected_sum(d1: LinkDiagram, d2: LinkDiagram, a1: int | None = None, a2: int | None = None) -> LinkDiagram:
    """Band the component of ``a1`` in ``d1`` to the component of ``a2`` in ``d2``.

    Both arcs are cut; the tail half of ``a1`` is joined to the head half of
    ``a2`` and vice versa, so orientations agree.  Arcs default to the first
    arc of the first component.
    """
    name = "%s # %s" % (d1.name, d2.name)
    if d2.n == 0:
        if d2.unknots < 1:
            raise DiagramError("empty summand")
        return LinkDiagram.from_pd(d1.pd, d1.unknots + d2.unknots - 1, name=name)
    if d1.n == 0:
        if d1.unknots < 1:
            raise DiagramError("empty summand")
        return LinkDiagram.from_pd(d2.pd, d1.unknots + d2.unknots - 1, name=name)
    a1 = d1.components[0][0] if a1 is None else a1
    a2 = d2.components[0][0] if a2 is None else a2
    if a1 not in d1.arcs:
        raise DiagramError("arc %d not in first diagram" % a1)
    if a2 not in d2.arcs:
        raise DiagramError("arc %d not in second diagram" % a2)
    off = max(d1.arcs)
    t1 = [list(c.pd) for c in d1.crossings]
    t2 = [[x + off for x in c.pd] for c in d2.crossings]
    h1c, h1p = d1.head(a1)
    h2c, h2p = d2.head(a2)
    t1[h1c][h1p] = a2 + off
    t2[h2c][h2p] = a1
    return LinkDiagram.from_pd(t1 + t2, d1.unknots + d2.unknots, name=name)


def _shared_face(d: LinkDiagram, a1: int, a2: int):
    for face in faces(d):
        f1 = [fw for lab, fw in face if lab == a1]
        f2 = [fw for lab, fw in face if lab == a2]
        if f1 and f2:
            return f1[0], f2[0]
    return None


def tangle_replace(d: LinkDiagram, a1: int, a2: int, t: Tangle) -> LinkDiagram:
    """Excise a trivial tangle made of pieces of ``a1`` and ``a2`` and glue in ``t``.

    Gluing convention: the box sits in a face bounded by both arcs, with
    ``a1`` along its west side and ``a2`` along its east side.  The two cut
    ends of ``a1`` go to NW/SW and those of ``a2`` to NE/SE; which end goes
    north is forced by planarity.  Replacing with :func:`trivial_tangle`
    gives back the same diagram up to relabelling.
    """
    if a1 == a2:
        raise DiagramError("the two arcs must differ")
    for a in (a1, a2):
        if a not in d.arcs:
            raise DiagramError("arc %d not in diagram" % a)
    sides = _shared_face(d, a1, a2)
    if sides is None:
        raise DiagramError("arcs %d and %d do not bound a common face" % (a1, a2))
    right1, right2 = sides
    fresh = _fresh(d)
    h1, h2 = next(fresh), next(fresh)
    tuples = [list(c.pd) for c in d.crossings]
    for a, h in ((a1, h1), (a2, h2)):
        hc, hp = d.head(a)
        tuples[hc][hp] = h
    off = next(fresh)
    tx = [tuple(x + off for x in c) for c in t.crossings]
    nw, ne, se, sw = (x + off for x in t.endpoints)
    # face to the right of a1: a1 runs south to north on the west side
    glue = [(a1, sw), (h1, nw)] if right1 else [(a1, nw), (h1, sw)]
    # face to the right of a2: a2 runs north to south on the east side
    glue += [(a2, ne), (h2, se)] if right2 else [(a2, se), (h2, ne)]
    raw = [tuple(c) for c in tuples] + tx
    out, loops, _ = resolve(raw, glue)
    return LinkDiagram.from_pd(out, d.unknots + loops, name="%s ~ %s" % (d.name, t.name), strict=False)


def trivial_tangle() -> Tangle:
    """Two vertical strands, NW-SW and NE-SE."""
    return Tangle((), (1, 2, 2, 1), name="trivial")


def _tangle_from_json(text: str) -> Tangle:
    obj = json.loads(text)
    return Tangle(tuple(tuple(c) for c in obj["crossings"]), tuple(obj["endpoints"]), name=obj.get("name", ""))


def _pattern_from_json(text: str) -> AnnularPattern:
    obj = json.loads(text)
    return AnnularPattern(
        tuple(tuple(c) for c in obj["crossings"]), tuple(obj["bottom"]), tuple(obj["top"]), name=obj.get("name", "")
    )


def kt_tangle() -> Tangle:
    """The Kinoshita-Terasaka tangle (``data/kt_tangle.json``).

    An 11-crossing diagram of 11n42 opened along a ribbon band: the
    numerator closure is 11n42 and the denominator closure is the
    2-component unlink, so the tangle is Conway-equivalent to the vertical
    trivial tangle and joins preserve the Alexander polynomial.
    """
    return _tangle_from_json(_data("kt_tangle.json"))


def livingston_pattern() -> AnnularPattern:
    """The bundled ribbon satellite pattern (``data/livingston_pattern.json``).

    Winding number one, three strands through the meridian disk.  It is the
    core band-summed with a small unknot, the band passing through that
    unknot before running once around the solid torus, so it is ribbon
    concordant to the core and unknotted in S^3.
    """
    return _pattern_from_json(_data("livingston_pattern.json"))


def satellite(companion: LinkDiagram, pattern: AnnularPattern | None = None) -> LinkDiagram:
    """Zero-framed satellite of a knot diagram.

    Every companion arc is replaced by ``m`` parallel copies and every
    crossing by an ``m x m`` grid.  The pattern is spliced into the copies of
    the first arc, followed by ``-writhe`` full twists that cancel the
    blackboard framing.  The result has ``m^2 n + n_pattern + m(m-1)|w|``
    crossings.
    """
    if not companion.is_knot:
        raise DiagramError("satellite companion must be a knot")
    pattern = pattern or livingston_pattern()
    m = pattern.width
    if companion.n == 0:
        d = pattern.closure()
        return LinkDiagram.from_pd(d.pd, d.unknots, name="sat(%s)" % companion.name)

    fresh = itertools.count(1)
    ext = {}

    def E(arc, k):
        key = (arc, k)
        if key not in ext:
            ext[key] = next(fresh)
        return ext[key]

    raw = []
    cut_arc = companion.components[0][0]
    hc_cut, _ = companion.head(cut_arc)
    cut_labels = {}
    for ci, c in enumerate(companion.crossings):
        a, b, cc, dd = c.pd
        v = [[E(a, x)] + [next(fresh) for _ in range(m - 1)] + [E(cc, x)] for x in range(m)]
        h = []
        for r in range(m):
            k = m - 1 - r if c.sign > 0 else r
            h.append([E(dd, k)] + [next(fresh) for _ in range(m - 1)] + [E(b, k)])
        if ci == hc_cut:
            # the head end of the cut arc gets fresh labels
            for k in range(m):
                cut_labels[k] = next(fresh)
            for x in range(m):
                if a == cut_arc:
                    v[x][0] = cut_labels[x]
            for r in range(m):
                k = m - 1 - r if c.sign > 0 else r
                if c.sign > 0 and dd == cut_arc:
                    h[r][0] = cut_labels[k]
                if c.sign < 0 and b == cut_arc:
                    h[r][m] = cut_labels[k]
        for x in range(m):
            for r in range(m):
                raw.append((v[x][r], h[r][x + 1], v[x][r + 1], h[r][x]))

    w = companion.writhe
    tw = MorseBuilder(m)
    for _ in range(abs(w)):
        for _ in range(m):
            tw.braid([(-i if w > 0 else i) for i in range(1, m)])
    off = next(fresh)
    poff = off + 10 * (len(tw.crossings) + m + 1) + 10
    raw += [tuple(x + off for x in c) for c in tw.crossings]
    raw += [tuple(x + poff for x in c) for c in pattern.crossings]
    glue = [(a + off, b + off) for a, b in tw.glue]
    for k in range(m):
        glue.append((E(cut_arc, k), pattern.bottom[k] + poff))
        glue.append((pattern.top[k] + poff, tw.bottom[k] + off))
        glue.append((tw.top[k] + off, cut_labels[k]))
    out, loops, _ = resolve(raw, glue)
    return LinkDiagram.from_pd(out, loops, name="sat(%s)" % companion.name, strict=False)
