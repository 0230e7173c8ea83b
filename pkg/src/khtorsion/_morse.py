"""Bottom-to-top Morse descriptions of planar tangles.

A :class:`MorseBuilder` keeps a row of strand positions and applies
elementary events to it while time runs upward: ``cup`` (a local minimum
creating two strands), ``cap`` (a local maximum joining two strands) and
``cross`` (a crossing of neighbouring strands).  The result is a list of
crossings in the unoriented internal format used by :mod:`khtorsion.diagram`:
four raw labels in counterclockwise order with the under-strand occupying
slots 0 and 2.  Orientation is assigned later.
"""

from __future__ import annotations

import itertools


class MorseBuilder:
    """Accumulate a tangle from Morse events.

    Parameters
    ----------
    width : int
        Number of strands entering from the bottom.
    """

    def __init__(self, width: int = 0):
        self._fresh = itertools.count(1)
        self.bottom = [next(self._fresh) for _ in range(width)]
        self.row = list(self.bottom)
        self.crossings: list[tuple[int, int, int, int]] = []
        self.glue: list[tuple[int, int]] = []

    def _new(self) -> int:
        return next(self._fresh)

    @property
    def width(self) -> int:
        return len(self.row)

    def cup(self, p: int) -> "MorseBuilder":
        """Insert a local minimum so that new strands sit at ``p`` and ``p+1``."""
        lab = self._new()
        self.row[p:p] = [lab, lab]
        return self

    def cap(self, p: int) -> "MorseBuilder":
        """Join the strands at ``p`` and ``p+1`` by a local maximum."""
        a, b = self.row[p], self.row[p + 1]
        self.glue.append((a, b))
        del self.row[p:p + 2]
        return self

    def cross(self, p: int, positive: bool = True) -> "MorseBuilder":
        """Cross strands ``p`` and ``p+1``.

        ``positive`` refers to the sign the crossing would have if both
        strands were oriented upward: the strand running from bottom-left to
        top-right passes over.
        """
        bl, br = self.row[p], self.row[p + 1]
        tl, tr = self._new(), self._new()
        # counterclockwise from bottom-left: BL, BR, TR, TL
        if positive:
            self.crossings.append((br, tr, tl, bl))
        else:
            self.crossings.append((bl, br, tr, tl))
        self.row[p], self.row[p + 1] = tl, tr
        return self

    def braid(self, word, offset: int = 0) -> "MorseBuilder":
        """Apply a braid word given as nonzero ints (``±i`` is ``σ_i^{±1}``, 1-based)."""
        for g in word:
            self.cross(abs(g) - 1 + offset, positive=g > 0)
        return self

    @property
    def top(self) -> list[int]:
        return list(self.row)


def resolve(crossings, glue, keep=()):
    """Merge glued labels and report closed loops that carry no crossing.

    Returns ``(crossings, free_loops, rename)`` where ``rename`` maps every
    raw label to its representative.  Labels in ``keep`` count as boundary
    ends, so their classes never form free loops.
    """
    parent: dict[int, int] = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in glue:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    out = [tuple(find(x) for x in c) for c in crossings]
    used = {x for c in out for x in c} | {find(x) for x in keep}
    classes = {find(x) for x in parent}
    loops = len(classes - used)
    return out, loops, find
