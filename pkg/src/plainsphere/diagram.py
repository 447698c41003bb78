"""Planar diagram codes, strands, and strand adjacency.

A diagram with n crossings is given by n tuples X(a,b,c,d) listing the
four edge labels around each crossing counterclockwise, starting at the
incoming under-edge.  Labels run over 1..2n and each label appears at
exactly two slots overall.  Slots 0 and 2 of a crossing hold the two
under-strand ends, slots 1 and 3 the over-strand that passes through.

A strand is a maximal over-arc: walk an edge away from an under-end;
whenever the walk meets a crossing at an over slot it continues out the
opposite over slot; it stops at the next under slot.  Every crossing
consumes two under-ends, so a valid diagram decomposes into exactly n
strands.  Two strands are adjacent when they are the two under-strands
of a common crossing; the strand passing over that crossing is recorded
alongside, because it is what a Wirtinger move conditions on.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass

from .errors import ClosedOverComponent, DisconnectedProjection, MalformedPD

_TUPLE_RE = re.compile(
    r"X\s*[\(\[]\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*[\)\]]"
)
_SEPARATOR_RE = re.compile(r"^[\s,]*$")

# Under-ends sit at slots 0 and 2; the over-strand occupies 1 and 3.
UNDER_SLOTS = (0, 2)
OVER_SLOTS = (1, 3)


@dataclass(frozen=True)
class Crossing:
    """One crossing: its index and the counterclockwise slot labels."""

    id: int
    pd: tuple[int, int, int, int]

    @property
    def under_pair(self) -> tuple[int, int]:
        return (self.pd[0], self.pd[2])

    @property
    def over_pair(self) -> tuple[int, int]:
        return (self.pd[1], self.pd[3])


@dataclass(frozen=True)
class Strand:
    """A maximal over-arc: its edges in walk order and its two under-ends.

    Each endpoint is a (crossing id, slot) pair with slot in {0, 2}.
    """

    id: int
    edges: tuple[int, ...]
    endpoints: tuple[tuple[int, int], tuple[int, int]]


@dataclass(frozen=True)
class Adjacency:
    """One crossing witnessing that `other` shares an under-pair with a strand."""

    other: int
    crossing: int
    over: int


class Diagram:
    """An immutable link diagram built from validated PD tuples."""

    def __init__(self, tuples: list[tuple[int, int, int, int]]):
        self.crossings: tuple[Crossing, ...] = tuple(
            Crossing(i, t) for i, t in enumerate(tuples)
        )
        self.n = len(tuples)
        # occurrences[label] -> the two (crossing, slot) positions
        occ: dict[int, list[tuple[int, int]]] = {}
        for i, t in enumerate(tuples):
            for slot, label in enumerate(t):
                occ.setdefault(label, []).append((i, slot))
        self.occurrences: dict[int, tuple[tuple[int, int], ...]] = {
            e: tuple(v) for e, v in occ.items()
        }
        self._check_connected()
        self.strands: tuple[Strand, ...] = self._build_strands()
        self.edge_to_strand: dict[int, int] = {}
        for s in self.strands:
            for e in s.edges:
                self.edge_to_strand[e] = s.id
        self._strand_at_terminal: dict[tuple[int, int], int] = {}
        for s in self.strands:
            for term in s.endpoints:
                self._strand_at_terminal[term] = s.id
        self.under_strands: tuple[tuple[int, int], ...] = tuple(
            (self._strand_at_terminal[(c.id, 0)], self._strand_at_terminal[(c.id, 2)])
            for c in self.crossings
        )
        self.over_strand: tuple[int, ...] = tuple(
            self.edge_to_strand[c.pd[1]] for c in self.crossings
        )
        self.adjacency: frozenset[tuple[int, int]] = frozenset(
            tuple(sorted(p)) for p in self.under_strands
        )
        self._adjacency_of: list[list[Adjacency]] = [[] for _ in self.strands]
        for c in self.crossings:
            u1, u2 = self.under_strands[c.id]
            o = self.over_strand[c.id]
            self._adjacency_of[u1].append(Adjacency(u2, c.id, o))
            if u2 != u1:
                self._adjacency_of[u2].append(Adjacency(u1, c.id, o))
        self.components: dict[int, int] = self._link_components()
        self.n_components = len(set(self.components.values()))

    # -- construction helpers -------------------------------------------

    def _check_connected(self) -> None:
        parent = list(range(self.n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for pair in self.occurrences.values():
            (c1, _), (c2, _) = pair
            parent[find(c1)] = find(c2)
        roots = {find(i) for i in range(self.n)}
        if len(roots) > 1:
            raise DisconnectedProjection(
                f"projection splits into {len(roots)} pieces"
            )

    def _other_occurrence(self, edge: int, at: tuple[int, int]) -> tuple[int, int]:
        a, b = self.occurrences[edge]
        return b if a == at else a

    def _build_strands(self) -> tuple[Strand, ...]:
        pd = [c.pd for c in self.crossings]
        seen_terminals: set[tuple[int, int]] = set()
        strands: list[Strand] = []
        # Walking from slot-2 ends first makes strand i start at crossing
        # i's outgoing under-edge whenever the code is consistently
        # oriented; slot-0 starts only mop up unoriented input.
        starts = [(i, 2) for i in range(self.n)] + [(i, 0) for i in range(self.n)]
        for start in starts:
            if start in seen_terminals:
                continue
            edges = []
            here = start
            edge = pd[here[0]][here[1]]
            while True:
                edges.append(edge)
                c, slot = self._other_occurrence(edge, here)
                if slot in UNDER_SLOTS:
                    end = (c, slot)
                    break
                here = (c, 4 - slot)  # cross over: slot 1 <-> slot 3
                edge = pd[c][4 - slot]
            seen_terminals.add(start)
            seen_terminals.add(end)
            strands.append(Strand(len(strands), tuple(edges), (start, end)))
        claimed = {e for s in strands for e in s.edges}
        leftover = sorted(set(self.occurrences) - claimed)
        if leftover:
            raise ClosedOverComponent(
                f"edges {leftover} form closed over-components"
            )
        assert len(strands) == self.n
        return tuple(strands)

    def _link_components(self) -> dict[int, int]:
        """Partition edges into link components (glue at both strand kinds)."""
        labels = sorted(self.occurrences)
        parent = {e: e for e in labels}

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for c in self.crossings:
            parent[find(c.pd[0])] = find(c.pd[2])
            parent[find(c.pd[1])] = find(c.pd[3])
        return {e: find(e) for e in labels}

    # -- queries ---------------------------------------------------------

    def adjacency_of(self, strand: int) -> tuple[Adjacency, ...]:
        """All (other strand, crossing, over-strand) records for `strand`."""
        return tuple(self._adjacency_of[strand])

    def strand_at(self, terminal: tuple[int, int]) -> int:
        return self._strand_at_terminal[terminal]

    def over_degree(self, strand: int) -> int:
        """Number of crossings at which `strand` is the over-strand."""
        return sum(1 for o in self.over_strand if o == strand)

    def serialize(self) -> str:
        return " ".join(
            "X({},{},{},{})".format(*c.pd) for c in self.crossings
        )

    @property
    def content_hash(self) -> str:
        return hashlib.sha256(self.serialize().encode("ascii")).hexdigest()

    def __repr__(self) -> str:  # pragma: no cover
        return f"Diagram({self.serialize()!r})"


def parse_pd(text: str) -> Diagram:
    """Parse PD text such as ``X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)``.

    Accepts the bracket variant ``PD[X[a,b,c,d], ...]`` as well.  The
    label multiset is validated before any structure is built: labels
    must be exactly 1..2n, each appearing twice.
    """
    body = text.strip()
    if body.startswith("PD[") and body.endswith("]"):
        body = body[3:-1]
    tuples: list[tuple[int, int, int, int]] = []
    residue = _TUPLE_RE.sub(lambda _: " ", body)
    if not _SEPARATOR_RE.match(residue):
        raise MalformedPD(f"unparseable PD text near: {residue.strip()[:40]!r}")
    for m in _TUPLE_RE.finditer(body):
        tuples.append(tuple(int(g) for g in m.groups()))  # type: ignore[arg-type]
    if not tuples:
        raise MalformedPD("PD text contains no crossings")
    n = len(tuples)
    counts: dict[int, int] = {}
    for t in tuples:
        for label in t:
            counts[label] = counts.get(label, 0) + 1
    bad = {e: k for e, k in counts.items() if k != 2}
    if bad:
        raise MalformedPD(f"labels with occurrence count != 2: {bad}")
    if set(counts) != set(range(1, 2 * n + 1)):
        raise MalformedPD(
            f"labels must be exactly 1..{2 * n}, got {sorted(counts)}"
        )
    return Diagram(tuples)


def serialize_pd(d: Diagram) -> str:
    """Canonical one-line form; ``parse_pd`` round-trips it."""
    return d.serialize()
