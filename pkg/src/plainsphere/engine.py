"""Coloring moves, saturation, and the seed-set searches for omega and rho.

Two move kinds color one new strand each:

* Wirtinger move: at some crossing the target strand is an under-strand,
  the other under-strand is a different strand that is already colored,
  and the over-strand is already colored.

* Loop move: an embedded circle in the sphere crosses the target strand
  exactly once and otherwise meets only colored strands.  Loops that
  meet each face in at most one arc are cycles in the dual graph, and
  restricting to them loses nothing.  A dual cycle through exactly one
  edge of the target exists if and only if the two faces of some target
  edge are connected inside the subgraph spanned by dual edges of
  colored strands; that subgraph only grows, so the test is incremental
  union-find, and an explicit witness cycle is recovered by BFS only
  when a move object is actually built.

Every Wirtinger move is dominated by a loop move (circle the crossing),
so plain-sphere saturation may test connectivity alone.  Both move
families are monotone in the colored set, hence saturation reaches the
same fixpoint in any order; the searches below exploit that freely.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

from .diagram import Diagram
from .dual import DualGraph, build_dual
from .errors import ComputeTimeout

WIRTINGER = "wirtinger"
PLAINSPHERE = "plainsphere"
MODES = (WIRTINGER, PLAINSPHERE)


@dataclass(frozen=True)
class Move:
    """One coloring step.

    Wirtinger moves carry the witnessing crossing.  Loop moves carry the
    edge where the loop crosses the target strand plus the face cycle
    f0..fk: the target edge joins fk back to f0, and every hop fi->fi+1
    crosses some edge of an already-colored strand.  ``cycle_edges``
    records one such edge per hop for internal checks; it is not part of
    the serialized form, which a verifier re-derives independently.
    """

    kind: str  # "W" or "L"
    target: int
    crossing: int | None = None
    edge: int | None = None
    cycle_faces: tuple[int, ...] | None = None
    # Witness bookkeeping, not part of the certificate contract.
    cycle_edges: tuple[int, ...] | None = field(default=None, compare=False)

    @property
    def cycle_length(self) -> int:
        return len(self.cycle_faces) if self.cycle_faces else 0


class UnionFind:
    """Union-find with path halving; edges are only ever added."""

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb


class ColoringState:
    """Colored strand set plus the structures both move tests need."""

    def __init__(self, diagram: Diagram, dual: DualGraph | None,
                 seeds: Iterable[int]):
        self.diagram = diagram
        self.dual = dual
        seed_list = sorted(set(seeds))
        if not seed_list:
            raise ValueError("seed set must be nonempty")
        for s in seed_list:
            if not 0 <= s < diagram.n:
                raise ValueError(f"unknown strand id {s}")
        self.seeds = tuple(seed_list)
        self.colored: set[int] = set(seed_list)
        self.move_log: list[Move] = []
        self._uf: UnionFind | None = None
        self._adj: list[list[tuple[int, int]]] | None = None
        if dual is not None:
            self._uf = UnionFind(dual.n_faces)
            self._adj = [[] for _ in range(dual.n_faces)]
            for s in seed_list:
                self._absorb(s)

    def _absorb(self, strand: int) -> None:
        assert self.dual is not None and self._uf is not None
        for e, f1, f2 in self.dual.strand_edges[strand]:
            self._uf.union(f1, f2)
            self._adj[f1].append((f2, e))
            self._adj[f2].append((f1, e))

    def apply(self, move: Move) -> None:
        if move.target in self.colored:
            raise ValueError(f"strand {move.target} is already colored")
        self.colored.add(move.target)
        if self._uf is not None:
            self._absorb(move.target)
        self.move_log.append(move)

    def uncolored(self) -> list[int]:
        return [s for s in range(self.diagram.n) if s not in self.colored]


def wirtinger_colorable_now(state: ColoringState, strand: int) -> Move | None:
    """A Wirtinger move for `strand` at the current state, if any exists."""
    if strand in state.colored:
        raise ValueError(f"strand {strand} is already colored")
    for adj in state.diagram.adjacency_of(strand):
        if adj.other == strand:
            continue  # self-adjacent crossing never enables a move
        if adj.other in state.colored and adj.over in state.colored:
            return Move("W", strand, crossing=adj.crossing)
    return None


def loop_colorable_now(state: ColoringState, strand: int) -> Move | None:
    """A loop move for `strand` at the current state, if any exists.

    Tests whether the two faces of some edge of `strand` are already
    connected through colored strands' dual edges, then extracts the
    witness path.
    """
    if strand in state.colored:
        raise ValueError(f"strand {strand} is already colored")
    if state.dual is None or state._uf is None:
        raise ValueError("loop moves require a dual graph; none was supplied")
    for e, f1, f2 in state.dual.strand_edges[strand]:
        if state._uf.find(f1) == state._uf.find(f2):
            faces, edges = _bfs_path(state._adj, f1, f2)
            move = Move("L", strand, edge=e,
                        cycle_faces=tuple(faces), cycle_edges=tuple(edges))
            _assert_even_component_parity(state, move)
            return move
    return None


def _bfs_path(adj: list[list[tuple[int, int]]], src: int,
              dst: int) -> tuple[list[int], list[int]]:
    """Shortest face path src..dst through colored dual edges."""
    if src == dst:
        return [src], []
    prev: dict[int, tuple[int, int]] = {src: (-1, -1)}
    queue = [src]
    for f in queue:
        for g, e in adj[f]:
            if g not in prev:
                prev[g] = (f, e)
                if g == dst:
                    faces = [dst]
                    edges = []
                    while faces[-1] != src:
                        pf, pe = prev[faces[-1]]
                        edges.append(pe)
                        faces.append(pf)
                    faces.reverse()
                    edges.reverse()
                    return faces, edges
                queue.append(g)
    raise AssertionError("union-find and BFS disagree on connectivity")


def _assert_even_component_parity(state: ColoringState, move: Move) -> None:
    """Any embedded circle crosses each link component an even number of times.

    A dual cycle is a cut of the projection; every closed component
    crosses a cut evenly.  Violation means the emitted cycle is wrong.
    """
    counts: dict[int, int] = {}
    for e in move.cycle_edges + (move.edge,):
        comp = state.diagram.components[e]
        counts[comp] = counts.get(comp, 0) + 1
    odd = {c: k for c, k in counts.items() if k % 2}
    assert not odd, f"loop cycle crosses components an odd number of times: {odd}"


def saturate(d: Diagram, seeds: Iterable[int], mode: str,
             dual: DualGraph | None = None) -> tuple[frozenset[int], tuple[Move, ...]]:
    """Greedy fixpoint from `seeds`, returning the colored set and move log.

    In plain-sphere mode Wirtinger moves are preferred and a loop move is
    interleaved only when none applies, which keeps certificates short
    and mirrors how the moves are used by hand.  By monotonicity the
    final set does not depend on this policy.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    if mode == PLAINSPHERE and dual is None:
        dual = build_dual(d)
    state = ColoringState(d, dual if mode == PLAINSPHERE else None, seeds)
    progressed = True
    while progressed:
        progressed = False
        sweeping = True
        while sweeping:
            sweeping = False
            for s in state.uncolored():
                move = wirtinger_colorable_now(state, s)
                if move is not None:
                    state.apply(move)
                    sweeping = progressed = True
        if mode == PLAINSPHERE:
            for s in state.uncolored():
                move = loop_colorable_now(state, s)
                if move is not None:
                    state.apply(move)
                    progressed = True
                    break
    return frozenset(state.colored), tuple(state.move_log)


def saturate_random(d: Diagram, seeds: Iterable[int], mode: str, rng,
                    dual: DualGraph | None = None) -> frozenset[int]:
    """Saturate picking uniformly among currently available targets.

    Exercises confluence: the result must equal ``saturate``'s for every
    random order.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    if mode == PLAINSPHERE and dual is None:
        dual = build_dual(d)
    state = ColoringState(d, dual if mode == PLAINSPHERE else None, seeds)
    while True:
        available = []
        for s in state.uncolored():
            if mode == WIRTINGER:
                move = wirtinger_colorable_now(state, s)
            else:
                move = loop_colorable_now(state, s)
            if move is not None:
                available.append(move)
        if not available:
            return frozenset(state.colored)
        state.apply(rng.choice(available))


def _saturate_set(d: Diagram, dual: DualGraph | None, seeds: Iterable[int],
                  mode: str) -> set[int]:
    """Fixpoint colored set only; the hot path of both searches."""
    colored = set(seeds)
    if mode == PLAINSPHERE:
        uf = UnionFind(dual.n_faces)
        pending = list(colored)
        while pending:
            for s in pending:
                for _, f1, f2 in dual.strand_edges[s]:
                    uf.union(f1, f2)
            pending = []
            for s in range(d.n):
                if s in colored:
                    continue
                for _, f1, f2 in dual.strand_edges[s]:
                    if uf.find(f1) == uf.find(f2):
                        colored.add(s)
                        pending.append(s)
                        break
        return colored
    changed = True
    while changed:
        changed = False
        for s in range(d.n):
            if s in colored:
                continue
            for adj in d.adjacency_of(s):
                if (adj.other != s and adj.other in colored
                        and adj.over in colored):
                    colored.add(s)
                    changed = True
                    break
    return colored


def strand_search_order(d: Diagram) -> list[int]:
    """Strands by descending over-degree, ties by id.

    Strands that pass over many crossings enable many Wirtinger moves,
    so trying them first tends to hit a spanning seed set sooner.  The
    search below is exhaustive per size, so this is purely a speedup.
    """
    return sorted(range(d.n), key=lambda s: (-d.over_degree(s), s))


def _check_deadline(deadline: float | None) -> None:
    if deadline is not None and time.monotonic() > deadline:
        raise ComputeTimeout("seed-set search exceeded its deadline")


def omega(d: Diagram, deadline: float | None = None):
    """Smallest k whose some k-seed set Wirtinger-saturates the diagram.

    Returns (k, certificate).  k = n always succeeds, so the search
    terminates.
    """
    from .certificate import Certificate

    order = strand_search_order(d)
    for k in range(1, d.n + 1):
        for combo in combinations(order, k):
            _check_deadline(deadline)
            if len(_saturate_set(d, None, combo, WIRTINGER)) == d.n:
                colored, log = saturate(d, combo, WIRTINGER)
                assert len(colored) == d.n
                return k, Certificate(
                    diagram_hash=d.content_hash, mode=WIRTINGER,
                    seeds=tuple(sorted(combo)), moves=log,
                )
    raise AssertionError("unreachable: the full strand set saturates")


def rho(d: Diagram, dual: DualGraph | None = None,
        deadline: float | None = None, omega_result=None):
    """Smallest k whose some k-seed set plain-sphere-saturates the diagram.

    Searches k = 1..omega-1 only: loop moves dominate Wirtinger moves, so
    rho <= omega, and when no smaller seed set works the omega witness is
    reissued as a plain-sphere certificate (its Wirtinger moves remain
    valid there).
    """
    from .certificate import Certificate

    if dual is None:
        dual = build_dual(d)
    w, wcert = omega_result if omega_result is not None else omega(d, deadline)
    order = strand_search_order(d)
    for k in range(1, w):
        for combo in combinations(order, k):
            _check_deadline(deadline)
            if len(_saturate_set(d, dual, combo, PLAINSPHERE)) == d.n:
                colored, log = saturate(d, combo, PLAINSPHERE, dual)
                assert len(colored) == d.n
                return k, Certificate(
                    diagram_hash=d.content_hash, mode=PLAINSPHERE,
                    seeds=tuple(sorted(combo)), moves=log,
                )
    return w, Certificate(
        diagram_hash=d.content_hash, mode=PLAINSPHERE,
        seeds=wcert.seeds, moves=wcert.moves,
    )
