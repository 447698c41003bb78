"""Coloring moves, saturation, and the omega/rho searches."""

from __future__ import annotations

import time

import pytest

from plainsphere import omega, rho
from plainsphere.certificate import verify
from plainsphere.engine import (PLAINSPHERE, WIRTINGER, ColoringState,
                                _saturate_set, loop_colorable_now, saturate,
                                strand_search_order, wirtinger_colorable_now)
from plainsphere.errors import ComputeTimeout

# the three strands colored in the reference staged coloring of k14n1527,
# and the ten-strand set its Wirtinger closure sticks at
K14_STAGE_SEEDS = (0, 10, 11)
K14_STAGE_FIXPOINT = frozenset({0, 3, 4, 5, 6, 7, 9, 10, 11, 13})


class TestMoves:
    def test_wirtinger_move_on_trefoil(self, trefoil):
        state = ColoringState(trefoil, None, (0, 1))
        move = wirtinger_colorable_now(state, 2)
        assert move is not None and move.kind == "W"
        # crossing 1 has under pair (0,1); target 2 is not under there
        assert move.crossing in (0, 2)

    def test_no_wirtinger_move_from_single_seed(self, trefoil):
        state = ColoringState(trefoil, None, (0,))
        assert wirtinger_colorable_now(state, 1) is None
        assert wirtinger_colorable_now(state, 2) is None

    def test_self_adjacent_crossing_never_fires(self, all_diagrams):
        # both Hopf crossings pair a strand with itself; those records
        # must never enable a move, hence omega(hopf) = 2
        d = all_diagrams["hopf"]
        assert d.adjacency_of(1)
        state = ColoringState(d, None, (0,))
        assert wirtinger_colorable_now(state, 1) is None

    def test_loop_move_needs_dual(self, trefoil):
        state = ColoringState(trefoil, None, (0,))
        with pytest.raises(ValueError):
            loop_colorable_now(state, 1)

    def test_loop_move_absent_from_single_seed(self, trefoil, trefoil_dual):
        state = ColoringState(trefoil, trefoil_dual, (0,))
        assert loop_colorable_now(state, 1) is None
        assert loop_colorable_now(state, 2) is None

    def test_loop_move_present_where_wirtinger_is(self, trefoil, trefoil_dual):
        state = ColoringState(trefoil, trefoil_dual, (0, 1))
        move = loop_colorable_now(state, 2)
        assert move is not None and move.kind == "L"
        assert trefoil.edge_to_strand[move.edge] == 2
        faces = move.cycle_faces
        assert len(faces) == len(set(faces)) >= 2

    def test_colored_strand_is_rejected_as_target(self, trefoil):
        state = ColoringState(trefoil, None, (0,))
        with pytest.raises(ValueError):
            wirtinger_colorable_now(state, 0)

    def test_empty_seed_set_rejected(self, trefoil):
        with pytest.raises(ValueError):
            ColoringState(trefoil, None, ())

    def test_unknown_seed_rejected(self, trefoil):
        with pytest.raises(ValueError):
            ColoringState(trefoil, None, (7,))


class TestSaturation:
    def test_trefoil_two_seeds_complete(self, trefoil):
        colored, log = saturate(trefoil, (0, 1), WIRTINGER)
        assert colored == frozenset({0, 1, 2})
        assert [m.target for m in log] == [2]

    def test_trefoil_single_seed_sticks(self, trefoil, trefoil_dual):
        for mode, dual in ((WIRTINGER, None), (PLAINSPHERE, trefoil_dual)):
            colored, log = saturate(trefoil, (1,), mode, dual)
            assert colored == frozenset({1}) and log == ()

    def test_all_seeds_zero_moves(self, k14, k14_dual):
        colored, log = saturate(k14, range(k14.n), PLAINSPHERE, k14_dual)
        assert len(colored) == k14.n and log == ()

    def test_move_log_replays(self, k14, k14_dual):
        """The staged coloring's own log is a valid certificate body."""
        from plainsphere.certificate import Certificate
        colored, log = saturate(k14, K14_STAGE_SEEDS, PLAINSPHERE, k14_dual)
        assert len(colored) == k14.n
        cert = Certificate(k14.content_hash, PLAINSPHERE,
                           K14_STAGE_SEEDS, log)
        assert verify(k14, cert, k14_dual).ok

    def test_k14_stage_wirtinger_fixpoint(self, k14):
        got = _saturate_set(k14, None, K14_STAGE_SEEDS, WIRTINGER)
        assert frozenset(got) == K14_STAGE_FIXPOINT

    def test_k14_stage_loop_moves_unlock(self, k14, k14_dual):
        """At the stuck set, a loop move exists and completes the coloring."""
        state = ColoringState(k14, k14_dual, K14_STAGE_FIXPOINT)
        movable = [s for s in state.uncolored()
                   if loop_colorable_now(state, s) is not None]
        assert movable  # Wirtinger alone is stuck, loops are not
        got = _saturate_set(k14, k14_dual, K14_STAGE_SEEDS, PLAINSPHERE)
        assert len(got) == k14.n

    def test_fast_and_logged_saturation_agree(self, all_diagrams):
        from plainsphere import build_dual
        for name, d in all_diagrams.items():
            g = build_dual(d)
            seeds = (0, d.n // 2) if d.n > 1 else (0,)
            for mode, dual in ((WIRTINGER, None), (PLAINSPHERE, g)):
                fast = _saturate_set(d, g, seeds, mode)
                slow, _ = saturate(d, seeds, mode, dual)
                assert frozenset(fast) == slow, (name, mode)


class TestSearch:
    def test_search_order_prefers_high_over_degree(self, k14):
        order = strand_search_order(k14)
        degrees = [k14.over_degree(s) for s in order]
        assert degrees == sorted(degrees, reverse=True)
        assert sorted(order) == list(range(k14.n))

    def test_trefoil_omega_rho(self, trefoil, trefoil_dual):
        w, wcert = omega(trefoil)
        r, rcert = rho(trefoil, dual=trefoil_dual)
        assert (w, r) == (2, 2)
        assert wcert.seeds == (0, 1) and wcert.mode == WIRTINGER
        assert rcert.mode == PLAINSPHERE
        assert verify(trefoil, wcert).ok and verify(trefoil, rcert).ok

    def test_one_crossing_unknot(self):
        from plainsphere import parse_pd
        d = parse_pd("X(1,2,2,1)")
        assert omega(d)[0] == 1 and rho(d)[0] == 1

    def test_k14_values(self, k14, k14_dual):
        w, wcert = omega(k14)
        r, rcert = rho(k14, dual=k14_dual, omega_result=(w, wcert))
        assert (w, r) == (4, 3)
        assert len(wcert.seeds) == 4 and len(rcert.seeds) == 3

    def test_rho_reuses_omega_witness_when_equal(self, trefoil, trefoil_dual):
        w, wcert = omega(trefoil)
        r, rcert = rho(trefoil, dual=trefoil_dual, omega_result=(w, wcert))
        assert r == w and rcert.seeds == wcert.seeds
        assert rcert.mode == PLAINSPHERE
        assert all(m.kind == "W" for m in rcert.moves)

    def test_deadline_raises(self, k14):
        with pytest.raises(ComputeTimeout):
            omega(k14, deadline=time.monotonic() - 1.0)

    def test_rho_deadline_raises(self, k14, k14_dual):
        with pytest.raises(ComputeTimeout):
            rho(k14, dual=k14_dual, deadline=time.monotonic() - 1.0)

    def test_values_on_known_rows(self, all_rows, all_diagrams):
        """omega == rho on every bundled diagram except the gap witness."""
        from plainsphere import build_dual
        for name, _, _ in all_rows:
            d = all_diagrams[name]
            g = build_dual(d)
            w, _ = omega(d)
            r, _ = rho(d, dual=g)
            if name == "k14n1527":
                assert (w, r) == (4, 3)
            else:
                assert w == r, name
