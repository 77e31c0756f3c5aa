import json

import pytest

from echocheck.checker import (
    INCONCLUSIVE,
    PASS,
    REASON_INVARIANT,
    StateBudgetExceeded,
    VIOLATION,
    check_correctness,
    check_termination,
    explore,
    shortest_trace_to,
    sweep,
    trace_digest,
    trace_from_json,
    trace_to_json,
    validate_trace,
)
from echocheck.netconfig import Config, canonical_form
from echocheck.protocol import CHANG, FIXED, well_formed

SINGLE = Config.from_edges(1, 0, [])
EDGE2 = Config.from_edges(2, 0, [(0, 1)])
COMPLETE4 = Config.from_edges(4, 0, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
# the buggy network: initiator 0 joined to 1 and 2, which close a triangle and
# both reach the remote node 3
FIG2 = Config.from_edges(4, 0, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])
FIG2_NO_23 = Config.from_edges(4, 0, [(0, 1), (0, 2), (1, 2), (1, 3)])


def brute_force_states(config, variant):
    """Independent exploration oracle: plain DFS over raw states."""
    from echocheck.protocol import initial_state, successors
    init = initial_state(config, variant)
    seen = {init}
    stack = [init]
    transitions = 0
    while stack:
        s = stack.pop()
        for _, t in successors(config, s):
            transitions += 1
            if t not in seen:
                seen.add(t)
                stack.append(t)
    return seen, transitions


class TestExplore:
    def test_single_node(self):
        g = explore(SINGLE, FIXED)
        assert len(g.states) == 1 and g.stats.transitions == 0

    def test_two_node_fixed(self):
        g = explore(EDGE2, FIXED)
        assert len(g.states) == 3 and g.stats.transitions == 2

    def test_matches_dfs_oracle(self):
        for cfg, variant in [(EDGE2, CHANG), (FIG2, FIXED), (FIG2, CHANG)]:
            g = explore(cfg, variant)
            seen, transitions = brute_force_states(cfg, variant)
            assert set(g.states) == seen
            assert g.stats.transitions == transitions

    def test_complete4_regression(self):
        # frozen after the dfs-oracle run; keep in sync with the counts above
        g = explore(COMPLETE4, FIXED)
        assert (len(g.states), g.stats.transitions) == (14468, 56613)
        g = explore(COMPLETE4, CHANG)
        assert (len(g.states), g.stats.transitions) == (49622, 217704)

    def test_complete4_fixed_matches_oracle(self):
        seen, transitions = brute_force_states(COMPLETE4, FIXED)
        assert (len(seen), transitions) == (14468, 56613)

    def test_all_states_well_formed(self):
        for cfg, variant in [(FIG2, CHANG), (COMPLETE4, FIXED)]:
            g = explore(cfg, variant)
            assert all(well_formed(cfg, s) for s in g.states)

    def test_budget(self):
        with pytest.raises(StateBudgetExceeded) as exc:
            explore(COMPLETE4, FIXED, state_budget=100)
        assert exc.value.stats.states > 100

    def test_edge_indices_in_range(self):
        g = explore(EDGE2, FIXED)
        for row in g.edges:
            for _, j in row:
                assert 0 <= j < len(g.states)


class TestCheckCorrectness:
    def test_fig2_chang_violates(self):
        v = check_correctness(FIG2, CHANG)
        assert v.outcome == VIOLATION and v.reason == REASON_INVARIANT
        validate_trace(v.witness)
        from echocheck.protocol import finish, spanning_tree
        last = v.witness.states[-1]
        assert finish(FIG2, last) and not spanning_tree(FIG2, last)

    def test_fig2_fixed_passes(self):
        assert check_correctness(FIG2, FIXED).outcome == PASS

    def test_single_node_passes(self):
        for v in (CHANG, FIXED):
            assert check_correctness(SINGLE, v).outcome == PASS

    def test_witness_is_bfs_minimal(self):
        v = check_correctness(FIG2, CHANG)
        depth = len(v.witness.states) - 1
        # exhaustive check: no target state strictly shallower
        assert shortest_trace_to(FIG2, CHANG, "finish-and-not-spanning-tree",
                                 max_depth=depth - 1) is None


class TestCheckTermination:
    def test_two_node_fixed(self):
        assert check_termination(EDGE2, FIXED).outcome == PASS

    def test_single_node(self):
        assert check_termination(SINGLE, FIXED).outcome == PASS

    def test_all_four_node_fixed_pass(self):
        r = sweep(4, FIXED, "termination")
        assert r.violations == 0
        assert all(e.outcome == PASS for e in r.entries)


class TestShortestTrace:
    def test_complete4_fixed_is_19_states(self):
        tr = shortest_trace_to(COMPLETE4, FIXED, "finish")
        assert len(tr.states) == 19
        validate_trace(tr)

    def test_complete4_chang_regression(self):
        # shorter than the repaired variant: the initiator itself floods
        # explorers, so neighbors can bounce echoes straight back
        tr = shortest_trace_to(COMPLETE4, CHANG, "finish")
        assert len(tr.states) == 11
        validate_trace(tr)

    def test_two_node(self):
        tr = shortest_trace_to(EDGE2, FIXED, "finish")
        assert len(tr.states) == 3

    def test_single_node(self):
        tr = shortest_trace_to(SINGLE, FIXED, "finish")
        assert len(tr.states) == 1 and tr.events == []

    def test_unreachable_within_depth(self):
        assert shortest_trace_to(EDGE2, FIXED, "finish", max_depth=1) is None

    def test_unknown_target(self):
        with pytest.raises(ValueError):
            shortest_trace_to(EDGE2, FIXED, "deadlock")


class TestSweep:
    def test_chang_correctness_finds_the_two_bugs(self):
        r = sweep(4, CHANG, "correctness")
        assert len(r.entries) == 16
        bad = {e.config for e in r.entries if e.outcome == VIOLATION}
        assert bad == {canonical_form(FIG2), canonical_form(FIG2_NO_23)}
        assert r.violations == 2
        for e in r.entries:
            if e.outcome == VIOLATION:
                validate_trace(e.witness)

    def test_fixed_passes_both_properties(self):
        assert sweep(4, FIXED, "correctness").violations == 0
        assert sweep(4, FIXED, "termination").violations == 0

    def test_budget_marks_inconclusive(self):
        r = sweep(4, FIXED, "correctness", state_budget=50)
        assert any(e.outcome == INCONCLUSIVE for e in r.entries)
        assert len(r.entries) == 16  # sweep not aborted

    def test_bounds(self):
        with pytest.raises(ValueError):
            sweep(7, FIXED, "correctness")
        with pytest.raises(ValueError):
            sweep(4, FIXED, "liveness")
        with pytest.raises(ValueError):
            sweep(4, "neither", "correctness")


class TestSymmetry:
    def test_reduced_graph_is_smaller_on_symmetric_config(self):
        full = explore(COMPLETE4, FIXED)
        reduced = explore(COMPLETE4, FIXED, symmetry=True)
        assert len(reduced.states) < len(full.states)

    def test_verdicts_match_unreduced(self):
        for cfg in (EDGE2, FIG2, COMPLETE4):
            for variant in (CHANG, FIXED):
                for check in (check_correctness, check_termination):
                    a = check(cfg, variant)
                    b = check(cfg, variant, symmetry=True)
                    assert (a.outcome, a.reason) == (b.outcome, b.reason)

    def test_symmetric_witness_replays(self):
        v = check_correctness(FIG2, CHANG, symmetry=True)
        assert v.outcome == VIOLATION
        validate_trace(v.witness)


class TestTraceJson:
    def test_round_trip(self):
        tr = shortest_trace_to(EDGE2, FIXED, "finish")
        obj = trace_to_json(tr)
        again = trace_from_json(obj)
        assert again == tr
        assert json.loads(json.dumps(obj)) == obj

    def test_digest_stability(self):
        a = shortest_trace_to(EDGE2, FIXED, "finish")
        b = shortest_trace_to(EDGE2, FIXED, "finish")
        assert trace_digest(a) == trace_digest(b)
        c = shortest_trace_to(EDGE2, CHANG, "finish")
        assert trace_digest(a) != trace_digest(c)

    def test_validate_rejects_tampering(self):
        tr = shortest_trace_to(EDGE2, FIXED, "finish")
        tr.states[1], tr.states[2] = tr.states[2], tr.states[1]
        with pytest.raises(ValueError):
            validate_trace(tr)


class TestReportJson:
    def test_shape_and_round_trip(self):
        r = sweep(3, CHANG, "correctness")
        obj = r.to_json_dict(no_timing=True)
        assert obj["property"] == "correctness"
        assert obj["variant"] == "chang"
        assert obj["max_nodes"] == 3
        assert obj["violations"] == 0
        assert len(obj["results"]) == 5
        for res in obj["results"]:
            assert res["outcome"] == "pass"
            assert res["millis"] == 0
        assert json.dumps(obj)

    def test_no_timing_is_deterministic(self):
        a = sweep(3, FIXED, "correctness").to_json_dict(no_timing=True)
        b = sweep(3, FIXED, "correctness").to_json_dict(no_timing=True)
        assert json.dumps(a) == json.dumps(b)
