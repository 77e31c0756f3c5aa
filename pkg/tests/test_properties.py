"""Property-based suites for the protocol invariants and the checker
contracts, driven by hypothesis.  The acceptance module runs the same
properties again as seeded high-volume loops."""

import random

import pytest
from hypothesis import given, settings, strategies as st

from echocheck.checker import check_correctness, check_termination, validate_trace
from echocheck.netconfig import canonical_form, is_valid_config, relabel
from echocheck.protocol import (
    CHANG,
    ECHO,
    EXPLORER,
    FIXED,
    Event,
    EventNotEnabledError,
    apply_event,
    enabled_events,
    finish,
    initial_state,
    spanning_tree,
    successors,
    well_formed,
)
from helpers import random_config, random_walk

variants = st.sampled_from([CHANG, FIXED])
seeds = st.integers(min_value=0, max_value=2**32 - 1)


def drawn_config(seed, max_nodes=4):
    return random_config(random.Random(seed), max_nodes)


def drawn_state(seed, config, variant):
    state, _ = random_walk(random.Random(seed ^ 0x5EED), config, variant)
    return state


@given(seeds, variants)
@settings(max_examples=200, deadline=None)
def test_received_is_monotone(seed, variant):
    config = drawn_config(seed)
    state = drawn_state(seed, config, variant)
    for event in enabled_events(config, state):
        nxt = apply_event(config, state, event)
        assert all(n & o == o for o, n in zip(state.received, nxt.received))


@given(seeds, variants)
@settings(max_examples=200, deadline=None)
def test_parent_is_write_once(seed, variant):
    config = drawn_config(seed)
    state = drawn_state(seed, config, variant)
    for event in enabled_events(config, state):
        nxt = apply_event(config, state, event)
        for before, after in zip(state.parent, nxt.parent):
            if before is not None:
                assert after == before


@given(seeds, variants)
@settings(max_examples=200, deadline=None)
def test_finish_is_stable(seed, variant):
    config = drawn_config(seed)
    state = drawn_state(seed, config, variant)
    if finish(config, state):
        for event in enabled_events(config, state):
            assert finish(config, apply_event(config, state, event))


@given(seeds, variants)
@settings(max_examples=200, deadline=None)
def test_well_formedness_is_preserved(seed, variant):
    config = drawn_config(seed)
    state = initial_state(config, variant)
    assert well_formed(config, state)
    state = drawn_state(seed, config, variant)
    assert well_formed(config, state)
    for event in enabled_events(config, state):
        assert well_formed(config, apply_event(config, state, event))


@given(seeds, variants)
@settings(max_examples=200, deadline=None)
def test_event_guard_agreement(seed, variant):
    # the inlined successor path and the validated single-event path agree,
    # and apply_event succeeds exactly on the enabled events
    config = drawn_config(seed)
    state = drawn_state(seed, config, variant)
    enabled = enabled_events(config, state)
    pairs = successors(config, state)
    assert [e for e, _ in pairs] == enabled
    for event, target in pairs:
        assert apply_event(config, state, event) == target
    for node in range(config.node_count):
        for kind, field in ((EXPLORER, state.inbox_explorer),
                            (ECHO, state.inbox_echo)):
            for sender in range(config.node_count):
                if not (field[node] >> sender) & 1:
                    with pytest.raises(EventNotEnabledError):
                        apply_event(config, state, Event(node, kind, sender))


@given(seeds, variants)
@settings(max_examples=200, deadline=None)
def test_message_conservation(seed, variant):
    # exactly the consumed entry disappears; additions stay within the
    # event's own sends (set semantics may collapse them into no-ops)
    config = drawn_config(seed)
    state = drawn_state(seed, config, variant)
    for event, nxt in successors(config, state):
        n, kind, m = event
        before = _message_set(state)
        after = _message_set(nxt)
        removed = before - after
        added = after - before
        assert removed == {(n, kind, m)}
        if kind == EXPLORER:
            others = config.adjacency[n] & ~(1 << m)
            if state.parent[n] is None and others:
                allowed = {(x, EXPLORER, n)
                           for x in range(config.node_count) if (others >> x) & 1}
            else:
                allowed = {(m, ECHO, n)}
        else:
            allowed = {(state.parent[n], ECHO, n)} if state.parent[n] is not None else set()
        assert added <= allowed


def _message_set(state):
    out = set()
    for node in range(len(state.parent)):
        for sender in range(len(state.parent)):
            if (state.inbox_explorer[node] >> sender) & 1:
                out.add((node, EXPLORER, sender))
            if (state.inbox_echo[node] >> sender) & 1:
                out.add((node, ECHO, sender))
    return out


@given(seeds)
@settings(max_examples=200, deadline=None)
def test_canonical_form_relabeling_invariance(seed):
    rng = random.Random(seed)
    config = random_config(rng, max_nodes=5)
    ids = list(range(config.node_count))
    rng.shuffle(ids)
    permuted = relabel(config, tuple(ids))
    assert is_valid_config(permuted)
    assert canonical_form(permuted) == canonical_form(config)


_verdicts = {}


def _cached_check(config, variant, prop):
    key = (config, variant, prop)
    if key not in _verdicts:
        check = check_correctness if prop == "correctness" else check_termination
        _verdicts[key] = check(config, variant)
    return _verdicts[key]


@given(seeds, variants, st.sampled_from(["correctness", "termination"]))
@settings(max_examples=200, deadline=None)
def test_witness_replays(seed, variant, prop):
    config = drawn_config(seed)
    verdict = _cached_check(config, variant, prop)
    if verdict.witness is not None:
        validate_trace(verdict.witness)
        if prop == "correctness":
            last = verdict.witness.states[-1]
            assert finish(config, last) and not spanning_tree(config, last)
