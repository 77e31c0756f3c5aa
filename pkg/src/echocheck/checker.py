"""Explicit-state checking of the Echo protocol, one configuration at a time.

Exploration is breadth-first with exact state deduplication (full state
values, no hashed fingerprints).  Successor events are always generated in
the deterministic order of :func:`echocheck.protocol.enabled_events`, so
explorations, witnesses, and reports are reproducible byte for byte.

Verified properties:

* correctness: every reachable state satisfies finish => spanning_tree;
* termination: under weak fairness of the whole event relation, every run
  reaches finish.  On the finite graph this reduces to the subgraph of
  unfinished states reachable through unfinished states: a violation is
  either a state there with no enabled events at all (a fair run may stutter
  in it forever) or a cycle of events (a fair run may loop forever).

Since echo receipts only accumulate, finish is stable, so the restricted
subgraph is exactly the reachable unfinished states; the search below simply
never expands a finished state.
"""

from __future__ import annotations

import hashlib
import json
import time
from dataclasses import dataclass, field
from typing import Callable, Optional

from .netconfig import Config, automorphisms, enumerate_canonical
from .protocol import (
    Event,
    ProtocolState,
    VARIANTS,
    apply_event,
    event_from_json,
    event_to_json,
    finish,
    initial_state,
    relabel_state,
    spanning_tree,
    state_from_json,
    state_to_json,
    successors,
)

PASS = "pass"
VIOLATION = "violation"
INCONCLUSIVE = "inconclusive"

REASON_INVARIANT = "invariant-violation"
REASON_DEADLOCK = "deadlock"
REASON_CYCLE = "non-progress-cycle"

PROPERTIES = ("correctness", "termination")

TARGET_PREDICATES: dict[str, Callable[[Config, ProtocolState], bool]] = {
    "finish": finish,
    "finish-and-not-spanning-tree":
        lambda c, s: finish(c, s) and not spanning_tree(c, s),
}


@dataclass(frozen=True)
class Stats:
    states: int
    transitions: int
    millis: int


class StateBudgetExceeded(Exception):
    """Exploration hit its state budget; carries the partial statistics."""

    def __init__(self, budget: int, stats: Stats):
        super().__init__(f"state budget of {budget} exceeded")
        self.budget = budget
        self.stats = stats


@dataclass
class Trace:
    """A finite run.  Without ``loop_start`` the final state repeats forever
    (terminal stutter); with it, the run is a lasso: the final state equals
    ``states[loop_start]`` and the segment between them repeats forever, the
    closing transition being the last entry of ``events``."""

    config: Config
    variant: str
    states: list[ProtocolState]
    events: list[Event]
    loop_start: Optional[int] = None


@dataclass
class Verdict:
    outcome: str                      # PASS or VIOLATION
    stats: Stats
    reason: Optional[str] = None      # set on VIOLATION
    witness: Optional[Trace] = None   # set on VIOLATION


@dataclass
class StateGraph:
    config: Config
    variant: str
    states: list[ProtocolState]
    edges: list[list[tuple[Event, int]]]
    stats: Stats


@dataclass
class SweepEntry:
    config: Config
    outcome: str                      # PASS, VIOLATION or INCONCLUSIVE
    reason: Optional[str]
    witness: Optional[Trace]
    stats: Stats


@dataclass
class SweepReport:
    property_name: str
    variant: str
    max_nodes: int
    entries: list[SweepEntry] = field(default_factory=list)

    @property
    def violations(self) -> int:
        return sum(1 for e in self.entries if e.outcome == VIOLATION)

    def to_json_dict(self, no_timing: bool = False) -> dict:
        results = []
        for e in self.entries:
            results.append({
                "config": e.config.to_json_dict(),
                "outcome": e.outcome,
                "reason": e.reason,
                "witness": None if e.witness is None else trace_to_json(e.witness),
                "states": e.stats.states,
                "transitions": e.stats.transitions,
                "millis": 0 if no_timing else e.stats.millis,
            })
        return {
            "property": self.property_name,
            "variant": self.variant,
            "max_nodes": self.max_nodes,
            "results": results,
            "violations": self.violations,
        }


def _check_inputs(config: Config, variant: str) -> None:
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")


class _Search:
    """Breadth-first frontier with first-discovery predecessors, optionally
    quotiented by the configuration's automorphisms."""

    def __init__(self, config: Config, variant: str,
                 state_budget: Optional[int], symmetry: bool):
        _check_inputs(config, variant)
        self.config = config
        self.variant = variant
        self.budget = state_budget
        self.autos = automorphisms(config)[1:] if symmetry else []
        self.t0 = time.perf_counter()
        self.transitions = 0
        init = self.reduce(initial_state(config, variant))
        self.states: list[ProtocolState] = [init]
        self.index: dict[ProtocolState, int] = {init: 0}
        self.preds: list[Optional[tuple[int, Event]]] = [None]

    def reduce(self, state: ProtocolState) -> ProtocolState:
        if not self.autos:
            return state
        best = state
        best_key = _state_key(state)
        for p in self.autos:
            cand = relabel_state(state, p)
            key = _state_key(cand)
            if key < best_key:
                best, best_key = cand, key
        return best

    def add(self, source: int, event: Event, state: ProtocolState) -> int:
        """Record one transition; returns the (possibly new) target index."""
        self.transitions += 1
        state = self.reduce(state)
        j = self.index.get(state)
        if j is None:
            j = len(self.states)
            self.index[state] = j
            self.states.append(state)
            self.preds.append((source, event))
            if self.budget is not None and j + 1 > self.budget:
                raise StateBudgetExceeded(self.budget, self.stats())
        return j

    def stats(self) -> Stats:
        millis = int((time.perf_counter() - self.t0) * 1000)
        return Stats(len(self.states), self.transitions, millis)

    def trace_to(self, idx: int) -> Trace:
        path_states: list[ProtocolState] = []
        path_events: list[Event] = []
        while True:
            path_states.append(self.states[idx])
            pred = self.preds[idx]
            if pred is None:
                break
            idx, event = pred
            path_events.append(event)
        path_states.reverse()
        path_events.reverse()
        return Trace(self.config, self.variant, path_states, path_events)


def _state_key(s: ProtocolState):
    return (tuple(-1 if p is None else p for p in s.parent),
            s.received, s.inbox_explorer, s.inbox_echo)


def explore(config: Config, variant: str,
            state_budget: Optional[int] = None,
            symmetry: bool = False) -> StateGraph:
    """The full reachable state graph with every labeled transition.

    With ``symmetry`` the graph is quotiented by the configuration's
    automorphisms: states are canonical representatives and transitions point
    between representatives.
    """
    search = _Search(config, variant, state_budget, symmetry)
    edges: list[list[tuple[Event, int]]] = []
    i = 0
    while i < len(search.states):
        row = [(e, search.add(i, e, t))
               for e, t in successors(config, search.states[i])]
        edges.append(row)
        i += 1
    return StateGraph(config, variant, search.states, edges, search.stats())


def shortest_trace_to(config: Config, variant: str, target: str,
                      max_depth: Optional[int] = None,
                      state_budget: Optional[int] = None) -> Optional[Trace]:
    """Minimum-length trace from the initial state to a state satisfying the
    named target predicate, or None if none is reachable (within the optional
    depth bound).  Ties follow the deterministic event order."""
    try:
        pred = TARGET_PREDICATES[target]
    except KeyError:
        raise ValueError(f"unknown target {target!r}; "
                         f"known: {sorted(TARGET_PREDICATES)}") from None
    search = _Search(config, variant, state_budget, symmetry=False)
    if pred(config, search.states[0]):
        return search.trace_to(0)
    depth = [0]
    i = 0
    while i < len(search.states):
        if max_depth is not None and depth[i] >= max_depth:
            break
        for e, t in successors(config, search.states[i]):
            known = len(search.states)
            j = search.add(i, e, t)
            if j >= known:
                depth.append(depth[i] + 1)
                if pred(config, t):
                    return search.trace_to(j)
        i += 1
    return None


def check_correctness(config: Config, variant: str,
                      state_budget: Optional[int] = None,
                      symmetry: bool = False) -> Verdict:
    """Pass iff finish => spanning_tree in every reachable state; otherwise a
    shortest-by-depth witness ending in finish without a spanning tree."""
    search = _Search(config, variant, state_budget, symmetry)
    bad = TARGET_PREDICATES["finish-and-not-spanning-tree"]

    def violation(idx: int) -> Verdict:
        if symmetry:
            # quotient states need not replay concretely; rebuild the witness
            # with an unreduced search
            witness = shortest_trace_to(config, variant,
                                        "finish-and-not-spanning-tree",
                                        state_budget=state_budget)
        else:
            witness = search.trace_to(idx)
        return Verdict(VIOLATION, search.stats(), REASON_INVARIANT, witness)

    if bad(config, search.states[0]):
        return violation(0)
    i = 0
    while i < len(search.states):
        for e, t in successors(config, search.states[i]):
            known = len(search.states)
            j = search.add(i, e, t)
            if j >= known and bad(config, search.states[j]):
                return violation(j)
        i += 1
    return Verdict(PASS, search.stats())


def check_termination(config: Config, variant: str,
                      state_budget: Optional[int] = None,
                      symmetry: bool = False) -> Verdict:
    """Pass iff no weakly-fair run avoids finish forever.

    Searches the subgraph of unfinished states (finished states are recorded
    but never expanded).  A violation is an unfinished state with no enabled
    events (deadlock, witnessed by a stutter-terminated trace) or a cycle of
    events among unfinished states (witnessed by a lasso).
    """
    search = _Search(config, variant, state_budget, symmetry)

    def rebuilt() -> Verdict:
        # quotient witnesses need not replay concretely; redo without symmetry
        concrete = check_termination(config, variant, state_budget, symmetry=False)
        if concrete.outcome != VIOLATION:
            raise AssertionError("quotient violation without a concrete one")
        return Verdict(VIOLATION, search.stats(), concrete.reason, concrete.witness)

    finished = [finish(config, search.states[0])]
    edges: dict[int, list[tuple[Event, int]]] = {}
    i = 0
    while i < len(search.states):
        if not finished[i]:
            row = []
            pairs = successors(config, search.states[i])
            if not pairs:
                if symmetry:
                    return rebuilt()
                return Verdict(VIOLATION, search.stats(),
                               REASON_DEADLOCK, search.trace_to(i))
            for e, t in pairs:
                known = len(search.states)
                j = search.add(i, e, t)
                if j >= known:
                    finished.append(finish(config, search.states[j]))
                row.append((e, j))
            edges[i] = row
        i += 1

    remaining = _cyclic_part(edges, finished)
    if not remaining:
        return Verdict(PASS, search.stats())
    if symmetry:
        return rebuilt()
    entry = min(remaining)
    prefix = search.trace_to(entry)
    states, events = prefix.states, prefix.events
    position = {entry: len(states) - 1}
    current = entry
    while True:
        event, nxt = next((e, j) for e, j in edges[current] if j in remaining)
        events.append(event)
        states.append(search.states[nxt])
        if nxt in position:
            loop_start = position[nxt]
            break
        position[nxt] = len(states) - 1
        current = nxt
    witness = Trace(config, variant, states, events, loop_start)
    return Verdict(VIOLATION, search.stats(), REASON_CYCLE, witness)


def _cyclic_part(edges: dict[int, list[tuple[Event, int]]],
                 finished: list[bool]) -> set[int]:
    """Nodes of the unfinished subgraph from which events can fire forever:
    iteratively peel states whose every same-subgraph successor was peeled."""
    out_deg = {}
    rev: dict[int, list[int]] = {}
    for i, row in edges.items():
        inside = [j for _, j in row if not finished[j]]
        out_deg[i] = len(inside)
        for j in inside:
            rev.setdefault(j, []).append(i)
    stack = [i for i, d in out_deg.items() if d == 0]
    while stack:
        j = stack.pop()
        for i in rev.get(j, ()):
            out_deg[i] -= 1
            if out_deg[i] == 0:
                stack.append(i)
    return {i for i, d in out_deg.items() if d > 0}


_CHECKS = {"correctness": check_correctness, "termination": check_termination}


def sweep(max_nodes: int, variant: str, property_name: str,
          state_budget: Optional[int] = None,
          symmetry: bool = False) -> SweepReport:
    """Run one property check over every canonical configuration with up to
    ``max_nodes`` nodes.  Budget blow-ups mark the configuration inconclusive
    without aborting the sweep."""
    if not 1 <= max_nodes <= 6:
        raise ValueError(f"max_nodes {max_nodes} outside 1..6")
    if property_name not in _CHECKS:
        raise ValueError(f"unknown property {property_name!r}")
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    check = _CHECKS[property_name]
    report = SweepReport(property_name, variant, max_nodes)
    for config in enumerate_canonical(max_nodes):
        try:
            verdict = check(config, variant, state_budget, symmetry)
            entry = SweepEntry(config, verdict.outcome, verdict.reason,
                               verdict.witness, verdict.stats)
        except StateBudgetExceeded as exc:
            entry = SweepEntry(config, INCONCLUSIVE, "state-budget-exceeded",
                               None, exc.stats)
        report.entries.append(entry)
    return report


def validate_trace(trace: Trace) -> None:
    """Replay a trace from the initial state; raises ValueError on any
    mismatch with the recorded states or the lasso closure."""
    if not trace.states:
        raise ValueError("empty trace")
    if len(trace.events) != len(trace.states) - 1:
        raise ValueError("event count must be one less than state count")
    if trace.states[0] != initial_state(trace.config, trace.variant):
        raise ValueError("trace does not start in the initial state")
    current = trace.states[0]
    for step, (event, expected) in enumerate(zip(trace.events, trace.states[1:])):
        current = apply_event(trace.config, current, event)
        if current != expected:
            raise ValueError(f"state {step + 1} does not match its event")
    if trace.loop_start is not None:
        if not 0 <= trace.loop_start < len(trace.states) - 1:
            raise ValueError("loop start out of range")
        if trace.states[-1] != trace.states[trace.loop_start]:
            raise ValueError("lasso does not close")


def trace_to_json(trace: Trace) -> dict:
    return {
        "config": trace.config.to_json_dict(),
        "variant": trace.variant,
        "states": [state_to_json(s) for s in trace.states],
        "events": [event_to_json(e) for e in trace.events],
        "loop_start": trace.loop_start,
    }


def trace_from_json(obj: dict) -> Trace:
    return Trace(
        Config.from_json_dict(obj["config"]),
        obj["variant"],
        [state_from_json(s) for s in obj["states"]],
        [event_from_json(e) for e in obj["events"]],
        obj["loop_start"],
    )


def trace_digest(trace: Trace) -> str:
    """Stable identity of a trace: configuration, variant, and the event
    sequence (the state sequence is determined by these)."""
    payload = json.dumps({
        "config": trace.config.to_json_dict(),
        "variant": trace.variant,
        "events": [event_to_json(e) for e in trace.events],
        "loop_start": trace.loop_start,
    }, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(payload.encode()).hexdigest()
