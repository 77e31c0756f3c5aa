"""Echo protocol semantics: per-node state, the two message events, and the
predicates the checker verifies.

A node's first Explorer fixes its parent and floods Explorers to its other
neighbors; any further Explorer (or a first one with no other neighbors) is
answered with an Echo to the sender.  Echoes are accumulated per node; once a
non-initiator holds echoes from every neighbor except its parent it echoes to
the parent.  The run is finished when the initiator has echoes from all its
neighbors.

Two protocol variants differ only in the initial state: the original one
(``chang``) starts with no parents anywhere, the repaired one (``fixed``)
starts with the initiator as its own parent, so it never treats an incoming
Explorer as its first.
"""

from __future__ import annotations

from typing import NamedTuple, Optional

from .netconfig import Config, bits_of, is_valid_config, mask_of

CHANG = "chang"
FIXED = "fixed"
VARIANTS = (CHANG, FIXED)

EXPLORER = "Explorer"
ECHO = "Echo"
MESSAGE_KINDS = (EXPLORER, ECHO)


class ProtocolState(NamedTuple):
    """Immutable per-node protocol state.

    ``parent`` holds one entry per node (None when unset).  The other three
    fields are bit sets per node: ``received`` records echo senders seen so
    far, and the two inbox fields record senders of pending Explorer/Echo
    messages.  Inboxes are sets, so duplicate sends coalesce.
    """

    parent: tuple[Optional[int], ...]
    received: tuple[int, ...]
    inbox_explorer: tuple[int, ...]
    inbox_echo: tuple[int, ...]


class Event(NamedTuple):
    """One protocol step: ``node`` consumes the pending ``kind`` message sent
    by ``sender``."""

    node: int
    kind: str
    sender: int


class EventNotEnabledError(ValueError):
    """Raised when an event is applied in a state where its message is not
    pending."""


def initial_state(config: Config, variant: str) -> ProtocolState:
    """The single initial state: no echoes received, the initiator's Explorer
    pending at each of its neighbors, and parents per the variant."""
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    if not is_valid_config(config):
        raise ValueError(f"invalid configuration: {config!r}")
    n = config.node_count
    init = config.initiator
    parent: list[Optional[int]] = [None] * n
    if variant == FIXED:
        parent[init] = init
    init_bit = 1 << init
    adj_init = config.adjacency[init]
    inbox_explorer = tuple(init_bit if (adj_init >> x) & 1 else 0 for x in range(n))
    return ProtocolState(tuple(parent), (0,) * n, inbox_explorer, (0,) * n)


def enabled_events(config: Config, state: ProtocolState) -> list[Event]:
    """One event per pending message, ordered by node, Explorer before Echo,
    then sender."""
    out = []
    for n in range(config.node_count):
        for m in bits_of(state.inbox_explorer[n]):
            out.append(Event(n, EXPLORER, m))
        for m in bits_of(state.inbox_echo[n]):
            out.append(Event(n, ECHO, m))
    return out


def successors(config: Config, state: ProtocolState) -> list[tuple[Event, ProtocolState]]:
    """All enabled events with their post-states, in ``enabled_events`` order.

    This is the exploration hot path; the event semantics are inlined rather
    than routed through :func:`apply_event`, and the two paths are held
    together by the event/guard agreement tests.
    """
    initiator = config.initiator
    adj = config.adjacency
    parent, received, inbox_explorer, inbox_echo = state
    out = []
    for n in range(config.node_count):
        em = inbox_explorer[n]
        if em:
            adj_n = adj[n]
            par_n = parent[n]
            n_bit = 1 << n
            while em:
                b = em & -em
                em ^= b
                m = b.bit_length() - 1
                if par_n is None:
                    new_parent = parent[:n] + (m,) + parent[n + 1:]
                else:
                    new_parent = parent
                others = adj_n & ~b
                if par_n is None and others:
                    nie = list(inbox_explorer)
                    nie[n] &= ~b
                    o = others
                    while o:
                        ob = o & -o
                        o ^= ob
                        nie[ob.bit_length() - 1] |= n_bit
                    nxt = ProtocolState(new_parent, received, tuple(nie), inbox_echo)
                else:
                    nie = inbox_explorer[:n] + (inbox_explorer[n] & ~b,) + inbox_explorer[n + 1:]
                    nio = inbox_echo[:m] + (inbox_echo[m] | n_bit,) + inbox_echo[m + 1:]
                    nxt = ProtocolState(new_parent, received, nie, nio)
                out.append((Event(n, EXPLORER, m), nxt))
        om = inbox_echo[n]
        if om:
            adj_n = adj[n]
            par_n = parent[n]
            while om:
                b = om & -om
                om ^= b
                m = b.bit_length() - 1
                new_rec_n = received[n] | b
                nio = list(inbox_echo)
                nio[n] &= ~b
                if n != initiator and par_n is not None \
                        and new_rec_n == adj_n & ~(1 << par_n):
                    nio[par_n] |= 1 << n
                nxt = ProtocolState(parent,
                                    received[:n] + (new_rec_n,) + received[n + 1:],
                                    inbox_explorer, tuple(nio))
                out.append((Event(n, ECHO, m), nxt))
    return out


def apply_event(config: Config, state: ProtocolState, event: Event) -> ProtocolState:
    """Apply one enabled event; raises EventNotEnabledError otherwise."""
    n, kind, m = event
    if not (0 <= n < config.node_count and 0 <= m < config.node_count):
        raise EventNotEnabledError(f"event out of range: {event!r}")
    b = 1 << m
    if kind == EXPLORER:
        if not state.inbox_explorer[n] & b:
            raise EventNotEnabledError(f"no pending Explorer from {m} at {n}")
        parent = state.parent
        if parent[n] is None:
            parent = parent[:n] + (m,) + parent[n + 1:]
        others = config.adjacency[n] & ~b
        inbox_explorer = list(state.inbox_explorer)
        inbox_explorer[n] &= ~b
        inbox_echo = state.inbox_echo
        if state.parent[n] is None and others:
            for x in bits_of(others):
                inbox_explorer[x] |= 1 << n
        else:
            inbox_echo = inbox_echo[:m] + (inbox_echo[m] | (1 << n),) + inbox_echo[m + 1:]
        return ProtocolState(parent, state.received, tuple(inbox_explorer), inbox_echo)
    if kind == ECHO:
        if not state.inbox_echo[n] & b:
            raise EventNotEnabledError(f"no pending Echo from {m} at {n}")
        new_rec_n = state.received[n] | b
        inbox_echo = list(state.inbox_echo)
        inbox_echo[n] &= ~b
        par_n = state.parent[n]
        if n != config.initiator and par_n is not None \
                and new_rec_n == config.adjacency[n] & ~(1 << par_n):
            inbox_echo[par_n] |= 1 << n
        return ProtocolState(state.parent,
                             state.received[:n] + (new_rec_n,) + state.received[n + 1:],
                             state.inbox_explorer, tuple(inbox_echo))
    raise EventNotEnabledError(f"unknown message kind {kind!r}")


def finish(config: Config, state: ProtocolState) -> bool:
    """True when the initiator has received echoes from all its neighbors."""
    return state.received[config.initiator] == config.adjacency[config.initiator]


def ancestors(state: ProtocolState, n: int) -> set[int]:
    """Nodes reachable from ``n`` by one or more parent steps.  An unset
    parent ends the chain; a self-parent contributes itself."""
    seen = 0
    cur = state.parent[n]
    while cur is not None and not (seen >> cur) & 1:
        seen |= 1 << cur
        cur = state.parent[cur]
    return set(bits_of(seen))


def spanning_tree(config: Config, state: ProtocolState) -> bool:
    """True when every non-initiator has the initiator among its ancestors."""
    initiator = config.initiator
    parent = state.parent
    for x in range(config.node_count):
        if x == initiator:
            continue
        seen = 0
        cur = parent[x]
        while True:
            if cur is None:
                return False
            if cur == initiator:
                break
            if (seen >> cur) & 1:
                return False
            seen |= 1 << cur
            cur = parent[cur]
    return True


def well_formed(config: Config, state: ProtocolState) -> bool:
    """Runtime type check: every field has one entry per node, parents are
    node ids or None, and all bit sets stay within the node range.  Contents
    are only bounded by the node set, not by the adjacency."""
    n = config.node_count
    if len(state.parent) != n or len(state.received) != n \
            or len(state.inbox_explorer) != n or len(state.inbox_echo) != n:
        return False
    full = (1 << n) - 1
    for p in state.parent:
        if p is not None and not (isinstance(p, int) and 0 <= p < n):
            return False
    for field in (state.received, state.inbox_explorer, state.inbox_echo):
        for m in field:
            if not (isinstance(m, int) and 0 <= m <= full):
                return False
    return True


def relabel_state(state: ProtocolState, p: tuple[int, ...]) -> ProtocolState:
    """Rename every node id in the state through the permutation ``p``."""
    n = len(state.parent)
    parent: list[Optional[int]] = [None] * n
    received = [0] * n
    inbox_explorer = [0] * n
    inbox_echo = [0] * n
    for i in range(n):
        j = p[i]
        if state.parent[i] is not None:
            parent[j] = p[state.parent[i]]
        received[j] = _relabel_mask(state.received[i], p)
        inbox_explorer[j] = _relabel_mask(state.inbox_explorer[i], p)
        inbox_echo[j] = _relabel_mask(state.inbox_echo[i], p)
    return ProtocolState(tuple(parent), tuple(received),
                         tuple(inbox_explorer), tuple(inbox_echo))


def _relabel_mask(mask: int, p: tuple[int, ...]) -> int:
    t = 0
    while mask:
        b = mask & -mask
        mask ^= b
        t |= 1 << p[b.bit_length() - 1]
    return t


def relabel_event(event: Event, p: tuple[int, ...]) -> Event:
    return Event(p[event.node], event.kind, p[event.sender])


def state_to_json(state: ProtocolState) -> dict:
    """JSON form with a merged per-node inbox list, Explorer records first."""
    inbox = []
    for n in range(len(state.parent)):
        entries = [{"from": m, "type": EXPLORER} for m in bits_of(state.inbox_explorer[n])]
        entries += [{"from": m, "type": ECHO} for m in bits_of(state.inbox_echo[n])]
        inbox.append(entries)
    return {
        "parent": list(state.parent),
        "received": [sorted(bits_of(m)) for m in state.received],
        "inbox": inbox,
    }


def state_from_json(obj: dict) -> ProtocolState:
    parent = tuple(None if p is None else int(p) for p in obj["parent"])
    received = tuple(mask_of(int(x) for x in row) for row in obj["received"])
    n = len(parent)
    inbox_explorer = [0] * n
    inbox_echo = [0] * n
    for i, entries in enumerate(obj["inbox"]):
        for rec in entries:
            if rec["type"] == EXPLORER:
                inbox_explorer[i] |= 1 << int(rec["from"])
            elif rec["type"] == ECHO:
                inbox_echo[i] |= 1 << int(rec["from"])
            else:
                raise ValueError(f"unknown message kind {rec['type']!r}")
    return ProtocolState(parent, received, tuple(inbox_explorer), tuple(inbox_echo))


def event_to_json(event: Event) -> dict:
    return {"node": event.node, "kind": event.kind, "from": event.sender}


def event_from_json(obj: dict) -> Event:
    kind = obj["kind"]
    if kind not in MESSAGE_KINDS:
        raise ValueError(f"unknown message kind {kind!r}")
    return Event(int(obj["node"]), kind, int(obj["from"]))
