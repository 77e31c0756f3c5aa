"""Network configurations: rooted undirected graphs with a distinguished initiator.

A configuration is valid when it has no self loops, its adjacency is symmetric,
and every node is reachable from the initiator.  Adjacency rows are stored as
integer bit sets (bit j of ``adjacency[i]`` set iff i and j are neighbors),
which keeps state exploration and relabeling cheap for the node counts this
tool targets (at most 8).
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from math import comb
from typing import Iterable, Iterator, NamedTuple

Permutation = tuple[int, ...]

# Hard resource guard for enumeration and counting; beyond this the edge-subset
# sweeps stop being desk-scale.
MAX_NODES = 8


class ConfigShapeError(ValueError):
    """Structurally malformed configuration (wrong-length adjacency, member out
    of range).  Distinct from a well-shaped configuration that merely violates
    the validity rules, which yields a ``False`` verdict instead."""


def mask_of(nodes: Iterable[int]) -> int:
    m = 0
    for n in nodes:
        m |= 1 << n
    return m


def bits_of(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in ascending order."""
    while mask:
        b = mask & -mask
        mask ^= b
        yield b.bit_length() - 1


class Config(NamedTuple):
    node_count: int
    initiator: int
    adjacency: tuple[int, ...]

    @classmethod
    def from_edges(cls, node_count: int, initiator: int,
                   edges: Iterable[tuple[int, int]]) -> "Config":
        adj = [0] * node_count
        for i, j in edges:
            adj[i] |= 1 << j
            adj[j] |= 1 << i
        return cls(node_count, initiator, tuple(adj))

    def neighbors(self, n: int) -> list[int]:
        return list(bits_of(self.adjacency[n]))

    def edges(self) -> list[tuple[int, int]]:
        """Edge list with i < j, ascending."""
        out = []
        for i in range(self.node_count):
            m = self.adjacency[i] >> (i + 1)
            j = i + 1
            while m:
                if m & 1:
                    out.append((i, j))
                m >>= 1
                j += 1
        return out

    def to_text(self) -> str:
        edges = ",".join(f"{i}-{j}" for i, j in self.edges())
        return f"n={self.node_count} init={self.initiator} edges={edges}"

    @classmethod
    def from_text(cls, line: str) -> "Config":
        parts = line.strip().split(" ")
        if len(parts) != 3 or not parts[0].startswith("n=") \
                or not parts[1].startswith("init=") or not parts[2].startswith("edges="):
            raise ConfigShapeError(f"bad config line: {line!r}")
        try:
            n = int(parts[0][2:])
            init = int(parts[1][5:])
        except ValueError:
            raise ConfigShapeError(f"bad config line: {line!r}") from None
        if n < 1:
            raise ConfigShapeError(f"node count must be >= 1: {line!r}")
        if not 0 <= init < n:
            raise ConfigShapeError(f"initiator out of range: {line!r}")
        edge_text = parts[2][6:]
        edges: list[tuple[int, int]] = []
        if edge_text:
            for tok in edge_text.split(","):
                i_s, sep, j_s = tok.partition("-")
                if not sep:
                    raise ConfigShapeError(f"bad edge {tok!r} in {line!r}")
                try:
                    i, j = int(i_s), int(j_s)
                except ValueError:
                    raise ConfigShapeError(f"bad edge {tok!r} in {line!r}") from None
                if not (0 <= i < j < n):
                    raise ConfigShapeError(f"bad edge {tok!r} in {line!r}")
                if edges and (i, j) <= edges[-1]:
                    raise ConfigShapeError(f"edges out of order in {line!r}")
                edges.append((i, j))
        return cls.from_edges(n, init, edges)

    def to_json_dict(self) -> dict:
        return {"nodes": self.node_count, "initiator": self.initiator,
                "edges": [[i, j] for i, j in self.edges()]}

    @classmethod
    def from_json_dict(cls, obj: dict) -> "Config":
        try:
            n = int(obj["nodes"])
            init = int(obj["initiator"])
            raw = list(obj["edges"])
        except (KeyError, TypeError, ValueError):
            raise ConfigShapeError(f"bad config object: {obj!r}") from None
        if n < 1 or not 0 <= init < n:
            raise ConfigShapeError(f"bad config object: {obj!r}")
        edges: list[tuple[int, int]] = []
        for pair in raw:
            if len(pair) != 2:
                raise ConfigShapeError(f"bad edge {pair!r}")
            i, j = int(pair[0]), int(pair[1])
            if not (0 <= i < j < n):
                raise ConfigShapeError(f"bad edge {pair!r}")
            if edges and (i, j) <= edges[-1]:
                raise ConfigShapeError(f"edges out of order in {obj!r}")
            edges.append((i, j))
        return cls.from_edges(n, init, edges)


def _check_shape(c: Config) -> None:
    if c.node_count < 1:
        raise ConfigShapeError("node count must be >= 1")
    if len(c.adjacency) != c.node_count:
        raise ConfigShapeError("adjacency length differs from node count")
    full = (1 << c.node_count) - 1
    for m in c.adjacency:
        if m < 0 or m & ~full:
            raise ConfigShapeError("adjacency member out of range")


def _reach_mask(adjacency: tuple[int, ...], start: int) -> int:
    """Bit set of nodes reachable from ``start`` in one or more steps."""
    reached = 0
    frontier = adjacency[start]
    while frontier:
        reached |= frontier
        nxt = 0
        f = frontier
        while f:
            b = f & -f
            f ^= b
            nxt |= adjacency[b.bit_length() - 1]
        frontier = nxt & ~reached
    return reached


def is_valid_config(c: Config) -> bool:
    """Check the four configuration rules: initiator in range, no self loops,
    symmetric adjacency, every other node reachable from the initiator."""
    _check_shape(c)
    n = c.node_count
    if not 0 <= c.initiator < n:
        return False
    adj = c.adjacency
    for i in range(n):
        if (adj[i] >> i) & 1:
            return False
    for i in range(n):
        for j in bits_of(adj[i]):
            if not (adj[j] >> i) & 1:
                return False
    full = (1 << n) - 1
    return (_reach_mask(adj, c.initiator) | (1 << c.initiator)) == full


def reachable_set(c: Config, n: int) -> set[int]:
    """Nodes reachable from ``n`` by one or more adjacency steps; ``n`` itself
    is included only when some path leads back to it."""
    _check_shape(c)
    if not 0 <= n < c.node_count:
        raise ValueError(f"node {n} out of range")
    return set(bits_of(_reach_mask(c.adjacency, n)))


def is_permutation(p: Permutation, n: int) -> bool:
    return len(p) == n and sorted(p) == list(range(n))


def _relabel_adj(adjacency: tuple[int, ...], p: Permutation) -> tuple[int, ...]:
    new_adj = [0] * len(adjacency)
    for i, m in enumerate(adjacency):
        t = 0
        while m:
            b = m & -m
            m ^= b
            t |= 1 << p[b.bit_length() - 1]
        new_adj[p[i]] = t
    return tuple(new_adj)


def relabel(c: Config, p: Permutation) -> Config:
    """Rename nodes through ``p`` (old id -> new id), mapping the initiator too."""
    if not is_permutation(p, c.node_count):
        raise ValueError(f"not a permutation of 0..{c.node_count - 1}: {p!r}")
    return Config(c.node_count, p[c.initiator], _relabel_adj(c.adjacency, p))


@lru_cache(maxsize=None)
def _perms_fixing_zero(n: int) -> tuple[Permutation, ...]:
    return tuple((0,) + rest for rest in itertools.permutations(range(1, n)))


def canonical_form(c: Config) -> Config:
    """The fixed representative of c's rooted-isomorphism class: initiator
    relabeled to 0, adjacency encoding minimal over all relabelings of the
    remaining nodes (exhaustive over the (n-1)! candidates)."""
    if not is_valid_config(c):
        raise ValueError(f"invalid configuration: {c!r}")
    adj = c.adjacency
    if c.initiator != 0:
        swap = list(range(c.node_count))
        swap[0], swap[c.initiator] = c.initiator, 0
        adj = _relabel_adj(adj, tuple(swap))
    best = adj
    for p in _perms_fixing_zero(c.node_count):
        cand = _relabel_adj(adj, p)
        if cand < best:
            best = cand
    return Config(c.node_count, 0, best)


def automorphisms(c: Config) -> list[Permutation]:
    """All node relabelings that fix the initiator and map the adjacency onto
    itself.  The identity comes first; order is lexicographic."""
    if not is_valid_config(c):
        raise ValueError(f"invalid configuration: {c!r}")
    n = c.node_count
    rest = [i for i in range(n) if i != c.initiator]
    out = []
    for images in itertools.permutations(rest):
        p = [0] * n
        p[c.initiator] = c.initiator
        for src, dst in zip(rest, images):
            p[src] = dst
        pt = tuple(p)
        if _relabel_adj(c.adjacency, pt) == c.adjacency:
            out.append(pt)
    return out


def _iter_adjacencies(k: int, connected_only: bool = True) -> Iterator[tuple[int, ...]]:
    """All labeled undirected simple graphs on nodes 0..k-1 as adjacency
    bit-set tuples, by exhaustive edge-subset enumeration."""
    pairs = list(itertools.combinations(range(k), 2))
    full = (1 << k) - 1
    for sel in range(1 << len(pairs)):
        adj = [0] * k
        s = sel
        while s:
            b = s & -s
            s ^= b
            i, j = pairs[b.bit_length() - 1]
            adj[i] |= 1 << j
            adj[j] |= 1 << i
        t = tuple(adj)
        if connected_only and k > 1 and (_reach_mask(t, 0) | 1) != full:
            continue
        yield t


@lru_cache(maxsize=None)
def connected_graph_count(k: int) -> int:
    """Number of connected labeled graphs on k nodes, counted by enumerating
    all 2^(k(k-1)/2) edge subsets."""
    if not 1 <= k <= MAX_NODES:
        raise ValueError(f"node count {k} outside 1..{MAX_NODES}")
    return sum(1 for _ in _iter_adjacencies(k))


def count_labeled(universe_size: int) -> int:
    """Number of distinct labeled configurations over a universe of node
    identifiers: choose a nonempty node set, an initiator in it, and any
    connected simple graph on it."""
    if not 1 <= universe_size <= MAX_NODES:
        raise ValueError(f"universe size {universe_size} outside 1..{MAX_NODES}")
    return sum(comb(universe_size, k) * k * connected_graph_count(k)
               for k in range(1, universe_size + 1))


@lru_cache(maxsize=None)
def _canonical_adjacencies(k: int) -> tuple[tuple[int, ...], ...]:
    """Canonical adjacency encodings (root at node 0) of every rooted
    isomorphism class with exactly k nodes, ascending.

    Every (connected graph, root) pair is equivalent, after swapping the root
    to node 0, to some connected labeled graph rooted at 0; the classes are
    then the orbits of the permutations fixing 0.  Scanning encodings in
    ascending order and marking whole orbits visits each class exactly once,
    at its minimal encoding.
    """
    perms = _perms_fixing_zero(k)[1:]  # skip the identity
    assigned: set[tuple[int, ...]] = set()
    out = []
    for adj in sorted(_iter_adjacencies(k)):
        if adj in assigned:
            continue
        out.append(adj)
        for p in perms:
            assigned.add(_relabel_adj(adj, p))
    return tuple(out)


def enumerate_canonical(max_nodes: int) -> list[Config]:
    """Every isomorphism class of valid configurations with 1..max_nodes nodes,
    as canonical-form configs, sorted by node count then adjacency encoding."""
    if not 1 <= max_nodes <= MAX_NODES:
        raise ValueError(f"max_nodes {max_nodes} outside 1..{MAX_NODES}")
    return [Config(k, 0, adj)
            for k in range(1, max_nodes + 1)
            for adj in _canonical_adjacencies(k)]
