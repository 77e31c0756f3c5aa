"""Shared generators for randomized tests: valid configurations and
reachable protocol states."""

import itertools
import random

from echocheck.netconfig import Config
from echocheck.protocol import initial_state, successors


def random_config(rng: random.Random, max_nodes: int = 4) -> Config:
    """Random valid configuration: a random spanning tree keeps it connected,
    extra edges and the initiator are drawn freely."""
    n = rng.randint(1, max_nodes)
    edges = set()
    for i in range(1, n):
        edges.add((rng.randrange(i), i))
    for i, j in itertools.combinations(range(n), 2):
        if rng.random() < 0.3:
            edges.add((i, j))
    return Config.from_edges(n, rng.randrange(n), sorted(edges))


def random_walk(rng: random.Random, config: Config, variant: str,
                max_steps: int = 12):
    """A random reachable state with the event path that produced it."""
    state = initial_state(config, variant)
    path = []
    for _ in range(rng.randint(0, max_steps)):
        options = successors(config, state)
        if not options:
            break
        event, state = options[rng.randrange(len(options))]
        path.append(event)
    return state, path
