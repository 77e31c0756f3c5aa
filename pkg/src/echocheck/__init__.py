"""Explicit-state verifier for the Echo spanning-tree protocol.

The library enumerates every rooted network configuration up to a size
bound, runs the protocol's two correctness properties over each one, and
serves an interactive trace-exploration API; the ``echocheck`` command wraps
it all for the terminal.
"""

from .checker import (
    StateBudgetExceeded,
    SweepReport,
    Trace,
    Verdict,
    check_correctness,
    check_termination,
    explore,
    shortest_trace_to,
    sweep,
    trace_digest,
    validate_trace,
)
from .netconfig import (
    Config,
    ConfigShapeError,
    automorphisms,
    canonical_form,
    count_labeled,
    enumerate_canonical,
    is_valid_config,
    reachable_set,
    relabel,
)
from .protocol import (
    CHANG,
    ECHO,
    EXPLORER,
    FIXED,
    Event,
    ProtocolState,
    ancestors,
    apply_event,
    enabled_events,
    finish,
    initial_state,
    spanning_tree,
    well_formed,
)

__all__ = [
    "CHANG", "ECHO", "EXPLORER", "FIXED",
    "Config", "ConfigShapeError", "Event", "ProtocolState",
    "StateBudgetExceeded", "SweepReport", "Trace", "Verdict",
    "ancestors", "apply_event", "automorphisms", "canonical_form",
    "check_correctness", "check_termination", "count_labeled",
    "enabled_events", "enumerate_canonical", "explore", "finish",
    "initial_state", "is_valid_config", "reachable_set", "relabel",
    "shortest_trace_to", "spanning_tree", "sweep", "trace_digest",
    "validate_trace", "well_formed",
]

__version__ = "0.1.0"
