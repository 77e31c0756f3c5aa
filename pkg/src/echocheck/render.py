"""Human-readable rendering: node letters, per-state variable diffs for
traces, and report summaries.  Output is deterministic."""

from __future__ import annotations

from .checker import SweepReport, Trace, VIOLATION, INCONCLUSIVE
from .netconfig import bits_of
from .protocol import ProtocolState


def node_name(i: int) -> str:
    """0, 1, 2... shown as a, b, c... to match hand-drawn network figures."""
    return chr(ord("a") + i)


def _parent_text(state: ProtocolState) -> str:
    cells = ", ".join(
        f"{node_name(i)} :> {'None' if p is None else node_name(p)}"
        for i, p in enumerate(state.parent))
    return f"({cells})"


def _received_text(state: ProtocolState) -> str:
    cells = ", ".join(
        "%s :> {%s}" % (node_name(i), ", ".join(node_name(x) for x in bits_of(m)))
        for i, m in enumerate(state.received))
    return f"({cells})"


def _inbox_text(state: ProtocolState) -> str:
    cells = []
    for i in range(len(state.parent)):
        msgs = [f"Explorer from {node_name(m)}" for m in bits_of(state.inbox_explorer[i])]
        msgs += [f"Echo from {node_name(m)}" for m in bits_of(state.inbox_echo[i])]
        cells.append("%s :> {%s}" % (node_name(i), ", ".join(msgs)))
    return "(%s)" % ", ".join(cells)


def trace_text(trace: Trace) -> str:
    """TLC-like textual trace: the first state in full, later states showing
    only the variables the event changed."""
    lines = []
    previous = None
    for i, state in enumerate(trace.states):
        if i == 0:
            lines.append("State 1: initial")
        else:
            e = trace.events[i - 1]
            lines.append(f"State {i + 1}: {node_name(e.node)} receives "
                         f"{e.kind} from {node_name(e.sender)}")
        rows = [
            ("parent", _parent_text(state),
             previous is None or state.parent != previous.parent),
            ("received", _received_text(state),
             previous is None or state.received != previous.received),
            ("inbox", _inbox_text(state),
             previous is None or state.inbox_explorer != previous.inbox_explorer
             or state.inbox_echo != previous.inbox_echo),
        ]
        for name, text, changed in rows:
            if changed:
                lines.append(f"  {name:<8} = {text}")
        lines.append("")
        previous = state
    if trace.loop_start is not None:
        lines.append(f"Loop: state {len(trace.states)} equals state "
                     f"{trace.loop_start + 1}; the segment between them repeats forever.")
    else:
        lines.append(f"Stuttering: state {len(trace.states)} repeats forever.")
    return "\n".join(lines)


def report_text(report: SweepReport, show_timing: bool = True) -> str:
    """One-screen sweep summary listing each non-passing configuration."""
    lines = [f"property={report.property_name} variant={report.variant} "
             f"max_nodes={report.max_nodes}"]
    passed = sum(1 for e in report.entries if e.outcome == "pass")
    inconclusive = sum(1 for e in report.entries if e.outcome == INCONCLUSIVE)
    lines.append(f"configs: {len(report.entries)}  pass: {passed}  "
                 f"violations: {report.violations}  inconclusive: {inconclusive}")
    for e in report.entries:
        if e.outcome == VIOLATION:
            w = f", witness {len(e.witness.states)} states" if e.witness else ""
            lines.append(f"violation: {e.config.to_text()} ({e.reason}{w})")
        elif e.outcome == INCONCLUSIVE:
            lines.append(f"inconclusive: {e.config.to_text()} ({e.reason})")
    states = sum(e.stats.states for e in report.entries)
    transitions = sum(e.stats.transitions for e in report.entries)
    total = f"states: {states}  transitions: {transitions}"
    if show_timing:
        total += f"  millis: {sum(e.stats.millis for e in report.entries)}"
    lines.append(total)
    return "\n".join(lines)
