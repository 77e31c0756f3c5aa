// Pure rendering: every function maps service payloads to markup strings,
// so the whole module is testable without a DOM.  Graph layout is a fixed
// circle by node id; the initiator is drawn green; parent pointers are drawn
// as arrows distinct from the gray adjacency edges; values that differ from
// the pre-state are marked with class="changed".

import type {
  ConfigJson,
  EventJson,
  StateJson,
  StepView,
  TraceJson,
} from "./types.js";

export function nodeName(i: number): string {
  return String.fromCharCode("a".charCodeAt(0) + i);
}

export function describeEvent(e: EventJson): string {
  return `${nodeName(e.node)} receives ${e.kind} from ${nodeName(e.from)}`;
}

export function configLabel(config: ConfigJson): string {
  const edges = config.edges
    .map(([i, j]) => `${nodeName(i)}–${nodeName(j)}`)
    .join(", ");
  return `${config.nodes} node${config.nodes === 1 ? "" : "s"}, initiator ${
    nodeName(config.initiator)}${edges ? ", edges " + edges : ""}`;
}

export function circleLayout(n: number): { x: number; y: number }[] {
  const out = [];
  for (let i = 0; i < n; i++) {
    const angle = (2 * Math.PI * i) / n;
    out.push({ x: Math.sin(angle), y: -Math.cos(angle) });
  }
  return out;
}

function escapeHtml(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function messageText(m: { from: number; type: string }): string {
  return `${m.type} from ${nodeName(m.from)}`;
}

function sameJson(a: unknown, b: unknown): boolean {
  return JSON.stringify(a) === JSON.stringify(b);
}

const SIZE = 240;
const RADIUS = 86;

function point(layout: { x: number; y: number }[], i: number) {
  const p = layout[i]!;
  return { x: SIZE / 2 + RADIUS * p.x, y: SIZE / 2 + RADIUS * p.y };
}

export function renderGraphSvg(config: ConfigJson, state: StateJson,
                               prev: StateJson | null): string {
  const layout = circleLayout(config.nodes);
  const parts: string[] = [];
  parts.push(`<svg viewBox="0 0 ${SIZE} ${SIZE}" class="net" role="img">`);
  parts.push(`<defs><marker id="arrow" markerWidth="7" markerHeight="7" ` +
    `refX="6" refY="3.5" orient="auto"><path d="M0,0 L7,3.5 L0,7 z"/></marker></defs>`);
  for (const [i, j] of config.edges) {
    const a = point(layout, i);
    const b = point(layout, j);
    parts.push(`<line class="adj" x1="${a.x.toFixed(1)}" y1="${a.y.toFixed(1)}" ` +
      `x2="${b.x.toFixed(1)}" y2="${b.y.toFixed(1)}"/>`);
  }
  state.parent.forEach((parent, i) => {
    if (parent === null || parent === i) return;
    const a = point(layout, i);
    const b = point(layout, parent);
    // stop short of the target node circle so the arrowhead stays visible
    const dx = b.x - a.x;
    const dy = b.y - a.y;
    const len = Math.hypot(dx, dy) || 1;
    const tx = b.x - (dx / len) * 18;
    const ty = b.y - (dy / len) * 18;
    const changed = prev !== null && prev.parent[i] !== parent;
    parts.push(`<line class="parent${changed ? " changed" : ""}" ` +
      `x1="${a.x.toFixed(1)}" y1="${a.y.toFixed(1)}" ` +
      `x2="${tx.toFixed(1)}" y2="${ty.toFixed(1)}" marker-end="url(#arrow)"/>`);
  });
  for (let i = 0; i < config.nodes; i++) {
    const c = point(layout, i);
    const cls = i === config.initiator ? "node initiator" : "node";
    const self = state.parent[i] === i ? " self-parent" : "";
    parts.push(`<circle class="${cls}${self}" cx="${c.x.toFixed(1)}" ` +
      `cy="${c.y.toFixed(1)}" r="14"/>`);
    parts.push(`<text class="label" x="${c.x.toFixed(1)}" ` +
      `y="${(c.y + 4).toFixed(1)}">${nodeName(i)}</text>`);
  }
  parts.push("</svg>");
  return parts.join("");
}

function attributeRows(config: ConfigJson, state: StateJson,
                       prev: StateJson | null): string {
  const rows: string[] = [];
  for (let i = 0; i < config.nodes; i++) {
    const parent = state.parent[i] ?? null;
    const parentText = parent === null ? "—" : nodeName(parent);
    const receivedText = (state.received[i] ?? []).map(nodeName).join(", ");
    const inboxText = (state.inbox[i] ?? []).map(messageText).join("; ");
    const mark = (changed: boolean) => (changed ? ` class="changed"` : "");
    const parentChanged = prev !== null && prev.parent[i] !== parent;
    const receivedChanged = prev !== null &&
      !sameJson(prev.received[i], state.received[i]);
    const inboxChanged = prev !== null && !sameJson(prev.inbox[i], state.inbox[i]);
    rows.push(
      `<tr data-node="${i}"><th>${nodeName(i)}</th>` +
      `<td${mark(parentChanged)}>${parentText}</td>` +
      `<td${mark(receivedChanged)}>{${escapeHtml(receivedText)}}</td>` +
      `<td${mark(inboxChanged)}>{${escapeHtml(inboxText)}}</td></tr>`);
  }
  return rows.join("");
}

export function renderStatePanel(config: ConfigJson, state: StateJson,
                                 prev: StateJson | null, title: string): string {
  // data-state carries the exact payload so tests (and debugging) can verify
  // the display matches the server byte for byte
  const payload = escapeHtml(JSON.stringify(state));
  return [
    `<section class="panel" data-state="${payload}">`,
    `<h3>${escapeHtml(title)}</h3>`,
    renderGraphSvg(config, state, prev),
    `<table class="attrs"><thead><tr><th></th><th>parent</th>` +
    `<th>received</th><th>inbox</th></tr></thead><tbody>`,
    attributeRows(config, state, prev),
    `</tbody></table>`,
    `</section>`,
  ].join("");
}

export function renderSplitPanel(trace: TraceJson, index: number,
                                 step: StepView | null): string {
  const pre = trace.states[index];
  if (pre === undefined) {
    throw new Error(`step ${index} out of range`);
  }
  const event = index < trace.events.length ? trace.events[index]! : null;
  const post = event === null ? pre : trace.states[index + 1]!;
  const caption = event === null
    ? "stuttering (no variable changes)"
    : describeEvent(event);
  const badges: string[] = [];
  if (step !== null) {
    badges.push(`<span class="badge ${step.finish ? "on" : "off"}">finish</span>`);
    badges.push(`<span class="badge ${step.spanning_tree ? "on" : "off"}">` +
      `spanning tree</span>`);
    if (step.stutter && step.last) {
      badges.push(`<span class="badge stutter">stutter</span>`);
    }
  }
  return [
    `<div class="split" data-index="${index}">`,
    `<div class="caption">step ${index + 1}: ${escapeHtml(caption)}` +
    `<span class="badges">${badges.join("")}</span></div>`,
    `<div class="pair">`,
    renderStatePanel(trace.config, pre, null, `state ${index + 1}`),
    renderStatePanel(trace.config, post, event === null ? null : pre,
                     event === null ? `state ${index + 1} (unchanged)`
                                    : `state ${index + 2}`),
    `</div></div>`,
  ].join("");
}

export function renderTimeline(trace: TraceJson, selected: number): string {
  const parts: string[] = [`<div class="timeline">`];
  const last = trace.states.length - 1;
  for (let i = 0; i < trace.states.length; i++) {
    const classes = ["state-marker"];
    if (i === selected) classes.push("selected");
    if (trace.loop_start !== null && i >= trace.loop_start) classes.push("loop");
    parts.push(`<button class="${classes.join(" ")}" data-index="${i}" ` +
      `title="state ${i + 1}">${i + 1}</button>`);
    if (i < last) {
      parts.push(`<span class="link"></span>`);
    }
  }
  if (trace.loop_start !== null) {
    parts.push(`<span class="loop-note">states ${trace.loop_start + 1}…` +
      `${last + 1} repeat forever</span>`);
  } else {
    parts.push(`<span class="stutter-note">then stutters forever</span>`);
  }
  parts.push(`</div>`);
  return parts.join("");
}

export function renderForkMenu(enabled: EventJson[]): string {
  if (enabled.length === 0) {
    return `<p class="fork-empty">no enabled events in this state</p>`;
  }
  const items = enabled.map((e, i) =>
    `<button class="fork-option" data-option="${i}">${escapeHtml(describeEvent(e))}</button>`);
  return `<div class="fork-menu">${items.join("")}</div>`;
}

export function renderNotice(kind: "info" | "error", text: string): string {
  return `<div class="notice ${kind}">${escapeHtml(text)}</div>`;
}
