// Browser bootstrap: wires the controller to the static page served next to
// the exploration API.  Query parameters pick the scope, e.g.
// /?max_nodes=4&variant=chang

import { ApiClient } from "./api.js";
import { Explorer, type ViewModel } from "./controls.js";
import {
  configLabel,
  renderForkMenu,
  renderNotice,
  renderSplitPanel,
  renderTimeline,
} from "./render.js";

function byId(id: string): HTMLElement {
  const el = document.getElementById(id);
  if (el === null) {
    throw new Error(`missing element #${id}`);
  }
  return el;
}

function render(view: ViewModel): void {
  const buttons = document.querySelectorAll<HTMLButtonElement>("button.control");
  buttons.forEach((b) => { b.disabled = view.busy || view.sessionId === null; });
  byId("notice").innerHTML = view.notice === null
    ? ""
    : renderNotice(view.notice.kind, view.notice.text);
  if (view.trace === null) {
    return;
  }
  byId("config-label").textContent = configLabel(view.trace.config) +
    ` (variant ${view.trace.variant})`;
  byId("timeline").innerHTML = renderTimeline(view.trace, view.selected);
  byId("step").innerHTML = renderSplitPanel(view.trace, view.selected, view.step);
  byId("fork-menu").innerHTML = renderForkMenu(view.enabled);
}

function main(): void {
  const params = new URLSearchParams(window.location.search);
  const maxNodes = Number(params.get("max_nodes") ?? "4");
  const variant = params.get("variant") ?? "fixed";
  const explorer = new Explorer(new ApiClient(), render);

  byId("new-config").addEventListener("click", () => void explorer.newConfig());
  byId("new-trace").addEventListener("click", () => void explorer.newTrace());
  byId("new-init").addEventListener("click", () => void explorer.newInit());
  byId("new-fork").addEventListener("click", () => void explorer.fork());

  byId("timeline").addEventListener("click", (ev) => {
    const target = (ev.target as HTMLElement).closest("[data-index]");
    if (target instanceof HTMLElement && target.dataset.index !== undefined) {
      void explorer.select(Number(target.dataset.index));
    }
  });

  byId("fork-menu").addEventListener("click", (ev) => {
    const target = (ev.target as HTMLElement).closest("[data-option]");
    if (target instanceof HTMLElement && target.dataset.option !== undefined) {
      const event = explorer.view.enabled[Number(target.dataset.option)];
      if (event !== undefined) {
        void explorer.fork(event);
      }
    }
  });

  void explorer.start(maxNodes, variant);
}

main();
