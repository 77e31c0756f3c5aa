// View-model controller: holds the mirrored server trace, the selected step,
// and the enabled events for it, and drives the four iteration operations.
// At most one request is in flight; "exhausted" and "unique initial state"
// come back as informational notices, not failures.

import { ApiClient, ServiceError } from "./api.js";
import type { EventJson, StepView, TraceJson } from "./types.js";

export interface ViewModel {
  sessionId: string | null;
  trace: TraceJson | null;
  selected: number;
  step: StepView | null;
  enabled: EventJson[];
  notice: { kind: "info" | "error"; text: string } | null;
  busy: boolean;
}

const INFORMATIONAL_CODES = new Set(["exhausted", "no-alternative"]);

export class Explorer {
  readonly view: ViewModel = {
    sessionId: null,
    trace: null,
    selected: 0,
    step: null,
    enabled: [],
    notice: null,
    busy: false,
  };

  private readonly onChange: (view: ViewModel) => void;

  constructor(private readonly api: ApiClient,
              onChange?: (view: ViewModel) => void) {
    this.onChange = onChange ?? (() => undefined);
  }

  private emit(): void {
    this.onChange(this.view);
  }

  private async exclusive<T>(work: () => Promise<T>): Promise<T | null> {
    if (this.view.busy) {
      return null;
    }
    this.view.busy = true;
    this.view.notice = null;
    this.emit();
    try {
      return await work();
    } catch (err) {
      if (err instanceof ServiceError && INFORMATIONAL_CODES.has(err.code)) {
        this.view.notice = { kind: "info", text: err.message };
      } else if (err instanceof ServiceError) {
        this.view.notice = { kind: "error", text: `${err.code}: ${err.message}` };
      } else {
        this.view.notice = { kind: "error", text: String(err) };
      }
      return null;
    } finally {
      this.view.busy = false;
      this.emit();
    }
  }

  private async showTrace(trace: TraceJson, selected = 0): Promise<void> {
    this.view.trace = trace;
    await this.select(selected, { quiet: true });
  }

  /** Selecting a step only reads; it never mutates the session. */
  async select(index: number, opts: { quiet?: boolean } = {}): Promise<void> {
    const trace = this.view.trace;
    if (trace === null) {
      return;
    }
    const last = trace.states.length - 1;
    this.view.selected = Math.max(0, Math.min(index, last));
    if (this.view.sessionId !== null) {
      const step = await this.api.step(this.view.sessionId, this.view.selected);
      this.view.step = step;
      this.view.enabled = step.enabled;
    } else {
      this.view.step = null;
      this.view.enabled = [];
    }
    if (!opts.quiet) {
      this.emit();
    }
  }

  async start(maxNodes: number, variant: string): Promise<void> {
    await this.exclusive(async () => {
      const created = await this.api.createSession(maxNodes, variant);
      this.view.sessionId = created.session_id;
      await this.showTrace(created.trace);
    });
  }

  async newConfig(): Promise<void> {
    await this.exclusive(async () => {
      const trace = await this.api.newConfig(this.required());
      await this.showTrace(trace);
    });
  }

  async newTrace(): Promise<void> {
    await this.exclusive(async () => {
      const trace = await this.api.newTrace(this.required());
      await this.showTrace(trace);
    });
  }

  async newInit(): Promise<void> {
    await this.exclusive(async () => {
      const body = await this.api.newInit(this.required());
      this.view.notice = { kind: "info", text: body.notice };
    });
  }

  /** Fork at the selected pre-state; without an event the server picks the
   * first enabled event that differs from the one already shown there. */
  async fork(event?: EventJson): Promise<void> {
    await this.exclusive(async () => {
      const at = this.view.selected;
      const body = await this.api.fork(this.required(), at, event);
      await this.showTrace(body.trace, at);
      this.view.enabled = this.view.step?.enabled ?? body.enabled;
    });
  }

  private required(): string {
    if (this.view.sessionId === null) {
      throw new Error("no session yet");
    }
    return this.view.sessionId;
  }
}
