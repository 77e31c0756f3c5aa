// Thin typed client for the exploration service.  The fetch function is
// injectable so tests can drive the client against recorded fixtures.

import type {
  EventJson,
  ForkResponse,
  NewInitResponse,
  ServiceErrorBody,
  SessionCreated,
  SessionSnapshot,
  StepView,
  TraceJson,
} from "./types.js";

export class ServiceError extends Error {
  readonly status: number;
  readonly code: string;
  readonly enabled?: EventJson[];

  constructor(status: number, body: ServiceErrorBody["error"]) {
    super(body.message);
    this.status = status;
    this.code = body.code;
    this.enabled = body.enabled;
  }
}

type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  private readonly fetchFn: FetchLike;
  private readonly base: string;

  constructor(fetchFn?: FetchLike, base = "") {
    this.fetchFn = fetchFn ?? ((url, init) => fetch(url, init));
    this.base = base;
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method };
    if (body !== undefined) {
      init.headers = { "content-type": "application/json" };
      init.body = JSON.stringify(body);
    }
    const response = await this.fetchFn(this.base + path, init);
    const payload = await response.json();
    if (!response.ok) {
      const err = (payload as ServiceErrorBody).error ??
        { code: "unknown", message: `HTTP ${response.status}` };
      throw new ServiceError(response.status, err);
    }
    return payload as T;
  }

  createSession(maxNodes: number, variant: string): Promise<SessionCreated> {
    return this.request("POST", "/sessions",
                        { max_nodes: maxNodes, variant });
  }

  snapshot(sessionId: string): Promise<SessionSnapshot> {
    return this.request("GET", `/sessions/${sessionId}`);
  }

  async newConfig(sessionId: string): Promise<TraceJson> {
    const body = await this.request<{ trace: TraceJson }>(
      "POST", `/sessions/${sessionId}/new-config`);
    return body.trace;
  }

  async newTrace(sessionId: string): Promise<TraceJson> {
    const body = await this.request<{ trace: TraceJson }>(
      "POST", `/sessions/${sessionId}/new-trace`);
    return body.trace;
  }

  newInit(sessionId: string): Promise<NewInitResponse> {
    return this.request("POST", `/sessions/${sessionId}/new-init`);
  }

  fork(sessionId: string, stateIndex: number,
       event?: EventJson): Promise<ForkResponse> {
    const body: { state_index: number; event?: EventJson } =
      { state_index: stateIndex };
    if (event !== undefined) {
      body.event = event;
    }
    return this.request("POST", `/sessions/${sessionId}/fork`, body);
  }

  step(sessionId: string, index: number): Promise<StepView> {
    return this.request("GET", `/sessions/${sessionId}/steps/${index}`);
  }
}
