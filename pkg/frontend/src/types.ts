// JSON shapes served by the exploration service.  The UI never computes
// protocol state itself; everything rendered comes from these payloads.

export interface ConfigJson {
  nodes: number;
  initiator: number;
  edges: [number, number][];
}

export type MessageKind = "Explorer" | "Echo";

export interface MessageJson {
  from: number;
  type: MessageKind;
}

export interface StateJson {
  parent: (number | null)[];
  received: number[][];
  inbox: MessageJson[][];
}

export interface EventJson {
  node: number;
  kind: MessageKind;
  from: number;
}

export interface TraceJson {
  config: ConfigJson;
  variant: string;
  states: StateJson[];
  events: EventJson[];
  loop_start: number | null;
}

export interface StepView {
  index: number;
  last: boolean;
  stutter: boolean;
  pre: StateJson;
  event: EventJson | null;
  post: StateJson;
  enabled: EventJson[];
  finish: boolean;
  spanning_tree: boolean;
}

export interface SessionCreated {
  session_id: string;
  trace: TraceJson;
}

export interface SessionSnapshot {
  session_id: string;
  variant: string;
  max_nodes: number;
  config_index: number;
  config_count: number;
  trace: TraceJson;
  traces_shown: number;
}

export interface NewInitResponse {
  notice: string;
  initial_state: StateJson;
}

export interface ForkResponse {
  trace: TraceJson;
  enabled: EventJson[];
}

export interface ServiceErrorBody {
  error: {
    code: string;
    message: string;
    enabled?: EventJson[];
  };
}
