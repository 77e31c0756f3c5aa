"""Session-oriented HTTP API for interactive trace exploration.

Each session walks the canonical configuration list for a size bound and
holds one current trace.  The iteration operations mirror an instance
explorer: next configuration, a different trace for the same configuration,
a different initial state (unique here, answered with a notice), and forking
the current trace at a chosen state.

Traces are served as finite prefixes with implicit terminal stutter; every
trace is re-validated by replay before it leaves the server.  "Different"
traces are judged by digest over (configuration, variant, events).  Sessions
live in memory and expire after idle time; distinct sessions share nothing.
"""

from __future__ import annotations

import random
import threading
import time
import uuid
from dataclasses import dataclass, field
from typing import Optional

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .checker import Trace, sweep, trace_digest, trace_to_json, validate_trace
from .netconfig import Config, enumerate_canonical
from .protocol import (
    VARIANTS,
    apply_event,
    enabled_events,
    event_from_json,
    event_to_json,
    finish,
    initial_state,
    spanning_tree,
    state_to_json,
)

MAX_SERVICE_NODES = 6
NEW_TRACE_RESEEDS = 64
DEFAULT_TTL_SECONDS = 30 * 60.0
INITIAL_STATE_NOTICE = "initial state is unique for this model"


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str,
                 enabled: Optional[list] = None):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message
        self.enabled = enabled

    def body(self) -> dict:
        err = {"code": self.code, "message": self.message}
        if self.enabled is not None:
            err["enabled"] = self.enabled
        return {"error": err}


@dataclass
class Session:
    session_id: str
    variant: str
    max_nodes: int
    configs: list[Config]
    cursor: int
    trace: Trace
    history: set[str] = field(default_factory=set)
    shown: int = 0
    last_access: float = 0.0
    lock: threading.Lock = field(default_factory=threading.Lock)

    @property
    def config(self) -> Config:
        return self.configs[self.cursor]

    def record(self, trace: Trace) -> None:
        validate_trace(trace)
        self.trace = trace
        self.history.add(trace_digest(trace))
        self.shown += 1


class SessionStore:
    def __init__(self, ttl_seconds: float, time_fn):
        self.ttl = ttl_seconds
        self.time_fn = time_fn
        self._lock = threading.Lock()
        self._sessions: dict[str, Session] = {}

    def create(self, max_nodes: int, variant: str) -> Session:
        configs = enumerate_canonical(max_nodes)
        first = _stutter_trace(configs[0], variant)
        session = Session(
            session_id=uuid.uuid4().hex,
            variant=variant,
            max_nodes=max_nodes,
            configs=configs,
            cursor=0,
            trace=first,
        )
        session.record(first)
        now = self.time_fn()
        session.last_access = now
        with self._lock:
            self._purge(now)
            self._sessions[session.session_id] = session
        return session

    def get(self, session_id: str) -> Session:
        now = self.time_fn()
        with self._lock:
            self._purge(now)
            session = self._sessions.get(session_id)
            if session is None:
                raise ApiError(404, "unknown-session",
                               f"no session {session_id!r}")
            session.last_access = now
            return session

    def _purge(self, now: float) -> None:
        dead = [sid for sid, s in self._sessions.items()
                if now - s.last_access > self.ttl]
        for sid in dead:
            del self._sessions[sid]


def _stutter_trace(config: Config, variant: str) -> Trace:
    return Trace(config, variant, [initial_state(config, variant)], [], None)


def _greedy_trace(config: Config, variant: str, seed: int) -> Trace:
    """Maximal-progress run under a seeded scheduler: keep firing a pseudo-
    randomly chosen enabled event until none is enabled."""
    rng = random.Random(seed)
    states = [initial_state(config, variant)]
    events = []
    while True:
        enabled = enabled_events(config, states[-1])
        if not enabled:
            return Trace(config, variant, states, events, None)
        event = enabled[rng.randrange(len(enabled))]
        events.append(event)
        states.append(apply_event(config, states[-1], event))


def _trace_view(trace: Trace) -> dict:
    return trace_to_json(trace)


def _session_view(session: Session) -> dict:
    return {
        "session_id": session.session_id,
        "variant": session.variant,
        "max_nodes": session.max_nodes,
        "config_index": session.cursor,
        "config_count": len(session.configs),
        "trace": _trace_view(session.trace),
        "traces_shown": session.shown,
    }


class CreateSessionBody(BaseModel):
    max_nodes: int
    variant: str


class ForkBody(BaseModel):
    state_index: int
    event: Optional[dict] = None


def create_app(session_ttl_seconds: float = DEFAULT_TTL_SECONDS,
               time_fn=time.monotonic,
               static_dir=None) -> FastAPI:
    app = FastAPI(title="echocheck exploration service")
    store = SessionStore(session_ttl_seconds, time_fn)

    @app.exception_handler(ApiError)
    async def _api_error(request: Request, exc: ApiError):
        return JSONResponse(status_code=exc.status, content=exc.body())

    @app.post("/sessions")
    def create_session(body: CreateSessionBody):
        if not 1 <= body.max_nodes <= MAX_SERVICE_NODES:
            raise ApiError(400, "bad-bounds",
                           f"max_nodes must be in 1..{MAX_SERVICE_NODES}")
        if body.variant not in VARIANTS:
            raise ApiError(400, "bad-variant",
                           f"variant must be one of {list(VARIANTS)}")
        session = store.create(body.max_nodes, body.variant)
        return {"session_id": session.session_id,
                "trace": _trace_view(session.trace)}

    @app.get("/sessions/{session_id}")
    def session_snapshot(session_id: str):
        session = store.get(session_id)
        with session.lock:
            return _session_view(session)

    @app.post("/sessions/{session_id}/new-config")
    def new_config(session_id: str):
        session = store.get(session_id)
        with session.lock:
            session.cursor = (session.cursor + 1) % len(session.configs)
            session.record(_stutter_trace(session.config, session.variant))
            return {"trace": _trace_view(session.trace)}

    @app.post("/sessions/{session_id}/new-trace")
    def new_trace(session_id: str):
        session = store.get(session_id)
        with session.lock:
            for attempt in range(NEW_TRACE_RESEEDS):
                candidate = _greedy_trace(session.config, session.variant,
                                          seed=session.shown + attempt)
                if trace_digest(candidate) not in session.history:
                    session.record(candidate)
                    return {"trace": _trace_view(session.trace)}
            raise ApiError(404, "exhausted",
                           "no unseen trace found for this configuration")

    @app.post("/sessions/{session_id}/new-init")
    def new_init(session_id: str):
        session = store.get(session_id)
        with session.lock:
            state = initial_state(session.config, session.variant)
            return {"notice": INITIAL_STATE_NOTICE,
                    "initial_state": state_to_json(state)}

    @app.post("/sessions/{session_id}/fork")
    def fork(session_id: str, body: ForkBody):
        session = store.get(session_id)
        with session.lock:
            trace = session.trace
            if not 0 <= body.state_index < len(trace.states):
                raise ApiError(400, "bad-index",
                               f"state_index must be in 0..{len(trace.states) - 1}")
            pre = trace.states[body.state_index]
            enabled = enabled_events(trace.config, pre)
            enabled_json = [event_to_json(e) for e in enabled]
            if body.event is not None:
                try:
                    event = event_from_json(body.event)
                except (KeyError, TypeError, ValueError):
                    raise ApiError(400, "bad-event",
                                   f"malformed event {body.event!r}") from None
                if event not in enabled:
                    raise ApiError(409, "event-not-enabled",
                                   "that event is not enabled in the chosen state",
                                   enabled=enabled_json)
            else:
                shown = trace.events[body.state_index] \
                    if body.state_index < len(trace.events) else None
                candidates = [e for e in enabled if e != shown]
                if not candidates:
                    raise ApiError(409, "no-alternative",
                                   "no differing event is enabled in the chosen state",
                                   enabled=enabled_json)
                event = candidates[0]
            states = trace.states[:body.state_index + 1]
            events = trace.events[:body.state_index]
            forked = Trace(trace.config, trace.variant,
                           states + [apply_event(trace.config, pre, event)],
                           events + [event], None)
            session.record(forked)
            return {"trace": _trace_view(session.trace),
                    "enabled": enabled_json}

    @app.get("/sessions/{session_id}/steps/{index}")
    def step_view(session_id: str, index: int):
        session = store.get(session_id)
        with session.lock:
            trace = session.trace
            last = len(trace.states) - 1
            if not 0 <= index <= last:
                raise ApiError(400, "bad-index",
                               f"step index must be in 0..{last}")
            pre = trace.states[index]
            if index < len(trace.events):
                event = trace.events[index]
                post = trace.states[index + 1]
            else:
                event, post = None, pre
            return {
                "index": index,
                "last": index == last,
                "stutter": event is None and trace.loop_start is None,
                "pre": state_to_json(pre),
                "event": None if event is None else event_to_json(event),
                "post": state_to_json(post),
                "enabled": [event_to_json(e) for e in enabled_events(trace.config, pre)],
                "finish": finish(trace.config, post),
                "spanning_tree": spanning_tree(trace.config, post),
            }

    @app.get("/configs")
    def configs(max_nodes: int):
        if not 1 <= max_nodes <= MAX_SERVICE_NODES:
            raise ApiError(400, "bad-bounds",
                           f"max_nodes must be in 1..{MAX_SERVICE_NODES}")
        return [c.to_json_dict() for c in enumerate_canonical(max_nodes)]

    @app.get("/check")
    def check(property: str, variant: str, max_nodes: int):
        try:
            report = sweep(max_nodes, variant, property)
        except ValueError as exc:
            raise ApiError(400, "bad-request", str(exc)) from None
        return report.to_json_dict()

    if static_dir is not None:
        from fastapi.staticfiles import StaticFiles
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")
    return app
