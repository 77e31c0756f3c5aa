#!/usr/bin/env python3
"""Record golden fixtures for the UI contract tests by driving the real
exploration service in-process.  Rerun after any service change:

    python3 frontend/scripts/record_fixtures.py
"""

import json
from pathlib import Path

from fastapi.testclient import TestClient

from echocheck.service import create_app

OUT = Path(__file__).resolve().parent.parent / "fixtures"


def dump(name, obj):
    (OUT / name).write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n")
    print(f"wrote fixtures/{name}")


def main():
    OUT.mkdir(exist_ok=True)
    client = TestClient(create_app())

    # session walking the configs up to 3 nodes, repaired variant
    created = client.post("/sessions",
                          json={"max_nodes": 3, "variant": "fixed"}).json()
    dump("session_create_max3_fixed.json", created)
    sid = created["session_id"]

    # move to the 2-node edge and fork its stutter trace at the start
    edge_stutter = client.post(f"/sessions/{sid}/new-config").json()
    dump("trace_edge2_stutter.json", edge_stutter["trace"])
    fork = client.post(f"/sessions/{sid}/fork", json={"state_index": 0}).json()
    dump("fork_edge2.json", fork)

    # the full hand-executed 2-node run, plus every step view for it
    run = client.post(f"/sessions/{sid}/new-trace").json()["trace"]
    assert len(run["states"]) == 3
    dump("trace_edge2_run.json", run)
    steps = [client.get(f"/sessions/{sid}/steps/{i}").json() for i in range(3)]
    dump("steps_edge2_run.json", steps)

    # notices and errors
    dump("new_init_notice.json", client.post(f"/sessions/{sid}/new-init").json())
    bad = client.post(f"/sessions/{sid}/fork",
                      json={"state_index": 0,
                            "event": {"node": 0, "kind": "Echo", "from": 1}})
    assert bad.status_code == 409
    dump("fork_not_enabled_error.json", bad.json())

    single = client.post("/sessions",
                         json={"max_nodes": 1, "variant": "fixed"}).json()
    exhausted = client.post(f"/sessions/{single['session_id']}/new-trace")
    assert exhausted.status_code == 404
    dump("exhausted_error.json", exhausted.json())

    # counterexample sweep: the buggy 4-node networks under the original init
    report = client.get("/check", params={"property": "correctness",
                                          "variant": "chang",
                                          "max_nodes": 4}).json()
    dump("report_chang_correctness_4.json", report)
    witnesses = [r["witness"] for r in report["results"]
                 if r["outcome"] == "violation"]
    assert len(witnesses) == 2
    # the denser one is the classic buggy configuration
    fig2 = max(witnesses, key=lambda w: len(w["config"]["edges"]))
    dump("trace_counterexample.json", fig2)

    dump("configs_max3.json", client.get("/configs",
                                         params={"max_nodes": 3}).json())

    # hand-built lasso shape for timeline rendering (never produced by the
    # protocol itself; the renderer must still draw repeated segments)
    lasso = dict(edge_stutter["trace"])
    lasso = json.loads(json.dumps(lasso))
    dump("synthetic_lasso.json", {
        "config": lasso["config"],
        "variant": lasso["variant"],
        "states": [lasso["states"][0]] * 4,
        "events": [{"node": 1, "kind": "Explorer", "from": 0}] * 3,
        "loop_start": 1,
    })


if __name__ == "__main__":
    main()
