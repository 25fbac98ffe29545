"""Deterministic rule-based judge clients for fixture runs.

The mock judges a trajectory by reading the run's persisted final fixture
state (final_state.json, a snapshot of the profile-backed site store) and
comparing it against the instance's expected state from meta.json. That path
is independent of anything the agent reported about itself, so it serves as
the oracle for end-to-end runs. Replies follow the judge output contract so
the real parsing path is exercised.
"""

import json
import os
from typing import Dict, List, Optional

from ..model_client import ModelClient


class FixtureStateJudgeClient(ModelClient):
    def __init__(self, model_id: str = "mock-judge"):
        self.model_id = model_id
        self.calls = 0

    def send(self, system_prompt: str, payload: List[dict],
             metadata: Optional[Dict] = None) -> str:
        self.calls += 1
        metadata = metadata or {}
        trajectory_dir = str(metadata.get("trajectory_dir", ""))
        run_dir = os.path.dirname(trajectory_dir) if trajectory_dir else ""
        verdict = self._judge(run_dir)
        return json.dumps(verdict)

    def _judge(self, run_dir: str) -> dict:
        meta_path = os.path.join(run_dir, "meta.json")
        state_path = os.path.join(run_dir, "final_state.json")
        if not (os.path.exists(meta_path) and os.path.exists(state_path)):
            return {"result": "INCORRECT",
                    "reason": "run artifacts missing; cannot verify final state"}
        with open(meta_path, encoding="utf-8") as fh:
            meta = json.load(fh)
        with open(state_path, encoding="utf-8") as fh:
            final = json.load(fh)
        expected = meta.get("fixture_expected_state") or {}
        if not expected:
            return {"result": "INCORRECT",
                    "reason": "no expected state recorded for this instance"}
        mismatches = []
        for site_id, keys in expected.items():
            for key, want in keys.items():
                got = final.get(site_id, {}).get(key)
                if got != want:
                    mismatches.append(f"{site_id}.{key}: expected {want!r}, "
                                      f"found {got!r}")
        if mismatches:
            return {"result": "INCORRECT",
                    "reason": "final site state does not match the task goal: "
                              + "; ".join(mismatches)}
        return {"result": "CORRECT",
                "reason": "final site state matches the task goal exactly"}


def mock_ensemble_clients() -> List[FixtureStateJudgeClient]:
    return [FixtureStateJudgeClient(f"mock-judge-{suffix}")
            for suffix in ("a", "b", "c")]


class EchoAttributionClient(ModelClient):
    """Attribution evaluator stand-in: blames the first stateful ground-truth
    element type (Toggle/Checkbox/RadioButton) when present, else the first
    ground-truth type. Deterministic and subset-safe by construction."""

    PREFERRED = ("Toggle", "Checkbox", "RadioButton")

    def __init__(self, model_id: str = "mock-attribution"):
        self.model_id = model_id

    def send(self, system_prompt, payload, metadata=None) -> str:
        entries = json.loads(payload[0]["text"])
        out = []
        for entry in entries:
            gt_types = [t.strip() for t in
                        str(entry.get("Ground_Truth_UI_Elements", "")).split(",")
                        if t.strip()]
            pick = next((t for t in self.PREFERRED if t in gt_types),
                        gt_types[0] if gt_types else "")
            out.append({
                "TaskID": entry.get("TaskID", ""),
                "WHICH_UI_ELEMENT_FAILED": pick,
                "Ground_Truth_UI_Elements":
                    entry.get("Ground_Truth_UI_Elements", ""),
            })
        return json.dumps(out)
