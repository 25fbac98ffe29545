"""Automated trajectory judging: packaging, verdict parsing, 2-of-3 majority
voting with auto-fail on budget terminations, and UI-element failure
attribution.

Unparseable or erroring votes default to INCORRECT rather than abstain, so
the vote is always 3-way and biased toward strictness.
"""

import json
import logging
import os
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from .model_client import ModelClient
from .assets import load_prompt

logger = logging.getLogger(__name__)

UI_ELEMENT_TYPES = ("Button", "Checkbox", "Dropdown", "Icon", "Link", "Menu",
                    "Option", "RadioButton", "TextInput", "Toggle")

AUTO_FAIL_TERMINATIONS = ("iteration_limit", "timeout")


@dataclass(frozen=True)
class GroundTruthAction:
    action_desc: str
    target_element_type: str  # one of UI_ELEMENT_TYPES


@dataclass
class GroundTruth:
    task_id: str
    actions: List[GroundTruthAction] = field(default_factory=list)
    # empty action list is legal only for already-satisfied instances

    def element_types(self) -> List[str]:
        seen = []
        for action in self.actions:
            if action.target_element_type not in seen:
                seen.append(action.target_element_type)
        return seen

    @staticmethod
    def from_json(obj: dict) -> "GroundTruth":
        return GroundTruth(
            task_id=obj["task_id"],
            actions=[GroundTruthAction(a["action_desc"], a["target_element_type"])
                     for a in obj.get("actions", [])],
        )

    def to_json(self) -> dict:
        return {"task_id": self.task_id,
                "actions": [{"action_desc": a.action_desc,
                             "target_element_type": a.target_element_type}
                            for a in self.actions]}


@dataclass
class Verdict:
    model_id: str
    result: str  # CORRECT | INCORRECT
    reason: str


@dataclass
class EnsembleVerdict:
    verdicts: List[Verdict]
    final: str  # CORRECT | INCORRECT
    auto_failed: bool = False
    failure_class: str = "success"  # success | error | timeout

    def to_json(self) -> dict:
        return {
            "final": self.final,
            "auto_failed": self.auto_failed,
            "failure_class": self.failure_class,
            "verdicts": [{"model_id": v.model_id, "result": v.result,
                          "reason": v.reason} for v in self.verdicts],
        }


@dataclass
class JudgeRequest:
    system_prompt: str
    payload: List[dict]
    metadata: Dict[str, object] = field(default_factory=dict)


# ---------------------------------------------------------------------------
# Packaging
# ---------------------------------------------------------------------------


def package_judge_input(prompt: str, trajectory_dir: str, gt: GroundTruth
                        ) -> JudgeRequest:
    """Assemble the judge payload: task prompt, then each step's thought,
    action, and post-action screenshot in order, then the ground-truth action
    list. Missing screenshots become placeholder notices and are flagged."""
    with open(os.path.join(trajectory_dir, "trajectory.json"), encoding="utf-8") as fh:
        trajectory = json.load(fh)
    payload: List[dict] = [{"type": "text", "text": f"Task Query: {prompt}"}]
    missing: List[int] = []
    for step in trajectory.get("steps", []):
        index = step["index"]
        payload.append({
            "type": "text",
            "text": f"Iteration {index}\nThought: {step.get('thought', '')}\n"
                    f"Action: {step.get('raw_action', '')}",
        })
        ref = step.get("screenshot_ref")
        png_path = os.path.join(trajectory_dir, ref) if ref else None
        if png_path and os.path.exists(png_path):
            with open(png_path, "rb") as fh:
                payload.append({"type": "image", "png": fh.read()})
        else:
            missing.append(index)
            payload.append({"type": "text",
                            "text": f"[screenshot for iteration {index} missing]"})
    if gt.actions:
        gt_lines = "\n".join(
            f"{i}. {a.action_desc} (target: {a.target_element_type})"
            for i, a in enumerate(gt.actions))
    else:
        gt_lines = ("No action is required: the initial state already matches "
                    "the desired final state.")
    payload.append({"type": "text", "text": f"Ground Truth Steps:\n{gt_lines}"})
    payload.append({"type": "text",
                    "text": f"Agent termination: {trajectory.get('termination')}; "
                            f"final answer: {trajectory.get('answer')!r}"})
    return JudgeRequest(
        system_prompt=load_prompt("judge_system"),
        payload=payload,
        metadata={
            "task_id": gt.task_id,
            "trajectory_dir": trajectory_dir,
            "missing_screenshots": missing,
            "termination": trajectory.get("termination"),
        },
    )


# ---------------------------------------------------------------------------
# Verdict parsing
# ---------------------------------------------------------------------------

_FENCE_RE = re.compile(r"```(?:json)?\s*(.*?)```", re.S)


def _extract_json(text: str):
    candidates = [m.strip() for m in _FENCE_RE.findall(text)] or [text.strip()]
    for candidate in candidates:
        try:
            return json.loads(candidate)
        except ValueError:
            pass
        brace = candidate.find("{")
        if brace >= 0:
            depth = 0
            for i in range(brace, len(candidate)):
                if candidate[i] == "{":
                    depth += 1
                elif candidate[i] == "}":
                    depth -= 1
                    if depth == 0:
                        try:
                            return json.loads(candidate[brace:i + 1])
                        except ValueError:
                            break
    raise ValueError("no JSON object found in model output")


def parse_verdict(model_output: str, model_id: str = "") -> Verdict:
    """Strict extraction of the {"result", "reason"} contract; tolerates
    surrounding code fences. Raises ValueError when the contract is not met
    (callers re-ask once, then record a conservative INCORRECT)."""
    obj = _extract_json(model_output)
    if not isinstance(obj, dict):
        raise ValueError("verdict is not a JSON object")
    if "result" not in obj or "reason" not in obj:
        raise ValueError("verdict must carry both 'result' and 'reason'")
    result = str(obj["result"]).strip().upper()
    if result not in ("CORRECT", "INCORRECT"):
        raise ValueError(f"result must be CORRECT or INCORRECT, got {obj['result']!r}")
    return Verdict(model_id=model_id, result=result, reason=str(obj["reason"]))


# ---------------------------------------------------------------------------
# Ensemble
# ---------------------------------------------------------------------------


def _one_vote(client: ModelClient, request: JudgeRequest) -> Verdict:
    for attempt in range(2):  # one re-ask on an unparseable reply
        try:
            reply = client.send(request.system_prompt, request.payload,
                                metadata=request.metadata)
        except Exception as exc:
            logger.warning("judge client %s errored: %s", client.model_id, exc)
            if attempt == 1:
                return Verdict(client.model_id, "INCORRECT", "client_error")
            continue
        try:
            return parse_verdict(reply, model_id=client.model_id)
        except ValueError as exc:
            logger.warning("unparseable verdict from %s: %s", client.model_id, exc)
    return Verdict(client.model_id, "INCORRECT", "unparseable")


def majority(results: Sequence[str]) -> str:
    """2-of-3 majority, equivalently the median of the binary votes."""
    correct = sum(1 for r in results if r == "CORRECT")
    return "CORRECT" if correct * 2 > len(results) else "INCORRECT"


def ensemble(trajectory_termination: str, request: JudgeRequest,
             clients: Sequence[ModelClient]) -> EnsembleVerdict:
    """Majority vote over exactly three clients; budget-terminated
    trajectories are auto-failed without a single model call."""
    if trajectory_termination in AUTO_FAIL_TERMINATIONS:
        return EnsembleVerdict(verdicts=[], final="INCORRECT", auto_failed=True,
                               failure_class="timeout")
    if len(clients) != 3:
        raise ValueError(f"ensemble needs exactly 3 clients, got {len(clients)}")
    with ThreadPoolExecutor(max_workers=3) as pool:
        verdicts = list(pool.map(lambda c: _one_vote(c, request), clients))
    final = majority([v.result for v in verdicts])
    return EnsembleVerdict(
        verdicts=verdicts,
        final=final,
        auto_failed=False,
        failure_class="success" if final == "CORRECT" else "error",
    )


def judge_run(run_dir: str, prompt: str, gt: GroundTruth,
              clients: Sequence[ModelClient],
              termination: Optional[str] = None) -> EnsembleVerdict:
    trajectory_dir = os.path.join(run_dir, "trajectory")
    request = package_judge_input(prompt, trajectory_dir, gt)
    if termination is None:
        termination = str(request.metadata.get("termination"))
    verdict = ensemble(termination, request, clients)
    with open(os.path.join(run_dir, "verdict.json"), "w", encoding="utf-8") as fh:
        json.dump(verdict.to_json(), fh, indent=2)
        fh.write("\n")
    return verdict


# ---------------------------------------------------------------------------
# UI-element failure attribution
# ---------------------------------------------------------------------------


def attribute_ui_failure(reason: str, gt: GroundTruth, client: ModelClient
                         ) -> List[str]:
    """Ask a separate evaluator which ground-truth UI element type(s) caused
    an explicit failure. Returns a subset of the ground-truth element types;
    empty means unattributed."""
    gt_types = gt.element_types()
    entry = {
        "TaskID": gt.task_id,
        "Task_Instruction": "",
        "Ground_Truth_UI_Elements": ", ".join(gt_types),
        "Ground_Truth_Actions": [a.action_desc for a in gt.actions],
        "Failure_Analysis": reason,
    }
    payload = [{"type": "text", "text": json.dumps([entry], indent=2)}]
    system_prompt = load_prompt("ui_attribution")
    for attempt in range(2):  # one re-ask on contract violations
        try:
            reply = client.send(system_prompt, payload)
            parsed = _extract_json(reply)
        except Exception as exc:
            logger.warning("attribution client failed: %s", exc)
            continue
        entries = parsed if isinstance(parsed, list) else [parsed]
        failed = []
        for item in entries:
            raw = item.get("WHICH_UI_ELEMENT_FAILED", "")
            values = raw if isinstance(raw, list) else \
                [v.strip() for v in str(raw).split(",") if v.strip()]
            failed.extend(values)
        subset = [v for v in failed if v in gt_types]
        if len(subset) == len(failed) and failed:
            return subset
        if attempt == 1 and subset:
            return subset  # non-subset entries dropped after the re-ask
    return []
