"""Task dataset loading and validation.

Instances are (prompt, initial state) pairs: dual-state tasks appear twice,
sharing a task_id, with initial_state ON and OFF. Prompts come in two
variants differing only by a navigation prefix.
"""

import json
import logging
import os
from dataclasses import dataclass, field
from typing import Dict, List

from .errors import DatasetError
from .judge import UI_ELEMENT_TYPES, GroundTruth

logger = logging.getLogger(__name__)

CATEGORIES = (
    "Account Security & Access Control",
    "Advertising & Personalization Control",
    "Cookie & Tracking Consent Management",
    "Data & Asset Management",
    "Notification & Communication Preferences",
    "Profile Visibility & Customization",
    "Social Safety & Content Moderation",
    "UI/UX Preferences",
    "User Privacy & Data Rights",
)

INITIAL_STATES = ("ON", "OFF", "SINGLE", "NA")

# observed ground-truth regime: mean 5.16 actions, min 2, max 13; datasets far
# outside it get an advisory warning only
GT_ACTIONS_SANE_RANGE = (2.0, 13.0)


@dataclass
class TaskInstance:
    instance_id: str
    task_id: str
    site_id: str
    category: str
    prompt_withnav: str
    prompt_wonav: str
    initial_state: str
    ground_truth: GroundTruth
    start_url: str
    # fixture-only: expected persistent state for the deterministic mock judge
    fixture_expected_state: Dict[str, Dict[str, object]] = field(default_factory=dict)
    prompt: str = ""  # set per run to the active variant's prompt

    def prompt_for(self, variant: str) -> str:
        return self.prompt_withnav if variant == "WithNav" else self.prompt_wonav

    @staticmethod
    def from_json(obj: dict) -> "TaskInstance":
        return TaskInstance(
            instance_id=obj["instance_id"],
            task_id=obj["task_id"],
            site_id=obj["site_id"],
            category=obj["category"],
            prompt_withnav=obj["prompt_withnav"],
            prompt_wonav=obj["prompt_wonav"],
            initial_state=obj["initial_state"],
            ground_truth=GroundTruth.from_json(obj["ground_truth"]),
            start_url=obj["start_url"],
            fixture_expected_state=obj.get("fixture_expected_state", {}),
        )

    def to_json(self) -> dict:
        return {
            "instance_id": self.instance_id,
            "task_id": self.task_id,
            "site_id": self.site_id,
            "category": self.category,
            "prompt_withnav": self.prompt_withnav,
            "prompt_wonav": self.prompt_wonav,
            "initial_state": self.initial_state,
            "ground_truth": self.ground_truth.to_json(),
            "start_url": self.start_url,
            "fixture_expected_state": self.fixture_expected_state,
        }


def dataset_id_for(path: str, instances: List[TaskInstance]) -> str:
    return f"{os.path.basename(path)}:{len(instances)}"


def load_dataset(path: str) -> List[TaskInstance]:
    """Load and validate a dataset file; raises DatasetError listing every
    violation with its row number."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    if not text.strip():
        return []
    raw = json.loads(text)
    if not isinstance(raw, list):
        raise DatasetError("dataset must be a JSON list of instances")

    errors: List[str] = []
    instances: List[TaskInstance] = []
    seen_ids: Dict[str, int] = {}
    for row, obj in enumerate(raw):
        try:
            instance = TaskInstance.from_json(obj)
        except (KeyError, TypeError) as exc:
            errors.append(f"row {row}: malformed instance ({exc})")
            continue
        if instance.instance_id in seen_ids:
            errors.append(
                f"row {row}: duplicate instance_id {instance.instance_id!r} "
                f"(first at row {seen_ids[instance.instance_id]})")
        seen_ids.setdefault(instance.instance_id, row)
        if instance.category not in CATEGORIES:
            errors.append(f"row {row}: unknown category {instance.category!r}")
        if instance.initial_state not in INITIAL_STATES:
            errors.append(
                f"row {row}: unknown initial_state {instance.initial_state!r}")
        for action in instance.ground_truth.actions:
            if action.target_element_type not in UI_ELEMENT_TYPES:
                errors.append(
                    f"row {row}: unknown ui element type "
                    f"{action.target_element_type!r}")
        instances.append(instance)

    _check_dual_pairing(instances, errors)
    if errors:
        raise DatasetError("dataset invalid:\n  " + "\n  ".join(errors))
    _advise_gt_stats(instances)
    return instances


def _check_dual_pairing(instances: List[TaskInstance], errors: List[str]) -> None:
    by_task: Dict[str, List[TaskInstance]] = {}
    for instance in instances:
        by_task.setdefault(instance.task_id, []).append(instance)
    for task_id, members in by_task.items():
        states = sorted(m.initial_state for m in members)
        if any(s in ("ON", "OFF") for s in states):
            if states != ["OFF", "ON"]:
                errors.append(
                    f"task {task_id!r}: dual-state instances must come as one "
                    f"ON and one OFF (got {states})")


def dual_task_ids(instances: List[TaskInstance]) -> List[str]:
    by_task: Dict[str, set] = {}
    for instance in instances:
        by_task.setdefault(instance.task_id, set()).add(instance.initial_state)
    return sorted(t for t, states in by_task.items() if states == {"ON", "OFF"})


def _advise_gt_stats(instances: List[TaskInstance]) -> None:
    counts = [len(i.ground_truth.actions) for i in instances
              if i.ground_truth.actions]
    if not counts:
        return
    mean = sum(counts) / len(counts)
    low, high = GT_ACTIONS_SANE_RANGE
    if mean < low or mean > high:
        logger.warning(
            "ground-truth action count mean %.2f is far outside the expected "
            "regime [%g, %g]; check the dataset annotations", mean, low, high)


def save_dataset(instances: List[TaskInstance], path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump([i.to_json() for i in instances], fh, indent=2)
        fh.write("\n")
