"""Benchmark matrix runner: (instance x policy x variant) pipelines, judged
and appended to a JSON-lines results log.

Each run writes its full record as a per-run temp file first, so a crash mid
matrix never corrupts the shared log; completed records are merged into the
append-only JSONL under a lock. Failures are isolated per run.
"""

import json
import logging
import os
import threading
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence

from .agent.runtime import Budgets
from .clock import SystemClock
from .judge import attribute_ui_failure, judge_run
from .pipeline import Pipeline, SiteConfig, safe_run_id, write_meta
from .profiles import ProfileSpec

logger = logging.getLogger(__name__)

VARIANTS = ("WithNav", "WoNav")
DEFAULT_MAX_SESSIONS = 4


@dataclass
class RunRecord:
    instance_id: str
    task_id: str
    site_id: str
    model_id: str
    variant: str
    failure_class: str  # success | error | timeout
    init_failed: bool = False
    ui_attribution: Optional[List[str]] = None
    wallclock_s: float = 0.0
    run_dir: str = ""
    termination: Optional[str] = None
    category: str = ""
    initial_state: str = ""
    gt_element_types: List[str] = field(default_factory=list)
    dataset_id: str = ""

    def to_json(self) -> dict:
        return {
            "instance_id": self.instance_id,
            "task_id": self.task_id,
            "site_id": self.site_id,
            "model_id": self.model_id,
            "variant": self.variant,
            "failure_class": self.failure_class,
            "init_failed": self.init_failed,
            "ui_attribution": self.ui_attribution,
            "wallclock_s": self.wallclock_s,
            "run_dir": self.run_dir,
            "termination": self.termination,
            "category": self.category,
            "initial_state": self.initial_state,
            "gt_element_types": self.gt_element_types,
            "dataset_id": self.dataset_id,
        }

    @staticmethod
    def from_json(obj: dict) -> "RunRecord":
        return RunRecord(
            instance_id=obj["instance_id"], task_id=obj["task_id"],
            site_id=obj["site_id"], model_id=obj["model_id"],
            variant=obj["variant"], failure_class=obj["failure_class"],
            init_failed=obj.get("init_failed", False),
            ui_attribution=obj.get("ui_attribution"),
            wallclock_s=obj.get("wallclock_s", 0.0),
            run_dir=obj.get("run_dir", ""),
            termination=obj.get("termination"),
            category=obj.get("category", ""),
            initial_state=obj.get("initial_state", ""),
            gt_element_types=obj.get("gt_element_types", []),
            dataset_id=obj.get("dataset_id", ""),
        )


@dataclass
class RunnerConfig:
    workdir: str
    site_configs: Dict[str, SiteConfig]
    base_profile_dir: str
    session_factory: Callable
    judge_clients_factory: Optional[Callable[[], Sequence]] = None
    attribution_client_factory: Optional[Callable[[], object]] = None
    jobs: int = 1
    max_sessions: int = DEFAULT_MAX_SESSIONS
    budgets: Budgets = field(default_factory=Budgets)
    clock_factory: Callable = SystemClock
    som_seed: int = 0
    dataset_id: str = ""
    judge_settings: Dict[str, object] = field(default_factory=dict)


def results_log_path(workdir: str) -> str:
    return os.path.join(workdir, "results.jsonl")


def append_record(workdir: str, record: RunRecord, lock: threading.Lock) -> None:
    tmp_path = os.path.join(record.run_dir or workdir, "record.json")
    with open(tmp_path, "w", encoding="utf-8") as fh:
        json.dump(record.to_json(), fh, indent=2)
        fh.write("\n")
    line = json.dumps(record.to_json(), sort_keys=True)
    with lock:
        with open(results_log_path(workdir), "a", encoding="utf-8") as fh:
            fh.write(line + "\n")


def run_one(instance, policy_factory, variant: str, config: RunnerConfig
            ) -> RunRecord:
    run_id = safe_run_id(instance.instance_id, policy_factory.policy_id, variant)
    run_dir = os.path.join(config.workdir, "runs", run_id)
    os.makedirs(run_dir, exist_ok=True)
    prompt = instance.prompt_for(variant)
    site = config.site_configs.get(instance.site_id)
    if site is None:
        raise KeyError(f"no site config for {instance.site_id}")

    clock = config.clock_factory()
    pipeline = Pipeline(config.session_factory, clock=clock,
                        budgets=config.budgets, som_seed=config.som_seed)
    spec = ProfileSpec(
        base_profile_dir=config.base_profile_dir,
        run_profile_dir=os.path.join(run_dir, "profile"),
    )
    start = clock.now()
    result = pipeline.run(instance, site, policy_factory.build(instance.instance_id),
                          spec, run_dir, prompt=prompt)
    record = RunRecord(
        instance_id=instance.instance_id,
        task_id=instance.task_id,
        site_id=instance.site_id,
        model_id=policy_factory.policy_id,
        variant=variant,
        failure_class="error",
        run_dir=run_dir,
        category=instance.category,
        initial_state=instance.initial_state,
        gt_element_types=instance.ground_truth.element_types(),
        dataset_id=config.dataset_id,
    )
    write_meta(run_dir, {
        "instance_id": instance.instance_id,
        "task_id": instance.task_id,
        "site_id": instance.site_id,
        "variant": variant,
        "model_id": policy_factory.policy_id,
        "prompt": prompt,
        "initial_state": instance.initial_state,
        "ground_truth": instance.ground_truth.to_json(),
        "fixture_expected_state": instance.fixture_expected_state,
        "judge_settings": config.judge_settings,
    })

    if result.init_failed:
        # environment fault, never judged as an agent failure
        record.init_failed = True
        record.failure_class = "error"
        record.termination = "init_failed"
        record.wallclock_s = clock.now() - start
        return record

    trajectory = result.trajectory
    record.termination = trajectory.termination
    record.wallclock_s = trajectory.wallclock_s

    if config.judge_clients_factory is not None:
        verdict = judge_run(run_dir, prompt, instance.ground_truth,
                            config.judge_clients_factory(),
                            termination=trajectory.termination)
        record.failure_class = verdict.failure_class
        if verdict.failure_class == "error" \
                and config.attribution_client_factory is not None:
            reasons = " | ".join(v.reason for v in verdict.verdicts
                                 if v.result == "INCORRECT") or "unspecified"
            record.ui_attribution = attribute_ui_failure(
                reasons, instance.ground_truth,
                config.attribution_client_factory())
    else:
        # unjudged run: classify by termination only
        record.failure_class = (
            "timeout" if trajectory.termination in ("iteration_limit", "timeout")
            else "success" if trajectory.termination == "answered" else "error")
    return record


def run_matrix(instances, policy_factories: Sequence, variants: Sequence[str],
               config: RunnerConfig) -> List[RunRecord]:
    """Fan runs out to a bounded worker pool; the results log gains one line
    per completed run."""
    os.makedirs(config.workdir, exist_ok=True)
    lock = threading.Lock()
    semaphore = threading.Semaphore(config.max_sessions)
    records: List[RunRecord] = []

    jobs = []
    for instance in instances:
        for factory in policy_factories:
            for variant in variants:
                jobs.append((instance, factory, variant))

    def _guarded(job):
        instance, factory, variant = job
        with semaphore:
            try:
                return run_one(instance, factory, variant, config)
            except Exception as exc:
                logger.exception("run failed: %s/%s/%s",
                                 instance.instance_id, factory.policy_id, variant)
                return RunRecord(
                    instance_id=instance.instance_id, task_id=instance.task_id,
                    site_id=instance.site_id, model_id=factory.policy_id,
                    variant=variant, failure_class="error", init_failed=True,
                    termination=f"runner_error: {exc}",
                    category=instance.category,
                    initial_state=instance.initial_state,
                    gt_element_types=instance.ground_truth.element_types(),
                    dataset_id=config.dataset_id)

    if config.jobs <= 1:
        for job in jobs:
            record = _guarded(job)
            append_record(config.workdir, record, lock)
            records.append(record)
    else:
        with ThreadPoolExecutor(max_workers=config.jobs) as pool:
            futures = [pool.submit(_guarded, job) for job in jobs]
            for future in as_completed(futures):
                record = future.result()
                append_record(config.workdir, record, lock)
                records.append(record)
    return records


def load_records(path: str) -> List[RunRecord]:
    records = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                records.append(RunRecord.from_json(json.loads(line)))
    return records
