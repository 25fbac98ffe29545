"""Three-phase run pipeline: authentication, state initialization, task
execution.

Phase 1 replays the site's login trace unless a configured auth marker is
already present; phase 2 replays the task's state trace under the instance's
directive (or calls a named API hook); phase 3 runs the agent. A failure in
phase 1 or 2 aborts with outcome ``init_failed`` and never counts against the
agent.
"""

import json
import logging
import os
import re
from dataclasses import dataclass, field
from typing import Callable, Dict, Optional

from .agent.runtime import Budgets, Trajectory, run_agent
from .clock import SystemClock
from .errors import WebstateError
from .profiles import LaunchConfig, ProfileSpec, prepare_profile
from .replay import ReplayEngine, ReplayReport
from .trace import StateDirective, load_trace

logger = logging.getLogger(__name__)

_STATE_HOOKS: Dict[str, Callable] = {}


def register_state_hook(name: str, hook: Callable) -> None:
    _STATE_HOOKS[name] = hook


def profile_default_hook(session, site_config, task_id, **params) -> None:
    """The fresh profile copy *is* the desired initial state (e.g. default
    cookie settings); nothing to do."""


def spawn_sessions_hook(session, site_config, task_id, n: int = 5, **params) -> None:
    """Models session-revocation setups by registering n authenticated
    sessions in the site's server-side state."""
    store = getattr(session, "store", None)
    if store is None:
        raise WebstateError("spawn_sessions hook needs a fixture-backed session")
    sessions = [f"session-{i}" for i in range(int(n))]
    store.set(site_config.site_id, "sessions", sessions)


register_state_hook("profile_default", profile_default_hook)
register_state_hook("spawn_sessions", spawn_sessions_hook)


@dataclass
class TaskStateConfig:
    state_trace: Optional[str] = None  # path to trace file
    directives: Dict[str, Dict[str, str]] = field(default_factory=dict)
    api_hook: Optional[str] = None
    hook_params: Dict[str, object] = field(default_factory=dict)


@dataclass
class SiteConfig:
    site_id: str
    auth_required: bool = False
    login_trace: Optional[str] = None
    auth_marker: str = ""
    home_url: str = ""
    tasks: Dict[str, TaskStateConfig] = field(default_factory=dict)

    @staticmethod
    def from_json(obj: dict, base_dir: str = "") -> "SiteConfig":
        def _path(p):
            if not p:
                return None
            return p if os.path.isabs(p) else os.path.join(base_dir, p)

        tasks = {}
        for task_id, cfg in (obj.get("tasks") or {}).items():
            tasks[task_id] = TaskStateConfig(
                state_trace=_path(cfg.get("state_trace")),
                directives=cfg.get("directives") or {},
                api_hook=cfg.get("api_hook"),
                hook_params=cfg.get("hook_params") or {},
            )
        return SiteConfig(
            site_id=obj["site_id"],
            auth_required=bool(obj.get("auth_required", False)),
            login_trace=_path(obj.get("login_trace")),
            auth_marker=obj.get("auth_marker", ""),
            home_url=obj.get("home_url", ""),
            tasks=tasks,
        )


def load_site_config(path: str) -> SiteConfig:
    with open(path, "r", encoding="utf-8") as fh:
        return SiteConfig.from_json(json.load(fh), base_dir=os.path.dirname(path))


def load_site_configs(directory: str) -> Dict[str, SiteConfig]:
    configs = {}
    for name in sorted(os.listdir(directory)):
        if name.endswith(".json"):
            config = load_site_config(os.path.join(directory, name))
            configs[config.site_id] = config
    return configs


@dataclass
class PipelineResult:
    run_dir: str
    outcome: str  # ok | init_failed
    auth_report: Optional[ReplayReport] = None
    state_report: Optional[ReplayReport] = None
    trajectory: Optional[Trajectory] = None
    init_error: Optional[str] = None

    @property
    def init_failed(self) -> bool:
        return self.outcome == "init_failed"


class Pipeline:
    """Runs one instance end to end inside one browser session."""

    def __init__(self, session_factory: Callable[[LaunchConfig], object],
                 clock=None, budgets: Optional[Budgets] = None,
                 som_seed: int = 0):
        self.session_factory = session_factory
        self.clock = clock or SystemClock()
        self.budgets = budgets or Budgets()
        self.som_seed = som_seed

    def run(self, instance, site: SiteConfig, policy, spec: ProfileSpec,
            run_dir: str, prompt: Optional[str] = None) -> PipelineResult:
        os.makedirs(run_dir, exist_ok=True)
        if prompt is None:
            prompt = getattr(instance, "prompt", "") or instance.prompt_wonav
        result = PipelineResult(run_dir=run_dir, outcome="ok")
        launch = prepare_profile(spec)
        session = self.session_factory(launch)
        engine = ReplayEngine(session, clock=self.clock)

        try:
            result.auth_report = self._phase_auth(session, engine, site)
            result.state_report = self._phase_state(session, engine, site,
                                                    instance)
        except WebstateError as exc:
            result.outcome = "init_failed"
            result.init_error = f"{type(exc).__name__}: {exc}"
            logger.warning("init failed for %s: %s", instance.instance_id, exc)
        else:
            for report, phase in ((result.auth_report, "auth"),
                                  (result.state_report, "state")):
                if report is not None and report.outcome == "failed":
                    result.outcome = "init_failed"
                    result.init_error = f"{phase} replay failed"
        self._write_init_report(result)

        if result.outcome == "ok":
            # phase 3 precondition: the agent starts at the task's URL, not
            # wherever state replay left the session
            session.navigate(instance.start_url)
            trajectory_dir = os.path.join(run_dir, "trajectory")
            result.trajectory = run_agent(
                task_id=instance.task_id,
                prompt=prompt,
                policy=policy,
                session=session,
                budgets=self.budgets,
                clock=self.clock,
                out_dir=trajectory_dir,
                som_seed=self.som_seed,
            )
        self._write_final_state(session, run_dir)
        return result

    # -- phases -------------------------------------------------------------

    def _phase_auth(self, session, engine, site: SiteConfig
                    ) -> Optional[ReplayReport]:
        if not site.auth_required:
            return None
        if site.home_url and site.auth_marker:
            session.navigate(site.home_url)
            if session.query_css(site.auth_marker):
                logger.info("auth marker present; login replay skipped")
                return None
        if not site.login_trace:
            raise WebstateError(
                f"site {site.site_id} requires auth but has no login trace")
        trace = load_trace(site.login_trace)
        return engine.replay(trace, None)

    def _phase_state(self, session, engine, site: SiteConfig, instance
                     ) -> Optional[ReplayReport]:
        task_cfg = site.tasks.get(instance.task_id)
        if task_cfg is None:
            if instance.initial_state == "NA":
                return None
            raise WebstateError(
                f"no state config for task {instance.task_id} on {site.site_id}")
        if task_cfg.api_hook:
            hook = _STATE_HOOKS.get(task_cfg.api_hook)
            if hook is None:
                raise WebstateError(f"unknown state hook {task_cfg.api_hook!r}")
            hook(session, site, instance.task_id, **task_cfg.hook_params)
            return None
        if not task_cfg.state_trace:
            return None
        trace = load_trace(task_cfg.state_trace)
        directive = None
        entries = task_cfg.directives.get(instance.initial_state)
        if entries:
            directive = StateDirective(entries)
        return engine.replay(trace, directive)

    # -- artifacts ----------------------------------------------------------

    def _write_init_report(self, result: PipelineResult) -> None:
        payload = {
            "outcome": result.outcome,
            "init_error": result.init_error,
            "auth": result.auth_report.to_json() if result.auth_report else None,
            "state": result.state_report.to_json() if result.state_report else None,
        }
        with open(os.path.join(result.run_dir, "init_report.json"), "w",
                  encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")

    def _write_final_state(self, session, run_dir: str) -> None:
        snapshot = getattr(session, "state_snapshot", None)
        if snapshot is None:
            return
        with open(os.path.join(run_dir, "final_state.json"), "w",
                  encoding="utf-8") as fh:
            json.dump(snapshot(), fh, indent=2, sort_keys=True)
            fh.write("\n")


def write_meta(run_dir: str, meta: dict) -> None:
    with open(os.path.join(run_dir, "meta.json"), "w", encoding="utf-8") as fh:
        json.dump(meta, fh, indent=2, sort_keys=True)
        fh.write("\n")


def safe_run_id(*parts: str) -> str:
    raw = "__".join(parts)
    return re.sub(r"[^A-Za-z0-9_.-]", "-", raw)
