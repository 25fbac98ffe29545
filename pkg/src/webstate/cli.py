"""Command-line interface.

Subcommands: record-validate, replay, init-state, run, judge, report,
fixtures (serve/path). Exit codes: 0 success, 1 run failures present,
2 usage or configuration error.
"""

import argparse
import json
import logging
import os
import sys
import tempfile

from . import fixtures
from .aggregate import check_accounting, render_text, tables_for_log, write_csvs
from .agent.runtime import Budgets
from .clock import SystemClock
from .dataset import dataset_id_for, load_dataset
from .dom import FixtureSession
from .errors import TraceValidationError, WebstateError
from .judge import GroundTruth, judge_run
from .model_client import HttpChatClient
from .pipeline import load_site_configs
from .replay import ReplayEngine
from .runner import RunnerConfig, run_matrix
from .trace import StateDirective, load_trace

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_RUN_FAILURES = 1
EXIT_USAGE = 2


def _fixture_session_factory(launch):
    return FixtureSession(launch.profile_dir, color_scheme=launch.color_scheme)


def _session_for(args) -> FixtureSession:
    profile = args.profile or tempfile.mkdtemp(prefix="webstate-profile-")
    return FixtureSession(profile)


def cmd_record_validate(args) -> int:
    try:
        trace = load_trace(args.trace)
    except FileNotFoundError:
        print(f"no such trace file: {args.trace}", file=sys.stderr)
        return EXIT_USAGE
    except TraceValidationError as exc:
        print("trace INVALID:")
        for pointer, message in exc.violations:
            print(f"  {pointer or '/'}: {message}")
        return EXIT_RUN_FAILURES
    print(f"trace OK: {trace.name!r}, {len(trace.events)} events, "
          f"start_url {trace.start_url}")
    return EXIT_OK


def _directive_for_trace(trace, state):
    """--state shorthand: apply the desired state to every recorded event
    whose captured state came from a binary toggle source."""
    entries = {}
    for event in trace.events:
        before = event.state_before
        if before is not None and before.source in (
                "aria_checked", "aria_pressed", "aria_selected",
                "native_checked"):
            entries[str(event.seq)] = state
    if not entries:
        return None
    return StateDirective(entries)


def cmd_replay(args) -> int:
    trace = load_trace(args.trace)
    directive = _directive_for_trace(trace, args.state) if args.state else None
    session = _session_for(args)
    engine = ReplayEngine(session)
    report = engine.replay(trace, directive)
    print(json.dumps(report.to_json(), indent=2))
    return EXIT_OK if report.outcome == "success" else EXIT_RUN_FAILURES


def cmd_init_state(args) -> int:
    site_configs = load_site_configs(args.sites_dir)
    site = site_configs.get(args.site)
    if site is None:
        print(f"unknown site {args.site!r}; known: {sorted(site_configs)}",
              file=sys.stderr)
        return EXIT_USAGE
    task = site.tasks.get(args.task)
    if task is None or not task.state_trace:
        print(f"no state trace configured for task {args.task!r}",
              file=sys.stderr)
        return EXIT_USAGE
    trace = load_trace(task.state_trace)
    directive = None
    if args.state:
        entries = task.directives.get(args.state)
        if not entries:
            print(f"no {args.state} directive for task {args.task!r}",
                  file=sys.stderr)
            return EXIT_USAGE
        directive = StateDirective(entries)
    session = _session_for(args)
    report = ReplayEngine(session).replay(trace, directive)
    print(json.dumps(report.to_json(), indent=2))
    return EXIT_OK if report.outcome == "success" else EXIT_RUN_FAILURES


def _judge_factories(kind: str):
    if kind == "mock":
        from .fixtures.mock_judge import (EchoAttributionClient,
                                          mock_ensemble_clients)
        return mock_ensemble_clients, EchoAttributionClient
    if kind == "live":
        models = os.environ.get("WEBSTATE_JUDGE_MODELS", "")
        names = [m.strip() for m in models.split(",") if m.strip()]
        if len(names) != 3:
            raise WebstateError(
                "live judging needs WEBSTATE_JUDGE_MODELS=<m1>,<m2>,<m3>")
        def clients():
            return [HttpChatClient(model=name) for name in names]
        def attribution():
            return HttpChatClient(model=names[0])
        return clients, attribution
    return None, None


def cmd_run(args) -> int:
    try:
        instances = load_dataset(args.dataset)
    except WebstateError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    if not instances:
        print("dataset is empty; nothing to run")
        return EXIT_OK
    from .fixtures.policies import named_policy_factories
    factories = named_policy_factories()
    if args.policy == "model":
        from .agent.policies import PolicyFactory
        from .assets import load_prompt
        try:
            client = HttpChatClient()
        except Exception as exc:
            print(f"model policy not configured: {exc}", file=sys.stderr)
            return EXIT_USAGE
        factories["model"] = PolicyFactory(
            policy_id=client.model_id or "model", model_client=client,
            system_prompt=load_prompt("agent_system"))
    factory = factories.get(args.policy)
    if factory is None:
        known = sorted(factories) + ["model"]
        print(f"unknown policy {args.policy!r}; known: {known}",
              file=sys.stderr)
        return EXIT_USAGE
    variants = {"withnav": ["WithNav"], "wonav": ["WoNav"],
                "both": ["WithNav", "WoNav"]}[args.variant]
    workdir = args.workdir or tempfile.mkdtemp(prefix="webstate-run-")
    base_profile = args.base_profile or os.path.join(workdir, "base-profile")
    os.makedirs(base_profile, exist_ok=True)
    try:
        judge_factory, attribution_factory = _judge_factories(args.judge)
    except WebstateError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    config = RunnerConfig(
        workdir=workdir,
        site_configs=load_site_configs(args.sites_dir),
        base_profile_dir=base_profile,
        session_factory=_fixture_session_factory,
        judge_clients_factory=judge_factory,
        attribution_client_factory=(lambda: attribution_factory())
        if attribution_factory else None,
        jobs=args.jobs,
        budgets=Budgets(wallclock_s=args.max_seconds),
        clock_factory=SystemClock,
        dataset_id=dataset_id_for(args.dataset, instances),
        judge_settings={"judge": args.judge, "temperature": 1.0,
                        "reasoning": "high"},
    )
    records = run_matrix(instances, [factory], variants, config)
    failures = [r for r in records if r.failure_class != "success"]
    print(f"runs: {len(records)}, failures: {len(failures)}")
    print(f"results log: {os.path.join(workdir, 'results.jsonl')}")
    return EXIT_RUN_FAILURES if failures else EXIT_OK


def cmd_judge(args) -> int:
    meta_path = os.path.join(args.run_dir, "meta.json")
    if not os.path.exists(meta_path):
        print(f"no meta.json under {args.run_dir}", file=sys.stderr)
        return EXIT_USAGE
    with open(meta_path, encoding="utf-8") as fh:
        meta = json.load(fh)
    gt = GroundTruth.from_json(meta["ground_truth"]) if "ground_truth" in meta \
        else GroundTruth(task_id=meta.get("task_id", "unknown"))
    try:
        clients_factory, _ = _judge_factories("mock" if args.mock else "live")
    except WebstateError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    verdict = judge_run(args.run_dir, meta.get("prompt", ""), gt,
                        clients_factory())
    print(json.dumps(verdict.to_json(), indent=2))
    return EXIT_OK if verdict.final == "CORRECT" else EXIT_RUN_FAILURES


def cmd_report(args) -> int:
    try:
        tables = tables_for_log(args.results)
    except WebstateError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    problems = check_accounting(tables)
    print(render_text(tables))
    if args.out:
        written = write_csvs(tables, args.out)
        print("csv: " + ", ".join(written))
    if problems:
        print("ACCOUNTING PROBLEMS:")
        for problem in problems:
            print("  " + problem)
        return EXIT_RUN_FAILURES
    return EXIT_OK


def cmd_fixtures(args) -> int:
    if args.fixtures_cmd == "path":
        print(fixtures.DATA_DIR)
        return EXIT_OK
    if args.fixtures_cmd == "serve":
        from .fixtures.serve import serve_forever
        serve_forever(port=args.port)
        return EXIT_OK
    return EXIT_USAGE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="webstate",
        description="Record-and-replay state control and agent benchmarking "
                    "on stateful site-settings tasks.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("record-validate", help="validate a recorded trace file")
    p.add_argument("trace")
    p.set_defaults(func=cmd_record_validate)

    p = sub.add_parser("replay", help="replay a trace against a fixture session")
    p.add_argument("trace")
    p.add_argument("--state", choices=["ON", "OFF"])
    p.add_argument("--site", help="fixture site id (informational)")
    p.add_argument("--profile", help="profile dir (persists state across runs)")
    p.set_defaults(func=cmd_replay)

    p = sub.add_parser("init-state", help="replay a configured task state trace")
    p.add_argument("site")
    p.add_argument("task")
    p.add_argument("--state", choices=["ON", "OFF", "SINGLE"])
    p.add_argument("--profile")
    p.add_argument("--sites-dir", default=fixtures.site_config_dir())
    p.set_defaults(func=cmd_init_state)

    p = sub.add_parser("run", help="run a dataset x policy x variant matrix")
    p.add_argument("dataset")
    p.add_argument("--policy", required=True)
    p.add_argument("--variant", choices=["withnav", "wonav", "both"],
                   required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--judge", choices=["mock", "live", "none"], default="mock")
    p.add_argument("--workdir")
    p.add_argument("--base-profile")
    p.add_argument("--sites-dir", default=fixtures.site_config_dir())
    p.add_argument("--max-seconds", type=float, default=600.0,
                   help="per-run wall-clock budget")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("judge", help="judge one run directory")
    p.add_argument("run_dir")
    p.add_argument("--mock", action="store_true")
    p.set_defaults(func=cmd_judge)

    p = sub.add_parser("report", help="aggregate a results log into tables")
    p.add_argument("results")
    p.add_argument("--out", help="directory for CSV output")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("fixtures", help="fixture corpus utilities")
    fsub = p.add_subparsers(dest="fixtures_cmd", required=True)
    serve = fsub.add_parser("serve", help="serve fixture sites over HTTP")
    serve.add_argument("--port", type=int, default=8750)
    fsub.add_parser("path", help="print the bundled fixture data directory")
    p.set_defaults(func=cmd_fixtures)
    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=os.environ.get("WEBSTATE_LOG", "WARNING"))
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except (WebstateError, FileNotFoundError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
