"""Acceptance criteria, one test per criterion, each printing a PASS/FAIL
line. Everything runs offline: traces are the pre-recorded JSON fixtures in
the repo and the browser is the in-process fixture backend."""

import functools
import itertools
import json
import os
import time

import pytest
from hypothesis import given, settings

from conftest import session_traces
from webstate.aggregate import aggregate, check_accounting, tables_for_log
from webstate.agent.actions import parse_action
from webstate.agent.runtime import AgentRuntime
from webstate.clock import FakeClock
from webstate.dataset import dataset_id_for, dual_task_ids, load_dataset
from webstate.dom import FixtureSession
from webstate.errors import ActionParseError
from webstate.fixtures import (dataset_path, paper_results_path,
                               site_config_dir, trace_path)
from webstate.fixtures.mock_judge import mock_ensemble_clients
from webstate.fixtures.policies import named_policy_factories
from webstate.judge import ensemble, majority, parse_verdict
from webstate.model_client import StaticClient
from webstate.pipeline import load_site_configs
from webstate.replay import ReplayEngine
from webstate.resolver import (WEBSP_INDEX_ATTR, build_interaction_index,
                               extract_bundle, resolve)
from webstate.runner import RunnerConfig, run_matrix
from webstate.trace import (FramePath, LocatorBundle, StateDirective,
                            load_trace, serialize_trace, validate_trace)

DUAL_TRACES = [
    # (trace name, auth needed, directive entries per desired state)
    ("site-a-notifications-email", True, {
        "ON": {'[data-testid="email-toggle"]': "ON",
               '[data-testid="save-settings"]': "OFF"},
        "OFF": {'[data-testid="email-toggle"]': "OFF",
               '[data-testid="save-settings"]': "OFF"}}),
    ("site-a-notifications-promo", True, {
        "ON": {'[data-testid="promo-toggle"]': "ON",
               '[data-testid="save-settings"]': "OFF"},
        "OFF": {'[data-testid="promo-toggle"]': "OFF",
                '[data-testid="save-settings"]': "OFF"}}),
    ("site-b-profile-public", False, {"ON": {"1": "ON"}, "OFF": {"1": "OFF"}}),
    ("site-b-profile-indexing", False, {"ON": {"1": "ON"}, "OFF": {"1": "OFF"}}),
]


def criterion(number, title):
    def decorate(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            try:
                fn(*args, **kwargs)
            except BaseException:
                print(f"\nACCEPTANCE {number:>2} {title}: FAIL", flush=True)
                raise
            print(f"\nACCEPTANCE {number:>2} {title}: PASS", flush=True)
        return wrapper
    return decorate


def fresh_session(tmp_path, tag, authed_sites=()):
    session = FixtureSession(str(tmp_path / f"profile-{tag}"),
                             clock=FakeClock())
    for site in authed_sites:
        session.store.set(site, "auth", True)
    return session


def detected_states(session, trace, directive):
    """Re-resolve each directive-covered stateful event and detect its state."""
    engine = ReplayEngine(session, clock=FakeClock())
    session.navigate(trace.start_url)
    states = {}
    for event in trace.events:
        desired = directive.desired_for(event)
        if desired is None:
            continue
        handle = resolve(event.locator, FramePath(), session).element
        states[event.seq] = (engine.detect_state(handle).value, desired)
    return states


@criterion(1, "table arithmetic reproduction")
def test_criterion_1_table_arithmetic(capsys):
    start = time.monotonic()
    tables = tables_for_log(paper_results_path())
    top = tables.overall_row("Gemini-3-Pro-Preview", "WithNav")
    assert (top["success"], top["error"], top["timeout"]) == (166, 26, 8)
    assert top["success_rate"] == pytest.approx(83.0, abs=0.05)
    gemma = tables.overall_row("Gemma-3-27b", "WoNav")
    assert (gemma["success"], gemma["error"], gemma["timeout"]) == (42, 127, 31)
    assert check_accounting(tables, expected_total=200) == []
    assert len(tables.overall) == 16  # 8 models x 2 variants, all sum to 200
    from webstate.cli import main
    assert main(["report", paper_results_path()]) == 0
    capsys.readouterr()
    elapsed = time.monotonic() - start
    assert elapsed < 5.0, f"report took {elapsed:.1f}s"


@criterion(2, "replay idempotence on dual-state fixtures")
def test_criterion_2_replay_idempotence(tmp_path):
    start = time.monotonic()
    for name, auth, directives in DUAL_TRACES:
        for desired, entries in directives.items():
            session = fresh_session(tmp_path, f"{name}-{desired}",
                                    authed_sites=("site-a",) if auth else ())
            engine = ReplayEngine(session, clock=FakeClock())
            trace = load_trace(trace_path(name))
            directive = StateDirective(entries)
            engine.replay(trace, directive)
            second = engine.replay(trace, directive)
            assert second.events_executed == 0, (name, desired)
            assert second.outcome == "success"
            for seq, (got, want) in detected_states(
                    session, trace, directive).items():
                assert got == want, (name, desired, seq)
    assert time.monotonic() - start < 120.0


@criterion(3, "single recording drives both desired states")
def test_criterion_3_single_recording_dual_state(tmp_path):
    for name, auth, directives in DUAL_TRACES:
        trace = load_trace(trace_path(name))
        for desired in ("ON", "OFF"):
            session = fresh_session(tmp_path, f"c3-{name}-{desired}",
                                    authed_sites=("site-a",) if auth else ())
            engine = ReplayEngine(session, clock=FakeClock())
            report = engine.replay(trace, StateDirective(directives[desired]))
            assert report.outcome == "success", (name, desired)
            states = detected_states(session, trace,
                                     StateDirective(directives[desired]))
            toggle_states = {seq: got for seq, (got, want) in states.items()
                             if want == desired}
            assert all(got == desired for got in toggle_states.values()), \
                (name, desired, states)


@criterion(4, "resolver fallback ladder")
def test_criterion_4_resolver_ladder(tmp_path):
    # author a bundle on the dynamic re-render fixture at its second load
    author = fresh_session(tmp_path, "c4-author")
    author.navigate("https://fixture-b.local/profile")
    author.navigate("https://fixture-b.local/profile")
    build_interaction_index(author)
    rerender_bundle = extract_bundle(author,
                                     author.query_css("[role=switch]")[0])
    # stable fixture bundle
    stable_session = fresh_session(tmp_path, "c4-stable")
    stable_session.navigate("https://fixture-a.local/quick")
    build_interaction_index(stable_session)
    stable_bundle = extract_bundle(
        stable_session, stable_session.query_css('[data-testid="quick-digest"]')[0])
    dup_bundle = LocatorBundle(tag_name="button", label_text="Save",
                               css_path="html > body > div:nth-of-type(1) > button")

    for repeat in range(10):
        live = fresh_session(tmp_path, f"c4-r{repeat}")
        live.navigate("https://fixture-b.local/profile")
        result = resolve(rerender_bundle, FramePath(), live)
        assert result.tier_used == "websp_index", repeat

        live.navigate("https://fixture-a.local/quick")
        result = resolve(stable_bundle, FramePath(), live)
        assert result.tier_used == "stable_attr", repeat

        live.navigate("https://fixture-unit.local/dupes")
        result = resolve(dup_bundle, FramePath(), live)
        assert result.tier_used == "label_text"
        assert result.ambiguity_count == 2
        first_button = live.query_css("button")[0]
        assert result.element is first_button, repeat


@criterion(5, "interaction index determinism")
def test_criterion_5_index_determinism(tmp_path):
    from webstate.dom.nodes import DomNode, TextNode
    pages = [
        ("https://fixture-a.local/", ()),
        ("https://fixture-a.local/settings", ("site-a",)),
        ("https://fixture-b.local/profile", ()),
        ("https://fixture-c.local/", ()),
        ("https://fixture-unit.local/scroll", ()),
    ]
    for url, auth in pages:
        session = fresh_session(tmp_path, f"c5-{hash(url) & 0xffff}",
                                authed_sites=auth)
        session.navigate(url)

        def assignment():
            build_interaction_index(session)
            return [(node.tag, node.attrs.get("data-testid", ""),
                     node.attrs[WEBSP_INDEX_ATTR])
                    for node in session._doc().root.iter_composed()
                    if WEBSP_INDEX_ATTR in node.attrs]

        first = assignment()
        assert assignment() == first, url

        body = session._doc().body()
        note = DomNode("p")
        text = TextNode("a perfectly inert paragraph")
        text.parent = note
        note.children.append(text)
        body.insert_before(note, body.children[0])
        assert assignment() == first, f"{url}: non-interactive insert shifted indices"


@criterion(6, "budget enforcement with judge auto-fail")
def test_criterion_6_budget_enforcement(tmp_path):
    factories = named_policy_factories()

    session = fresh_session(tmp_path, "c6-steps")
    session.navigate("https://fixture-a.local/")
    runtime = AgentRuntime(session, clock=FakeClock())
    overstep = runtime.run("t", "p",
                           factories["scripted-overstepper"].build("t"))
    assert overstep.termination == "iteration_limit"
    assert overstep.budget_steps == 21  # stops after the 21st budgeted action

    clock = FakeClock(auto_tick=5.0)
    session2 = FixtureSession(str(tmp_path / "c6-scroll"), clock=clock)
    session2.navigate("https://fixture-unit.local/scroll")
    runtime2 = AgentRuntime(session2, clock=clock)
    scroll = runtime2.run("t", "p", factories["scroll-only"].build("t"))
    assert scroll.termination == "timeout"
    assert scroll.wallclock_s >= 600.0

    from webstate.judge import JudgeRequest
    for trajectory in (overstep, scroll):
        clients = mock_ensemble_clients()
        verdict = ensemble(trajectory.termination,
                           JudgeRequest(system_prompt="", payload=[]), clients)
        assert verdict.auto_failed and verdict.final == "INCORRECT"
        assert verdict.failure_class == "timeout"
        assert all(client.calls == 0 for client in clients)


@criterion(7, "end-to-end fixture benchmark")
def test_criterion_7_end_to_end(tmp_path):
    start = time.monotonic()
    instances = load_dataset(dataset_path())
    factories = named_policy_factories()

    def config(tag, jobs=2):
        base = tmp_path / f"{tag}-base"
        base.mkdir(exist_ok=True)
        return RunnerConfig(
            workdir=str(tmp_path / tag),
            site_configs=load_site_configs(site_config_dir()),
            base_profile_dir=str(base),
            session_factory=lambda launch: FixtureSession(
                launch.profile_dir, color_scheme=launch.color_scheme,
                clock=FakeClock()),
            judge_clients_factory=mock_ensemble_clients,
            jobs=jobs,
            clock_factory=FakeClock,
            dataset_id=dataset_id_for(dataset_path(), instances),
        )

    perfect = run_matrix(instances, [factories["scripted-perfect"]],
                         ["WithNav", "WoNav"], config("perfect"))
    assert len(perfect) == 24
    assert sum(1 for r in perfect if r.failure_class == "success") == 24

    wrong = run_matrix(instances, [factories["scripted-wrong-toggle"]],
                       ["WithNav", "WoNav"], config("wrong"))
    failed = {(r.instance_id, r.variant) for r in wrong
              if r.failure_class != "success"}
    off_instances = {i.instance_id for i in instances
                     if i.initial_state == "OFF"}
    assert failed == {(iid, variant) for iid in off_instances
                      for variant in ("WithNav", "WoNav")}

    tables = aggregate(wrong)
    assert len(dual_task_ids(instances)) == 4
    for row in tables.dual_state:
        assert row["only_on"] == 4 and row["both_correct"] == 0
        assert row["only_off"] == 0 and row["both_failed"] == 0
    elapsed = time.monotonic() - start
    assert elapsed < 600.0, f"benchmark took {elapsed:.0f}s"


@criterion(8, "ensemble vote properties")
def test_criterion_8_vote_properties():
    def v(result):
        return json.dumps({"result": result, "reason": "r"})

    from webstate.judge import JudgeRequest
    request = JudgeRequest(system_prompt="", payload=[])
    for votes in itertools.product(["CORRECT", "INCORRECT"], repeat=3):
        expected = "CORRECT" if votes.count("CORRECT") >= 2 else "INCORRECT"
        assert majority(votes) == expected
        for ordering in set(itertools.permutations(votes)):
            clients = [StaticClient([v(r)], f"m{i}")
                       for i, r in enumerate(ordering)]
            assert ensemble("answered", request, clients).final == expected

    babble = [StaticClient(["nonsense"], "a"),
              StaticClient([v("INCORRECT")], "b"),
              StaticClient([v("CORRECT")], "c")]
    verdict = ensemble("answered", request, babble)
    unparsed = next(x for x in verdict.verdicts if x.model_id == "a")
    assert unparsed.result == "INCORRECT"
    assert verdict.final == "INCORRECT"
    with pytest.raises(ValueError):
        parse_verdict("not a verdict at all")


@criterion(9, "action grammar acceptance and rejection")
def test_criterion_9_action_grammar(tmp_path):
    from test_actions import ACCEPTED, MALFORMED
    for raw, expected in ACCEPTED:
        assert parse_action(raw) == expected
    assert len(MALFORMED) == 20
    for raw in MALFORMED:
        with pytest.raises(ActionParseError):
            parse_action(raw)

    # Type never triggers form submission
    from webstate.agent.actions import Action
    from webstate.agent.observe import observe
    session = fresh_session(tmp_path, "c9")
    session.navigate("https://fixture-unit.local/form")
    runtime = AgentRuntime(session, clock=FakeClock())
    observation = observe(session, 0)
    field = next(e for e in observation.elements if e.tag == "input")
    runtime.execute_action(Action("Type", label=field.label, text="hello"),
                           observation)
    assert session._doc().flags.get("search_submitted") is not True


@criterion(10, "trace round-trip over 100 random traces")
def test_criterion_10_trace_round_trip():
    seen = {"count": 0}

    @given(session_traces())
    @settings(max_examples=100, deadline=None)
    def check(trace):
        seen["count"] += 1
        data = serialize_trace(trace)
        back = validate_trace(data)
        assert back == trace
        assert serialize_trace(back) == data  # canonical byte-stability

    check()
    assert seen["count"] >= 100
