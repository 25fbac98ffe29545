"""Profile lifecycle and the three-phase pipeline."""

import json
import os

import pytest

from webstate.clock import FakeClock
from webstate.dataset import load_dataset
from webstate.dom import FixtureSession
from webstate.errors import ProfileError
from webstate.fixtures import dataset_path, site_config_dir, trace_path
from webstate.pipeline import (Pipeline, SiteConfig, load_site_configs,
                               safe_run_id)
from webstate.profiles import (LaunchConfig, ProfileSpec, hash_dir,
                               prepare_profile, register_anti_bot_hook)


@pytest.fixture
def base_profile(tmp_path):
    base = tmp_path / "base"
    base.mkdir()
    (base / "fixture_state.json").write_text(json.dumps(
        {"sites": {"site-a": {"auth": True}}, "load_counts": {}}))
    return str(base)


@pytest.fixture
def instances():
    return {i.instance_id: i for i in load_dataset(dataset_path())}


@pytest.fixture
def sites():
    return load_site_configs(site_config_dir())


def fixture_session_factory(launch: LaunchConfig) -> FixtureSession:
    return FixtureSession(launch.profile_dir, color_scheme=launch.color_scheme,
                          clock=FakeClock())


def make_pipeline():
    return Pipeline(fixture_session_factory, clock=FakeClock())


class TestProfiles:
    def test_run_profile_copies_base_cookies(self, base_profile, tmp_path):
        run_dir = str(tmp_path / "run-profile")
        config = prepare_profile(ProfileSpec(base_profile, run_dir))
        assert config.color_scheme == "light"
        session = FixtureSession(run_dir, clock=FakeClock())
        assert session.store.get("site-a", "auth") is True

    def test_base_untouched_after_run_mutations(self, base_profile, tmp_path):
        before = hash_dir(base_profile)
        run_dir = str(tmp_path / "rp")
        prepare_profile(ProfileSpec(base_profile, run_dir))
        session = FixtureSession(run_dir, clock=FakeClock())
        session.store.set("site-a", "auth", False)
        session.store.set("site-a", "email_notifications", "OFF")
        assert hash_dir(base_profile) == before

    def test_missing_base_is_profile_error(self, tmp_path):
        with pytest.raises(ProfileError):
            prepare_profile(ProfileSpec(str(tmp_path / "nope"),
                                        str(tmp_path / "run")))

    def test_anti_bot_hook_called(self, base_profile, tmp_path):
        calls = []
        register_anti_bot_hook("probe", lambda cfg: calls.append(cfg))
        prepare_profile(ProfileSpec(base_profile, str(tmp_path / "r2"),
                                    anti_bot_hook="probe"))
        assert len(calls) == 1

    def test_unknown_hook_rejected(self, base_profile, tmp_path):
        with pytest.raises(ProfileError):
            prepare_profile(ProfileSpec(base_profile, str(tmp_path / "r3"),
                                        anti_bot_hook="no-such-hook"))

    def test_light_mode_forces_light_rendering(self, base_profile, tmp_path):
        light = prepare_profile(ProfileSpec(base_profile, str(tmp_path / "l")))
        dark = prepare_profile(ProfileSpec(base_profile, str(tmp_path / "d"),
                                           light_mode=False))
        s_light = fixture_session_factory(light)
        s_light.navigate("https://fixture-unit.local/dark")
        s_dark = fixture_session_factory(dark)
        s_dark.navigate("https://fixture-unit.local/dark")
        assert s_light.screenshot() != s_dark.screenshot()


class TestPipeline:
    def test_state_init_executes_then_agent_starts_from_desired(
            self, tmp_path, instances, sites):
        from webstate.fixtures.policies import named_policy_factories
        instance = instances["a-email-off"]  # default is ON -> init must act
        pipeline = make_pipeline()
        policy = named_policy_factories()["scripted-perfect"].build("a-email-off")
        base = tmp_path / "base"
        base.mkdir()
        result = pipeline.run(
            instance, sites["site-a"], policy,
            ProfileSpec(str(base), str(tmp_path / "p1")),
            str(tmp_path / "run1"), prompt=instance.prompt_wonav)
        assert result.outcome == "ok"
        assert result.auth_report.events_executed == 4  # login replayed
        assert result.state_report.events_executed == 2  # toggle + save
        final = json.load(open(os.path.join(result.run_dir,
                                            "final_state.json")))
        assert final["site-a"]["email_notifications"] == "OFF"

    def test_matching_state_all_skipped(self, tmp_path, instances, sites):
        from webstate.fixtures.policies import named_policy_factories
        instance = instances["a-email-on"]  # default already ON
        pipeline = make_pipeline()
        policy = named_policy_factories()["scripted-perfect"].build("a-email-on")
        base = tmp_path / "base"
        base.mkdir()
        result = pipeline.run(
            instance, sites["site-a"], policy,
            ProfileSpec(str(base), str(tmp_path / "p2")),
            str(tmp_path / "run2"), prompt=instance.prompt_wonav)
        assert result.outcome == "ok"
        assert result.state_report.events_executed == 0
        assert result.state_report.events_skipped_state_match == 2
        assert result.trajectory is not None

    def test_auth_marker_skips_login_replay(self, tmp_path, instances, sites):
        from webstate.fixtures.policies import named_policy_factories
        base = tmp_path / "base"
        base.mkdir()
        (base / "fixture_state.json").write_text(json.dumps(
            {"sites": {"site-a": {"auth": True}}, "load_counts": {}}))
        instance = instances["a-email-on"]
        pipeline = make_pipeline()
        policy = named_policy_factories()["scripted-perfect"].build("a-email-on")
        result = pipeline.run(
            instance, sites["site-a"], policy,
            ProfileSpec(str(base), str(tmp_path / "p3")),
            str(tmp_path / "run3"), prompt=instance.prompt_wonav)
        assert result.outcome == "ok"
        assert result.auth_report is None  # marker present, no login replay

    def test_broken_login_trace_init_failed_no_trajectory(
            self, tmp_path, instances, sites):
        from webstate.fixtures.policies import named_policy_factories
        broken = SiteConfig(
            site_id="site-a", auth_required=True,
            login_trace=trace_path("site-a-broken-login"),
            auth_marker="#account-badge", home_url="https://fixture-a.local/",
            tasks=sites["site-a"].tasks)
        instance = instances["a-email-on"]
        base = tmp_path / "base"
        base.mkdir()
        pipeline = make_pipeline()
        policy = named_policy_factories()["scripted-perfect"].build("a-email-on")
        result = pipeline.run(
            instance, broken, policy,
            ProfileSpec(str(base), str(tmp_path / "p4")),
            str(tmp_path / "run4"), prompt=instance.prompt_wonav)
        assert result.outcome == "init_failed"
        assert result.trajectory is None
        report = json.load(open(os.path.join(result.run_dir,
                                             "init_report.json")))
        assert report["outcome"] == "init_failed"

    def test_cookie_task_uses_profile_default_hook(self, tmp_path, instances,
                                                   sites):
        from webstate.fixtures.policies import named_policy_factories
        instance = instances["c-marketing"]
        base = tmp_path / "base"
        base.mkdir()
        pipeline = make_pipeline()
        policy = named_policy_factories()["scripted-perfect"].build("c-marketing")
        result = pipeline.run(
            instance, sites["site-c"], policy,
            ProfileSpec(str(base), str(tmp_path / "p5")),
            str(tmp_path / "run5"), prompt=instance.prompt_wonav)
        assert result.outcome == "ok"
        assert result.state_report is None  # fresh profile IS the state
        final = json.load(open(os.path.join(result.run_dir,
                                            "final_state.json")))
        assert final["site-c"]["marketing_cookies"] == "reject"

    def test_spawn_sessions_hook(self, tmp_path):
        from webstate.pipeline import spawn_sessions_hook
        session = FixtureSession(str(tmp_path / "sp"), clock=FakeClock())
        site = SiteConfig(site_id="site-a")
        spawn_sessions_hook(session, site, "task", n=5)
        assert session.store.get("site-a", "sessions") == [
            "session-0", "session-1", "session-2", "session-3", "session-4"]

    def test_pre_agent_state_reproducible_across_runs(self, tmp_path,
                                                      instances, sites):
        instance = instances["a-email-off"]
        base = tmp_path / "base"
        base.mkdir()

        class StopPolicy:
            def decide(self, context):
                from webstate.agent.runtime import PolicyDecision
                return PolicyDecision("stop", "ANSWER; noop")

        snapshots = []
        for i in range(2):
            pipeline = make_pipeline()
            result = pipeline.run(
                instance, sites["site-a"], StopPolicy(),
                ProfileSpec(str(base), str(tmp_path / f"pp{i}")),
                str(tmp_path / f"rr{i}"), prompt=instance.prompt_wonav)
            final = json.load(open(os.path.join(result.run_dir,
                                                "final_state.json")))
            snapshots.append(final)
        assert snapshots[0] == snapshots[1]

    def test_isolation_two_runs_distinct_profiles(self, tmp_path):
        run_id_a = safe_run_id("a-email-on", "p", "WoNav")
        run_id_b = safe_run_id("a-email-on", "p", "WithNav")
        assert run_id_a != run_id_b
