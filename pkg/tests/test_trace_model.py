import json

import pytest
from hypothesis import given, settings

from conftest import session_traces
from webstate.errors import TraceValidationError
from webstate.fixtures import trace_path
from webstate.trace import (ElementState, LocatorBundle, RecordedEvent,
                            SessionTrace, StateDirective, load_trace,
                            serialize_trace, validate_trace)


def _bundle(**kw):
    defaults = dict(tag_name="button", stable_attrs={"id": "x"})
    defaults.update(kw)
    return LocatorBundle(**defaults)


def _event(seq, **kw):
    defaults = dict(event_type="click", locator=_bundle(), timestamp_ms=seq)
    defaults.update(kw)
    return RecordedEvent(seq=seq, **defaults)


def _trace(events):
    return SessionTrace(name="t", created_at=1, start_url="https://x.local/",
                        events=events)


class TestSerialize:
    def test_empty_trace_has_empty_events_array(self):
        data = serialize_trace(_trace([]))
        assert json.loads(data)["events"] == []

    def test_fixture_trace_round_trips_field_for_field(self):
        trace = load_trace(trace_path("site-a-login"))
        assert validate_trace(serialize_trace(trace)) == trace

    def test_non_monotone_seq_rejected_naming_first_bad_seq(self):
        trace = _trace([_event(2), _event(1)])
        with pytest.raises(TraceValidationError) as excinfo:
            serialize_trace(trace)
        assert "seq 1" in str(excinfo.value)

    def test_serialization_is_byte_stable(self):
        trace = load_trace(trace_path("site-a-notifications-email"))
        assert serialize_trace(trace) == serialize_trace(trace)

    def test_checked_in_traces_are_canonical_bytes(self):
        # the repo files must be exactly what serialize_trace produces
        for name in ("site-a-login", "site-b-profile-public", "unit-iframe"):
            with open(trace_path(name), "rb") as fh:
                raw = fh.read()
            assert serialize_trace(validate_trace(raw)) == raw

    def test_typed_text_requires_input_event(self):
        with pytest.raises(TraceValidationError):
            serialize_trace(_trace([_event(1, typed_text="hi")]))
        with pytest.raises(TraceValidationError):
            serialize_trace(_trace([_event(1, event_type="input")]))

    def test_locator_must_have_a_handle(self):
        bare = _bundle(stable_attrs={}, css_path="", xpath="", websp_index=None)
        with pytest.raises(TraceValidationError) as excinfo:
            serialize_trace(_trace([_event(1, locator=bare)]))
        assert "seq 1" in str(excinfo.value)

    def test_shadow_marker_position_checked(self):
        for bad in ("::shadow button", "my-widget::shadow"):
            with pytest.raises(TraceValidationError):
                serialize_trace(_trace([_event(1, locator=_bundle(css_path=bad))]))


class TestValidate:
    def test_valid_file_matches_independent_json_count(self):
        path = trace_path("site-a-login")
        with open(path, "rb") as fh:
            raw = fh.read()
        independent = len(json.loads(raw)["events"])
        trace = validate_trace(raw)
        assert len(trace.events) == independent == 4

    def test_missing_start_url_reported_at_pointer(self):
        obj = {"name": "x", "created_at": 0, "events": []}
        with pytest.raises(TraceValidationError) as excinfo:
            validate_trace(json.dumps(obj).encode())
        assert any(ptr == "/start_url" for ptr, _ in excinfo.value.violations)

    def test_unknown_event_type_lists_allowed_enum(self):
        trace = _trace([_event(1)])
        obj = json.loads(serialize_trace(trace))
        obj["events"][0]["event_type"] = "dblclick"
        with pytest.raises(TraceValidationError) as excinfo:
            validate_trace(json.dumps(obj).encode())
        message = str(excinfo.value)
        assert "dblclick" in message and "pointerdown" in message

    def test_malformed_json_is_a_parse_error(self):
        with pytest.raises(TraceValidationError) as excinfo:
            validate_trace(b"{nope")
        assert "malformed JSON" in str(excinfo.value)

    def test_every_violation_reported(self):
        obj = {"name": "", "created_at": 0, "start_url": "nope", "events": [
            {"seq": 1, "event_type": "blink",
             "locator": {"tag_name": "button"}},
        ]}
        with pytest.raises(TraceValidationError) as excinfo:
            validate_trace(json.dumps(obj).encode())
        pointers = {ptr for ptr, _ in excinfo.value.violations}
        assert "/name" in pointers
        assert "/start_url" in pointers
        assert "/events/0/event_type" in pointers
        assert "/events/0/locator" in pointers


class TestStateDirective:
    def test_keys_match_seq_and_selector_forms(self):
        event = _event(3, locator=_bundle(
            stable_attrs={"data-testid": "save", "id": "save-btn"},
            css_path="html > body > button"))
        assert StateDirective({"3": "ON"}).desired_for(event) == "ON"
        assert StateDirective({"#save-btn": "OFF"}).desired_for(event) == "OFF"
        assert StateDirective(
            {'[data-testid="save"]': "ON"}).desired_for(event) == "ON"
        assert StateDirective(
            {"html > body > button": "OFF"}).desired_for(event) == "OFF"
        assert StateDirective({"9": "ON"}).desired_for(event) is None

    def test_validate_against_rejects_unmatched_keys(self):
        trace = _trace([_event(1)])
        directive = StateDirective({"42": "ON"})
        with pytest.raises(ValueError):
            directive.validate_against(trace)

    def test_values_restricted_to_on_off(self):
        with pytest.raises(ValueError):
            StateDirective({"1": "MAYBE"})


class TestProperties:
    @given(session_traces())
    @settings(max_examples=60, deadline=None)
    def test_round_trip_and_canonical(self, trace):
        data = serialize_trace(trace)
        back = validate_trace(data)
        assert back == trace
        assert serialize_trace(back) == data
