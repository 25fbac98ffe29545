"""Dataset loading and validation."""

import json
import logging

import pytest

from webstate.dataset import dual_task_ids, load_dataset
from webstate.errors import DatasetError
from webstate.fixtures import dataset_path


def load_fixture_rows():
    with open(dataset_path(), encoding="utf-8") as fh:
        return json.load(fh)


def write_dataset(tmp_path, rows):
    path = tmp_path / "ds.json"
    path.write_text(json.dumps(rows))
    return str(path)


class TestLoad:
    def test_bundled_dataset_counts(self):
        instances = load_dataset(dataset_path())
        assert len(instances) == 12
        assert len({i.task_id for i in instances}) == 8
        assert len({i.site_id for i in instances}) == 3
        assert len(dual_task_ids(instances)) == 4

    def test_prompts_differ_only_by_navigation_prefix(self):
        for instance in load_dataset(dataset_path()):
            assert instance.prompt_for("WithNav") == instance.prompt_withnav
            assert instance.prompt_for("WoNav") == instance.prompt_wonav
            assert instance.prompt_withnav != instance.prompt_wonav

    def test_empty_file_is_empty_list(self, tmp_path):
        path = tmp_path / "empty.json"
        path.write_text("")
        assert load_dataset(str(path)) == []
        path.write_text("[]")
        assert load_dataset(str(path)) == []

    def test_duplicate_instance_id_reports_rows(self, tmp_path):
        rows = load_fixture_rows()
        rows.append(dict(rows[0]))
        with pytest.raises(DatasetError) as excinfo:
            load_dataset(write_dataset(tmp_path, rows))
        assert "duplicate instance_id" in str(excinfo.value)
        assert "row 12" in str(excinfo.value)

    def test_unpaired_dual_state_rejected(self, tmp_path):
        rows = [r for r in load_fixture_rows()
                if r["instance_id"] != "a-email-off"]
        with pytest.raises(DatasetError) as excinfo:
            load_dataset(write_dataset(tmp_path, rows))
        assert "dual-state" in str(excinfo.value)

    def test_unknown_category_rejected(self, tmp_path):
        rows = load_fixture_rows()
        rows[0]["category"] = "Miscellaneous"
        with pytest.raises(DatasetError) as excinfo:
            load_dataset(write_dataset(tmp_path, rows))
        assert "unknown category" in str(excinfo.value)
        assert "row 0" in str(excinfo.value)

    def test_unknown_ui_element_type_rejected(self, tmp_path):
        rows = load_fixture_rows()
        rows[0]["ground_truth"]["actions"][0]["target_element_type"] = "Slider"
        with pytest.raises(DatasetError):
            load_dataset(write_dataset(tmp_path, rows))

    def test_unknown_initial_state_rejected(self, tmp_path):
        rows = load_fixture_rows()
        rows[-1]["initial_state"] = "HALF"
        with pytest.raises(DatasetError):
            load_dataset(write_dataset(tmp_path, rows))

    def test_gt_stats_advisory_warning(self, tmp_path, caplog):
        rows = load_fixture_rows()
        for row in rows:
            action = row["ground_truth"]["actions"][0]
            row["ground_truth"]["actions"] = [action] * 30  # mean 30 > 13
        path = write_dataset(tmp_path, rows)
        with caplog.at_level(logging.WARNING):
            instances = load_dataset(path)  # advisory only: still loads
        assert len(instances) == 12
        assert any("regime" in r.message for r in caplog.records)

    def test_bundled_dataset_emits_no_advisory(self, caplog):
        with caplog.at_level(logging.WARNING):
            load_dataset(dataset_path())
        assert not any("regime" in r.message for r in caplog.records)
