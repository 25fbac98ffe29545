"""Aggregation of run records into the six benchmark table shapes: overall
success/error/timeout per model and prompt variant, cross-variant instance
comparison, per-website and per-category success, per-UI-element success with
direct-failure counts, and dual-state task outcomes.

Also renders transcribed aggregate logs (pre-counted rows, e.g. published
results encoded as data) through the same table model. Aggregation is a pure
function of the log: re-running it yields identical tables.
"""

import csv
import json
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import AggregationError
from .runner import RunRecord

VARIANTS = ("WithNav", "WoNav")


@dataclass
class ReportTables:
    overall: List[dict] = field(default_factory=list)
    nav_compare: List[dict] = field(default_factory=list)
    website: List[dict] = field(default_factory=list)
    category: List[dict] = field(default_factory=list)
    ui_element: List[dict] = field(default_factory=list)
    dual_state: List[dict] = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    def overall_row(self, model: str, variant: str) -> Optional[dict]:
        for row in self.overall:
            if row["model"] == model and row["variant"] == variant:
                return row
        return None


# ---------------------------------------------------------------------------
# Aggregation over run records
# ---------------------------------------------------------------------------


def _dedupe(records: Sequence[RunRecord]) -> List[RunRecord]:
    """Append-only logs may contain re-runs; the last line wins."""
    latest: Dict[Tuple[str, str, str], RunRecord] = {}
    for record in records:
        latest[(record.instance_id, record.model_id, record.variant)] = record
    return list(latest.values())


def aggregate(records: Sequence[RunRecord]) -> ReportTables:
    records = _dedupe(records)
    if not records:
        return ReportTables(meta={"records": 0})
    dataset_ids = {r.dataset_id for r in records if r.dataset_id}
    if len(dataset_ids) > 1:
        raise AggregationError(
            f"refusing to aggregate mixed datasets: {sorted(dataset_ids)}")

    tables = ReportTables(meta={
        "records": len(records),
        "dataset_id": next(iter(dataset_ids)) if dataset_ids else "",
        "source": "measured",
    })
    models = sorted({r.model_id for r in records})
    variants = [v for v in VARIANTS
                if any(r.variant == v for r in records)]

    for model in models:
        for variant in variants:
            subset = [r for r in records
                      if r.model_id == model and r.variant == variant]
            if not subset:
                continue
            success = sum(1 for r in subset if r.failure_class == "success")
            error = sum(1 for r in subset if r.failure_class == "error")
            timeout = sum(1 for r in subset if r.failure_class == "timeout")
            tables.overall.append({
                "model": model, "variant": variant,
                "success": success, "error": error, "timeout": timeout,
                "total": len(subset),
                "init_failed": sum(1 for r in subset if r.init_failed),
                "success_rate": 100.0 * success / len(subset),
            })

    _nav_compare(records, models, tables)
    _grouped_success(records, models, variants, "site_id", "website",
                     tables.website)
    _grouped_success(records, models, variants, "category", "category",
                     tables.category)
    _ui_element(records, models, variants, tables)
    _dual_state(records, models, variants, tables)
    return tables


def _nav_compare(records, models, tables) -> None:
    for model in models:
        by_instance: Dict[str, Dict[str, str]] = {}
        for record in records:
            if record.model_id == model:
                by_instance.setdefault(record.instance_id, {})[record.variant] = \
                    record.failure_class
        cells = {"both_correct": 0, "only_withnav": 0, "only_wonav": 0,
                 "both_failed": 0}
        counted = 0
        for outcome in by_instance.values():
            if "WithNav" not in outcome or "WoNav" not in outcome:
                continue
            counted += 1
            with_ok = outcome["WithNav"] == "success"
            wo_ok = outcome["WoNav"] == "success"
            if with_ok and wo_ok:
                cells["both_correct"] += 1
            elif with_ok:
                cells["only_withnav"] += 1
            elif wo_ok:
                cells["only_wonav"] += 1
            else:
                cells["both_failed"] += 1
        if counted:
            tables.nav_compare.append({"model": model, **cells,
                                       "instances": counted})


def _grouped_success(records, models, variants, attr, key_name, out) -> None:
    for variant in variants:
        subset = [r for r in records if r.variant == variant]
        groups = sorted({getattr(r, attr) for r in subset})
        for group in groups:
            rows = [r for r in subset if getattr(r, attr) == group]
            successes = {m: sum(1 for r in rows if r.model_id == m
                                and r.failure_class == "success")
                         for m in models}
            entry = {
                key_name: group, "variant": variant,
                "instances": len({r.instance_id for r in rows}),
                "successes": successes,
            }
            if attr == "category":
                entry["websites"] = len({r.site_id for r in rows})
            out.append(entry)


def _ui_element(records, models, variants, tables) -> None:
    for variant in variants:
        subset = [r for r in records if r.variant == variant]
        elements = sorted({e for r in subset for e in r.gt_element_types})
        for element in elements:
            rows = [r for r in subset if element in r.gt_element_types]
            successes = {m: sum(1 for r in rows if r.model_id == m
                                and r.failure_class == "success")
                         for m in models}
            direct = {m: sum(1 for r in rows if r.model_id == m
                             and r.failure_class == "error"
                             and r.ui_attribution
                             and element in r.ui_attribution)
                      for m in models}
            tables.ui_element.append({
                "element": element, "variant": variant,
                "instances": len({r.instance_id for r in rows}),
                "successes": successes, "direct_failures": direct,
            })


def _dual_state(records, models, variants, tables) -> None:
    for variant in variants:
        subset = [r for r in records if r.variant == variant]
        by_task: Dict[str, Dict[Tuple[str, str], str]] = {}
        for record in subset:
            if record.initial_state in ("ON", "OFF"):
                by_task.setdefault(record.task_id, {})[
                    (record.model_id, record.initial_state)] = record.failure_class
        for model in models:
            cells = {"both_correct": 0, "only_on": 0, "only_off": 0,
                     "both_failed": 0}
            tasks = 0
            for task_id, outcomes in by_task.items():
                on = outcomes.get((model, "ON"))
                off = outcomes.get((model, "OFF"))
                if on is None or off is None:
                    continue
                tasks += 1
                on_ok, off_ok = on == "success", off == "success"
                if on_ok and off_ok:
                    cells["both_correct"] += 1
                elif on_ok:
                    cells["only_on"] += 1
                elif off_ok:
                    cells["only_off"] += 1
                else:
                    cells["both_failed"] += 1
            if tasks:
                tables.dual_state.append({"model": model, "variant": variant,
                                          "tasks": tasks, **cells})


# ---------------------------------------------------------------------------
# Transcribed aggregate logs
# ---------------------------------------------------------------------------


def load_result_log(path: str):
    """Read a results JSONL; returns ('records', [RunRecord]) for measured
    logs or ('transcribed', [dict]) for pre-counted aggregate rows."""
    rows = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                rows.append(json.loads(line))
    if rows and "kind" in rows[0]:
        return "transcribed", rows
    return "records", [RunRecord.from_json(r) for r in rows]


def tables_from_transcription(rows: Sequence[dict]) -> ReportTables:
    tables = ReportTables(meta={"source": "transcribed"})
    for row in rows:
        kind = row.get("kind")
        body = {k: v for k, v in row.items() if k != "kind"}
        if kind == "meta":
            tables.meta.update(body)
        elif kind == "overall":
            body.setdefault("total", body.get("success", 0)
                            + body.get("error", 0) + body.get("timeout", 0))
            if body["total"]:
                body.setdefault("success_rate",
                                100.0 * body["success"] / body["total"])
            tables.overall.append(body)
        elif kind == "nav_compare":
            tables.nav_compare.append(body)
        elif kind == "website":
            tables.website.append(body)
        elif kind == "category":
            tables.category.append(body)
        elif kind == "ui_element":
            tables.ui_element.append(body)
        elif kind == "dual_state":
            tables.dual_state.append(body)
        else:
            raise AggregationError(f"unknown transcription row kind {kind!r}")
    return tables


def tables_for_log(path: str) -> ReportTables:
    kind, rows = load_result_log(path)
    if kind == "transcribed":
        return tables_from_transcription(rows)
    return aggregate(rows)


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------


def _fmt_table(headers: List[str], rows: List[List[object]]) -> str:
    widths = [len(h) for h in headers]
    rendered = [[str(c) for c in row] for row in rows]
    for row in rendered:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    def line(cells):
        return "  ".join(c.ljust(w) for c, w in zip(cells, widths)).rstrip()
    out = [line(headers), line(["-" * w for w in widths])]
    out.extend(line(row) for row in rendered)
    return "\n".join(out)


def render_text(tables: ReportTables) -> str:
    sections = []
    if tables.overall:
        rows = [[r["model"], r["variant"], r["success"], r["error"],
                 r["timeout"], r.get("total", ""),
                 f"{r.get('success_rate', 0):.1f}%"]
                for r in tables.overall]
        sections.append("== Overall success / error / timeout ==\n" + _fmt_table(
            ["model", "variant", "success", "error", "timeout", "total",
             "rate"], rows))
    if tables.nav_compare:
        rows = [[r["model"], r["both_correct"], r["only_withnav"],
                 r["only_wonav"], r["both_failed"]] for r in tables.nav_compare]
        sections.append(
            "== Prompt-variant comparison (instance level) ==\n" + _fmt_table(
                ["model", "both correct", "only WithNav", "only W/oNav",
                 "both failed"], rows))
    for name, table, key in (("website", tables.website, "website"),
                             ("task category", tables.category, "category")):
        if not table:
            continue
        models = sorted({m for row in table for m in row["successes"]})
        has_sites = key == "category"
        for variant in VARIANTS:
            rows = [[row[key]] + [row["successes"].get(m, 0) for m in models]
                    + [row["instances"]]
                    + ([row.get("websites", "")] if has_sites else [])
                    for row in table if row["variant"] == variant]
            if rows:
                headers = [key] + models + ["# inst."] \
                    + (["# websites"] if has_sites else [])
                sections.append(
                    f"== Success by {name} ({variant}) ==\n"
                    + _fmt_table(headers, rows))
    if tables.ui_element:
        models = sorted({m for row in tables.ui_element
                         for m in row["successes"]})
        for variant in VARIANTS:
            rows = []
            for row in tables.ui_element:
                if row["variant"] != variant:
                    continue
                cells = [row["element"]]
                for m in models:
                    direct = row.get("direct_failures", {}).get(m)
                    base = str(row["successes"].get(m, 0))
                    cells.append(f"{base} ({direct})" if direct is not None
                                 else base)
                cells.append(row["instances"])
                rows.append(cells)
            if rows:
                sections.append(
                    f"== Success by target UI element ({variant}); direct "
                    "failures in parentheses ==\n"
                    + _fmt_table(["element"] + models + ["# inst."], rows))
    if tables.dual_state:
        rows = [[r["model"], r["variant"], r["both_correct"], r["only_on"],
                 r["only_off"], r["both_failed"], r.get("tasks", "")]
                for r in tables.dual_state]
        sections.append("== Dual initial-state tasks ==\n" + _fmt_table(
            ["model", "variant", "both correct", "only ON", "only OFF",
             "both failed", "tasks"], rows))
    if tables.meta:
        sections.append("meta: " + json.dumps(tables.meta, sort_keys=True))
    return "\n\n".join(sections) + "\n"


def write_csvs(tables: ReportTables, out_dir: str) -> List[str]:
    import os
    os.makedirs(out_dir, exist_ok=True)
    written = []
    named = [("overall", tables.overall), ("nav_compare", tables.nav_compare),
             ("website", tables.website), ("category", tables.category),
             ("ui_element", tables.ui_element),
             ("dual_state", tables.dual_state)]
    for name, rows in named:
        if not rows:
            continue
        path = os.path.join(out_dir, f"{name}.csv")
        flat_rows = [_flatten(row) for row in rows]
        headers: List[str] = []
        for row in flat_rows:
            for key in row:
                if key not in headers:
                    headers.append(key)
        with open(path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=headers)
            writer.writeheader()
            writer.writerows(flat_rows)
        written.append(path)
    return written


def _flatten(row: dict) -> dict:
    flat = {}
    for key, value in row.items():
        if isinstance(value, dict):
            for sub, v in value.items():
                flat[f"{key}.{sub}"] = v
        else:
            flat[key] = value
    return flat


def check_accounting(tables: ReportTables, expected_total: Optional[int] = None
                     ) -> List[str]:
    """Accounting identity: success + error + timeout per row equals the row
    total (and the expected instance count when given)."""
    problems = []
    for row in tables.overall:
        total = row["success"] + row["error"] + row["timeout"]
        if total != row.get("total", total):
            problems.append(f"{row['model']}/{row['variant']}: "
                            f"{total} != declared {row['total']}")
        if expected_total is not None and total != expected_total:
            problems.append(f"{row['model']}/{row['variant']}: "
                            f"{total} != expected {expected_total}")
    return problems
