#!/usr/bin/env python3
"""Dumps the engine's interaction-index assignment for fixture pages into
frontend/tests/expected/, so the extension's indexer can be checked
element-for-element against the engine's normative output."""

import json
import os
import sys
import tempfile

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from webstate.clock import FakeClock
from webstate.dom import FixtureSession
from webstate.resolver import WEBSP_INDEX_ATTR, build_interaction_index

OUT_DIR = os.path.join(os.path.dirname(__file__), "..", "frontend", "tests",
                       "expected")

PAGES = [
    {"page": "site-a/index.html", "url": "https://fixture-a.local/",
     "site_id": "site-a", "auth": False},
    {"page": "site-a/settings.html", "url": "https://fixture-a.local/settings",
     "site_id": "site-a", "auth": True},
    {"page": "site-b/profile.html", "url": "https://fixture-b.local/profile",
     "site_id": "site-b", "auth": False},
    {"page": "site-c/index.html", "url": "https://fixture-c.local/",
     "site_id": "site-c", "auth": False},
    {"page": "unit/scroll.html", "url": "https://fixture-unit.local/scroll",
     "site_id": "unit", "auth": False},
]


def marker_for(node) -> str:
    return (node.attrs.get("data-testid") or node.attrs.get("id")
            or node.full_text()[:40])


def main():
    os.makedirs(OUT_DIR, exist_ok=True)
    for spec in PAGES:
        session = FixtureSession(tempfile.mkdtemp(prefix="expected-index-"),
                                 clock=FakeClock())
        if spec["auth"]:
            session.store.set(spec["site_id"], "auth", True)
        session.navigate(spec["url"])
        count = build_interaction_index(session)
        assignment = []
        for node in session._doc().root.iter_composed():
            raw = node.attrs.get(WEBSP_INDEX_ATTR)
            if raw is not None:
                assignment.append({"index": int(raw), "tag": node.tag,
                                   "marker": marker_for(node)})
        assignment.sort(key=lambda item: item["index"])
        assert len(assignment) == count
        out = {
            "page": spec["page"],
            "site_id": spec["site_id"],
            "auth": spec["auth"],
            "count": count,
            "assignment": assignment,
        }
        name = spec["page"].replace("/", "__").replace(".html", "") + ".json"
        path = os.path.join(OUT_DIR, name)
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(out, fh, indent=2)
            fh.write("\n")
        print(f"wrote {path} ({count} elements)")


if __name__ == "__main__":
    main()
