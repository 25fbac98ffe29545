"""Bundled fixture corpus: three benchmark sites, unit lab pages, recorded
traces, the task dataset, and the transcribed result log.

Site A (Gearhub) exercises shadow-root toggles gated behind a below-the-fold
save button; site B (Lexigram) regenerates ids/test-ids/labels on every load
so only the interaction index survives; site C (Daily Ledger) is a cookie
modal with scroll-within-popup radio groups under a sticky overlay.
"""

import os
from typing import List

from ..dom.session import FixtureSite

DATA_DIR = os.path.join(os.path.dirname(__file__), "data")


def data_path(*parts: str) -> str:
    return os.path.join(DATA_DIR, *parts)


def trace_path(name: str) -> str:
    return data_path("traces", name if name.endswith(".json") else name + ".json")


def dataset_path() -> str:
    return data_path("dataset.json")


def paper_results_path() -> str:
    return data_path("paper_results.jsonl")


def site_config_dir() -> str:
    return data_path("sites.d")


_SITE_DEFS = [
    {
        "site_id": "site-a",
        "host": "fixture-a.local",
        "routes": {"/": "index.html", "/login": "login.html",
                   "/settings": "settings.html", "/quick": "quick.html"},
        "defaults": {"auth": False, "email_notifications": "ON",
                     "partner_promotions": "ON", "weekly_digest": "ON"},
        "auth_marker": "#account-badge",
    },
    {
        "site_id": "site-b",
        "host": "fixture-b.local",
        "routes": {"/": "index.html", "/profile": "profile.html",
                   "/account": "account.html"},
        "defaults": {"public_profile": "ON", "search_indexing": "ON",
                     "display_name": "lexi-player-7"},
        "auth_marker": "",
    },
    {
        "site_id": "site-c",
        "host": "fixture-c.local",
        "routes": {"/": "index.html"},
        "defaults": {"marketing_cookies": "accept", "analytics_cookies": "accept"},
        "auth_marker": "",
    },
    {
        "site_id": "unit",
        "host": "fixture-unit.local",
        "routes": {"/overlay": "overlay.html", "/pointer": "pointer.html",
                   "/stuck": "stuck.html", "/dupes": "dupes.html",
                   "/iframe": "iframe.html", "/iframe-inner": "iframe-inner.html",
                   "/popup": "popup.html", "/form": "form.html",
                   "/scroll": "scroll.html", "/dark": "dark.html"},
        "defaults": {"auth": False, "pointer_widget": "OFF"},
        "auth_marker": "",
    },
    {
        "site_id": "auth-provider",
        "host": "auth-provider.local",
        "routes": {"/approve": "approve.html"},
        "defaults": {},
        "auth_marker": "",
    },
]


def standard_sites() -> List[FixtureSite]:
    sites = []
    for entry in _SITE_DEFS:
        routes = {
            path: data_path("sites", entry["site_id"], filename)
            for path, filename in entry["routes"].items()
        }
        sites.append(FixtureSite(
            site_id=entry["site_id"],
            host=entry["host"],
            routes=routes,
            defaults=dict(entry["defaults"]),
            auth_marker=entry["auth_marker"],
        ))
    return sites


def site_by_id(site_id: str) -> FixtureSite:
    for site in standard_sites():
        if site.site_id == site_id:
            return site
    raise KeyError(site_id)


def url_for(site_id: str, path: str = "/") -> str:
    return f"https://{site_by_id(site_id).host}{path}"
