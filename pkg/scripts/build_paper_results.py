#!/usr/bin/env python3
"""Regenerates the bundled published-results log (transcribed counts, not
re-measured). Output: src/webstate/fixtures/data/paper_results.jsonl."""

import json
import os

OUT = os.path.join(os.path.dirname(__file__), "..", "src", "webstate",
                   "fixtures", "data", "paper_results.jsonl")

MODELS = ["Gemini-2.5-Flash", "Gemini-2.5-Pro", "Gemini-3-Pro-Preview",
          "Claude-Haiku-4.5", "Claude-Sonnet-4.5", "GPT-5-Mini", "GPT-5.1",
          "Gemma-3-27b"]

# success / error / timeout per model
OVERALL = {
    "WithNav": [(123, 68, 9), (127, 65, 8), (166, 26, 8), (118, 25, 57),
                (121, 31, 48), (91, 23, 86), (101, 69, 30), (52, 126, 22)],
    "WoNav": [(100, 87, 13), (121, 75, 4), (153, 32, 15), (103, 28, 69),
              (119, 31, 50), (87, 30, 83), (86, 89, 25), (42, 127, 31)],
}

# both correct / only WithNav / only WoNav / both failed
NAV_COMPARE = [(81, 42, 19, 58), (95, 32, 26, 47), (138, 28, 15, 19),
               (81, 37, 22, 60), (89, 32, 30, 49), (66, 25, 21, 88),
               (63, 38, 23, 76), (25, 27, 17, 131)]

# website -> (per-model successes, instances)
WEBSITES = {
    "WoNav": {
        "Airbnb": ([4, 5, 9, 2, 7, 1, 4, 5], 9),
        "AlJazeera": ([0, 0, 0, 1, 0, 0, 0, 1], 1),
        "AllRecipes": ([1, 1, 0, 1, 1, 0, 0, 0], 1),
        "Amazon": ([4, 4, 5, 3, 6, 4, 4, 2], 8),
        "BBC": ([3, 3, 3, 3, 3, 3, 2, 0], 3),
        "Coursera": ([2, 4, 4, 6, 4, 3, 1, 1], 6),
        "Docker": ([3, 2, 5, 2, 5, 4, 1, 0], 8),
        "Duolingo": ([3, 3, 7, 4, 5, 4, 3, 3], 7),
        "GitHub": ([12, 11, 12, 9, 5, 10, 9, 4], 14),
        "Goal": ([1, 1, 4, 5, 2, 1, 3, 0], 6),
        "Goodreads": ([1, 5, 5, 1, 1, 1, 2, 1], 6),
        "GoogleAdCenter": ([5, 5, 7, 6, 6, 2, 3, 1], 7),
        "Grammarly": ([3, 8, 10, 7, 6, 9, 5, 3], 10),
        "HuggingFace": ([6, 7, 7, 5, 8, 6, 8, 2], 9),
        "IKEA": ([1, 1, 2, 2, 2, 1, 1, 0], 2),
        "Moodle": ([2, 2, 4, 0, 2, 0, 0, 0], 5),
        "NVIDIA": ([0, 2, 2, 3, 3, 3, 1, 0], 3),
        "OldReddit": ([5, 6, 4, 2, 6, 3, 4, 4], 8),
        "OpenStreetMap": ([1, 1, 2, 1, 1, 1, 1, 0], 2),
        "Pinterest": ([8, 11, 12, 10, 9, 7, 4, 2], 17),
        "Quora": ([6, 7, 7, 0, 1, 1, 1, 3], 9),
        "Reddit": ([6, 6, 10, 7, 5, 10, 8, 2], 10),
        "Shein": ([1, 3, 1, 1, 3, 0, 2, 1], 3),
        "Steam": ([5, 4, 9, 6, 7, 2, 5, 0], 17),
        "Twitch": ([6, 8, 7, 4, 8, 3, 3, 2], 11),
        "USAToday": ([1, 1, 2, 2, 3, 2, 2, 1], 4),
        "Wattpad": ([5, 4, 6, 6, 6, 5, 6, 4], 6),
        "Wolfram": ([5, 6, 7, 7, 6, 5, 4, 0], 8),
    },
    "WithNav": {
        "Airbnb": ([7, 8, 9, 5, 7, 1, 5, 6], 9),
        "AlJazeera": ([0, 0, 0, 1, 0, 0, 0, 1], 1),
        "AllRecipes": ([0, 0, 0, 0, 1, 0, 0, 0], 1),
        "Amazon": ([4, 7, 7, 4, 5, 4, 4, 1], 8),
        "BBC": ([3, 3, 3, 3, 3, 3, 1, 0], 3),
        "Coursera": ([4, 1, 6, 5, 4, 3, 3, 0], 6),
        "Docker": ([3, 5, 7, 6, 6, 4, 5, 1], 8),
        "Duolingo": ([5, 1, 7, 5, 5, 2, 1, 4], 7),
        "GitHub": ([12, 13, 13, 13, 4, 12, 12, 4], 14),
        "Goal": ([2, 2, 2, 4, 5, 1, 2, 1], 6),
        "Goodreads": ([3, 4, 4, 2, 4, 3, 1, 0], 6),
        "GoogleAdCenter": ([7, 6, 7, 6, 5, 3, 6, 3], 7),
        "Grammarly": ([7, 7, 10, 7, 6, 9, 6, 5], 10),
        "HuggingFace": ([8, 7, 7, 5, 7, 7, 6, 4], 9),
        "IKEA": ([1, 0, 2, 2, 2, 0, 1, 1], 2),
        "Moodle": ([2, 5, 5, 1, 0, 0, 1, 0], 5),
        "NVIDIA": ([1, 3, 3, 3, 3, 1, 0, 0], 3),
        "OldReddit": ([7, 5, 6, 3, 7, 2, 2, 1], 8),
        "OpenStreetMap": ([1, 1, 2, 2, 1, 1, 2, 1], 2),
        "Pinterest": ([9, 11, 14, 7, 13, 8, 6, 4], 17),
        "Quora": ([7, 5, 7, 0, 3, 0, 5, 2], 9),
        "Reddit": ([6, 6, 9, 3, 3, 10, 8, 3], 10),
        "Shein": ([2, 1, 1, 3, 1, 1, 1, 0], 3),
        "Steam": ([8, 8, 9, 6, 7, 7, 5, 1], 17),
        "Twitch": ([4, 5, 9, 8, 7, 6, 6, 4], 11),
        "USAToday": ([2, 3, 4, 3, 2, 2, 3, 2], 4),
        "Wattpad": ([2, 5, 6, 6, 4, 4, 5, 3], 6),
        "Wolfram": ([6, 6, 7, 6, 6, 5, 5, 0], 8),
    },
}

# category -> (per-model successes, instances, websites)
CATEGORIES = {
    "WoNav": {
        "Account Security & Access Control": ([17, 15, 19, 10, 15, 11, 13, 5], 22, 10),
        "Advertising & Personalization Control": ([9, 12, 19, 13, 14, 9, 9, 6], 19, 7),
        "Cookie & Tracking Consent Management": ([7, 16, 15, 18, 19, 11, 9, 1], 24, 8),
        "Data & Asset Management": ([4, 5, 5, 3, 5, 4, 6, 2], 6, 2),
        "Notification & Communication Preferences": ([27, 25, 37, 30, 29, 24, 24, 12], 51, 13),
        "Profile Visibility & Customization": ([12, 12, 18, 4, 10, 7, 10, 9], 22, 9),
        "Social Safety & Content Moderation": ([15, 21, 24, 13, 16, 9, 9, 3], 31, 8),
        "UI/UX Preferences": ([1, 2, 2, 0, 2, 2, 2, 0], 5, 3),
        "User Privacy & Data Rights": ([8, 13, 14, 12, 9, 10, 4, 4], 20, 8),
    },
    "WithNav": {
        "Account Security & Access Control": ([16, 17, 20, 13, 13, 14, 15, 5], 22, 10),
        "Advertising & Personalization Control": ([16, 14, 17, 11, 12, 11, 9, 8], 19, 7),
        "Cookie & Tracking Consent Management": ([13, 13, 18, 18, 14, 3, 6, 2], 24, 8),
        "Data & Asset Management": ([5, 5, 5, 4, 5, 5, 5, 3], 6, 2),
        "Notification & Communication Preferences": ([28, 35, 40, 33, 27, 21, 27, 11], 51, 13),
        "Profile Visibility & Customization": ([14, 12, 16, 8, 12, 7, 9, 7], 22, 9),
        "Social Safety & Content Moderation": ([15, 15, 27, 14, 19, 15, 15, 8], 31, 8),
        "UI/UX Preferences": ([4, 4, 4, 4, 5, 3, 2, 0], 5, 3),
        "User Privacy & Data Rights": ([12, 12, 19, 13, 14, 12, 13, 8], 20, 8),
    },
}

# element -> (successes, direct failures or None, instances)
UI_ELEMENTS = {
    "WoNav": {
        "Button": ([54, 71, 86, 58, 75, 49, 49, 22],
                   [17, 9, 3, 9, 9, 7, 7, 4], 111),
        "Checkbox": ([17, 22, 27, 17, 19, 12, 13, 8],
                     [17, 12, 6, 12, 8, 5, 5, 6], 40),
        "Dropdown": ([47, 47, 68, 40, 50, 36, 39, 17],
                     [8, 6, 2, 3, 2, 6, 6, 2], 93),
        "Icon": ([30, 35, 40, 26, 26, 23, 24, 10],
                 [1, 1, 0, 0, 0, 1, 1, 0], 52),
        "Link": ([87, 101, 126, 87, 100, 73, 72, 34],
                 [16, 14, 5, 3, 4, 11, 11, 5], 172),
        "Menu": ([2, 4, 7, 1, 5, 0, 2, 3],
                 [1, 0, 0, 0, 0, 1, 1, 0], 7),
        "Option": ([41, 46, 60, 35, 42, 33, 32, 18],
                   [3, 1, 0, 0, 0, 1, 1, 0], 77),
        "Radio Button": ([15, 14, 12, 7, 13, 7, 9, 4],
                         [0, 5, 4, 4, 4, 2, 2, 4], 20),
        "Text Input": ([8, 6, 11, 4, 7, 3, 6, 1],
                       [3, 3, 0, 0, 0, 3, 3, 0], 14),
        "Toggle": ([37, 55, 74, 56, 55, 45, 37, 20],
                   [46, 45, 19, 9, 19, 9, 10, 20], 98),
    },
    "WithNav": {
        "Button": ([72, 73, 92, 71, 72, 52, 60, 27], None, 111),
        "Checkbox": ([22, 23, 29, 18, 25, 13, 15, 8], None, 40),
        "Dropdown": ([48, 55, 76, 44, 46, 40, 46, 26], None, 93),
        "Icon": ([36, 35, 41, 32, 33, 29, 30, 13], None, 52),
        "Link": ([104, 107, 139, 101, 101, 73, 86, 43], None, 172),
        "Menu": ([5, 6, 7, 3, 5, 0, 3, 4], None, 7),
        "Option": ([39, 40, 65, 34, 44, 35, 38, 21], None, 77),
        "Radio Button": ([15, 14, 15, 12, 15, 11, 8, 4], None, 20),
        "Text Input": ([8, 7, 11, 5, 9, 7, 8, 3], None, 14),
        "Toggle": ([50, 53, 81, 56, 51, 36, 42, 24], None, 98),
    },
}

# both correct / only ON / only OFF / both failed over the 62 dual-state tasks
DUAL = {
    "WoNav": [(13, 19, 11, 19), (20, 21, 6, 15), (39, 10, 8, 5),
              (22, 10, 7, 23), (18, 19, 8, 17), (17, 9, 5, 31),
              (10, 12, 14, 26), (5, 7, 8, 42)],
    "WithNav": [(21, 23, 5, 13), (25, 17, 10, 10), (42, 13, 4, 3),
                (21, 13, 9, 19), (24, 12, 5, 21), (19, 8, 7, 28),
                (15, 14, 11, 22), (4, 14, 8, 36)],
}


def main():
    rows = [{
        "kind": "meta",
        "source": "transcribed",
        "note": ("Published benchmark counts transcribed as data so reports "
                 "reproduce the original arithmetic; none of these numbers "
                 "were re-measured here."),
        "total_instances": 200,
        "dual_tasks": 62,
    }]
    for variant, entries in OVERALL.items():
        for model, (s, e, t) in zip(MODELS, entries):
            rows.append({"kind": "overall", "model": model, "variant": variant,
                         "success": s, "error": e, "timeout": t})
    for model, (bc, ow, oo, bf) in zip(MODELS, NAV_COMPARE):
        rows.append({"kind": "nav_compare", "model": model, "both_correct": bc,
                     "only_withnav": ow, "only_wonav": oo, "both_failed": bf})
    for variant, sites in WEBSITES.items():
        for site, (successes, n) in sites.items():
            rows.append({"kind": "website", "variant": variant, "website": site,
                         "instances": n,
                         "successes": dict(zip(MODELS, successes))})
    for variant, cats in CATEGORIES.items():
        for cat, (successes, n, sites) in cats.items():
            rows.append({"kind": "category", "variant": variant, "category": cat,
                         "instances": n, "websites": sites,
                         "successes": dict(zip(MODELS, successes))})
    for variant, elements in UI_ELEMENTS.items():
        for element, (successes, failures, n) in elements.items():
            row = {"kind": "ui_element", "variant": variant, "element": element,
                   "instances": n, "successes": dict(zip(MODELS, successes))}
            if failures is not None:
                row["direct_failures"] = dict(zip(MODELS, failures))
            rows.append(row)
    for variant, entries in DUAL.items():
        for model, (bc, on, off, bf) in zip(MODELS, entries):
            rows.append({"kind": "dual_state", "model": model, "variant": variant,
                         "tasks": 62, "both_correct": bc, "only_on": on,
                         "only_off": off, "both_failed": bf})

    with open(os.path.abspath(OUT), "w", encoding="utf-8") as fh:
        for row in rows:
            fh.write(json.dumps(row, sort_keys=True) + "\n")
    print(f"wrote {len(rows)} rows to {os.path.abspath(OUT)}")

    for variant, entries in OVERALL.items():
        for model, (s, e, t) in zip(MODELS, entries):
            assert s + e + t == 200, (variant, model)
    for cells in NAV_COMPARE:
        assert sum(cells) == 200
    for variant in DUAL:
        for cells in DUAL[variant]:
            assert sum(cells) == 62, (variant, cells)
    for variant, sites in WEBSITES.items():
        assert sum(n for _, n in sites.values()) == 200, variant
    for variant, cats in CATEGORIES.items():
        assert sum(n for _, n, _ in cats.values()) == 200, variant
    print("row-sum checks passed")


if __name__ == "__main__":
    main()
