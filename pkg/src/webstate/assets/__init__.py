"""Versioned text/script assets (system prompts, injected page scripts)."""

import os

PROMPT_VERSION = "v1"
SCRIPT_VERSION = "v1"

_BASE = os.path.dirname(__file__)


def load_prompt(name: str) -> str:
    path = os.path.join(_BASE, "prompts", PROMPT_VERSION, f"{name}.txt")
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def load_script(name: str) -> str:
    path = os.path.join(_BASE, "scripts", SCRIPT_VERSION, f"{name}.js")
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()
