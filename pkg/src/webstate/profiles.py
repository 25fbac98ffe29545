"""Browser-profile lifecycle: per-run copies of a base profile, light color
scheme enforcement, and the anti-bot hook point.

The base profile is never handed to a run; every run gets a fresh copy, so
server-side-style fixture state and cookies start identical across runs and
the base stays byte-for-byte untouched.
"""

import hashlib
import os
import shutil
from dataclasses import dataclass, field
from typing import Callable, Dict, Optional

from .errors import ProfileError

_ANTI_BOT_HOOKS: Dict[str, Callable] = {}


def register_anti_bot_hook(name: str, hook: Callable) -> None:
    _ANTI_BOT_HOOKS[name] = hook


def noop_anti_bot_hook(launch_config) -> None:
    """Placeholder for operator-supplied bot-evasion plugins; does nothing."""


register_anti_bot_hook("noop", noop_anti_bot_hook)


@dataclass
class ProfileSpec:
    base_profile_dir: str
    run_profile_dir: str
    light_mode: bool = True
    anti_bot_hook: Optional[str] = None


@dataclass
class LaunchConfig:
    profile_dir: str
    color_scheme: str = "light"
    anti_bot_hook: Optional[str] = None
    extras: dict = field(default_factory=dict)


def prepare_profile(spec: ProfileSpec) -> LaunchConfig:
    """Copy the base profile into a fresh run profile and assemble the browser
    launch configuration."""
    if not os.path.isdir(spec.base_profile_dir):
        raise ProfileError(f"base profile missing: {spec.base_profile_dir}")
    if os.path.exists(spec.run_profile_dir) and os.listdir(spec.run_profile_dir):
        raise ProfileError(f"run profile dir not empty: {spec.run_profile_dir}")
    try:
        shutil.copytree(spec.base_profile_dir, spec.run_profile_dir,
                        dirs_exist_ok=True)
    except OSError as exc:
        raise ProfileError(f"profile copy failed: {exc}") from exc
    config = LaunchConfig(
        profile_dir=spec.run_profile_dir,
        color_scheme="light" if spec.light_mode else "auto",
        anti_bot_hook=spec.anti_bot_hook,
    )
    if spec.anti_bot_hook:
        hook = _ANTI_BOT_HOOKS.get(spec.anti_bot_hook)
        if hook is None:
            raise ProfileError(f"unknown anti-bot hook {spec.anti_bot_hook!r}")
        hook(config)
    return config


def hash_dir(path: str) -> str:
    """Stable content hash of a directory tree (for base-immutability checks)."""
    digest = hashlib.sha256()
    for root, dirs, files in sorted(os.walk(path)):
        dirs.sort()
        for name in sorted(files):
            full = os.path.join(root, name)
            digest.update(os.path.relpath(full, path).encode())
            with open(full, "rb") as fh:
                digest.update(fh.read())
    return digest.hexdigest()
