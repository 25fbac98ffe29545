"""Agent runtime: observations, action grammar, execution loop, policies."""

from .actions import Action, parse_action
from .observe import Observation, ObservedElement, annotate_som, observe
from .policies import (ModelPolicy, PolicyFactory, RepeatingPolicy,
                       ScriptedPolicy, ScriptedStep)
from .runtime import (AgentRuntime, Budgets, PolicyContext, PolicyDecision,
                      Trajectory, TrajectoryStep, run_agent)

__all__ = [
    "Action", "parse_action",
    "Observation", "ObservedElement", "annotate_som", "observe",
    "ModelPolicy", "PolicyFactory", "RepeatingPolicy", "ScriptedPolicy",
    "ScriptedStep",
    "AgentRuntime", "Budgets", "PolicyContext", "PolicyDecision",
    "Trajectory", "TrajectoryStep", "run_agent",
]
