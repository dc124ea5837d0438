"""Container tying an agent system to the scenario it generates tests for."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from ..agent_kernel import AgentProgram, Belief


@dataclass(frozen=True)
class BdiModel:
    scenario: str
    programs: tuple[AgentProgram, ...]
    vocabulary: tuple[Belief, ...]  # the verification agent's controllable beliefs, in injection order
    environment: tuple[str, ...]
    # (agent, emitted action) -> (actor, label, symbolic params), None for robot-side actions
    map_action: Callable[[str, Belief], tuple | None]

    def with_initial(self, agent: str, *beliefs: Belief) -> "BdiModel":
        """Variant of the model with extra initial beliefs for ``agent``."""
        progs = tuple(
            AgentProgram(p.name, p.initial_beliefs | frozenset(beliefs), p.initial_goals, p.plan_library, p.verifier)
            if p.name == agent else p
            for p in self.programs
        )
        return BdiModel(self.scenario, progs, self.vocabulary, self.environment, self.map_action)
