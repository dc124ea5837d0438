"""Shared simulation types: configuration, parameter ranges and the event log."""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from typing import Any, Iterable

LOG_SCHEMA = "hricdv-log/1"

HANDOVER = "handover"
HOMECARE = "homecare"
SCENARIOS = (HANDOVER, HOMECARE)

FAULTS = ("late-decision", "gripper-near-hand", "dog-collision-fall", "no-speed-cap")


class ScenarioError(ValueError):
    """Raised for malformed scenario input (unknown actor, action or parameter)."""


@dataclass(frozen=True)
class ParamRange:
    """Valid concrete values behind one symbolic parameter value.

    Numeric ranges are closed intervals sampled at ``decimals`` precision;
    ``choices`` ranges enumerate admissible words.
    """

    low: float = 0.0
    high: float = 0.0
    decimals: int = 1
    choices: tuple[str, ...] = ()

    def contains(self, value: Any) -> bool:
        if self.choices:
            return value in self.choices
        if isinstance(value, str):
            return False
        return self.low <= value <= self.high

    def sample(self, rng) -> float | str:
        if self.choices:
            return rng.choice(self.choices)
        return round(rng.uniform(self.low, self.high), self.decimals)


@dataclass(frozen=True)
class ActionSpec:
    actor: str
    label: str
    params: dict[str, dict[str, ParamRange]] = field(default_factory=dict)

    def classify(self, name: str, value: Any) -> str | None:
        for symbol, rng in self.params[name].items():
            if rng.contains(value):
                return symbol
        return None


@dataclass(frozen=True)
class ScenarioConfig:
    """Timing, limits and fault switches for one simulation run.

    Durations are in ticks (1 tick = 100 ms); speeds in the units named.
    """

    budget: int = 3000
    decision_threshold: int = 60
    boredom_timeout: int = 300
    idle_limit: int = 600
    joint_speed_limit: float = 0.25  # rad/s
    base_speed_limit: float = 0.25  # m/s
    proximity_stop: float = 20.0  # cm
    max_tasks: int = 3
    late_decision_probability: float = 0.2
    faults: frozenset[str] = frozenset(FAULTS)

    def __post_init__(self) -> None:
        for name in ("budget", "decision_threshold", "boredom_timeout", "idle_limit"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        for name in ("joint_speed_limit", "base_speed_limit", "proximity_stop"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        unknown = set(self.faults) - set(FAULTS)
        if unknown:
            raise ValueError(f"unknown fault switches: {sorted(unknown)}")

    def fault(self, name: str) -> bool:
        return name in self.faults


def default_config(scenario: str, profile: str = "as-found") -> ScenarioConfig:
    """Config for ``scenario`` under the ``as-found`` (faults on) or ``fixed`` profile."""
    if scenario not in SCENARIOS:
        raise ScenarioError(f"unknown scenario {scenario!r}")
    if profile not in ("as-found", "fixed"):
        raise ValueError(f"unknown profile {profile!r}")
    budget = 3000 if scenario == HANDOVER else 7000
    faults = frozenset(FAULTS) if profile == "as-found" else frozenset()
    return ScenarioConfig(budget=budget, faults=faults)


@dataclass(frozen=True)
class LogEvent:
    tick: int
    source: str
    label: str
    payload: dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(
            {"tick": self.tick, "source": self.source, "label": self.label, "payload": self.payload},
            sort_keys=True,
            separators=(",", ":"),
        )


@dataclass
class SimulationLog:
    """Timestamped record of one simulated test run.

    ``header`` carries scenario, test id, seed and profile; the final event is
    always an ``end`` record.
    """

    header: dict[str, Any]
    events: list[LogEvent] = field(default_factory=list)

    @property
    def scenario(self) -> str:
        return self.header["scenario"]

    def add(self, tick: int, source: str, label: str, **payload: Any) -> None:
        self.events.append(LogEvent(tick, source, label, payload))

    def select(self, *labels: str) -> list[LogEvent]:
        return [e for e in self.events if e.label in labels]

    def covered_points(self) -> set[str]:
        return {e.payload["point"] for e in self.events if e.label == "cover"}

    def dumps(self) -> str:
        head = json.dumps({"schema": LOG_SCHEMA, **self.header}, sort_keys=True, separators=(",", ":"))
        return "\n".join([head, *(e.to_json() for e in self.events)]) + "\n"

    @classmethod
    def loads(cls, text: str) -> "SimulationLog":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise ValueError("empty log")
        header = json.loads(lines[0])
        if header.pop("schema", None) != LOG_SCHEMA:
            raise ValueError("unsupported log schema")
        events = []
        for ln in lines[1:]:
            rec = json.loads(ln)
            events.append(LogEvent(rec["tick"], rec["source"], rec["label"], rec["payload"]))
        if not events or events[-1].label != "end":
            raise ValueError("log has no end-of-test record")
        return cls(header, events)


def merge_ticks(actions: Iterable, budget: int) -> dict[int, list]:
    """Group timed actions by tick, preserving file order within a tick."""
    by_tick: dict[int, list] = {}
    for a in actions:
        if a.offset <= budget:
            by_tick.setdefault(a.offset, []).append(a)
    return by_tick


def with_faults(config: ScenarioConfig, *faults: str) -> ScenarioConfig:
    return replace(config, faults=frozenset(faults))
