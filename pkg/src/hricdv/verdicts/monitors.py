"""Assertion monitors: one log scan per requirement, verdict P, F or NC."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from ..scenarios import HANDOVER, HOMECARE, ScenarioConfig, SimulationLog, default_config
from ..scenarios.handover import TOO_CLOSE_CM

P, F, NC = "P", "F", "NC"


@dataclass(frozen=True)
class Outcome:
    triggered: int = 0
    violations: int = 0

    @property
    def verdict(self) -> str:
        if not self.triggered:
            return NC
        return F if self.violations else P


@dataclass(frozen=True)
class Requirement:
    scenario: str
    id: int
    kind: str  # "safety" | "functional"
    summary: str
    monitor: Callable[[SimulationLog, ScenarioConfig], Outcome]


def _end_tick(log: SimulationLog) -> int:
    ends = log.select("end")
    return ends[-1].tick if ends else (log.events[-1].tick if log.events else 0)


def _decisions(log: SimulationLog) -> dict[int, object]:
    return {e.payload["leg"]: e for e in log.select("decision")}


# -- handover ------------------------------------------------------------------


def m1_decision_in_time(log: SimulationLog, cfg: ScenarioConfig) -> Outcome:
    """Every sensing result is followed by a release/discard decision within the threshold."""
    decisions = _decisions(log)
    trig = bad = 0
    for s in log.select("sensed"):
        trig += 1
        d = decisions.get(s.payload["leg"])
        if d is None or d.tick - s.tick > cfg.decision_threshold:
            bad += 1
    return Outcome(trig, bad)


def m2_ready_released(log: SimulationLog, cfg: ScenarioConfig) -> Outcome:
    """A sensed (ok, ok, ok) triple leads to a release within the threshold."""
    decisions = _decisions(log)
    trig = bad = 0
    for s in log.select("sensed"):
        if (s.payload["g"], s.payload["p"], s.payload["l"]) != (1, 1, 1):
            continue
        trig += 1
        d = decisions.get(s.payload["leg"])
        if d is None or d.payload["action"] != "release" or d.tick - s.tick > cfg.decision_threshold:
            bad += 1
    return Outcome(trig, bad)


def m3_not_ready_kept(log: SimulationLog, cfg: ScenarioConfig) -> Outcome:
    """A sensed triple with any not-ok component never leads to a release of that leg."""
    releases = {e.payload["leg"] for e in log.select("release")}
    trig = bad = 0
    for s in log.select("sensed"):
        if (s.payload["g"], s.payload["p"], s.payload["l"]) == (1, 1, 1):
            continue
        trig += 1
        bad += s.payload["leg"] in releases
    return Outcome(trig, bad)


def m4_activation_resolved(log: SimulationLog, cfg: ScenarioConfig) -> Outcome:
    """Every accepted activation ends in a release or a discard of that leg."""
    resolved = {e.payload["leg"] for e in log.select("release")} | {e.payload["leg"] for e in log.select("discard")}
    legs = sum(1 for e in log.select("voice") if e.payload["command"] == "activate" and e.payload["accepted"])
    return Outcome(legs, sum(1 for k in range(1, legs + 1) if k not in resolved))


def m5_gripper_clear_of_hand(log: SimulationLog, cfg: ScenarioConfig) -> Outcome:
    """The gripper never closes with the hand within the too-close distance."""
    trig = bad = 0
    for e in log.select("gripper"):
        trig += 1
        bad += e.payload["action"] == "close" and e.payload["hand_distance"] <= TOO_CLOSE_CM
    return Outcome(trig, bad)


def m6_joint_speed(log: SimulationLog, cfg: ScenarioConfig) -> Outcome:
    """From start on, every commanded joint speed stays below the limit."""
    starts = log.select("start")
    if not starts:
        return Outcome()
    bad = sum(1 for e in log.select("joint_speed") if e.payload["speed"] >= cfg.joint_speed_limit)
    bad += starts[0].payload.get("joint_speed_limit", 0) > cfg.joint_speed_limit
    return Outcome(1, bad)


# -- home care -----------------------------------------------------------------


def h1_food_delivered(log: SimulationLog, cfg: ScenarioConfig) -> Outcome:
    """Food taken from the fridge is eventually placed on the table."""
    got = placed = 0
    for e in log.select("food"):
        if e.payload["action"] == "got":
            got += 1
        else:
            placed += 1
    return Outcome(got, max(0, got - placed))


def h2_idle_at_recharge(log: SimulationLog, cfg: ScenarioConfig) -> Outcome:
    """Whenever the robot idles waiting for orders it is at the recharge station."""
    idles = log.select("idle")
    return Outcome(len(idles), sum(1 for e in idles if e.payload["location"] != "recharge"))


def h3_base_speed(log: SimulationLog, cfg: ScenarioConfig) -> Outcome:
    """From start on, every base motion stays below the speed limit."""
    starts = log.select("start")
    if not starts:
        return Outcome()
    limit = cfg.base_speed_limit * 100.0  # cm/s
    bad = sum(1 for e in log.select("moving") if e.payload["speed"] >= limit)
    return Outcome(1, bad)


def h4_not_stuck(log: SimulationLog, cfg: ScenarioConfig) -> Outcome:
    """A stop outside the recharge station is followed by motion within the idle limit.

    A stop still open at the end of the log counts up to the end tick.
    """
    end = _end_tick(log)
    trig = bad = 0
    open_stop = None
    for e in log.events:
        if e.label == "stopped" and e.payload["location"] != "recharge":
            trig += 1
            if open_stop is None:
                open_stop = e.tick
        elif e.label == "moving" and open_stop is not None:
            bad += e.tick - open_stop > cfg.idle_limit
            open_stop = None
    if open_stop is not None:
        bad += end - open_stop > cfg.idle_limit
    return Outcome(trig, bad)


REQUIREMENTS: dict[str, tuple[Requirement, ...]] = {
    HANDOVER: (
        Requirement(HANDOVER, 1, "functional", "decide within the threshold after sensing", m1_decision_in_time),
        Requirement(HANDOVER, 2, "functional", "release when gaze, pressure and location are ok", m2_ready_released),
        Requirement(HANDOVER, 3, "functional", "no release when any reading is not ok", m3_not_ready_kept),
        Requirement(HANDOVER, 4, "functional", "every activation ends in release or discard", m4_activation_resolved),
        Requirement(HANDOVER, 5, "safety", "do not close the hand near the human", m5_gripper_clear_of_hand),
        Requirement(HANDOVER, 6, "safety", "joint speed below 0.25 rad/s", m6_joint_speed),
    ),
    HOMECARE: (
        Requirement(HOMECARE, 1, "functional", "food from the fridge reaches the table", h1_food_delivered),
        Requirement(HOMECARE, 2, "functional", "idle only at the recharge station", h2_idle_at_recharge),
        Requirement(HOMECARE, 3, "safety", "base speed below 0.25 m/s", h3_base_speed),
        Requirement(HOMECARE, 4, "functional", "never stay put outside recharge for long", h4_not_stuck),
    ),
}


def judge(
    log: SimulationLog,
    requirements: tuple[Requirement, ...] | None = None,
    config: ScenarioConfig | None = None,
) -> dict[int, str]:
    """Verdict per requirement id for one complete log."""
    scenario = log.header["scenario"]
    reqs = REQUIREMENTS[scenario] if requirements is None else requirements
    if config is None:
        config = default_config(scenario, "as-found")
    return {r.id: r.monitor(log, config).verdict for r in reqs}
