"""Deterministic discrete-event simulation of the two systems under test."""

from __future__ import annotations

import random

from . import handover, homecare
from .common import (
    FAULTS,
    HANDOVER,
    HOMECARE,
    SCENARIOS,
    LogEvent,
    ScenarioConfig,
    ScenarioError,
    SimulationLog,
    default_config,
    merge_ticks,
)
from .handover import HandoverController, handover_step
from .homecare import HomecareController, homecare_step

__all__ = [
    "FAULTS", "HANDOVER", "HOMECARE", "SCENARIOS", "LogEvent", "ScenarioConfig",
    "ScenarioError", "SimulationLog", "StructuralError", "default_config", "simulate",
    "structural_selfcheck", "handover_step", "homecare_step", "actions_for", "cover_points",
    "profile_name", "validate_test",
]


class StructuralError(AssertionError):
    pass


def actions_for(scenario: str) -> dict:
    if scenario == HANDOVER:
        return handover.ACTIONS
    if scenario == HOMECARE:
        return homecare.ACTIONS
    raise ScenarioError(f"unknown scenario {scenario!r}")


def cover_points(scenario: str) -> tuple[str, ...]:
    return handover.COVER_POINTS if scenario == HANDOVER else homecare.COVER_POINTS


def profile_name(config: ScenarioConfig) -> str:
    if set(config.faults) == set(FAULTS):
        return "as-found"
    if not config.faults:
        return "fixed"
    return "custom"


def validate_test(scenario: str, test) -> None:
    """Reject actions that do not belong to ``scenario`` or carry out-of-range values."""
    specs = actions_for(scenario)
    for a in test.actions:
        spec = specs.get((a.actor, a.label))
        if spec is None:
            raise ScenarioError(f"{scenario}: unknown action {a.actor} {a.label} at tick {a.offset}")
        names = [k for k, _ in a.params]
        if sorted(names) != sorted(spec.params):
            raise ScenarioError(f"{scenario}: {a.label} expects params {sorted(spec.params)}, got {names}")
        for k, v in a.params:
            if spec.classify(k, v) is None:
                raise ScenarioError(f"{scenario}: {a.label} {k}={v!r} outside every declared range")


def simulate(scenario: str, config: ScenarioConfig, test) -> SimulationLog:
    """Run ``test`` against the scenario's controller and return the event log.

    Virtual time jumps between the next scheduled input and the controller's
    next timer, so idle stretches cost nothing.  The run ends when the budget
    is reached or the controller is quiescent with no inputs left.
    """
    validate_test(scenario, test)
    log = SimulationLog(
        header={
            "scenario": scenario,
            "test": test.abstract_id,
            "generator": test.generator,
            "seed": test.seed,
            "profile": profile_name(config),
            "faults": sorted(config.faults),
            "budget": config.budget,
        }
    )
    if scenario == HANDOVER:
        ctrl = HandoverController(config, log, random.Random(test.seed))
        step = handover_step
    else:
        ctrl = HomecareController(config, log)
        step = homecare_step
    ctrl.start(0)

    by_tick = merge_ticks(test.actions, config.budget)
    input_ticks = sorted(by_tick)
    i = 0
    tick = 0
    while True:
        candidates = []
        if i < len(input_ticks):
            candidates.append(input_ticks[i])
        deadline = ctrl.next_deadline()
        if deadline is not None:
            candidates.append(deadline)
        if not candidates:
            if ctrl.quiescent():
                log.add(tick, "sim", "end", reason="quiescent")
            else:
                log.add(config.budget, "sim", "end", reason="budget")
            break
        t = max(tick, min(candidates))
        if t > config.budget:
            log.add(config.budget, "sim", "end", reason="budget")
            break
        tick = t
        inputs = []
        if i < len(input_ticks) and input_ticks[i] == tick:
            inputs = by_tick[tick]
            i += 1
        step(ctrl, inputs, tick)
        if i == len(input_ticks) and ctrl.quiescent() and ctrl.next_deadline() is None:
            log.add(tick, "sim", "end", reason="quiescent")
            break
    return log


def structural_selfcheck(scenario: str) -> dict:
    """Assert FSM sizes and enumerate the coverage points of ``scenario``."""
    if scenario == HANDOVER:
        states = set(handover.STATES)
        for a, b in handover.TRANSITIONS:
            if a not in states or b not in states:
                raise StructuralError(f"transition {a}->{b} references an unknown state")
        n_states, n_trans = len(handover.STATES), len(set(handover.TRANSITIONS))
        if (n_states, n_trans) != (14, 22):
            raise StructuralError(f"handover FSM has {n_states} states / {n_trans} transitions, expected 14/22")
        report = {"states": n_states, "transitions": n_trans}
    elif scenario == HOMECARE:
        sizes = tuple(len(homecare.state_names(f)) for f in homecare.FSMS)
        trans = tuple(len(homecare.fsm_transitions(f)) for f in homecare.FSMS)
        if sizes != (5, 6, 3, 3, 2) or trans != (4, 5, 2, 2, 1):
            raise StructuralError(f"home-care FSMs have {sizes} states / {trans} transitions")
        report = {"states": sizes, "transitions": trans, "fsms": tuple(homecare.FSMS)}
    else:
        raise ScenarioError(f"unknown scenario {scenario!r}")
    points = cover_points(scenario)
    if len(set(points)) != len(points):
        raise StructuralError("duplicate coverage points")
    report["branch_points"] = points
    return report
