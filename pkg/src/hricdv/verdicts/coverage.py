"""Code coverage over enumerated branch points, and cross-product classification."""

from __future__ import annotations

from dataclasses import dataclass

from ..scenarios import HANDOVER, HOMECARE, SimulationLog, cover_points
from ..scenarios.homecare import TASKS

HANDOVER_SUBGROUPS = 14
HOMECARE_SUBGROUPS = 6


@dataclass(frozen=True, order=True)
class CrossProductClass:
    scenario: str
    subgroup: int


def code_coverage(log: SimulationLog, scenario: str) -> tuple[float, frozenset[str]]:
    """Percentage of the scenario's branch points covered by ``log``, and the covered set."""
    points = cover_points(scenario)
    covered = frozenset(log.covered_points() & set(points))
    return 100.0 * len(covered) / len(points), covered


def handover_outcome(log: SimulationLog) -> dict:
    """The raw (requests x outcomes) tuple behind the collapsed subgroups."""
    legs = sum(1 for e in log.select("voice") if e.payload["command"] == "activate" and e.payload["accepted"])
    decisions = [e.payload["action"] for e in log.select("decision")]
    timeouts = sum(1 for e in log.select("timeout") if e.payload["state"] in ("await_ready", "sense"))
    bored = len(log.select("bored"))
    return {
        "legs": legs,
        "released": decisions.count("release"),
        "discarded": decisions.count("discard"),
        "timeouts": timeouts,
        "bored": bored,
    }


def homecare_outcome(log: SimulationLog) -> dict:
    done = {t: 0 for t in TASKS}
    for e in log.select("complete"):
        done[e.payload["command"]] += 1
    invalid = sum(1 for e in log.select("command") if e.payload["command"] == "invalid")
    return {"completed": done, "invalid": invalid}


def classify_cross_product(log: SimulationLog, scenario: str) -> frozenset[CrossProductClass]:
    """Collapsed cross-product subgroups hit by one log.

    Handover rows come in blocks of three for 4, 3, 2 and 1 legs: a release
    decision, a discard decision, and a timeout or boredom.  Row 13 is one or
    more legs without any decision; row 14 collects logs without any leg.
    Home-care rows 1-4 are completions of feed, clean, fridge and sink, row 5
    two or more feed/clean completions, row 6 invalid commands or no
    completion at all.
    """
    rows: set[int] = set()
    if scenario == HANDOVER:
        o = handover_outcome(log)
        k = o["legs"]
        if 1 <= k <= 4:
            block = 3 * (4 - k)
            if o["released"]:
                rows.add(block + 1)
            if o["discarded"]:
                rows.add(block + 2)
            if o["timeouts"] or o["bored"]:
                rows.add(block + 3)
            if not (o["released"] or o["discarded"]):
                rows.add(13)
        if not rows:
            rows.add(14)
    elif scenario == HOMECARE:
        o = homecare_outcome(log)
        for i, t in enumerate(TASKS, start=1):
            if o["completed"][t]:
                rows.add(i)
        if o["completed"]["feed"] + o["completed"]["clean"] >= 2:
            rows.add(5)
        if o["invalid"] or not rows:
            rows.add(6)
    else:
        raise ValueError(f"unknown scenario {scenario!r}")
    return frozenset(CrossProductClass(scenario, r) for r in rows)
