"""Check whether a simulation reached a model-level target predicate."""

from __future__ import annotations

from ..scenarios import SimulationLog
from ..ta_checker import Query, evaluate


def log_reaches(log: SimulationLog, query: Query, robot: str = "robot") -> bool:
    """True iff some robot state-entry snapshot in ``log`` satisfies the predicate.

    Each ``enter`` event carries the entered state and the controller's
    observables, which share names with the model's location and variables.
    Dots in state names (``feed.go_fridge``) read as underscores.
    """
    for e in log.events:
        if e.label != "enter":
            continue
        payload = dict(e.payload)
        state = payload.pop("state").replace(".", "_")
        payload.pop("from", None)
        if evaluate(query.predicate, {robot: state}, payload):
            return True
    return False
