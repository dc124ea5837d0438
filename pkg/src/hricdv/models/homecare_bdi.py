"""BDI model of the home-care assistant: verifier, human, robot and dog agents.

The verification agent controls 5 beliefs, one per command the human may
give (``feed``, ``clean``, ``fridge``, ``sink`` and ``invalid``).  The human
gives one command at a time and waits for the robot to report back before
giving the next.  The dog's behaviour is a model variant, fixed through its
initial beliefs: ``collide_on(C)``, ``near_on(C)`` or ``far_on(C)`` make it
approach the robot shortly after the robot sets off for command ``C``;
``late_on(C)`` makes it bump into the robot later on, while a feed order is
carried to the table, and ``still_on(C)`` makes it come near while the robot
stands and manipulates.  The robot reports back when a task is complete (its
return to the station may still be under way) and after a fall.
"""

from __future__ import annotations

import math
from functools import lru_cache

from ..agent_kernel import AgentProgram, Belief, ProgramBuilder
from ..scenarios import homecare as HC
from .bdi_model import BdiModel

COMMANDS = HC.COMMANDS
DOG_KINDS = ("collide", "near", "far", "late", "still")
# count-down lengths from the start of a task, in cycles
DOG_WAIT = {"late": 31, "still": 20}

SYSTEM_NAMES = {
    *COMMANDS, "want", "busy", "issued", "done", "cmd", "work", "succ", "fallen", "bumped",
    "moving", "approach", "collide_on", "near_on", "far_on", "late_on", "still_on", "lurk",
}


def vocabulary() -> tuple[Belief, ...]:
    return tuple(Belief(c) for c in COMMANDS)


def _task_ticks(task: str) -> int:
    total, here = 0, "recharge"
    for kind, arg in HC.FSMS[task]:
        if kind == "go":
            total += HC.segment_ticks(HC.distance(here, arg), HC.CRUISE_SPEED)
            here = arg
        else:
            total += arg
    return total


def work_cycles(task: str) -> int:
    """Cycles the robot model spends on ``task`` up to its completion, including a dog stop."""
    return math.ceil((_task_ticks(task) + HC.DOG_STAY) / 10) + 1


@lru_cache(maxsize=1)
def programs() -> tuple[AgentProgram, ...]:
    b = ProgramBuilder(set(SYSTEM_NAMES))
    for name in ("verifier", "human", "robot", "dog"):
        b.agent(name, verifier=name == "verifier")
    longest = max(work_cycles(t) for t in HC.TASKS)
    for n in range(1, longest + 1):
        b.belief("robot", Belief("succ", (n, n - 1)))
    for n in range(1, max(DOG_WAIT.values()) + 1):
        b.belief("dog", Belief("succ", (n, n - 1)))

    for c in COMMANDS:
        b.plan("verifier", c, "true", f"send human want({c})")

    b.plan("human", "want(C)", "not busy", "emit C", "self busy", "self issued(C)", "send robot cmd(C)")
    b.plan("human", "done(C)", "want(D) & not issued(D)", "emit D", "self issued(D)", "send robot cmd(D)")

    b.plan("robot", "cmd(invalid)", "true", "send human done(invalid)")
    for t in HC.TASKS:
        b.plan("robot", f"cmd({t})", "true", f"send dog moving({t})", f"self work({t},{work_cycles(t)})")
    b.plan("robot", "work(C,0)", "not fallen", "send human done(C)")
    b.plan("robot", "work(C,N)", "succ(N,M) & not fallen", "self work(C,M)")
    b.plan("robot", "bumped(C)", "true", "emit fall(C)", "self fallen", "send human done(C)")

    for kind, wait in DOG_WAIT.items():
        b.plan("dog", "moving(C)", f"{kind}_on(C)", f"self lurk({kind},C,{wait})")
    b.plan("dog", "moving(C)", "true", "self approach(C)")
    b.plan("dog", "lurk(late,C,0)", "true", "emit approach(collide)", "send robot bumped(C)")
    b.plan("dog", "lurk(still,C,0)", "true", "emit approach(near)")
    b.plan("dog", "lurk(K,C,N)", "succ(N,M)", "self lurk(K,C,M)")
    b.plan("dog", "approach(C)", "collide_on(C)", "emit approach(collide)", "send robot bumped(C)")
    b.plan("dog", "approach(C)", "near_on(C)", "emit approach(near)")
    b.plan("dog", "approach(C)", "far_on(C)", "emit approach(far)")
    return tuple(b.build())


def map_action(agent: str, action: Belief) -> tuple[str, str, tuple] | None:
    if agent == "robot":
        return None
    if agent == "dog":
        return ("dog", "approach", (("distance", action.args[0]),))
    if action.name == "invalid":
        return ("human", "invalid", (("word", "invalid"),))
    return ("human", action.name, ())


@lru_cache(maxsize=1)
def model() -> BdiModel:
    return BdiModel("homecare", programs(), vocabulary(), ("human", "dog"), map_action)


def dog_variant(kind: str | None, command: str | None) -> BdiModel:
    """The model with the dog approaching during ``command`` (no dog for ``None``)."""
    if kind is None or command is None:
        return model()
    if kind not in DOG_KINDS:
        raise ValueError(f"unknown dog behaviour {kind!r}")
    return model().with_initial("dog", Belief(f"{kind}_on", (command,)))
