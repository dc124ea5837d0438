"""BDI model of the handover: verifier, human, sensors and robot agents.

The verification agent controls 38 beliefs:

* ``request(k)`` for legs 1..4,
* ``gaze(k, ok|nok)``, ``pressure(k, ok|nok)``, ``location(k, ok|nok)`` (24),
* ``ready(k)`` and ``bored(k)`` for legs 1..4,
* ``adjust`` (sensors republish an all-ok triple right after a not-ok one),
* ``repeat`` (the human doubles every activation command).

Requests are injected last, so the human starts only once every other
belief has reached its agent.  Waiting is modelled by count-down beliefs
walked down through ``succ(N, N-1)`` facts; the counts leave enough cycles
for the controller's timers to expire before the human moves on.
"""

from __future__ import annotations

from functools import lru_cache

from ..agent_kernel import AgentProgram, Belief, ProgramBuilder
from ..scenarios import handover as H
from .bdi_model import BdiModel

LEGS = tuple(range(1, H.MAX_LEGS + 1))
SENSORS = ("gaze", "pressure", "location")

# count-down lengths, in cycles
HUMAN_TIMEOUT_WAIT = 14  # no ready and no bored: wait out the await timeout
SENSOR_SILENCE_WAIT = 14  # incomplete triple: wait out the sensing timeout
ROBOT_RETRACT_WAIT = 11  # covers a late decision plus release and retract


def vocabulary() -> tuple[Belief, ...]:
    out: list[Belief] = []
    for k in LEGS:
        for s in SENSORS:
            out += [Belief(s, (k, "ok")), Belief(s, (k, "nok"))]
    out += [Belief("ready", (k,)) for k in LEGS]
    out += [Belief("bored", (k,)) for k in LEGS]
    out += [Belief("adjust"), Belief("repeat")]
    out += [Belief("request", (k,)) for k in LEGS]
    return tuple(out)


SYSTEM_NAMES = {
    "request", "gaze", "pressure", "location", "ready", "bored", "adjust", "repeat",
    "succ", "signal", "wait", "next", "measure", "mute", "adjusting", "voice", "picked",
    "gpl", "retract",
}


def _activate(n: str, repeat: bool) -> list[str]:
    steps = ["emit activate", "emit activate"] if repeat else ["emit activate"]
    return steps + [f"send robot voice({n})"]


@lru_cache(maxsize=1)
def programs() -> tuple[AgentProgram, ...]:
    b = ProgramBuilder(set(SYSTEM_NAMES))
    for name in ("verifier", "human", "sensors", "robot"):
        b.agent(name, verifier=name == "verifier")
    for ag in ("human", "sensors", "robot"):
        for n in range(1, 21):
            b.belief(ag, Belief("succ", (n, n - 1)))

    # verifier: forward each injected belief to the agent that owns it
    for s in SENSORS:
        b.plan("verifier", f"{s}(K,V)", "true", f"send sensors {s}(K,V)")
    b.plan("verifier", "adjust", "true", "send sensors adjust")
    for name in ("ready(K)", "bored(K)", "request(K)"):
        b.plan("verifier", name, "true", f"send human {name}")
    b.plan("verifier", "repeat", "true", "send human repeat")

    # human
    b.plan("human", "request(1)", "repeat", *_activate("1", True))
    b.plan("human", "request(1)", "true", *_activate("1", False))
    b.plan("human", "signal(K)", "bored(K)", "emit bored")
    b.plan("human", "signal(K)", "ready(K)", "emit ready", "send sensors measure(K)")
    b.plan("human", "signal(K)", "true", f"self wait(K,{HUMAN_TIMEOUT_WAIT})")
    b.plan("human", "wait(K,0)", "true", "self next(K)")
    b.plan("human", "wait(K,N)", "succ(N,M)", "self wait(K,M)")
    b.plan("human", "next(K)", "succ(N,K) & request(N) & repeat", *_activate("N", True))
    b.plan("human", "next(K)", "succ(N,K) & request(N)", *_activate("N", False))
    b.plan("human", "next(K)", "succ(N,K) & bored(N)", "emit bored")

    # sensors
    full = "gaze(K,G) & pressure(K,P) & location(K,L)"
    b.plan(
        "sensors", "measure(K)", "gaze(K,ok) & pressure(K,ok) & location(K,ok)",
        "emit gpl(ok,ok,ok)", "send robot gpl(K,ok,ok,ok)",
    )
    b.plan("sensors", "measure(K)", f"adjust & {full}", "emit gpl(G,P,L)", "send robot gpl(K,G,P,L)", "self adjusting(K)")
    b.plan("sensors", "measure(K)", full, "emit gpl(G,P,L)", "send robot gpl(K,G,P,L)")
    b.plan("sensors", "measure(K)", "true", f"self mute(K,{SENSOR_SILENCE_WAIT})")
    b.plan("sensors", "adjusting(K)", "true", "emit gpl(ok,ok,ok)")
    b.plan("sensors", "mute(K,0)", "true", "send human next(K)")
    b.plan("sensors", "mute(K,N)", "succ(N,M)", "self mute(K,M)")

    # robot
    b.plan("robot", "voice(K)", "true", "self picked(K)")
    b.plan("robot", "picked(K)", "true", "send human signal(K)")
    b.plan("robot", "gpl(K,ok,ok,ok)", "true", "emit release(K)", f"self retract(K,{ROBOT_RETRACT_WAIT})")
    b.plan("robot", "gpl(K,G,P,L)", "true", "emit discard(K)", f"self retract(K,{ROBOT_RETRACT_WAIT})")
    b.plan("robot", "retract(K,0)", "true", "send human next(K)")
    b.plan("robot", "retract(K,N)", "succ(N,M)", "self retract(K,M)")
    return tuple(b.build())


def map_action(agent: str, action: Belief) -> tuple[str, str, tuple] | None:
    """Environment action -> (actor, label, symbolic params); robot actions are dropped."""
    if agent == "robot":
        return None
    if action.name == "gpl":
        g, p, l = action.args
        return ("sensors", "gpl", (("gaze", g), ("pressure", p), ("distance", l)))
    return (agent, action.name, ())


@lru_cache(maxsize=1)
def model() -> BdiModel:
    return BdiModel("handover", programs(), vocabulary(), ("human", "sensors"), map_action)
