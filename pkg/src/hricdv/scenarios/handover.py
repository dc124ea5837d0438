"""Table-leg handover controller: a 14-state / 22-transition FSM.

The controller is driven tick by tick.  Within a tick, timer expiries are
handled first and then the environment inputs of that tick, in test order.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .common import ActionSpec, ParamRange, ScenarioConfig, SimulationLog

# durations in ticks
IDLE_TIMEOUT = 600
PICK = 10
HOLD_OUT = 5
SIGNAL = 2
WAIT_TIMEOUT = 150
DECISION_LATENCY = 5
LATE_EXTRA = (5, 40)
RELEASE = 10
DISCARD = 10
RETRACT = 20
TIMEOUT_RECOVERY = 10
ABORT = 10

MAX_LEGS = 4
EXIT_CODES = {"await_ready": 1, "sense": 2, "idle": 3}
TOO_CLOSE_CM = 5.0
JOINT_SPEED = 0.2  # rad/s, commanded for every arm motion
FAR_HAND_CM = 100.0

STATES = (
    "init", "idle", "pick", "hold_out", "signal", "await_ready", "sense",
    "decide", "release", "discard", "retract", "timeout", "aborted", "done",
)

TRANSITIONS = (
    ("init", "idle"),
    ("idle", "pick"),
    ("idle", "timeout"),
    ("idle", "aborted"),
    ("pick", "hold_out"),
    ("hold_out", "signal"),
    ("signal", "await_ready"),
    ("await_ready", "sense"),
    ("await_ready", "timeout"),
    ("await_ready", "aborted"),
    ("sense", "decide"),
    ("sense", "timeout"),
    ("sense", "aborted"),
    ("decide", "release"),
    ("decide", "discard"),
    ("release", "retract"),
    ("discard", "retract"),
    ("retract", "idle"),
    ("retract", "done"),
    ("timeout", "idle"),
    ("timeout", "done"),
    ("aborted", "done"),
)

BRANCHES = (
    "voice:activate-ignored",
    "voice:ready-ignored",
    "voice:bored-ignored",
    "sensor:stale-reading",
    "decide:on-time",
    "decide:late",
    "decide:reread",
    "retract:gripper-close",
    "retract:gripper-skip",
    "human:patience-expired",
)

COVER_POINTS = (
    tuple(f"state:{s}" for s in STATES)
    + tuple(f"edge:{a}->{b}" for a, b in TRANSITIONS)
    + tuple(f"branch:{b}" for b in BRANCHES)
)

_TRANSITION_SET = frozenset(TRANSITIONS)

GAZE = {"ok": ParamRange(0.0, 15.0, 1), "nok": ParamRange(15.1, 90.0, 1)}  # degrees off the leg
PRESSURE = {"ok": ParamRange(0.5, 1.0, 2), "nok": ParamRange(0.0, 0.49, 2)}
DISTANCE = {"ok": ParamRange(0.0, 15.0, 1), "nok": ParamRange(15.1, 100.0, 1)}  # hand to leg, cm

ACTIONS = {
    ("human", "activate"): ActionSpec("human", "activate"),
    ("human", "ready"): ActionSpec("human", "ready"),
    ("human", "bored"): ActionSpec("human", "bored"),
    ("sensors", "gpl"): ActionSpec(
        "sensors", "gpl", {"gaze": GAZE, "pressure": PRESSURE, "distance": DISTANCE}
    ),
}


def classify_triple(gaze: float, pressure: float, distance: float) -> tuple[int, int, int]:
    """Classify sensor magnitudes into (g, p, l) with 1 meaning 'human ready'."""
    return (
        int(GAZE["ok"].contains(gaze)),
        int(PRESSURE["ok"].contains(pressure)),
        int(DISTANCE["ok"].contains(distance)),
    )


@dataclass
class HandoverController:
    config: ScenarioConfig
    log: SimulationLog
    rng: random.Random
    state: str = "init"
    entered: int = 0
    deadline: int | None = 0
    legs: int = 0
    released: int = 0
    discarded: int = 0
    timeouts: int = 0
    g: int = 0
    p: int = 0
    l: int = 0
    idle_timed_out: bool = False
    exit: int = 0  # how the current leg was left abnormally: 1 await_ready, 2 sense, 3 idle
    latest: tuple[float, float, float] | None = None
    latest_tick: int = -1
    sensed: tuple[int, int, int] | None = None
    sensed_tick: int = -1
    hand_distance: float = FAR_HAND_CM
    came_from: str = ""
    late: bool = False
    covered: set[str] = field(default_factory=set)

    # -- bookkeeping -------------------------------------------------------

    def cover(self, tick: int, point: str) -> None:
        if point not in self.covered:
            self.covered.add(point)
            self.log.add(tick, "robot", "cover", point=point)

    def observables(self) -> dict:
        return {
            "legs": self.legs, "released": self.released, "discarded": self.discarded,
            "timeouts": self.timeouts, "g": self.g, "p": self.p, "l": self.l,
            "exit": self.exit, "idle_to": int(self.idle_timed_out),
        }

    def start(self, tick: int = 0) -> None:
        self.log.add(tick, "robot", "start", joint_speed_limit=self.config.joint_speed_limit)
        self.cover(tick, "state:init")
        self.log.add(tick, "robot", "enter", state="init", **self.observables())

    def _goto(self, tick: int, target: str, duration: int | None) -> None:
        edge = (self.state, target)
        if edge not in _TRANSITION_SET:
            raise AssertionError(f"illegal handover transition {edge}")
        self.came_from = self.state
        self.state = target
        self.entered = tick
        self.deadline = None if duration is None else tick + duration
        self.cover(tick, f"edge:{edge[0]}->{edge[1]}")
        self.cover(tick, f"state:{target}")
        self.log.add(tick, "robot", "enter", state=target, **{"from": edge[0]}, **self.observables())

    def _arm(self, tick: int, motion: str) -> None:
        self.log.add(tick, "robot", "joint_speed", motion=motion, speed=JOINT_SPEED)

    def _holding_leg(self) -> bool:
        return self.state in ("await_ready", "sense")

    # -- timers --------------------------------------------------------------

    def next_deadline(self) -> int | None:
        if self.state == "await_ready":
            patience = self.entered + self.config.boredom_timeout
            return patience if self.deadline is None else min(self.deadline, patience)
        return self.deadline

    def fire_timers(self, tick: int) -> None:
        while self.deadline is not None and tick >= self.deadline:
            self._expire(self.deadline)

    def _expire(self, tick: int) -> None:
        s = self.state
        if s == "init":
            self._goto(tick, "idle", IDLE_TIMEOUT)
        elif s == "idle":
            self.idle_timed_out = True
            self.exit = EXIT_CODES["idle"]
            self.log.add(tick, "robot", "timeout", state="idle", leg=self.legs)
            self._goto(tick, "timeout", TIMEOUT_RECOVERY)
        elif s == "pick":
            self._arm(tick, "hold_out")
            self._goto(tick, "hold_out", HOLD_OUT)
        elif s == "hold_out":
            self.log.add(tick, "robot", "signal", leg=self.legs)
            self._goto(tick, "signal", SIGNAL)
        elif s == "signal":
            self._goto(tick, "await_ready", WAIT_TIMEOUT)
        elif s in ("await_ready", "sense"):
            self.timeouts += 1
            self.exit = EXIT_CODES[s]
            self.log.add(tick, "robot", "timeout", state=s, leg=self.legs)
            self.log.add(tick, "robot", "discard", leg=self.legs, reason="timeout")
            self._goto(tick, "timeout", TIMEOUT_RECOVERY)
        elif s == "decide":
            self._decide(tick)
        elif s in ("release", "discard"):
            self._arm(tick, "retract")
            self.g = self.p = self.l = 0
            self._goto(tick, "retract", RETRACT)
            if s == "release":
                self._close_gripper(tick)
        elif s == "retract":
            if self.legs >= MAX_LEGS:
                self._goto(tick, "done", None)
            else:
                self._goto(tick, "idle", IDLE_TIMEOUT)
        elif s == "timeout":
            if self.idle_timed_out or self.legs >= MAX_LEGS:
                self._goto(tick, "done", None)
            else:
                self._goto(tick, "idle", IDLE_TIMEOUT)
        elif s == "aborted":
            self._goto(tick, "done", None)
        else:  # pragma: no cover - done has no deadline
            self.deadline = None

    def _decide(self, tick: int) -> None:
        triple = self.sensed
        reread = False
        if self.late and self.latest is not None and self.latest_tick > self.sensed_tick:
            # a late decision re-reads the sensors instead of using the sensed triple
            triple = classify_triple(*self.latest)
            reread = True
            self.cover(tick, "branch:decide:reread")
        action = "release" if triple == (1, 1, 1) else "discard"
        self.log.add(
            tick, "robot", "decision", leg=self.legs, action=action,
            latency=tick - self.entered, reread=reread,
        )
        if action == "release":
            self.released += 1
            self._goto(tick, "release", RELEASE)
            self.log.add(tick, "robot", "release", leg=self.legs)
        else:
            self.discarded += 1
            self._goto(tick, "discard", DISCARD)
            self.log.add(tick, "robot", "discard", leg=self.legs, reason="decision")

    def _close_gripper(self, tick: int) -> None:
        near = self.hand_distance <= TOO_CLOSE_CM
        if near and not self.config.fault("gripper-near-hand"):
            self.cover(tick, "branch:retract:gripper-skip")
            self.log.add(tick, "robot", "gripper", action="hold-open", hand_distance=self.hand_distance)
            return
        self.cover(tick, "branch:retract:gripper-close")
        self.log.add(tick, "robot", "gripper", action="close", hand_distance=self.hand_distance)

    # -- inputs ----------------------------------------------------------------

    def consume(self, tick: int, action) -> None:
        key = (action.actor, action.label)
        if key == ("sensors", "gpl"):
            self._on_reading(tick, action)
            return
        command = action.label
        accepted = False
        if command == "activate":
            if self.state == "idle" and self.legs < MAX_LEGS:
                accepted = True
            else:
                self.cover(tick, "branch:voice:activate-ignored")
        elif command == "ready":
            if self.state == "await_ready":
                accepted = True
            else:
                self.cover(tick, "branch:voice:ready-ignored")
        elif command == "bored":
            if self.state in ("idle", "await_ready", "sense"):
                accepted = True
            else:
                self.cover(tick, "branch:voice:bored-ignored")
        self.log.add(tick, "human", "voice", command=command, accepted=accepted)
        if not accepted:
            return
        if command == "activate":
            self.legs += 1
            self.exit = 0
            self._arm(tick, "pick")
            self._goto(tick, "pick", PICK)
        elif command == "ready":
            self._goto(tick, "sense", WAIT_TIMEOUT)
        else:
            self._bored(tick)

    def _bored(self, tick: int) -> None:
        self.log.add(tick, "human", "bored", state=self.state, leg=self.legs)
        if self._holding_leg():
            self.log.add(tick, "robot", "discard", leg=self.legs, reason="bored")
        self.exit = EXIT_CODES[self.state]
        self._goto(tick, "aborted", ABORT)

    def _on_reading(self, tick: int, action) -> None:
        mags = (action.param("gaze"), action.param("pressure"), action.param("distance"))
        triple = classify_triple(*mags)
        self.latest = mags
        self.latest_tick = tick
        self.hand_distance = mags[2]
        fresh = self.state == "sense"
        self.log.add(
            tick, "sensors", "sensor", gaze=mags[0], pressure=mags[1], distance=mags[2],
            g=triple[0], p=triple[1], l=triple[2], consumed=fresh,
        )
        if not fresh:
            self.cover(tick, "branch:sensor:stale-reading")
            return
        self.sensed = triple
        self.sensed_tick = tick
        self.g, self.p, self.l = triple
        self.log.add(tick, "robot", "sensed", leg=self.legs, g=self.g, p=self.p, l=self.l)
        self.late = (
            self.config.fault("late-decision")
            and self.rng.random() < self.config.late_decision_probability
        )
        if self.late:
            latency = self.config.decision_threshold + self.rng.randint(*LATE_EXTRA)
            self.cover(tick, "branch:decide:late")
        else:
            latency = DECISION_LATENCY
            self.cover(tick, "branch:decide:on-time")
        self._goto(tick, "decide", latency)

    def check_patience(self, tick: int) -> None:
        """Human disengages when left holding out for longer than their patience."""
        if self.state == "await_ready" and tick - self.entered >= self.config.boredom_timeout:
            self.cover(tick, "branch:human:patience-expired")
            self._bored(tick)

    def quiescent(self) -> bool:
        return self.state == "done"


def handover_step(controller: HandoverController, inputs, tick: int):
    """Advance ``controller`` to ``tick`` and feed it ``inputs``.

    The controller is updated in place; returns it with the events it
    appended to its log during this step.
    """
    mark = len(controller.log.events)
    controller.fire_timers(tick)
    controller.check_patience(tick)
    for a in inputs:
        controller.consume(tick, a)
    return controller, controller.log.events[mark:]
