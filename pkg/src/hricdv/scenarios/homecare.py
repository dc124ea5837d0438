"""Home-care assistant controller: command queue plus five motion FSMs.

Each FSM is a linear chain of motion and manipulation states.  After a task
the recharge FSM brings the robot back to its station.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .common import ActionSpec, ParamRange, ScenarioConfig, SimulationLog

WAYPOINTS = {
    "recharge": (0, 0),
    "fridge": (500, 0),
    "table": (300, 300),
    "sink": (0, 350),
    "door": (600, 450),
}

# a step is either ("go", waypoint) or (name, duration in ticks)
FSMS: dict[str, tuple[tuple[str, str | int], ...]] = {
    "feed": (("go", "fridge"), ("open_fridge", 30), ("grasp_food", 30), ("go", "table"), ("place_food", 30)),
    "clean": (
        ("go", "table"), ("open_gripper", 10), ("grasp_dishes", 30),
        ("go", "sink"), ("place_dishes", 30), ("release_gripper", 10),
    ),
    "fridge": (("go", "fridge"), ("check_door", 40), ("close_door", 30)),
    "sink": (("go", "sink"), ("check_taps", 40), ("close_taps", 30)),
    "recharge": (("go", "recharge"), ("dock", 20)),
}
TASKS = ("feed", "clean", "fridge", "sink")
COMMANDS = TASKS + ("invalid",)

CRUISE_SPEED = 20.0  # cm/s
FAST_SPEED = 30.0  # cm/s, used on long segments when the speed cap is missing
LONG_SEGMENT_CM = 450.0
DOG_STAY = 30  # ticks the dog lingers after an approach
COLLIDE_CM = 5.0

INVALID_WORDS = ("dance", "sing", "jump", "wave", "hello", "music", "window", "lights")

ACTIONS = {
    **{("human", c): ActionSpec("human", c) for c in TASKS},
    ("human", "invalid"): ActionSpec("human", "invalid", {"word": {"invalid": ParamRange(choices=INVALID_WORDS)}}),
    ("dog", "approach"): ActionSpec(
        "dog", "approach",
        {"distance": {
            "collide": ParamRange(0.0, 4.9, 1),
            "near": ParamRange(5.0, 19.9, 1),
            "far": ParamRange(20.0, 100.0, 1),
        }},
    ),
}


def state_names(fsm: str) -> tuple[str, ...]:
    return tuple(f"{fsm}.{'go_' + arg if kind == 'go' else kind}" for kind, arg in FSMS[fsm])


def fsm_transitions(fsm: str) -> tuple[tuple[str, str], ...]:
    names = state_names(fsm)
    return tuple(zip(names, names[1:]))


BRANCHES = (
    "command:valid",
    "command:invalid",
    "command:dropped-fallen",
    "queue:dispatch",
    "queue:wait",
    "motion:long-segment",
    "motion:short-segment",
    "laser:halt",
    "laser:clear",
    "dog:stationary-robot",
    "collision:fall",
    "collision:stop",
    "idle:recharge",
)

COVER_POINTS = (
    tuple(f"state:{s}" for f in FSMS for s in state_names(f))
    + tuple(f"edge:{a}->{b}" for f in FSMS for a, b in fsm_transitions(f))
    + tuple(f"branch:{b}" for b in BRANCHES)
)


def distance(a: str, b: str) -> float:
    (x1, y1), (x2, y2) = WAYPOINTS[a], WAYPOINTS[b]
    return math.hypot(x2 - x1, y2 - y1)


def segment_speed(dist: float, capped: bool) -> float:
    if not capped and dist > LONG_SEGMENT_CM:
        return FAST_SPEED
    return CRUISE_SPEED


def segment_ticks(dist: float, speed: float) -> int:
    return max(1, math.ceil(dist / (speed / 10.0)))


def task_ticks(task: str, capped: bool = True, start: str = "recharge") -> int:
    """Undisturbed duration of ``task`` followed by the return to recharge."""
    total = 0
    here = start
    for fsm in (task, "recharge"):
        for kind, arg in FSMS[fsm]:
            if kind == "go":
                d = distance(here, arg)
                total += segment_ticks(d, segment_speed(d, capped))
                here = arg
            else:
                total += arg
    return total


@dataclass
class HomecareController:
    config: ScenarioConfig
    log: SimulationLog
    location: str = "recharge"
    queue: list[str] = field(default_factory=list)
    task: str | None = None  # command being served; "recharge" while returning
    fsm: str | None = None
    step_index: int = 0
    deadline: int | None = None
    moving: bool = False
    target: str | None = None
    speed: float = 0.0
    halted_until: int | None = None
    dog_until: int = -1
    dog_distance: float = math.inf
    fallen: bool = False
    holding_food: bool = False
    completed: dict[str, int] = field(default_factory=lambda: {c: 0 for c in TASKS})
    ignored: int = 0
    origin: str = "recharge"
    halt_start: int = 0
    covered: set[str] = field(default_factory=set)

    def cover(self, tick: int, point: str) -> None:
        if point not in self.covered:
            self.covered.add(point)
            self.log.add(tick, "robot", "cover", point=point)

    @property
    def state(self) -> str:
        if self.fallen:
            return "fallen"
        if self.fsm is None:
            return "docked"
        return state_names(self.fsm)[self.step_index]

    def observables(self) -> dict:
        return {
            **{f"n{c}": n for c, n in self.completed.items()},
            "ninvalid": self.ignored, "food": int(self.holding_food), "fallen": int(self.fallen),
        }

    def start(self, tick: int = 0) -> None:
        self.log.add(tick, "robot", "start", base_speed_limit=self.config.base_speed_limit)

    @property
    def busy(self) -> bool:
        return self.fsm is not None

    # -- timers ------------------------------------------------------------------

    def next_deadline(self) -> int | None:
        if self.fallen:
            return None
        if self.halted_until is not None:
            return self.halted_until
        return self.deadline

    def fire_timers(self, tick: int) -> None:
        while not self.fallen:
            if self.halted_until is not None:
                if tick < self.halted_until:
                    return
                self._resume(self.halted_until)
                continue
            if self.deadline is None or tick < self.deadline:
                return
            self._advance(self.deadline)

    def _resume(self, tick: int) -> None:
        paused = tick - self.halt_start
        self.halted_until = None
        self.deadline += paused
        self.log.add(tick, "robot", "resume", target=self.target)
        self.log.add(tick, "robot", "moving", origin=self.origin, to=self.target, speed=self.speed)

    def _advance(self, tick: int) -> None:
        """Complete the current FSM state and enter the next one."""
        kind, arg = FSMS[self.fsm][self.step_index]
        if kind == "go":
            self.moving = False
            self.location = arg
            self.log.add(tick, "robot", "stopped", location=arg, reason="arrive")
        elif kind == "grasp_food":
            self.holding_food = True
            self.log.add(tick, "robot", "food", action="got")
        elif kind == "place_food":
            self.holding_food = False
            self.log.add(tick, "robot", "food", action="placed")
        names = state_names(self.fsm)
        if self.step_index + 1 < len(names):
            self.cover(tick, f"edge:{names[self.step_index]}->{names[self.step_index + 1]}")
            self.step_index += 1
            self._enter(tick)
            return
        if self.fsm == "recharge":
            self.fsm = None
            self.task = None
            self.deadline = None
            self._dispatch(tick)
            return
        self.completed[self.fsm] += 1
        self.log.add(tick, "robot", "complete", command=self.fsm, **self.observables())
        self._start_fsm(tick, "recharge")

    def _enter(self, tick: int) -> None:
        name = state_names(self.fsm)[self.step_index]
        self.cover(tick, f"state:{name}")
        self.log.add(tick, "robot", "enter", state=name, **self.observables())
        kind, arg = FSMS[self.fsm][self.step_index]
        if kind != "go":
            self.deadline = tick + arg
            return
        d = distance(self.location, arg)
        self.speed = segment_speed(d, capped=not self.config.fault("no-speed-cap"))
        self.cover(tick, "branch:motion:long-segment" if d > LONG_SEGMENT_CM else "branch:motion:short-segment")
        self.deadline = tick + segment_ticks(d, self.speed)
        self.moving = True
        self.target = arg
        self.origin = self.location
        self.location = f"{self.location}>{arg}"
        self.log.add(tick, "robot", "moving", origin=self.origin, to=arg, speed=self.speed)
        if tick < self.dog_until and self.dog_distance < self.config.proximity_stop:
            self._halt(tick, self.dog_distance, self.dog_until)

    def _start_fsm(self, tick: int, fsm: str) -> None:
        self.fsm = fsm
        self.step_index = 0
        self._enter(tick)

    def _dispatch(self, tick: int) -> None:
        if self.queue:
            self.cover(tick, "branch:queue:dispatch")
            self.task = self.queue.pop(0)
            self._start_fsm(tick, self.task)
        else:
            self.cover(tick, "branch:idle:recharge")
            self.log.add(tick, "robot", "idle", location=self.location)

    # -- inputs ------------------------------------------------------------------

    def consume(self, tick: int, action) -> None:
        if action.actor == "dog":
            self._on_dog(tick, action.param("distance"))
            return
        command = action.label
        if command == "invalid":
            self.cover(tick, "branch:command:invalid")
            self.ignored += 1
            self.log.add(tick, "human", "command", command="invalid", word=action.param("word"), accepted=False)
            if not self.busy and not self.fallen:
                self.log.add(tick, "robot", "idle", location=self.location)
            return
        if self.fallen:
            self.cover(tick, "branch:command:dropped-fallen")
            self.log.add(tick, "human", "command", command=command, accepted=False)
            return
        self.cover(tick, "branch:command:valid")
        self.log.add(tick, "human", "command", command=command, accepted=True)
        self.queue.append(command)
        if self.busy:
            self.cover(tick, "branch:queue:wait")
        else:
            self._dispatch(tick)

    def _on_dog(self, tick: int, dist: float) -> None:
        self.log.add(tick, "dog", "dog", distance=dist)
        if dist >= self.config.proximity_stop:
            self.cover(tick, "branch:laser:clear")
            return
        self.dog_until = max(self.dog_until, tick + DOG_STAY)
        self.dog_distance = dist
        if self.fallen:
            return
        if not self.moving:
            self.cover(tick, "branch:dog:stationary-robot")
            return
        if self.halted_until is not None:
            self._halt(tick, dist, tick + DOG_STAY)
            return
        if dist < COLLIDE_CM:
            self.log.add(tick, "robot", "collision", distance=dist, location=self.location)
            if self.config.fault("dog-collision-fall"):
                self._fall(tick)
                return
            self.cover(tick, "branch:collision:stop")
        self._halt(tick, dist, tick + DOG_STAY)

    def _halt(self, tick: int, dist: float, until: int) -> None:
        if self.halted_until is not None:
            self.halted_until = max(self.halted_until, until)
            return
        self.cover(tick, "branch:laser:halt")
        self.halted_until = until
        self.halt_start = tick
        self.log.add(tick, "robot", "halt", distance=dist)
        self.log.add(tick, "robot", "stopped", location=self.location, reason="halt")

    def _fall(self, tick: int) -> None:
        self.cover(tick, "branch:collision:fall")
        self.fallen = True
        self.moving = False
        self.deadline = None
        self.halted_until = None
        self.queue.clear()
        self.log.add(tick, "robot", "fall", location=self.location, task=self.task)
        self.log.add(tick, "robot", "enter", state="fallen", **self.observables())
        self.log.add(tick, "robot", "stopped", location=self.location, reason="fall")
        self.log.add(tick, "robot", "idle", location=self.location)

    def quiescent(self) -> bool:
        return not self.busy and not self.fallen and self.halted_until is None


def homecare_step(controller: HomecareController, inputs, tick: int):
    """Advance ``controller`` to ``tick`` and feed it ``inputs`` (in place)."""
    mark = len(controller.log.events)
    controller.fire_timers(tick)
    for a in inputs:
        controller.consume(tick, a)
    return controller, controller.log.events[mark:]
