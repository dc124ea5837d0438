"""Timed-automata model of the home-care assistant and its property suite.

The robot automaton walks the same motion and manipulation chains as the
controller, with the speed-capped travel times.  The human gives a command
whenever the robot is docked (at most three in total); the dog may bump into
the robot while it drives, which makes it fall over.  Location names are the
controller's state names with the dot replaced by an underscore.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations

from ..scenarios import homecare as HC
from ..ta_checker import Query, TaNetwork, parse_network, parse_query

ENVIRONMENT = ("human", "dog")
MAX_COMMANDS = 3


def _steps(fsm: str, start: str) -> tuple[list[tuple[str, int, bool]], str]:
    """(location, duration, is_motion) for each state of ``fsm`` starting at ``start``."""
    out = []
    here = start
    for (kind, arg), name in zip(HC.FSMS[fsm], HC.state_names(fsm)):
        loc = name.replace(".", "_")
        if kind == "go":
            d = HC.distance(here, arg)
            out.append((loc, HC.segment_ticks(d, HC.CRUISE_SPEED), True))
            here = arg
        else:
            out.append((loc, arg, False))
    return out, here


def _robot() -> tuple[str, int]:
    lines = ["automaton robot", "  loc docked", "  loc fallen"]
    edges = []
    invs: dict[str, list[str]] = {}
    moving: set[str] = set()
    longest = 0
    ret_go, ret_dock = (n.replace(".", "_") for n in HC.state_names("recharge"))
    for i, task in enumerate(HC.TASKS, start=1):
        steps, end = _steps(task, "recharge")
        (_, back, _), (_, dock, _) = _steps("recharge", end)[0]
        longest = max(longest, back, *(d for _, d, _ in steps))
        edges.append(f"docked -> {steps[0][0]} {{x = 0}} ?{task}")
        for (loc, dur, mv), nxt in zip(steps, steps[1:] + [None]):
            invs.setdefault(loc, []).append(f"x <= {dur}")
            if mv:
                moving.add(loc)
            upd = ["x = 0"]
            if loc == "feed_grasp_food":
                upd.append("food = 1")
            if loc == "feed_place_food":
                upd.append("food = 0")
            if nxt is None:
                upd += [f"n{task} = n{task} + 1", f"origin = {i}"]
                edges.append(f"{loc} -> {ret_go} [x >= {dur}] {{{', '.join(upd)}}}")
            else:
                edges.append(f"{loc} -> {nxt[0]} [x >= {dur}] {{{', '.join(upd)}}}")
        invs.setdefault(ret_go, []).append(f"(origin != {i} || x <= {back})")
        edges.append(f"{ret_go} -> {ret_dock} [origin == {i} && x >= {back}] {{x = 0}}")
    moving.add(ret_go)
    edges.append(f"{ret_dock} -> docked [x >= {dock}] {{origin = 0}}")
    invs[ret_dock] = [f"x <= {dock}"]
    for loc, inv in invs.items():
        lines.append(f"  loc {loc} inv {' && '.join(inv)}")
    lines.append("  init docked")
    edges.append("docked -> docked {ninvalid = ninvalid + 1} ?invalid")
    edges += [f"{loc} -> fallen ?approach" for loc in sorted(moving)]
    lines += [f"  edge {e}" for e in edges]
    lines.append("end")
    return "\n".join(lines), longest


def network_text() -> str:
    robot, longest = _robot()
    m = MAX_COMMANDS
    head = [f"clock x {longest + 1}"]
    head += [f"var n{t} 0 {m}" for t in HC.TASKS]
    head += [f"var ninvalid 0 {m}", f"var total 0 {m}", "var food 0 1", f"var origin 0 {len(HC.TASKS)}", "var hit 0 1"]
    head.append("chan " + " ".join(HC.COMMANDS) + " approach")
    head += ["automaton human", "  loc h", "  init h"]
    head += [f"  edge h -> h [total < {m}] {{total = total + 1}} !{c}" for c in HC.COMMANDS]
    head += ["end", "automaton dog", "  loc d", "  init d", "  edge d -> d [hit == 0] {hit = 1} !approach", "end"]
    return "\n".join(head) + "\n" + robot + "\n"


@lru_cache(maxsize=1)
def network() -> TaNetwork:
    return parse_network(network_text())


def query_texts() -> list[str]:
    """Single commands, pairs and triples of commands, and falls with and without food."""
    back = "robot." + HC.state_names("recharge")[0].replace(".", "_")
    qs = [f"E<> {back} && n{t} == 1" for t in HC.TASKS]
    qs.append("E<> robot.feed_go_fridge && ninvalid == 1")
    for a, b in combinations(HC.TASKS, 2):
        qs.append(f"E<> {back} && n{a} == 1 && n{b} == 1")
    qs += [f"E<> {back} && n{t} == 1 && ninvalid == 1" for t in HC.TASKS]
    for trio in combinations(HC.TASKS, 3):
        qs.append(f"E<> {back} && " + " && ".join(f"n{t} == 1" for t in trio))
    qs.append(f"E<> {back} && nfeed == 2 && nclean == 1")
    qs.append(f"E<> {back} && nclean == 2 && nfeed == 1")
    qs.append("E<> robot.fallen")
    qs.append("E<> robot.fallen && food == 1")
    return qs


def queries() -> list[Query]:
    net = network()
    return [parse_query(q, net) for q in query_texts()]


def project(automaton: str, label: str, valuation: dict) -> tuple | None:
    """Symbolic parameters of an environment sync step."""
    if automaton == "dog":
        return (("distance", "collide"),)
    if label == "invalid":
        return (("word", "invalid"),)
    return ()
