"""Timed-automata model of the handover protocol and its property suite.

The robot automaton mirrors the controller's states and timers (one clock,
one tick per unit delay).  The human and the sensors are unconstrained
environment automata: any voice command or sensor triple may be offered at
any time, and the robot only synchronizes where the controller would consume
the input.  Inputs arriving exactly when a timer expires lose to the timer,
as in the simulator.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product

from ..scenarios import handover as H
from ..ta_checker import Query, TaNetwork, parse_network, parse_query

ENVIRONMENT = ("human", "sensors")


def _robot() -> str:
    d = {
        "idle": H.IDLE_TIMEOUT, "pick": H.PICK, "hold_out": H.HOLD_OUT, "signal": H.SIGNAL,
        "await_ready": H.WAIT_TIMEOUT, "sense": H.WAIT_TIMEOUT, "decide": H.DECISION_LATENCY,
        "release": H.RELEASE, "discard": H.DISCARD, "retract": H.RETRACT,
        "timeout": H.TIMEOUT_RECOVERY, "aborted": H.ABORT,
    }
    lines = ["automaton robot", "  loc init inv x <= 0"]
    lines += [f"  loc {s} inv x <= {d[s]}" for s in H.STATES if s in d]
    lines += ["  loc done", "  init init"]
    e = lines.append
    m = H.MAX_LEGS
    e("  edge init -> idle {x = 0}")
    e(f"  edge idle -> pick [x < {d['idle']} && legs < {m}] {{x = 0, legs = legs + 1, exit = 0}} ?activate")
    e(f"  edge idle -> timeout [x >= {d['idle']}] {{x = 0, idle_to = 1, exit = 3}}")
    e(f"  edge idle -> aborted [x < {d['idle']}] {{x = 0, exit = 3}} ?bored")
    e(f"  edge pick -> hold_out [x >= {d['pick']}] {{x = 0}}")
    e(f"  edge hold_out -> signal [x >= {d['hold_out']}] {{x = 0}}")
    e(f"  edge signal -> await_ready [x >= {d['signal']}] {{x = 0}}")
    w = d["await_ready"]
    e(f"  edge await_ready -> sense [x < {w}] {{x = 0}} ?ready")
    e(f"  edge await_ready -> timeout [x >= {w}] {{x = 0, timeouts = timeouts + 1, exit = 1}}")
    e(f"  edge await_ready -> aborted [x < {w}] {{x = 0, exit = 1}} ?bored")
    e(f"  edge sense -> decide [x < {w}] {{x = 0}} ?gpl")
    e(f"  edge sense -> timeout [x >= {w}] {{x = 0, timeouts = timeouts + 1, exit = 2}}")
    e(f"  edge sense -> aborted [x < {w}] {{x = 0, exit = 2}} ?bored")
    dl = d["decide"]
    e(f"  edge decide -> release [x >= {dl} && g == 1 && p == 1 && l == 1] {{x = 0, released = released + 1}}")
    for v in ("g", "p", "l"):
        e(f"  edge decide -> discard [x >= {dl} && {v} == 0] {{x = 0, discarded = discarded + 1}}")
    for s in ("release", "discard"):
        e(f"  edge {s} -> retract [x >= {d[s]}] {{x = 0, g = 0, p = 0, l = 0}}")
    r = d["retract"]
    e(f"  edge retract -> done [x >= {r} && legs >= {m}]")
    e(f"  edge retract -> idle [x >= {r} && legs < {m}] {{x = 0}}")
    t = d["timeout"]
    e(f"  edge timeout -> done [x >= {t} && (idle_to == 1 || legs >= {m})]")
    e(f"  edge timeout -> idle [x >= {t} && idle_to == 0 && legs < {m}] {{x = 0}}")
    e(f"  edge aborted -> done [x >= {d['aborted']}]")
    e("end")
    return "\n".join(lines)


def network_text() -> str:
    m = H.MAX_LEGS
    head = [
        f"clock x {H.IDLE_TIMEOUT + 1}",
        f"var legs 0 {m}", f"var released 0 {m}", f"var discarded 0 {m}", f"var timeouts 0 {m}",
        "var g 0 1", "var p 0 1", "var l 0 1", "var exit 0 3", "var idle_to 0 1",
        "chan activate ready bored gpl",
        "automaton human",
        "  loc h",
        "  init h",
        "  edge h -> h !activate",
        "  edge h -> h !ready",
        "  edge h -> h !bored",
        "end",
        "automaton sensors",
        "  loc s",
        "  init s",
    ]
    head += [f"  edge s -> s {{g = {a}, p = {b}, l = {c}}} !gpl" for a, b, c in product((1, 0), repeat=3)]
    head.append("end")
    return "\n".join(head) + "\n" + _robot() + "\n"


@lru_cache(maxsize=1)
def network() -> TaNetwork:
    return parse_network(network_text())


def _pairs(n: int = H.MAX_LEGS):
    return [(a, b) for a in range(1, n) for b in range(1, n) if a + b <= n]


def query_texts() -> list[str]:
    """The handover property suite: sensor combinations, 1 to 4 leg requests,
    boredom and timeouts, plus outcome mixes across legs."""
    m = H.MAX_LEGS
    qs: list[str] = []
    for k in range(1, m + 1):
        for g, p, l in product((1, 0), repeat=3):
            qs.append(f"E<> robot.decide && legs == {k} && g == {g} && p == {p} && l == {l}")
    qs += [f"E<> robot.release && released == {k}" for k in range(1, m + 1)]
    qs += [f"E<> robot.discard && discarded == {k}" for k in range(1, m + 1)]
    for code in (1, 2):
        qs += [f"E<> robot.timeout && legs == {k} && exit == {code}" for k in range(1, m + 1)]
    for code in (1, 2):
        qs += [f"E<> robot.aborted && legs == {k} && exit == {code}" for k in range(1, m + 1)]
    qs += [f"E<> robot.aborted && legs == {k} && exit == 3" for k in range(m)]
    qs += [f"E<> robot.timeout && idle_to == 1 && legs == {k}" for k in range(m)]
    ends = "(robot.retract || robot.timeout)"
    qs += [f"E<> {ends} && released == {a} && discarded == {b}" for a, b in _pairs()]
    qs += [f"E<> {ends} && released == {a} && timeouts == {b}" for a, b in _pairs()]
    qs += [f"E<> {ends} && discarded == {a} && timeouts == {b}" for a, b in _pairs()]
    qs += [f"E<> robot.done && released == {k}" for k in range(m + 1)]
    for r, d, t in ((1, 1, 1), (2, 1, 1), (1, 2, 1), (1, 1, 2)):
        qs.append(f"E<> {ends} && released == {r} && discarded == {d} && timeouts == {t}")
    return qs


def queries() -> list[Query]:
    net = network()
    return [parse_query(q, net) for q in query_texts()]


def _sym(bit: int) -> str:
    return "ok" if bit else "nok"


def project(automaton: str, label: str, valuation: dict) -> tuple | None:
    """Symbolic parameters of an environment sync step."""
    if automaton == "sensors" and label == "gpl":
        return (("gaze", _sym(valuation["g"])), ("pressure", _sym(valuation["p"])), ("distance", _sym(valuation["l"])))
    return ()
