"""Discrete-time timed-automata networks and a reachability/safety checker.

Time advances in unit delays; every clock saturates at its declared bound,
which keeps the state graph finite.  An edge step either fires one internal
edge or pairs a ``!c`` sender with a ``?c`` receiver in another automaton
(sender updates first).  Invariants must hold after every step.

Network text format::

    clock x 11
    var n 0 3          # name, low, high, optional initial value
    chan go
    automaton a
      loc idle inv x <= 10
      loc busy
      init idle
      edge idle -> busy [x >= 2 && n < 3] {x = 0, n = n + 1} !go
    end

Queries are ``E<> pred`` or ``A[] pred`` where ``pred`` combines
``automaton.location`` tests, variable and clock comparisons with
``&&``, ``||``, ``not`` (or ``!``) and parentheses.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

DEFAULT_STATE_BUDGET = 5_000_000


class TaError(Exception):
    pass


class TaSyntaxError(TaError):
    def __init__(self, message: str, position: int | None = None, text: str = ""):
        self.position = position
        where = f" at position {position}" if position is not None else ""
        super().__init__(f"{message}{where}" + (f": {text!r}" if text else ""))


class UndeclaredError(TaError):
    pass


class TaModelError(TaError):
    """Ill-formed network or an assignment leaving a variable's domain."""


class BudgetExceeded(TaError):
    def __init__(self, budget: int):
        self.budget = budget
        super().__init__(f"state-space budget of {budget} states exceeded")


# -- expressions ----------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*(?:\.[A-Za-z_][A-Za-z0-9_]*)?)"
    r"|(?P<op>&&|\|\||==|!=|<=|>=|:=|[<>!()+\-=*,]))"
)

_CMP = ("==", "!=", "<=", ">=", "<", ">")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    pos = 0
    out = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            raise TaSyntaxError("unexpected character", pos, text)
        kind = m.lastgroup
        start = m.start(kind)
        out.append((kind, m.group(kind), start))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self) -> tuple[str, str, int] | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, value: str | None = None):
        tok = self.peek()
        if tok is None:
            raise TaSyntaxError("unexpected end of expression", len(self.text), self.text)
        if value is not None and tok[1] != value:
            raise TaSyntaxError(f"expected {value!r}", tok[2], self.text)
        self.i += 1
        return tok

    def at(self, *values: str) -> bool:
        tok = self.peek()
        return tok is not None and tok[0] != "num" and tok[1] in values

    def done(self) -> None:
        tok = self.peek()
        if tok is not None:
            raise TaSyntaxError(f"unexpected token {tok[1]!r}", tok[2], self.text)

    def expr(self):
        left = self.conj()
        while self.at("||", "or"):
            self.take()
            left = ("or", left, self.conj())
        return left

    def conj(self):
        left = self.neg()
        while self.at("&&", "and"):
            self.take()
            left = ("and", left, self.neg())
        return left

    def neg(self):
        if self.at("not", "!"):
            self.take()
            return ("not", self.neg())
        return self.cmp()

    def cmp(self):
        left = self.sum()
        if self.at(*_CMP):
            op = self.take()[1]
            return ("cmp", op, left, self.sum())
        return left

    def sum(self):
        left = self.prod()
        while self.at("+", "-"):
            op = self.take()[1]
            left = ("bin", op, left, self.prod())
        return left

    def prod(self):
        left = self.atom()
        while self.at("*"):
            self.take()
            left = ("bin", "*", left, self.atom())
        return left

    def atom(self):
        tok = self.take()
        kind, val, pos = tok
        if kind == "num":
            return ("int", int(val))
        if kind == "name":
            if val in ("true", "false"):
                return ("bool", val == "true")
            if val in ("not", "and", "or"):
                raise TaSyntaxError(f"unexpected keyword {val!r}", pos, self.text)
            if "." in val:
                a, l = val.split(".")
                return ("loc", a, l)
            return ("name", val)
        if val == "(":
            e = self.expr()
            self.take(")")
            return e
        if val == "-":
            return ("bin", "-", ("int", 0), self.atom())
        raise TaSyntaxError(f"unexpected token {val!r}", pos, self.text)


def parse_expr(text: str):
    """Parse a guard/predicate expression into a small tuple AST."""
    p = _Parser(text)
    if p.peek() is None:
        raise TaSyntaxError("empty expression", 0, text)
    e = p.expr()
    p.done()
    return e


def parse_updates(text: str) -> tuple[tuple[str, object], ...]:
    """Parse ``x = 0, n = n + 1`` (``:=`` also accepted)."""
    out = []
    for part in _split_top(text):
        m = re.match(r"^\s*([A-Za-z_]\w*)\s*:?=(?!=)\s*(.+)$", part)
        if not m:
            raise TaSyntaxError("bad update", None, part)
        out.append((m.group(1), parse_expr(m.group(2))))
    return tuple(out)


def _split_top(text: str) -> list[str]:
    parts, depth, cur = [], 0, ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append(cur)
            cur = ""
        else:
            cur += ch
    if cur.strip():
        parts.append(cur)
    return [p for p in parts if p.strip()]


def expr_str(e) -> str:
    tag = e[0]
    if tag == "int":
        return str(e[1])
    if tag == "bool":
        return "true" if e[1] else "false"
    if tag == "name":
        return e[1]
    if tag == "loc":
        return f"{e[1]}.{e[2]}"
    if tag == "not":
        return f"not ({expr_str(e[1])})"
    if tag in ("and", "or"):
        op = "&&" if tag == "and" else "||"
        return f"({expr_str(e[1])} {op} {expr_str(e[2])})"
    return f"{expr_str(e[2])} {e[1]} {expr_str(e[3])}" if tag == "cmp" else f"({expr_str(e[2])} {e[1]} {expr_str(e[3])})"


_OPS = {
    "==": lambda a, b: a == b, "!=": lambda a, b: a != b, "<=": lambda a, b: a <= b,
    ">=": lambda a, b: a >= b, "<": lambda a, b: a < b, ">": lambda a, b: a > b,
    "+": lambda a, b: a + b, "-": lambda a, b: a - b, "*": lambda a, b: a * b,
}


def evaluate(e, locations: dict[str, str], valuation: dict[str, int]):
    """Interpret an expression over named locations and values (no network needed)."""
    tag = e[0]
    if tag in ("int", "bool"):
        return e[1]
    if tag == "name":
        if e[1] not in valuation:
            raise UndeclaredError(f"no value for {e[1]!r}")
        return valuation[e[1]]
    if tag == "loc":
        return locations.get(e[1]) == e[2]
    if tag == "not":
        return not evaluate(e[1], locations, valuation)
    if tag == "and":
        return bool(evaluate(e[1], locations, valuation)) and bool(evaluate(e[2], locations, valuation))
    if tag == "or":
        return bool(evaluate(e[1], locations, valuation)) or bool(evaluate(e[2], locations, valuation))
    return _OPS[e[1]](evaluate(e[2], locations, valuation), evaluate(e[3], locations, valuation))


def _names(e, acc: set | None = None) -> set:
    acc = set() if acc is None else acc
    tag = e[0]
    if tag in ("name", "loc"):
        acc.add(e[1:] if tag == "loc" else e[1])
    elif tag == "not":
        _names(e[1], acc)
    elif tag in ("and", "or"):
        _names(e[1], acc)
        _names(e[2], acc)
    elif tag in ("cmp", "bin"):
        _names(e[2], acc)
        _names(e[3], acc)
    return acc


# -- network -------------------------------------------------------------------------


@dataclass(frozen=True)
class Edge:
    source: str
    target: str
    guard: object = None
    sync: tuple[str, str] | None = None  # (label, "!" | "?")
    updates: tuple[tuple[str, object], ...] = ()

    def __str__(self) -> str:
        s = f"{self.source} -> {self.target}"
        if self.guard is not None:
            s += f" [{expr_str(self.guard)}]"
        if self.updates:
            s += " {" + ", ".join(f"{n} = {expr_str(v)}" for n, v in self.updates) + "}"
        if self.sync:
            s += f" {self.sync[1]}{self.sync[0]}"
        return s


@dataclass(frozen=True)
class Automaton:
    name: str
    locations: tuple[str, ...]
    initial: str
    edges: tuple[Edge, ...] = ()
    invariants: tuple[tuple[str, object], ...] = ()

    def __post_init__(self) -> None:
        if self.initial not in self.locations:
            raise TaModelError(f"{self.name}: initial location {self.initial!r} undeclared")
        if len(set(self.locations)) != len(self.locations):
            raise TaModelError(f"{self.name}: duplicate locations")
        for e in self.edges:
            if e.source not in self.locations or e.target not in self.locations:
                raise TaModelError(f"{self.name}: edge {e} references an unknown location")
        for loc, _ in self.invariants:
            if loc not in self.locations:
                raise TaModelError(f"{self.name}: invariant on unknown location {loc!r}")

    def invariant(self, loc: str):
        for l, inv in self.invariants:
            if l == loc:
                return inv
        return None


@dataclass(frozen=True)
class Variable:
    name: str
    low: int
    high: int
    init: int = 0

    def __post_init__(self) -> None:
        if not self.low <= self.init <= self.high:
            raise TaModelError(f"variable {self.name}: initial value outside [{self.low}, {self.high}]")


class State(NamedTuple):
    locs: tuple[int, ...]
    vars: tuple[int, ...]
    clocks: tuple[int, ...]


@dataclass(frozen=True)
class Step:
    """Either a unit delay or one edge step (one edge, or a sender/receiver pair)."""

    kind: str  # "delay" | "edge"
    edges: tuple[tuple[int, int], ...] = ()
    label: str | None = None


DELAY = Step("delay")


@dataclass(frozen=True)
class TaNetwork:
    automata: tuple[Automaton, ...]
    clocks: tuple[tuple[str, int], ...] = ()
    channels: tuple[str, ...] = ()
    variables: tuple[Variable, ...] = ()
    _compiled: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self) -> None:
        names = [a.name for a in self.automata]
        if len(set(names)) != len(names):
            raise TaModelError("automaton names must be unique")
        decl = [c for c, _ in self.clocks] + [v.name for v in self.variables]
        if len(set(decl)) != len(decl):
            raise TaModelError("clock/variable names must be unique")
        for c, bound in self.clocks:
            if bound < 0:
                raise TaModelError(f"clock {c} has negative bound")
        for a in self.automata:
            for e in a.edges:
                if e.sync is not None:
                    if e.sync[0] not in self.channels:
                        raise UndeclaredError(f"{a.name}: undeclared channel {e.sync[0]!r}")
                    if e.sync[1] not in ("!", "?"):
                        raise TaModelError(f"{a.name}: bad sync direction {e.sync[1]!r}")
                if e.guard is not None:
                    self._check_names(e.guard, f"{a.name}: guard of {e}")
                for n, v in e.updates:
                    if n not in decl:
                        raise UndeclaredError(f"{a.name}: update of undeclared {n!r}")
                    self._check_names(v, f"{a.name}: update of {n}")
            for _, inv in a.invariants:
                self._check_names(inv, f"{a.name}: invariant")
        self._compile()

    # name resolution

    def automaton_index(self, name: str) -> int:
        for i, a in enumerate(self.automata):
            if a.name == name:
                return i
        raise UndeclaredError(f"undeclared automaton {name!r}")

    def _check_names(self, e, where: str) -> None:
        clocks = {c for c, _ in self.clocks}
        var_names = {v.name for v in self.variables}
        for n in _names(e):
            if isinstance(n, tuple):
                ai = self.automaton_index(n[0])
                if n[1] not in self.automata[ai].locations:
                    raise UndeclaredError(f"{where}: undeclared location {n[0]}.{n[1]}")
            elif n not in clocks and n not in var_names:
                raise UndeclaredError(f"{where}: undeclared identifier {n!r}")

    def _src(self, e) -> str:
        tag = e[0]
        if tag == "int":
            return str(e[1])
        if tag == "bool":
            return str(e[1])
        if tag == "name":
            for i, (c, _) in enumerate(self.clocks):
                if c == e[1]:
                    return f"C[{i}]"
            for i, v in enumerate(self.variables):
                if v.name == e[1]:
                    return f"V[{i}]"
            raise UndeclaredError(f"undeclared identifier {e[1]!r}")
        if tag == "loc":
            ai = self.automaton_index(e[1])
            locs = self.automata[ai].locations
            if e[2] not in locs:
                raise UndeclaredError(f"undeclared location {e[1]}.{e[2]}")
            return f"(L[{ai}] == {locs.index(e[2])})"
        if tag == "not":
            return f"(not {self._src(e[1])})"
        if tag in ("and", "or"):
            return f"({self._src(e[1])} {tag} {self._src(e[2])})"
        return f"({self._src(e[2])} {e[1]} {self._src(e[3])})"

    def compile_predicate(self, e):
        """Compile an expression AST to ``f(locs, vars, clocks) -> bool``."""
        return eval(f"lambda L, V, C: bool({self._src(e)})", {})  # noqa: S307 - generated from a parsed AST

    def _compile_updates(self, updates):
        if not updates:
            return None
        lines = ["def upd(V, C):", " V = list(V)", " C = list(C)"]
        checks = []
        for n, v in updates:
            target = self._src(("name", n))
            lines.append(f" {target} = {self._src(v)}")
            if target.startswith("V"):
                var = next(x for x in self.variables if x.name == n)
                checks.append((target, var.low, var.high, n))
            else:
                bound = next(b for c, b in self.clocks if c == n)
                checks.append((target, 0, bound, n))
        for target, lo, hi, n in checks:
            lines.append(f" if not {lo} <= {target} <= {hi}: raise E('{n} = ' + str({target}) + ' outside [{lo}, {hi}]')")
        lines.append(" return tuple(V), tuple(C)")
        env = {"E": TaModelError}
        exec("\n".join(lines), env)  # noqa: S102 - generated from a parsed AST
        return env["upd"]

    def _compile(self) -> None:
        comp = self._compiled
        comp["bounds"] = tuple(b for _, b in self.clocks)
        comp["inv"] = [
            [self.compile_predicate(a.invariant(l)) if a.invariant(l) is not None else None for l in a.locations]
            for a in self.automata
        ]
        internal, send, recv = [], [], []
        for a in self.automata:
            per_loc_int = [[] for _ in a.locations]
            per_loc_send = [[] for _ in a.locations]
            per_loc_recv: list[dict] = [dict() for _ in a.locations]
            for ei, e in enumerate(a.edges):
                entry = (
                    ei,
                    None if e.guard is None else self.compile_predicate(e.guard),
                    self._compile_updates(e.updates),
                    a.locations.index(e.target),
                )
                si = a.locations.index(e.source)
                if e.sync is None:
                    per_loc_int[si].append(entry)
                elif e.sync[1] == "!":
                    per_loc_send[si].append((e.sync[0], entry))
                else:
                    per_loc_recv[si].setdefault(e.sync[0], []).append(entry)
            internal.append(per_loc_int)
            send.append(per_loc_send)
            recv.append(per_loc_recv)
        comp["internal"], comp["send"], comp["recv"] = internal, send, recv

    # semantics

    def initial_state(self) -> State:
        return State(
            tuple(a.locations.index(a.initial) for a in self.automata),
            tuple(v.init for v in self.variables),
            tuple(0 for _ in self.clocks),
        )

    def invariants_hold(self, s: State) -> bool:
        inv = self._compiled["inv"]
        for ai, li in enumerate(s.locs):
            f = inv[ai][li]
            if f is not None and not f(s.locs, s.vars, s.clocks):
                return False
        return True

    def location_names(self, s: State) -> dict[str, str]:
        return {a.name: a.locations[li] for a, li in zip(self.automata, s.locs)}

    def valuation(self, s: State) -> dict[str, int]:
        out = {v.name: x for v, x in zip(self.variables, s.vars)}
        out.update({c: x for (c, _), x in zip(self.clocks, s.clocks)})
        return out


def enabled_steps(network: TaNetwork, state: State) -> list[tuple[Step, State]]:
    """All legal successor steps of ``state`` with their target states."""
    comp = network._compiled
    L, V, C = state
    out: list[tuple[Step, State]] = []
    bounds = comp["bounds"]
    delayed = State(L, V, tuple(min(c + 1, b) for c, b in zip(C, bounds)))
    if network.invariants_hold(delayed):
        out.append((DELAY, delayed))

    def fire(parts, label):
        vs, cs, locs = V, C, list(L)
        for ai, (ei, guard, upd, tgt) in parts:
            if upd is not None:
                vs, cs = upd(vs, cs)
            locs[ai] = tgt
        nxt = State(tuple(locs), vs, cs)
        if network.invariants_hold(nxt):
            out.append((Step("edge", tuple((ai, e[0]) for ai, e in parts), label), nxt))

    for ai, li in enumerate(L):
        for entry in comp["internal"][ai][li]:
            if entry[1] is None or entry[1](L, V, C):
                fire([(ai, entry)], None)
        for label, entry in comp["send"][ai][li]:
            if entry[1] is not None and not entry[1](L, V, C):
                continue
            for bj, lj in enumerate(L):
                if bj == ai:
                    continue
                for rentry in comp["recv"][bj][lj].get(label, ()):
                    if rentry[1] is None or rentry[1](L, V, C):
                        fire([(ai, entry), (bj, rentry)], label)
    return out


# -- queries and checking ----------------------------------------------------------------

EXISTS = "exists-eventually"
ALWAYS = "always-globally"


@dataclass(frozen=True)
class Query:
    kind: str
    predicate: object
    text: str = ""

    def __str__(self) -> str:
        return self.text or f"{'E<>' if self.kind == EXISTS else 'A[]'} {expr_str(self.predicate)}"


def parse_query(text: str, network: TaNetwork | None = None) -> Query:
    """Parse ``E<> pred`` / ``A[] pred``; with ``network`` identifiers are resolved."""
    stripped = text.strip()
    if not stripped:
        raise TaSyntaxError("empty query", 0, text)
    offset = len(text) - len(text.lstrip())
    if stripped.startswith("E<>"):
        kind = EXISTS
    elif stripped.startswith("A[]"):
        kind = ALWAYS
    else:
        raise TaSyntaxError("query must start with 'E<>' or 'A[]'", offset, text)
    body = stripped[3:]
    try:
        pred = parse_expr(body)
    except TaSyntaxError as exc:
        pos = None if exc.position is None else exc.position + offset + 3
        raise TaSyntaxError(str(exc).split(" at position")[0], pos, text) from None
    q = Query(kind, pred, stripped)
    if network is not None:
        network._check_names(pred, f"query {stripped!r}")
    return q


def parse_queries(text: str, network: TaNetwork | None = None) -> list[Query]:
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(parse_query(line, network))
    return out


@dataclass(frozen=True)
class Witness:
    states: tuple[State, ...]
    steps: tuple[Step, ...]

    def __len__(self) -> int:
        return len(self.states)

    def events(self, network: TaNetwork) -> list[dict]:
        """Serialize edge steps as ``{tick, source, label, payload}`` records."""
        out = []
        tick = 0
        for step, before, after in zip(self.steps, self.states, self.states[1:]):
            if step.kind == "delay":
                tick += 1
                continue
            ai = step.edges[0][0]
            a = network.automata[ai]
            out.append({
                "tick": tick,
                "source": a.name,
                "label": step.label or "tau",
                "payload": {
                    "automata": [network.automata[x].name for x, _ in step.edges],
                    "edges": [str(network.automata[x].edges[e]) for x, e in step.edges],
                    "locations": network.location_names(after),
                    "valuation": network.valuation(after),
                },
            })
        return out


@dataclass(frozen=True)
class CheckResult:
    query: Query
    verdict: str  # satisfied | unsatisfied | violated | holds
    witness: Witness | None = None
    explored: int = 0

    @property
    def success(self) -> bool:
        return self.verdict in ("satisfied", "holds")


def _path(parents: dict, s: State) -> Witness:
    states, steps = [s], []
    while parents[s] is not None:
        prev, step = parents[s]
        states.append(prev)
        steps.append(step)
        s = prev
    return Witness(tuple(reversed(states)), tuple(reversed(steps)))


def check_all(
    network: TaNetwork, queries: Sequence[Query], budget: int = DEFAULT_STATE_BUDGET
) -> list[CheckResult]:
    """Answer several queries with one breadth-first exploration.

    Each ``E<>`` query gets the shortest witness to its first satisfying
    state; each ``A[]`` query the shortest path to its first violation.
    """
    preds = []
    for q in queries:
        network._check_names(q.predicate, f"query {q}")
        f = network.compile_predicate(q.predicate)
        preds.append(f if q.kind == EXISTS else (lambda L, V, C, g=f: not g(L, V, C)))
    found: list[State | None] = [None] * len(queries)
    pending = set(range(len(queries)))
    init = network.initial_state()
    if not network.invariants_hold(init):
        raise TaModelError("initial state violates an invariant")
    parents: dict[State, tuple | None] = {init: None}
    frontier = deque([init])

    def visit(s: State) -> None:
        for qi in list(pending):
            if preds[qi](*s):
                found[qi] = s
                pending.discard(qi)

    visit(init)
    while frontier and pending:
        s = frontier.popleft()
        for step, nxt in enabled_steps(network, s):
            if nxt in parents:
                continue
            parents[nxt] = (s, step)
            if len(parents) > budget:
                raise BudgetExceeded(budget)
            visit(nxt)
            frontier.append(nxt)
    results = []
    for qi, q in enumerate(queries):
        s = found[qi]
        if q.kind == EXISTS:
            verdict = "satisfied" if s is not None else "unsatisfied"
        else:
            verdict = "violated" if s is not None else "holds"
        results.append(CheckResult(q, verdict, _path(parents, s) if s is not None else None, len(parents)))
    return results


def check(network: TaNetwork, query: Query | str, budget: int = DEFAULT_STATE_BUDGET) -> CheckResult:
    if isinstance(query, str):
        query = parse_query(query, network)
    return check_all(network, [query], budget)[0]


def replay(network: TaNetwork, witness: Witness) -> bool:
    """True iff every step of ``witness`` is legal from the initial state."""
    if not witness.states or witness.states[0] != network.initial_state():
        return False
    if len(witness.steps) != len(witness.states) - 1:
        return False
    for step, a, b in zip(witness.steps, witness.states, witness.states[1:]):
        if (step, b) not in enabled_steps(network, a):
            return False
    return True


# -- lint ------------------------------------------------------------------------------


def _clock_comparisons(e, clocks: set[str], acc: list) -> None:
    tag = e[0]
    if tag == "cmp":
        l, r = e[2], e[3]
        if l[0] == "name" and l[1] in clocks:
            acc.append((l[1], e[1], r))
        elif r[0] == "name" and r[1] in clocks:
            flip = {"<": ">", ">": "<", "<=": ">=", ">=": "<="}.get(e[1], e[1])
            acc.append((r[1], flip, l))
        _clock_comparisons(l, clocks, acc)
        _clock_comparisons(r, clocks, acc)
    elif tag == "not":
        _clock_comparisons(e[1], clocks, acc)
    elif tag in ("and", "or", "bin"):
        _clock_comparisons(e[-2], clocks, acc)
        _clock_comparisons(e[-1], clocks, acc)


def lint(network: TaNetwork, queries: Iterable[Query] = ()) -> list[str]:
    """Report clock comparisons that saturation could make unsound.

    A clock saturating at bound ``B`` is indistinguishable from any larger
    value, so ``x <= k``, ``x == k``, ``x > k`` and ``x != k`` need ``k < B``
    and ``x < k``, ``x >= k`` need ``k <= B``; comparisons against
    non-constants are always reported.
    """
    bounds = dict(network.clocks)
    exprs = []
    for a in network.automata:
        exprs += [e.guard for e in a.edges if e.guard is not None]
        exprs += [inv for _, inv in a.invariants]
    exprs += [q.predicate for q in queries]
    problems = []
    for e in exprs:
        acc: list = []
        _clock_comparisons(e, set(bounds), acc)
        for clock, op, rhs in acc:
            if rhs[0] != "int":
                problems.append(f"clock {clock} compared with a non-constant in {expr_str(e)}")
                continue
            k, b = rhs[1], bounds[clock]
            ok = k <= b if op in ("<", ">=") else k < b
            if not ok:
                problems.append(f"clock {clock} (bound {b}) compared {op} {k} in {expr_str(e)}")
    return sorted(set(problems))


# -- text format -------------------------------------------------------------------------

_EDGE_RE = re.compile(
    r"^edge\s+(\w+)\s*->\s*(\w+)\s*(?:\[(?P<guard>[^\]]*)\])?\s*(?:\{(?P<upd>[^}]*)\})?\s*(?P<sync>[!?]\w+)?\s*$"
)


def parse_network(text: str) -> TaNetwork:
    clocks, variables, channels, automata = [], [], [], []
    cur: dict | None = None
    for n, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        words = line.split()
        head = words[0]
        try:
            if cur is None:
                if head == "clock" and len(words) == 3:
                    clocks.append((words[1], int(words[2])))
                elif head == "var" and len(words) in (4, 5):
                    nums = [int(w) for w in words[2:]]
                    variables.append(Variable(words[1], nums[0], nums[1], nums[2] if len(nums) == 3 else nums[0]))
                elif head == "chan":
                    channels.extend(words[1:])
                elif head == "automaton" and len(words) == 2:
                    cur = {"name": words[1], "locs": [], "init": None, "edges": [], "inv": []}
                else:
                    raise TaSyntaxError(f"unexpected {head!r}")
                continue
            if head == "loc":
                cur["locs"].append(words[1])
                if len(words) > 2:
                    if words[2] != "inv":
                        raise TaSyntaxError("expected 'loc <name> [inv <expr>]'")
                    cur["inv"].append((words[1], parse_expr(line.split(None, 3)[3])))
            elif head == "init" and len(words) == 2:
                cur["init"] = words[1]
            elif head == "edge":
                m = _EDGE_RE.match(line)
                if not m:
                    raise TaSyntaxError("expected 'edge <src> -> <dst> [guard] {updates} !/?label'")
                guard = m.group("guard")
                sync = m.group("sync")
                cur["edges"].append(Edge(
                    m.group(1), m.group(2),
                    parse_expr(guard) if guard and guard.strip() else None,
                    (sync[1:], sync[0]) if sync else None,
                    parse_updates(m.group("upd") or ""),
                ))
            elif head == "end":
                if cur["init"] is None:
                    raise TaSyntaxError(f"automaton {cur['name']} has no init")
                automata.append(Automaton(cur["name"], tuple(cur["locs"]), cur["init"], tuple(cur["edges"]), tuple(cur["inv"])))
                cur = None
            else:
                raise TaSyntaxError(f"unexpected {head!r} inside automaton")
        except TaSyntaxError as exc:
            raise TaSyntaxError(f"line {n}: {exc}") from None
        except ValueError as exc:
            raise TaSyntaxError(f"line {n}: {exc}") from None
    if cur is not None:
        raise TaSyntaxError(f"automaton {cur['name']} not closed with 'end'")
    return TaNetwork(tuple(automata), tuple(clocks), tuple(channels), tuple(variables))


def format_network(network: TaNetwork) -> str:
    """Inverse of :func:`parse_network` (up to whitespace and comments)."""
    lines = [f"clock {c} {b}" for c, b in network.clocks]
    lines += [f"var {v.name} {v.low} {v.high} {v.init}" for v in network.variables]
    if network.channels:
        lines.append("chan " + " ".join(network.channels))
    for a in network.automata:
        lines.append(f"automaton {a.name}")
        for l in a.locations:
            inv = a.invariant(l)
            lines.append(f"  loc {l}" + (f" inv {expr_str(inv)}" if inv is not None else ""))
        lines.append(f"  init {a.initial}")
        lines += [f"  edge {e}" for e in a.edges]
        lines.append("end")
    return "\n".join(lines) + "\n"
