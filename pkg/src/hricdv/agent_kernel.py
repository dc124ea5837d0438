"""A small AgentSpeak-style BDI interpreter.

Agents hold a belief base, an event queue and an ordered plan library.  A
system run proceeds in cycles: messages sent during cycle ``c`` are delivered
at the start of cycle ``c + 1``; in each cycle every agent, in declaration
order, dequeues at most one event and fires the first applicable plan, whose
body executes atomically.

Agent programs can be built in code or read from a line-based text format::

    vocab ready bored voice
    agent verifier verifier
    agent human
    agent robot
    belief human ready
    goal robot start
    plan verifier on ready when true do send human ready
    plan human on !greet when ready & not bored do emit wave; send robot voice(hi)
    plan robot on voice(X) when true do emit nod(X); self heard(X)

Identifiers starting with an upper-case letter or ``_`` are variables.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

Atom = str | int

DEFAULT_MAX_CYCLES = 500


class VocabularyError(ValueError):
    """A belief name outside the declared vocabulary was used."""


class AgentSyntaxError(ValueError):
    pass


def is_var(a: Atom) -> bool:
    return isinstance(a, str) and (a[:1].isupper() or a[:1] == "_")


@dataclass(frozen=True)
class Belief:
    """A ground or pattern atom ``name(args)``; ``source`` is not part of identity."""

    name: str
    args: tuple[Atom, ...] = ()
    source: str = field(default="self", compare=False)

    def __post_init__(self) -> None:
        if not self.name:
            raise ValueError("belief name must be non-empty")

    def __str__(self) -> str:
        if not self.args:
            return self.name
        return f"{self.name}({','.join(str(a) for a in self.args)})"

    @property
    def ground(self) -> bool:
        return not is_var(self.name) and not any(is_var(a) for a in self.args)

    def substitute(self, binding: dict[str, Atom]) -> "Belief":
        args = tuple(binding.get(a, a) if is_var(a) else a for a in self.args)
        name = self.name
        if is_var(name) and name in binding and not self.args:
            name = str(binding[name])  # a bare variable step such as ``emit C``
        return Belief(name, args, self.source)

    def sort_key(self) -> tuple:
        return (self.name, tuple((isinstance(a, str), str(a)) for a in self.args))


def unify(pattern: Belief, belief: Belief, binding: dict[str, Atom]) -> dict[str, Atom] | None:
    if pattern.name != belief.name or len(pattern.args) != len(belief.args):
        return None
    out = dict(binding)
    for p, b in zip(pattern.args, belief.args):
        if is_var(p):
            if p == "_":
                continue
            if p in out:
                if out[p] != b:
                    return None
            else:
                out[p] = b
        elif p != b:
            return None
    return out


@dataclass(frozen=True)
class Literal:
    positive: bool
    pattern: Belief

    def __str__(self) -> str:
        return str(self.pattern) if self.positive else f"not {self.pattern}"


@dataclass(frozen=True)
class Context:
    """Conjunction of (possibly negated) belief patterns; empty means ``true``."""

    literals: tuple[Literal, ...] = ()

    def __str__(self) -> str:
        return " & ".join(str(l) for l in self.literals) or "true"

    def names(self) -> set[str]:
        return {l.pattern.name for l in self.literals}


@dataclass(frozen=True)
class Trigger:
    pattern: Belief
    goal: bool = False

    def __str__(self) -> str:
        return f"!{self.pattern}" if self.goal else str(self.pattern)


@dataclass(frozen=True)
class Step:
    """One plan-body step: ``emit``, ``send``, ``self`` (add self-belief) or ``goal``."""

    kind: str
    term: Belief
    target: str | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("emit", "send", "self", "goal"):
            raise ValueError(f"unknown step kind {self.kind!r}")
        if self.kind == "send" and not self.target:
            raise ValueError("send step needs a target agent")


@dataclass(frozen=True)
class Plan:
    trigger: Trigger
    context: Context
    body: tuple[Step, ...]
    id: str = ""

    def __post_init__(self) -> None:
        if not self.body:
            raise ValueError("plan body must be non-empty")


@dataclass(frozen=True)
class AgentProgram:
    name: str
    initial_beliefs: frozenset[Belief] = frozenset()
    initial_goals: tuple[str, ...] = ()
    plan_library: tuple[Plan, ...] = ()
    verifier: bool = False

    def plan(self, plan_id: str) -> Plan:
        for p in self.plan_library:
            if p.id == plan_id:
                return p
        raise KeyError(plan_id)


@dataclass(frozen=True)
class BeliefSet:
    """Beliefs the verification agent injects, kept in scripted delivery order."""

    beliefs: tuple[Belief, ...] = ()

    def __post_init__(self) -> None:
        if len(set(self.beliefs)) != len(self.beliefs):
            raise ValueError("belief set contains duplicates")

    @classmethod
    def of(cls, beliefs: Iterable[Belief | str], vocabulary: Sequence[Belief] | None = None) -> "BeliefSet":
        """Build a set; with ``vocabulary`` the order follows it and membership is checked."""
        items = {parse_term(b) if isinstance(b, str) else b for b in beliefs}
        if vocabulary is None:
            return cls(tuple(sorted(items, key=Belief.sort_key)))
        missing = items - set(vocabulary)
        if missing:
            raise VocabularyError(f"beliefs outside the vocabulary: {sorted(map(str, missing))}")
        return cls(tuple(b for b in vocabulary if b in items))

    def __iter__(self):
        return iter(self.beliefs)

    def __len__(self) -> int:
        return len(self.beliefs)

    def __contains__(self, item) -> bool:
        return item in self.beliefs

    def __str__(self) -> str:
        return "{" + ", ".join(map(str, self.beliefs)) + "}"


@dataclass(frozen=True)
class TraceStep:
    cycle: int
    agent: str
    plan_id: str
    actions: tuple[Belief, ...]
    event: Belief


@dataclass(frozen=True)
class ExecutionTrace:
    steps: tuple[TraceStep, ...]
    truncated: bool = False
    cycles: int = 0

    def actions_of(self, agent: str) -> list[tuple[int, Belief]]:
        return [(s.cycle, a) for s in self.steps if s.agent == agent for a in s.actions]


# -- context evaluation -----------------------------------------------------------


def _solve(literals: Sequence[Literal], base: Sequence[Belief], binding: dict) -> dict | None:
    if not literals:
        return binding
    lit, rest = literals[0], literals[1:]
    if lit.positive:
        for b in base:
            s = unify(lit.pattern, b, binding)
            if s is not None:
                r = _solve(rest, base, s)
                if r is not None:
                    return r
        return None
    for b in base:
        if unify(lit.pattern, b, binding) is not None:
            return None
    return _solve(rest, base, binding)


def _sorted_base(base: Iterable[Belief]) -> list[Belief]:
    return sorted(base, key=Belief.sort_key)


def evaluate_context(
    context: Context | str,
    belief_base: Iterable[Belief],
    vocabulary: Iterable[str] | None = None,
    binding: dict | None = None,
) -> bool:
    """True iff every positive pattern matches and no negated pattern matches."""
    if isinstance(context, str):
        context = parse_context(context)
    if vocabulary is not None:
        unknown = context.names() - set(vocabulary)
        if unknown:
            raise VocabularyError(f"undeclared belief names in context: {sorted(unknown)}")
    return _solve(context.literals, _sorted_base(belief_base), dict(binding or {})) is not None


# -- runtime ------------------------------------------------------------------------


@dataclass
class Agent:
    program: AgentProgram
    base: set[Belief] = field(default_factory=set)
    queue: deque = field(default_factory=deque)

    @classmethod
    def start(cls, program: AgentProgram) -> "Agent":
        agent = cls(program, set(program.initial_beliefs))
        for g in program.initial_goals:
            agent.queue.append((True, Belief(g)))
        return agent

    @property
    def name(self) -> str:
        return self.program.name


def _select(agent: Agent, event: Belief, goal: bool = False) -> tuple[Plan, dict] | None:
    base = _sorted_base(agent.base)
    for plan in agent.program.plan_library:
        if plan.trigger.goal != goal:
            continue
        binding = unify(plan.trigger.pattern, event, {})
        if binding is None:
            continue
        solved = _solve(plan.context.literals, base, binding)
        if solved is not None:
            return plan, solved
    return None


def select_plan(agent: Agent, event: Belief, goal: bool = False) -> Plan | None:
    """First plan, in declaration order, whose trigger matches and context holds."""
    found = _select(agent, event, goal)
    return found[0] if found else None


def run_system(
    programs: Sequence[AgentProgram],
    injected: BeliefSet | Sequence[Belief],
    max_cycles: int = DEFAULT_MAX_CYCLES,
) -> ExecutionTrace:
    """Execute the multi-agent system with ``injected`` fed to the verification agent.

    The verification agent receives the injected beliefs as queued events in
    the given order, so it handles one per cycle.  The run stops when no event
    or message is pending; reaching ``max_cycles`` with work left flags the
    trace as truncated.
    """
    if max_cycles < 1:
        raise ValueError("max_cycles must be >= 1")
    verifiers = [p for p in programs if p.verifier]
    if len(verifiers) != 1:
        raise ValueError(f"expected exactly one verification agent, got {len(verifiers)}")
    names = [p.name for p in programs]
    if len(set(names)) != len(names):
        raise ValueError("agent names must be unique")
    agents = {p.name: Agent.start(p) for p in programs}
    ver = agents[verifiers[0].name]
    for b in injected:
        if b not in ver.base:
            ver.base.add(b)
            ver.queue.append((False, b))

    steps: list[TraceStep] = []
    outbox: list[tuple[str, Belief]] = []
    cycle = 0
    while True:
        for target, b in outbox:
            dest = agents[target]
            if b not in dest.base:
                dest.base.add(b)
                dest.queue.append((False, b))
        outbox = []
        if not any(a.queue for a in agents.values()):
            return ExecutionTrace(tuple(steps), False, cycle)
        if cycle >= max_cycles:
            return ExecutionTrace(tuple(steps), True, cycle)
        for agent in agents.values():
            if not agent.queue:
                continue
            goal, event = agent.queue.popleft()
            found = _select(agent, event, goal)
            if found is None:
                continue
            plan, binding = found
            emitted = []
            for step in plan.body:
                term = step.term.substitute(binding)
                if not term.ground:
                    raise ValueError(f"unbound variable in {agent.name}/{plan.id}: {term}")
                if step.kind == "emit":
                    emitted.append(term)
                elif step.kind == "send":
                    outbox.append((step.target, Belief(term.name, term.args, agent.name)))
                elif step.kind == "self":
                    if term not in agent.base:
                        agent.base.add(term)
                        agent.queue.append((False, term))
                else:
                    agent.queue.append((True, term))
            steps.append(TraceStep(cycle, agent.name, plan.id, tuple(emitted), event))
        cycle += 1


# -- building and parsing -------------------------------------------------------------

_TERM_RE = re.compile(r"^\s*([A-Za-z_][A-Za-z0-9_]*)\s*(?:\((.*)\))?\s*$")
_IDENT_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


def parse_term(text: str) -> Belief:
    m = _TERM_RE.match(text)
    if not m:
        raise AgentSyntaxError(f"bad term {text!r}")
    name, argtext = m.group(1), m.group(2)
    args: list[Atom] = []
    if argtext is not None and argtext.strip():
        for raw in argtext.split(","):
            raw = raw.strip()
            if re.fullmatch(r"-?\d+", raw):
                args.append(int(raw))
            elif _IDENT_RE.match(raw):
                args.append(raw)
            else:
                raise AgentSyntaxError(f"bad argument {raw!r} in {text!r}")
    return Belief(name, tuple(args))


def parse_context(text: str) -> Context:
    text = text.strip()
    if text in ("", "true"):
        return Context()
    lits = []
    for part in text.split("&"):
        part = part.strip()
        positive = True
        if part.startswith("not "):
            positive, part = False, part[4:]
        lits.append(Literal(positive, parse_term(part)))
    return Context(tuple(lits))


def parse_step(text: str) -> Step:
    words = text.strip().split(None, 1)
    if len(words) != 2:
        raise AgentSyntaxError(f"bad step {text!r}")
    kind, rest = words
    if kind == "send":
        parts = rest.split(None, 1)
        if len(parts) != 2:
            raise AgentSyntaxError(f"send needs '<agent> <term>': {text!r}")
        return Step("send", parse_term(parts[1]), parts[0])
    if kind not in ("emit", "self", "goal"):
        raise AgentSyntaxError(f"unknown step kind {kind!r}")
    return Step(kind, parse_term(rest))


def check_program(programs: Sequence[AgentProgram], vocabulary: Iterable[str]) -> None:
    """Reject belief names outside ``vocabulary`` and sends to unknown agents."""
    vocab = set(vocabulary)
    names = {p.name for p in programs}

    def need(b: Belief, where: str) -> None:
        if b.name not in vocab:
            raise VocabularyError(f"{where}: undeclared belief {b.name!r}")

    for prog in programs:
        for b in prog.initial_beliefs:
            need(b, prog.name)
        for plan in prog.plan_library:
            where = f"{prog.name}/{plan.id}"
            if not plan.trigger.goal:
                need(plan.trigger.pattern, where)
            for lit in plan.context.literals:
                need(lit.pattern, where)
            for step in plan.body:
                if step.kind in ("send", "self"):
                    need(step.term, where)
                if step.kind == "send" and step.target not in names:
                    raise VocabularyError(f"{where}: send to unknown agent {step.target!r}")


@dataclass
class ProgramBuilder:
    """Incremental construction of agent programs, used by in-code models."""

    vocabulary: set[str] = field(default_factory=set)
    _agents: dict[str, dict] = field(default_factory=dict)

    def agent(self, name: str, verifier: bool = False) -> None:
        if name in self._agents:
            raise AgentSyntaxError(f"agent {name!r} declared twice")
        self._agents[name] = {"beliefs": set(), "goals": [], "plans": [], "verifier": verifier}

    def _get(self, name: str) -> dict:
        try:
            return self._agents[name]
        except KeyError:
            raise AgentSyntaxError(f"undeclared agent {name!r}") from None

    def belief(self, agent: str, term: Belief | str) -> None:
        self._get(agent)["beliefs"].add(parse_term(term) if isinstance(term, str) else term)

    def goal(self, agent: str, goal: str) -> None:
        self._get(agent)["goals"].append(goal)

    def plan(self, agent: str, trigger: str, context: str, *steps: str | Step) -> None:
        entry = self._get(agent)
        trig = trigger.strip()
        goal = trig.startswith("!")
        body = tuple(s if isinstance(s, Step) else parse_step(s) for s in steps)
        plan_id = f"p{len(entry['plans'])}"
        entry["plans"].append(
            Plan(Trigger(parse_term(trig.lstrip("!")), goal), parse_context(context), body, plan_id)
        )

    def build(self) -> list[AgentProgram]:
        programs = [
            AgentProgram(
                name,
                frozenset(e["beliefs"]),
                tuple(e["goals"]),
                tuple(e["plans"]),
                e["verifier"],
            )
            for name, e in self._agents.items()
        ]
        check_program(programs, self.vocabulary)
        return programs


def parse_programs(text: str) -> tuple[list[AgentProgram], set[str]]:
    """Parse the agent text format; returns the programs and declared vocabulary."""
    builder = ProgramBuilder()
    for n, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        try:
            if head == "vocab":
                builder.vocabulary.update(rest.split())
            elif head == "agent":
                parts = rest.split()
                if not parts or len(parts) > 2 or (len(parts) == 2 and parts[1] != "verifier"):
                    raise AgentSyntaxError("expected 'agent <name> [verifier]'")
                builder.agent(parts[0], verifier=len(parts) == 2)
            elif head == "belief":
                agent, term = rest.split(None, 1)
                builder.belief(agent, term)
            elif head == "goal":
                agent, goal = rest.split()
                builder.goal(agent, goal)
            elif head == "plan":
                m = re.match(r"^(\S+)\s+on\s+(.+?)\s+when\s+(.+?)\s+do\s+(.+)$", rest)
                if not m:
                    raise AgentSyntaxError("expected 'plan <agent> on <trigger> when <context> do <steps>'")
                agent, trig, ctx, body = m.groups()
                builder.plan(agent, trig, ctx, *[s for s in body.split(";") if s.strip()])
            else:
                raise AgentSyntaxError(f"unknown directive {head!r}")
        except (AgentSyntaxError, ValueError) as exc:
            if isinstance(exc, VocabularyError):
                raise
            raise AgentSyntaxError(f"line {n}: {exc}") from exc
    return builder.build(), builder.vocabulary
