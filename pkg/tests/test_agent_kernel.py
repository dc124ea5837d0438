from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hricdv.agent_kernel import (
    Agent,
    AgentProgram,
    AgentSyntaxError,
    Belief,
    BeliefSet,
    ProgramBuilder,
    VocabularyError,
    evaluate_context,
    parse_context,
    parse_programs,
    parse_term,
    run_system,
    select_plan,
)

B = parse_term


def test_belief_identity_ignores_source():
    assert Belief("ready", (), "human") == Belief("ready", (), "self")
    assert hash(Belief("g", (1, "ok"), "a")) == hash(Belief("g", (1, "ok")))
    assert Belief("g", (1,)) != Belief("g", (2,))


def test_empty_belief_name_rejected():
    with pytest.raises(ValueError):
        Belief("")


def test_parse_term_args():
    assert B("gpl(1, ok, X)") == Belief("gpl", (1, "ok", "X"))
    assert B("ready").args == ()
    with pytest.raises(AgentSyntaxError):
        B("gpl(1,,2)")


def test_context_positive_and_negation():
    assert evaluate_context("ready & not bored", {B("ready")})
    assert not evaluate_context("ready & not bored", {B("ready"), B("bored")})
    assert evaluate_context("true", set())


def test_context_undeclared_name():
    with pytest.raises(VocabularyError):
        evaluate_context("ready & not sleepy", {B("ready")}, vocabulary={"ready"})


def test_release_guard_matches_exactly_one_triple():
    guard = parse_context("gpl(K,1,1,1)")
    base_extra = {B("request(1)")}
    hits = [
        t for t in itertools.product((0, 1), repeat=3)
        if evaluate_context(guard, base_extra | {Belief("gpl", (1, *t))})
    ]
    assert hits == [(1, 1, 1)]


def test_context_shared_variable_backtracks():
    base = {B("a(1)"), B("a(2)"), B("b(2)")}
    assert evaluate_context("a(X) & b(X)", base)
    assert not evaluate_context("a(X) & b(X) & not a(2)", base)


def _two_plan_agent(first_ctx="true", second_ctx="true"):
    b = ProgramBuilder({"go", "flag"})
    b.agent("v", verifier=True)
    b.agent("a")
    b.plan("a", "go", first_ctx, "emit first")
    b.plan("a", "go", second_ctx, "emit second")
    return b.build()


def test_select_first_declared():
    programs = _two_plan_agent()
    agent = Agent.start(programs[1])
    assert select_plan(agent, B("go")).id == "p0"


def test_select_no_trigger_or_false_context():
    programs = _two_plan_agent("flag", "flag")
    agent = Agent.start(programs[1])
    assert select_plan(agent, B("other")) is None
    assert select_plan(agent, B("go")) is None


def _relay_system():
    text = """
    vocab ping pong
    agent v verifier
    agent a
    agent b
    plan v on ping when true do send a ping
    plan a on ping when true do emit hello; send b pong
    plan b on pong when true do emit world
    """
    programs, _ = parse_programs(text)
    return programs


def test_empty_injection_only_goals_fire():
    text = """
    vocab x
    agent v verifier
    agent a
    goal a boot
    plan a on !boot when true do emit booted
    plan a on x when true do emit never
    """
    programs, _ = parse_programs(text)
    trace = run_system(programs, BeliefSet())
    assert [(s.agent, s.plan_id) for s in trace.steps] == [("a", "p0")]
    assert not trace.truncated


def test_messages_arrive_next_cycle():
    trace = run_system(_relay_system(), BeliefSet.of(["ping"]))
    assert [(s.cycle, s.agent, str(s.actions[0]) if s.actions else None) for s in trace.steps] == [
        (0, "v", None),
        (1, "a", "hello"),
        (2, "b", "world"),
    ]


def test_readding_existing_belief_is_silent():
    text = """
    vocab tick
    agent v verifier
    agent a
    plan v on tick when true do send a tick
    plan a on tick when true do emit t; self tick
    """
    programs, _ = parse_programs(text)
    trace = run_system(programs, BeliefSet.of(["tick"]))
    assert [s.agent for s in trace.steps] == ["v", "a"]


def test_truncation_flag():
    text = """
    vocab c
    agent v verifier
    goal v loop
    plan v on !loop when true do emit spin; goal loop
    """
    programs, _ = parse_programs(text)
    trace = run_system(programs, BeliefSet(), max_cycles=7)
    assert trace.truncated
    assert len(trace.steps) == 7


def test_run_system_preconditions():
    programs = _relay_system()
    with pytest.raises(ValueError):
        run_system(programs, BeliefSet(), max_cycles=0)
    with pytest.raises(ValueError):
        run_system([p for p in programs if not p.verifier], BeliefSet())


def test_parser_rejects_undeclared_names():
    with pytest.raises(VocabularyError):
        parse_programs("vocab a\nagent v verifier\nplan v on b when true do emit x\n")
    with pytest.raises(VocabularyError):
        parse_programs("vocab a\nagent v verifier\nplan v on a when true do send ghost a\n")
    with pytest.raises(AgentSyntaxError):
        parse_programs("vocab a\nplan v on a when true do emit x\n")
    with pytest.raises(AgentSyntaxError):
        parse_programs("vocab a\nagent v verifier\nplan v on a do emit x\n")


def test_belief_set_vocabulary_order():
    vocab = [B("r(1)"), B("r(2)"), B("ok")]
    assert BeliefSet.of(["ok", "r(2)"], vocab).beliefs == (B("r(2)"), B("ok"))
    with pytest.raises(VocabularyError):
        BeliefSet.of(["zzz"], vocab)


# -- properties ------------------------------------------------------------------

NAMES = ["a", "b", "c", "d"]


@st.composite
def random_systems(draw):
    """Small random systems over a 4-name vocabulary; plans emit, send and self-add."""
    b = ProgramBuilder(set(NAMES))
    agents = ["v", "x", "y"]
    b.agent("v", verifier=True)
    b.agent("x")
    b.agent("y")
    for ag in agents:
        for _ in range(draw(st.integers(0, 4))):
            trig = draw(st.sampled_from(NAMES))
            ctx = draw(st.sampled_from(["true"] + NAMES + [f"not {n}" for n in NAMES]))
            steps = []
            for _ in range(draw(st.integers(1, 3))):
                kind = draw(st.sampled_from(["emit", "send", "self"]))
                name = draw(st.sampled_from(NAMES))
                if kind == "send":
                    steps.append(f"send {draw(st.sampled_from(agents))} {name}")
                else:
                    steps.append(f"{kind} {name}")
            b.plan(ag, trig, ctx, *steps)
    injected = draw(st.lists(st.sampled_from(NAMES), unique=True, max_size=4))
    return b.build(), BeliefSet(tuple(Belief(n) for n in injected))


@settings(max_examples=60, deadline=None)
@given(random_systems())
def test_determinism_and_trace_invariants(system):
    programs, injected = system
    t1 = run_system(programs, injected, max_cycles=40)
    t2 = run_system(programs, injected, max_cycles=40)
    assert t1 == t2
    by_name = {p.name: p for p in programs}
    cycles = [s.cycle for s in t1.steps]
    assert cycles == sorted(cycles)
    for s in t1.steps:
        by_name[s.agent].plan(s.plan_id)
        assert s.cycle < max(t1.cycles, 1)


@settings(max_examples=60, deadline=None)
@given(random_systems())
def test_vocabulary_closure(system):
    programs, injected = system
    trace = run_system(programs, injected, max_cycles=40)
    origin = set(injected)
    for p in programs:
        origin |= set(p.initial_beliefs)
        for plan in p.plan_library:
            origin |= {st_.term for st_ in plan.body if st_.kind in ("send", "self")}
    assert {s.event for s in trace.steps} <= origin


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(NAMES), st.sampled_from(NAMES))
def test_swapping_disjoint_plans_is_invisible(t1, t2):
    def build(order):
        b = ProgramBuilder(set(NAMES))
        b.agent("v", verifier=True)
        b.agent("x")
        b.plan("v", "a", "true", "send x a", "send x b")
        plans = {"a": ("a", "true", "emit fa"), "b": ("b", "true", "emit fb")}
        for k in order:
            b.plan("x", *plans[k])
        return b.build()

    inj = BeliefSet.of(["a"])
    ab = run_system(build("ab"), inj)
    ba = run_system(build("ba"), inj)
    assert [(s.cycle, s.actions) for s in ab.steps] == [(s.cycle, s.actions) for s in ba.steps]


def test_swapping_overlapping_plans_changes_firing():
    for first, second in (("one", "two"), ("two", "one")):
        b = ProgramBuilder({"go"})
        b.agent("v", verifier=True)
        b.plan("v", "go", "true", f"emit {first}")
        b.plan("v", "go", "true", f"emit {second}")
        trace = run_system(b.build(), BeliefSet.of(["go"]))
        assert str(trace.steps[0].actions[0]) == first
