"""Test extraction from timed-automata witnesses."""

from __future__ import annotations

from typing import Callable, Sequence

from ..ta_checker import (
    DEFAULT_STATE_BUDGET,
    EXISTS,
    CheckResult,
    Query,
    TaNetwork,
    Witness,
    check_all,
    parse_query,
)
from ..testcase import ENV_ACTORS, AbstractTest, TimedAction

# (automaton, channel, valuation after the step) -> symbolic params, or None to drop the step
Projector = Callable[[str, str, dict], tuple | None]


class NoTestDerivable(Exception):
    def __init__(self, query: Query | str, reason: str = "property unsatisfiable"):
        self.query = query
        super().__init__(f"no test derivable from {query}: {reason}")


def _no_params(automaton: str, label: str, valuation: dict) -> tuple:
    return ()


def project_witness(
    network: TaNetwork,
    witness: Witness,
    project: Projector | None = None,
    test_id: int = 0,
    environment: Sequence[str] = ENV_ACTORS,
) -> AbstractTest:
    """Keep the environment's sync steps; delays become tick offsets.

    An edge step belongs to the environment when one of its participating
    automata is an environment entity; that automaton becomes the actor.
    Internal robot steps are dropped.
    """
    project = project or _no_params
    tick = 0
    actions = []
    for step, after in zip(witness.steps, witness.states[1:]):
        if step.kind == "delay":
            tick += 1
            continue
        if step.label is None:
            continue
        actors = [network.automata[ai].name for ai, _ in step.edges]
        env = [a for a in actors if a in environment]
        if not env:
            continue
        params = project(env[0], step.label, network.valuation(after))
        if params is None:
            continue
        actions.append(TimedAction(tick, env[0], step.label, tuple(params)))
    return AbstractTest(test_id, "mc", tuple(actions))


def _derive(result: CheckResult, network, project, test_id) -> AbstractTest:
    if result.query.kind != EXISTS:
        raise ValueError(f"test generation needs an E<> query, got {result.query}")
    if result.verdict != "satisfied":
        raise NoTestDerivable(result.query)
    return project_witness(network, result.witness, project, test_id)


def mc_generate(
    network: TaNetwork,
    query: Query | str,
    project: Projector | None = None,
    test_id: int = 0,
    budget: int = DEFAULT_STATE_BUDGET,
) -> AbstractTest:
    """Abstract test from the shortest witness of an ``E<>`` query."""
    if isinstance(query, str):
        query = parse_query(query, network)
    if query.kind != EXISTS:
        raise ValueError(f"test generation needs an E<> query, got {query}")
    (result,) = check_all(network, [query], budget)
    return _derive(result, network, project, test_id)


def mc_generate_suite(
    network: TaNetwork,
    queries: Sequence[Query],
    project: Projector | None = None,
    budget: int = DEFAULT_STATE_BUDGET,
) -> list[AbstractTest | NoTestDerivable]:
    """One exploration for a whole property suite; test ids follow query order (from 1)."""
    out: list[AbstractTest | NoTestDerivable] = []
    for i, r in enumerate(check_all(network, queries, budget), start=1):
        try:
            out.append(_derive(r, network, project, i))
        except NoTestDerivable as exc:
            out.append(exc)
    return out
