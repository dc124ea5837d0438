"""Abstract tests from BDI executions, and constrained belief-set enumeration."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterable

from ..agent_kernel import DEFAULT_MAX_CYCLES, Belief, BeliefSet, VocabularyError, run_system
from ..models.bdi_model import BdiModel
from ..testcase import AbstractTest, TimedAction

TICKS_PER_CYCLE = 10


class GenerationError(Exception):
    pass


class UnsatisfiableConstraint(ValueError):
    pass


def bdi_generate(
    model: BdiModel,
    belief_set: BeliefSet | Iterable[Belief],
    max_cycles: int = DEFAULT_MAX_CYCLES,
    test_id: int = 0,
) -> AbstractTest:
    """Run the agents once and keep the environment agents' actions.

    Cycle ``c`` maps to tick ``c * TICKS_PER_CYCLE``; robot actions are dropped.
    """
    if not isinstance(belief_set, BeliefSet):
        belief_set = BeliefSet.of(belief_set, model.vocabulary)
    outside = set(belief_set) - set(model.vocabulary)
    if outside:
        raise VocabularyError(f"beliefs outside the vocabulary: {sorted(map(str, outside))}")
    trace = run_system(model.programs, belief_set, max_cycles)
    if trace.truncated:
        raise GenerationError(f"trace truncated after {max_cycles} cycles for belief set {belief_set}")
    actions = []
    for step in trace.steps:
        if step.agent not in model.environment:
            continue
        for act in step.actions:
            mapped = model.map_action(step.agent, act)
            if mapped is not None:
                actor, label, params = mapped
                actions.append(TimedAction(step.cycle * TICKS_PER_CYCLE, actor, label, tuple(params)))
    return AbstractTest(test_id, "bdi", tuple(actions))


@dataclass(frozen=True)
class BeliefConstraint:
    """Sets contain all of ``required``, none of ``forbidden``, any mix of the rest.

    ``predicate`` is an extra filter over the candidate set; ``max_size``
    bounds the total number of beliefs.
    """

    required: frozenset[Belief] = frozenset()
    forbidden: frozenset[Belief] = frozenset()
    predicate: Callable[[frozenset[Belief]], bool] | None = field(default=None, compare=False)
    max_size: int | None = None


_EXHAUSTIVE_LIMIT = 20_000


def enumerate_belief_sets(
    constraint: BeliefConstraint,
    count: int,
    seed: int,
    vocabulary: Iterable[Belief],
) -> list[BeliefSet]:
    """Distinct belief sets satisfying ``constraint``, smallest first.

    Within one size, candidates come in a seeded random order; sizes with
    few combinations are enumerated exhaustively, larger ones sampled.  May
    return fewer than ``count`` sets when the constraint admits fewer.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    vocab = tuple(vocabulary)
    vs = set(vocab)
    for b in constraint.required | constraint.forbidden:
        if b not in vs:
            raise VocabularyError(f"constraint mentions {b}, which is not in the vocabulary")
    if constraint.required & constraint.forbidden:
        raise UnsatisfiableConstraint("a belief is both required and forbidden")
    base = frozenset(constraint.required)
    free = [b for b in vocab if b not in base and b not in constraint.forbidden]
    cap = len(free) if constraint.max_size is None else constraint.max_size - len(base)
    if cap < 0:
        raise UnsatisfiableConstraint("required beliefs exceed max_size")
    rng = random.Random(seed)
    out: list[BeliefSet] = []
    seen: set[frozenset] = set()

    def offer(extra: Iterable[Belief]) -> bool:
        cand = base | frozenset(extra)
        if cand in seen:
            return False
        seen.add(cand)
        if constraint.predicate is None or constraint.predicate(cand):
            out.append(BeliefSet.of(cand, vocab))
        return len(out) >= count

    for size in range(0, min(cap, len(free)) + 1):
        n = math.comb(len(free), size)
        if n <= _EXHAUSTIVE_LIMIT:
            combos = list(combinations(range(len(free)), size))
            rng.shuffle(combos)
            for idx in combos:
                if offer(free[i] for i in idx):
                    return out
        else:
            for _ in range(_EXHAUSTIVE_LIMIT):
                if offer(rng.sample(free, size)):
                    return out
    if not out:
        raise UnsatisfiableConstraint("no belief set within the vocabulary satisfies the constraint")
    return out
