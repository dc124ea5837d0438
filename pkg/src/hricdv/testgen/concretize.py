"""Seeded instantiation of symbolic parameters."""

from __future__ import annotations

import random

from ..scenarios import actions_for
from ..testcase import AbstractTest, ConcreteTest, TimedAction


class ConfigurationError(ValueError):
    """A symbolic parameter has no declared range."""


def concretize(abstract: AbstractTest, seed: int, scenario: str) -> ConcreteTest:
    """Draw every symbolic parameter uniformly from its declared range.

    Draws happen in action order with ``random.Random(seed)``, so the result
    depends only on ``(abstract, seed, scenario)``; offsets are kept as is.
    """
    specs = actions_for(scenario)
    rng = random.Random(seed)
    actions = []
    for a in abstract.actions:
        spec = specs.get((a.actor, a.label))
        if spec is None:
            raise ConfigurationError(f"{scenario}: no declaration for action {a.actor} {a.label}")
        params = []
        for name, symbol in a.params:
            ranges = spec.params.get(name)
            if ranges is None or symbol not in ranges:
                raise ConfigurationError(f"{scenario}: no range for {a.label} {name}∈{symbol}")
            params.append((name, ranges[symbol].sample(rng)))
        actions.append(TimedAction(a.offset, a.actor, a.label, tuple(params)))
    return ConcreteTest(abstract.id, abstract.generator, seed, tuple(actions), scenario)
