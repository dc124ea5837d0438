"""Pseudorandom baseline: seeded sequences over a fixed action alphabet."""

from __future__ import annotations

import random
from dataclasses import dataclass

from ..testcase import AbstractTest, TimedAction


@dataclass(frozen=True)
class AlphabetEntry:
    actor: str
    label: str
    params: tuple[tuple[str, tuple[str, ...]], ...] = ()  # name -> admissible symbols
    min_gap: int = 0
    max_gap: int = 100
    weight: float = 1.0

    def __post_init__(self) -> None:
        if not 0 <= self.min_gap <= self.max_gap:
            raise ValueError(f"{self.label}: need 0 <= min_gap <= max_gap")
        if self.weight <= 0:
            raise ValueError(f"{self.label}: weight must be positive")


@dataclass(frozen=True)
class ActionAlphabet:
    entries: tuple[AlphabetEntry, ...]

    def __post_init__(self) -> None:
        if not self.entries:
            raise ValueError("alphabet must not be empty")
        keys = [(e.actor, e.label) for e in self.entries]
        if len(set(keys)) != len(keys):
            raise ValueError("labels must be unique per actor")


def random_generate(
    alphabet: ActionAlphabet,
    seed: int,
    max_len: int,
    test_id: int = 0,
    horizon: int | None = None,
) -> AbstractTest:
    """Seeded length in ``[0, max_len]``, then independent draws of actions and gaps.

    The gap before each action is drawn from that action's own gap range.
    Actions falling after ``horizon`` are dropped.
    """
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    rng = random.Random(seed)
    length = rng.randint(0, max_len)
    weights = [e.weight for e in alphabet.entries]
    tick = 0
    actions = []
    for _ in range(length):
        entry = rng.choices(alphabet.entries, weights)[0]
        tick += rng.randint(entry.min_gap, entry.max_gap)
        params = tuple((name, rng.choice(symbols)) for name, symbols in entry.params)
        if horizon is not None and tick > horizon:
            break
        actions.append(TimedAction(tick, entry.actor, entry.label, params))
    return AbstractTest(test_id, "random", tuple(actions))
