"""Default campaign recipes: which abstract tests each generator ships.

A campaign of ``count`` tests draws a pool of distinct abstract tests from
one generator and cycles through it; test ``n`` (numbered from 1) is the
pool's ``(n - 1) % len(pool)``-th entry concretized with seed ``n``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from ..agent_kernel import Belief, BeliefSet
from ..models import handover_bdi, handover_ta, homecare_bdi, homecare_ta
from ..scenarios import HANDOVER, HOMECARE, default_config
from ..scenarios import handover as H
from ..scenarios.homecare import COMMANDS, TASKS
from ..testcase import AbstractTest, ConcreteTest
from .bdi import BeliefConstraint, bdi_generate, enumerate_belief_sets
from .concretize import concretize
from .mc import mc_generate_suite
from .random_gen import ActionAlphabet, AlphabetEntry, random_generate

SCENARIOS = (HANDOVER, HOMECARE)
METHODS = ("bdi", "mc", "random")
DEFAULT_COUNT = {HANDOVER: 160, HOMECARE: 50}
# distinct BDI abstract tests in the default pools
BDI_POOL = {HANDOVER: 131, HOMECARE: 50}
RANDOM_MAX_LEN = {HANDOVER: 8, HOMECARE: 4}
HORIZON_MARGIN = 600  # random actions stop this many ticks before the budget


@dataclass(frozen=True)
class CampaignSpec:
    scenario: str
    method: str
    count: int | None = None
    seed: int = 0
    profile: str = "as-found"

    def __post_init__(self) -> None:
        if self.scenario not in SCENARIOS:
            raise ValueError(f"unknown scenario {self.scenario!r}")
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        if self.count is not None and self.count < 1:
            raise ValueError("count must be >= 1")
        default_config(self.scenario, self.profile)  # validates the profile

    @property
    def size(self) -> int:
        return DEFAULT_COUNT[self.scenario] if self.count is None else self.count


# -- random alphabets -----------------------------------------------------------

_OK_NOK = ("ok", "nok")


def random_alphabet(scenario: str) -> ActionAlphabet:
    if scenario == HANDOVER:
        return ActionAlphabet((
            AlphabetEntry("human", "activate", min_gap=0, max_gap=300, weight=2),
            AlphabetEntry("human", "ready", min_gap=0, max_gap=300, weight=2),
            AlphabetEntry("human", "bored", min_gap=0, max_gap=300, weight=1),
            AlphabetEntry(
                "sensors", "gpl",
                (("gaze", _OK_NOK), ("pressure", _OK_NOK), ("distance", _OK_NOK)),
                min_gap=0, max_gap=300, weight=3,
            ),
        ))
    if scenario == HOMECARE:
        entries = [AlphabetEntry("human", c, min_gap=0, max_gap=600) for c in TASKS]
        entries.append(AlphabetEntry("human", "invalid", (("word", ("invalid",)),), min_gap=0, max_gap=600))
        entries.append(AlphabetEntry(
            "dog", "approach", (("distance", ("collide", "near", "far")),), min_gap=0, max_gap=600,
        ))
        return ActionAlphabet(tuple(entries))
    raise ValueError(f"unknown scenario {scenario!r}")


def random_pool(scenario: str, count: int, seed: int = 0) -> list[AbstractTest]:
    horizon = default_config(scenario, "as-found").budget - HORIZON_MARGIN
    alphabet = random_alphabet(scenario)
    return [
        random_generate(alphabet, seed * 100_003 + n, RANDOM_MAX_LEN[scenario], test_id=n, horizon=horizon)
        for n in range(1, count + 1)
    ]


# -- BDI belief-set recipes -----------------------------------------------------

LEG_OUTCOMES = ("ok", "nok", "noready", "bored", "silent")
LEG_WEIGHTS = (3, 3, 1, 1, 1)
LEG_COUNT_WEIGHTS = (1, 4, 4, 4, 4)  # for 0..4 requested legs


def _leg_beliefs(k: int, outcome: str, rng: random.Random) -> list[Belief]:
    if outcome == "bored":
        return [Belief("bored", (k,))]
    if outcome == "noready":
        return []
    out = [Belief("ready", (k,))]
    if outcome == "silent":
        # an incomplete triple: the sensors never publish
        present = rng.sample(handover_bdi.SENSORS, rng.randint(0, 2))
        return out + [Belief(s, (k, "ok")) for s in present]
    bad = set()
    if outcome == "nok":
        bad = set(rng.sample(handover_bdi.SENSORS, rng.randint(1, 3)))
    return out + [Belief(s, (k, "nok" if s in bad else "ok")) for s in handover_bdi.SENSORS]


def handover_belief_set(rng: random.Random) -> BeliefSet:
    """One draw: a number of legs and an outcome per leg, plus the two quirks."""
    k = rng.choices(range(H.MAX_LEGS + 1), LEG_COUNT_WEIGHTS)[0]
    beliefs: list[Belief] = []
    for leg in range(1, k + 1):
        beliefs.append(Belief("request", (leg,)))
        beliefs += _leg_beliefs(leg, rng.choices(LEG_OUTCOMES, LEG_WEIGHTS)[0], rng)
    if rng.random() < 0.3:
        beliefs.append(Belief("adjust"))
    if rng.random() < 0.2:
        beliefs.append(Belief("repeat"))
    return BeliefSet.of(beliefs, handover_bdi.vocabulary())


def _dedupe(tests, limit: int) -> list[AbstractTest]:
    seen: set = set()
    out: list[AbstractTest] = []
    for t in tests:
        sig = t.signature()
        if sig in seen:
            continue
        seen.add(sig)
        out.append(AbstractTest(len(out) + 1, t.generator, t.actions))
        if len(out) == limit:
            break
    return out


def _handover_bdi_candidates(seed: int):
    rng = random.Random(seed)
    model = handover_bdi.model()
    for _ in range(100_000):
        yield bdi_generate(model, handover_belief_set(rng))


def _homecare_bdi_candidates(seed: int):
    """Every command set of up to three beliefs, alone and with each dog behaviour."""
    sets = enumerate_belief_sets(BeliefConstraint(max_size=3), 2 ** len(COMMANDS), seed, homecare_bdi.vocabulary())
    rng = random.Random(seed)
    # plain sets first, so every command mix is represented, then the dog
    # behaviours taken in turn
    for s in sets:
        yield bdi_generate(homecare_bdi.model(), s)
    per_kind = []
    for kind in homecare_bdi.DOG_KINDS:
        jobs = [(s, t) for s in sets for t in TASKS if Belief(t) in set(s)]
        rng.shuffle(jobs)
        per_kind.append([(kind, s, t) for s, t in jobs])
    for group in zip(*per_kind):
        for kind, s, command in group:
            yield bdi_generate(homecare_bdi.dog_variant(kind, command), s)


def bdi_pool(scenario: str, seed: int = 0) -> list[AbstractTest]:
    if scenario == HANDOVER:
        return _dedupe(_handover_bdi_candidates(seed), BDI_POOL[HANDOVER])
    return _dedupe(_homecare_bdi_candidates(seed), BDI_POOL[HOMECARE])


# -- model-checking pools -------------------------------------------------------


def mc_pool(scenario: str) -> list[AbstractTest]:
    """One test per satisfiable property of the scenario's suite (unsatisfiable ones are skipped)."""
    m = handover_ta if scenario == HANDOVER else homecare_ta
    suite = mc_generate_suite(m.network(), m.queries(), m.project)
    return [t for t in suite if isinstance(t, AbstractTest)]


# -- campaigns ------------------------------------------------------------------


def abstract_pool(spec: CampaignSpec) -> list[AbstractTest]:
    if spec.method == "bdi":
        return bdi_pool(spec.scenario, spec.seed)
    if spec.method == "mc":
        return mc_pool(spec.scenario)
    return random_pool(spec.scenario, spec.size, spec.seed)


def campaign_tests(spec: CampaignSpec) -> list[ConcreteTest]:
    """The ``spec.size`` concrete tests of a campaign; test ``n`` uses seed ``n``."""
    pool = abstract_pool(spec)
    if not pool:
        raise ValueError(f"{spec.scenario}/{spec.method}: empty abstract pool")
    return [concretize(pool[(n - 1) % len(pool)], n, spec.scenario) for n in range(1, spec.size + 1)]
