from __future__ import annotations

from itertools import chain, combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hricdv.agent_kernel import Belief, VocabularyError, parse_term
from hricdv.models import handover_bdi, handover_ta, homecare_bdi
from hricdv.scenarios import HANDOVER, HOMECARE, actions_for, default_config, simulate
from hricdv.testcase import ENV_ACTORS, AbstractTest, TimedAction
from hricdv.testgen import (
    BeliefConstraint,
    CampaignSpec,
    ConfigurationError,
    GenerationError,
    NoTestDerivable,
    UnsatisfiableConstraint,
    abstract_pool,
    bdi_generate,
    campaign_tests,
    concretize,
    enumerate_belief_sets,
    mc_generate,
    random_alphabet,
    random_generate,
)
from hricdv.verdicts import classify_cross_product

B = parse_term
HANDOVER_VOCAB = handover_bdi.vocabulary()
HOMECARE_VOCAB = homecare_bdi.vocabulary()


def leg(k: int, g="ok", p="ok", l="ok") -> list[Belief]:
    return [B(f"request({k})"), B(f"ready({k})"), B(f"gaze({k},{g})"), B(f"pressure({k},{p})"), B(f"location({k},{l})")]


# -- universe sizes -------------------------------------------------------------


def test_vocabulary_sizes():
    assert len(HANDOVER_VOCAB) == len(set(HANDOVER_VOCAB)) == 38
    assert len(HOMECARE_VOCAB) == len(set(HOMECARE_VOCAB)) == 5
    assert 2 ** len(HANDOVER_VOCAB) == 274_877_906_944
    assert 2 ** len(HOMECARE_VOCAB) == 32


# -- bdi_generate ---------------------------------------------------------------


def test_empty_belief_set_gives_empty_test():
    assert bdi_generate(handover_bdi.model(), []).actions == ()
    assert bdi_generate(homecare_bdi.model(), []).actions == ()


def test_one_ready_leg():
    test = bdi_generate(handover_bdi.model(), leg(1))
    assert [(a.actor, a.label) for a in test.actions] == [
        ("human", "activate"), ("human", "ready"), ("sensors", "gpl")]
    assert test.actions[-1].params == (("gaze", "ok"), ("pressure", "ok"), ("distance", "ok"))


def test_four_ready_legs_classify_as_subgroup_one():
    beliefs = [b for k in range(1, 5) for b in leg(k)]
    test = bdi_generate(handover_bdi.model(), beliefs)
    labels = [a.label for a in test.actions]
    assert labels == ["activate", "ready", "gpl"] * 4
    log = simulate(HANDOVER, default_config(HANDOVER, "fixed"), concretize(test, 1, HANDOVER))
    assert len(log.select("release")) == 4
    assert 1 in {c.subgroup for c in classify_cross_product(log, HANDOVER)}


def test_truncated_trace_is_an_error():
    with pytest.raises(GenerationError, match="request"):
        bdi_generate(handover_bdi.model(), leg(1), max_cycles=3)


def test_out_of_vocabulary_belief_rejected():
    with pytest.raises(VocabularyError):
        bdi_generate(handover_bdi.model(), [B("request(9)")])


def test_bdi_tests_are_environment_only():
    for test in abstract_pool(CampaignSpec(HANDOVER, "bdi")) + abstract_pool(CampaignSpec(HOMECARE, "bdi")):
        assert all(a.actor in ENV_ACTORS for a in test.actions)


# -- enumerate_belief_sets ------------------------------------------------------

SUB_VOCAB = tuple(leg(1))  # request, ready and the three sensor beliefs of leg 1


def _powerset(items):
    return chain.from_iterable(combinations(items, n) for n in range(len(items) + 1))


def test_unique_minimal_set_matches_brute_force():
    def one_ready_leg(s):
        return B("request(1)") in s and all(b in s for b in SUB_VOCAB[1:])

    brute = [frozenset(c) for c in _powerset(SUB_VOCAB) if one_ready_leg(frozenset(c))]
    smallest = min(len(s) for s in brute)
    minimal = [s for s in brute if len(s) == smallest]
    assert len(minimal) == 1
    (got,) = enumerate_belief_sets(BeliefConstraint(predicate=one_ready_leg), 1, 0, SUB_VOCAB)
    assert frozenset(got) == minimal[0]


@settings(max_examples=60, deadline=None)
@given(
    st.sets(st.sampled_from(HOMECARE_VOCAB), max_size=2),
    st.sets(st.sampled_from(HOMECARE_VOCAB), max_size=2),
    st.integers(0, 5),
    st.integers(0, 1000),
)
def test_enumeration_matches_brute_force(required, forbidden, max_size, seed):
    forbidden = forbidden - required
    constraint = BeliefConstraint(frozenset(required), frozenset(forbidden), max_size=max_size)
    brute = {
        frozenset(c) for c in _powerset(HOMECARE_VOCAB)
        if required <= set(c) and not forbidden & set(c) and len(c) <= max_size
    }
    if not brute:
        with pytest.raises(UnsatisfiableConstraint):
            enumerate_belief_sets(constraint, 40, seed, HOMECARE_VOCAB)
        return
    got = enumerate_belief_sets(constraint, 40, seed, HOMECARE_VOCAB)
    assert {frozenset(s) for s in got} == brute
    assert len(got) == len(brute)
    sizes = [len(s) for s in got]
    assert sizes == sorted(sizes)
    assert got == enumerate_belief_sets(constraint, 40, seed, HOMECARE_VOCAB)


def test_enumeration_stops_at_count():
    got = enumerate_belief_sets(BeliefConstraint(), 7, 3, HANDOVER_VOCAB)
    assert len(got) == 7
    assert len({frozenset(s) for s in got}) == 7


def test_enumeration_rejects_bad_constraints():
    with pytest.raises(VocabularyError):
        enumerate_belief_sets(BeliefConstraint(required=frozenset({B("dance")})), 1, 0, HOMECARE_VOCAB)
    with pytest.raises(UnsatisfiableConstraint):
        both = frozenset({B("feed")})
        enumerate_belief_sets(BeliefConstraint(required=both, forbidden=both), 1, 0, HOMECARE_VOCAB)
    with pytest.raises(UnsatisfiableConstraint):
        enumerate_belief_sets(BeliefConstraint(predicate=lambda s: False), 1, 0, HOMECARE_VOCAB)
    with pytest.raises(ValueError):
        enumerate_belief_sets(BeliefConstraint(), 0, 0, HOMECARE_VOCAB)


# -- mc_generate ----------------------------------------------------------------


def test_release_query_yields_all_ok_triple():
    test = mc_generate(handover_ta.network(), "E<> robot.release && released >= 1", handover_ta.project)
    gpl = [a for a in test.actions if a.label == "gpl"]
    assert gpl[-1].params == (("gaze", "ok"), ("pressure", "ok"), ("distance", "ok"))
    log = simulate(HANDOVER, default_config(HANDOVER, "fixed"), concretize(test, 1, HANDOVER))
    assert log.select("release")


def test_await_timeout_query_omits_ready():
    test = mc_generate(handover_ta.network(), "E<> robot.timeout && exit == 1", handover_ta.project)
    labels = [a.label for a in test.actions]
    assert "activate" in labels and "ready" not in labels


def test_unreachable_query_has_no_test():
    with pytest.raises(NoTestDerivable):
        mc_generate(handover_ta.network(), "E<> released == 4 && discarded == 1")


def test_safety_query_cannot_generate():
    with pytest.raises(ValueError):
        mc_generate(handover_ta.network(), "A[] legs <= 4")


def test_witness_projection_drops_robot_steps():
    for test in abstract_pool(CampaignSpec(HANDOVER, "mc")) + abstract_pool(CampaignSpec(HOMECARE, "mc")):
        assert all(a.actor in ENV_ACTORS for a in test.actions)


# -- random_generate ------------------------------------------------------------


@given(st.integers(0, 10**9), st.integers(1, 12), st.sampled_from([HANDOVER, HOMECARE]))
def test_random_seed_determinism(seed, max_len, scenario):
    alphabet = random_alphabet(scenario)
    a = random_generate(alphabet, seed, max_len)
    assert a == random_generate(alphabet, seed, max_len)
    assert len(a.actions) <= max_len
    assert all(a2.actor in ENV_ACTORS for a2 in a.actions)


def test_random_homecare_labels():
    labels = {
        a.label for s in range(200) for a in random_generate(random_alphabet(HOMECARE), s, 6).actions if a.actor == "human"
    }
    assert labels == {"feed", "clean", "fridge", "sink", "invalid"}


def test_random_lengths_include_zero():
    lengths = {len(random_generate(random_alphabet(HANDOVER), s, 3).actions) for s in range(100)}
    assert lengths == {0, 1, 2, 3}


def test_random_horizon_and_bad_length():
    test = random_generate(random_alphabet(HOMECARE), 5, 10, horizon=100)
    assert all(a.offset <= 100 for a in test.actions)
    with pytest.raises(ValueError):
        random_generate(random_alphabet(HOMECARE), 5, 0)


# -- concretize -----------------------------------------------------------------


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 10**6))
def test_concretize_preserves_classification(pool_seed, seed):
    for scenario in (HANDOVER, HOMECARE):
        abstract = random_generate(random_alphabet(scenario), pool_seed, 8)
        conc = concretize(abstract, seed, scenario)
        assert conc == concretize(abstract, seed, scenario)
        specs = actions_for(scenario)
        for a, c in zip(abstract.actions, conc.actions):
            assert (a.offset, a.actor, a.label) == (c.offset, c.actor, c.label)
            spec = specs[(a.actor, a.label)]
            for (name, symbol), (_, value) in zip(a.params, c.params):
                assert spec.classify(name, value) == symbol


def test_distinct_seeds_change_only_values():
    abstract = bdi_generate(handover_bdi.model(), leg(1, g="nok"))
    one, two = concretize(abstract, 1, HANDOVER), concretize(abstract, 2, HANDOVER)
    assert one != two
    assert [(a.offset, a.label) for a in one.actions] == [(a.offset, a.label) for a in two.actions]


def test_concretize_missing_range():
    bad = AbstractTest(1, "mc", (TimedAction(0, "sensors", "gpl", (("gaze", "maybe"),)),))
    with pytest.raises(ConfigurationError):
        concretize(bad, 1, HANDOVER)
    with pytest.raises(ConfigurationError):
        concretize(AbstractTest(1, "mc", (TimedAction(0, "dog", "bark"),)), 1, HOMECARE)


# -- campaigns ------------------------------------------------------------------


def test_pool_sizes():
    assert len(abstract_pool(CampaignSpec(HANDOVER, "mc"))) == 91
    assert len(abstract_pool(CampaignSpec(HOMECARE, "mc"))) == 23
    for scenario, size in ((HANDOVER, 131), (HOMECARE, 50)):
        pool = abstract_pool(CampaignSpec(scenario, "bdi"))
        assert len(pool) == size
        assert len({t.signature() for t in pool}) == size


def test_campaign_seeds_are_test_numbers():
    tests = campaign_tests(CampaignSpec(HANDOVER, "mc"))
    assert len(tests) == 160
    assert [t.seed for t in tests] == list(range(1, 161))
    assert tests[91].abstract_id == tests[0].abstract_id == 1


def test_campaign_spec_validation():
    with pytest.raises(ValueError):
        CampaignSpec("kitchen", "bdi")
    with pytest.raises(ValueError):
        CampaignSpec(HANDOVER, "fuzz")
    with pytest.raises(ValueError):
        CampaignSpec(HANDOVER, "bdi", count=0)
    with pytest.raises(ValueError):
        CampaignSpec(HANDOVER, "bdi", profile="broken")
    assert CampaignSpec(HOMECARE, "random").size == 50


def _intent(test: AbstractTest) -> tuple[int, int]:
    """Legs and releases the BDI model meant: the first triple after each ready decides."""
    legs = len({a.offset for a in test.actions if a.label == "activate"})
    releases = 0
    waiting = False
    for a in test.actions:
        if a.label == "ready":
            waiting = True
        elif a.label == "gpl" and waiting:
            waiting = False
            releases += all(v == "ok" for _, v in a.params)
    return legs, releases


def test_bdi_handover_intent_preserved():
    cfg = default_config(HANDOVER, "fixed")
    for n, test in enumerate(abstract_pool(CampaignSpec(HANDOVER, "bdi")), start=1):
        log = simulate(HANDOVER, cfg, concretize(test, n, HANDOVER))
        legs = sum(e.payload["accepted"] for e in log.select("voice") if e.payload["command"] == "activate")
        assert (legs, len(log.select("release"))) == _intent(test), test.dumps()


def test_bdi_homecare_intent_preserved():
    cfg = default_config(HOMECARE, "fixed")
    for n, test in enumerate(abstract_pool(CampaignSpec(HOMECARE, "bdi")), start=1):
        log = simulate(HOMECARE, cfg, concretize(test, n, HOMECARE))
        asked = sorted(a.label for a in test.actions if a.actor == "human" and a.label != "invalid")
        done = sorted(e.payload["command"] for e in log.select("complete"))
        assert done == asked, test.dumps()
