from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hricdv.testcase import AbstractTest, ConcreteTest, TestFormatError, TimedAction, dump, load, loads

names = st.text("abcdefghijklmnopqrstuvwxyz_", min_size=1, max_size=8)
symbols = st.sampled_from(["ok", "nok", "collide", "near", "far", "invalid"])
values = st.one_of(
    st.floats(-1e6, 1e6, allow_nan=False, allow_infinity=False),
    st.text("abcdefghijklmnopqrstuvwxyz", min_size=1, max_size=8),
)
actors = st.sampled_from(["human", "sensors", "dog"])


@st.composite
def action_lists(draw, value_strategy):
    n = draw(st.integers(0, 8))
    ticks = sorted(draw(st.lists(st.integers(0, 10_000), min_size=n, max_size=n)))
    out = []
    for t in ticks:
        keys = draw(st.lists(names, max_size=3, unique=True))
        params = tuple((k, draw(value_strategy)) for k in keys)
        out.append(TimedAction(t, draw(actors), draw(names), params))
    return tuple(out)


@given(st.integers(0, 10**6), st.sampled_from(["bdi", "mc", "random"]), action_lists(symbols))
def test_abstract_roundtrip(test_id, generator, actions):
    test = AbstractTest(test_id, generator, actions)
    assert loads(test.dumps()) == test
    assert loads(test.dumps()).dumps() == test.dumps()


@given(st.integers(0, 10**6), st.integers(0, 10**6), action_lists(values))
def test_concrete_roundtrip(test_id, seed, actions):
    test = ConcreteTest(test_id, "random", seed, actions)
    back = loads(test.dumps())
    assert back == test
    assert back.dumps() == test.dumps()


def test_file_roundtrip(tmp_path):
    test = ConcreteTest(3, "mc", 3, (TimedAction(5, "human", "activate"),))
    dump(test, tmp_path / "003.test")
    assert load(tmp_path / "003.test") == test


def test_robot_actor_rejected():
    with pytest.raises(TestFormatError):
        AbstractTest(1, "mc", (TimedAction(0, "robot", "release"),))


def test_decreasing_offsets_rejected():
    with pytest.raises(TestFormatError):
        AbstractTest(1, "mc", (TimedAction(5, "human", "a"), TimedAction(4, "human", "b")))


def test_unknown_generator_rejected():
    with pytest.raises(TestFormatError):
        AbstractTest(1, "fuzz", ())


@pytest.mark.parametrize("text", [
    "",
    "#tst 1 mc",
    "#test x mc",
    "#test 1 mc\nactivate human",
    "#test 1 mc\n@x human activate",
    "#test 1 mc\n@0 sensors gpl gaze=ok",
    "#test 1 mc 4\n@0 sensors gpl gaze∈ok",
])
def test_malformed_files_rejected(text):
    with pytest.raises(TestFormatError):
        loads(text)


def test_signature_ignores_id():
    acts = (TimedAction(0, "human", "feed"),)
    assert AbstractTest(1, "bdi", acts).signature() == AbstractTest(9, "bdi", acts).signature()
