"""Abstract and concrete test cases and their line-based file format.

A test file looks like::

    #test 12 bdi 12
    @0 human activate
    @50 sensors gpl gaze=3.2 pressure=0.71 distance=12.4

Abstract tests omit the seed and use symbolic parameters (``gaze∈ok``);
concrete tests carry instantiated values (``gaze=3.2``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

GENERATORS = ("bdi", "mc", "random")
ENV_ACTORS = ("human", "sensors", "dog")


class TestFormatError(ValueError):
    __test__ = False  # not a pytest class


@dataclass(frozen=True)
class TimedAction:
    offset: int
    actor: str
    label: str
    params: tuple[tuple[str, str | float], ...] = ()

    def param(self, name: str):
        for k, v in self.params:
            if k == name:
                return v
        raise KeyError(name)


def _check_actions(actions: tuple[TimedAction, ...]) -> None:
    last = 0
    for a in actions:
        if a.actor not in ENV_ACTORS:
            raise TestFormatError(f"actor {a.actor!r} is not an environment entity")
        if a.offset < last:
            raise TestFormatError("action offsets must be non-decreasing")
        last = a.offset


@dataclass(frozen=True)
class AbstractTest:
    id: int
    generator: str
    actions: tuple[TimedAction, ...] = ()

    def __post_init__(self) -> None:
        if self.generator not in GENERATORS:
            raise TestFormatError(f"unknown generator {self.generator!r}")
        _check_actions(self.actions)

    def signature(self) -> tuple:
        """Identity used for duplicate filtering (ignores the id)."""
        return tuple((a.offset, a.actor, a.label, a.params) for a in self.actions)

    def dumps(self) -> str:
        return _dump(f"#test {self.id} {self.generator}", self.actions, "∈")


@dataclass(frozen=True)
class ConcreteTest:
    abstract_id: int
    generator: str
    seed: int
    actions: tuple[TimedAction, ...] = ()
    scenario: str | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.generator not in GENERATORS:
            raise TestFormatError(f"unknown generator {self.generator!r}")
        _check_actions(self.actions)

    def dumps(self) -> str:
        return _dump(f"#test {self.abstract_id} {self.generator} {self.seed}", self.actions, "=")


def _fmt_value(v) -> str:
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _dump(header: str, actions, sep: str) -> str:
    lines = [header]
    for a in actions:
        parts = [f"@{a.offset}", a.actor, a.label]
        parts += [f"{k}{sep}{_fmt_value(v)}" for k, v in a.params]
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"


def _parse_value(text: str):
    # floats are always written by repr(), which keeps a '.' or exponent
    if any(c.isdigit() for c in text) and any(c in text for c in ".e"):
        try:
            return float(text)
        except ValueError:
            pass
    return text


def loads(text: str) -> AbstractTest | ConcreteTest:
    """Parse a test file; returns an AbstractTest when the header has no seed."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("#test"):
        raise TestFormatError("missing '#test' header")
    head = lines[0].split()
    if len(head) not in (3, 4):
        raise TestFormatError(f"bad header: {lines[0]!r}")
    try:
        test_id = int(head[1])
        seed = int(head[3]) if len(head) == 4 else None
    except ValueError as exc:
        raise TestFormatError(f"bad header: {lines[0]!r}") from exc
    concrete = seed is not None
    actions = []
    for n, ln in enumerate(lines[1:], start=2):
        parts = ln.split()
        if len(parts) < 3 or not parts[0].startswith("@"):
            raise TestFormatError(f"line {n}: expected '@<tick> <actor> <action> ...'")
        try:
            tick = int(parts[0][1:])
        except ValueError as exc:
            raise TestFormatError(f"line {n}: bad tick {parts[0]!r}") from exc
        params = []
        for tok in parts[3:]:
            if concrete:
                if "=" not in tok:
                    raise TestFormatError(f"line {n}: concrete param needs '=': {tok!r}")
                k, v = tok.split("=", 1)
                params.append((k, _parse_value(v)))
            else:
                if "∈" not in tok:
                    raise TestFormatError(f"line {n}: abstract param needs '∈': {tok!r}")
                k, v = tok.split("∈", 1)
                params.append((k, v))
        actions.append(TimedAction(tick, parts[1], parts[2], tuple(params)))
    if concrete:
        return ConcreteTest(test_id, head[2], seed, tuple(actions))
    return AbstractTest(test_id, head[2], tuple(actions))


def load(path: str | Path) -> AbstractTest | ConcreteTest:
    return loads(Path(path).read_text(encoding="utf-8"))


def dump(test: AbstractTest | ConcreteTest, path: str | Path) -> None:
    Path(path).write_text(test.dumps(), encoding="utf-8")
