"""Per-test reports and campaign accumulation (JSON, CSV and coverage curve)."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

from ..scenarios import ScenarioConfig, SimulationLog, cover_points
from .coverage import HANDOVER_SUBGROUPS, HOMECARE_SUBGROUPS, classify_cross_product, code_coverage
from .monitors import F, NC, P, REQUIREMENTS, judge

CSV_COLUMNS_HEAD = ("id", "generator", "seed", "coverage")
CSV_COLUMNS_TAIL = ("subgroups",)


class MixedScenarioError(ValueError):
    pass


@dataclass(frozen=True)
class TestReport:
    __test__ = False  # not a pytest class

    scenario: str
    id: int
    generator: str
    seed: int | None
    coverage: float
    covered: frozenset[str]
    verdicts: dict[int, str]
    subgroups: tuple[int, ...]

    def to_dict(self) -> dict:
        return {
            "scenario": self.scenario, "id": self.id, "generator": self.generator, "seed": self.seed,
            "coverage": round(self.coverage, 4), "covered": sorted(self.covered),
            "verdicts": {str(k): v for k, v in sorted(self.verdicts.items())},
            "subgroups": list(self.subgroups),
        }


def evaluate(log: SimulationLog, config: ScenarioConfig | None = None) -> TestReport:
    """Coverage, verdicts and subgroups of one log."""
    scenario = log.header["scenario"]
    pct, covered = code_coverage(log, scenario)
    return TestReport(
        scenario,
        int(log.header.get("number", log.header.get("test", 0))),
        log.header.get("generator", ""),
        log.header.get("seed"),
        pct,
        covered,
        judge(log, config=config),
        tuple(sorted(c.subgroup for c in classify_cross_product(log, scenario))),
    )


@dataclass
class CampaignReport:
    scenario: str
    tests: list[TestReport] = field(default_factory=list)
    curve: list[float] = field(default_factory=list)
    verdict_counts: dict[int, dict[str, int]] = field(default_factory=dict)
    subgroup_hits: dict[int, int] = field(default_factory=dict)
    skipped: list[str] = field(default_factory=list)

    @property
    def final_coverage(self) -> float:
        return self.curve[-1] if self.curve else 0.0

    def to_json(self) -> str:
        doc = {
            "scenario": self.scenario,
            "tests": [t.to_dict() for t in self.tests],
            "coverage_curve": [round(c, 4) for c in self.curve],
            "final_coverage": round(self.final_coverage, 4),
            "verdict_counts": {str(k): v for k, v in sorted(self.verdict_counts.items())},
            "subgroup_hits": {str(k): v for k, v in sorted(self.subgroup_hits.items())},
            "skipped": self.skipped,
        }
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"

    def columns(self) -> list[str]:
        reqs = [f"req{r.id}" for r in REQUIREMENTS[self.scenario]]
        return [*CSV_COLUMNS_HEAD, *reqs, *CSV_COLUMNS_TAIL]

    def to_csv(self) -> str:
        """One row per test: id, generator, seed, coverage %, per-requirement verdicts, subgroups."""
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.columns())
        for t in self.tests:
            w.writerow([
                t.id, t.generator, "" if t.seed is None else t.seed, f"{t.coverage:.2f}",
                *(t.verdicts.get(r.id, NC) for r in REQUIREMENTS[self.scenario]),
                " ".join(map(str, t.subgroups)),
            ])
        return buf.getvalue()

    def curve_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["tests", "accumulated_coverage"])
        for i, c in enumerate(self.curve, start=1):
            w.writerow([i, f"{c:.4f}"])
        return buf.getvalue()


def accumulate(reports: list[TestReport], scenario: str | None = None) -> CampaignReport:
    """Fold per-test reports, in the given order, into a campaign report."""
    scenarios = {r.scenario for r in reports}
    if len(scenarios) > 1:
        raise MixedScenarioError(f"reports from several scenarios: {sorted(scenarios)}")
    if scenario is None:
        if not scenarios:
            raise ValueError("scenario needed for an empty campaign")
        scenario = scenarios.pop()
    elif scenarios and scenarios != {scenario}:
        raise MixedScenarioError(f"expected {scenario} reports, got {sorted(scenarios)}")
    total = len(cover_points(scenario))
    n_groups = HANDOVER_SUBGROUPS if scenario == "handover" else HOMECARE_SUBGROUPS
    rep = CampaignReport(
        scenario,
        verdict_counts={r.id: {P: 0, F: 0, NC: 0} for r in REQUIREMENTS[scenario]},
        subgroup_hits={g: 0 for g in range(1, n_groups + 1)},
    )
    seen: set[str] = set()
    for t in reports:
        rep.tests.append(t)
        seen |= t.covered
        rep.curve.append(100.0 * len(seen) / total)
        for rid, v in t.verdicts.items():
            rep.verdict_counts[rid][v] += 1
        for g in t.subgroups:
            rep.subgroup_hits[g] += 1
    return rep
