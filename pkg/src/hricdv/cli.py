"""Command-line campaigns: generate tests, run them, and report coverage and verdicts.

Layout under ``--out``::

    tests/<scenario>/<method>/NNN.test
    logs/<scenario>/<method>/<profile>/NNN.jsonl
    reports/<scenario>/<method>/<profile>/campaign.json, campaign.csv, coverage_curve.csv

Exit codes: 0 success, 1 usage error, 2 completed with per-test failures,
3 internal error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .models import handover_bdi, homecare_bdi
from .scenarios import HANDOVER, HOMECARE, SimulationLog, default_config, simulate
from .testcase import ConcreteTest, TestFormatError, load
from .testgen import DEFAULT_COUNT, METHODS, SCENARIOS, CampaignSpec, abstract_pool, concretize
from .verdicts import accumulate, evaluate

EXIT_OK, EXIT_USAGE, EXIT_FAILURES, EXIT_INTERNAL = 0, 1, 2, 3
VOCABULARY_SIZES = {HANDOVER: 38, HOMECARE: 5}

log = logging.getLogger("hricdv")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


def check_vocabularies() -> None:
    """The verification agents' vocabularies have their fixed sizes."""
    sizes = {HANDOVER: len(handover_bdi.vocabulary()), HOMECARE: len(homecare_bdi.vocabulary())}
    if sizes != VOCABULARY_SIZES:
        raise RuntimeError(f"belief vocabulary sizes {sizes}, expected {VOCABULARY_SIZES}")


def test_dir(out: Path, scenario: str, method: str) -> Path:
    return out / "tests" / scenario / method


def log_dir(out: Path, scenario: str, method: str, profile: str) -> Path:
    return out / "logs" / scenario / method / profile


def report_dir(out: Path, scenario: str, method: str, profile: str) -> Path:
    return out / "reports" / scenario / method / profile


def _clear(directory: Path, pattern: str) -> None:
    directory.mkdir(parents=True, exist_ok=True)
    for old in directory.glob(pattern):
        old.unlink()


# -- gen ------------------------------------------------------------------------


def cmd_gen(spec: CampaignSpec, out: Path) -> int:
    """Write the campaign's concrete tests; test ``n`` is concretized with seed ``n``."""
    pool = abstract_pool(spec)
    if not pool:
        raise RuntimeError(f"{spec.scenario}/{spec.method}: no abstract test could be generated")
    target = test_dir(out, spec.scenario, spec.method)
    _clear(target, "*.test")
    failures = 0
    width = max(3, len(str(spec.size)))
    for n in range(1, spec.size + 1):
        try:
            test = concretize(pool[(n - 1) % len(pool)], n, spec.scenario)
        except Exception as exc:  # one bad test never aborts the campaign
            failures += 1
            log.warning("test %d: %s", n, exc)
            continue
        (target / f"{n:0{width}d}.test").write_text(test.dumps(), encoding="utf-8")
    log.info("wrote %d tests to %s", spec.size - failures, target)
    return EXIT_FAILURES if failures else EXIT_OK


# -- run ------------------------------------------------------------------------


def _run_one(job: tuple[str, str, str, str]) -> tuple[str, str | None, str | None]:
    path, scenario, profile, dest = job
    try:
        test = load(path)
        if not isinstance(test, ConcreteTest):
            raise TestFormatError("abstract test: concretize it first")
        sim_log = simulate(scenario, default_config(scenario, profile), test)
        sim_log.header["number"] = int(Path(path).stem)
        Path(dest).write_text(sim_log.dumps(), encoding="utf-8")
        return path, None, None
    except Exception as exc:
        return path, type(exc).__name__, str(exc)


def cmd_run(scenario: str, method: str, profile: str, out: Path, jobs: int = 1) -> int:
    """Simulate every test of a campaign, one fresh controller per test."""
    default_config(scenario, profile)
    source = test_dir(out, scenario, method)
    target = log_dir(out, scenario, method, profile)
    _clear(target, "*.jsonl")
    tests = sorted(source.glob("*.test")) if source.is_dir() else []
    if not tests:
        log.warning("no tests in %s", source)
        return EXIT_OK
    work = [(str(p), scenario, profile, str(target / f"{p.stem}.jsonl")) for p in tests]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_one, work, chunksize=8))
    else:
        results = [_run_one(w) for w in work]
    failures = [(p, kind, msg) for p, kind, msg in results if kind is not None]
    for p, kind, msg in failures:
        log.warning("%s: %s: %s", p, kind, msg)
    log.info("ran %d tests, %d failed", len(results), len(failures))
    return EXIT_FAILURES if failures else EXIT_OK


# -- report ---------------------------------------------------------------------


def cmd_report(scenario: str, method: str, profile: str, out: Path) -> int:
    """Fold a campaign's logs, in test-number order, into report files."""
    source = log_dir(out, scenario, method, profile)
    paths = sorted(source.glob("*.jsonl")) if source.is_dir() else []
    if not paths:
        log.warning("no logs in %s", source)
    reports, skipped = [], []
    for p in paths:
        try:
            sim_log = SimulationLog.loads(p.read_text(encoding="utf-8"))
            if sim_log.scenario != scenario:
                raise ValueError(f"log of scenario {sim_log.scenario}")
            reports.append(evaluate(sim_log, default_config(scenario, sim_log.header.get("profile", profile))))
        except Exception as exc:
            log.warning("skipping %s: %s", p.name, exc)
            skipped.append(p.name)
    campaign = accumulate(reports, scenario)
    campaign.skipped = skipped
    target = report_dir(out, scenario, method, profile)
    target.mkdir(parents=True, exist_ok=True)
    (target / "campaign.json").write_text(campaign.to_json(), encoding="utf-8")
    (target / "campaign.csv").write_text(campaign.to_csv(), encoding="utf-8")
    (target / "coverage_curve.csv").write_text(campaign.curve_csv(), encoding="utf-8")
    hits = " ".join(f"{g}:{n}" for g, n in campaign.subgroup_hits.items())
    print(f"{scenario}/{method}/{profile}: {len(reports)} tests, coverage {campaign.final_coverage:.2f}%, subgroups {hits}")
    for rid, counts in campaign.verdict_counts.items():
        print(f"  req{rid}: P={counts['P']} F={counts['F']} NC={counts['NC']}")
    return EXIT_FAILURES if skipped else EXIT_OK


# -- entry point ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hricdv", description="Generate, run and report HRI verification campaigns.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, with_profile: bool) -> None:
        p.add_argument("--scenario", required=True, choices=SCENARIOS)
        p.add_argument("--method", required=True, choices=METHODS)
        p.add_argument("--out", type=Path, default=Path("out"))
        if with_profile:
            p.add_argument("--profile", choices=("as-found", "fixed"), default="as-found")

    def gen_args(p) -> None:
        p.add_argument("--count", type=int, default=None, help=f"tests (default {DEFAULT_COUNT})")
        p.add_argument("--seed", type=int, default=0, help="base seed for the generators")

    p = sub.add_parser("gen", help="generate concrete tests")
    common(p, with_profile=False)
    gen_args(p)
    p = sub.add_parser("run", help="simulate generated tests")
    common(p, with_profile=True)
    p.add_argument("--jobs", type=int, default=1)
    p = sub.add_parser("report", help="summarize simulation logs")
    common(p, with_profile=True)
    p = sub.add_parser("campaign", help="gen, run and report in one go")
    common(p, with_profile=True)
    gen_args(p)
    p.add_argument("--jobs", type=int, default=1)
    return parser


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "jobs", 1) < 1:
            raise UsageError("--jobs must be >= 1")
        if getattr(args, "count", None) is not None and args.count < 1:
            raise UsageError("--count must be >= 1")
    except UsageError as exc:
        print(f"hricdv: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        check_vocabularies()
        if args.command in ("gen", "campaign"):
            spec = CampaignSpec(args.scenario, args.method, args.count, args.seed, getattr(args, "profile", "as-found"))
            status = cmd_gen(spec, args.out)
            if args.command == "gen":
                return status
            status = max(status, cmd_run(args.scenario, args.method, args.profile, args.out, args.jobs))
            return max(status, cmd_report(args.scenario, args.method, args.profile, args.out))
        if args.command == "run":
            return cmd_run(args.scenario, args.method, args.profile, args.out, args.jobs)
        return cmd_report(args.scenario, args.method, args.profile, args.out)
    except Exception as exc:
        log.error("internal error: %s: %s", type(exc).__name__, exc)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
