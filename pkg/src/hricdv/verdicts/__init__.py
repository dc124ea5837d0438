"""Requirement monitors, coverage collectors and campaign reports."""

from .coverage import CrossProductClass, classify_cross_product, code_coverage, handover_outcome, homecare_outcome
from .monitors import F, NC, P, REQUIREMENTS, Outcome, Requirement, judge
from .report import CampaignReport, MixedScenarioError, TestReport, accumulate, evaluate

__all__ = [
    "CampaignReport", "CrossProductClass", "F", "MixedScenarioError", "NC", "Outcome", "P",
    "REQUIREMENTS", "Requirement", "TestReport", "accumulate", "classify_cross_product",
    "code_coverage", "evaluate", "handover_outcome", "homecare_outcome", "judge",
]
