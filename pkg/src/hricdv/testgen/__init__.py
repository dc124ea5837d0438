"""Test generators (BDI agents, model checking, pseudorandom) and concretization."""

from .bdi import (
    TICKS_PER_CYCLE,
    BeliefConstraint,
    GenerationError,
    UnsatisfiableConstraint,
    bdi_generate,
    enumerate_belief_sets,
)
from .campaign import (
    DEFAULT_COUNT,
    METHODS,
    SCENARIOS,
    CampaignSpec,
    abstract_pool,
    campaign_tests,
    random_alphabet,
)
from .concretize import ConfigurationError, concretize
from .mc import NoTestDerivable, mc_generate, mc_generate_suite, project_witness
from .random_gen import ActionAlphabet, AlphabetEntry, random_generate
from .replay import log_reaches

__all__ = [
    "TICKS_PER_CYCLE", "BeliefConstraint", "GenerationError", "UnsatisfiableConstraint", "bdi_generate",
    "enumerate_belief_sets", "DEFAULT_COUNT", "METHODS", "SCENARIOS", "CampaignSpec", "abstract_pool",
    "campaign_tests", "random_alphabet", "ConfigurationError", "concretize", "NoTestDerivable", "mc_generate",
    "mc_generate_suite", "project_witness", "ActionAlphabet", "AlphabetEntry", "random_generate", "log_reaches",
]
