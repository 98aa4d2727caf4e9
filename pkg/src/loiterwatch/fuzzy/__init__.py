"""Fuzzy scoring: membership curves, rule base, Mamdani inference."""

from .config import (config_from_dict, config_to_dict, default_config,
                     load_config, save_config)
from .engine import (AggregatedOutput, EngineConfig, FuzzyEngine,
                     SuspicionScore, STATUS_INPUT_ERROR, STATUS_OK)
from .membership import (ConfigurationError, FuzzifiedValue, HOLD,
                         InputDataError, LinguisticVariable,
                         MembershipFunction, ZERO, clamp)
from .rules import And, Antecedent, Atom, Or, Rule, parse_antecedent
from .validation import ValidationReport, Violation, validate_config

__all__ = [
    "AggregatedOutput", "And", "Antecedent", "Atom", "ConfigurationError",
    "EngineConfig", "FuzzifiedValue", "FuzzyEngine", "HOLD", "InputDataError",
    "LinguisticVariable", "MembershipFunction", "Or", "Rule",
    "STATUS_INPUT_ERROR", "STATUS_OK", "SuspicionScore", "ValidationReport",
    "Violation", "ZERO", "clamp", "config_from_dict", "config_to_dict",
    "default_config", "load_config", "parse_antecedent", "save_config",
    "validate_config",
]
