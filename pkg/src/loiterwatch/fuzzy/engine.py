"""Mamdani-style inference: fuzzify, clip, aggregate, centroid.

The engine is immutable after construction and safe to share across
threads. Output member curves are pre-sampled on a uniform grid over the
output domain; inference clips each firing rule's consequent curve at the
rule's premise weight and aggregates by pointwise maximum. Defuzzification
is the centroid of that envelope on the same grid.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from ..logs import ErrorLog
from .membership import (ConfigurationError, FuzzifiedValue, InputDataError,
                         LinguisticVariable)
from .rules import Rule

STATUS_OK = "ok"
STATUS_INPUT_ERROR = "input-error"

DEFAULT_GRID_RESOLUTION = 1001


@dataclass(frozen=True)
class EngineConfig:
    """Validated variable set, output variable name and rule base."""

    variables: tuple[LinguisticVariable, ...]
    output: str
    rules: tuple[Rule, ...]
    grid_resolution: int = DEFAULT_GRID_RESOLUTION

    def __post_init__(self):
        names = [v.name for v in self.variables]
        if len(names) != len(set(names)):
            raise ConfigurationError("duplicate variable names")
        if self.output not in names:
            raise ConfigurationError(f"output variable {self.output!r} not defined")
        if not self.rules:
            raise ConfigurationError("rule base is empty")
        if self.grid_resolution < 2:
            raise ConfigurationError("grid_resolution must be >= 2")

    def variable(self, name: str) -> LinguisticVariable:
        for v in self.variables:
            if v.name == name:
                return v
        raise ConfigurationError(f"no variable {name!r}")

    @property
    def input_names(self) -> list[str]:
        return [v.name for v in self.variables if v.name != self.output]

    @property
    def output_variable(self) -> LinguisticVariable:
        return self.variable(self.output)


@dataclass(frozen=True)
class AggregatedOutput:
    """Clipped consequent curves and their pointwise-max envelope."""

    grid: np.ndarray
    envelope: np.ndarray
    activations: dict[str, tuple[float, np.ndarray]]  # rule id -> (weight, clipped curve)


@dataclass(frozen=True)
class SuspicionScore:
    value: float
    status: str = STATUS_OK
    error_detail: str | None = None

    @property
    def ok(self) -> bool:
        return self.status == STATUS_OK


@dataclass
class FuzzyEngine:
    config: EngineConfig
    error_log: ErrorLog = field(default_factory=ErrorLog)

    def __post_init__(self):
        out = self.config.output_variable
        lo, hi = out.domain
        self._grid = np.linspace(lo, hi, self.config.grid_resolution)
        # Pre-sampled consequent curves, keyed by output label.
        self._curves = {
            m.label: np.array([m.evaluate(z) for z in self._grid])
            for m in out.members
        }
        self._inputs = self.config.input_names

    @property
    def grid(self) -> np.ndarray:
        return self._grid

    def fuzzify(self, variable: str, x: float) -> FuzzifiedValue:
        return self.config.variable(variable).fuzzify(x)

    def fuzzify_all(self, inputs: Mapping[str, float]) -> dict[str, FuzzifiedValue]:
        env = {}
        for name in self._inputs:
            if name not in inputs:
                raise InputDataError(f"missing input {name!r}")
            env[name] = self.fuzzify(name, inputs[name])
        return env

    def infer(self, env: Mapping[str, FuzzifiedValue]) -> AggregatedOutput:
        """Clip each enabled rule's consequent at its premise weight.

        Rules with zero weight contribute nothing and are skipped; a fully
        silent rule base yields an all-zero envelope.
        """
        envelope = np.zeros_like(self._grid)
        activations: dict[str, tuple[float, np.ndarray]] = {}
        for rule in self.config.rules:
            if not rule.enabled:
                continue
            w = rule.evaluate(env)
            if w <= 0.0:
                continue
            clipped = np.minimum(w, self._curves[rule.consequent])
            activations[rule.rule_id] = (w, clipped)
            np.maximum(envelope, clipped, out=envelope)
        return AggregatedOutput(grid=self._grid, envelope=envelope, activations=activations)

    def aggregate(self, weights: Mapping[str, float]) -> AggregatedOutput:
        """Aggregate direct per-output-label activation weights.

        Same clip-and-max path as infer, bypassing the rule base; used for
        diagnostics and engine verification.
        """
        envelope = np.zeros_like(self._grid)
        activations: dict[str, tuple[float, np.ndarray]] = {}
        for label, w in weights.items():
            if label not in self._curves:
                raise ConfigurationError(f"no output member {label!r}")
            if w <= 0.0:
                continue
            clipped = np.minimum(w, self._curves[label])
            activations[label] = (w, clipped)
            np.maximum(envelope, clipped, out=envelope)
        return AggregatedOutput(grid=self._grid, envelope=envelope, activations=activations)

    def defuzzify(self, agg: AggregatedOutput) -> SuspicionScore:
        """Centroid of the envelope; an all-zero envelope scores 0."""
        mass = float(agg.envelope.sum())
        if mass <= 0.0:
            return SuspicionScore(value=0.0)
        value = float((agg.grid * agg.envelope).sum() / mass)
        return SuspicionScore(value=value)

    def score_object(self, inputs: Mapping[str, float], object_id: str = "") -> SuspicionScore:
        """Score one object's feature inputs on the output scale.

        Any non-finite or missing input short-circuits to status
        input-error with value exactly 0 and appends one error-log line;
        alarms are never raised from such scores.
        """
        try:
            env = self.fuzzify_all(inputs)
        except InputDataError as exc:
            self.error_log.append(object_id or "-", str(exc))
            return SuspicionScore(value=0.0, status=STATUS_INPUT_ERROR, error_detail=str(exc))
        return self.defuzzify(self.infer(env))
