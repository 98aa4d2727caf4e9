"""Fog-side contextualization and alarm decisions.

The fog node joins edge feature records with per-camera deployment context
(placement, security tier, timezone), derives the local hour of day, runs
the fuzzy scorer per object, and compares against a context-shifted alarm
threshold. Context never rescales scores; it only moves the threshold.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .fuzzy import FuzzyEngine, STATUS_OK, SuspicionScore
from .logs import DecisionLog, ErrorLog
from .tracking import FeatureRecord

INDOOR = "indoor"
OUTDOOR = "outdoor"


@dataclass(frozen=True)
class CameraContext:
    camera_id: str
    placement: str = INDOOR          # indoor | outdoor
    security_level: int = 1          # 1 (routine) .. 3 (sensitive)
    timezone_offset: float = 0.0     # hours added to stream timestamps

    def __post_init__(self):
        if self.placement not in (INDOOR, OUTDOOR):
            raise ValueError(f"camera {self.camera_id!r}: bad placement {self.placement!r}")
        if not 1 <= self.security_level <= 3:
            raise ValueError(f"camera {self.camera_id!r}: security_level must be 1..3")


@dataclass(frozen=True)
class AlarmPolicy:
    """Threshold policy: a base value shifted down for riskier contexts."""

    base_threshold: float = 60.0
    tier_step: float = 10.0            # per security level above 1
    outdoor_after_hours_step: float = 5.0
    after_hours_start: float = 22.0    # inclusive
    after_hours_end: float = 6.0       # exclusive
    min_threshold: float = 30.0
    max_threshold: float = 90.0

    def is_after_hours(self, hour: float) -> bool:
        return hour >= self.after_hours_start or hour < self.after_hours_end

    def threshold_for(self, ctx: CameraContext, hour: float) -> float:
        value = self.base_threshold
        value -= self.tier_step * (ctx.security_level - 1)
        if ctx.placement == OUTDOOR and self.is_after_hours(hour):
            value -= self.outdoor_after_hours_step
        return min(max(value, self.min_threshold), self.max_threshold)


def alarm_threshold(ctx: CameraContext, hour: float,
                    policy: AlarmPolicy | None = None) -> float:
    return (policy or AlarmPolicy()).threshold_for(ctx, hour)


def hour_of_day(timestamp: float, ctx: CameraContext) -> float:
    """Local hour in [0, 24) from a stream timestamp in seconds."""
    hour = (timestamp / 3600.0 + ctx.timezone_offset) % 24.0
    # Float modulo can round a tiny negative operand up to exactly 24.0.
    return 0.0 if hour >= 24.0 else hour


@dataclass(frozen=True)
class ContextualizedFeatures:
    camera_id: str
    track_id: int
    frame_index: int
    timestamp: float
    hour: float
    dwell_time: float
    speed_change_count: int
    direction_change_count: int
    people_count: int

    def engine_inputs(self) -> dict[str, float]:
        return {
            "hour": self.hour,
            "dwell-time": self.dwell_time,
            "speed-changes": float(self.speed_change_count),
            "direction-changes": float(self.direction_change_count),
            "people-count": float(self.people_count),
        }


@dataclass(frozen=True)
class SuspicionReport:
    camera_id: str
    track_id: int
    frame_index: int
    timestamp: float
    score: SuspicionScore
    threshold: float
    alarm: bool


def contextualize(record: FeatureRecord, ctx: CameraContext) -> list[ContextualizedFeatures]:
    """One entry per tracked object, annotated with local hour and camera."""
    hour = hour_of_day(record.timestamp, ctx)
    return [
        ContextualizedFeatures(
            camera_id=ctx.camera_id,
            track_id=obj.track_id,
            frame_index=record.frame_index,
            timestamp=record.timestamp,
            hour=hour,
            dwell_time=obj.dwell_time,
            speed_change_count=obj.speed_change_count,
            direction_change_count=obj.direction_change_count,
            people_count=record.people_count,
        )
        for obj in record.objects
    ]


def decide(features: ContextualizedFeatures, engine: FuzzyEngine,
           policy: AlarmPolicy, ctx: CameraContext) -> SuspicionReport:
    """Score one object and apply the context-shifted threshold.

    Input-error scores are forced to 0 by the engine and never alarm.
    """
    object_id = f"{features.camera_id}/{features.track_id}"
    score = engine.score_object(features.engine_inputs(), object_id=object_id)
    threshold = policy.threshold_for(ctx, features.hour)
    alarm = score.status == STATUS_OK and score.value >= threshold
    return SuspicionReport(
        camera_id=features.camera_id,
        track_id=features.track_id,
        frame_index=features.frame_index,
        timestamp=features.timestamp,
        score=score,
        threshold=threshold,
        alarm=alarm,
    )


class FogPipeline:
    """Contextualize-score-decide loop over incoming feature records."""

    def __init__(self, engine: FuzzyEngine, cameras: dict[str, CameraContext],
                 policy: AlarmPolicy | None = None,
                 decision_log: DecisionLog | None = None,
                 error_log: ErrorLog | None = None):
        self.engine = engine
        self.cameras = dict(cameras)
        self.policy = policy or AlarmPolicy()
        self.decision_log = decision_log if decision_log is not None else DecisionLog()
        self.error_log = error_log or engine.error_log

    def add_camera(self, ctx: CameraContext) -> None:
        self.cameras[ctx.camera_id] = ctx

    def process_record(self, camera_id: str, record: FeatureRecord) -> list[SuspicionReport]:
        ctx = self.cameras.get(camera_id)
        if ctx is None:
            self.error_log.append(camera_id, "record from unknown camera rejected")
            return []
        reports = []
        for features in contextualize(record, ctx):
            report = decide(features, self.engine, self.policy, ctx)
            self.decision_log.append(
                report.timestamp, report.camera_id, report.track_id,
                report.score.value, report.threshold, report.alarm,
                report.score.status,
            )
            reports.append(report)
        return reports


def load_policy(path: str | Path) -> AlarmPolicy:
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    return AlarmPolicy(**data)


def load_cameras(path: str | Path) -> dict[str, CameraContext]:
    """Camera contexts from JSON keyed by camera_id."""
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    return {
        camera_id: CameraContext(camera_id=camera_id, **attrs)
        for camera_id, attrs in data.items()
    }
