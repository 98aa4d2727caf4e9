"""Benchmarks for the decision path and the transport link."""

from __future__ import annotations

import random
import resource
import time
from dataclasses import dataclass, field

from ..context import AlarmPolicy, CameraContext, ContextualizedFeatures, decide
from ..fuzzy import EngineConfig, FuzzyEngine, default_config
from ..tracking import FeatureRecord, ObjectFeatures
from ..transport import LatencyStats, TransportConfig, measure_latency


@dataclass
class DecisionBenchResult:
    decisions: int
    mean_ms: float
    p95_ms: float
    max_ms: float
    wall_s: float
    max_rss_kb: int
    alarms: int


def bench_decision(records: int = 10_000, objects_per_record: int = 2,
                   seed: int = 9, engine_config: EngineConfig | None = None) -> DecisionBenchResult:
    """Time score+decide per object over synthetic contextualized features."""
    rng = random.Random(seed)
    engine = FuzzyEngine(engine_config or default_config())
    policy = AlarmPolicy()
    ctx = CameraContext(camera_id="bench")

    features = []
    for i in range(records):
        hour = rng.uniform(0.0, 24.0)
        for k in range(objects_per_record):
            features.append(ContextualizedFeatures(
                camera_id="bench", track_id=k + 1, frame_index=i,
                timestamp=hour * 3600.0, hour=hour,
                dwell_time=rng.uniform(0.0, 30.0),
                speed_change_count=rng.randrange(0, 12),
                direction_change_count=rng.randrange(0, 12),
                people_count=rng.randrange(1, 15),
            ))

    timings = []
    alarms = 0
    started = time.perf_counter()
    for f in features:
        t0 = time.perf_counter()
        report = decide(f, engine, policy, ctx)
        timings.append(time.perf_counter() - t0)
        alarms += report.alarm
    wall = time.perf_counter() - started

    timings.sort()
    n = len(timings)
    return DecisionBenchResult(
        decisions=n,
        mean_ms=1000.0 * sum(timings) / n,
        p95_ms=1000.0 * timings[min(n - 1, int(0.95 * (n - 1) + 0.5))],
        max_ms=1000.0 * timings[-1],
        wall_s=wall,
        max_rss_kb=resource.getrusage(resource.RUSAGE_SELF).ru_maxrss,
        alarms=alarms,
    )


def synthetic_records(count: int, objects_low: int, objects_high: int,
                      seed: int = 5) -> list[FeatureRecord]:
    """Deterministic feature records with a bounded object count range."""
    rng = random.Random(seed)
    records = []
    for i in range(count):
        n = rng.randint(objects_low, objects_high)
        objects = tuple(
            ObjectFeatures(
                track_id=k + 1,
                dwell_time=round(rng.uniform(0.0, 30.0), 3),
                speed_change_count=rng.randrange(0, 10),
                direction_change_count=rng.randrange(0, 10),
            )
            for k in range(n)
        )
        records.append(FeatureRecord(
            frame_index=i, timestamp=round(i * 0.2, 3),
            people_count=n, objects=objects,
        ))
    return records


def bench_transport(config: TransportConfig, records: int = 1000,
                    objects_low: int = 0, objects_high: int = 2,
                    seed: int = 5) -> tuple[LatencyStats, bool]:
    """Loopback latency run; returns (stats, decoded-equals-sent)."""
    sent = synthetic_records(records, objects_low, objects_high, seed=seed)
    stats, received = measure_latency(config, sent)
    return stats, received == sent
