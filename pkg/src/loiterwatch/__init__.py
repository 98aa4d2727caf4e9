"""loiterwatch: edge-to-fog loitering suspicion scoring pipeline.

Edge cameras track people, summarize per-track movement (dwell, speed and
direction changes), and ship compact feature records to a fog node, which
adds deployment context and scores each object with a fuzzy rule base on a
0-100 suspicion scale; scores at or above a context-shifted threshold raise
alarms. A CLI harness generates synthetic scenarios, replays them through
the pipeline (in-process or over TCP) and evaluates alarm quality.
"""

from .context import (AlarmPolicy, CameraContext, ContextualizedFeatures,
                      FogPipeline, SuspicionReport, alarm_threshold,
                      contextualize, decide, hour_of_day, load_cameras,
                      load_policy)
from .fuzzy import (EngineConfig, FuzzyEngine, SuspicionScore, default_config,
                    load_config, validate_config)
from .logs import DecisionLog, ErrorLog
from .tracking import (Detection, FeatureRecord, ObjectFeatures,
                       TrackerParams, TrackFeatureExtractor, TrackState,
                       build_feature_record, iou, reconcile_detections,
                       update_kinematics)
from .transport import (FeatureSender, FogReceiver, TransportConfig,
                        WireMessage, decode_record, encode_record,
                        generate_keypair, measure_latency)

__version__ = "0.1.0"

__all__ = [
    "AlarmPolicy", "CameraContext", "ContextualizedFeatures", "DecisionLog",
    "Detection", "EngineConfig", "ErrorLog", "FeatureRecord", "FeatureSender",
    "FogPipeline", "FogReceiver", "FuzzyEngine", "ObjectFeatures",
    "SuspicionReport", "SuspicionScore", "TrackFeatureExtractor",
    "TrackState", "TrackerParams", "TransportConfig", "WireMessage",
    "alarm_threshold", "build_feature_record", "contextualize", "decide",
    "decode_record", "default_config", "encode_record", "generate_keypair",
    "hour_of_day", "iou", "load_cameras", "load_config", "load_policy",
    "measure_latency", "reconcile_detections", "update_kinematics",
    "validate_config",
]
