from __future__ import annotations

import json
import math

import pytest
from hypothesis import given, strategies as st

from loiterwatch.context import (
    AlarmPolicy,
    CameraContext,
    FogPipeline,
    alarm_threshold,
    contextualize,
    decide,
    hour_of_day,
    load_cameras,
    load_policy,
)
from loiterwatch.fuzzy import FuzzyEngine, default_config
from loiterwatch.tracking import FeatureRecord, ObjectFeatures


def cam(**kwargs):
    return CameraContext(camera_id="cam-1", **kwargs)


class TestHourOfDay:
    def test_plain_utc(self):
        assert hour_of_day(3600.0 * 7, cam()) == 7.0

    def test_wraps_past_midnight(self):
        assert hour_of_day(3600.0 * 25, cam()) == 1.0

    def test_timezone_offset(self):
        assert hour_of_day(3600.0 * 23, cam(timezone_offset=3.0)) == 2.0
        assert hour_of_day(3600.0 * 1, cam(timezone_offset=-2.5)) == 22.5

    def test_fractional_hours(self):
        assert hour_of_day(3600.0 * 10 + 1800.0, cam()) == 10.5

    @given(ts=st.floats(0, 1e9, allow_nan=False),
           tz=st.floats(-12, 14, allow_nan=False))
    def test_always_in_day_range(self, ts, tz):
        hour = hour_of_day(ts, cam(timezone_offset=tz))
        assert 0.0 <= hour < 24.0


class TestThreshold:
    def test_tier_one_indoor_daytime(self):
        assert alarm_threshold(cam(), 12.0) == 60.0

    def test_tier_steps_lower_threshold(self):
        assert alarm_threshold(cam(security_level=2), 12.0) == 50.0
        assert alarm_threshold(cam(security_level=3), 12.0) == 40.0

    def test_outdoor_after_hours_bonus(self):
        outdoor = cam(placement="outdoor", security_level=3)
        assert alarm_threshold(outdoor, 23.0) == 35.0
        assert alarm_threshold(outdoor, 3.0) == 35.0
        assert alarm_threshold(outdoor, 12.0) == 40.0

    def test_after_hours_boundaries(self):
        policy = AlarmPolicy()
        assert policy.is_after_hours(22.0)
        assert policy.is_after_hours(5.99)
        assert not policy.is_after_hours(6.0)
        assert not policy.is_after_hours(21.99)

    def test_indoor_after_hours_gets_no_bonus(self):
        assert alarm_threshold(cam(security_level=3), 23.0) == 40.0

    def test_clamped_to_floor(self):
        policy = AlarmPolicy(base_threshold=40.0)
        outdoor = cam(placement="outdoor", security_level=3)
        assert policy.threshold_for(outdoor, 23.0) == 30.0

    def test_clamped_to_ceiling(self):
        policy = AlarmPolicy(base_threshold=130.0)
        assert policy.threshold_for(cam(), 12.0) == 90.0


class TestCameraContext:
    def test_rejects_bad_placement(self):
        with pytest.raises(ValueError):
            cam(placement="rooftop")

    def test_rejects_bad_tier(self):
        for level in (0, 4):
            with pytest.raises(ValueError):
                cam(security_level=level)


def record_with(dwell, speed=0, direction=0, people=1, ts=3600.0 * 3):
    objects = tuple(
        ObjectFeatures(track_id=i + 1, dwell_time=dwell,
                       speed_change_count=speed, direction_change_count=direction)
        for i in range(people))
    return FeatureRecord(frame_index=10, timestamp=ts, people_count=people,
                         objects=objects)


def test_contextualize_maps_engine_inputs():
    record = record_with(dwell=12.5, speed=2, direction=3, people=2)
    features = contextualize(record, cam())
    assert len(features) == 2
    inputs = features[0].engine_inputs()
    assert inputs == {"hour": 3.0, "dwell-time": 12.5, "speed-changes": 2.0,
                      "direction-changes": 3.0, "people-count": 2.0}


class TestDecide:
    def test_alarm_iff_ok_and_at_threshold(self, engine):
        policy = AlarmPolicy()
        context = cam()
        night = contextualize(record_with(dwell=25.0), context)[0]
        report = decide(night, engine, policy, context)
        assert report.score.ok and report.score.value >= report.threshold
        assert report.alarm

        calm = contextualize(record_with(dwell=0.0, ts=3600.0 * 11), context)[0]
        report = decide(calm, engine, policy, context)
        assert report.score.ok and report.score.value < report.threshold
        assert not report.alarm

    def test_input_error_never_alarms(self, engine):
        policy = AlarmPolicy(base_threshold=0.0, min_threshold=0.0)
        context = cam()
        broken = contextualize(record_with(dwell=math.nan), context)[0]
        report = decide(broken, engine, policy, context)
        assert report.score.status == "input-error"
        assert report.score.value == 0.0
        assert not report.alarm  # 0 >= 0, yet status blocks the alarm


class TestFogPipeline:
    @pytest.fixture()
    def pipeline(self):
        engine = FuzzyEngine(default_config())
        cameras = {"cam-1": cam()}
        return FogPipeline(engine, cameras)

    def test_processes_known_camera(self, pipeline):
        reports = pipeline.process_record("cam-1", record_with(dwell=25.0))
        assert len(reports) == 1
        assert reports[0].camera_id == "cam-1"
        assert len(pipeline.decision_log.rows) == 1

    def test_rejects_unknown_camera(self, pipeline):
        reports = pipeline.process_record("cam-9", record_with(dwell=25.0))
        assert reports == []
        assert len(pipeline.error_log.entries) == 1
        assert pipeline.decision_log.rows == []

    def test_decision_log_row_shape(self, pipeline):
        pipeline.process_record("cam-1", record_with(dwell=25.0))
        row = pipeline.decision_log.rows[0]
        assert row[1] == "cam-1"
        assert row[5] in ("0", "1")
        assert row[6] == "ok"


def test_load_policy_and_cameras(tmp_path):
    policy_path = tmp_path / "policy.json"
    policy_path.write_text(json.dumps({"base_threshold": 55.0, "tier_step": 5.0}))
    policy = load_policy(policy_path)
    assert policy.base_threshold == 55.0
    assert policy.tier_step == 5.0
    assert policy.max_threshold == 90.0  # unset fields keep defaults

    cameras_path = tmp_path / "cameras.json"
    cameras_path.write_text(json.dumps({
        "lobby": {"placement": "indoor", "security_level": 2},
        "gate": {"placement": "outdoor", "security_level": 3,
                 "timezone_offset": -5.0},
    }))
    cameras = load_cameras(cameras_path)
    assert set(cameras) == {"lobby", "gate"}
    assert cameras["gate"].camera_id == "gate"
    assert cameras["gate"].timezone_offset == -5.0
    assert cameras["lobby"].security_level == 2
