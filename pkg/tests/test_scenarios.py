from __future__ import annotations

import pytest

from loiterwatch.harness import (
    DEFAULT_SUITE,
    KINDS,
    LOITERING,
    NORMAL,
    Scenario,
    generate_scenario,
    generate_suite,
    load_track_dataset,
)


def test_kinds_cover_the_suite():
    assert set(kind for _, kind, _, _ in DEFAULT_SUITE) <= set(KINDS)


@pytest.mark.parametrize("kind", KINDS)
def test_generated_streams_load_cleanly(tmp_path, kind):
    scenario = generate_scenario(kind, tmp_path, seed=5)
    rows = load_track_dataset(scenario.detections_path)
    assert rows, "every scenario must produce detections"
    labels = scenario.labels()
    assert labels, "every scenario must carry track labels"
    expected = LOITERING if kind == "loiter" else NORMAL
    assert {l.label for l in labels} == {expected}


def test_same_seed_is_byte_identical(tmp_path):
    a = generate_scenario("loiter", tmp_path / "a", name="s", seed=9, hour=3.0)
    b = generate_scenario("loiter", tmp_path / "b", name="s", seed=9, hour=3.0)
    assert a.detections_path.read_bytes() == b.detections_path.read_bytes()
    assert a.labels_path.read_bytes() == b.labels_path.read_bytes()


def test_different_seed_differs(tmp_path):
    a = generate_scenario("loiter", tmp_path / "a", name="s", seed=9, jitter=1.0)
    b = generate_scenario("loiter", tmp_path / "b", name="s", seed=10, jitter=1.0)
    assert a.detections_path.read_bytes() != b.detections_path.read_bytes()


def test_descriptor_round_trip(tmp_path):
    scenario = generate_scenario("night-walk", tmp_path, seed=3, hour=23.5)
    descriptor = tmp_path / f"{scenario.name}.scenario.json"
    assert descriptor.exists()
    loaded = Scenario.load(descriptor)
    assert loaded.name == scenario.name
    assert loaded.kind == scenario.kind
    assert loaded.seed == scenario.seed
    assert loaded.start_timestamp == scenario.start_timestamp
    assert loaded.detections_path == scenario.detections_path
    assert loaded.camera.camera_id == scenario.camera.camera_id


def test_loiter_paces_back_and_forth(tmp_path):
    walk = generate_scenario("straight-walk", tmp_path / "w", seed=1,
                             hour=11.0, duration=100.0)
    loiter = generate_scenario("loiter", tmp_path / "l", seed=1, hour=3.0)
    walk_rows = load_track_dataset(walk.detections_path)
    loiter_rows = load_track_dataset(loiter.detections_path)

    def x_reversals(rows):
        xs = [r.box[0] for r in rows]
        moves = [b - a for a, b in zip(xs, xs[1:]) if b != a]
        return sum(1 for a, b in zip(moves, moves[1:]) if a * b < 0)

    assert x_reversals(walk_rows) == 0
    assert x_reversals(loiter_rows) >= 2


def test_occlusion_drops_frames(tmp_path):
    clean = generate_scenario("straight-walk", tmp_path / "c", seed=4,
                              hour=10.0, duration=40.0)
    gappy = generate_scenario("occlusion-dropout", tmp_path / "g", seed=4,
                              hour=10.0, duration=40.0,
                              gap_start=10.0, gap_len=4.0)
    assert len(load_track_dataset(gappy.detections_path)) < \
        len(load_track_dataset(clean.detections_path))


def test_crowd_has_many_concurrent_tracks(tmp_path):
    crowd = generate_scenario("crowd", tmp_path, seed=6, people=12)
    rows = load_track_dataset(crowd.detections_path)
    per_frame = {}
    for row in rows:
        per_frame[row.frame_index] = per_frame.get(row.frame_index, 0) + 1
    assert max(per_frame.values()) >= 10


def test_generate_suite_layout(tmp_path):
    scenarios = generate_suite(tmp_path)
    assert len(scenarios) == 12
    names = [s.name for s in scenarios]
    assert names == [entry[0] for entry in DEFAULT_SUITE]
    loiter_count = sum(1 for s in scenarios if s.kind == "loiter")
    assert loiter_count == 4
    for scenario in scenarios:
        assert scenario.detections_path.exists()
        assert scenario.labels_path.exists()


def test_unknown_kind_rejected(tmp_path):
    with pytest.raises(ValueError):
        generate_scenario("parkour", tmp_path)
