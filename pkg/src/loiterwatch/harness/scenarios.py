"""Deterministic synthetic scenario generation.

Each scenario is three files: a detection stream CSV, a labels CSV marking
loitering/normal intervals per ground-truth walker, and a JSON descriptor
carrying the camera context and generation parameters. Generation is a
pure function of (kind, params, seed): rerunning produces byte-identical
files.

Walkers follow piecewise constant-velocity segments inside a 640x480 frame
with a fixed 40x100 person box. Every detector-cycle frame carries
detector-source rows; all other frames carry tracker-source rows.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from pathlib import Path

from ..context import CameraContext
from ..logs import write_csv
from ..tracking import DETECTOR, TRACKER
from .dataset import STREAM_HEADER

FRAME_W, FRAME_H = 640.0, 480.0
BOX_W, BOX_H = 40.0, 100.0

LOITERING = "loitering"
NORMAL = "normal"

LABELS_HEADER = ["track_hint", "start", "end", "label"]

KINDS = ("straight-walk", "loiter", "night-walk", "crowd", "occlusion-dropout")


@dataclass(frozen=True)
class LabelInterval:
    track_hint: int
    start: float
    end: float
    label: str


@dataclass
class Scenario:
    name: str
    kind: str
    seed: int
    fps: float
    camera: CameraContext
    detections_path: Path
    labels_path: Path
    start_timestamp: float
    duration: float
    params: dict = field(default_factory=dict)

    def labels(self) -> list[LabelInterval]:
        out = []
        with open(self.labels_path, "r", encoding="utf-8") as fh:
            rows = fh.read().splitlines()
        for row in rows[1:]:
            hint, start, end, label = row.split(",")
            out.append(LabelInterval(int(hint), float(start), float(end), label))
        return out

    def save(self, path: str | Path) -> None:
        path = Path(path)
        data = {
            "name": self.name,
            "kind": self.kind,
            "seed": self.seed,
            "fps": self.fps,
            "camera": {
                "camera_id": self.camera.camera_id,
                "placement": self.camera.placement,
                "security_level": self.camera.security_level,
                "timezone_offset": self.camera.timezone_offset,
            },
            "detections": self.detections_path.name,
            "labels": self.labels_path.name,
            "start_timestamp": self.start_timestamp,
            "duration": self.duration,
            "params": self.params,
        }
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(data, fh, indent=2, sort_keys=True)
            fh.write("\n")

    @classmethod
    def load(cls, path: str | Path) -> "Scenario":
        path = Path(path)
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        return cls(
            name=data["name"], kind=data["kind"], seed=data["seed"], fps=data["fps"],
            camera=CameraContext(**data["camera"]),
            detections_path=path.parent / data["detections"],
            labels_path=path.parent / data["labels"],
            start_timestamp=data["start_timestamp"],
            duration=data["duration"],
            params=data.get("params", {}),
        )


@dataclass
class _Walker:
    hint: int
    enter: float                      # seconds from scenario start
    segments: list[tuple[float, float, float, float, float]]  # (t0, t1, x0, x1, y)
    label: str = NORMAL
    drop_windows: list[tuple[float, float]] = field(default_factory=list)

    def position(self, t: float) -> tuple[float, float] | None:
        if not self.segments or t < self.segments[0][0] or t > self.segments[-1][1]:
            return None
        for t0, t1, x0, x1, y in self.segments:
            if t0 <= t <= t1:
                frac = 0.0 if t1 == t0 else (t - t0) / (t1 - t0)
                return (x0 + (x1 - x0) * frac, y)
        return None

    def dropped(self, t: float) -> bool:
        return any(a <= t < b for a, b in self.drop_windows)

    @property
    def exits(self) -> float:
        return self.segments[-1][1] if self.segments else self.enter


def _walk_segments(enter: float, duration: float, y: float,
                   reverse: bool = False) -> list[tuple[float, float, float, float, float]]:
    x0, x1 = 40.0, FRAME_W - 40.0 - BOX_W
    if reverse:
        x0, x1 = x1, x0
    return [(enter, enter + duration, x0, x1, y)]


def _loiter_segments(enter: float, approach: float, legs: int, leg_duration: float,
                     stops: int, stop_duration: float, y: float) -> list:
    """Approach to a pacing zone, then alternate legs with standing stops."""
    segs = []
    t = enter
    left, right = 250.0, 400.0
    segs.append((t, t + approach, 40.0, left, y))
    t += approach
    x = left
    stops_left = stops
    for leg in range(legs):
        target = right if x == left else left
        segs.append((t, t + leg_duration, x, target, y))
        t += leg_duration
        x = target
        # Stand still after every other leg while stop budget remains.
        if stops_left > 0 and leg % 2 == 0:
            segs.append((t, t + stop_duration, x, x, y))
            t += stop_duration
            stops_left -= 1
    return segs


def _build_walkers(kind: str, params: dict, rng: random.Random) -> list[_Walker]:
    if kind == "straight-walk" or kind == "night-walk":
        duration = params["duration"]
        people = params.get("people", 1)
        walkers = []
        for k in range(people):
            y = 160.0 + 70.0 * k
            walkers.append(_Walker(
                hint=k + 1, enter=0.0,
                segments=_walk_segments(0.0, duration, y, reverse=bool(k % 2)),
            ))
        return walkers

    if kind == "loiter":
        segs = _loiter_segments(
            enter=0.0,
            approach=params.get("approach", 8.0),
            legs=params.get("legs", 5),
            leg_duration=params.get("leg_duration", 6.0),
            stops=params.get("stops", 2),
            stop_duration=params.get("stop_duration", 2.5),
            y=240.0,
        )
        return [_Walker(hint=1, enter=0.0, segments=segs, label=LOITERING)]

    if kind == "crowd":
        duration = params["duration"]
        people = params.get("people", 12)
        walkers = []
        for k in range(people):
            enter = min(2.0 * k, max(duration - 20.0, 0.0))
            walk_time = min(25.0, duration - enter)
            y = 130.0 + 25.0 * (k % 10)
            walkers.append(_Walker(
                hint=k + 1, enter=enter,
                segments=_walk_segments(enter, walk_time, y, reverse=bool(k % 2)),
            ))
        return walkers

    if kind == "occlusion-dropout":
        base = params.get("base", "straight-walk")
        base_params = {k: v for k, v in params.items()
                       if k not in ("base", "gap_start", "gap_len")}
        walkers = _build_walkers(base, base_params, rng)
        gap_start = params.get("gap_start", 12.0)
        gap_len = params.get("gap_len", 4.0)
        walkers[0].drop_windows.append((gap_start, gap_start + gap_len))
        return walkers

    raise ValueError(f"unknown scenario kind {kind!r}")


def generate_scenario(kind: str, out_dir: str | Path, name: str | None = None,
                      seed: int = 0, **params) -> Scenario:
    """Write one scenario's stream, labels and descriptor; returns it.

    Common params: hour (local start hour, default per kind), fps (5),
    jitter (uniform centroid noise amplitude in px, default 0),
    detector_cycle (5). Kind params: duration, people, approach, legs,
    leg_duration, stops, stop_duration, base, gap_start, gap_len.
    """
    if kind not in KINDS:
        raise ValueError(f"unknown scenario kind {kind!r}")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    name = name or kind
    rng = random.Random(seed)

    defaults = {
        "straight-walk": {"hour": 11.0, "duration": 100.0},
        "night-walk": {"hour": 3.0, "duration": 10.0},
        "loiter": {"hour": 3.0},
        "crowd": {"hour": 13.0, "duration": 45.0, "people": 12},
        "occlusion-dropout": {"hour": 10.0, "duration": 30.0,
                              "gap_start": 12.0, "gap_len": 4.0},
    }[kind]
    merged = {**defaults, **params}
    fps = float(merged.pop("fps", 5.0))
    hour = float(merged.pop("hour"))
    jitter = float(merged.pop("jitter", 0.0))
    cycle = int(merged.pop("detector_cycle", 5))

    walkers = _build_walkers(kind, merged, rng)
    start_ts = hour * 3600.0
    duration = max(w.exits for w in walkers)
    n_frames = int(round(duration * fps)) + 1

    rows: list[list[str]] = []
    for frame in range(n_frames):
        t = frame / fps
        source = DETECTOR if frame % cycle == 0 else TRACKER
        for walker in walkers:
            pos = walker.position(t)
            if pos is None or walker.dropped(t):
                continue
            cx, cy = pos
            if jitter > 0.0:
                cx += rng.uniform(-jitter, jitter)
                cy += rng.uniform(-jitter, jitter)
            rows.append([
                str(frame), f"{start_ts + t:.3f}", str(walker.hint),
                f"{cx - BOX_W / 2:.3f}", f"{cy - BOX_H / 2:.3f}",
                f"{BOX_W:.3f}", f"{BOX_H:.3f}", source,
            ])

    detections_path = out_dir / f"{name}.detections.csv"
    labels_path = out_dir / f"{name}.labels.csv"
    write_csv(detections_path, STREAM_HEADER, rows)
    label_rows = [
        [str(w.hint), f"{start_ts + w.enter:.3f}", f"{start_ts + w.exits:.3f}", w.label]
        for w in walkers
    ]
    write_csv(labels_path, LABELS_HEADER, label_rows)

    scenario = Scenario(
        name=name, kind=kind, seed=seed, fps=fps,
        camera=CameraContext(camera_id=f"cam-{name}"),
        detections_path=detections_path, labels_path=labels_path,
        start_timestamp=start_ts, duration=duration,
        params={**merged, "hour": hour, "jitter": jitter, "detector_cycle": cycle},
    )
    scenario.save(out_dir / f"{name}.scenario.json")
    return scenario


# The fixed evaluation suite: 4 loitering events, 8 normal scenarios.
DEFAULT_SUITE: list[tuple[str, str, dict, int]] = [
    ("walk-0900", "straight-walk", {"hour": 9.0, "duration": 60.0}, 11),
    ("walk-1100", "straight-walk", {"hour": 11.0, "duration": 100.0}, 12),
    ("walk-1400", "straight-walk", {"hour": 14.0, "duration": 45.0, "people": 2}, 13),
    ("night-walk-0300", "night-walk", {"hour": 3.0, "duration": 10.0}, 14),
    ("night-walk-2330", "night-walk", {"hour": 23.5, "duration": 12.0}, 15),
    ("crowd-1300", "crowd", {"hour": 13.0, "people": 12, "duration": 45.0}, 16),
    ("occlusion-1000", "occlusion-dropout",
     {"hour": 10.0, "duration": 30.0, "gap_start": 12.0, "gap_len": 4.0}, 17),
    ("occlusion-1500", "occlusion-dropout",
     {"hour": 15.0, "duration": 30.0, "gap_start": 10.0, "gap_len": 3.0}, 18),
    ("loiter-0300", "loiter", {"hour": 3.0}, 19),
    ("loiter-0100", "loiter", {"hour": 1.0}, 20),
    ("loiter-1930", "loiter", {"hour": 19.5}, 21),
    ("loiter-1100", "loiter", {"hour": 11.0}, 22),
]


def generate_suite(out_dir: str | Path) -> list[Scenario]:
    return [
        generate_scenario(kind, out_dir, name=name, seed=seed, **params)
        for name, kind, params, seed in DEFAULT_SUITE
    ]
