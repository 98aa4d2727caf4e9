"""Engine config serialization and the shipped default config."""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from .engine import DEFAULT_GRID_RESOLUTION, EngineConfig
from .membership import (ZERO, ConfigurationError, LinguisticVariable,
                         MembershipFunction)
from .rules import Rule, antecedent_to_json, parse_antecedent

DEFAULT_CONFIG_RESOURCE = "fuzzy_config.json"


def config_from_dict(data: dict) -> EngineConfig:
    """Parse the JSON object form into a validated-structure EngineConfig."""
    if not isinstance(data, dict):
        raise ConfigurationError("config root must be a JSON object")
    for key in ("variables", "rules", "output"):
        if key not in data:
            raise ConfigurationError(f"config missing key {key!r}")

    variables = []
    for var in data["variables"]:
        members = tuple(
            MembershipFunction(
                label=m["label"],
                breakpoints=tuple((float(x), float(d)) for x, d in m["breakpoints"]),
                left_extension=m.get("left_extension", ZERO),
                right_extension=m.get("right_extension", ZERO),
            )
            for m in var.get("members", [])
        )
        variables.append(LinguisticVariable(
            name=var["name"],
            domain=(float(var["domain"][0]), float(var["domain"][1])),
            members=members,
        ))

    rules = []
    for entry in data["rules"]:
        rules.append(Rule(
            rule_id=str(entry["id"]),
            antecedent=parse_antecedent(entry["antecedent"]),
            consequent=entry["consequent"],
            enabled=bool(entry.get("enabled", True)),
        ))

    return EngineConfig(
        variables=tuple(variables),
        output=data["output"],
        rules=tuple(rules),
        grid_resolution=int(data.get("grid_resolution", DEFAULT_GRID_RESOLUTION)),
    )


def config_to_dict(config: EngineConfig) -> dict:
    return {
        "output": config.output,
        "grid_resolution": config.grid_resolution,
        "variables": [
            {
                "name": v.name,
                "domain": list(v.domain),
                "members": [
                    {
                        "label": m.label,
                        "breakpoints": [[x, d] for x, d in m.breakpoints],
                        "left_extension": m.left_extension,
                        "right_extension": m.right_extension,
                    }
                    for m in v.members
                ],
            }
            for v in config.variables
        ],
        "rules": [
            {
                "id": r.rule_id,
                "antecedent": antecedent_to_json(r.antecedent),
                "consequent": r.consequent,
                "enabled": r.enabled,
            }
            for r in config.rules
        ],
    }


def load_config(path: str | Path) -> EngineConfig:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigurationError(f"{path}: not valid JSON ({exc})") from exc
    return config_from_dict(data)


def save_config(config: EngineConfig, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(config_to_dict(config), fh, indent=2)
        fh.write("\n")


def default_config() -> EngineConfig:
    """The shipped scoring config (packaged data file)."""
    text = resources.files("loiterwatch").joinpath("data").joinpath(DEFAULT_CONFIG_RESOURCE).read_text("utf-8")
    return config_from_dict(json.loads(text))
