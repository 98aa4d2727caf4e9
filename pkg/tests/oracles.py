"""Independent reference computations the tests compare the package against.

Everything here is written from the definitions, sharing no code with the
package: straight-line interpolation, recursive min/max premise weights,
and a plain-loop clipped-max envelope with a summation centroid.
"""

from __future__ import annotations


def interp(points, left_hold, right_hold, x):
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    if x < xs[0]:
        return ys[0] if left_hold else 0.0
    if x > xs[-1]:
        return ys[-1] if right_hold else 0.0
    for i in range(len(xs) - 1):
        if xs[i] <= x <= xs[i + 1]:
            if x == xs[i]:
                return ys[i]
            if x == xs[i + 1]:
                return ys[i + 1]
            frac = (x - xs[i]) / (xs[i + 1] - xs[i])
            return ys[i] + frac * (ys[i + 1] - ys[i])
    raise AssertionError("unreachable")


def member_degree(member_dict, x):
    points = [tuple(p) for p in member_dict["breakpoints"]]
    return interp(points,
                  member_dict.get("left_extension", "zero") == "hold-degree",
                  member_dict.get("right_extension", "zero") == "hold-degree",
                  x)


def fuzzify(var_dict, x):
    lo, hi = var_dict["domain"]
    x = min(max(x, lo), hi)
    return {m["label"]: member_degree(m, x) for m in var_dict["members"]}


def premise_weight(node, degrees):
    if "atom" in node:
        var, label = node["atom"]
        return degrees[var][label]
    if "and" in node:
        return min(premise_weight(child, degrees) for child in node["and"])
    if "or" in node:
        return max(premise_weight(child, degrees) for child in node["or"])
    raise AssertionError(f"unknown node {node!r}")


def centroid_of_activations(config_dict, weights, resolution):
    """Clip each output member at its weight, pointwise-max them on a
    uniform grid, then return the discrete centroid of the envelope."""
    output = next(v for v in config_dict["variables"]
                  if v["name"] == config_dict["output"])
    lo, hi = output["domain"]
    members = {m["label"]: m for m in output["members"]}
    num = 0.0
    den = 0.0
    for i in range(resolution):
        z = lo + (hi - lo) * i / (resolution - 1)
        env = 0.0
        for label, w in weights.items():
            if w <= 0.0:
                continue
            clipped = min(w, member_degree(members[label], z))
            if clipped > env:
                env = clipped
        num += z * env
        den += env
    if den <= 0.0:
        return 0.0
    return num / den


def score(config_dict, inputs, resolution):
    """Full reference pipeline: fuzzify, fire rules, aggregate, centroid."""
    variables = {v["name"]: v for v in config_dict["variables"]}
    degrees = {name: fuzzify(var, inputs[name])
               for name, var in variables.items()
               if name != config_dict["output"]}
    weights: dict[str, float] = {}
    for rule in config_dict["rules"]:
        if not rule.get("enabled", True):
            continue
        w = premise_weight(rule["antecedent"], degrees)
        label = rule["consequent"]
        weights[label] = max(weights.get(label, 0.0), w)
    return centroid_of_activations(config_dict, weights, resolution)
