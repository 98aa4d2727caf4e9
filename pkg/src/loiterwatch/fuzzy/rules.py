"""Rule antecedent trees and their evaluation.

Antecedents are nested AND/OR combinations over (variable, label) atoms.
AND takes the minimum of its children, OR the maximum, so every premise
weight stays inside the hull of its leaf degrees.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping

from .membership import ConfigurationError, FuzzifiedValue


class Antecedent:
    def weight(self, env: Mapping[str, FuzzifiedValue]) -> float:
        raise NotImplementedError

    def atoms(self) -> Iterator["Atom"]:
        raise NotImplementedError


@dataclass(frozen=True)
class Atom(Antecedent):
    variable: str
    label: str

    def weight(self, env: Mapping[str, FuzzifiedValue]) -> float:
        try:
            fz = env[self.variable]
        except KeyError:
            raise ConfigurationError(f"antecedent references missing variable {self.variable!r}") from None
        try:
            return fz.degrees[self.label]
        except KeyError:
            raise ConfigurationError(
                f"antecedent references unknown label {self.label!r} of variable {self.variable!r}"
            ) from None

    def atoms(self) -> Iterator["Atom"]:
        yield self


@dataclass(frozen=True)
class And(Antecedent):
    children: tuple[Antecedent, ...]

    def weight(self, env: Mapping[str, FuzzifiedValue]) -> float:
        return min(c.weight(env) for c in self.children)

    def atoms(self) -> Iterator[Atom]:
        for c in self.children:
            yield from c.atoms()


@dataclass(frozen=True)
class Or(Antecedent):
    children: tuple[Antecedent, ...]

    def weight(self, env: Mapping[str, FuzzifiedValue]) -> float:
        return max(c.weight(env) for c in self.children)

    def atoms(self) -> Iterator[Atom]:
        for c in self.children:
            yield from c.atoms()


@dataclass(frozen=True)
class Rule:
    """IF <antecedent> THEN <output member label>."""

    rule_id: str
    antecedent: Antecedent
    consequent: str
    enabled: bool = True

    def evaluate(self, env: Mapping[str, FuzzifiedValue]) -> float:
        """Premise weight of this rule under fuzzified inputs."""
        return self.antecedent.weight(env)


def parse_antecedent(node: object) -> Antecedent:
    """Build an antecedent tree from its JSON form.

    Accepted nodes: {"and": [...]}, {"or": [...]}, {"atom": [var, label]}.
    """
    if not isinstance(node, dict) or len(node) != 1:
        raise ConfigurationError(f"bad antecedent node: {node!r}")
    key, value = next(iter(node.items()))
    if key == "atom":
        if (not isinstance(value, (list, tuple)) or len(value) != 2
                or not all(isinstance(v, str) for v in value)):
            raise ConfigurationError(f"bad atom: {value!r}")
        return Atom(variable=value[0], label=value[1])
    if key in ("and", "or"):
        if not isinstance(value, list) or not value:
            raise ConfigurationError(f"{key!r} needs a non-empty child list")
        children = tuple(parse_antecedent(child) for child in value)
        return And(children) if key == "and" else Or(children)
    raise ConfigurationError(f"unknown antecedent operator {key!r}")


def antecedent_to_json(node: Antecedent) -> object:
    if isinstance(node, Atom):
        return {"atom": [node.variable, node.label]}
    if isinstance(node, And):
        return {"and": [antecedent_to_json(c) for c in node.children]}
    if isinstance(node, Or):
        return {"or": [antecedent_to_json(c) for c in node.children]}
    raise TypeError(f"not an antecedent: {node!r}")
