"""Seeded random frameworks shaped like the ones built from a model and a document.

Pattern arguments form the Hasse diagram of a random partial order (a
transitively reduced DAG), every sink of that diagram relates to the default
argument, and relation labels follow class equality. Base scores are exact
multiples of 1/``score_denominator``.
"""
import random
from dataclasses import dataclass
from fractions import Fraction

import networkx as nx

from qbaf.framework import DEFAULT_ID, Argument, Qbafc, Variant, argument_id
from utils.helpers import DEFAULT_SEED, ConfigError

TRIAL_STRIDE = 1_000_003


@dataclass(frozen=True)
class RandomFrameworkSpec:
    seed: int = DEFAULT_SEED
    min_arguments: int = 3
    max_arguments: int = 8
    edge_density: float = 0.5
    score_denominator: int = 16
    max_score_units: int = 8
    positive_class_probability: float = 0.5

    def validate(self) -> None:
        if self.min_arguments < 0:
            raise ConfigError(f"min_arguments must be non-negative, got {self.min_arguments}")
        if self.max_arguments < self.min_arguments:
            raise ConfigError(
                f"max_arguments ({self.max_arguments}) is below min_arguments ({self.min_arguments})"
            )
        if not 0.0 <= self.edge_density <= 1.0:
            raise ConfigError(f"edge_density must lie in [0, 1], got {self.edge_density}")
        if self.score_denominator < 1 or self.max_score_units < 1:
            raise ConfigError("score_denominator and max_score_units must be positive")
        if not 0.0 <= self.positive_class_probability <= 1.0:
            raise ConfigError(
                f"positive_class_probability must lie in [0, 1], got {self.positive_class_probability}"
            )


def trial_rng(spec: RandomFrameworkSpec, trial: int) -> random.Random:
    return random.Random(spec.seed * TRIAL_STRIDE + trial)


def generate_framework(spec: RandomFrameworkSpec, rng: random.Random) -> Qbafc:
    n = rng.randint(spec.min_arguments, spec.max_arguments)
    ids = [argument_id(i) for i in range(n)]

    order = nx.DiGraph()
    order.add_nodes_from(ids)
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < spec.edge_density:
                order.add_edge(ids[i], ids[j])
    hasse = nx.transitive_reduction(order)

    def score() -> Fraction:
        return Fraction(rng.randint(1, spec.max_score_units), spec.score_denominator)

    def klass() -> int:
        return 1 if rng.random() < spec.positive_class_probability else 0

    base_score = {DEFAULT_ID: score()}
    supported_class = {DEFAULT_ID: klass()}
    for a in ids:
        base_score[a] = score()
        supported_class[a] = klass()

    pairs = list(hasse.edges()) + [(a, DEFAULT_ID) for a in ids if hasse.out_degree(a) == 0]
    attacks = {p for p in pairs if supported_class[p[0]] != supported_class[p[1]]}
    supports = {p for p in pairs if supported_class[p[0]] == supported_class[p[1]]}
    arguments = (Argument(DEFAULT_ID),) + tuple(Argument(a, i) for i, a in enumerate(ids))
    variant = rng.choice([Variant.TOP_DOWN, Variant.BOTTOM_UP])
    return Qbafc(arguments, frozenset(attacks), frozenset(supports), base_score, supported_class, variant)


def generate_trial(spec: RandomFrameworkSpec, trial: int) -> Qbafc:
    return generate_framework(spec, trial_rng(spec, trial))


def in_construction_image(fw: Qbafc) -> bool:
    """True when pattern arguments all relate onward and only sinks of their order relate to the default."""
    if fw.post_processed:
        return False
    g = fw.graph()
    inner = g.subgraph([a for a in fw.ids if a != DEFAULT_ID])
    for a in inner.nodes:
        if g.out_degree(a) == 0:
            return False
        if g.has_edge(a, DEFAULT_ID) != (inner.out_degree(a) == 0):
            return False
    if not nx.is_directed_acyclic_graph(inner):
        return False
    return set(nx.transitive_reduction(inner).edges()) == set(inner.edges())
