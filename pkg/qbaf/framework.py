"""Quantitative bipolar argumentation frameworks with supported classes.

One framework is extracted per (model, document, variant). Arguments are the
default argument (the bias term) plus one argument per pattern matched in the
document; base scores are absolute weights, the supported class is the weight's
sign, and relations follow the specificity order between the matched patterns.
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from numbers import Real
from typing import Dict, FrozenSet, List, Optional, Tuple

import networkx as nx

from corpus.types import Document
from patterns.pattern import Pattern
from patterns.specificity import strictly_more_specific
from plr.model import PlrModel, extract_features
from utils.helpers import DataError

logger = logging.getLogger(__name__)

DEFAULT_ID = "delta"

Edge = Tuple[str, str]


class Variant(str, Enum):
    TOP_DOWN = "top_down"
    BOTTOM_UP = "bottom_up"


def argument_id(pattern_index: int) -> str:
    return f"a{pattern_index}"


@dataclass(frozen=True)
class Argument:
    id: str
    pattern_index: Optional[int] = None
    pattern: Optional[Pattern] = field(default=None, compare=False)

    @property
    def is_default(self) -> bool:
        return self.pattern_index is None

    @property
    def origin(self) -> str:
        return "default" if self.is_default else f"pattern:{self.pattern_index}"

    @property
    def label(self) -> str:
        if self.pattern is not None:
            return self.pattern.encode()
        return "default" if self.is_default else self.id


@dataclass(frozen=True)
class Qbafc:
    arguments: Tuple[Argument, ...]
    attacks: FrozenSet[Edge]
    supports: FrozenSet[Edge]
    base_score: Dict[str, Real]
    supported_class: Dict[str, int]
    variant: Variant = Variant.BOTTOM_UP
    post_processed: bool = False

    def __post_init__(self):
        object.__setattr__(self, "arguments", tuple(sorted(self.arguments, key=lambda a: a.id)))
        object.__setattr__(self, "attacks", frozenset(self.attacks))
        object.__setattr__(self, "supports", frozenset(self.supports))
        object.__setattr__(self, "base_score", dict(self.base_score))
        object.__setattr__(self, "supported_class", dict(self.supported_class))
        object.__setattr__(self, "variant", Variant(self.variant))

    @cached_property
    def ids(self) -> List[str]:
        return [a.id for a in self.arguments]

    @cached_property
    def _by_id(self) -> Dict[str, Argument]:
        return {a.id: a for a in self.arguments}

    def argument(self, arg_id: str) -> Argument:
        return self._by_id[arg_id]

    def __contains__(self, arg_id: str) -> bool:
        return arg_id in self._by_id

    @cached_property
    def _in_edges(self) -> Dict[str, Tuple[FrozenSet[str], FrozenSet[str]]]:
        attackers: Dict[str, set] = {a: set() for a in self.ids}
        supporters: Dict[str, set] = {a: set() for a in self.ids}
        for src, dst in self.attacks:
            attackers.setdefault(dst, set()).add(src)
        for src, dst in self.supports:
            supporters.setdefault(dst, set()).add(src)
        return {a: (frozenset(attackers[a]), frozenset(supporters[a])) for a in attackers}

    def attackers_of(self, arg_id: str) -> FrozenSet[str]:
        return self._in_edges[arg_id][0]

    def supporters_of(self, arg_id: str) -> FrozenSet[str]:
        return self._in_edges[arg_id][1]

    @cached_property
    def _out_degree(self) -> Dict[str, int]:
        degree = {a: 0 for a in self.ids}
        for src, _ in self.attacks | self.supports:
            degree[src] = degree.get(src, 0) + 1
        return degree

    def out_degree(self, arg_id: str) -> int:
        return self._out_degree[arg_id]

    def edges(self) -> List[Tuple[str, str, str]]:
        """All relations as sorted (source, target, '+'|'-') triples."""
        rows = [(s, t, "-") for s, t in self.attacks] + [(s, t, "+") for s, t in self.supports]
        return sorted(rows)

    def graph(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(self.ids)
        g.add_edges_from(self.attacks, relation="-")
        g.add_edges_from(self.supports, relation="+")
        return g


def structural_violations(fw: Qbafc) -> List[str]:
    """Every broken framework invariant, as readable messages (empty when well formed)."""
    problems = []
    ids = set(fw.ids)
    defaults = [a for a in fw.arguments if a.is_default]
    if len(defaults) != 1 or defaults[0].id != DEFAULT_ID:
        problems.append("framework must contain exactly one default argument 'delta'")
    if len(ids) != len(fw.arguments):
        problems.append("argument ids are not unique")
    both = fw.attacks & fw.supports
    if both:
        problems.append(f"pairs both attack and support: {sorted(both)}")
    for src, dst in fw.attacks | fw.supports:
        if src not in ids or dst not in ids:
            problems.append(f"edge ({src}, {dst}) has an endpoint outside the framework")
        elif src == dst:
            problems.append(f"self-loop on {src}")
    if DEFAULT_ID in ids and any(src == DEFAULT_ID for src, _ in fw.attacks | fw.supports):
        problems.append("the default argument has outgoing relations")
    for a in ids:
        if a not in fw.base_score or a not in fw.supported_class:
            problems.append(f"argument {a} lacks a base score or supported class")
        elif fw.supported_class[a] not in (0, 1):
            problems.append(f"argument {a} supports class {fw.supported_class[a]!r}")
        elif not fw.post_processed and fw.base_score[a] < 0:
            problems.append(f"argument {a} has negative base score before post-processing")
    if problems:
        return problems
    for src, dst in fw.supports:
        if fw.supported_class[src] != fw.supported_class[dst]:
            problems.append(f"support ({src}, {dst}) joins arguments of different classes")
    for src, dst in fw.attacks:
        if fw.supported_class[src] == fw.supported_class[dst]:
            problems.append(f"attack ({src}, {dst}) joins arguments of the same class")
    if not nx.is_directed_acyclic_graph(fw.graph()):
        problems.append("relations contain a cycle")
    return problems


def validate(fw: Qbafc) -> None:
    problems = structural_violations(fw)
    if problems:
        raise DataError("invalid framework: " + "; ".join(problems))


def build_qbafc(model: PlrModel, doc: Document, variant: Variant = Variant.BOTTOM_UP) -> Qbafc:
    variant = Variant(variant)
    f = extract_features(model, doc)
    present = [i for i, bit in enumerate(f) if bit]

    arguments = [Argument(DEFAULT_ID)]
    base_score = {DEFAULT_ID: abs(model.bias)}
    supported_class = {DEFAULT_ID: 1 if model.bias >= 0 else 0}
    for i in present:
        aid = argument_id(i)
        arguments.append(Argument(aid, i, model.patterns[i]))
        base_score[aid] = abs(model.weights[i])
        supported_class[aid] = 1 if model.weights[i] >= 0 else 0

    # stronger[i][j]: p_i strictly more specific than p_j
    stronger = {
        i: {j for j in present if j != i and strictly_more_specific(model.patterns[i], model.patterns[j])}
        for i in present
    }

    def covers(i: int, j: int) -> bool:
        return j in stronger[i] and not any(k in stronger[i] and j in stronger[k] for k in present)

    pairs: List[Edge] = []
    for i in present:
        for j in present:
            if i != j and covers(i, j):
                if variant is Variant.TOP_DOWN:
                    pairs.append((argument_id(i), argument_id(j)))
                else:
                    pairs.append((argument_id(j), argument_id(i)))
        if variant is Variant.TOP_DOWN:
            linked_to_default = not stronger[i]
        else:
            linked_to_default = not any(i in stronger[j] for j in present)
        if linked_to_default:
            pairs.append((argument_id(i), DEFAULT_ID))

    attacks = {e for e in pairs if supported_class[e[0]] != supported_class[e[1]]}
    supports = {e for e in pairs if supported_class[e[0]] == supported_class[e[1]]}
    fw = Qbafc(tuple(arguments), frozenset(attacks), frozenset(supports), base_score, supported_class, variant)
    logger.debug(
        "Built %s framework for %s: %d argument(s), %d relation(s)",
        variant.value, doc.id, len(fw.arguments), len(pairs),
    )
    return fw
