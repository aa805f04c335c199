"""Three-way classification of simple 3-edge-connected graphs with alpha <= 2.

Every such graph either Z3-contracts to K1, Z3-contracts to K4, or is one of
the eighteen catalog graphs.  ``classify`` returns which, with a replayable
contraction trace as the certificate.  ``predict_nz3`` turns the same
structure into a nowhere-zero 3-flow prediction.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

from .catalog import NO_FLOW_NAMES, match_exception, match_family
from .canon import are_isomorphic
from .families import complete
from .flows import DEFAULT_MAX_EDGES, BudgetExceeded
from .graph import GraphError, MultiGraph, alpha_le_2, edge_connectivity
from .graph6 import encode_graph6
from .reduction import (
    MAX_SEARCH_ORDER,
    ReductionTrace,
    contracts_to,
    contracts_to_k4_minor,
    reduce_greedy,
)

Z3_CONNECTED = "Z3Connected"
CONTRACTS_TO_K4 = "ContractsToK4"
EXCEPTIONAL = "Exceptional"
OUTCOMES = (Z3_CONNECTED, CONTRACTS_TO_K4, EXCEPTIONAL)

MAX_K4_PARTITION_ORDER = 10


class HypothesisError(GraphError):
    """Input lies outside the class the classification applies to."""


class SoundnessAlarm(RuntimeError):
    """A graph in the class resisted both targets and is not in the catalog."""


@dataclass(frozen=True)
class Verdict:
    outcome: str
    graph: MultiGraph
    trace: Optional[ReductionTrace] = None
    name: Optional[str] = None
    k4_special: bool = False

    def __post_init__(self) -> None:
        if self.outcome not in OUTCOMES:
            raise ValueError(f"unknown outcome {self.outcome!r}")
        if self.outcome == EXCEPTIONAL and self.name is None:
            raise ValueError("an exceptional verdict needs a catalog name")
        if self.outcome != EXCEPTIONAL and self.trace is None:
            raise ValueError(f"{self.outcome} needs a trace")

    @property
    def certificate_ref(self) -> str:
        if self.outcome == EXCEPTIONAL:
            return f"catalog:{self.name}" + (":k4-special" if self.k4_special else "")
        assert self.trace is not None
        return f"trace:{len(self.trace.steps)}-steps"

    def replays(self) -> bool:
        """The trace (if any) replays to its terminal, and that terminal matches the outcome."""
        if self.trace is None:
            return self.outcome == EXCEPTIONAL
        if not self.trace.verify():
            return False
        target = complete(1) if self.outcome == Z3_CONNECTED else complete(4)
        return are_isomorphic(self.trace.terminal, target)

    def to_tsv(self) -> str:
        return f"{encode_graph6(self.graph)}\t{self.outcome}\t{self.certificate_ref}"

    def to_json(self) -> str:
        rec: dict = {
            "graph6": encode_graph6(self.graph),
            "outcome": self.outcome,
            "certificate": self.certificate_ref,
        }
        if self.name is not None:
            rec["name"] = self.name
        if self.k4_special:
            rec["k4_special"] = True
        if self.trace is not None:
            rec["trace"] = [json.loads(line) for line in self.trace.to_jsonl().splitlines()]
        return json.dumps(rec, sort_keys=True)


def check_hypothesis(G: MultiGraph) -> None:
    if not G.is_simple:
        raise HypothesisError("graph must be simple")
    lam = edge_connectivity(G)
    if lam < 3:
        raise HypothesisError(f"graph must be 3-edge-connected (edge connectivity {lam})")
    if not alpha_le_2(G):
        raise HypothesisError("graph must have independence number at most 2")


def classify(G: MultiGraph, *, max_n: int = MAX_SEARCH_ORDER, max_edges: int = DEFAULT_MAX_EDGES) -> Verdict:
    check_hypothesis(G)
    name = match_exception(G)
    if name is not None:
        return Verdict(EXCEPTIONAL, G, name=name, k4_special=(name == "G1"))

    greedy = reduce_greedy(G)
    cur = greedy.terminal
    if cur.n == 1:
        return Verdict(Z3_CONNECTED, G, trace=greedy)
    if cur.n > max_n:
        raise BudgetExceeded(f"after pattern reduction {cur.n} vertices remain; search limited to n <= {max_n}")
    for outcome, target in ((Z3_CONNECTED, "K1"), (CONTRACTS_TO_K4, "K4")):
        tail = contracts_to(cur, target, max_n=max_n, max_edges=max_edges)
        if tail is not None:
            trace = ReductionTrace(G, greedy.steps + tail.steps, tail.terminal)
            return Verdict(outcome, G, trace=trace)
    raise SoundnessAlarm(f"{encode_graph6(G)} contracts to neither K1 nor K4 and is not in the catalog")


def predict_nz3(G: MultiGraph) -> bool:
    """Nowhere-zero 3-flow prediction for bridgeless graphs with alpha <= 2.

    True unless G contracts (ordinary contraction) to K4 or is one of the
    catalog graphs G3, G5, G18 or a member of the G3' multigraph family.
    """
    if edge_connectivity(G) < 2:
        raise HypothesisError("graph must be bridgeless")
    if not alpha_le_2(G):
        raise HypothesisError("graph must have independence number at most 2")
    if G.n > MAX_K4_PARTITION_ORDER:
        raise BudgetExceeded(f"K4 contraction test limited to n <= {MAX_K4_PARTITION_ORDER}")
    if contracts_to_k4_minor(G):
        return False
    if G.is_simple:
        return match_exception(G) not in NO_FLOW_NAMES
    fam = match_family(G)
    return fam is None or fam[0] != "G3'"
