"""Graph constructions that reduce cardinality-optimality to perfect
matching: the auxiliary completion certificate and the doubled graph.

The auxiliary completion attaches one fresh node per exposed node of a
snapshot, joined to every original node by weight-0 edges. The snapshot's
matching extends to a perfect matching of the same weight, and the frozen
duals extend to dual values that certify it as a minimum-weight perfect
matching. This re-proves the snapshot cardinality-optimal by a different
route than the cardinality certificate.

The doubled graph joins a mirror copy of the instance along weight-0
bridge edges; its minimum perfect-matching weight is exactly twice the
minimum matching weight of the original over all cardinalities.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .certificates import Verdict, Violation, accumulate_duals
from .engine import DualState, Snapshot
from .graph import Edge, Instance, Matching

ZERO = Fraction(0)

PerfectVerdict = Verdict


class CompletionRefusedError(ValueError):
    """The snapshot's duals cannot support the completion certificate.

    Raised when some exposed node's accumulated dual is below the maximum,
    which happens for snapshots of scripted (non-uniform) runs. Carries
    the offending node and both values.
    """

    def __init__(self, node: int, pi_star: Fraction, pi_star_max: Fraction):
        super().__init__(
            f"exposed node {node} has accumulated dual {pi_star} "
            f"!= maximum {pi_star_max}; completion certificate unavailable")
        self.node = node
        self.pi_star = pi_star
        self.pi_star_max = pi_star_max


@dataclass(frozen=True)
class AuxiliaryCompletion:
    """A snapshot completed to a certified perfect matching.

    Helper nodes are appended after the original ones: helper i (0-based)
    is node base_node_count + i, matched to exposed_nodes[i].
    """

    aux_instance: Instance
    extended_matching: Matching
    lifted_duals: DualState
    base_node_count: int
    exposed_nodes: tuple[int, ...]


def build_auxiliary_completion(inst: Instance, snapshot: Snapshot) -> AuxiliaryCompletion:
    """Complete a snapshot to a perfect matching on the extended graph.

    Each helper node is connected to every original node at weight 0 and
    carries dual value minus the maximum accumulated dual, which makes its
    matching edge tight. Requires every exposed node to sit at the
    maximum accumulated dual (true for uniform-policy runs); otherwise
    raises CompletionRefusedError with the witness node.
    """
    acc = accumulate_duals(snapshot.dual_state)
    exposed = snapshot.matching.exposed(inst)
    for v in exposed:
        if acc.pi_star[v] != acc.pi_star_max:
            raise CompletionRefusedError(v, acc.pi_star[v], acc.pi_star_max)

    n = inst.node_count
    k = len(exposed)
    if k == 0:
        return AuxiliaryCompletion(inst, snapshot.matching,
                                   snapshot.dual_state, n, ())

    edges = list(inst.edges)
    for i in range(k):
        helper = n + i
        for v in range(n):
            edges.append(Edge(v, helper, ZERO))
    aux = Instance(n + k, tuple(edges))

    pairs = set(snapshot.matching.edges)
    pairs.update((exposed[i], n + i) for i in range(k))
    extended = Matching(frozenset(pairs))

    duals = DualState(
        snapshot.dual_state.singleton_pi + (-acc.pi_star_max,) * k,
        snapshot.dual_state.blossoms,
        snapshot.dual_state.beta)
    return AuxiliaryCompletion(aux, extended, duals, n, exposed)


def check_perfect_certificate(comp: AuxiliaryCompletion) -> PerfectVerdict:
    """Check that the completion's duals certify its perfect matching.

    Exact checks: the matching is perfect; blossom duals are nonnegative;
    no edge's dual load exceeds its weight; every matched edge is tight;
    and every blossom with positive dual is left by exactly one matching
    edge. A pass certifies the extended matching is a minimum-weight
    perfect matching of the extended graph.
    """
    inst = comp.aux_instance
    m = comp.extended_matching
    dual = comp.lifted_duals
    if not m.is_perfect_on(inst):
        raise ValueError(
            f"extended matching covers {2 * len(m)} of {inst.node_count} nodes; "
            "a perfect matching is required")

    violations: list[Violation] = []
    for b in dual.blossoms:
        if b.pi < 0:
            violations.append(Violation("blossom-nonneg", b.nodes, b.pi, ZERO))

    for e in inst.edges:
        load = dual.edge_load(e.u, e.v)
        if load > e.weight:
            violations.append(Violation("edge-load", (e.u, e.v), load, e.weight))
        elif (e.u, e.v) in m and load != e.weight:
            violations.append(
                Violation("cs-matched-edge-tight", (e.u, e.v), load, e.weight))

    for b in dual.blossoms:
        if b.pi > 0:
            leaving = sum(1 for u, v in m.edges if (u in b.nodes) != (v in b.nodes))
            if leaving != 1:
                violations.append(Violation("cs-cut-tight", b.nodes, leaving, 1))

    return Verdict(tuple(violations))


def build_doubled_graph(inst: Instance) -> Instance:
    """The instance plus a mirror copy, bridged by weight-0 edges.

    Node v's mirror is node v + n. Original and mirror edges keep the
    original weights. Any matching M of the instance extends to a perfect
    matching of weight 2 * w(M) (match M on both copies, bridge the rest),
    and conversely, so the doubled graph's minimum perfect-matching weight
    is twice the instance's minimum matching weight over all cardinalities.
    """
    n = inst.node_count
    edges = list(inst.edges)
    edges.extend(Edge(e.u + n, e.v + n, e.weight) for e in inst.edges)
    edges.extend(Edge(v, v + n, ZERO) for v in range(n))
    return Instance(2 * n, tuple(edges))
