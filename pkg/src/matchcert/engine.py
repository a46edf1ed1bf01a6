"""Primal-dual weighted matching solver with snapshot recording.

The solver maintains a matching together with dual values on a laminar
family of odd node sets (all singletons, plus one set per shrunken
blossom). It alternates primal steps (augment along an alternating walk
between exposed nodes of the shrunken graph, or shrink a blossom when the
walk is not a path) with dual steps (shift the duals of the alternating
forest's S- and T-nodes, uniformly or by scripted per-tree amounts).

Every augmentation is recorded as a Snapshot: the fully deshrunken
matching plus a frozen copy of the duals. Those frozen duals are exactly
what the certificate checker needs to prove each snapshot minimum-weight
among matchings of its cardinality.

Design notes:

  * The stored matching (`crossing`) holds one original edge per matched
    pair of shrunken-graph nodes. Blossom interiors are never stored;
    they are recomputed by `lift_matching` from each blossom's remembered
    odd cycle and its current external attachment point. Shrinking and
    deshrinking therefore cannot change the deshrunken matching.
  * All structure caches (shrunken view, forest) are rebuilt from scratch
    after every mutation. Instances here are desk-scale; correctness and
    auditability win over asymptotics.
  * Determinism: forest growth scans shrunken-graph nodes in ascending id
    (a node's id is the smallest original node it contains) and each
    node's incident edges in instance input order. The first event found
    in that order is the one acted on.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping, Union

from .graph import Instance, Matching, RationalInput, as_rational, matching_weight

ZERO = Fraction(0)

LABEL_S = "S"
LABEL_T = "T"

STATUS_PERFECT = "perfect-found"
STATUS_NO_PERFECT = "no-perfect-matching"

Pair = tuple[int, int]


class EngineStateError(RuntimeError):
    """Raised when an operation is called in the wrong engine phase."""


class InfeasibleUpdateError(ValueError):
    """A dual update was rejected; carries the violated constraint.

    Attributes mirror certificate violations: constraint id, witness
    (edge index or node set), exact lhs and rhs. The engine state is
    unchanged when this is raised.
    """

    def __init__(self, constraint: str, witness, lhs, rhs):
        super().__init__(f"{constraint}: witness={witness} lhs={lhs} rhs={rhs}")
        self.constraint = constraint
        self.witness = witness
        self.lhs = lhs
        self.rhs = rhs


# ---------------------------------------------------------------------------
# Frozen dual state, snapshots, run results


@dataclass(frozen=True)
class BlossomDual:
    """One odd set of the laminar family with its dual value."""

    nodes: frozenset[int]
    pi: Fraction


@dataclass(frozen=True)
class DualState:
    """Immutable copy of the duals: singleton values plus all blossoms.

    The laminar family is the set of all singletons together with the
    node sets of `blossoms` (nested members included). Any odd set not
    listed has dual value 0.
    """

    singleton_pi: tuple[Fraction, ...]
    blossoms: tuple[BlossomDual, ...]
    beta: Fraction = ZERO

    def pi_star(self, v: int) -> Fraction:
        """Accumulated dual value of node v over all sets containing it."""
        total = self.singleton_pi[v]
        for b in self.blossoms:
            if v in b.nodes:
                total += b.pi
        return total

    def edge_load(self, u: int, v: int) -> Fraction:
        """Sum of duals over all sets containing exactly one of u, v."""
        total = self.singleton_pi[u] + self.singleton_pi[v]
        for b in self.blossoms:
            if (u in b.nodes) != (v in b.nodes):
                total += b.pi
        return total


@dataclass(frozen=True)
class Snapshot:
    """One intermediate matching with the duals frozen at that moment."""

    cardinality: int
    matching: Matching
    dual_state: DualState
    weight: Fraction


@dataclass(frozen=True)
class RunResult:
    """All snapshots of one run, ordered by cardinality 0, 1, ..., K."""

    snapshots: tuple[Snapshot, ...]
    status: str  # STATUS_PERFECT or STATUS_NO_PERFECT
    mode: str  # "perfect" or "maximum"
    beta: Fraction = ZERO

    @property
    def final_index(self) -> int:
        return len(self.snapshots) - 1

    @property
    def final(self) -> Snapshot:
        return self.snapshots[-1]

    @property
    def infeasible(self) -> bool:
        """True when a perfect matching was requested but none exists."""
        return self.mode == "perfect" and self.status == STATUS_NO_PERFECT


# ---------------------------------------------------------------------------
# Dual update policies


@dataclass(frozen=True)
class UniformPolicy:
    """Every tree of the alternating forest moves by the same largest
    feasible amount in every dual update."""


@dataclass(frozen=True)
class ScriptedPolicy:
    """Explicit per-tree amounts for the first len(phases) dual updates.

    phases[i] lists the amounts for dual update i, bound to trees in
    ascending order of their root id; trees beyond the list get 0. Once
    the script is exhausted the run continues with uniform updates. Each
    phase is validated against the dual constraints before it is applied.
    """

    phases: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def single_phase(cls, amounts: Iterable[RationalInput]) -> "ScriptedPolicy":
        return cls((tuple(as_rational(a) for a in amounts),))


UNIFORM = UniformPolicy()

DualPolicy = Union[UniformPolicy, ScriptedPolicy]


# ---------------------------------------------------------------------------
# Views of the engine state


@dataclass(frozen=True)
class ShrunkenView:
    """The shrunken graph: one node per maximal set, tight edges only.

    Node ids are the smallest original node of each maximal set.
    tight_edges lists (edge_index, view_u, view_v) in input order.
    """

    nodes: tuple[int, ...]
    members: dict[int, frozenset[int]]
    tight_edges: tuple[tuple[int, int, int], ...]


@dataclass(frozen=True)
class ForestLabels:
    """Labels of the alternating forest over the shrunken graph.

    T-nodes (roots included) sit at even alternating distance from an
    exposed root, S-nodes at odd distance; unlabeled nodes are free.
    """

    label: dict[int, str]
    parent: dict[int, tuple[int, int]]  # view node -> (parent view node, edge index)
    root: dict[int, int]
    roots: tuple[int, ...]

    def trees(self) -> tuple[int, ...]:
        return self.roots


@dataclass(frozen=True)
class AlternatingWalk:
    """An alternating walk between exposed shrunken-graph nodes.

    nodes are view ids; edges[i] is the instance edge index joining
    nodes[i] and nodes[i+1]. Edges alternate unmatched, matched,
    unmatched, ... and both end nodes are exposed. A walk that revisits
    no node is an augmenting path; otherwise it closes over a blossom.
    """

    nodes: tuple[int, ...]
    edges: tuple[int, ...]

    def is_path(self) -> bool:
        return len(set(self.nodes)) == len(self.nodes)


@dataclass(frozen=True)
class AlphaResult:
    """Largest feasible uniform dual step, or None when unbounded."""

    alpha: Fraction | None
    binding: tuple | None  # (constraint id, witness) of the binding bound


# ---------------------------------------------------------------------------
# Internal blossom records


class _Blossom:
    """A shrunken odd cycle. cycle[0] is the base constituent; cycle_edges[i]
    is the original edge joining cycle[i] and cycle[(i+1) % len]."""

    __slots__ = ("nodes", "pi", "cycle", "cycle_edges")

    def __init__(self, nodes: frozenset[int], cycle: list, cycle_edges: list[Pair]):
        self.nodes = nodes
        self.pi: Fraction = ZERO
        self.cycle = cycle
        self.cycle_edges = cycle_edges

    def constituent_index(self, node: int) -> int:
        for i, c in enumerate(self.cycle):
            if node in (c.nodes if isinstance(c, _Blossom) else (c,)):
                return i
        raise ValueError(f"node {node} not inside blossom {sorted(self.nodes)}")

    def descendants(self) -> Iterator["_Blossom"]:
        yield self
        for c in self.cycle:
            if isinstance(c, _Blossom):
                yield from c.descendants()


def _completion(rec: _Blossom, entry: int | None) -> set[Pair]:
    """Interior near-perfect matching of a blossom, leaving only the
    constituent holding `entry` (the base when entry is None) uncovered
    at the top level, recursively."""
    size = len(rec.cycle)
    half = (size - 1) // 2
    j = 0 if entry is None else rec.constituent_index(entry)
    out: set[Pair] = set()
    for t in range(half):
        i = (j + 1 + 2 * t) % size
        pair = rec.cycle_edges[i]
        out.add(pair)
        for c in (rec.cycle[i], rec.cycle[(i + 1) % size]):
            if isinstance(c, _Blossom):
                inner_entry = pair[0] if pair[0] in c.nodes else pair[1]
                out |= _completion(c, inner_entry)
    base = rec.cycle[j]
    if isinstance(base, _Blossom):
        out |= _completion(base, entry)
    return out


# ---------------------------------------------------------------------------
# Engine state


class EngineState:
    """Mutable solver state: duals, blossoms, and the stored matching.

    The stored matching `crossing` contains original edges, each joining
    two distinct maximal sets, at most one per set; blossom interiors are
    derived, never stored. Use `solve` for a full run, or drive the state
    manually with grow_forest / augment / shrink_blossom / compute_alpha /
    apply_dual_update for stepping and inspection.
    """

    def __init__(self, inst: Instance, beta: RationalInput = 0):
        beta = as_rational(beta)
        if beta < 0:
            raise ValueError(f"beta must be nonnegative, got {beta}")
        for e in inst.edges:
            if e.weight < 0:
                raise ValueError(
                    f"negative weight on edge ({e.u}, {e.v}); normalize weights first")
        if inst.edges and 2 * beta > inst.min_weight():
            raise ValueError(
                f"beta {beta} makes the initial duals infeasible: "
                f"2*beta exceeds the minimum edge weight {inst.min_weight()}")
        self.inst = inst
        self.beta = beta
        self.pi_node: list[Fraction] = [beta] * inst.node_count
        self.blossoms: list[_Blossom] = []  # maximal nontrivial blossoms
        self.crossing: set[Pair] = set()
        self._view: ShrunkenView | None = None
        self._forest: ForestLabels | None = None
        self._walk: AlternatingWalk | None = None
        self._forest_grown = False

    # -- caching ------------------------------------------------------------

    def _invalidate(self) -> None:
        self._view = None
        self._forest = None
        self._walk = None
        self._forest_grown = False

    # -- dual arithmetic ----------------------------------------------------

    def pi_star_all(self) -> list[Fraction]:
        """Accumulated dual value per original node."""
        acc = list(self.pi_node)
        for top in self.blossoms:
            for rec in top.descendants():
                for v in rec.nodes:
                    acc[v] += rec.pi
        return acc

    def slack(self, edge_index: int) -> Fraction:
        """w_e minus the sum of duals over sets cut by edge e."""
        e = self.inst.edges[edge_index]
        return e.weight - self.frozen_duals().edge_load(e.u, e.v)

    # -- structure ----------------------------------------------------------

    def top_map(self) -> dict[int, int]:
        """Original node -> id of its maximal set (its view node)."""
        top = {v: v for v in range(self.inst.node_count)}
        for rec in self.blossoms:
            key = min(rec.nodes)
            for v in rec.nodes:
                top[v] = key
        return top

    def top_record(self, key: int) -> Union[_Blossom, int]:
        for rec in self.blossoms:
            if min(rec.nodes) == key:
                return rec
        return key

    def shrunken_view(self) -> ShrunkenView:
        if self._view is not None:
            return self._view
        top = self.top_map()
        members: dict[int, frozenset[int]] = {
            v: frozenset((v,)) for v in range(self.inst.node_count)}
        for rec in self.blossoms:
            key = min(rec.nodes)
            members[key] = rec.nodes
            for v in rec.nodes:
                if v != key:
                    del members[v]
        pi_star = self.pi_star_all()
        tight = []
        for i, e in enumerate(self.inst.edges):
            ku, kv = top[e.u], top[e.v]
            if ku == kv:
                continue
            if pi_star[e.u] + pi_star[e.v] == e.weight:
                tight.append((i, ku, kv))
        self._view = ShrunkenView(tuple(sorted(members)), members, tuple(tight))
        return self._view

    def view_mates(self) -> dict[int, tuple[int, int]]:
        """View node -> (mate view node, crossing edge index)."""
        top = self.top_map()
        mates: dict[int, tuple[int, int]] = {}
        for u, v in self.crossing:
            ku, kv = top[u], top[v]
            assert ku != kv, "stored matching edge inside one shrunken node"
            assert ku not in mates and kv not in mates, \
                "two stored matching edges at one shrunken node"
            idx = self.inst.edge_index(u, v)
            mates[ku] = (kv, idx)
            mates[kv] = (ku, idx)
        return mates

    def exposed_view_keys(self) -> tuple[int, ...]:
        mates = self.view_mates()
        return tuple(k for k in self.shrunken_view().nodes if k not in mates)

    def crossing_edge_at(self, nodes: frozenset[int]) -> Pair | None:
        """The stored matching edge with exactly one endpoint in `nodes`."""
        found = None
        for u, v in self.crossing:
            if (u in nodes) != (v in nodes):
                assert found is None, "two matching edges leave one blossom"
                found = (u, v)
        return found

    # -- forest growth ------------------------------------------------------

    def grow_forest(self) -> AlternatingWalk | None:
        """Grow the alternating forest from all exposed view nodes.

        Returns the first X-to-X alternating walk found in deterministic
        scan order (a path triggers augmentation, anything else closes a
        blossom), or None when the forest is complete and a dual update
        is due. The labels remain available via forest_labels().
        """
        if self._forest_grown:
            return self._walk
        view = self.shrunken_view()
        mates = self.view_mates()

        incident: dict[int, list[tuple[int, int, int]]] = {k: [] for k in view.nodes}
        for i, ku, kv in view.tight_edges:
            incident[ku].append((i, ku, kv))
            incident[kv].append((i, kv, ku))

        label: dict[int, str] = {}
        parent: dict[int, tuple[int, int]] = {}
        root: dict[int, int] = {}
        roots = tuple(k for k in view.nodes if k not in mates)
        for k in roots:
            label[k] = LABEL_T
            root[k] = k

        walk: AlternatingWalk | None = None
        pending = set(roots)
        while pending and walk is None:
            u = min(pending)
            pending.discard(u)
            for eidx, _, w in incident[u]:
                lw = label.get(w)
                if lw == LABEL_S:
                    continue
                if lw == LABEL_T:
                    walk = self._build_walk(u, w, eidx, parent, root)
                    break
                # w is free; exposed nodes are roots, so w must be matched.
                assert w in mates, "free exposed view node found during growth"
                mate_key, mate_eidx = mates[w]
                label[w] = LABEL_S
                parent[w] = (u, eidx)
                root[w] = root[u]
                label[mate_key] = LABEL_T
                parent[mate_key] = (w, mate_eidx)
                root[mate_key] = root[u]
                pending.add(mate_key)

        self._forest = ForestLabels(label, parent, root, tuple(sorted(roots)))
        self._walk = walk
        self._forest_grown = True
        return walk

    def _build_walk(self, u: int, w: int, closing_edge: int,
                    parent: dict[int, tuple[int, int]],
                    root: dict[int, int]) -> AlternatingWalk:
        def chain(key: int) -> tuple[list[int], list[int]]:
            nodes, edges = [key], []
            while key in parent:
                key, eidx = parent[key][0], parent[key][1]
                nodes.append(key)
                edges.append(eidx)
            return nodes, edges

        nodes_u, edges_u = chain(u)
        nodes_w, edges_w = chain(w)
        nodes = nodes_u[::-1] + nodes_w
        edges = edges_u[::-1] + [closing_edge] + edges_w
        return AlternatingWalk(tuple(nodes), tuple(edges))

    def forest_labels(self) -> ForestLabels:
        self.grow_forest()
        assert self._forest is not None
        return self._forest

    def _require_clean_forest(self) -> ForestLabels:
        walk = self.grow_forest()
        if walk is not None:
            kind = "augmenting walk" if walk.is_path() else "blossom walk"
            raise EngineStateError(
                f"dual update requested while an {kind} exists; resolve it first")
        assert self._forest is not None
        return self._forest

    # -- primal steps ---------------------------------------------------------

    def augment(self, walk: AlternatingWalk) -> None:
        """Flip the matching along an augmenting path of the shrunken graph."""
        if not walk.is_path():
            raise ValueError("cannot augment along a walk that is not a path")
        mates = self.view_mates()
        if walk.nodes[0] in mates or walk.nodes[-1] in mates:
            raise ValueError("augmenting path must join two exposed nodes")
        for pos, eidx in enumerate(walk.edges, start=1):
            e = self.inst.edges[eidx]
            pair = (e.u, e.v)
            if pos % 2 == 1:
                assert pair not in self.crossing, "unmatched walk edge already matched"
                self.crossing.add(pair)
            else:
                assert pair in self.crossing, "matched walk edge missing from matching"
                self.crossing.remove(pair)
        self._invalidate()

    # -- snapshots ------------------------------------------------------------

    def frozen_duals(self) -> DualState:
        records = [rec for top in self.blossoms for rec in top.descendants()]
        records.sort(key=lambda r: (min(r.nodes), len(r.nodes)))
        return DualState(
            tuple(self.pi_node),
            tuple(BlossomDual(r.nodes, r.pi) for r in records),
            self.beta)

    def snapshot(self) -> Snapshot:
        m = lift_matching(self)
        return Snapshot(len(m), m, self.frozen_duals(), matching_weight(self.inst, m))


# ---------------------------------------------------------------------------
# Operations on the engine state


def lift_matching(state: EngineState) -> Matching:
    """The current matching on the original graph, all blossoms expanded.

    Each maximal blossom contributes the interior near-perfect matching
    of its remembered cycle, leaving free exactly the node covered by the
    external matching edge (or the blossom's base node if it is exposed).
    """
    edges: set[Pair] = set(state.crossing)
    for rec in state.blossoms:
        external = state.crossing_edge_at(rec.nodes)
        if external is None:
            entry = None
        else:
            entry = external[0] if external[0] in rec.nodes else external[1]
        edges |= _completion(rec, entry)
    return Matching(frozenset(edges))


def shrink_blossom(state: EngineState, walk: AlternatingWalk) -> EngineState:
    """Shrink the odd cycle closed by a non-path X-to-X walk.

    The cycle's node set joins the laminar family with dual value 0; its
    matched cycle edges leave the stored matching (they become derived
    interior edges). The deshrunken matching is unchanged.
    """
    if walk.is_path():
        raise ValueError("walk is a path; augment instead of shrinking")
    nodes, edges = walk.nodes, walk.edges
    if nodes[0] != nodes[-1]:
        raise ValueError("non-path walk must start and end at the same exposed node")
    last = len(edges)
    strip = 0
    while strip + 1 < last - strip - 1 and nodes[strip + 1] == nodes[last - strip - 1]:
        strip += 1
    assert strip % 2 == 0, "walk enters the cycle on a matched edge"

    cycle_keys = list(nodes[strip:last - strip])
    cycle_eidx = list(edges[strip:last - strip])
    assert len(cycle_keys) % 2 == 1 and len(cycle_keys) >= 3

    cycle: list = []
    node_union: set[int] = set()
    for key in cycle_keys:
        item = state.top_record(key)
        cycle.append(item)
        node_union |= item.nodes if isinstance(item, _Blossom) else {key}
    cycle_pairs: list[Pair] = []
    for eidx in cycle_eidx:
        e = state.inst.edges[eidx]
        cycle_pairs.append((e.u, e.v))

    # The matched cycle edges sit at odd positions; they move from the
    # stored matching into the derived interior.
    for i, pair in enumerate(cycle_pairs):
        if i % 2 == 1:
            assert pair in state.crossing
            state.crossing.remove(pair)
        else:
            assert pair not in state.crossing

    rec = _Blossom(frozenset(node_union), cycle, cycle_pairs)
    state.blossoms = [b for b in state.blossoms if b not in cycle] + [rec]
    state._invalidate()
    return state


def compute_alpha(state: EngineState) -> AlphaResult:
    """Largest uniform dual step keeping the dual constraints feasible.

    Bounds, over the fully grown forest:
      (a) pi(U) for S-labeled blossoms (their dual is about to decrease);
      (b) slack(e) for edges joining a T-node to a free node;
      (c) slack(e)/2 for edges joining two T-nodes in distinct view nodes.
    Returns alpha None when no bound exists (no perfect matching).
    """
    labels = state._require_clean_forest()
    top = state.top_map()
    pi_star = state.pi_star_all()

    best: Fraction | None = None
    binding: tuple | None = None

    def offer(value: Fraction, what: tuple) -> None:
        nonlocal best, binding
        if best is None or value < best:
            best, binding = value, what

    for rec in state.blossoms:
        key = min(rec.nodes)
        if labels.label.get(key) == LABEL_S:
            offer(rec.pi, ("blossom-nonneg", rec.nodes))

    for i, e in enumerate(state.inst.edges):
        ku, kv = top[e.u], top[e.v]
        if ku == kv:
            continue
        lu, lv = labels.label.get(ku), labels.label.get(kv)
        slack = e.weight - pi_star[e.u] - pi_star[e.v]
        if lu == LABEL_T and lv == LABEL_T:
            offer(slack / 2, ("edge-t-t", i))
        elif (lu == LABEL_T and lv is None) or (lv == LABEL_T and lu is None):
            offer(slack, ("edge-t-free", i))

    return AlphaResult(best, binding)


def apply_dual_update(state: EngineState,
                      amounts: Union[RationalInput, Mapping[int, RationalInput]],
                      ) -> EngineState:
    """Shift duals by per-tree amounts: +a on T-nodes, -a on S-nodes.

    `amounts` is either a single value applied to every tree, or a map
    from tree root (view node id) to that tree's amount; unmapped trees
    get 0. The update is validated against the dual constraints before
    anything is written; an infeasible request raises InfeasibleUpdateError
    and leaves the state untouched. Afterwards every maximal S-labeled
    blossom whose dual reached 0 is deshrunken and removed.
    """
    labels = state._require_clean_forest()

    if isinstance(amounts, Mapping):
        per_root = {k: as_rational(a) for k, a in amounts.items()}
        unknown = set(per_root) - set(labels.roots)
        if unknown:
            raise ValueError(f"amounts given for non-root view nodes {sorted(unknown)}")
    else:
        value = as_rational(amounts)
        per_root = {k: value for k in labels.roots}

    delta: dict[int, Fraction] = {}
    for key, lbl in labels.label.items():
        amount = per_root.get(labels.root[key], ZERO)
        delta[key] = amount if lbl == LABEL_T else -amount

    # Validate nonnegativity of blossom duals.
    for rec in state.blossoms:
        key = min(rec.nodes)
        if key in delta:
            new_pi = rec.pi + delta[key]
            if new_pi < 0:
                raise InfeasibleUpdateError("blossom-nonneg", rec.nodes, new_pi, ZERO)

    # Validate the edge constraints. Only edges whose load grows can break.
    top = state.top_map()
    pi_star = state.pi_star_all()
    for i, e in enumerate(state.inst.edges):
        ku, kv = top[e.u], top[e.v]
        if ku == kv:
            continue
        change = delta.get(ku, ZERO) + delta.get(kv, ZERO)
        if change <= 0:
            continue
        new_load = pi_star[e.u] + pi_star[e.v] + change
        if new_load > e.weight:
            raise InfeasibleUpdateError("edge-slack", i, new_load, e.weight)

    # Commit.
    for key, d in delta.items():
        if d == 0:
            continue
        item = state.top_record(key)
        if isinstance(item, _Blossom):
            item.pi += d
        else:
            state.pi_node[key] += d

    # Deshrink maximal S-labeled blossoms whose dual is now 0.
    for rec in [b for b in state.blossoms
                if labels.label.get(min(b.nodes)) == LABEL_S and b.pi == 0]:
        external = state.crossing_edge_at(rec.nodes)
        assert external is not None, "S-labeled blossom must be matched"
        entry = external[0] if external[0] in rec.nodes else external[1]
        size = len(rec.cycle)
        j = rec.constituent_index(entry)
        for t in range((size - 1) // 2):
            state.crossing.add(rec.cycle_edges[(j + 1 + 2 * t) % size])
        state.blossoms.remove(rec)
        state.blossoms.extend(c for c in rec.cycle if isinstance(c, _Blossom))

    state._invalidate()
    return state


# ---------------------------------------------------------------------------
# Full runs


def solve(inst: Instance,
          mode: str = "maximum",
          policy: DualPolicy | None = None,
          beta: RationalInput = 0,
          on_dual_update: Callable[[EngineState], None] | None = None,
          ) -> RunResult:
    """Run the solver, recording a snapshot at every cardinality.

    Weights must be nonnegative (run normalize_weights first). In both
    modes the run ends either with a perfect matching or with an unbounded
    dual step; the latter proves the current matching has maximum
    cardinality, which "maximum" mode treats as normal termination and
    "perfect" mode flags as infeasible (see RunResult.infeasible).

    on_dual_update, when given, is called with the engine state after
    every applied dual update; useful for instrumentation.
    """
    if mode not in ("perfect", "maximum"):
        raise ValueError(f"unknown mode {mode!r}")
    if policy is None:
        policy = UNIFORM

    state = EngineState(inst, beta)
    snapshots = [state.snapshot()]
    scripted = list(policy.phases) if isinstance(policy, ScriptedPolicy) else []
    phase = 0

    steps = 0
    step_limit = 200 + 50 * (inst.node_count + len(inst.edges))
    while True:
        steps += 1
        if steps > step_limit:
            raise RuntimeError("step limit exceeded; this is a solver defect")

        if not state.exposed_view_keys():
            status = STATUS_PERFECT
            break

        walk = state.grow_forest()
        if walk is not None:
            if walk.is_path():
                state.augment(walk)
                snapshots.append(state.snapshot())
            else:
                shrink_blossom(state, walk)
            continue

        if phase < len(scripted):
            amounts = _bind_amounts(state.forest_labels(), scripted[phase])
            phase += 1
        else:
            result = compute_alpha(state)
            if result.alpha is None:
                status = STATUS_NO_PERFECT
                break
            amounts = result.alpha
        apply_dual_update(state, amounts)
        if on_dual_update is not None:
            on_dual_update(state)

    return RunResult(tuple(snapshots), status, mode, state.beta)


def _bind_amounts(labels: ForestLabels,
                  amounts: tuple[Fraction, ...]) -> dict[int, Fraction]:
    roots = sorted(labels.roots)
    if len(amounts) > len(roots):
        raise ValueError(
            f"scripted phase lists {len(amounts)} amounts but the forest has "
            f"only {len(roots)} trees")
    return dict(zip(roots, amounts))
