"""Exhaustive ground truth: the minimum weight and a witness for every
matching cardinality, by exact enumeration over node subsets.

This module is the independent check against which the solver is tested;
it shares no code with the solver beyond the graph types. The search is a
memoized branch over the lowest undecided node (leave it unmatched, or
match it to each available neighbor), which visits every matching exactly
once up to shared prefixes. Weights are scaled to integers internally so
the inner loop stays in machine arithmetic; results are exact Fractions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .graph import Instance, Matching, matching_weight

DEFAULT_NODE_LIMIT = 16

Pair = tuple[int, int]
# Per cardinality: (scaled weight, witness edges sorted ascending) or None.
_Entry = tuple[int, tuple[Pair, ...]]


@dataclass(frozen=True)
class CardinalityRecord:
    cardinality: int
    min_weight: Fraction
    witness: Matching


@dataclass(frozen=True)
class OracleTable:
    """Per-cardinality minima for one instance, k = 0 .. nu."""

    by_cardinality: tuple[CardinalityRecord, ...]

    @property
    def nu(self) -> int:
        return len(self.by_cardinality) - 1

    def min_weight(self, k: int) -> Fraction:
        return self.by_cardinality[k].min_weight

    def witness(self, k: int) -> Matching:
        return self.by_cardinality[k].witness


def min_weight_by_cardinality(inst: Instance,
                              limit: int = DEFAULT_NODE_LIMIT) -> OracleTable:
    """Exact minima and lexicographically-first witnesses for every k.

    Witness tie-break: among minimum-weight matchings of a cardinality, the
    one whose sorted edge tuple is smallest. Raises ValueError when the
    instance exceeds the node budget.
    """
    n = inst.node_count
    if n > limit:
        raise ValueError(f"instance has {n} nodes, exceeding the oracle budget of {limit}")

    scale = math.lcm(*(e.weight.denominator for e in inst.edges)) if inst.edges else 1
    neighbors: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for e in inst.edges:
        w = int(e.weight * scale)
        neighbors[e.u].append((e.v, w))
        neighbors[e.v].append((e.u, w))
    for lst in neighbors:
        lst.sort()

    full = (1 << n) - 1
    memo: dict[int, list[_Entry | None]] = {}

    def best(mask: int) -> list[_Entry | None]:
        # Entries indexed by cardinality, over the nodes not yet decided.
        if mask == full:
            return [(0, ())]
        cached = memo.get(mask)
        if cached is not None:
            return cached
        v = ((mask + 1) & ~mask).bit_length() - 1  # lowest undecided node
        entries: list[_Entry | None] = list(best(mask | (1 << v)))
        for u, w in neighbors[v]:
            if mask & (1 << u):
                continue
            sub = best(mask | (1 << v) | (1 << u))
            for k, entry in enumerate(sub):
                if entry is None:
                    continue
                cand: _Entry = (entry[0] + w, ((v, u),) + entry[1])
                kk = k + 1
                if kk >= len(entries):
                    entries.extend([None] * (kk + 1 - len(entries)))
                cur = entries[kk]
                if cur is None or cand < cur:
                    entries[kk] = cand
        memo[mask] = entries
        return entries

    records: list[CardinalityRecord] = []
    for k, entry in enumerate(best(0)):
        if entry is None:
            continue
        scaled, pairs = entry
        records.append(CardinalityRecord(k, Fraction(scaled, scale),
                                         Matching.from_pairs(pairs)))
    # Every cardinality up to nu is achievable (drop edges from a witness),
    # so the table has no holes.
    assert [r.cardinality for r in records] == list(range(len(records)))
    table = OracleTable(tuple(records))
    for rec in table.by_cardinality:
        assert matching_weight(inst, rec.witness) == rec.min_weight
    return table


def matching_number(inst: Instance, limit: int = DEFAULT_NODE_LIMIT) -> int:
    """The maximum cardinality of a matching, by the same enumeration."""
    return min_weight_by_cardinality(inst, limit).nu
