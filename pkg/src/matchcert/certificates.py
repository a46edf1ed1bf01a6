"""Dual certificates of cardinality-optimality, and their verification.

A snapshot's frozen duals transform into a certificate (gamma, y, z) for
the linear program over matchings of a fixed cardinality k:

    minimize  w.x  over  x >= 0,  x(delta(v)) <= 1,
              x(E[U]) <= (|U|-1)/2 for odd U,  x(E) = k,

whose dual constrains, for every edge e = {u, v},

    y_u + y_v + sum_{U : e inside U} z_U + gamma  <=  w_e,
    y <= 0,  z <= 0.

The transformation is gamma = 2 * max accumulated dual, y_v = accumulated
dual of v minus that maximum, z_U = -2 pi(U) on blossoms. Checking dual
feasibility plus complementary slackness against a matching of cardinality
k proves, by weak LP duality, that the matching has minimum weight among
all matchings of cardinality k. No LP is ever solved; every check is an
exact rational comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .engine import DualState, RunResult
from .graph import (Instance, Matching, alternating_path_difference,
                    matching_weight)

ZERO = Fraction(0)


@dataclass(frozen=True)
class DualAccumulation:
    """Per-node accumulated dual values and their maximum."""

    pi_star: tuple[Fraction, ...]
    pi_star_max: Fraction


def accumulate_duals(dual: DualState) -> DualAccumulation:
    """Sum, for every node, the duals of all sets containing it."""
    acc = list(dual.singleton_pi)
    for b in dual.blossoms:
        for v in b.nodes:
            acc[v] += b.pi
    return DualAccumulation(tuple(acc), max(acc))


@dataclass(frozen=True)
class CardinalityCertificate:
    """A dual solution (gamma, y, z) claiming optimality at cardinality k.

    z is sparse: sets absent from it have value 0.
    """

    gamma: Fraction
    y: tuple[Fraction, ...]
    z: tuple[tuple[frozenset[int], Fraction], ...]
    k: int

    def z_sum_inside(self, u: int, v: int) -> Fraction:
        """Sum of z over sets containing both endpoints."""
        total = ZERO
        for nodes, value in self.z:
            if u in nodes and v in nodes:
                total += value
        return total


def transform_duals(dual: DualState, k: int) -> CardinalityCertificate:
    """Build the cardinality-k certificate from frozen duals.

    gamma = 2 * pi_star_max, y_v = pi_star(v) - pi_star_max, and
    z_U = -2 pi(U) on every blossom of the family. y <= 0 and z <= 0 hold
    by construction (blossom duals are nonnegative).
    """
    acc = accumulate_duals(dual)
    gamma = 2 * acc.pi_star_max
    y = tuple(p - acc.pi_star_max for p in acc.pi_star)
    z = tuple((b.nodes, -2 * b.pi) for b in dual.blossoms)
    return CardinalityCertificate(gamma, y, z, k)


@dataclass(frozen=True)
class Violation:
    """One failed exact check: which constraint, where, and both sides."""

    constraint: str
    witness: object
    lhs: object
    rhs: object


@dataclass(frozen=True)
class Verdict:
    violations: tuple[Violation, ...]

    @property
    def passed(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.passed


def _verdict(violations: Iterable[Violation]) -> Verdict:
    return Verdict(tuple(violations))


def check_cut_feasibility(inst: Instance, dual: DualState) -> Verdict:
    """Check the cut-form dual constraints exactly.

    Blossom duals must be nonnegative, and for every edge the summed dual
    load over sets cut by the edge must not exceed the edge weight.
    """
    violations: list[Violation] = []
    for b in dual.blossoms:
        if b.pi < 0:
            violations.append(Violation("blossom-nonneg", b.nodes, b.pi, ZERO))
    for e in inst.edges:
        load = dual.edge_load(e.u, e.v)
        if load > e.weight:
            violations.append(Violation("edge-load", (e.u, e.v), load, e.weight))
    return _verdict(violations)


def check_cardinality_certificate(inst: Instance, m: Matching,
                                  cert: CardinalityCertificate) -> Verdict:
    """Check feasibility and complementary slackness, all exactly.

    Checks: the matching has cardinality cert.k; every edge satisfies the
    dual constraint (F1); y and z are nonpositive (F2); matched edges make
    (F1) tight (CS1); nodes with negative y are matched (CS2); sets with
    negative z contain exactly (|U|-1)/2 matching edges (CS3). A passing
    verdict certifies m is minimum-weight among cardinality-k matchings.
    """
    violations: list[Violation] = []

    if len(m) != cert.k:
        violations.append(Violation("cardinality", None, len(m), cert.k))

    for v, yv in enumerate(cert.y):
        if yv > 0:
            violations.append(Violation("y-nonpositive", v, yv, ZERO))
    for nodes, zu in cert.z:
        if zu > 0:
            violations.append(Violation("z-nonpositive", nodes, zu, ZERO))

    for e in inst.edges:
        lhs = cert.y[e.u] + cert.y[e.v] + cert.z_sum_inside(e.u, e.v) + cert.gamma
        if lhs > e.weight:
            violations.append(Violation("edge-feasibility", (e.u, e.v), lhs, e.weight))
        elif (e.u, e.v) in m and lhs != e.weight:
            violations.append(
                Violation("cs-matched-edge-tight", (e.u, e.v), lhs, e.weight))

    for v, yv in enumerate(cert.y):
        if yv < 0 and not m.covers(v):
            violations.append(Violation("cs-exposed-zero-y", v, yv, ZERO))

    for nodes, zu in cert.z:
        if zu < 0:
            inside = m.count_inside(nodes)
            expected = (len(nodes) - 1) // 2
            if inside != expected:
                violations.append(
                    Violation("cs-blossom-full", nodes, inside, expected))

    return _verdict(violations)


def verify_run(inst: Instance, run: RunResult) -> Verdict:
    """Verify a whole run: every snapshot's certificate plus the shape of
    the snapshot sequence.

    Per snapshot: recompute the certificate from the frozen duals and
    check it against the snapshot's matching; recheck the stored weight.
    Across snapshots: cardinalities must be 0, 1, ..., K, and consecutive
    matchings must differ by a single alternating path.
    """
    violations: list[Violation] = []

    for i, snap in enumerate(run.snapshots):
        tag = f"k={snap.cardinality}"
        if snap.cardinality != i:
            violations.append(
                Violation(f"snapshot-cardinality-sequence:{tag}", i,
                          snap.cardinality, i))
        actual_weight = matching_weight(inst, snap.matching)
        if actual_weight != snap.weight:
            violations.append(
                Violation(f"snapshot-weight:{tag}", None, snap.weight, actual_weight))
        cert = transform_duals(snap.dual_state, snap.cardinality)
        sub = check_cardinality_certificate(inst, snap.matching, cert)
        for viol in sub.violations:
            violations.append(
                Violation(f"{viol.constraint}:{tag}", viol.witness,
                          viol.lhs, viol.rhs))

    for prev, nxt in zip(run.snapshots, run.snapshots[1:]):
        diff = alternating_path_difference(prev.matching, nxt.matching)
        if diff.kind != "single-path":
            violations.append(
                Violation(f"consecutive-single-path:k={nxt.cardinality}",
                          diff.components, diff.kind, "single-path"))

    return _verdict(violations)
