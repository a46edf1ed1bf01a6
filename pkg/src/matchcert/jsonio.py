"""JSON wire formats for run results, oracle tables, and verdicts.

Conventions: node ids are 1-based in JSON, rationals serialize as strings
("7/2", or "3" when integral), and all collections are emitted in a fixed
deterministic order so identical inputs produce byte-identical output.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .certificates import CardinalityCertificate, Verdict, transform_duals
from .engine import BlossomDual, DualState, RunResult, Snapshot
from .graph import Matching
from .oracle import OracleTable


def rational_to_str(value: Fraction) -> str:
    return str(value)


def str_to_rational(text: str) -> Fraction:
    return Fraction(text)


def _matching_to_json(m: Matching) -> list[list[int]]:
    return [[u + 1, v + 1] for u, v in m.sorted_edges()]


def _matching_from_json(pairs: list[list[int]]) -> Matching:
    return Matching.from_pairs([(u - 1, v - 1) for u, v in pairs])


def _duals_to_json(dual: DualState) -> dict[str, Any]:
    return {
        "singletons": {str(v + 1): rational_to_str(p)
                       for v, p in enumerate(dual.singleton_pi)},
        "blossoms": [{"nodes": [v + 1 for v in sorted(b.nodes)],
                      "pi": rational_to_str(b.pi)}
                     for b in dual.blossoms],
        "beta": rational_to_str(dual.beta),
    }


def _duals_from_json(data: dict[str, Any]) -> DualState:
    singles = data["singletons"]
    n = len(singles)
    pi = tuple(str_to_rational(singles[str(v + 1)]) for v in range(n))
    blossoms = tuple(
        BlossomDual(frozenset(v - 1 for v in item["nodes"]),
                    str_to_rational(item["pi"]))
        for item in data.get("blossoms", ()))
    beta = str_to_rational(data.get("beta", "0"))
    return DualState(pi, blossoms, beta)


def _certificate_to_json(cert: CardinalityCertificate) -> dict[str, Any]:
    return {
        "gamma": rational_to_str(cert.gamma),
        "y": {str(v + 1): rational_to_str(yv) for v, yv in enumerate(cert.y)},
        "z": [{"nodes": [v + 1 for v in sorted(nodes)],
               "value": rational_to_str(zu)}
              for nodes, zu in cert.z],
    }


def snapshot_to_dict(snap: Snapshot) -> dict[str, Any]:
    return {
        "k": snap.cardinality,
        "weight": rational_to_str(snap.weight),
        "matching": _matching_to_json(snap.matching),
        "duals": _duals_to_json(snap.dual_state),
        "certificate": _certificate_to_json(
            transform_duals(snap.dual_state, snap.cardinality)),
    }


def snapshot_from_dict(data: dict[str, Any]) -> Snapshot:
    return Snapshot(
        cardinality=data["k"],
        matching=_matching_from_json(data["matching"]),
        dual_state=_duals_from_json(data["duals"]),
        weight=str_to_rational(data["weight"]),
    )


def run_result_to_dict(run: RunResult) -> dict[str, Any]:
    return {
        "status": run.status,
        "mode": run.mode,
        "beta": rational_to_str(run.beta),
        "snapshots": [snapshot_to_dict(s) for s in run.snapshots],
    }


def run_result_from_dict(data: dict[str, Any]) -> RunResult:
    return RunResult(
        snapshots=tuple(snapshot_from_dict(s) for s in data["snapshots"]),
        status=data["status"],
        mode=data.get("mode", "maximum"),
        beta=str_to_rational(data.get("beta", "0")),
    )


def oracle_table_to_dict(table: OracleTable) -> dict[str, Any]:
    return {
        "nu": table.nu,
        "by_cardinality": [
            {"k": rec.cardinality,
             "min_weight": rational_to_str(rec.min_weight),
             "witness": _matching_to_json(rec.witness)}
            for rec in table.by_cardinality],
    }


def _jsonable_value(value: Any) -> Any:
    if isinstance(value, Fraction):
        return rational_to_str(value)
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    return str(value)


def _jsonable_witness(witness: Any) -> Any:
    if witness is None or isinstance(witness, (int, str)):
        return witness + 1 if isinstance(witness, int) else witness
    if isinstance(witness, (frozenset, set)):
        return [v + 1 for v in sorted(witness)]
    if isinstance(witness, tuple) and all(isinstance(x, int) for x in witness):
        return [x + 1 for x in witness]
    return str(witness)


def verdict_to_dict(verdict: Verdict) -> dict[str, Any]:
    return {
        "pass": verdict.passed,
        "violations": [
            {"constraint": viol.constraint,
             "witness": _jsonable_witness(viol.witness),
             "lhs": _jsonable_value(viol.lhs),
             "rhs": _jsonable_value(viol.rhs)}
            for viol in verdict.violations],
    }


def dumps(data: dict[str, Any]) -> str:
    """Deterministic JSON text: fixed key order, two-space indent."""
    return json.dumps(data, indent=2) + "\n"
