"""Grover key-search cost arithmetic and NIST security-level verdicts.

Everything here is exact integer arithmetic on top of one
high-precision constant: ⌊(π/4)·2^(k/2)⌋ is evaluated with mpmath at a
precision far beyond the 128-bit key sizes in scope, so the floor is
exact.  Costs are reported both as exact integers and in the normalized
m×2^e form (1 ≤ m < 2).

Two gate-counting policies are first-class.  Published total-gates
figures for these ciphers mix two conventions: the LBlock values only
reproduce when T gates are excluded (CNOT+H+X), while the LiCi value
requires all gates (CNOT+H+T+X); both are computed and the caller
decides which to print, so the inconsistency is documented rather than
hidden.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources as _resources
from math import ceil

import mpmath

from .resources import ResourceSummary

GATE_POLICIES = ("all-gates", "clifford-only")
ORACLE_FACTOR = 2  # compute + uncompute


class EstimateError(ValueError):
    pass


@dataclass(frozen=True)
class AttackParameters:
    key_bits: int
    block_bits: int

    def __post_init__(self):
        if self.key_bits < 1 or self.block_bits < 1:
            raise EstimateError("key_bits and block_bits must be positive")

    @property
    def replication(self) -> int:
        """Plaintext-ciphertext pairs needed for a unique surviving key."""
        return ceil(self.key_bits / self.block_bits)


def grover_iterations(key_bits: int) -> int:
    """⌊(π/4)·2^(key_bits/2)⌋, exact for key sizes up to 256 bits."""
    if key_bits < 1:
        raise EstimateError("key_bits must be positive")
    with mpmath.workprec(max(160, key_bits + 96)):
        value = mpmath.pi / 4 * mpmath.power(2, mpmath.mpf(key_bits) / 2)
        return int(mpmath.floor(value))


def normalize(n: int) -> tuple[float, int]:
    """n as (mantissa, exponent) with mantissa in [1, 2) and n = m·2^e."""
    if n <= 0:
        raise EstimateError("cannot normalize a non-positive value")
    e = n.bit_length() - 1
    shift = max(0, e - 60)
    return (n >> shift) / (1 << (e - shift)), e


def format_normalized(n: int, digits: int = 3) -> str:
    m, e = normalize(n)
    return f"{m:.{digits}f}x2^{e}"


class NistThresholds:
    """Configurable gate×depth cost thresholds per NIST security level.

    No single agreed set of threshold values exists, so the defaults
    ship in a configuration file and are documented as such; each
    level entry is either an explicit ``{"cost_exponent": e}`` (cost
    2^e) / ``{"mantissa": m, "cost_exponent": e}`` or a block-cipher
    resource summary ``{"summary": {...}, "key_bits": k, "block_bits":
    b}`` whose all-gates attack cost becomes the threshold.
    """

    def __init__(self, levels: dict[int, int], source: str = ""):
        self.levels = dict(sorted(levels.items()))
        self.source = source
        costs = list(self.levels.values())
        if any(a >= b for a, b in zip(costs, costs[1:])):
            raise EstimateError("thresholds must strictly increase by level")

    @classmethod
    def from_config(cls, doc: dict) -> "NistThresholds":
        levels = {}
        for name, entry in doc["levels"].items():
            if "summary" in entry:
                params = AttackParameters(entry["key_bits"], entry["block_bits"])
                summary = ResourceSummary.from_dict(entry["summary"])
                cost = estimate(summary, params, "all-gates", thresholds=None).cost
            elif "cost_exponent" in entry:
                mantissa = entry.get("mantissa", 1.0)
                cost = int(mantissa * (1 << 62)) << (entry["cost_exponent"] - 62)
            else:
                raise EstimateError(f"level {name}: no summary or cost_exponent")
            levels[int(name)] = cost
        return cls(levels, source=doc.get("note", ""))

    @classmethod
    def default(cls) -> "NistThresholds":
        text = _resources.files("qlbc.data").joinpath("nist_thresholds.json").read_text()
        return cls.from_config(json.loads(text))

    def classify(self, cost: int) -> str:
        verdict = "below-1"
        for level, threshold in self.levels.items():
            if cost >= threshold:
                verdict = str(level)
        return verdict


@dataclass
class AttackCost:
    policy: str
    parameters: AttackParameters
    iterations: int
    gates_per_encryption: int
    total_gates: int
    full_depth: int
    cost: int
    nist_level: str

    def to_dict(self) -> dict:
        tg_m, tg_e = normalize(self.total_gates)
        fd_m, fd_e = normalize(self.full_depth)
        c_m, c_e = normalize(self.cost)
        return {
            "policy": self.policy,
            "key_bits": self.parameters.key_bits,
            "block_bits": self.parameters.block_bits,
            "replication": self.parameters.replication,
            "iterations": str(self.iterations),
            "gates_per_encryption": self.gates_per_encryption,
            "total_gates": {"mantissa": round(tg_m, 4), "exponent": tg_e,
                            "exact": str(self.total_gates)},
            "full_depth": {"mantissa": round(fd_m, 4), "exponent": fd_e,
                           "exact": str(self.full_depth)},
            "cost": {"mantissa": round(c_m, 4), "exponent": c_e,
                     "exact": str(self.cost)},
            "nist_level": self.nist_level,
        }


def estimate(summary: ResourceSummary, params: AttackParameters,
             gate_policy: str = "all-gates",
             thresholds: NistThresholds | None = None) -> AttackCost:
    """Grover attack cost: (per-encryption figure) × 2 × r × iterations."""
    if gate_policy not in GATE_POLICIES:
        raise EstimateError(f"unknown gate policy {gate_policy!r}; "
                            f"choose from {GATE_POLICIES}")
    gates = (summary.total_gates if gate_policy == "all-gates"
             else summary.clifford_gates)
    if gates <= 0 or summary.full_depth <= 0:
        raise EstimateError("summary must have positive gate count and depth")
    iters = grover_iterations(params.key_bits)
    factor = ORACLE_FACTOR * params.replication * iters
    total_gates = gates * factor
    full_depth = summary.full_depth * factor
    cost = total_gates * full_depth
    level = thresholds.classify(cost) if thresholds is not None else "unclassified"
    return AttackCost(policy=gate_policy, parameters=params, iterations=iters,
                      gates_per_encryption=gates, total_gates=total_gates,
                      full_depth=full_depth, cost=cost, nist_level=level)


def render_comparison(rows: list[tuple[str, ResourceSummary]]) -> str:
    """Cross-cipher resource table (H and X merged as 1qClifford)."""
    header = ("cipher", "qubits", "CNOT", "1qCliff", "T", "depth")
    body = [(name, str(s.qubits), str(s.cnot), str(s.h + s.x), str(s.t),
             str(s.full_depth)) for name, s in rows]
    widths = [max(len(r[i]) for r in [header, *body]) for i in range(len(header))]
    lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    for r in body:
        lines.append("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
    return "\n".join(lines)
