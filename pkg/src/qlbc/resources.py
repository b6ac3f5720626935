"""Clifford+T lowering: gate counts, qubit counts and circuit depth.

Counting never materializes the decomposed circuit: each Toffoli
contributes a fixed bundle of T/H/CNOT gates and occupies its three
wires as an atomic block of depth 8 (T-depth 4) in the as-soon-as-
possible schedule.  CNOT and NOT have depth 1; relabelings are free.
"""
from __future__ import annotations

from dataclasses import dataclass, replace

from .circuit import Circuit


class ResourceError(ValueError):
    pass


@dataclass(frozen=True)
class DecompositionModel:
    """Per-Toffoli Clifford+T expansion (7 T and 8 Clifford gates)."""

    t_gates: int = 7
    h_gates: int = 2
    cnot_gates: int = 6
    depth: int = 8
    t_depth: int = 4


@dataclass(frozen=True)
class ResourceSummary:
    qubits: int
    cnot: int = 0
    h: int = 0
    t: int = 0
    x: int = 0
    toffoli_pre_decomposition: int = 0
    full_depth: int = 0
    t_depth: int = 0

    @property
    def total_gates(self) -> int:
        return self.cnot + self.h + self.t + self.x

    @property
    def clifford_gates(self) -> int:
        return self.cnot + self.h + self.x

    def to_dict(self) -> dict:
        return {
            "qubits": self.qubits,
            "cnot": self.cnot,
            "h": self.h,
            "t": self.t,
            "x": self.x,
            "toffoli": self.toffoli_pre_decomposition,
            "full_depth": self.full_depth,
            "t_depth": self.t_depth,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "ResourceSummary":
        return cls(qubits=doc["qubits"], cnot=doc.get("cnot", 0),
                   h=doc.get("h", 0), t=doc.get("t", 0), x=doc.get("x", 0),
                   toffoli_pre_decomposition=doc.get("toffoli", 0),
                   full_depth=doc.get("full_depth", 0),
                   t_depth=doc.get("t_depth", 0))


def count(circuit: Circuit, model: DecompositionModel | None = None) -> ResourceSummary:
    """Gate counts and depth of a circuit under the Clifford+T model."""
    if model is None:
        model = DecompositionModel()
    cnot = h = t = x = toffoli = 0
    for g in circuit.gates:
        n = len(g.controls)
        if n == 0:
            x += 1
        elif n == 1:
            cnot += 1
        else:
            toffoli += 1
            t += model.t_gates
            h += model.h_gates
            cnot += model.cnot_gates
    full_depth, t_depth = depth(circuit, model)
    return ResourceSummary(qubits=circuit.wire_count, cnot=cnot, h=h, t=t, x=x,
                           toffoli_pre_decomposition=toffoli,
                           full_depth=full_depth, t_depth=t_depth)


def depth(circuit: Circuit, model: DecompositionModel | None = None) -> tuple[int, int]:
    """ASAP-layered (full_depth, t_depth); relabelings contribute nothing."""
    if model is None:
        model = DecompositionModel()
    level = [0] * circuit.wire_count
    t_level = [0] * circuit.wire_count
    for g in circuit.gates:
        wires = g.wires
        if len(g.controls) == 2:
            d, td = model.depth, model.t_depth
        else:
            d, td = 1, 0
        start = max(level[w] for w in wires)
        t_start = max(t_level[w] for w in wires)
        for w in wires:
            level[w] = start + d
            t_level[w] = t_start + td
    return max(level, default=0), max(t_level, default=0)


def diff(a: ResourceSummary, b: ResourceSummary) -> ResourceSummary:
    """Componentwise a − b (e.g. original minus improved variant)."""
    if a.qubits != b.qubits:
        raise ResourceError(
            f"cannot diff summaries with different qubit counts: {a.qubits} != {b.qubits}")
    return replace(a, cnot=a.cnot - b.cnot, h=a.h - b.h, t=a.t - b.t,
                   x=a.x - b.x,
                   toffoli_pre_decomposition=(a.toffoli_pre_decomposition
                                              - b.toffoli_pre_decomposition),
                   full_depth=a.full_depth - b.full_depth,
                   t_depth=a.t_depth - b.t_depth)
