"""Classical basis-state execution of NCT circuits.

Every circuit in this project is a classical reversible circuit, so a
basis state is just a bitvector (wire ``i`` is bit ``i`` of an integer)
and simulation is exact.  ``truth_table`` exhausts all inputs of small
circuits and certifies the result is a permutation; cipher-scale
circuits are checked by sampling instead.
"""
from __future__ import annotations

from .circuit import Circuit

TRUTH_TABLE_WIRE_LIMIT = 16


class SimulationError(ValueError):
    pass


class CompiledCircuit:
    """A circuit flattened to (control-mask, target-mask) pairs.

    Compiling once and reusing across many input states keeps bulk
    verification (hundreds of samples on 144/192-wire circuits) cheap.
    """

    def __init__(self, circuit: Circuit):
        self.wire_count = circuit.wire_count
        self.ops = [
            (sum(1 << c for c in g.controls), 1 << g.target)
            for g in circuit.gates
        ]
        self.relabel = circuit.relabel

    def run(self, state: int) -> int:
        if state < 0 or state >> self.wire_count:
            raise SimulationError(
                f"state does not fit in {self.wire_count} wires")
        for cmask, tmask in self.ops:
            if state & cmask == cmask:
                state ^= tmask
        perm = self.relabel
        if perm.is_identity():
            return state
        out = 0
        for i, j in enumerate(perm.mapping):
            out |= ((state >> i) & 1) << j
        return out


def run(circuit: Circuit, state: int) -> int:
    """Apply the circuit's gates and relabeling to a basis state."""
    return CompiledCircuit(circuit).run(state)


def truth_table(circuit: Circuit) -> list[int]:
    """The image of every basis state, certified to be a permutation."""
    n = circuit.wire_count
    if n > TRUTH_TABLE_WIRE_LIMIT:
        raise SimulationError(
            f"truth_table is limited to {TRUTH_TABLE_WIRE_LIMIT} wires, got {n}")
    compiled = CompiledCircuit(circuit)
    outputs = [compiled.run(v) for v in range(1 << n)]
    if sorted(outputs) != list(range(1 << n)):
        raise SimulationError("circuit truth table is not a permutation")
    return outputs
