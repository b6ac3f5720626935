"""Reversible-circuit IR over the NCT (NOT / CNOT / Toffoli) gate set.

A circuit is an ordered gate list on a fixed number of wires plus a free
output relabeling.  The relabeling stands in for every swap, rotation and
bit permutation: the classical controller just renames wires, so none of
those operations cost gates or depth.

Semantics of ``relabel``: the value left on wire ``i`` after all gates
have run appears at output position ``relabel[i]``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence


class CircuitError(ValueError):
    """Invalid gate placement or incompatible circuit combination."""


@dataclass(frozen=True)
class Gate:
    """An NCT gate: zero, one or two controls and a single target.

    Controls are stored sorted so that equal gates compare equal.  Every
    NCT gate is self-inverse.
    """

    controls: tuple[int, ...]
    target: int

    def __post_init__(self):
        object.__setattr__(self, "controls", tuple(sorted(self.controls)))
        wires = (*self.controls, self.target)
        if len(set(wires)) != len(wires):
            raise CircuitError(f"duplicate wire in gate: {wires}")
        if len(self.controls) > 2:
            raise CircuitError("NCT gates admit at most two controls")
        if any(w < 0 for w in wires):
            raise CircuitError("negative wire index")

    @property
    def name(self) -> str:
        return ("X", "CX", "CCX")[len(self.controls)]

    @property
    def wires(self) -> tuple[int, ...]:
        return (*self.controls, self.target)

    @property
    def is_toffoli(self) -> bool:
        return len(self.controls) == 2

    def remap(self, wire_map: Sequence[int]) -> "Gate":
        """Return the gate with every wire index sent through ``wire_map``."""
        return Gate(tuple(wire_map[c] for c in self.controls), wire_map[self.target])

    def __repr__(self):
        return f"{self.name}({', '.join(map(str, self.wires))})"


def x(target: int) -> Gate:
    return Gate((), target)


def cx(control: int, target: int) -> Gate:
    return Gate((control,), target)


def ccx(control1: int, control2: int, target: int) -> Gate:
    return Gate((control1, control2), target)


class WireMap:
    """A bijection on wire indices, used for cost-free relabelings."""

    def __init__(self, mapping: Sequence[int]):
        mapping = tuple(mapping)
        if sorted(mapping) != list(range(len(mapping))):
            raise CircuitError(f"not a permutation: {mapping}")
        self.mapping = mapping

    def __len__(self):
        return len(self.mapping)

    def __getitem__(self, i: int) -> int:
        return self.mapping[i]

    def __eq__(self, other):
        return isinstance(other, WireMap) and self.mapping == other.mapping

    def __hash__(self):
        return hash(self.mapping)

    def __repr__(self):
        return f"WireMap({list(self.mapping)})"

    @classmethod
    def identity(cls, n: int) -> "WireMap":
        return cls(range(n))

    def inverse(self) -> "WireMap":
        inv = [0] * len(self.mapping)
        for i, j in enumerate(self.mapping):
            inv[j] = i
        return WireMap(inv)

    def compose(self, after: "WireMap") -> "WireMap":
        """The map sending i to after[self[i]]."""
        if len(after) != len(self):
            raise CircuitError("wire-count mismatch in WireMap composition")
        return WireMap(tuple(after[j] for j in self.mapping))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.mapping))


class Circuit:
    """An immutable NCT circuit: wire count, gate sequence, output relabeling."""

    def __init__(self, wire_count: int, gates: Iterable[Gate] = (),
                 relabel: WireMap | Sequence[int] | None = None):
        if wire_count <= 0:
            raise CircuitError("wire_count must be positive")
        self.wire_count = wire_count
        self.gates = tuple(gates)
        for g in self.gates:
            self._check_gate(g)
        if relabel is None:
            relabel = WireMap.identity(wire_count)
        elif not isinstance(relabel, WireMap):
            relabel = WireMap(relabel)
        if len(relabel) != wire_count:
            raise CircuitError("relabeling size differs from wire count")
        self.relabel = relabel

    def _check_gate(self, gate: Gate):
        if max(gate.wires) >= self.wire_count:
            raise CircuitError(
                f"gate {gate} references a wire outside 0..{self.wire_count - 1}")

    def __len__(self):
        return len(self.gates)

    def __eq__(self, other):
        return (isinstance(other, Circuit)
                and self.wire_count == other.wire_count
                and self.gates == other.gates
                and self.relabel == other.relabel)

    def __hash__(self):
        return hash((self.wire_count, self.gates, self.relabel.mapping))

    def __repr__(self):
        return (f"Circuit(wires={self.wire_count}, gates={len(self.gates)}, "
                f"relabel={'id' if self.relabel.is_identity() else list(self.relabel.mapping)})")

    def append(self, gate: Gate) -> "Circuit":
        self._check_gate(gate)
        return Circuit(self.wire_count, (*self.gates, gate), self.relabel)

    def inverse(self) -> "Circuit":
        """The circuit undoing this one.

        NCT gates are self-inverse, so the gate list is simply reversed;
        a nontrivial relabeling additionally has to be pushed through the
        reversed gates so that composing a circuit with its inverse is the
        identity on every basis state.
        """
        pi = self.relabel
        gates = tuple(g.remap(pi.mapping) for g in reversed(self.gates))
        return Circuit(self.wire_count, gates, pi.inverse())

    def compose(self, other: "Circuit") -> "Circuit":
        """Run ``self`` then ``other``; relabelings fold into wire references."""
        if self.wire_count != other.wire_count:
            raise CircuitError("wire-count mismatch in compose")
        inv = self.relabel.inverse()
        mapped = tuple(g.remap(inv.mapping) for g in other.gates)
        return Circuit(self.wire_count, self.gates + mapped,
                       self.relabel.compose(other.relabel))

    def rewire(self, wire_map: WireMap | Sequence[int]) -> "Circuit":
        """Apply a zero-cost output relabeling on top of the current one."""
        if not isinstance(wire_map, WireMap):
            wire_map = WireMap(wire_map)
        if len(wire_map) != self.wire_count:
            raise CircuitError("rewire map size differs from wire count")
        return Circuit(self.wire_count, self.gates, self.relabel.compose(wire_map))

    # -- serialization ----------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "wires": self.wire_count,
            "gates": [{"g": g.name, "w": list(g.wires)} for g in self.gates],
            "relabel": list(self.relabel.mapping),
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, doc: dict) -> "Circuit":
        arity = {"X": 1, "CX": 2, "CCX": 3}
        gates = []
        for entry in doc["gates"]:
            name, wires = entry["g"], entry["w"]
            if name not in arity:
                raise CircuitError(f"unknown gate kind {name!r}")
            if len(wires) != arity[name]:
                raise CircuitError(f"gate {name} expects {arity[name]} wires, got {wires}")
            gates.append(Gate(tuple(wires[:-1]), wires[-1]))
        return cls(doc["wires"], gates, doc.get("relabel"))

    @classmethod
    def from_json(cls, text: str) -> "Circuit":
        return cls.from_dict(json.loads(text))
