"""OpenQASM 2.0 export for NCT circuits.

Gates map one-to-one onto ``x``/``cx``/``ccx`` over a single quantum
register.  The free output relabeling never becomes swap instructions:
it is emitted as a trailing comment describing where each wire's value
ends up, so a consumer can read outputs off the right indices without
paying CNOT cost for the permutation.
"""
from __future__ import annotations

from .circuit import Circuit


def to_qasm(circuit: Circuit, register: str = "q") -> str:
    lines = [
        "OPENQASM 2.0;",
        'include "qelib1.inc";',
        f"qreg {register}[{circuit.wire_count}];",
    ]
    for g in circuit.gates:
        op = ("x", "cx", "ccx")[len(g.controls)]
        args = ",".join(f"{register}[{w}]" for w in g.wires)
        lines.append(f"{op} {args};")
    if not circuit.relabel.is_identity():
        lines.append("// free output relabeling (no swap gates):")
        for i, j in enumerate(circuit.relabel.mapping):
            if i != j:
                lines.append(f"// {register}[{i}] holds output position {j}")
    return "\n".join(lines) + "\n"
