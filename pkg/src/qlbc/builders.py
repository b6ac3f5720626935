"""Full-cipher reversible circuits for LBlock and LiCi.

Circuits act in place on plaintext + key wires only (144 wires for
LBlock, 192 for LiCi).  The builder tracks which physical wire holds
which logical bit as rounds rotate, permute and swap the registers;
those moves never emit gates - they end up in the circuit's final
output relabeling.  Simulating a built circuit on ``plaintext || key``
(state bit i on wire i, key bit j on wire 64+j) yields the reference
ciphertext on the state wires and the reference final key-register
contents on the key wires.

LBlock comes in two variants.  ``original`` computes each round's
S-box layer on the left half, copies it into the right half, and fully
uncomputes.  ``improved`` retargets every S-box's final Toffoli
directly onto the right-half wire it feeds, so the uncomputation only
has to undo the other three Toffolis - one Toffoli saved per S-box per
round.  LiCi's round structure consumes its left half outright, so it
needs no uncomputation at all.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources

from .circuit import Circuit, Gate, WireMap, cx, x
from .ciphers import (LBLOCK_PERM_SRC, LBLOCK_ROUNDS, LICI_ROUNDS)
from .synth import SynthesisResult

LBLOCK_WIRES = 144  # 64 state + 80 key
LICI_WIRES = 192    # 64 state + 128 key

LBLOCK_SBOX_NAMES = tuple(f"s{i}" for i in range(10))
LBLOCK_ROUND_SBOXES = LBLOCK_SBOX_NAMES[:8]

# destination nibble of each source nibble under the diffusion permutation
_PERM_DST = tuple(LBLOCK_PERM_SRC.index(m) for m in range(8))


class BuildError(ValueError):
    pass


def load_sbox_circuits() -> dict[str, SynthesisResult]:
    """The frozen synthesis results shipped with the package."""
    text = resources.files("qlbc.data").joinpath("sbox_circuits.json").read_text()
    return {name: SynthesisResult.from_dict(entry["result"])
            for name, entry in json.loads(text).items()
            if not name.startswith("_")}


@dataclass
class BuildOptions:
    rounds: int
    variant: str = "original"  # LBlock only: "original" | "improved"
    sbox_circuits: dict[str, SynthesisResult] = field(default_factory=load_sbox_circuits)


def fuse_trailing_toffoli(sbox_circuit: Circuit, l_wires, r_target: int):
    """Split an S-box circuit for the Toffoli-fusion optimization.

    Returns ``(forward, fused_gate, uncompute)``: all gates but the
    final Toffoli mapped onto ``l_wires``, that Toffoli with its target
    replaced by ``r_target``, and the inverse of the forward part.
    Running forward + fused + a CNOT copy of the l-wires into their
    targets + uncompute leaves R's target bit XORed with the S-box
    output bit the final Toffoli would have completed, with L restored.
    """
    l_wires = list(l_wires)
    if len(l_wires) != 4 or len(set(l_wires)) != 4:
        raise BuildError(f"l_wires must be 4 distinct wires, got {l_wires}")
    if r_target in l_wires:
        raise BuildError("r_target must lie outside l_wires")
    if not sbox_circuit.gates or not sbox_circuit.gates[-1].is_toffoli:
        raise BuildError("S-box circuit does not end in a Toffoli; cannot fuse")
    wire_count = max(*l_wires, r_target) + 1
    forward = Circuit(wire_count,
                      (g.remap(l_wires) for g in sbox_circuit.gates[:-1]))
    last = sbox_circuit.gates[-1]
    fused = Gate(tuple(l_wires[c] for c in last.controls), r_target)
    return forward, fused, forward.inverse()


class _Builder:
    """Gate emission plus logical-bit -> physical-wire bookkeeping."""

    def __init__(self, wire_count: int):
        self.wire_count = wire_count
        self.gates: list[Gate] = []
        # pos[logical bit] = physical wire currently holding it
        self.pos = list(range(wire_count))

    def emit(self, gate: Gate):
        self.gates.append(gate)

    def cx_bits(self, control_bit: int, target_bit: int):
        self.emit(cx(self.pos[control_bit], self.pos[target_bit]))

    def x_bit(self, bit: int):
        self.emit(x(self.pos[bit]))

    def permute_bits(self, assignment: dict[int, int]):
        """Zero-cost move: logical bit ``new`` takes old bit ``old``'s wire."""
        old_pos = dict((b, self.pos[b]) for b in set(assignment.values()))
        for new, old in assignment.items():
            self.pos[new] = old_pos[old]

    def rotate_left(self, base: int, width: int, amount: int):
        """The ``base..base+width-1`` register rotates left by ``amount``."""
        self.permute_bits({base + (b + amount) % width: base + b
                           for b in range(width)})

    def apply_subcircuit(self, sub: Circuit, bits: list[int]):
        """Inline a small circuit onto the wires holding ``bits`` in place."""
        phys = [self.pos[b] for b in bits]
        for g in sub.gates:
            self.emit(g.remap(phys))
        sigma = sub.relabel.mapping
        for i in range(len(bits)):
            # sub-output bit sigma[i] now sits on the wire playing sub-wire i
            self.pos[bits[sigma[i]]] = phys[i]

    def finish(self) -> Circuit:
        relabel = [0] * self.wire_count
        for logical, wire in enumerate(self.pos):
            relabel[wire] = logical
        return Circuit(self.wire_count, self.gates, WireMap(relabel))


def _require_sboxes(options: BuildOptions, names) -> dict[str, SynthesisResult]:
    missing = [n for n in names if n not in options.sbox_circuits]
    if missing:
        raise BuildError(f"missing S-box circuits: {missing}")
    return {n: options.sbox_circuits[n] for n in names}


def build_lblock(options: BuildOptions) -> Circuit:
    """LBlock encryption circuit on 144 wires.

    State bit layout: plaintext bit i on wire i (L = bits 63..32,
    R = bits 31..0), key bit j on wire 64+j.  The output relabeling
    delivers the ciphertext on positions 63..0 (with the final half
    exchange of the 32-round cipher) and the post-schedule key register
    on positions 143..64.
    """
    if not 1 <= options.rounds <= LBLOCK_ROUNDS:
        raise BuildError(f"rounds must be in 1..{LBLOCK_ROUNDS}, got {options.rounds}")
    if options.variant not in ("original", "improved"):
        raise BuildError(f"unknown LBlock variant {options.variant!r}")
    boxes = _require_sboxes(options, LBLOCK_SBOX_NAMES)
    if options.variant == "improved":
        for name in LBLOCK_ROUND_SBOXES:
            circ = boxes[name].circuit
            if not circ.gates or not circ.gates[-1].is_toffoli:
                raise BuildError(
                    f"improved variant needs a trailing-Toffoli circuit for {name}")

    b = _Builder(LBLOCK_WIRES)
    key = 64  # logical offset of key bit 0

    for rnd in range(1, options.rounds + 1):
        # AddRoundKey: leftmost 32 key bits into L (32 CNOT)
        for i in range(32):
            b.cx_bits(key + 48 + i, 32 + i)
        if options.variant == "original":
            _lblock_round_original(b, boxes)
        else:
            _lblock_round_improved(b, boxes)
        # undo AddRoundKey so L is restored before the half swap
        for i in range(32):
            b.cx_bits(key + 48 + i, 32 + i)
        # Feistel move: old R (now holding newL <<< -8... precisely: the
        # wire of R bit i holds newL bit (i+8)%32) becomes the left
        # half, old L becomes the right half - all relabeling.
        b.permute_bits({32 + (i + 8) % 32: i for i in range(32)} |
                       {i: 32 + i for i in range(32)})
        # key schedule: the full cipher performs 31 updates
        if rnd <= min(options.rounds, LBLOCK_ROUNDS - 1):
            b.rotate_left(key, 80, 29)
            b.apply_subcircuit(boxes["s9"].circuit, [key + 76 + i for i in range(4)])
            b.apply_subcircuit(boxes["s8"].circuit, [key + 72 + i for i in range(4)])
            for t in range(5):
                if (rnd >> t) & 1:
                    b.x_bit(key + 46 + t)

    if options.rounds == LBLOCK_ROUNDS:
        # ciphertext swaps the halves once more
        b.permute_bits({i: 32 + i for i in range(32)} |
                       {32 + i: i for i in range(32)})
    return b.finish()


def _copy_target_bit(nibble: int, out_bit: int) -> int:
    """R bit receiving S-box output bit ``out_bit`` of L nibble ``nibble``.

    Composes the diffusion permutation (nibble j feeds nibble _PERM_DST[j])
    with the R <<< 8 rotation: P(z) bit p lands on the wire of R bit
    (p - 8) mod 32, which will be relabeled to newL bit p.
    """
    p = 4 * _PERM_DST[nibble] + out_bit
    return (p - 8) % 32


def _lblock_round_original(b: _Builder, boxes):
    for j in range(8):
        b.apply_subcircuit(boxes[f"s{j}"].circuit, [32 + 4 * j + i for i in range(4)])
    for j in range(8):
        for u in range(4):
            b.cx_bits(32 + 4 * j + u, _copy_target_bit(j, u))
    for j in range(8):
        b.apply_subcircuit(boxes[f"s{j}"].circuit.inverse(),
                           [32 + 4 * j + i for i in range(4)])


def _lblock_round_improved(b: _Builder, boxes):
    for j in range(8):
        phys = [b.pos[32 + 4 * j + i] for i in range(4)]
        circ = boxes[f"s{j}"].circuit
        sigma = circ.relabel.mapping
        last_target = circ.gates[-1].target
        fused_r = b.pos[_copy_target_bit(j, sigma[last_target])]
        forward, fused, uncompute = fuse_trailing_toffoli(circ, phys, fused_r)
        for g in forward.gates:
            b.emit(g)
        b.emit(fused)
        # copy all four output bits; sub-wire ``last_target`` carries
        # the linear remainder the fused Toffoli completes on R
        for i in range(4):
            b.emit(cx(phys[i], b.pos[_copy_target_bit(j, sigma[i])]))
        for g in uncompute.gates:
            b.emit(g)


def build_lici(options: BuildOptions) -> Circuit:
    """LiCi encryption circuit on 192 wires.

    State bit layout: plaintext bit i on wire i (X = bits 63..32,
    Y = bits 31..0), key bit j on wire 64+j.  The round consumes X in
    place - no uncomputation is ever required.
    """
    if not 1 <= options.rounds <= LICI_ROUNDS:
        raise BuildError(f"rounds must be in 1..{LICI_ROUNDS}, got {options.rounds}")
    boxes = _require_sboxes(options, ("lici",))
    b = _Builder(LICI_WIRES)
    key = 64

    for rnd in range(1, options.rounds + 1):
        # S on all eight X nibbles, in place
        for j in range(8):
            b.apply_subcircuit(boxes["lici"].circuit,
                               [32 + 4 * j + i for i in range(4)])
        # Y ^= S(X) ^ RK1 (64 CNOT); Y's wires then hold X_{i+1} >>> 3
        for i in range(32):
            b.cx_bits(32 + i, i)
            b.cx_bits(key + i, i)
        # X ^= X_{i+1} ^ RK2 (64 CNOT); X's wires then hold Y_{i+1} <<< 7
        for i in range(32):
            b.cx_bits((i - 3) % 32, 32 + i)
            b.cx_bits(key + 32 + i, 32 + i)
        # relabel: X_{i+1} bit p sits on the old Y-bit-(p-3)%32 wire,
        # Y_{i+1} bit q on the old X-bit-(q+7)%32 wire
        b.permute_bits({32 + p: (p - 3) % 32 for p in range(32)} |
                       {q: 32 + (q + 7) % 32 for q in range(32)})
        if rnd <= min(options.rounds, LICI_ROUNDS - 1):
            b.rotate_left(key, 128, 13)
            b.apply_subcircuit(boxes["lici"].circuit, [key + i for i in range(4)])
            b.apply_subcircuit(boxes["lici"].circuit, [key + 4 + i for i in range(4)])
            for t in range(5):
                if (rnd >> t) & 1:
                    b.x_bit(key + 59 + t)
    return b.finish()
