"""In-place synthesis of 4-bit S-box circuits over the NCT gate set.

Bidirectional meet-in-the-middle search on truth tables: a forward
frontier grows prefixes from the identity, a backward frontier grows
suffixes from the target, and a join on equal truth tables yields a
verified circuit.  The free output wire relabeling is folded into the
join itself: a circuit with relabeling sigma exists iff the forward
state, conjugated by sigma, meets the backward frontier, so a single
backward seed covers all 24 relabelings.

A search state is a full 16-entry truth table packed into one uint64
(nibble v holds the image of v); frontiers are numpy arrays and gate
application is a vectorized bit-twiddle, so layers of millions of
states expand in milliseconds.  Layers are settled in increasing
weighted cost with iterative deepening on the total circuit cost, which
keeps the per-side caps - and hence the frontier sizes - as small as
the cheapest existing circuit allows.  Paths are never stored: a
circuit is reconstructed after a join by walking a state down through
the settled layers one gate at a time.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from math import gcd, lcm

import numpy as np

from .circuit import Circuit, Gate
from .simulate import truth_table

WIRES = 4
IDENTITY_TABLE = bytes(range(16))

_LOW = np.uint64(0x1111111111111111)
_MAX_STATES = 45_000_000  # per-search guard against runaway frontiers


class SynthesisError(ValueError):
    pass


class BudgetExhausted(SynthesisError):
    """No circuit found within the requested cost budget.

    Signals that the budget or an extra constraint is too tight, not
    that no circuit exists.
    """


@dataclass(frozen=True)
class GateLibrary:
    """NCT gate shapes on 4 wires with weighted costs.

    The Toffoli weight dominates because T-count dominates the
    Clifford+T metric; the weights steer search order only, correctness
    is weight-independent.  ``max_linear_cost`` bounds the weighted cost
    spent on CNOT/NOT gates, enforced as half the bound on each
    meet-in-the-middle frontier: in-place 4-bit S-box circuits need only
    a handful of linear gates, and this cap is what keeps the frontiers
    small.  A circuit whose linear gates all crowd one end may be missed
    if their cost exceeds half the bound; every circuit whose linear
    cost fits in half the bound outright is covered regardless of how
    its gates are arranged.
    """

    toffoli_weight: float = 5.0
    cnot_weight: float = 1.0
    not_weight: float = 0.5
    max_toffoli: int = 6
    max_linear_cost: float = 8.0

    def __post_init__(self):
        if min(self.toffoli_weight, self.cnot_weight, self.not_weight) <= 0:
            raise SynthesisError("gate weights must be strictly positive")

    def gate_weight(self, gate: Gate) -> float:
        return (self.not_weight, self.cnot_weight, self.toffoli_weight)[len(gate.controls)]


@dataclass
class SynthesisResult:
    circuit: Circuit
    cost: float
    gate_histogram: dict[str, int]
    nodes_explored: int

    def to_dict(self) -> dict:
        return {
            "circuit": self.circuit.to_dict(),
            "cost": self.cost,
            "gate_histogram": dict(self.gate_histogram),
            "nodes_explored": self.nodes_explored,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "SynthesisResult":
        return cls(Circuit.from_dict(doc["circuit"]), doc["cost"],
                   dict(doc["gate_histogram"]), doc["nodes_explored"])


def _all_gates() -> list[Gate]:
    gates = [Gate((), t) for t in range(WIRES)]
    gates += [Gate((c,), t) for c in range(WIRES) for t in range(WIRES) if c != t]
    gates += [Gate(pair, t) for pair in combinations(range(WIRES), 2)
              for t in range(WIRES) if t not in pair]
    return gates


def _gate_op(gate: Gate):
    """Vectorized application of a gate to packed truth tables."""
    t = np.uint64(gate.target)
    if not gate.controls:
        mask = _LOW << t
        return lambda a, mask=mask: a ^ mask
    if len(gate.controls) == 1:
        c = np.uint64(gate.controls[0])
        return lambda a, c=c, t=t: a ^ (((a >> c) & _LOW) << t)
    c1, c2 = (np.uint64(c) for c in gate.controls)
    return lambda a, c1=c1, c2=c2, t=t: a ^ ((((a >> c1) & (a >> c2)) & _LOW) << t)


_GATES = _all_gates()
_GATE_OPS = [_gate_op(g) for g in _GATES]
_SIGMAS = sorted(permutations(range(WIRES)))


def _pack(table) -> np.uint64:
    return np.uint64(sum(table[v] << (4 * v) for v in range(16)))


def _sigma_transform(arr, sigma):
    """Apply the bit permutation sigma to every nibble of packed tables."""
    out = np.zeros_like(arr)
    for b in range(WIRES):
        out |= ((arr >> np.uint64(b)) & _LOW) << np.uint64(sigma[b])
    return out


def _sigma_inverse(sigma):
    inv = [0] * WIRES
    for i, j in enumerate(sigma):
        inv[j] = i
    return tuple(inv)


def validate_sbox_table(table) -> tuple[int, ...]:
    table = tuple(table)
    if sorted(table) != list(range(16)):
        raise SynthesisError(f"S-box table is not a permutation of 0..15: {table}")
    return table


def _is_even_permutation(table) -> bool:
    seen = [False] * 16
    parity = 0
    for i in range(16):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = table[j]
                length += 1
            parity ^= (length - 1) & 1
    return parity == 0


def _algebraic_degree(table) -> int:
    """Max ANF degree over the four coordinate functions."""
    degree = 0
    for bit in range(4):
        anf = [(table[v] >> bit) & 1 for v in range(16)]
        for step in (1, 2, 4, 8):  # Moebius transform
            for v in range(16):
                if v & step:
                    anf[v] ^= anf[v ^ step]
        for v in range(16):
            if anf[v]:
                degree = max(degree, bin(v).count("1"))
    return degree


def _integer_weights(library: GateLibrary) -> tuple[list[int], int]:
    """Gate weights scaled to exact integers, plus the scale factor."""
    fracs = [Fraction(w).limit_denominator(10 ** 6)
             for w in (library.not_weight, library.cnot_weight, library.toffoli_weight)]
    den = lcm(*(f.denominator for f in fracs))
    return [int(f * den) for f in fracs], den


@dataclass
class _JoinCandidate:
    cost: float
    gates: tuple[Gate, ...]
    sigma: tuple[int, ...]

    def sort_key(self):
        tof = sum(1 for g in self.gates if g.is_toffoli)
        enc = tuple((len(g.controls), *g.wires) for g in self.gates)
        return (self.cost, tof, len(self.gates), enc, self.sigma)


class _Side:
    """One settled-layer structure (forward prefixes or backward suffixes).

    Layers are settled in increasing integer cost; ``extend`` is
    incremental, so iterative deepening never repeats work.  Only the
    sorted table array of each layer is kept - circuits are recovered by
    walking joins back down through the layers, so no parent pointers or
    per-state bookkeeping survive a layer's expansion.
    """

    def __init__(self, seed: np.uint64, weights: list[int], lin_cap: int,
                 ccx_first: bool = False):
        if lin_cap > 250:
            raise SynthesisError("max_linear_cost too large for the search encoding")
        self.weights = weights
        self.lin_cap = lin_cap
        self.ccx_first = ccx_first
        seed_arr = np.array([seed], dtype=np.uint64)
        self.pending = {0: [(seed_arr, np.zeros(1, dtype=np.uint8))]}
        self.layers: dict[int, tuple[np.ndarray, np.ndarray]] = {}
        self.next_cost = 0
        self.pushed_cap = -1
        self.nodes = 0

    def extend(self, cap: int):
        if cap <= self.pushed_cap:
            while self.next_cost <= cap:
                if self.next_cost in self.pending:
                    self._settle(self.next_cost)
                self.next_cost += 1
            return
        # expansions are only pushed up to the cap current at settle
        # time, so a larger cap re-expands settled layers into the band
        # (old cap, new cap]; each (layer, gate) pair fires exactly once
        # over the whole deepening run.
        old_cap, self.pushed_cap = self.pushed_cap, cap
        for cost in sorted(self.layers):
            self._expand(cost, *self.layers[cost], old_cap)
        while self.next_cost <= cap:
            if self.next_cost in self.pending:
                self._settle(self.next_cost)
            self.next_cost += 1

    def _settle(self, cost: int):
        chunks = self.pending.pop(cost)
        tbl = np.concatenate([c[0] for c in chunks])
        lin = np.concatenate([c[1] for c in chunks])
        # cheapest settlement per table; among equals keep the smallest
        # linear spend so pruning never cuts a path another copy allowed
        order = np.lexsort((lin, tbl))
        tbl, lin = tbl[order], lin[order]
        keep = np.ones(tbl.size, dtype=bool)
        keep[1:] = tbl[1:] != tbl[:-1]
        tbl, lin = tbl[keep], lin[keep]
        for settled, _ in self.layers.values():
            if settled.size:
                idx = np.minimum(np.searchsorted(settled, tbl), settled.size - 1)
                novel = settled[idx] != tbl
                tbl, lin = tbl[novel], lin[novel]
        self.layers[cost] = (tbl, lin)
        self.nodes += tbl.size
        if self.nodes > _MAX_STATES:
            raise BudgetExhausted(
                f"search frontier exceeded {_MAX_STATES} states; "
                "tighten max_linear_cost or lower the budget")
        self._expand(cost, tbl, lin, -1)

    def _expand(self, cost: int, tbl, lin, already_pushed: int):
        """Push successors landing in (already_pushed, self.pushed_cap]."""
        if not tbl.size:
            return
        first = self.ccx_first and cost == 0
        for gi, gate in enumerate(_GATES):
            if first and not gate.is_toffoli:
                continue
            w = self.weights[len(gate.controls)]
            if not already_pushed < cost + w <= self.pushed_cap:
                continue
            if gate.is_toffoli:
                src, src_lin = tbl, lin
            else:
                ok = lin <= self.lin_cap - w
                if not ok.any():
                    continue
                src, src_lin = tbl[ok], lin[ok] + np.uint8(w)
            self.pending.setdefault(cost + w, []).append((_GATE_OPS[gi](src), src_lin))

    def walk(self, table: np.uint64, cost: int) -> list[Gate]:
        """One cheapest gate path from the seed to a settled state.

        Visits gates in canonical order at every step, so the result is
        deterministic.  The returned list strips gates off the state one
        at a time: for the forward side that is reverse execution order,
        for the backward side (which prepends suffix gates) it is
        execution order already.
        """
        gates = []
        state = np.array([table], dtype=np.uint64)
        while cost > 0:
            for gi, gate in enumerate(_GATES):
                w = self.weights[len(gate.controls)]
                entry = self.layers.get(cost - w)
                if entry is None or not entry[0].size:
                    continue
                prev_layer = entry[0]
                prev = _GATE_OPS[gi](state)
                pos = min(int(np.searchsorted(prev_layer, prev[0])), prev_layer.size - 1)
                if prev_layer[pos] == prev[0]:
                    gates.append(gate)
                    state, cost = prev, cost - w
                    break
            else:
                raise SynthesisError("internal error: path reconstruction failed")
        return gates


def _join_scan(forward: _Side, backward: _Side, total: int,
               require_trailing_toffoli: bool):
    """All (forward cost, sigma index, forward table) joins at a total cost."""
    hits = []
    for cf, (f_layer, _) in forward.layers.items():
        cb = total - cf
        if cb < 0 or (cb == 0 and require_trailing_toffoli):
            continue
        entry = backward.layers.get(cb)
        if entry is None or not entry[0].size or not f_layer.size:
            continue
        b_layer = entry[0]
        for sidx, sigma in enumerate(_SIGMAS):
            # transform the smaller layer, binary-search the bigger one
            if f_layer.size <= b_layer.size:
                trans = _sigma_transform(f_layer, sigma)
                idx = np.minimum(np.searchsorted(b_layer, trans), b_layer.size - 1)
                hits.extend((cf, sidx, int(t))
                            for t in f_layer[b_layer[idx] == trans])
            else:
                trans = _sigma_transform(b_layer, _sigma_inverse(sigma))
                idx = np.minimum(np.searchsorted(f_layer, trans), f_layer.size - 1)
                hits.extend((cf, sidx, int(t))
                            for t in trans[f_layer[idx] == trans])
    return hits


def synthesize(table, library: GateLibrary | None = None, budget: float = 30.0,
               require_trailing_toffoli: bool = False) -> SynthesisResult:
    """Find a cheapest in-place 4-wire NCT circuit for a 4-bit permutation.

    The circuit may carry a free output wire relabeling.  Iterative
    deepening over the total weighted cost guarantees the first total
    that yields joins is minimal within the searched family; ties are
    broken by fewer Toffolis, then fewer gates, then smallest gate
    encoding.  With ``require_trailing_toffoli`` the backward frontier
    only leaves its seed through Toffoli gates, so every returned
    circuit ends with one.
    """
    table = validate_sbox_table(table)
    if library is None:
        library = GateLibrary()
    if budget <= 0:
        raise SynthesisError("budget must be positive")
    if not _is_even_permutation(table):
        raise SynthesisError(
            "table is an odd permutation: not realizable in-place over NCT on 4 wires")

    weights, den = _integer_weights(library)
    w_max = max(weights)
    budget_i = int(budget * den + 1e-6)
    lin_total = int(library.max_linear_cost * den + 1e-6)
    lin_cap = (lin_total + 1) // 2  # per-frontier half of the linear budget
    budget_i = min(budget_i, library.max_toffoli * weights[2] + lin_total)

    min_tof = 0
    degree = _algebraic_degree(table)
    if degree > 1:
        # each Toffoli at most doubles the achievable algebraic degree
        min_tof = max(1, (degree - 1).bit_length())
    if require_trailing_toffoli:
        min_tof = max(min_tof, 1)
    start = min_tof * weights[2]
    if start > budget_i:
        raise BudgetExhausted(
            f"budget {budget} cannot cover the {min_tof}-Toffoli lower bound")

    forward = _Side(_pack(IDENTITY_TABLE), weights, lin_cap)
    backward = _Side(_pack(table), weights, lin_cap,
                     ccx_first=require_trailing_toffoli)

    step = gcd(*weights)
    hits = []
    total = start
    for total in range(start, budget_i + 1, step):
        b_cap = (total + w_max) // 2
        forward.extend(total - b_cap + w_max)
        backward.extend(b_cap)
        hits = _join_scan(forward, backward, total, require_trailing_toffoli)
        if hits:
            break
    if not hits:
        raise BudgetExhausted(
            f"no circuit found within budget {budget} "
            f"(max_toffoli={library.max_toffoli}, max_linear_cost={library.max_linear_cost})")

    cost = total / den
    candidates = []
    for cf, sidx, f_tbl in sorted(hits)[:256]:
        sigma = _SIGMAS[sidx]
        prefix = forward.walk(np.uint64(f_tbl), cf)
        prefix.reverse()
        b_tbl = _sigma_transform(np.array([f_tbl], dtype=np.uint64), sigma)[0]
        inv = _sigma_inverse(sigma)
        suffix = [g.remap(inv) for g in backward.walk(b_tbl, total - cf)]
        candidates.append(_JoinCandidate(cost, tuple(prefix + suffix), sigma))

    winner = min(candidates, key=_JoinCandidate.sort_key)
    circuit = Circuit(WIRES, winner.gates, list(winner.sigma))
    histogram = {"X": 0, "CX": 0, "CCX": 0}
    for g in winner.gates:
        histogram[g.name] += 1
    result = SynthesisResult(circuit, winner.cost, histogram,
                             forward.nodes + backward.nodes)
    if not verify(result, table):
        raise SynthesisError("internal error: synthesized circuit failed verification")
    return result


def verify(result: SynthesisResult, table) -> bool:
    """Exhaustively simulate all 16 inputs against the table."""
    table = tuple(table)
    return truth_table(result.circuit) == list(table)
