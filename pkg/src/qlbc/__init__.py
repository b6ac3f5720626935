"""Reversible NCT circuits, Clifford+T resource counts and Grover
key-search cost estimates for the LBlock and LiCi block ciphers."""

from .circuit import Circuit, CircuitError, Gate, WireMap, ccx, cx, x
from .simulate import CompiledCircuit, SimulationError, run, truth_table
from .ciphers import (LBLOCK_ROUNDS, LICI_ROUNDS, LICI_SBOX, SBOX_TABLES,
                      lblock_encrypt, lici_encrypt)
from .synth import (BudgetExhausted, GateLibrary, SynthesisError,
                    SynthesisResult, synthesize, validate_sbox_table, verify)
from .builders import (BuildError, BuildOptions, LBLOCK_WIRES, LICI_WIRES,
                       build_lblock, build_lici, fuse_trailing_toffoli,
                       load_sbox_circuits)
from .resources import (DecompositionModel, ResourceError, ResourceSummary,
                        count, depth, diff)
from .grover import (AttackCost, AttackParameters, EstimateError,
                     NistThresholds, estimate, format_normalized,
                     grover_iterations, normalize, render_comparison)
from .qasm import to_qasm

__version__ = "0.1.0"

__all__ = [
    "Circuit", "CircuitError", "Gate", "WireMap", "ccx", "cx", "x",
    "CompiledCircuit", "SimulationError", "run", "truth_table",
    "LBLOCK_ROUNDS", "LICI_ROUNDS", "LICI_SBOX", "SBOX_TABLES",
    "lblock_encrypt", "lici_encrypt",
    "BudgetExhausted", "GateLibrary", "SynthesisError", "SynthesisResult",
    "synthesize", "validate_sbox_table", "verify",
    "BuildError", "BuildOptions", "LBLOCK_WIRES", "LICI_WIRES",
    "build_lblock", "build_lici", "fuse_trailing_toffoli",
    "load_sbox_circuits",
    "DecompositionModel", "ResourceError", "ResourceSummary", "count",
    "depth", "diff",
    "AttackCost", "AttackParameters", "EstimateError", "NistThresholds",
    "estimate", "format_normalized", "grover_iterations", "normalize",
    "render_comparison",
    "to_qasm",
    "__version__",
]
