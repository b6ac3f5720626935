"""Command-line interface.

Subcommands: ``synth``, ``build``, ``verify``, ``count``, ``estimate``,
``export-qasm``.  Every report embeds the run manifest (command, inputs,
seed, tool version) so identical invocations produce byte-identical
output.  Exit codes: 0 success, 1 validation error, 2 verification
mismatch, 3 synthesis budget exhausted.
"""
from __future__ import annotations

import json
import random
import sys
from pathlib import Path

import click

from . import __version__
from .builders import (BuildError, BuildOptions, build_lblock, build_lici,
                       load_sbox_circuits)
from .ciphers import (LBLOCK_ROUNDS, LICI_ROUNDS, lblock_encrypt,
                      lblock_key_state, lici_encrypt, lici_key_state)
from .circuit import Circuit, CircuitError, x
from .grover import (GATE_POLICIES, AttackParameters, EstimateError,
                     NistThresholds, estimate)
from .qasm import to_qasm
from .report import (attack_table, comparison_rows, comparison_table,
                     gate_listing, render_attack_figure,
                     render_resource_figure, resource_table,
                     write_attack_csv, write_comparison_csv,
                     write_resource_csv)
from .resources import ResourceSummary, count as count_resources
from .simulate import CompiledCircuit, run as simulate_run
from .synth import (BudgetExhausted, GateLibrary, SynthesisError, synthesize,
                    validate_sbox_table)

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_MISMATCH = 2
EXIT_BUDGET = 3

DEFAULT_SEED = 20240

_CIPHER_PRESETS = {
    # name -> (builder kwargs, key_bits, block_bits)
    "lblock": ({"cipher": "lblock", "variant": "original",
                "rounds": LBLOCK_ROUNDS}, 80, 64),
    "lblock-improved": ({"cipher": "lblock", "variant": "improved",
                         "rounds": LBLOCK_ROUNDS}, 80, 64),
    "lici": ({"cipher": "lici", "variant": None, "rounds": LICI_ROUNDS},
             128, 64),
}


class VerificationMismatch(Exception):
    """Circuit and reference cipher disagree; carries the first failure."""

    def __init__(self, message: str, report: dict):
        super().__init__(message)
        self.report = report


def _manifest(command: str, **fields) -> dict:
    doc = {"command": command, "tool": "qlbc", "version": __version__}
    doc.update({k: v for k, v in fields.items() if v is not None})
    return doc


def _emit(doc: dict, fmt: str, text_body: str):
    if fmt == "json":
        click.echo(json.dumps(doc, indent=2, sort_keys=True))
    else:
        click.echo(text_body)


def _write_circuit(circuit: Circuit, path: str, metadata: dict | None = None):
    doc = circuit.to_dict()
    if metadata:
        doc["metadata"] = metadata
    Path(path).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")


def _load_circuit(path: str) -> tuple[Circuit, dict]:
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise click.UsageError(f"cannot read circuit file {path}: {exc}")
    try:
        return Circuit.from_dict(doc), doc.get("metadata", {})
    except (KeyError, TypeError, CircuitError) as exc:
        raise click.UsageError(f"malformed circuit file {path}: {exc}")


def _sbox_histograms() -> dict:
    return {name: dict(res.gate_histogram)
            for name, res in sorted(load_sbox_circuits().items())}


def _build(cipher: str, variant: str | None, rounds: int) -> Circuit:
    if cipher == "lblock":
        return build_lblock(BuildOptions(rounds=rounds,
                                         variant=variant or "original"))
    if cipher == "lici":
        return build_lici(BuildOptions(rounds=rounds))
    raise click.UsageError(f"unknown cipher {cipher!r}")


def _preset_circuit(name: str) -> tuple[Circuit, dict]:
    kwargs, key_bits, block_bits = _CIPHER_PRESETS[name]
    circuit = _build(kwargs["cipher"], kwargs["variant"], kwargs["rounds"])
    meta = dict(kwargs, key_bits=key_bits, block_bits=block_bits)
    return circuit, meta


@click.group()
@click.version_option(__version__, prog_name="qlbc")
def main():
    """Reversible circuits and Grover cost estimates for LBlock and LiCi."""


@main.command()
@click.option("--table", required=True,
              help="S-box as 16 hex digits, images of 0..15 in order.")
@click.option("--output", type=click.Path(dir_okay=False),
              help="Write the circuit JSON here.")
@click.option("--budget", default=30.0, show_default=True,
              help="Maximum weighted gate cost to search.")
@click.option("--toffoli-weight", default=5.0, show_default=True)
@click.option("--cnot-weight", default=1.0, show_default=True)
@click.option("--not-weight", default=0.5, show_default=True)
@click.option("--max-toffoli", default=6, show_default=True)
@click.option("--max-linear-cost", default=8.0, show_default=True)
@click.option("--require-trailing-toffoli", is_flag=True,
              help="Only accept circuits whose final gate is a Toffoli.")
@click.option("--format", "fmt", type=click.Choice(["json", "text"]),
              default="text", show_default=True)
def synth(table, output, budget, toffoli_weight, cnot_weight, not_weight,
          max_toffoli, max_linear_cost, require_trailing_toffoli, fmt):
    """Synthesize an in-place 4-bit S-box circuit."""
    cleaned = table.replace(" ", "").lower()
    if len(cleaned) != 16 or any(c not in "0123456789abcdef" for c in cleaned):
        raise click.UsageError("--table must be 16 hex digits")
    values = validate_sbox_table([int(c, 16) for c in cleaned])
    library = GateLibrary(toffoli_weight=toffoli_weight,
                          cnot_weight=cnot_weight, not_weight=not_weight,
                          max_toffoli=max_toffoli,
                          max_linear_cost=max_linear_cost)
    result = synthesize(values, library, budget=budget,
                        require_trailing_toffoli=require_trailing_toffoli)
    if output:
        _write_circuit(result.circuit, output,
                       metadata={"table": cleaned,
                                 "gate_histogram": result.gate_histogram})
    listing = gate_listing(result.circuit,
                           title=f"In-place implementation of {cleaned}")
    doc = {"manifest": _manifest("synth", table=cleaned, budget=budget,
                                 require_trailing_toffoli=require_trailing_toffoli,
                                 output=output),
           "result": result.to_dict(), "listing": listing}
    text = (listing + "\n\n"
            f"cost: {result.cost}\n"
            f"gates: {json.dumps(result.gate_histogram, sort_keys=True)}\n"
            f"nodes explored: {result.nodes_explored}"
            + (f"\nwritten: {output}" if output else ""))
    _emit(doc, fmt, text)


_cipher_option = click.option(
    "--cipher", type=click.Choice(["lblock", "lici"]), required=True)
_variant_option = click.option(
    "--variant", type=click.Choice(["original", "improved"]),
    default="original", show_default=True, help="LBlock only.")


@main.command()
@_cipher_option
@_variant_option
@click.option("--rounds", type=int, default=None,
              help="Defaults to the full cipher (32 / 31).")
@click.option("--output", type=click.Path(dir_okay=False), required=True,
              help="Circuit JSON destination.")
@click.option("--format", "fmt", type=click.Choice(["json", "text"]),
              default="text", show_default=True)
def build(cipher, variant, rounds, output, fmt):
    """Build a full cipher encryption circuit."""
    if rounds is None:
        rounds = LBLOCK_ROUNDS if cipher == "lblock" else LICI_ROUNDS
    circuit = _build(cipher, variant, rounds)
    metadata = {"cipher": cipher, "rounds": rounds,
                "sbox_gate_histograms": _sbox_histograms()}
    if cipher == "lblock":
        metadata["variant"] = variant
    _write_circuit(circuit, output, metadata=metadata)
    doc = {"manifest": _manifest("build", cipher=cipher,
                                 variant=variant if cipher == "lblock" else None,
                                 rounds=rounds, output=output),
           "wires": circuit.wire_count, "gates": len(circuit)}
    _emit(doc, fmt, f"{cipher} circuit: {circuit.wire_count} wires, "
                    f"{len(circuit)} gates -> {output}")


@main.command()
@_cipher_option
@_variant_option
@click.option("--rounds", type=int, default=None)
@click.option("--samples", type=int, default=100, show_default=True)
@click.option("--seed", type=int, default=DEFAULT_SEED, show_default=True)
@click.option("--circuit", "circuit_path", type=click.Path(dir_okay=False),
              help="Verify this circuit file instead of building afresh.")
@click.option("--inject-fault", is_flag=True, hidden=True,
              help="Harness self-test: corrupt the circuit before verifying.")
@click.option("--format", "fmt", type=click.Choice(["json", "text"]),
              default="text", show_default=True)
def verify(cipher, variant, rounds, samples, seed, circuit_path, inject_fault,
           fmt):
    """Check a cipher circuit against the reference implementation."""
    if rounds is None:
        rounds = LBLOCK_ROUNDS if cipher == "lblock" else LICI_ROUNDS
    if samples < 1:
        raise click.UsageError("--samples must be positive")
    if circuit_path:
        circuit, _ = _load_circuit(circuit_path)
    else:
        circuit = _build(cipher, variant, rounds)
    if inject_fault:
        circuit = circuit.append(x(0))

    key_bits = 80 if cipher == "lblock" else 128
    if cipher == "lblock":
        ref = lambda pt, k: (lblock_encrypt(pt, k, rounds),
                             lblock_key_state(k, rounds))
    else:
        ref = lambda pt, k: (lici_encrypt(pt, k, rounds),
                             lici_key_state(k, rounds))

    compiled = CompiledCircuit(circuit)
    rng = random.Random(seed)
    checked = 0
    for _ in range(samples):
        pt = rng.getrandbits(64)
        key = rng.getrandbits(key_bits)
        out = compiled.run(pt | (key << 64))
        got_ct, got_key = out & ((1 << 64) - 1), out >> 64
        want_ct, want_key = ref(pt, key)
        if (got_ct, got_key) != (want_ct, want_key):
            report = {"plaintext": f"{pt:016x}", "key": f"{key:0{key_bits//4}x}",
                      "expected_ciphertext": f"{want_ct:016x}",
                      "got_ciphertext": f"{got_ct:016x}",
                      "expected_key_state": f"{want_key:0{key_bits//4}x}",
                      "got_key_state": f"{got_key:0{key_bits//4}x}",
                      "samples_passed": checked}
            raise VerificationMismatch(
                f"mismatch after {checked} passing samples: "
                f"pt={pt:016x} key={key:0{key_bits//4}x} "
                f"got {got_ct:016x}, expected {want_ct:016x}", report)
        checked += 1
    doc = {"manifest": _manifest("verify", cipher=cipher,
                                 variant=variant if cipher == "lblock" else None,
                                 rounds=rounds, samples=samples, seed=seed,
                                 circuit=circuit_path),
           "agree": True, "samples": checked}
    _emit(doc, fmt, f"OK: {checked} random (plaintext, key) samples agree "
                    f"with the reference {cipher} ({rounds} rounds)")


@main.command()
@click.option("--circuit", "circuit_path", type=click.Path(dir_okay=False),
              help="Count a circuit JSON file.")
@click.option("--cipher", "preset",
              type=click.Choice(sorted(_CIPHER_PRESETS)),
              help="Count a built-in full cipher circuit instead of a file.")
@click.option("--name", default=None,
              help="Row label in reports (defaults to the file or preset).")
@click.option("--report-dir", type=click.Path(file_okay=False),
              help="Also write CSV, comparison table and figure here.")
@click.option("--format", "fmt", type=click.Choice(["json", "text"]),
              default="text", show_default=True)
def count(circuit_path, preset, name, report_dir, fmt):
    """Report Clifford+T resource counts for a circuit."""
    if (circuit_path is None) == (preset is None):
        raise click.UsageError("give exactly one of --circuit or --cipher")
    if circuit_path:
        circuit, _ = _load_circuit(circuit_path)
        label = name or Path(circuit_path).stem
    else:
        circuit, _ = _preset_circuit(preset)
        label = name or preset
    summary = count_resources(circuit)
    rows = [(label, summary)]
    doc = {"manifest": _manifest("count", circuit=circuit_path, cipher=preset,
                                 report_dir=report_dir),
           "summary": summary.to_dict(),
           "sbox_gate_histograms": _sbox_histograms()}
    text = resource_table(rows)
    if report_dir:
        out = Path(report_dir)
        out.mkdir(parents=True, exist_ok=True)
        write_resource_csv(out / "resources.csv", rows)
        comp = comparison_rows(rows)
        write_comparison_csv(out / "comparison.csv", comp)
        (out / "comparison.txt").write_text(comparison_table(comp) + "\n")
        render_resource_figure(out / "resources.png", comp,
                               highlight={label})
        written = ["resources.csv", "comparison.csv", "comparison.txt",
                   "resources.png"]
        doc["report_files"] = written
        text += "\n\nreport files: " + ", ".join(str(out / f) for f in written)
    _emit(doc, fmt, text)


@main.command("estimate")
@click.option("--summary", "summary_path", type=click.Path(dir_okay=False),
              help="ResourceSummary JSON (a `count --format json` report or "
                   "a bare summary object).")
@click.option("--cipher", "preset",
              type=click.Choice(sorted(_CIPHER_PRESETS)),
              help="Estimate for a built-in full cipher circuit.")
@click.option("--key-bits", type=int, default=None,
              help="Defaults to the preset's key size; required with --summary.")
@click.option("--block-bits", type=int, default=64, show_default=True)
@click.option("--policy", type=click.Choice([*GATE_POLICIES, "both"]),
              default="both", show_default=True)
@click.option("--thresholds", "thresholds_path",
              type=click.Path(dir_okay=False),
              help="NIST threshold configuration JSON (defaults shipped).")
@click.option("--name", default=None, help="Row label in reports.")
@click.option("--report-dir", type=click.Path(file_okay=False),
              help="Also write CSV and figure here.")
@click.option("--format", "fmt", type=click.Choice(["json", "text"]),
              default="text", show_default=True)
def estimate_cmd(summary_path, preset, key_bits, block_bits, policy,
                 thresholds_path, name, report_dir, fmt):
    """Grover key-search cost from a resource summary."""
    if (summary_path is None) == (preset is None):
        raise click.UsageError("give exactly one of --summary or --cipher")
    if summary_path:
        if key_bits is None:
            raise click.UsageError("--key-bits is required with --summary")
        try:
            doc_in = json.loads(Path(summary_path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise click.UsageError(f"cannot read summary {summary_path}: {exc}")
        summary = ResourceSummary.from_dict(doc_in.get("summary", doc_in))
        label = name or Path(summary_path).stem
    else:
        circuit, meta = _preset_circuit(preset)
        summary = count_resources(circuit)
        key_bits = key_bits if key_bits is not None else meta["key_bits"]
        block_bits = meta["block_bits"]
        label = name or preset
    if thresholds_path:
        try:
            thresholds = NistThresholds.from_config(
                json.loads(Path(thresholds_path).read_text()))
        except (OSError, json.JSONDecodeError, KeyError) as exc:
            raise click.UsageError(
                f"cannot read thresholds {thresholds_path}: {exc}")
    else:
        thresholds = NistThresholds.default()
    params = AttackParameters(key_bits, block_bits)
    policies = list(GATE_POLICIES) if policy == "both" else [policy]
    rows = [(label, estimate(summary, params, p, thresholds))
            for p in policies]
    doc = {"manifest": _manifest("estimate", summary=summary_path,
                                 cipher=preset, key_bits=key_bits,
                                 block_bits=block_bits, policy=policy,
                                 thresholds=thresholds_path,
                                 report_dir=report_dir),
           "estimates": {a.policy: a.to_dict() for _, a in rows}}
    text = attack_table(rows)
    if policy == "both":
        text += ("\n\nnote: the two policies differ only in whether T gates"
                 " enter the total; both are reported because published"
                 " figures for these ciphers mix the two conventions.")
    if report_dir:
        out = Path(report_dir)
        out.mkdir(parents=True, exist_ok=True)
        write_attack_csv(out / "attack.csv", rows)
        render_attack_figure(out / "attack.png", rows, thresholds.levels)
        doc["report_files"] = ["attack.csv", "attack.png"]
        text += f"\n\nreport files: {out / 'attack.csv'}, {out / 'attack.png'}"
    _emit(doc, fmt, text)


@main.command("export-qasm")
@click.argument("circuit_file", type=click.Path(dir_okay=False))
@click.option("--output", type=click.Path(dir_okay=False),
              help="Destination; defaults to stdout.")
def export_qasm(circuit_file, output):
    """Export a circuit JSON file as OpenQASM 2.0."""
    circuit, _ = _load_circuit(circuit_file)
    text = to_qasm(circuit)
    if output:
        Path(output).write_text(text)
        click.echo(f"written: {output}")
    else:
        click.echo(text, nl=False)


def run_main(argv=None) -> int:
    """Entry point mapping failures onto documented exit codes."""
    try:
        main.main(args=argv, standalone_mode=False)
        return EXIT_OK
    except click.exceptions.Abort:
        return EXIT_VALIDATION
    except click.ClickException as exc:
        exc.show(file=sys.stderr)
        return EXIT_VALIDATION
    except BudgetExhausted as exc:
        click.echo(f"budget exhausted: {exc}", err=True)
        return EXIT_BUDGET
    except VerificationMismatch as exc:
        click.echo(f"verification mismatch: {exc}", err=True)
        click.echo(json.dumps(exc.report, indent=2, sort_keys=True), err=True)
        return EXIT_MISMATCH
    except (CircuitError, BuildError, SynthesisError, EstimateError,
            ValueError) as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_VALIDATION


def entrypoint():
    raise SystemExit(run_main())
