import json

import pytest

from qlbc import Circuit, ccx, truth_table
from qlbc.ciphers import SBOX_TABLES
from qlbc.cli import (EXIT_BUDGET, EXIT_MISMATCH, EXIT_OK, EXIT_VALIDATION,
                      run_main)


def run_cli(capsys, *args):
    code = run_main(list(args))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_synth_identity(tmp_path, capsys):
    out_file = tmp_path / "id.json"
    code, out, _ = run_cli(capsys, "synth", "--table", "0123456789abcdef",
                           "--output", str(out_file))
    assert code == EXIT_OK
    doc = json.loads(out_file.read_text())
    assert doc["gates"] == []
    assert "Input:  4-qubit x0x1x2x3" in out


def test_synth_rejects_repeated_value(capsys):
    code, _, err = run_cli(capsys, "synth", "--table", "0123456789abcdee")
    assert code == EXIT_VALIDATION
    assert "error" in err.lower()


def test_synth_rejects_short_table(capsys):
    code, _, err = run_cli(capsys, "synth", "--table", "0123")
    assert code == EXIT_VALIDATION


def test_synth_budget_exhausted(capsys):
    table = "".join(f"{v:x}" for v in SBOX_TABLES["s0"])
    code, _, err = run_cli(capsys, "synth", "--table", table, "--budget", "6")
    assert code == EXIT_BUDGET
    assert "budget" in err.lower()


def test_synth_json_format(capsys):
    code, out, _ = run_cli(capsys, "synth", "--table", "0123456789abcdef",
                           "--format", "json")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["manifest"]["command"] == "synth"
    assert doc["result"]["circuit"]["gates"] == []


def test_build_verify_count_estimate_pipeline(tmp_path, capsys):
    circuit_file = tmp_path / "lblock2.json"
    code, _, _ = run_cli(capsys, "build", "--cipher", "lblock",
                         "--variant", "improved", "--rounds", "2",
                         "--output", str(circuit_file))
    assert code == EXIT_OK
    doc = json.loads(circuit_file.read_text())
    assert doc["wires"] == 144
    assert doc["metadata"]["variant"] == "improved"
    assert "s0" in doc["metadata"]["sbox_gate_histograms"]

    code, out, _ = run_cli(capsys, "verify", "--cipher", "lblock",
                           "--variant", "improved", "--rounds", "2",
                           "--samples", "10", "--circuit", str(circuit_file))
    assert code == EXIT_OK and "OK" in out

    code, out, _ = run_cli(capsys, "count", "--circuit", str(circuit_file),
                           "--format", "json")
    assert code == EXIT_OK
    count_doc = json.loads(out)
    assert count_doc["summary"]["qubits"] == 144
    summary_file = tmp_path / "count.json"
    summary_file.write_text(out)

    code, out, _ = run_cli(capsys, "estimate", "--summary", str(summary_file),
                           "--key-bits", "80", "--format", "json")
    assert code == EXIT_OK
    est = json.loads(out)
    assert set(est["estimates"]) == {"all-gates", "clifford-only"}
    assert est["estimates"]["all-gates"]["replication"] == 2


def test_verify_detects_injected_fault(capsys):
    code, _, err = run_cli(capsys, "verify", "--cipher", "lici",
                           "--rounds", "1", "--samples", "3", "--inject-fault")
    assert code == EXIT_MISMATCH
    assert "mismatch" in err


def test_verify_seed_determinism(capsys):
    args = ("verify", "--cipher", "lblock", "--rounds", "1",
            "--samples", "5", "--format", "json")
    code1, out1, _ = run_cli(capsys, *args)
    code2, out2, _ = run_cli(capsys, *args)
    assert code1 == code2 == EXIT_OK
    assert out1 == out2  # byte-identical reports for identical manifests


def test_count_report_dir(tmp_path, capsys):
    circuit_file = tmp_path / "lici1.json"
    run_cli(capsys, "build", "--cipher", "lici", "--rounds", "1",
            "--output", str(circuit_file))
    report = tmp_path / "report"
    code, out, _ = run_cli(capsys, "count", "--circuit", str(circuit_file),
                           "--name", "lici-1-round",
                           "--report-dir", str(report))
    assert code == EXIT_OK
    for name in ("resources.csv", "comparison.csv", "comparison.txt",
                 "resources.png"):
        assert (report / name).exists(), name
    table = (report / "comparison.txt").read_text()
    assert "lici-1-round" in table
    assert "GIFT-128/128" in table  # fixture rows present
    assert (report / "resources.png").stat().st_size > 1000


def test_estimate_report_dir(tmp_path, capsys):
    summary = {"summary": {"qubits": 192, "cnot": 12900, "h": 2464,
                           "t": 8624, "x": 379, "full_depth": 1210}}
    summary_file = tmp_path / "lici.json"
    summary_file.write_text(json.dumps(summary))
    report = tmp_path / "report"
    code, out, _ = run_cli(capsys, "estimate", "--summary", str(summary_file),
                           "--key-bits", "128", "--policy", "all-gates",
                           "--report-dir", str(report))
    assert code == EXIT_OK
    assert "1.084x2^156" in out
    assert (report / "attack.csv").exists()
    assert (report / "attack.png").stat().st_size > 1000


def test_estimate_rejects_zero_key_bits(tmp_path, capsys):
    code, _, err = run_cli(capsys, "estimate", "--cipher", "lici",
                           "--key-bits", "0")
    assert code == EXIT_VALIDATION


def test_estimate_requires_one_source(capsys):
    code, _, err = run_cli(capsys, "estimate")
    assert code == EXIT_VALIDATION


def test_export_qasm(tmp_path, capsys):
    circuit_file = tmp_path / "c.json"
    circuit_file.write_text(
        Circuit(3, relabel=[2, 0, 1]).append(ccx(0, 1, 2)).to_json())
    code, out, _ = run_cli(capsys, "export-qasm", str(circuit_file))
    assert code == EXIT_OK
    assert out.startswith("OPENQASM 2.0;")
    assert "ccx q[0],q[1],q[2];" in out

    dest = tmp_path / "c.qasm"
    code, _, _ = run_cli(capsys, "export-qasm", str(circuit_file),
                         "--output", str(dest))
    assert code == EXIT_OK and dest.exists()


def test_export_qasm_rejects_garbage(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run_cli(capsys, "export-qasm", str(bad))
    assert code == EXIT_VALIDATION


def test_synth_output_consumable_by_export(tmp_path, capsys):
    """Pipeline closure: synth output feeds export-qasm and count."""
    table = "".join(f"{v:x}" for v in SBOX_TABLES["s9"])
    out_file = tmp_path / "s9.json"
    code, _, _ = run_cli(capsys, "synth", "--table", table,
                         "--output", str(out_file))
    assert code == EXIT_OK
    circuit = Circuit.from_json(out_file.read_text())
    assert truth_table(circuit) == list(SBOX_TABLES["s9"])
    code, out, _ = run_cli(capsys, "export-qasm", str(out_file))
    assert code == EXIT_OK and "qreg q[4];" in out
    code, out, _ = run_cli(capsys, "count", "--circuit", str(out_file),
                           "--format", "json")
    assert code == EXIT_OK
    assert json.loads(out)["summary"]["toffoli"] == 4
