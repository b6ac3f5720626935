"""Human-readable and delimited report rendering.

Three kinds of output live here: the numbered gate listings used for
small synthesized circuits, plain-text tables for resource and attack
summaries, and the report-directory path that writes CSV files plus
matplotlib figures next to them.  Everything is deterministic: no
timestamps, stable orderings, fixed figure parameters.
"""
from __future__ import annotations

import csv
import json
from importlib import resources as _resources
from pathlib import Path

from .circuit import Circuit
from .grover import AttackCost, format_normalized
from .resources import ResourceSummary


def gate_listing(circuit: Circuit, title: str = "In-place implementation") -> str:
    """Numbered assignment-style listing of a small circuit.

    Each line reads ``n. x_t <- GATE(x_c..., x_t)`` with the target
    wire listed last inside the gate; the output line records the free
    relabeling (wire i finally carries output bit y_relabel[i]).
    """
    n = circuit.wire_count
    lines = [title,
             f"Input:  {n}-qubit " + "".join(f"x{i}" for i in range(n)),
             f"Output: {n}-qubit " + "".join(f"y{j}" for j in circuit.relabel.mapping)]
    for i, g in enumerate(circuit.gates, 1):
        name = {"X": "X", "CX": "CNOT", "CCX": "Toffoli"}[g.name]
        args = ", ".join(f"x{w}" for w in g.wires)
        lines.append(f"{i}. x{g.target} <- {name}({args})")
    return "\n".join(lines)


RESOURCE_COLUMNS = ("name", "qubits", "cnot", "h", "t", "x", "toffoli",
                    "full_depth", "t_depth")


def resource_table(rows: list[tuple[str, ResourceSummary]]) -> str:
    """Text table with one row per circuit: counts plus depth."""
    header = ("circuit", "#Qubits", "#CNOT", "#H", "#T", "#X", "Toffoli",
              "depth", "T-depth")
    body = [(name, str(s.qubits), str(s.cnot), str(s.h), str(s.t), str(s.x),
             str(s.toffoli_pre_decomposition), str(s.full_depth),
             str(s.t_depth)) for name, s in rows]
    return _text_table(header, body)


def attack_table(rows: list[tuple[str, AttackCost]]) -> str:
    """Text table mirroring the attack-cost report columns."""
    header = ("cipher", "policy", "r", "Total gates", "Full depth", "cost",
              "NIST level")
    body = []
    for name, a in rows:
        body.append((name, a.policy, str(a.parameters.replication),
                     format_normalized(a.total_gates),
                     format_normalized(a.full_depth),
                     format_normalized(a.cost),
                     a.nist_level))
    return _text_table(header, body)


def _text_table(header, body) -> str:
    widths = [max(len(r[i]) for r in [header, *body]) for i in range(len(header))]
    lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip(),
             "  ".join("-" * w for w in widths)]
    for r in body:
        lines.append("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
    return "\n".join(lines)


def write_resource_csv(path: Path, rows: list[tuple[str, ResourceSummary]]):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(RESOURCE_COLUMNS)
        for name, s in rows:
            d = s.to_dict()
            writer.writerow([name] + [d[c] for c in RESOURCE_COLUMNS[1:]])


def write_attack_csv(path: Path, rows: list[tuple[str, AttackCost]]):
    columns = ("name", "policy", "key_bits", "block_bits", "replication",
               "total_gates", "full_depth", "cost", "nist_level")
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(columns)
        for name, a in rows:
            writer.writerow([name, a.policy, a.parameters.key_bits,
                             a.parameters.block_bits, a.parameters.replication,
                             format_normalized(a.total_gates),
                             format_normalized(a.full_depth),
                             format_normalized(a.cost), a.nist_level])


def load_comparison_fixtures() -> list[dict]:
    """Cross-cipher comparison rows shipped as fixture data (these
    ciphers are not rebuilt by this package)."""
    text = _resources.files("qlbc.data").joinpath("comparison_fixtures.json").read_text()
    return json.loads(text)["rows"]


def comparison_rows(ours: list[tuple[str, ResourceSummary]]) -> list[dict]:
    rows = [{"name": name, "qubits": s.qubits, "cnot": s.cnot,
             "one_q_clifford": s.h + s.x, "t": s.t, "full_depth": s.full_depth}
            for name, s in ours]
    return rows + load_comparison_fixtures()


def comparison_table(rows: list[dict]) -> str:
    header = ("cipher", "#Qubits", "#CNOT", "#1qCliff", "#T", "Full depth")
    body = [(r["name"], str(r["qubits"]), str(r["cnot"]),
             str(r["one_q_clifford"]), str(r["t"]), str(r["full_depth"]))
            for r in rows]
    return _text_table(header, body)


def write_comparison_csv(path: Path, rows: list[dict]):
    columns = ("name", "qubits", "cnot", "one_q_clifford", "t", "full_depth")
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(columns)
        for r in rows:
            writer.writerow([r[c] for c in columns])


def render_resource_figure(path: Path, rows: list[dict],
                           highlight: set[str] = frozenset()):
    """Grouped log-scale bar chart of gate counts and depth per cipher."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    metrics = [("cnot", "CNOT"), ("one_q_clifford", "1q Clifford"),
               ("t", "T"), ("full_depth", "Full depth")]
    names = [r["name"] for r in rows]
    positions = range(len(names))
    width = 0.2
    fig, ax = plt.subplots(figsize=(max(7.0, 1.1 * len(names)), 4.5))
    for k, (key, label) in enumerate(metrics):
        offs = [p + (k - 1.5) * width for p in positions]
        ax.bar(offs, [r[key] for r in rows], width=width, label=label)
    ax.set_yscale("log")
    ax.set_xticks(list(positions))
    ax.set_xticklabels(names, rotation=30, ha="right", fontsize=8)
    for tick, name in zip(ax.get_xticklabels(), names):
        if name in highlight:
            tick.set_fontweight("bold")
    ax.set_ylabel("count (log scale)")
    ax.set_title("Clifford+T resources per encryption circuit")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_attack_figure(path: Path, rows: list[tuple[str, AttackCost]],
                         thresholds: dict[int, int] | None = None):
    """Bar chart of log2(gate x depth cost) with NIST threshold lines."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    from math import log2

    labels = [f"{name}\n({a.policy})" for name, a in rows]
    values = [log2(a.cost) for _, a in rows]
    fig, ax = plt.subplots(figsize=(max(6.0, 1.4 * len(rows)), 4.5))
    ax.bar(range(len(rows)), values, width=0.5, color="#4878a8")
    if thresholds:
        for level, cost in sorted(thresholds.items()):
            y = log2(cost)
            ax.axhline(y, linestyle="--", linewidth=1, color="#a84848")
            ax.annotate(f"NIST level {level}", (len(rows) - 0.4, y),
                        textcoords="offset points", xytext=(0, 3),
                        fontsize=8, color="#a84848", ha="right")
    ax.set_xticks(range(len(rows)))
    ax.set_xticklabels(labels, fontsize=8)
    ax.set_ylabel("log2(total gates x full depth)")
    ax.set_title("Grover key-search cost")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
