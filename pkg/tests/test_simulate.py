import pytest

from qlbc import Circuit, ccx, cx, truth_table, x
from qlbc.ciphers import SBOX_TABLES
from qlbc.simulate import SimulationError, run


def test_not_gate():
    assert run(Circuit(1, [x(0)]), 0) == 1
    assert run(Circuit(1, [x(0)]), 1) == 0


def test_toffoli_semantics():
    c = Circuit(3, [ccx(0, 1, 2)])
    # (a, b, c) -> (a, b, ab xor c); wire i is bit i
    assert run(c, 0b011) == 0b111
    assert run(c, 0b111) == 0b011
    assert run(c, 0b010) == 0b010
    assert run(c, 0b000) == 0b000


def test_cnot_semantics():
    c = Circuit(2, [cx(0, 1)])
    assert run(c, 0b01) == 0b11
    assert run(c, 0b10) == 0b10


def test_state_range_checked():
    with pytest.raises(SimulationError):
        run(Circuit(2), 4)
    with pytest.raises(SimulationError):
        run(Circuit(2), -1)


def test_truth_table_identity():
    assert truth_table(Circuit(4)) == list(range(16))


def test_truth_table_applies_relabel():
    c = Circuit(2, relabel=[1, 0])
    assert truth_table(c) == [0, 2, 1, 3]


def test_truth_table_wire_limit():
    with pytest.raises(SimulationError):
        truth_table(Circuit(17))


def test_synthesized_s0_matches_table(sbox_circuits):
    assert truth_table(sbox_circuits["s0"].circuit) == list(SBOX_TABLES["s0"])
