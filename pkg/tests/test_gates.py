"""Tests for ideal gates, equivalence classes and opcode verification."""

from fractions import Fraction

import numpy as np
import pytest

from mlad.errors import DimensionMismatchError, UnknownGateError, UnknownMacroError
from mlad.models.ladder import Cyclic, UnitaryMatrix
from mlad.models.sequence import MacroTable
from mlad.services.gates import (
  GATE_NAMES,
  basis_phase_residual,
  check_gbasic,
  diagonal_residual,
  fidelity_up_to_global_phase,
  ideal_gate,
  verify_all,
  verify_named,
)

GLOBAL_ROWS = ['GBASIC', 'NOT0', 'CP1_0', 'EX10', 'CNOT10', 'CNOTBAR10', 'CP2_0']
SWAP_ROWS = ['SW3_23', 'SW3_34', 'SW3_45']
HADAMARD_ROWS = ['HAD0', 'HAD10']
COMPOSITE_ROWS = ['EX21', 'RR3', 'RL3', 'CP3_0']

_H = np.array([[1, 1], [1, -1]]) / np.sqrt(2)


def matrix(entries) -> UnitaryMatrix:
  entries = np.asarray(entries, dtype=complex)
  return UnitaryMatrix(np.kron(np.eye(8 // len(entries)), entries), Cyclic(8))


class TestIdealGates:
  """Exact logical unitaries."""

  @pytest.mark.parametrize('name', GATE_NAMES)
  def test_unitary(self, name):
    """Test that every ideal gate is unitary."""
    gate = ideal_gate(name)
    product = gate.unitary.conj().T @ gate.unitary
    assert np.allclose(product, np.eye(gate.size))

  def test_unknown_gate(self):
    """Test that an unknown gate name raises with its name in the message."""
    with pytest.raises(UnknownGateError) as info:
      ideal_gate('BOGUS')
    assert str(info.value) == 'Unknown gate: BOGUS'

  def test_not0_flips_electronic_bit(self):
    """Test that NOT0 is the Pauli X on the electronic bit."""
    assert np.allclose(ideal_gate('NOT0').unitary, [[0, 1], [1, 0]])

  def test_rotations(self):
    """Test that RR3 and RL3 are inverse cyclic rotations of order three."""
    rr3 = ideal_gate('RR3').unitary
    rl3 = ideal_gate('RL3').unitary
    assert np.allclose(rr3 @ rl3, np.eye(8))
    assert np.allclose(np.linalg.matrix_power(rr3, 3), np.eye(8))
    assert np.allclose(rr3 @ rr3, rl3)

  def test_rr3_moves_q0_to_q2(self):
    """Test that RR3 sends qubit 0 to qubit 2."""
    rr3 = ideal_gate('RR3').unitary
    assert rr3[4, 1] == 1
    assert rr3[1, 2] == 1

  def test_tiled(self):
    """Test that gates tile onto larger rings and refuse sizes that do not divide."""
    tiled = ideal_gate('NOT0').tiled(8)
    assert tiled.shape == (8, 8)
    assert tiled[7, 6] == 1
    with pytest.raises(ValueError):
      ideal_gate('CP3_0').tiled(12)


class TestEquivalence:
  """Fidelity and the residual-phase classes on hand-built matrices."""

  def test_global_phase_ignored(self):
    """Test that fidelity ignores and reports a global phase."""
    U = matrix(_H)
    V = matrix(np.exp(0.7j) * _H)
    fidelity, phase = fidelity_up_to_global_phase(U, V)
    assert fidelity == pytest.approx(1.0)
    assert np.angle(phase) == pytest.approx(0.7)

  def test_diagonal_residual_recovered(self):
    """Test that a left diagonal residual is recovered exactly."""
    D = np.diag(np.exp(1j * np.arange(8) / 3))
    V = matrix([[0, 1], [1, 0]])
    U = UnitaryMatrix(D @ V.entries, V.topology)
    residual = diagonal_residual(U, V)
    assert np.allclose(residual, np.diag(D))
    assert fidelity_up_to_global_phase(U, V)[0] < 1.0

  def test_diagonal_residual_absent(self):
    """Test that no left diagonal explains a two-sided phase change."""
    U = matrix(-np.diag([1, -1]) @ _H @ np.diag([1, -1]))
    V = matrix(_H)
    assert diagonal_residual(U, V) is None

  def test_basis_phase_residual(self):
    """Test that left and right diagonals rebuild the measured matrix."""
    Z = np.diag([1, -1])
    U = matrix(-Z @ _H @ Z)
    V = matrix(_H)
    d1, d2 = basis_phase_residual(U, V)
    assert np.allclose(d1[:, np.newaxis] * V.entries * d2[np.newaxis, :], U.entries)

  def test_basis_phase_needs_same_magnitudes(self):
    """Test that differing magnitudes leave no basis-phase residual."""
    U = matrix(np.eye(2))
    V = matrix(_H)
    assert basis_phase_residual(U, V) is None

  def test_dimension_mismatch(self):
    """Test that matrices on different rings cannot be compared."""
    U = UnitaryMatrix.identity(Cyclic(8))
    V = UnitaryMatrix.identity(Cyclic(16))
    with pytest.raises(DimensionMismatchError):
      fidelity_up_to_global_phase(U, V)


class TestVerifyBuiltins:
  """Every shipped opcode against its ideal gate on cyclic windows."""

  @pytest.mark.parametrize('name', GLOBAL_ROWS)
  def test_global_rows(self, name, table):
    """Test that these opcodes match their gate up to a global phase."""
    report = verify_named(name, table)
    assert report.passed
    assert report.equivalence == 'global'
    assert report.fidelity == pytest.approx(1.0, abs=1e-9)
    assert not report.flagged

  @pytest.mark.parametrize('name', SWAP_ROWS)
  def test_uncorrected_swaps(self, name, table):
    """Test that uncorrected swaps pass as diagonal-phase equivalent."""
    report = verify_named(name, table)
    assert report.nominal_class == 'diagonal'
    assert report.passed
    assert report.equivalence == 'diagonal'
    assert report.residual_phases is not None
    assert len(report.residual_phases) == 8
    assert not report.flagged

  @pytest.mark.parametrize('name', HADAMARD_ROWS)
  def test_hadamard_rows_flagged(self, name, table):
    """Test that Hadamard rows pass only up to basis phases and are flagged."""
    report = verify_named(name, table)
    assert report.passed
    assert report.equivalence == 'basis_phase'
    assert report.flagged
    assert report.left_phases is not None
    assert report.right_phases is not None

  @pytest.mark.parametrize('name', COMPOSITE_ROWS)
  def test_composite_rows(self, name, table):
    """Test that composite opcodes pass on the ring."""
    report = verify_named(name, table)
    assert report.passed
    assert report.equivalence in ('global', 'diagonal')

  def test_fidelity_stable_across_dims(self, table):
    """Test that fidelity is reported and stable on rings of 8, 16 and 32."""
    report = verify_named('CNOT10', table, dims=[8, 16, 32])
    assert report.window_stable
    assert sorted(report.fidelities) == [8, 16, 32]

  def test_pulse_count_note(self, table):
    """Test that RR3 pulse counts are compared with the reference counts."""
    report = verify_named('RR3', table)
    assert report.reference_pulse_counts == {'half_pi': 18, 'pi': 26}
    counts = report.pulse_counts
    if (counts.half_pi, counts.pi) == (18, 26):
      assert report.pulse_count_note is None
    else:
      assert '18' in report.pulse_count_note

  def test_verify_all_covers_table(self, table):
    """Test that verify_all reports every opcode in table order."""
    reports = verify_all(table)
    assert [r.opcode for r in reports] == list(table)
    assert all(r.passed for r in reports)

  def test_unknown_name(self, table):
    """Test that a name with no ideal gate raises."""
    with pytest.raises(UnknownGateError):
      verify_named('BOGUS', table)

  def test_gate_without_macro(self):
    """Test that a gate missing from the table raises UnknownMacroError."""
    with pytest.raises(UnknownMacroError):
      verify_named('NOT0', MacroTable())


class TestBasicKineticCheck:
  """The basic G sequence equals G(theta) for any omega_tau."""

  @pytest.mark.parametrize('omega_tau', [Fraction(1, 3), Fraction(5, 2), Fraction(7)])
  @pytest.mark.parametrize('theta', [Fraction(1, 8), Fraction(1, 2), Fraction(1, 3)])
  def test_independent_of_omega_tau(self, theta, omega_tau):
    """Test that the basic G sequence equals G(theta) for any omega_tau."""
    result = check_gbasic(theta, omega_tau)
    assert result.passed
    assert result.fidelity == pytest.approx(1.0, abs=1e-9)
    assert result.block == [0, 7]

  def test_literal_pulses_keep_electronic_phase(self):
    """Test that literal G pulses keep an electronic phase and fail."""
    result = check_gbasic(Fraction(1, 8), Fraction(1, 3), literal_g=True)
    assert not result.passed
    assert result.literal_g
