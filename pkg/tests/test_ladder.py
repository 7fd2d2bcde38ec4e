"""Tests for ladder states, primitive evolution and matrix construction."""

import math
from fractions import Fraction

import numpy as np
import pytest

from mlad.errors import (
  BoundaryLeakageError,
  CyclicTopologyError,
  DimensionMismatchError,
  LadderError,
)
from mlad.models.ladder import Cyclic, LadderState, OpenWindow, Primitive, as_fraction
from mlad.services.ladder import (
  apply_free_combined,
  apply_free_electronic,
  apply_free_kinetic,
  apply_pulse,
  apply_sequence,
  compose,
  cos_sin,
  evolve_batch,
  excited_population,
  ground_state_at,
  matrix_of,
  momentum_histogram,
  new_state,
  relative_phase,
  sequence_matrix,
)
from mlad.services.sequences import expand_name, interferometric_cooling_sequence

WINDOW = (-8, 15)
HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)


def ground(n: int = 0, window=WINDOW) -> LadderState:
  return new_state(window, 0.0, [(n, 1.0)])


class TestStateConstruction:
  """Building states and reading them back."""

  def test_new_state_normalizes(self):
    """Test that new_state scales the amplitudes to unit norm."""
    s = new_state(WINDOW, 0.0, [(0, 3.0), (1, 4.0j)])
    assert s.norm == pytest.approx(1.0)
    assert s.amplitude(0) == pytest.approx(0.6)
    assert s.amplitude(1) == pytest.approx(0.8j)

  def test_empty_amplitudes_rejected(self):
    """Test that a state needs at least one amplitude."""
    with pytest.raises(LadderError):
      new_state(WINDOW, 0.0, [])

  def test_index_outside_window_rejected(self):
    """Test that an index beyond the window is rejected."""
    with pytest.raises(LadderError):
      new_state(WINDOW, 0.0, [(16, 1.0)])

  def test_zero_norm_rejected(self):
    """Test that an all-zero state cannot be normalized."""
    with pytest.raises(LadderError):
      new_state(WINDOW, 0.0, [(0, 0.0)])

  def test_amplitude_count_must_match_window(self):
    """Test that the amplitude vector must fill the window exactly."""
    with pytest.raises(DimensionMismatchError):
      LadderState((0, 7), 0.0, np.zeros(5))

  def test_parity_decides_level(self):
    """Test that odd indices are excited and momenta include the offset."""
    s = new_state((-3, 4), 0.5, [(0, 1.0)])
    assert list(s.excited_mask) == [True, False, True, False, True, False, True, False]
    assert s.momenta[0] == pytest.approx(-2.5)

  def test_ground_state_at_real_momentum(self):
    """Test that a real momentum splits into an even index and an offset."""
    s = ground_state_at(3.5, WINDOW)
    assert s.offset == pytest.approx(1.5)
    assert abs(s.amplitude(2)) == pytest.approx(1.0)

  def test_ground_state_at_negative_momentum(self):
    """Test that negative momenta round down to the even index below."""
    s = ground_state_at(-0.5, WINDOW)
    assert s.offset == pytest.approx(1.5)
    assert abs(s.amplitude(-2)) == pytest.approx(1.0)

  def test_as_fraction_rejects_floats(self):
    """Test that float angles are refused."""
    with pytest.raises(LadderError):
      as_fraction(0.5)


class TestPulses:
  """Short laser pulses couple ground n with excited n +/- 1."""

  def test_cos_sin_exact_on_quarter_grid(self):
    """Test that quarter multiples of pi give exact cosines and sines."""
    assert cos_sin(HALF) == (0.0, 1.0)
    assert cos_sin(Fraction(1)) == (-1.0, 0.0)

  def test_upward_pi_pulse(self):
    """Test that an upward pi pulse moves ground 0 to excited 1."""
    s = apply_pulse(ground(0), 'up', HALF)
    assert s.amplitude(1) == pytest.approx(1j)
    assert abs(s.amplitude(0)) == pytest.approx(0.0)

  def test_downward_pi_pulse(self):
    """Test that a downward pi pulse moves ground 0 to excited -1."""
    s = apply_pulse(ground(0), 'down', HALF)
    assert s.amplitude(-1) == pytest.approx(1j)

  def test_pulse_phase_on_absorption_and_emission(self):
    """Test that the laser phase enters with opposite signs on absorption and emission."""
    up = apply_pulse(ground(0), 'up', HALF, HALF)
    assert up.amplitude(1) == pytest.approx(-1.0)
    excited = new_state(WINDOW, 0.0, [(1, 1.0)])
    down = apply_pulse(excited, 'up', HALF, HALF)
    assert down.amplitude(0) == pytest.approx(1.0)

  def test_half_pi_pulse_splits_population(self):
    """Test that a pi/2 pulse leaves half the population excited."""
    s = apply_pulse(ground(0), 'up', QUARTER)
    assert excited_population(s) == pytest.approx(0.5)
    assert s.norm == pytest.approx(1.0)

  def test_two_pi_pulse_flips_sign(self):
    """Test that a 2 pi pulse returns the atom with a sign flip."""
    s = apply_pulse(ground(0), 'up', Fraction(1))
    assert s.amplitude(0) == pytest.approx(-1.0)

  def test_leakage_raises(self):
    """Test that a pulse pushing probability onto the window edge raises."""
    s = ground(-2, window=(-4, 7))
    with pytest.raises(BoundaryLeakageError):
      apply_pulse(s, 'down', HALF)

  def test_interior_pulse_does_not_raise(self):
    """Test that a pulse well inside the window evolves normally."""
    s = apply_pulse(ground(-2, window=(-4, 7)), 'up', HALF)
    assert s.amplitude(-1) == pytest.approx(1j)


class TestFreeEvolution:
  """Diagonal electronic and kinetic phases."""

  def test_electronic_phase_only_on_excited(self):
    """Test that F rotates only the excited level."""
    s = new_state(WINDOW, 0.0, [(0, 1.0), (1, 1.0)])
    out = apply_free_electronic(s, HALF)
    assert out.amplitude(0) == pytest.approx(s.amplitude(0))
    assert relative_phase(out, 1, 0) == pytest.approx(-math.pi / 2)

  def test_kinetic_phase_depends_on_momentum_squared(self):
    """Test that G(1/4) gives phase -1 at momentum 2."""
    out = apply_free_kinetic(ground(2), QUARTER)
    assert out.amplitude(2) == pytest.approx(-1.0)

  def test_kinetic_phase_uses_offset(self):
    """Test that the kinetic phase uses the true momentum with offset."""
    s = new_state(WINDOW, 0.5, [(0, 1.0)])
    out = apply_free_kinetic(s, Fraction(1))
    assert out.amplitude(0) == pytest.approx(np.exp(-1j * math.pi * 0.25))

  def test_combined_is_kinetic_then_electronic(self):
    """Test that FG equals G followed by F(omega_tau * theta_g)."""
    s = new_state(WINDOW, 0.0, [(2, 1.0), (3, 1.0j)])
    combined = apply_free_combined(s, Fraction(1, 3), Fraction(5, 2))
    separate = apply_free_electronic(apply_free_kinetic(s, Fraction(1, 3)), Fraction(5, 6))
    assert np.allclose(combined.amplitudes, separate.amplitudes)

  def test_free_evolution_ignores_window_edges(self):
    """Test that diagonal evolution never counts as leakage."""
    s = ground(-4, window=(-4, 7))
    out = apply_free_kinetic(s, Fraction(1, 3))
    assert out.norm == pytest.approx(1.0)

  def test_momentum_histogram(self):
    """Test that a split state bins its two momenta."""
    s = apply_pulse(ground(0), 'up', QUARTER)
    assert momentum_histogram(s, 1.0) == [
      (0.0, pytest.approx(0.5)),
      (1.0, pytest.approx(0.5)),
    ]


class TestMatrices:
  """Cyclic and open-window operator construction."""

  def test_cyclic_size_must_be_eight_times_power_of_two(self):
    """Test that cyclic windows only come in sizes 8 * 2**k."""
    Cyclic(16)
    for size in (4, 12, 24):
      with pytest.raises(LadderError):
        Cyclic(size)

  def test_cyclic_pulse_wraps_around(self):
    """Test that cyclic pulses couple the last state to the first."""
    up = matrix_of(Primitive.pulse('up', HALF), 8).entries
    assert up[1, 0] == pytest.approx(1j)
    assert up[7, 6] == pytest.approx(1j)
    down = matrix_of(Primitive.pulse('down', HALF), 8).entries
    assert down[7, 0] == pytest.approx(1j)

  def test_matrices_are_unitary(self):
    """Test that each primitive kind builds a unitary matrix."""
    prims = [
      Primitive.pulse('up', Fraction(1, 3), Fraction(1, 5)),
      Primitive.pulse('down', QUARTER, Fraction(9, 8)),
      Primitive.free_electronic(Fraction(7, 5)),
      Primitive.free_kinetic(Fraction(3, 8)),
      Primitive.free_combined(Fraction(1, 8), Fraction(5, 2)),
    ]
    for prim in prims:
      assert matrix_of(prim, 16).unitarity_error() < 1e-12

  def test_off_grid_kinetic_angle_rejected_on_cyclic(self):
    """Test that kinetic angles off the pi/8 grid are refused on a ring."""
    with pytest.raises(CyclicTopologyError):
      matrix_of(Primitive.free_kinetic(Fraction(1, 16)), 8)
    matrix_of(Primitive.free_electronic(Fraction(1, 16)), 8)

  def test_off_grid_kinetic_angle_allowed_on_open_window(self):
    """Test that an open window accepts any kinetic angle."""
    topology = OpenWindow(-4, 11)
    U = matrix_of(Primitive.free_kinetic(Fraction(1, 16)), topology.dim, topology)
    assert U.unitarity_error() < 1e-12

  def test_dimension_must_match_topology(self):
    """Test that a dimension disagreeing with the topology raises."""
    with pytest.raises(DimensionMismatchError):
      matrix_of(Primitive.free_electronic(HALF), 8, Cyclic(16))

  def test_compose_is_textual_order(self):
    """Test that compose multiplies in textual order."""
    A = matrix_of(Primitive.pulse('up', QUARTER), 8)
    B = matrix_of(Primitive.free_electronic(HALF), 8)
    assert np.allclose(compose([A, B]).entries, A.entries @ B.entries)

  def test_sequence_matrix_applies_first_primitive_first(self):
    """Test that sequence_matrix applies the list head first."""
    first = Primitive.pulse('up', QUARTER)
    second = Primitive.free_electronic(HALF)
    U = sequence_matrix([first, second], 8)
    expected = matrix_of(second, 8).entries @ matrix_of(first, 8).entries
    assert np.allclose(U.entries, expected)

  def test_empty_sequence_is_identity(self):
    """Test that an empty sequence gives the identity."""
    assert np.allclose(sequence_matrix([], 8).entries, np.eye(8))

  @pytest.mark.parametrize('offset', [0.0, 0.3])
  def test_matrix_agrees_with_state_evolution(self, table, offset):
    """Test that the open-window matrix reproduces state evolution."""
    prims = expand_name('CNOT10', table) + [Primitive.free_kinetic(Fraction(1, 3))]
    topology = OpenWindow(WINDOW[0], WINDOW[1], offset)
    s = new_state(WINDOW, offset, [(-2, 0.5), (0, 0.5j), (1, -0.5), (3, 0.5)])
    U = sequence_matrix(prims, topology.dim, topology)
    evolved = apply_sequence(s, prims)
    assert np.allclose(U.entries @ s.amplitudes, evolved.amplitudes)

  def test_restrict_returns_block(self):
    """Test that restrict cuts out a block and rejects one outside the window."""
    U = matrix_of(Primitive.free_kinetic(QUARTER), OpenWindow(-4, 11).dim, OpenWindow(-4, 11))
    block = U.restrict(0, 7)
    assert block.dim == 8
    with pytest.raises(DimensionMismatchError):
      U.restrict(-6, 3)


class TestBatchEvolution:
  """Many atoms at once must match one-at-a-time evolution."""

  def test_rows_match_apply_sequence(self):
    """Test that each batch row matches evolving that atom alone."""
    prims = interferometric_cooling_sequence(Fraction(1, 32), Fraction(1, 32), Fraction(5, 2))
    window = (-16, 15)
    offsets = np.array([0.0, 0.25, 1.5])
    states = [
      new_state(window, offsets[0], [(0, 1.0)]),
      new_state(window, offsets[1], [(2, 1.0), (3, 1.0j)]),
      new_state(window, offsets[2], [(-4, 1.0)]),
    ]
    amps = np.stack([s.amplitudes for s in states])
    batch = evolve_batch(amps, window[0], offsets, prims)
    for row, s in zip(batch, states):
      assert np.allclose(row, apply_sequence(s, prims).amplitudes, atol=1e-12)

  def test_batch_leakage_raises(self):
    """Test that any leaking row fails the whole batch."""
    amps = np.zeros((2, 12), dtype=complex)
    amps[0, 6] = 1.0
    amps[1, 2] = 1.0
    with pytest.raises(BoundaryLeakageError):
      evolve_batch(amps, -4, np.zeros(2), [Primitive.pulse('down', HALF)])


class TestInterferometricCooling:
  """Ramsey-type sequence whose transfer depends on momentum."""

  def test_sequence_shape(self):
    """Test that the interferometric sequence has ten primitives and four pulses."""
    prims = interferometric_cooling_sequence(Fraction(1, 32), Fraction(1, 32), Fraction(5, 2))
    assert len(prims) == 10
    assert [p.is_pulse for p in prims].count(True) == 4

  def test_transfer_depends_on_momentum(self):
    """Test that excitation varies with momentum and repeats every four recoils."""
    prims = interferometric_cooling_sequence(Fraction(1, 32), Fraction(1, 32), Fraction(5, 2))
    populations = {
      p: excited_population(apply_sequence(ground_state_at(p, (-16, 15)), prims))
      for p in range(-4, 5)
    }
    assert max(populations.values()) - min(populations.values()) > 0.5
    assert populations[-4] == pytest.approx(populations[0])
    assert populations[0] == pytest.approx(populations[4])

  @pytest.mark.parametrize(
    'T,Tprime',
    [
      (Fraction(0), Fraction(1, 32)),
      (Fraction(1, 32), Fraction(-1, 32)),
      (Fraction(1, 64), HALF),
    ],
  )
  def test_invalid_durations(self, T, Tprime):
    """Test that non-positive or oversized durations are rejected."""
    with pytest.raises(LadderError):
      interferometric_cooling_sequence(T, Tprime, Fraction(5, 2))
